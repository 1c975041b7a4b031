//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Set `VOGAN_UPDATE_GOLDEN=1` to rewrite the golden reports.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vogan_core::corpus::{check_all, generate, CorpusReport, CorpusSpec};
use vogan_core::liealg::DualGroupSpec;
use vogan_core::orbits::enumerate_orbits;
use vogan_core::params::{
    is_arthur_type, HalfInteger, InfinitesimalParam, Label, LanglandsParam, Summand, DEFAULT_UNIT_MODULUS,
};
use vogan_core::report::{parse_spec, render, serialize_spec, Command, ParsedSpec};
use vogan_core::sl2::{admissible_partitions, is_distinguished, nilpotent_for_partition, partition_is_distinguished};
use vogan_core::vogan::{
    build_spaces, commutant_in_dual, is_open, l_adjoint_order, orbit_dim, permute_labels, realize, realize_with_labels,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn half(twice: i64) -> HalfInteger {
    HalfInteger::from_twice(twice)
}

/// Violations of the listed properties, plus their coverage.
fn corpus_property(report: &CorpusReport, props: &[&str], per_param: bool) -> Outcome {
    let mut checked = 0;
    for p in props {
        let n = report.coverage.get(*p).copied().unwrap_or(0);
        if n == 0 {
            return Err(format!("property `{p}` never checked"));
        }
        if per_param && n != report.parameters {
            return Err(format!("property `{p}` checked {n} times for {} parameters", report.parameters));
        }
        checked += n;
    }
    let bad: Vec<_> = report
        .violations
        .iter()
        .filter(|v| props.contains(&v.property.as_str()) || v.property == "computation")
        .collect();
    if let Some(v) = bad.first() {
        return Err(format!(
            "{} violations, first: {} at {} (expected {}, got {})",
            bad.len(),
            v.property,
            v.parameter,
            v.expected,
            v.actual
        ));
    }
    Ok(format!("{checked} checks over {} parameters", report.parameters))
}

fn criterion_1(r: &CorpusReport, elapsed: Duration) -> Outcome {
    let base = corpus_property(r, &["open iff L(s, Ad) regular"], true)?;
    ensure(elapsed < Duration::from_secs(300), || format!("corpus took {elapsed:?}"))?;
    ensure(r.violations.is_empty(), || format!("{} violations elsewhere in the corpus", r.violations.len()))?;
    Ok(format!("{base}, {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_4(r: &CorpusReport) -> Outcome {
    corpus_property(
        r,
        &[
            "dual of closed orbit is open",
            "dual of open orbit is closed",
            "dual is an involution",
            "dual dimension complements orbit",
        ],
        false,
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    for n in 2..=8usize {
        let g = DualGroupSpec::gl(n).map_err(|e| e.to_string())?;
        let lam = InfinitesimalParam::new(
            g,
            DEFAULT_UNIT_MODULUS,
            (0..n).map(|i| (Label::new(0, half(n as i64 - 1 - 2 * i as i64)), 1)).collect(),
        )
        .map_err(|e| e.to_string())?;
        let dim_v = build_spaces(&lam).v.dim();
        ensure(dim_v == n - 1, || format!("GL_{n}: dim V = {dim_v}"))?;
        let recs = enumerate_orbits(&lam, 0).map_err(|e| e.to_string())?;
        ensure(recs.len() == 1 << (n - 1), || format!("GL_{n}: {} orbits", recs.len()))?;
        let sym = LanglandsParam::new(g, DEFAULT_UNIT_MODULUS, vec![Summand::new(0, HalfInteger::ZERO, n as u32)])
            .map_err(|e| e.to_string())?;
        ensure(is_open(&sym).map_err(|e| e.to_string())?, || format!("GL_{n}: Sym^{} not open", n - 1))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("n = 2..8 in {:.1}s", t.as_secs_f64()))
}

/// Two segments of one unit are linked when their union is a longer
/// segment containing neither.
fn linked(a: &Summand, b: &Summand) -> bool {
    let (ab, at, bb, bt) = (a.bottom().twice(), a.top().twice(), b.bottom().twice(), b.top().twice());
    if a.u != b.u || (ab - bb).rem_euclid(2) != 0 {
        return false;
    }
    let juxtaposed_or_overlapping = ab <= bt + 2 && bb <= at + 2;
    let nested = (ab <= bb && bt <= at) || (bb <= ab && at <= bt);
    juxtaposed_or_overlapping && !nested
}

fn criterion_6() -> Outcome {
    let gl2 = DualGroupSpec::gl(2).map_err(|e| e.to_string())?;
    let two = |gap: i64| {
        LanglandsParam::new(
            gl2,
            DEFAULT_UNIT_MODULUS,
            vec![Summand::new(0, half(gap), 1), Summand::new(0, half(-gap), 1)],
        )
        .map_err(|e| e.to_string())
    };
    let gap2 = two(2)?;
    ensure(is_open(&gap2).map_err(|e| e.to_string())?, || "gap 2 not open".into())?;
    ensure(is_arthur_type(&gap2).is_none(), || "gap 2 is of Arthur type".into())?;
    let gap1 = two(1)?;
    ensure(!is_open(&gap1).map_err(|e| e.to_string())?, || "gap 1 is open".into())?;

    let mut cases = 0;
    for n1 in 1..=3u32 {
        for n2 in 1..=3u32 {
            let g = DualGroupSpec::gl((n1 + n2) as usize).map_err(|e| e.to_string())?;
            for gap2x in 0..=8i64 {
                let a = Summand::new(0, half(gap2x), n1);
                let b = Summand::new(0, HalfInteger::ZERO, n2);
                let phi = LanglandsParam::new(g, DEFAULT_UNIT_MODULUS, vec![a, b]).map_err(|e| e.to_string())?;
                let open = is_open(&phi).map_err(|e| e.to_string())?;
                ensure(open != linked(&a, &b), || format!("{phi}: open = {open}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("GL_2 gaps 1 and 2, plus {cases} two-block cases against linkedness"))
}

fn criterion_7(r: &CorpusReport) -> Outcome {
    let base = corpus_property(
        r,
        &[
            "discrete implies open",
            "discrete implies q-distinguished",
            "witness distinguished in unit centralizer",
        ],
        false,
    )?;
    let largest = r
        .groups
        .keys()
        .filter(|k| !k.starts_with("GL"))
        .filter_map(|k| k.split('_').nth(1)?.parse::<usize>().ok())
        .max()
        .unwrap_or(0);
    ensure(largest == 10, || format!("largest classical group in corpus has size {largest}"))?;
    Ok(base)
}

fn criterion_8() -> Outcome {
    let mut groups = Vec::new();
    for n in 1..=6 {
        groups.push(DualGroupSpec::gl(n));
    }
    for n in 1..=4 {
        groups.push(DualGroupSpec::sp(2 * n));
    }
    for n in 1..=8 {
        groups.push(DualGroupSpec::so(n));
    }
    let (mut total, mut dist) = (0, 0);
    for g in groups {
        let g = g.map_err(|e| e.to_string())?;
        for p in admissible_partitions(&g) {
            let n = nilpotent_for_partition(&g, &p).map_err(|e| e.to_string())?;
            let by_grading = is_distinguished(&g, &n).map_err(|e| e.to_string())?;
            let by_parts = partition_is_distinguished(&g, &p);
            ensure(by_grading == by_parts, || format!("{g} {p:?}: grading {by_grading}, parts {by_parts}"))?;
            total += 1;
            dist += usize::from(by_parts);
        }
    }
    Ok(format!("{total} partitions, {dist} distinguished"))
}

fn criterion_9() -> Outcome {
    let corpus = generate(&CorpusSpec::default()).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sample: Vec<&LanglandsParam> = corpus.choose_multiple(&mut rng, 100).collect();
    for (i, phi) in sample.iter().enumerate() {
        let open = is_open(phi).map_err(|e| e.to_string())?;
        let order = l_adjoint_order(phi).map_err(|e| e.to_string())?;
        let base = realize(phi).map_err(|e| e.to_string())?;
        let labels = permute_labels(phi.group(), &base.basis_labels, 1000 + i as u64);
        let real = realize_with_labels(phi, &labels).map_err(|e| e.to_string())?;
        let spaces = real.spaces();
        let p_open = orbit_dim(&spaces, &real.x).map_err(|e| e.to_string())? == spaces.v.dim();
        let p_order = commutant_in_dual(&spaces, &real.x).map_err(|e| e.to_string())?.dim();
        ensure((open, order) == (p_open, p_order), || {
            format!("{phi}: ({open}, {order}) became ({p_open}, {p_order})")
        })?;
    }
    Ok(format!("{} samples", sample.len()))
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

fn golden_reports(spec: &ParsedSpec) -> Result<(String, String), String> {
    let cmd = match spec {
        ParsedSpec::Grading(_) => Command::Survey,
        _ => Command::Analyze,
    };
    let json = render(spec, cmd, 0, true).map_err(|e| e.to_string())?;
    let text = render(spec, cmd, 0, false).map_err(|e| e.to_string())?;
    Ok((json, text))
}

fn criterion_10() -> Outcome {
    let update = std::env::var_os("VOGAN_UPDATE_GOLDEN").is_some();
    let mut inputs: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with(".json") && !p.to_string_lossy().ends_with(".report.json"))
        .collect();
    inputs.sort();
    ensure(inputs.len() == 10, || format!("{} fixtures", inputs.len()))?;
    for input in &inputs {
        let name = input.file_stem().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(input).map_err(|e| e.to_string())?;
        let spec = parse_spec(&text).map_err(|e| format!("{name}: {e}"))?;
        let canonical = serialize_spec(&spec);
        let again = parse_spec(&canonical).map_err(|e| format!("{name}: {e}"))?;
        ensure(again == spec && serialize_spec(&again) == canonical, || format!("{name}: round trip"))?;
        let (json, txt) = golden_reports(&spec).map_err(|e| format!("{name}: {e}"))?;
        let (json2, txt2) = golden_reports(&spec).map_err(|e| format!("{name}: {e}"))?;
        ensure(json == json2 && txt == txt2, || format!("{name}: reports differ between runs"))?;
        for (ext, body) in [("report.json", &json), ("report.txt", &txt)] {
            let path = fixtures_dir().join(format!("{name}.{ext}"));
            if update {
                std::fs::write(&path, body).map_err(|e| e.to_string())?;
            }
            let golden = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            ensure(&golden == body, || format!("{name}.{ext} differs from golden"))?;
        }
    }
    Ok(format!("{} fixtures byte-identical", inputs.len()))
}

fn main() {
    let start = Instant::now();
    let corpus = check_all(&CorpusSpec::default());
    let elapsed = start.elapsed();
    let corpus = corpus.map_err(|e| e.to_string());
    let with = |f: &dyn Fn(&CorpusReport) -> Outcome| corpus.as_ref().map_err(Clone::clone).and_then(f);

    let results: Vec<(&str, Outcome)> = vec![
        ("openness matches regular adjoint L-function", with(&|r| criterion_1(r, elapsed))),
        (
            "conormal dimension identity",
            with(&|r| corpus_property(r, &["conormal fibre dimension"], true)),
        ),
        (
            "tempered iff open and Arthur type",
            with(&|r| corpus_property(r, &["tempered iff open and Arthur type", "tempered implies open"], true)),
        ),
        ("duality of open and closed orbits", with(&criterion_4)),
        ("regular chain orbit counts", criterion_5()),
        ("non-tempered open two-block example", criterion_6()),
        ("discrete parameters are open and q-distinguished", with(&criterion_7)),
        ("distinguished nilpotents by grading and by partition", criterion_8()),
        ("basis reordering invariance", criterion_9()),
        ("golden reports and round trips", criterion_10()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
