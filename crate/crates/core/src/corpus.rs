//! Bulk consistency checks over families of parameters.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{DualGroupSpec, Family};
use crate::orbits::{closure_leq, enumerate_orbits_with_census, orbit_record, OrbitRecord};
use crate::params::{
    infinitesimal_of, is_arthur_type, is_discrete, is_tempered, params_with_infinitesimal, HalfInteger,
    InfinitesimalParam, LanglandsParam, Summand,
};
use crate::report::{double_dual, param_short, parse_spec, serialize_param, ParsedSpec};
use crate::sl2::{heiermann_pipeline, is_distinguished, jordan_partition, partition_is_distinguished, weighted_dynkin};
use crate::vogan::{
    build_spaces, commutant_in_dual, orbit_dim, permute_labels, realize, realize_with_labels, verify_realization,
};

/// Largest group size the corpus accepts.
pub const MAX_CORPUS_SIZE: usize = 12;

/// Samples per dual computation inside the corpus.
pub const CORPUS_DUAL_SAMPLES: usize = 8;

/// Exhaustive enumeration of every parameter of the listed families up to
/// `max_size` whose exponents `e ± (a−1)/2` stay within `max_abs_exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub families: Vec<Family>,
    pub max_size: usize,
    pub max_abs_exponent: HalfInteger,
    pub unit_modulus: u32,
}

/// Random parameters drawn on top of the exhaustive segments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RandomConfig {
    pub count: usize,
    pub min_size: usize,
    pub max_size: usize,
    pub max_abs_exponent: HalfInteger,
    pub unit_modulus: u32,
}

impl RandomConfig {
    pub fn none() -> Self {
        RandomConfig {
            count: 0,
            min_size: 1,
            max_size: 1,
            max_abs_exponent: HalfInteger::ZERO,
            unit_modulus: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub segments: Vec<Segment>,
    pub random: RandomConfig,
    pub seed: u64,
    pub dual_samples: usize,
}

impl CorpusSpec {
    pub fn new(segments: Vec<Segment>, random: RandomConfig, seed: u64) -> Self {
        CorpusSpec {
            segments,
            random,
            seed,
            dual_samples: CORPUS_DUAL_SAMPLES,
        }
    }

    /// A single exhaustive segment.
    pub fn simple(
        families: Vec<Family>,
        max_size: usize,
        max_abs_exponent: HalfInteger,
        unit_modulus: u32,
        seed: u64,
    ) -> Self {
        CorpusSpec::new(
            vec![Segment {
                families,
                max_size,
                max_abs_exponent,
                unit_modulus,
            }],
            RandomConfig::none(),
            seed,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::CorpusSpec(m));
        for s in &self.segments {
            if s.max_size > MAX_CORPUS_SIZE {
                return bad(format!("max_size {} exceeds {MAX_CORPUS_SIZE}", s.max_size));
            }
            if s.unit_modulus == 0 {
                return bad("unit_modulus must be at least 1".into());
            }
            if s.max_abs_exponent.twice() < 0 {
                return bad("max_abs_exponent must be non-negative".into());
            }
        }
        let r = &self.random;
        if r.count > 0 {
            if r.max_size > MAX_CORPUS_SIZE || r.min_size == 0 || r.min_size > r.max_size {
                return bad(format!("random sizes {}..={} out of range", r.min_size, r.max_size));
            }
            if r.unit_modulus == 0 {
                return bad("random.unit_modulus must be at least 1".into());
            }
            if r.max_abs_exponent.twice() < 0 {
                return bad("random.max_abs_exponent must be non-negative".into());
            }
        }
        Ok(())
    }
}

impl Default for CorpusSpec {
    fn default() -> Self {
        let seg = |f: Family, max_size, b2, m| Segment {
            families: vec![f],
            max_size,
            max_abs_exponent: HalfInteger::from_twice(b2),
            unit_modulus: m,
        };
        CorpusSpec::new(
            vec![
                seg(Family::GeneralLinear, 6, 3, 1),
                seg(Family::Symplectic, 6, 2, 4),
                seg(Family::OddOrthogonal, 7, 2, 4),
            ],
            RandomConfig {
                count: 200,
                min_size: 8,
                max_size: 10,
                max_abs_exponent: HalfInteger::from_int(1),
                unit_modulus: 4,
            },
            0,
        )
    }
}

fn groups_of(f: Family, max_size: usize) -> Vec<DualGroupSpec> {
    (1..=max_size)
        .filter_map(|n| match f {
            Family::GeneralLinear => DualGroupSpec::gl(n).ok(),
            Family::Symplectic => DualGroupSpec::sp(n).ok(),
            Family::EvenOrthogonal | Family::OddOrthogonal => DualGroupSpec::so(n).ok(),
        })
        .collect()
}

/// Indivisible building blocks of parameters: a dual pair of summands, a
/// self-dual summand of the right type, or a doubled one of the wrong type.
fn units(group: &DualGroupSpec, m: u32, bound: HalfInteger) -> Vec<Vec<Summand>> {
    let b2 = bound.twice();
    let mut singles = Vec::new();
    for u in 0..m {
        for a in 1..=group.size() as u32 {
            let half_span = a as i64 - 1;
            for e2 in -b2..=b2 {
                if e2.abs() + half_span <= b2 {
                    singles.push(Summand::new(u, HalfInteger::from_twice(e2), a));
                }
            }
        }
    }
    let Some(required) = group.required_type() else {
        return singles.into_iter().map(|s| vec![s]).collect();
    };
    let mut out = Vec::new();
    for s in singles {
        let d = s.dual(m);
        match s.form_type(m) {
            Some(t) if t == required => out.push(vec![s]),
            Some(_) => out.push(vec![s, s]),
            None if s < d => out.push(vec![s, d]),
            None => {}
        }
    }
    out
}

fn unit_dim(u: &[Summand]) -> usize {
    u.iter().map(|s| s.a as usize).sum()
}

/// Every parameter of `group` built from `units`, in a fixed order.
fn exhaustive(group: DualGroupSpec, m: u32, units: &[Vec<Summand>], out: &mut Vec<LanglandsParam>) {
    fn rec(
        group: DualGroupSpec,
        m: u32,
        units: &[Vec<Summand>],
        start: usize,
        left: usize,
        acc: &mut Vec<Summand>,
        out: &mut Vec<LanglandsParam>,
    ) {
        if left == 0 {
            if let Ok(p) = LanglandsParam::new(group, m, acc.clone()) {
                out.push(p);
            }
            return;
        }
        for i in start..units.len() {
            let d = unit_dim(&units[i]);
            if d <= left {
                let len = acc.len();
                acc.extend_from_slice(&units[i]);
                rec(group, m, units, i, left - d, acc, out);
                acc.truncate(len);
            }
        }
    }
    rec(group, m, units, 0, group.size(), &mut Vec::new(), out);
}

fn random_param(rng: &mut ChaCha8Rng, cfg: &RandomConfig) -> Option<LanglandsParam> {
    let family = [Family::GeneralLinear, Family::Symplectic, Family::OddOrthogonal]
        .choose(rng)
        .copied()
        .expect("non-empty");
    let n = rng.gen_range(cfg.min_size..=cfg.max_size);
    let group = match family {
        Family::GeneralLinear => DualGroupSpec::gl(n),
        Family::Symplectic => DualGroupSpec::sp(n),
        _ => DualGroupSpec::so(n),
    }
    .ok()?;
    let all = units(&group, cfg.unit_modulus, cfg.max_abs_exponent);
    let mut acc = Vec::new();
    let mut left = n;
    while left > 0 {
        let fitting: Vec<&Vec<Summand>> = all.iter().filter(|u| unit_dim(u) <= left).collect();
        let pick = fitting.choose(rng)?;
        left -= unit_dim(pick);
        acc.extend_from_slice(pick);
    }
    LanglandsParam::new(group, cfg.unit_modulus, acc).ok()
}

/// The corpus described by `spec`: exhaustive segments first, then the
/// random draws, without repeats.
pub fn generate(spec: &CorpusSpec) -> Result<Vec<LanglandsParam>> {
    Ok(generate_split(spec)?.0)
}

/// The corpus and the length of its exhaustive prefix.
fn generate_split(spec: &CorpusSpec) -> Result<(Vec<LanglandsParam>, usize)> {
    spec.validate()?;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for seg in &spec.segments {
        for &f in &seg.families {
            for g in groups_of(f, seg.max_size) {
                let us = units(&g, seg.unit_modulus, seg.max_abs_exponent);
                let mut batch = Vec::new();
                exhaustive(g, seg.unit_modulus, &us, &mut batch);
                for p in batch {
                    if seen.insert(p.clone()) {
                        out.push(p);
                    }
                }
            }
        }
    }
    let exhaustive_count = out.len();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut drawn = 0;
    let mut attempts = 0;
    while drawn < spec.random.count && attempts < spec.random.count * 100 {
        attempts += 1;
        if let Some(p) = random_param(&mut rng, &spec.random) {
            if seen.insert(p.clone()) {
                out.push(p);
                drawn += 1;
            }
        }
    }
    Ok((out, exhaustive_count))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: String,
    pub parameter: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CorpusReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub parameters: usize,
    pub gradings: usize,
    /// Parameters per group, keyed like `Sp_4`.
    pub groups: BTreeMap<String, usize>,
    /// How many times each property was checked.
    pub coverage: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl CorpusReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(&mut self, other: CorpusReport) {
        for (k, v) in other.coverage {
            *self.coverage.entry(k).or_insert(0) += v;
        }
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
    }
}

struct Checker<'a> {
    report: &'a mut CorpusReport,
    subject: String,
}

impl Checker<'_> {
    fn check(&mut self, property: &str, ok: bool, expected: impl FnOnce() -> String, actual: impl FnOnce() -> String) {
        *self.report.coverage.entry(property.to_string()).or_insert(0) += 1;
        if !ok {
            self.report.violations.push(Violation {
                property: property.to_string(),
                parameter: self.subject.clone(),
                expected: expected(),
                actual: actual(),
            });
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, property: &str, expected: T, actual: T) {
        let ok = expected == actual;
        self.check(property, ok, || format!("{expected:?}"), || format!("{actual:?}"));
    }

    fn failed(&mut self, property: &str, e: &Error) {
        self.check(property, false, || "success".into(), || e.to_string());
    }
}

fn check_param(phi: &LanglandsParam, records: &[OrbitRecord], seed: u64, c: &mut Checker) -> Result<()> {
    let real = realize(phi)?;
    verify_realization(phi, &real)?;
    c.check("realization", true, String::new, String::new);
    let spaces = real.spaces();
    let od = orbit_dim(&spaces, &real.x)?;
    let k = commutant_in_dual(&spaces, &real.x)?.dim();
    let dim_v = spaces.v.dim();
    let open = od == dim_v;
    c.eq("open iff L(s, Ad) regular", open, k == 0);
    c.eq("conormal fibre dimension", dim_v, od + k);
    let tempered = is_tempered(phi);
    let arthur = is_arthur_type(phi).is_some();
    c.eq("tempered iff open and Arthur type", tempered, open && arthur);
    c.check("tempered implies open", !tempered || open, || "open".into(), || "not open".into());
    if is_discrete(phi) {
        c.check("discrete implies open", open, || "open".into(), || "not open".into());
    }
    match records.iter().find(|r| r.param.as_ref() == Some(phi)) {
        Some(r) => {
            c.eq("orbit record dimension", r.dim, od);
            c.eq("orbit record openness", r.is_open_orbit, k == 0);
        }
        None => c.check("orbit record present", false, || "a record".into(), || "none".into()),
    }

    let perm = permute_labels(phi.group(), &real.basis_labels, seed);
    let other = realize_with_labels(phi, &perm)?;
    let ospaces = other.spaces();
    let orec = orbit_record(&ospaces, other.x.clone())?;
    c.eq("label permutation invariance", (od, Some(phi.clone())), (orec.dim, orec.param));

    let partition = jordan_partition(real.x.matrix());
    let mut dims: Vec<usize> = phi.summands().iter().map(|s| s.a as usize).collect();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    c.eq("jordan type equals summand dimensions", dims, partition.clone());
    let group = phi.group();
    if !real.x.is_zero() {
        let wd = weighted_dynkin(group, &real.x)?;
        c.check(
            "weighted dynkin labels in {0,1,2}",
            wd.labels.iter().all(|&l| l <= 2),
            || "labels in {0,1,2}".into(),
            || wd.to_string(),
        );
    }
    c.eq(
        "distinguished agrees with partition rule",
        partition_is_distinguished(group, &partition),
        is_distinguished(group, &real.x)?,
    );

    let text = serialize_param(phi);
    let back = parse_spec(&text)?;
    c.eq("serialization round trip", ParsedSpec::Langlands(phi.clone()), back);
    Ok(())
}

fn check_grading(lambda: &InfinitesimalParam, members: &[LanglandsParam], exhaustive: bool, spec: &CorpusSpec) -> CorpusReport {
    let mut report = CorpusReport::default();
    let mut c = Checker {
        report: &mut report,
        subject: lambda.to_string(),
    };
    let spaces = build_spaces(lambda);
    if let Err(e) = spaces.check_invariants() {
        c.failed("vogan space invariants", &e);
    } else {
        c.check("vogan space invariants", true, String::new, String::new);
    }
    let census = match enumerate_orbits_with_census(lambda, spec.seed) {
        Ok(cs) => cs,
        Err(e) => {
            c.failed("orbit enumeration", &e);
            return report;
        }
    };
    c.report.warnings.extend(census.collisions.iter().map(|w| format!("{lambda}: {w}")));
    let records = &census.records;
    let all = params_with_infinitesimal(lambda);
    c.eq(
        "one orbit per parameter",
        all.len(),
        records.iter().filter(|r| r.param.is_some()).count(),
    );
    if exhaustive {
        c.eq("corpus closed under equal grading", all.len(), members.len());
    }

    let mut heiermann_done = false;
    for phi in members {
        c.subject = param_short(phi) + &format!(" on {}", phi.group());
        if let Err(e) = check_param(phi, records, spec.seed, &mut c) {
            c.failed("computation", &e);
        }
        if phi.group().is_classical() && is_discrete(phi) && !heiermann_done {
            heiermann_done = true;
            match heiermann_pipeline(lambda) {
                Ok(h) => {
                    c.check("discrete implies q-distinguished", h.q_distinguished, || "true".into(), || "false".into());
                    c.eq("witness distinguished in unit centralizer", Some(true), h.distinguished_in_centralizer);
                }
                Err(e) => c.failed("q-distinguished pipeline", &e),
            }
        }
    }

    c.subject = lambda.to_string();
    let gl = !lambda.group().is_classical();
    for r in records {
        match double_dual(lambda, r, spec.seed, spec.dual_samples) {
            Ok((d, dd)) => {
                c.check(
                    "dual dimension bound",
                    d.dim <= spaces.vstar.dim(),
                    || format!("at most {}", spaces.vstar.dim()),
                    || d.dim.to_string(),
                );
                if r.is_closed_orbit {
                    c.eq("dual of closed orbit is open", true, d.is_open_orbit);
                }
                if r.is_open_orbit {
                    c.eq("dual of open orbit is closed", true, d.is_closed_orbit);
                }
                if gl {
                    c.eq("dual is an involution", &r.signature, &dd.signature);
                    c.check(
                        "dual dimension complements orbit",
                        r.dim + d.dim >= spaces.v.dim(),
                        || format!("at least {}", spaces.v.dim()),
                        || format!("{} + {}", r.dim, d.dim),
                    );
                }
            }
            Err(e) => c.failed("dual computation", &e),
        }
    }
    for a in records {
        for b in records {
            if std::ptr::eq(a, b) {
                continue;
            }
            if let Ok(true) = closure_leq(a, b) {
                c.check(
                    "closure order raises dimension",
                    a.dim < b.dim,
                    || "smaller dimension below".into(),
                    || format!("{} below {}", a.dim, b.dim),
                );
            }
        }
    }
    report
}

/// Runs every check over the corpus. Work is split by infinitesimal
/// parameter and merged in a fixed order, so the result is reproducible.
pub fn check_all(spec: &CorpusSpec) -> Result<CorpusReport> {
    let (params, exhaustive_count) = generate_split(spec)?;
    let mut by_lambda: BTreeMap<InfinitesimalParam, (Vec<LanglandsParam>, bool)> = BTreeMap::new();
    for (i, p) in params.iter().enumerate() {
        let entry = by_lambda.entry(infinitesimal_of(p)).or_insert_with(|| (Vec::new(), true));
        entry.0.push(p.clone());
        if i >= exhaustive_count {
            entry.1 = false;
        }
    }
    let groups: Vec<(InfinitesimalParam, (Vec<LanglandsParam>, bool))> = by_lambda.into_iter().collect();
    let parts: Vec<CorpusReport> = groups
        .par_iter()
        .map(|(l, (members, exhaustive))| check_grading(l, members, *exhaustive, spec))
        .collect();
    let mut report = CorpusReport {
        schema_version: crate::report::SCHEMA_VERSION,
        kind: "corpus_check",
        parameters: params.len(),
        gradings: groups.len(),
        ..Default::default()
    };
    for p in &params {
        *report.groups.entry(p.group().to_string()).or_insert(0) += 1;
    }
    for p in parts {
        report.merge(p);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(spec: &CorpusSpec) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for p in generate(spec).unwrap() {
            *m.entry(p.group().to_string()).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn default_generation_is_deterministic() {
        let a = generate(&CorpusSpec::default()).unwrap();
        let b = generate(&CorpusSpec::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.len() >= 1000);
    }

    #[test]
    fn gl2_segment_matches_brute_force() {
        // exponents within 3/2 and m = 1: the 7 parameters of GL_2
        let spec = CorpusSpec::simple(vec![Family::GeneralLinear], 2, HalfInteger::from_twice(3), 1, 0);
        let c = counts(&spec);
        assert_eq!(c["GL_1"], 7);
        // unordered pairs of the 7 characters, plus 2-dim summands with |e| ≤ 1
        assert_eq!(c["GL_2"], 7 * 8 / 2 + 5);
    }

    #[test]
    fn exhaustive_segments_agree_with_grading_enumeration() {
        let spec = CorpusSpec::simple(vec![Family::Symplectic, Family::OddOrthogonal], 5, HalfInteger::from_int(1), 4, 0);
        let params = generate(&spec).unwrap();
        let mut by: BTreeMap<InfinitesimalParam, usize> = BTreeMap::new();
        for p in &params {
            *by.entry(infinitesimal_of(p)).or_insert(0) += 1;
        }
        for (l, k) in by {
            assert_eq!(params_with_infinitesimal(&l).len(), k, "{l}");
        }
    }

    #[test]
    fn small_corpus_is_clean() {
        let spec = CorpusSpec::simple(
            vec![Family::GeneralLinear, Family::Symplectic, Family::OddOrthogonal],
            4,
            HalfInteger::from_int(1),
            2,
            7,
        );
        let r = check_all(&spec).unwrap();
        assert!(r.is_clean(), "{:#?}", r.violations);
        assert!(r.coverage["serialization round trip"] == r.parameters);
    }

    #[test]
    fn validation() {
        let mut s = CorpusSpec::default();
        s.segments[0].max_size = 13;
        assert!(matches!(generate(&s), Err(Error::CorpusSpec(_))));
        let mut s = CorpusSpec::default();
        s.segments[1].unit_modulus = 0;
        assert!(s.validate().is_err());
    }
}
