//! Parameter documents and analysis reports.
//!
//! Documents are JSON objects with a `dual_group` and a `unit_modulus` plus
//! one of `summands` (Langlands), `arthur` (Arthur) or `grading`
//! (infinitesimal). Exponents are written as strings such as `"0"`, `"1/2"`
//! or `"-3/2"`; plain integers are accepted on input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::corpus::{CorpusReport, CorpusSpec, RandomConfig, Segment};
use crate::error::{Error, Result};
use crate::exactla::Rational;
use crate::liealg::{DualGroupSpec, Family, LieElement};
use crate::orbits::{
    enumerate_orbits_with_census, hasse_edges, orbit_record, param_of_signature, pyasetskii_dual,
    pyasetskii_dual_with_samples, OrbitRecord, RankSignature,
};
use crate::params::{
    arthur_to_langlands, component_group, infinitesimal_of, is_arthur_type, is_discrete, is_tempered, ArthurParam, ArthurTriple,
    HalfInteger, InfinitesimalParam, Label, LanglandsParam, Summand, DEFAULT_UNIT_MODULUS,
};
use crate::sl2::{heiermann_pipeline, is_distinguished, jordan_partition, weighted_dynkin};
use crate::vogan::{commutant_in_dual, orbit_dim, realize, MatrixRealization};

pub const SCHEMA_VERSION: u32 = 1;

/// A parsed parameter document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedSpec {
    Langlands(LanglandsParam),
    Arthur(ArthurParam),
    Grading(InfinitesimalParam),
}

fn field_err(field: &str, message: impl Into<String>) -> Error {
    Error::Field {
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn get<'a>(obj: &'a Value, field: &str, path: &str) -> Result<&'a Value> {
    obj.get(field).ok_or_else(|| field_err(path, "missing"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| field_err(path, "expected a non-negative integer"))
}

fn as_u32(v: &Value, path: &str) -> Result<u32> {
    u32::try_from(as_u64(v, path)?).map_err(|_| field_err(path, "integer too large"))
}

fn as_half(v: &Value, path: &str) -> Result<HalfInteger> {
    match v {
        Value::String(s) => s.parse().map_err(|m: String| field_err(path, m)),
        Value::Number(n) => n
            .as_i64()
            .map(HalfInteger::from_int)
            .ok_or_else(|| field_err(path, "expected an integer or a string p/2")),
        _ => Err(field_err(path, "expected an integer or a string p/2")),
    }
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| field_err(path, "expected an array"))
}

/// Parses a family name; orthogonal parity follows the size.
pub fn parse_family(name: &str, size: usize) -> Result<DualGroupSpec> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "gl" | "generallinear" | "general_linear" => DualGroupSpec::gl(size),
        "sp" | "symplectic" => DualGroupSpec::sp(size),
        "so" | "orthogonal" | "evenorthogonal" | "oddorthogonal" | "even_orthogonal" | "odd_orthogonal" => {
            let g = DualGroupSpec::so(size)?;
            let wants_even = lower.starts_with("even");
            let wants_odd = lower.starts_with("odd");
            if (wants_even && size % 2 == 1) || (wants_odd && size % 2 == 0) {
                return Err(Error::InvalidGroup(format!("{name} of size {size}")));
            }
            Ok(g)
        }
        _ => Err(Error::InvalidGroup(format!("unknown family `{name}`"))),
    }
}

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::GeneralLinear => "GL",
        Family::Symplectic => "Sp",
        Family::EvenOrthogonal | Family::OddOrthogonal => "SO",
    }
}

fn parse_group(doc: &Value) -> Result<DualGroupSpec> {
    let g = get(doc, "dual_group", "dual_group")?;
    let fam = get(g, "family", "dual_group.family")?
        .as_str()
        .ok_or_else(|| field_err("dual_group.family", "expected a string"))?;
    let size = as_u64(get(g, "size", "dual_group.size")?, "dual_group.size")? as usize;
    parse_family(fam, size)
}

/// Parses a document, using `default_modulus` when it names no
/// `unit_modulus`.
pub fn parse_spec_with_modulus(text: &str, default_modulus: u32) -> Result<ParsedSpec> {
    let doc = parse_json(text)?;
    if !doc.is_object() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected a JSON object".into(),
        });
    }
    let group = parse_group(&doc)?;
    let modulus = match doc.get("unit_modulus") {
        Some(v) => as_u32(v, "unit_modulus")?,
        None => default_modulus,
    };
    let present: Vec<&str> = ["summands", "arthur", "grading"]
        .into_iter()
        .filter(|k| doc.get(*k).is_some())
        .collect();
    if present.len() != 1 {
        return Err(field_err(
            "summands",
            "exactly one of `summands`, `arthur`, `grading` is required",
        ));
    }
    match present[0] {
        "summands" => {
            let mut out = Vec::new();
            for (i, s) in as_array(&doc["summands"], "summands")?.iter().enumerate() {
                let p = format!("summands[{i}]");
                out.push(Summand::new(
                    as_u32(get(s, "u", &format!("{p}.u"))?, &format!("{p}.u"))?,
                    as_half(get(s, "e", &format!("{p}.e"))?, &format!("{p}.e"))?,
                    as_u32(get(s, "a", &format!("{p}.a"))?, &format!("{p}.a"))?,
                ));
            }
            Ok(ParsedSpec::Langlands(LanglandsParam::new(group, modulus, out)?))
        }
        "arthur" => {
            let mut out = Vec::new();
            for (i, s) in as_array(&doc["arthur"], "arthur")?.iter().enumerate() {
                let p = format!("arthur[{i}]");
                out.push(ArthurTriple::new(
                    as_u32(get(s, "u", &format!("{p}.u"))?, &format!("{p}.u"))?,
                    as_u32(get(s, "a", &format!("{p}.a"))?, &format!("{p}.a"))?,
                    as_u32(get(s, "b", &format!("{p}.b"))?, &format!("{p}.b"))?,
                ));
            }
            Ok(ParsedSpec::Arthur(ArthurParam::new(group, modulus, out)?))
        }
        _ => {
            let mut grading = BTreeMap::new();
            for (i, s) in as_array(&doc["grading"], "grading")?.iter().enumerate() {
                let p = format!("grading[{i}]");
                let l = Label::new(
                    as_u32(get(s, "u", &format!("{p}.u"))?, &format!("{p}.u"))?,
                    as_half(get(s, "e", &format!("{p}.e"))?, &format!("{p}.e"))?,
                );
                let k = as_u64(get(s, "mult", &format!("{p}.mult"))?, &format!("{p}.mult"))? as usize;
                *grading.entry(l).or_insert(0) += k;
            }
            Ok(ParsedSpec::Grading(InfinitesimalParam::new(group, modulus, grading)?))
        }
    }
}

pub fn parse_spec(text: &str) -> Result<ParsedSpec> {
    parse_spec_with_modulus(text, DEFAULT_UNIT_MODULUS)
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct GroupJson {
    pub family: &'static str,
    pub size: usize,
}

impl GroupJson {
    fn of(g: &DualGroupSpec) -> Self {
        GroupJson {
            family: family_name(g.family()),
            size: g.size(),
        }
    }
}

/// The Langlands parameter a document stands for; Arthur documents go
/// through their associated parameter.
pub fn langlands_of(spec: &ParsedSpec) -> Result<LanglandsParam> {
    match spec {
        ParsedSpec::Langlands(phi) => Ok(phi.clone()),
        ParsedSpec::Arthur(psi) => arthur_to_langlands(psi),
        ParsedSpec::Grading(_) => Err(field_err(
            "grading",
            "this command needs a Langlands or Arthur parameter, not a grading",
        )),
    }
}

/// The infinitesimal parameter of any document.
pub fn grading_of(spec: &ParsedSpec) -> Result<InfinitesimalParam> {
    match spec {
        ParsedSpec::Grading(l) => Ok(l.clone()),
        other => Ok(infinitesimal_of(&langlands_of(other)?)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Survey,
    Dual,
}

/// Runs `cmd` on a document and renders the result as JSON or text.
pub fn render(spec: &ParsedSpec, cmd: Command, seed: u64, json: bool) -> Result<String> {
    macro_rules! out {
        ($r:expr) => {{
            let r = $r;
            Ok(if json { r.to_json() } else { r.to_text() })
        }};
    }
    match cmd {
        Command::Analyze => out!(analyze(&langlands_of(spec)?, seed)?),
        Command::Survey => out!(survey(&grading_of(spec)?, seed)?),
        Command::Dual => out!(dual(&langlands_of(spec)?, seed)?),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SummandJson {
    pub u: u32,
    pub e: String,
    pub a: u32,
}

#[derive(Serialize, Clone, Debug)]
pub struct ParamJson {
    pub dual_group: GroupJson,
    pub unit_modulus: u32,
    pub summands: Vec<SummandJson>,
}

impl ParamJson {
    pub fn of(phi: &LanglandsParam) -> Self {
        ParamJson {
            dual_group: GroupJson::of(phi.group()),
            unit_modulus: phi.unit_modulus(),
            summands: phi
                .summands()
                .iter()
                .map(|s| SummandJson {
                    u: s.u.0,
                    e: s.e.to_string(),
                    a: s.a,
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct ArthurTripleJson {
    pub u: u32,
    pub a: u32,
    pub b: u32,
}

#[derive(Serialize, Clone, Debug)]
struct ArthurDocJson {
    dual_group: GroupJson,
    unit_modulus: u32,
    arthur: Vec<ArthurTripleJson>,
}

fn arthur_json(psi: &ArthurParam) -> Vec<ArthurTripleJson> {
    psi.triples()
        .iter()
        .map(|t| ArthurTripleJson { u: t.u.0, a: t.a, b: t.b })
        .collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct GradingEntryJson {
    pub u: u32,
    pub e: String,
    pub mult: usize,
}

#[derive(Serialize, Clone, Debug)]
struct GradingDocJson {
    dual_group: GroupJson,
    unit_modulus: u32,
    grading: Vec<GradingEntryJson>,
}

fn grading_json(lambda: &InfinitesimalParam) -> Vec<GradingEntryJson> {
    lambda
        .grading()
        .iter()
        .map(|(l, &k)| GradingEntryJson {
            u: l.u.0,
            e: l.e.to_string(),
            mult: k,
        })
        .collect()
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// Canonical document text of a parameter.
pub fn serialize_spec(spec: &ParsedSpec) -> String {
    match spec {
        ParsedSpec::Langlands(phi) => pretty(&ParamJson::of(phi)),
        ParsedSpec::Arthur(psi) => pretty(&ArthurDocJson {
            dual_group: GroupJson::of(psi.group()),
            unit_modulus: psi.unit_modulus(),
            arthur: arthur_json(psi),
        }),
        ParsedSpec::Grading(l) => pretty(&GradingDocJson {
            dual_group: GroupJson::of(l.group()),
            unit_modulus: l.unit_modulus(),
            grading: grading_json(l),
        }),
    }
}

pub fn serialize_param(phi: &LanglandsParam) -> String {
    serialize_spec(&ParsedSpec::Langlands(phi.clone()))
}

/// Compact one-line form `{(u, e, a), …}`.
pub fn param_short(phi: &LanglandsParam) -> String {
    let parts: Vec<String> = phi
        .summands()
        .iter()
        .map(|s| format!("({}, {}, {})", s.u.0, s.e, s.a))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Serialize, Clone, Debug)]
pub struct LabelJson {
    pub u: u32,
    pub e: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

fn entries_json(x: &LieElement) -> Vec<EntryJson> {
    let m = x.matrix();
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v: &Rational = m.get(r, c);
            if !num_traits::Zero::is_zero(v) {
                out.push(EntryJson {
                    row: r,
                    col: c,
                    value: v.to_string(),
                });
            }
        }
    }
    out
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct SignatureEntryJson {
    pub u: u32,
    pub i: String,
    pub j: String,
    pub rank: usize,
}

fn signature_json(sig: &RankSignature) -> Vec<SignatureEntryJson> {
    sig.iter()
        .map(|((u, i, j), &r)| SignatureEntryJson {
            u: u.0,
            i: i.to_string(),
            j: j.to_string(),
            rank: r,
        })
        .collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct ConormalJson {
    pub orbit_dim: usize,
    pub fiber_dim: usize,
    pub ambient_dim: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct ComponentGroupJson {
    pub gl_factors: usize,
    pub orthogonal_factors: usize,
    pub symplectic_factors: usize,
    pub two_rank: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct JordanJson {
    pub partition: Vec<usize>,
    pub weighted_dynkin: Vec<u8>,
    pub distinguished: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct OrbitJson {
    pub dim: usize,
    pub open: bool,
    pub closed: bool,
    pub parameter: Option<Vec<SummandJson>>,
    pub signature: Vec<SignatureEntryJson>,
}

impl OrbitJson {
    fn of(rec: &OrbitRecord) -> Self {
        OrbitJson {
            dim: rec.dim,
            open: rec.is_open_orbit,
            closed: rec.is_closed_orbit,
            parameter: rec.param.as_ref().map(|p| ParamJson::of(p).summands),
            signature: signature_json(&rec.signature),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct WitnessJson {
    pub x: Vec<EntryJson>,
    pub distinguished_in_centralizer: bool,
    pub distinguished_in_group: bool,
}

/// Every verdict about one Langlands parameter.
#[derive(Serialize, Clone, Debug)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub parameter: ParamJson,
    pub infinitesimal: Vec<GradingEntryJson>,
    pub basis_labels: Vec<LabelJson>,
    pub x_phi: Vec<EntryJson>,
    pub dim_v: usize,
    pub dim_h: usize,
    pub orbit_dim: usize,
    pub open: bool,
    pub tempered: bool,
    pub arthur_type: bool,
    pub arthur_witness: Option<Vec<ArthurTripleJson>>,
    pub discrete: bool,
    pub l_adjoint_order: usize,
    pub conormal: ConormalJson,
    pub component_group: ComponentGroupJson,
    pub jordan: Option<JordanJson>,
    pub dual_orbit: OrbitJson,
    pub q_distinguished: bool,
    pub distinguished_witness: Option<WitnessJson>,
}

fn labels_json(labels: &[Label]) -> Vec<LabelJson> {
    labels
        .iter()
        .map(|l| LabelJson {
            u: l.u.0,
            e: l.e.to_string(),
        })
        .collect()
}

fn realized_record(real: &MatrixRealization) -> Result<OrbitRecord> {
    orbit_record(&real.spaces(), real.x.clone())
}

/// Runs every analysis on `phi`. Fails with a cross-check error when open
/// orbits and regular adjoint L-functions disagree.
pub fn analyze(phi: &LanglandsParam, seed: u64) -> Result<AnalysisReport> {
    let lambda = infinitesimal_of(phi);
    let real = realize(phi)?;
    let spaces = real.spaces();
    let od = orbit_dim(&spaces, &real.x)?;
    let k = commutant_in_dual(&spaces, &real.x)?.dim();
    let dim_v = spaces.v.dim();
    let open = od == dim_v;
    if open != (k == 0) || od + k != dim_v {
        return Err(Error::CrossCheck(format!(
            "{phi}: orbit dimension {od}, commutant dimension {k}, dim V {dim_v}"
        )));
    }
    let arthur = is_arthur_type(phi);
    let cg = component_group(phi)?;
    let jordan = if real.x.is_zero() {
        None
    } else {
        Some(JordanJson {
            partition: jordan_partition(real.x.matrix()),
            weighted_dynkin: weighted_dynkin(phi.group(), &real.x)?.labels,
            distinguished: is_distinguished(phi.group(), &real.x)?,
        })
    };
    let record = realized_record(&real)?;
    let dual = pyasetskii_dual(&lambda, &record, seed)?;
    let heiermann = heiermann_pipeline(&lambda)?;
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        kind: "analysis",
        parameter: ParamJson::of(phi),
        infinitesimal: grading_json(&lambda),
        basis_labels: labels_json(&real.basis_labels),
        x_phi: entries_json(&real.x),
        dim_v,
        dim_h: spaces.h.dim(),
        orbit_dim: od,
        open,
        tempered: is_tempered(phi),
        arthur_type: arthur.is_some(),
        arthur_witness: arthur.as_ref().map(arthur_json),
        discrete: is_discrete(phi),
        l_adjoint_order: k,
        conormal: ConormalJson {
            orbit_dim: od,
            fiber_dim: k,
            ambient_dim: dim_v,
        },
        component_group: ComponentGroupJson {
            gl_factors: cg.gl_factors,
            orthogonal_factors: cg.orthogonal_factors,
            symplectic_factors: cg.symplectic_factors,
            two_rank: cg.two_rank,
        },
        jordan,
        dual_orbit: OrbitJson::of(&dual),
        q_distinguished: heiermann.q_distinguished,
        distinguished_witness: heiermann.witness.as_ref().map(|w| WitnessJson {
            x: entries_json(w),
            distinguished_in_centralizer: heiermann.distinguished_in_centralizer.unwrap_or(false),
            distinguished_in_group: heiermann.distinguished_in_group.unwrap_or(false),
        }),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn summands_short(s: &[SummandJson]) -> String {
    let parts: Vec<String> = s.iter().map(|s| format!("({}, {}, {})", s.u, s.e, s.a)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<24}{value}");
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        pretty(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let g = &self.parameter.dual_group;
        kv(&mut out, "group", format!("{}_{}", g.family, g.size));
        kv(&mut out, "unit modulus", self.parameter.unit_modulus);
        kv(&mut out, "parameter", summands_short(&self.parameter.summands));
        let grading: Vec<String> = self
            .infinitesimal
            .iter()
            .map(|g| format!("({}, {}):{}", g.u, g.e, g.mult))
            .collect();
        kv(&mut out, "infinitesimal", grading.join(" "));
        kv(&mut out, "dim V", self.dim_v);
        kv(&mut out, "dim h", self.dim_h);
        kv(&mut out, "orbit dim", self.orbit_dim);
        kv(&mut out, "open", yes_no(self.open));
        kv(&mut out, "tempered", yes_no(self.tempered));
        let arthur = match &self.arthur_witness {
            Some(w) => {
                let parts: Vec<String> = w.iter().map(|t| format!("({}, {}, {})", t.u, t.a, t.b)).collect();
                format!("yes {}", parts.join(" "))
            }
            None => "no".into(),
        };
        kv(&mut out, "arthur type", arthur);
        kv(&mut out, "discrete", yes_no(self.discrete));
        kv(&mut out, "L(s, Ad) pole order", self.l_adjoint_order);
        kv(
            &mut out,
            "conormal fibre",
            format!(
                "{} + {} = {}",
                self.conormal.orbit_dim, self.conormal.fiber_dim, self.conormal.ambient_dim
            ),
        );
        kv(&mut out, "component 2-rank", self.component_group.two_rank);
        match &self.jordan {
            Some(j) => {
                let p: Vec<String> = j.partition.iter().map(usize::to_string).collect();
                let w: Vec<String> = j.weighted_dynkin.iter().map(u8::to_string).collect();
                kv(&mut out, "jordan type", format!("({})", p.join(",")));
                kv(&mut out, "weighted dynkin", format!("({})", w.join(",")));
                kv(&mut out, "distinguished", yes_no(j.distinguished));
            }
            None => kv(&mut out, "jordan type", "zero"),
        }
        let dual = match &self.dual_orbit.parameter {
            Some(p) => format!("dim {} {}", self.dual_orbit.dim, summands_short(p)),
            None => format!("dim {}", self.dual_orbit.dim),
        };
        kv(&mut out, "dual orbit", dual);
        kv(&mut out, "q-distinguished", yes_no(self.q_distinguished));
        if let Some(w) = &self.distinguished_witness {
            kv(
                &mut out,
                "witness",
                format!(
                    "{} entries, distinguished in centralizer: {}, in group: {}",
                    w.x.len(),
                    yes_no(w.distinguished_in_centralizer),
                    yes_no(w.distinguished_in_group)
                ),
            );
        }
        out
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SurveyRow {
    pub index: usize,
    #[serde(flatten)]
    pub orbit: OrbitJson,
    pub dual: OrbitJson,
}

#[derive(Serialize, Clone, Debug)]
pub struct CensusJson {
    pub samples: usize,
    pub sampled_dims: Vec<usize>,
    pub collisions: Vec<String>,
}

/// The orbit table of one infinitesimal parameter.
#[derive(Serialize, Clone, Debug)]
pub struct SurveyReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub dual_group: GroupJson,
    pub unit_modulus: u32,
    pub grading: Vec<GradingEntryJson>,
    pub dim_v: usize,
    pub orbits: Vec<SurveyRow>,
    pub hasse_edges: Vec<[usize; 2]>,
    pub census: CensusJson,
}

pub fn survey(lambda: &InfinitesimalParam, seed: u64) -> Result<SurveyReport> {
    let census = enumerate_orbits_with_census(lambda, seed)?;
    let mut rows = Vec::new();
    for (i, rec) in census.records.iter().enumerate() {
        let d = pyasetskii_dual(lambda, rec, seed)?;
        rows.push(SurveyRow {
            index: i,
            orbit: OrbitJson::of(rec),
            dual: OrbitJson::of(&d),
        });
    }
    let dim_v = census.records.iter().map(|r| r.dim).max().unwrap_or(0);
    Ok(SurveyReport {
        schema_version: SCHEMA_VERSION,
        kind: "survey",
        dual_group: GroupJson::of(lambda.group()),
        unit_modulus: lambda.unit_modulus(),
        grading: grading_json(lambda),
        dim_v,
        orbits: rows,
        hasse_edges: hasse_edges(&census.records)?.into_iter().map(|(a, b)| [a, b]).collect(),
        census: CensusJson {
            samples: census.samples,
            sampled_dims: census.sampled_dims,
            collisions: census.collisions,
        },
    })
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|s| s.to_string()).collect());
    out += &line(widths.iter().map(|&w| "-".repeat(w)).collect());
    for r in rows {
        out += &line(r.clone());
    }
    out
}

fn orbit_param_short(o: &OrbitJson) -> String {
    o.parameter.as_deref().map_or_else(|| "?".into(), summands_short)
}

impl SurveyReport {
    pub fn to_json(&self) -> String {
        pretty(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let grading: Vec<String> = self
            .grading
            .iter()
            .map(|g| format!("({}, {}):{}", g.u, g.e, g.mult))
            .collect();
        kv(
            &mut out,
            "group",
            format!("{}_{}", self.dual_group.family, self.dual_group.size),
        );
        kv(&mut out, "grading", grading.join(" "));
        kv(&mut out, "dim V", self.dim_v);
        kv(&mut out, "orbits", self.orbits.len());
        out.push('\n');
        let rows: Vec<Vec<String>> = self
            .orbits
            .iter()
            .map(|r| {
                let flag = match (r.orbit.open, r.orbit.closed) {
                    (true, true) => "open,closed",
                    (true, false) => "open",
                    (false, true) => "closed",
                    _ => "",
                };
                let sig: Vec<String> = r.orbit.signature.iter().map(|s| s.rank.to_string()).collect();
                vec![
                    r.index.to_string(),
                    r.orbit.dim.to_string(),
                    flag.to_string(),
                    orbit_param_short(&r.orbit),
                    format!("[{}]", sig.join(",")),
                    r.dual.dim.to_string(),
                    orbit_param_short(&r.dual),
                ]
            })
            .collect();
        out += &table(&["#", "dim", "flags", "parameter", "signature", "dual dim", "dual parameter"], &rows);
        let edges: Vec<String> = self.hasse_edges.iter().map(|[a, b]| format!("{a}<{b}")).collect();
        out.push('\n');
        kv(&mut out, "closure edges", edges.join(" "));
        if self.census.samples > 0 {
            kv(&mut out, "random samples", self.census.samples);
        }
        for c in &self.census.collisions {
            kv(&mut out, "collision", c);
        }
        out
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct DualReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub parameter: ParamJson,
    pub orbit: OrbitJson,
    pub dual: OrbitJson,
}

pub fn dual(phi: &LanglandsParam, seed: u64) -> Result<DualReport> {
    let real = realize(phi)?;
    let record = realized_record(&real)?;
    let d = pyasetskii_dual(&infinitesimal_of(phi), &record, seed)?;
    Ok(DualReport {
        schema_version: SCHEMA_VERSION,
        kind: "dual",
        parameter: ParamJson::of(phi),
        orbit: OrbitJson::of(&record),
        dual: OrbitJson::of(&d),
    })
}

impl DualReport {
    pub fn to_json(&self) -> String {
        pretty(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        kv(&mut out, "parameter", summands_short(&self.parameter.summands));
        for (name, o) in [("orbit", &self.orbit), ("dual orbit", &self.dual)] {
            let sig: Vec<String> = o.signature.iter().map(|s| s.rank.to_string()).collect();
            kv(
                &mut out,
                name,
                format!(
                    "dim {} {} signature [{}]{}{}",
                    o.dim,
                    orbit_param_short(o),
                    sig.join(","),
                    if o.open { " open" } else { "" },
                    if o.closed { " closed" } else { "" }
                ),
            );
        }
        out
    }
}

/// Double-dual helper used by the corpus: `C**` for a record of `lambda`.
pub fn double_dual(lambda: &InfinitesimalParam, rec: &OrbitRecord, seed: u64, samples: usize) -> Result<(OrbitRecord, OrbitRecord)> {
    let d = pyasetskii_dual_with_samples(lambda, rec, seed, samples)?;
    let dd = pyasetskii_dual_with_samples(&lambda.mirrored(), &d, seed.wrapping_add(1), samples)?;
    Ok((d, dd))
}

/// Recovers the parameter an orbit record stands for, if any.
pub fn record_param(rec: &OrbitRecord) -> Option<LanglandsParam> {
    rec.param
        .clone()
        .or_else(|| param_of_signature(*rec.group(), rec.unit_modulus, &rec.labels, &rec.signature))
}

/// Parses a corpus specification document.
///
/// Accepted shapes: the full form with `segments` and `random`, or the flat
/// form `{families, max_size, max_abs_exponent, unit_modulus, seed}`.
pub fn parse_corpus_spec(text: &str) -> Result<CorpusSpec> {
    let doc = parse_json(text)?;
    let fams = |v: &Value, path: &str| -> Result<Vec<Family>> {
        as_array(v, path)?
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let p = format!("{path}[{i}]");
                let name = f.as_str().ok_or_else(|| field_err(&p, "expected a string"))?;
                match name.to_ascii_lowercase().as_str() {
                    "gl" | "generallinear" => Ok(Family::GeneralLinear),
                    "sp" | "symplectic" => Ok(Family::Symplectic),
                    "so" | "orthogonal" => Ok(Family::OddOrthogonal),
                    _ => Err(field_err(&p, format!("unknown family `{name}`"))),
                }
            })
            .collect()
    };
    let segment = |v: &Value, path: &str| -> Result<Segment> {
        Ok(Segment {
            families: fams(get(v, "families", &format!("{path}.families"))?, &format!("{path}.families"))?,
            max_size: as_u64(get(v, "max_size", &format!("{path}.max_size"))?, &format!("{path}.max_size"))? as usize,
            max_abs_exponent: as_half(
                get(v, "max_abs_exponent", &format!("{path}.max_abs_exponent"))?,
                &format!("{path}.max_abs_exponent"),
            )?,
            unit_modulus: match v.get("unit_modulus") {
                Some(m) => as_u32(m, &format!("{path}.unit_modulus"))?,
                None => DEFAULT_UNIT_MODULUS,
            },
        })
    };
    let seed = match doc.get("seed") {
        Some(s) => as_u64(s, "seed")?,
        None => 0,
    };
    let spec = if let Some(segs) = doc.get("segments") {
        let segments = as_array(segs, "segments")?
            .iter()
            .enumerate()
            .map(|(i, s)| segment(s, &format!("segments[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let random = match doc.get("random") {
            Some(r) => RandomConfig {
                count: as_u64(get(r, "count", "random.count")?, "random.count")? as usize,
                min_size: match r.get("min_size") {
                    Some(v) => as_u64(v, "random.min_size")? as usize,
                    None => 1,
                },
                max_size: as_u64(get(r, "max_size", "random.max_size")?, "random.max_size")? as usize,
                max_abs_exponent: as_half(get(r, "max_abs_exponent", "random.max_abs_exponent")?, "random.max_abs_exponent")?,
                unit_modulus: match r.get("unit_modulus") {
                    Some(m) => as_u32(m, "random.unit_modulus")?,
                    None => DEFAULT_UNIT_MODULUS,
                },
            },
            None => RandomConfig::none(),
        };
        let mut spec = CorpusSpec::new(segments, random, seed);
        if let Some(d) = doc.get("dual_samples") {
            spec.dual_samples = as_u64(d, "dual_samples")? as usize;
        }
        spec
    } else {
        CorpusSpec::new(vec![segment(&doc, "")?], RandomConfig::none(), seed)
    };
    spec.validate()?;
    Ok(spec)
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        pretty(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        kv(&mut out, "parameters", self.parameters);
        kv(&mut out, "gradings", self.gradings);
        kv(&mut out, "violations", self.violations.len());
        out.push('\n');
        let rows: Vec<Vec<String>> = self
            .coverage
            .iter()
            .map(|(k, v)| vec![k.clone(), v.to_string()])
            .collect();
        out += &table(&["property", "checked"], &rows);
        for v in &self.violations {
            let _ = writeln!(
                out,
                "\nVIOLATION {}\n  parameter: {}\n  expected:  {}\n  actual:    {}",
                v.property, v.parameter, v.expected, v.actual
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
