//! `H_λ`-orbits in `V_λ`: rank signatures, enumeration, closure order,
//! open orbits and Pyasetskii duality.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactla::{random_vector, rank, RatMatrix, Rational};
use crate::liealg::{DualGroupSpec, LieElement};
use crate::params::{
    params_with_infinitesimal, HalfInteger, InfinitesimalParam, Label, LanglandsParam, Summand, UnitLabel,
};
use crate::vogan::{commutant_in_dual, element, orbit_dim, realize, spaces_for_labels, VoganSpaces};

/// `(u, i, j)` with `i < j` on one unbroken chain of exponents of unit `u`.
pub type SignatureKey = (UnitLabel, HalfInteger, HalfInteger);

/// Rank of `x^{j-i}` from `E_(u,i)` to `E_(u,j)` for every key.
pub type RankSignature = BTreeMap<SignatureKey, usize>;

/// Default number of generic samples drawn by [`pyasetskii_dual`].
pub const DEFAULT_DUAL_SAMPLES: usize = 32;

/// Extra random samples of `V ∩ ĝ` drawn when enumerating orbits of a
/// classical group, on top of the realized parameters.
pub const CLASSICAL_CENSUS_SAMPLES: usize = 8;

/// Attempts at a random generic element before [`open_orbit_rep`] gives up.
pub const OPEN_ORBIT_RETRIES: u64 = 16;

/// Seed of the `s`-th sample derived from a base seed.
pub fn sample_seed(seed: u64, s: u64) -> u64 {
    seed.wrapping_add(s.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Maximal runs of exponents differing by 1, per unit. Integral and
/// half-integral exponents never share a run.
fn chains(labels: &[Label]) -> Vec<(UnitLabel, Vec<HalfInteger>)> {
    let mut by_class: BTreeMap<(UnitLabel, i64), Vec<HalfInteger>> = BTreeMap::new();
    for l in labels {
        by_class.entry((l.u, l.e.twice().rem_euclid(2))).or_default().push(l.e);
    }
    let mut out = Vec::new();
    for ((u, _), mut es) in by_class {
        es.sort();
        es.dedup();
        let mut run: Vec<HalfInteger> = Vec::new();
        for e in es {
            if run.last().is_some_and(|&p| e.twice() - p.twice() != 2) {
                out.push((u, std::mem::take(&mut run)));
            }
            run.push(e);
        }
        if !run.is_empty() {
            out.push((u, run));
        }
    }
    out
}

fn positions(labels: &[Label], l: Label) -> Vec<usize> {
    (0..labels.len()).filter(|&i| labels[i] == l).collect()
}

/// Rank signature of a graded matrix with the given basis labels.
pub fn signature_of_matrix(x: &RatMatrix, labels: &[Label]) -> RankSignature {
    let mut powers: Vec<RatMatrix> = vec![x.clone()];
    let mut out = RankSignature::new();
    for (u, run) in chains(labels) {
        let pos: Vec<Vec<usize>> = run.iter().map(|&e| positions(labels, Label { u, e })).collect();
        for a in 0..run.len() {
            for b in a + 1..run.len() {
                while powers.len() < b - a {
                    let next = powers.last().unwrap().mul(x);
                    powers.push(next);
                }
                let block = powers[b - a - 1].select(&pos[b], &pos[a]);
                out.insert((u, run[a], run[b]), rank(&block));
            }
        }
    }
    out
}

pub fn signature_of(spaces: &VoganSpaces, x: &LieElement) -> Result<RankSignature> {
    if !spaces.v.contains(x.matrix().entries()) {
        return Err(Error::NotInVoganVariety);
    }
    Ok(signature_of_matrix(x.matrix(), spaces.labels()))
}

/// The multisegment with the given rank signature, by inclusion–exclusion
/// over interval ranks; `None` if it is not a valid parameter of `group`.
pub fn param_of_signature(
    group: DualGroupSpec,
    unit_modulus: u32,
    labels: &[Label],
    sig: &RankSignature,
) -> Option<LanglandsParam> {
    let mut summands = Vec::new();
    for (u, run) in chains(labels) {
        let r = |a: isize, b: isize| -> isize {
            if a < 0 || b as usize >= run.len() || a > b {
                return 0;
            }
            let (a, b) = (a as usize, b as usize);
            if a == b {
                return positions(labels, Label { u, e: run[a] }).len() as isize;
            }
            sig.get(&(u, run[a], run[b])).map_or(0, |&k| k as isize)
        };
        for a in 0..run.len() as isize {
            for b in a..run.len() as isize {
                let k = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1);
                if k < 0 {
                    return None;
                }
                let (lo, hi) = (run[a as usize], run[b as usize]);
                let s = Summand {
                    u,
                    e: HalfInteger::from_twice((lo.twice() + hi.twice()) / 2),
                    a: (b - a + 1) as u32,
                };
                summands.extend(std::iter::repeat_n(s, k as usize));
            }
        }
    }
    LanglandsParam::new(group, unit_modulus, summands).ok()
}

/// One `H_λ`-orbit in `V_λ` for a fixed arrangement of basis labels.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub signature: RankSignature,
    pub dim: usize,
    pub representative: LieElement,
    pub is_open_orbit: bool,
    pub is_closed_orbit: bool,
    /// Basis labels the representative is written in.
    pub labels: Vec<Label>,
    pub unit_modulus: u32,
    /// The Langlands parameter of the orbit when it can be read off the
    /// signature.
    pub param: Option<LanglandsParam>,
}

impl OrbitRecord {
    pub fn group(&self) -> &DualGroupSpec {
        self.representative.group()
    }

    pub fn spaces(&self) -> VoganSpaces {
        spaces_for_labels(*self.group(), self.unit_modulus, &self.labels).expect("record labels are admissible")
    }
}

/// Dimension, signature and parameter of the orbit through `x`.
pub fn orbit_record(spaces: &VoganSpaces, x: LieElement) -> Result<OrbitRecord> {
    let dim = orbit_dim(spaces, &x)?;
    let signature = signature_of(spaces, &x)?;
    let param = param_of_signature(*spaces.group(), spaces.unit_modulus(), spaces.labels(), &signature);
    Ok(OrbitRecord {
        dim,
        is_open_orbit: dim == spaces.v.dim(),
        is_closed_orbit: dim == 0,
        representative: x,
        labels: spaces.labels().to_vec(),
        unit_modulus: spaces.unit_modulus(),
        param,
        signature,
    })
}

/// Orbits together with the bookkeeping of a randomized enumeration.
#[derive(Clone, Debug, Default)]
pub struct OrbitCensus {
    pub records: Vec<OrbitRecord>,
    /// Random samples drawn (zero for `GL_N`, where enumeration is complete).
    pub samples: usize,
    /// Orbit dimensions met among the samples.
    pub sampled_dims: Vec<usize>,
    /// Signatures met with two different orbit dimensions.
    pub collisions: Vec<String>,
}

/// All orbits for `GL_N`; for classical groups, every realized parameter plus
/// a seeded random census of `V ∩ ĝ`. Sorted by dimension, then signature.
pub fn enumerate_orbits(lambda: &InfinitesimalParam, seed: u64) -> Result<Vec<OrbitRecord>> {
    Ok(enumerate_orbits_with_census(lambda, seed)?.records)
}

pub fn enumerate_orbits_with_census(lambda: &InfinitesimalParam, seed: u64) -> Result<OrbitCensus> {
    let spaces = crate::vogan::build_spaces(lambda);
    let mut by_sig: BTreeMap<RankSignature, OrbitRecord> = BTreeMap::new();
    let mut census = OrbitCensus::default();
    for phi in params_with_infinitesimal(lambda) {
        let real = realize(&phi)?;
        let mut rec = orbit_record(&spaces, real.x)?;
        if rec.param.as_ref() != Some(&phi) {
            return Err(Error::CrossCheck(format!("signature of the realization of {phi} does not return it")));
        }
        rec.param = Some(phi);
        if by_sig.contains_key(&rec.signature) {
            return Err(Error::CrossCheck(format!("two parameters share the signature {:?}", rec.signature)));
        }
        insert_record(&mut by_sig, rec, &mut census);
    }
    if lambda.group().is_classical() {
        for s in 0..CLASSICAL_CENSUS_SAMPLES as u64 {
            let x = element(*lambda.group(), random_vector(&spaces.v, sample_seed(seed, s)));
            let rec = orbit_record(&spaces, x)?;
            census.samples += 1;
            census.sampled_dims.push(rec.dim);
            insert_record(&mut by_sig, rec, &mut census);
        }
    }
    let mut records: Vec<OrbitRecord> = by_sig.into_values().collect();
    records.sort_by(|a, b| (a.dim, &a.signature).cmp(&(b.dim, &b.signature)));
    let open = records.iter().filter(|r| r.is_open_orbit).count();
    let closed = records.iter().filter(|r| r.is_closed_orbit).count();
    if open != 1 || closed != 1 {
        return Err(Error::Enumeration(format!(
            "found {open} open and {closed} closed orbits for {lambda}"
        )));
    }
    census.records = records;
    Ok(census)
}

/// Keys orbits by signature; a signature met again with another dimension
/// is recorded as a collision instead of being merged.
fn insert_record(by_sig: &mut BTreeMap<RankSignature, OrbitRecord>, rec: OrbitRecord, census: &mut OrbitCensus) {
    match by_sig.get(&rec.signature) {
        Some(old) if old.dim != rec.dim => census.collisions.push(format!(
            "signature {:?} seen with dimensions {} and {}",
            rec.signature, old.dim, rec.dim
        )),
        Some(_) => {}
        None => {
            by_sig.insert(rec.signature.clone(), rec);
        }
    }
}

/// Pointwise comparison of rank signatures.
pub fn closure_leq(a: &OrbitRecord, b: &OrbitRecord) -> Result<bool> {
    if a.labels != b.labels || a.group() != b.group() {
        return Err(Error::LambdaMismatch);
    }
    Ok(a.signature.iter().all(|(k, &r)| r <= b.signature.get(k).copied().unwrap_or(0)))
}

/// Covering relations `(i, j)` of the closure order on `records`, with
/// `records[i]` below `records[j]`.
pub fn hasse_edges(records: &[OrbitRecord]) -> Result<Vec<(usize, usize)>> {
    let n = records.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = i != j && closure_leq(&records[i], &records[j])?;
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] && !(0..n).any(|k| leq[i][k] && leq[k][j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

fn check_lambda(lambda: &InfinitesimalParam, labels: &[Label]) -> Result<()> {
    let mut grading: BTreeMap<Label, usize> = BTreeMap::new();
    for &l in labels {
        *grading.entry(l).or_insert(0) += 1;
    }
    if &grading != lambda.grading() {
        return Err(Error::LambdaMismatch);
    }
    Ok(())
}

/// The orbit in `V*_λ` dense in the projection of the conormal bundle of
/// `record`'s orbit, found among generic samples of `K_x`.
pub fn pyasetskii_dual(lambda: &InfinitesimalParam, record: &OrbitRecord, seed: u64) -> Result<OrbitRecord> {
    pyasetskii_dual_with_samples(lambda, record, seed, DEFAULT_DUAL_SAMPLES)
}

pub fn pyasetskii_dual_with_samples(
    lambda: &InfinitesimalParam,
    record: &OrbitRecord,
    seed: u64,
    samples: usize,
) -> Result<OrbitRecord> {
    check_lambda(lambda, &record.labels)?;
    let spaces = record.spaces();
    let k = commutant_in_dual(&spaces, &record.representative)?;
    let dual_spaces = spaces.mirrored();
    let group = *record.group();
    if k.is_empty() {
        return orbit_record(&dual_spaces, LieElement::zero(group));
    }
    let mut best: Option<OrbitRecord> = None;
    for s in 0..samples.max(1) as u64 {
        let y = element(group, random_vector(&k, sample_seed(seed, s)));
        let rec = orbit_record(&dual_spaces, y)?;
        if best.as_ref().is_none_or(|b| rec.dim > b.dim) {
            let full = rec.dim + record.dim == spaces.v.dim() && rec.dim == k.dim();
            best = Some(rec);
            if full {
                break;
            }
        }
    }
    Ok(best.expect("at least one sample"))
}

/// Generic one-step blocks for `GL_N`: on every chain, each block
/// `E_i → E_{i+1}` is a partial identity of rank `min(dim E_i, dim E_{i+1})`,
/// so composites have the minimal-dimension rank.
fn gl_generic(labels: &[Label], n: usize) -> RatMatrix {
    let mut x = RatMatrix::zeros(n, n);
    for (u, run) in chains(labels) {
        for w in run.windows(2) {
            let from = positions(labels, Label { u, e: w[0] });
            let to = positions(labels, Label { u, e: w[1] });
            for (&c, &r) in from.iter().zip(&to) {
                x.set(r, c, Rational::one());
            }
        }
    }
    x
}

/// A representative of the open orbit of `V_λ`, verified by tangent rank.
pub fn open_orbit_rep(lambda: &InfinitesimalParam) -> Result<LieElement> {
    let spaces = crate::vogan::build_spaces(lambda);
    let group = *lambda.group();
    let target = spaces.v.dim();
    let n = group.size();
    let generic = gl_generic(spaces.labels(), n);
    if !group.is_classical() {
        let x = element(group, generic.into_entries());
        if orbit_dim(&spaces, &x)? != target {
            return Err(Error::CrossCheck("generic multisegment is not open".into()));
        }
        return Ok(x);
    }
    let sig = signature_of_matrix(&generic, spaces.labels());
    if let Some(phi) = param_of_signature(group, lambda.unit_modulus(), spaces.labels(), &sig) {
        let real = realize(&phi)?;
        if orbit_dim(&spaces, &real.x)? == target {
            return Ok(real.x);
        }
    }
    for s in 0..OPEN_ORBIT_RETRIES {
        let x = element(group, random_vector(&spaces.v, sample_seed(0x5EED, s)));
        if orbit_dim(&spaces, &x)? == target {
            return Ok(x);
        }
    }
    Err(Error::Enumeration(format!("no open-orbit element found for {lambda}")))
}
