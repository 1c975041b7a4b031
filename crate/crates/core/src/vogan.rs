//! Vogan varieties `V_λ`, `V*_λ` and the centralizer algebra `h_λ` as
//! subspaces of the dual Lie algebra, realization of Langlands parameters as
//! graded nilpotent matrices, and the tangent-space tests built on them.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, rat, RatMatrix, Rational, SubspaceBasis};
use crate::liealg::{
    commutator, coord_index, full_algebra_basis, is_member, DualGroupSpec, FormMatrix, FormType, LieElement,
};
use crate::orbits::{signature_of_matrix, RankSignature};
use crate::params::{infinitesimal_of, InfinitesimalParam, Label, LanglandsParam, Summand};

/// Number of randomized torus rescalings tried after the deterministic
/// realization fails verification.
pub const REALIZE_RETRIES: u64 = 8;

/// `V_λ`, `V*_λ` and `h_λ` for one arrangement of basis labels, in
/// row-major matrix coordinates.
#[derive(Clone, Debug)]
pub struct VoganSpaces {
    group: DualGroupSpec,
    unit_modulus: u32,
    labels: Vec<Label>,
    pub v: SubspaceBasis,
    pub vstar: SubspaceBasis,
    pub h: SubspaceBasis,
}

impl VoganSpaces {
    pub fn group(&self) -> &DualGroupSpec {
        &self.group
    }

    pub fn unit_modulus(&self) -> u32 {
        self.unit_modulus
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// The spaces of the mirrored grading `(u, e) ↦ (u, -e)`, in which the
    /// roles of `V` and `V*` are exchanged.
    pub fn mirrored(&self) -> VoganSpaces {
        VoganSpaces {
            group: self.group,
            unit_modulus: self.unit_modulus,
            labels: self.labels.iter().map(|l| l.mirrored()).collect(),
            v: self.vstar.clone(),
            vstar: self.v.clone(),
            h: self.h.clone(),
        }
    }

    /// Checks `dim V = dim V*` and that `h` preserves both spaces.
    pub fn check_invariants(&self) -> Result<()> {
        if self.v.dim() != self.vstar.dim() {
            return Err(Error::CrossCheck(format!(
                "dim V = {} but dim V* = {}",
                self.v.dim(),
                self.vstar.dim()
            )));
        }
        let n = self.group.size();
        for z in self.h.vectors() {
            let zm = as_matrix(n, z);
            for (name, space) in [("V", &self.v), ("V*", &self.vstar)] {
                for w in space.vectors() {
                    let b = commutator(&zm, &as_matrix(n, w));
                    if !space.contains(b.entries()) {
                        return Err(Error::CrossCheck(format!("[h, {name}] is not contained in {name}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Element of the Lie algebra with the given coordinates in the `V` basis.
    pub fn v_element(&self, coeffs: &[Rational]) -> LieElement {
        element(self.group, self.v.combine(coeffs))
    }

    fn require_in_v(&self, x: &LieElement) -> Result<()> {
        if x.group() != &self.group {
            return Err(Error::GroupMismatch(x.group().to_string(), self.group.to_string()));
        }
        if !self.v.contains(x.matrix().entries()) {
            return Err(Error::NotInVoganVariety);
        }
        Ok(())
    }
}

fn as_matrix(n: usize, coords: &[Rational]) -> RatMatrix {
    RatMatrix::new(n, n, coords.to_vec()).expect("coordinate vector of length n²")
}

pub(crate) fn element(group: DualGroupSpec, coords: Vec<Rational>) -> LieElement {
    LieElement::from_coords_unchecked(group, coords)
}

/// Spaces for the canonical basis-label arrangement of `lambda`.
pub fn build_spaces(lambda: &InfinitesimalParam) -> VoganSpaces {
    spaces_for_labels(*lambda.group(), lambda.unit_modulus(), &lambda.canonical_labels())
        .expect("canonical labels are positionally dual")
}

/// Spaces for an explicit label arrangement. Classical groups need
/// `labels[N-1-i]` dual to `labels[i]`, so that the diagonal torus realizes
/// the grading.
pub fn spaces_for_labels(group: DualGroupSpec, unit_modulus: u32, labels: &[Label]) -> Result<VoganSpaces> {
    check_arrangement(&group, unit_modulus, labels)?;
    let n = group.size();
    let mut v = Vec::new();
    let mut vstar = Vec::new();
    let mut h = Vec::new();
    // Each basis element of the algebra is supported on one entry or on a
    // dual pair of entries, and both entries of a pair carry the same label
    // shift, so intersecting with a block space just selects basis elements.
    for b in full_algebra_basis(&group).vectors() {
        let lead = b.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
        let (r, c) = (lead / n, lead % n);
        let (lr, lc) = (labels[r], labels[c]);
        if lr.u != lc.u {
            continue;
        }
        match lr.e.twice() - lc.e.twice() {
            2 => v.push(b.clone()),
            -2 => vstar.push(b.clone()),
            0 => h.push(b.clone()),
            _ => {}
        }
    }
    Ok(VoganSpaces {
        group,
        unit_modulus,
        labels: labels.to_vec(),
        v: SubspaceBasis::from_independent(n * n, v),
        vstar: SubspaceBasis::from_independent(n * n, vstar),
        h: SubspaceBasis::from_independent(n * n, h),
    })
}

fn check_arrangement(group: &DualGroupSpec, modulus: u32, labels: &[Label]) -> Result<()> {
    let n = group.size();
    if labels.len() != n {
        return Err(Error::DimensionMismatch(format!("{} labels for {group}", labels.len())));
    }
    if group.is_classical() {
        for i in 0..n {
            if labels[n - 1 - i] != labels[i].dual(modulus) {
                return Err(Error::invalid(
                    "label arrangement",
                    format!("positions {i} and {} do not carry dual labels", n - 1 - i),
                ));
            }
        }
    }
    Ok(())
}

/// A Langlands parameter realized as a graded nilpotent element.
#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pub group: DualGroupSpec,
    pub unit_modulus: u32,
    pub basis_labels: Vec<Label>,
    pub form: Option<FormMatrix>,
    pub x: LieElement,
}

impl MatrixRealization {
    pub fn spaces(&self) -> VoganSpaces {
        spaces_for_labels(self.group, self.unit_modulus, &self.basis_labels)
            .expect("realization labels were checked")
    }
}

/// Realizes `phi` on the canonical basis-label arrangement.
pub fn realize(phi: &LanglandsParam) -> Result<MatrixRealization> {
    realize_with_labels(phi, &infinitesimal_of(phi).canonical_labels())
}

/// Realizes `phi` on an arbitrary admissible arrangement of its labels.
///
/// Each summand `(u, e, a)` becomes a string `w_0, …, w_{a-1}` with
/// `N w_k = w_{k-1}`. For classical groups the strings carry an invariant
/// form: a self-dual summand of the group's type carries
/// `B(w_k, w_{a-1-k}) = c(-1)^k` on its own, other summands are paired with
/// their duals. A hyperbolic basis adapted to the labels then conjugates `N`
/// into `ĝ`. The result is verified; failures trigger randomized torus
/// rescalings before giving up.
pub fn realize_with_labels(phi: &LanglandsParam, labels: &[Label]) -> Result<MatrixRealization> {
    let group = *phi.group();
    let m = phi.unit_modulus();
    check_arrangement(&group, m, labels)?;
    let mut sorted = labels.to_vec();
    sorted.sort();
    let mut expected = infinitesimal_of(phi).canonical_labels();
    expected.sort();
    if sorted != expected {
        return Err(Error::invalid(
            "label arrangement",
            "labels do not match the infinitesimal parameter of the input",
        ));
    }
    let mut last_err = None;
    for attempt in 0..=REALIZE_RETRIES {
        let x = if group.is_classical() {
            classical_realization(phi, labels, attempt)?
        } else {
            gl_realization(phi, labels)
        };
        let real = MatrixRealization {
            group,
            unit_modulus: m,
            basis_labels: labels.to_vec(),
            form: group.form(),
            x: element(group, x.into_entries()),
        };
        match verify_realization(phi, &real) {
            Ok(()) => return Ok(real),
            Err(e) => last_err = Some(e),
        }
    }
    Err(Error::Realization(format!(
        "no form-compatible realization of {phi}: {}",
        last_err.map_or_else(String::new, |e| e.to_string())
    )))
}

/// Positions of each label, in order.
fn positions_by_label(labels: &[Label]) -> BTreeMap<Label, VecDeque<usize>> {
    let mut out: BTreeMap<Label, VecDeque<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        out.entry(l).or_default().push_back(i);
    }
    out
}

fn gl_realization(phi: &LanglandsParam, labels: &[Label]) -> RatMatrix {
    let n = labels.len();
    let mut free = positions_by_label(labels);
    let mut x = RatMatrix::zeros(n, n);
    for s in phi.summands() {
        let pos: Vec<usize> = s
            .labels()
            .map(|l| free.get_mut(&l).and_then(VecDeque::pop_front).expect("labels match"))
            .collect();
        for k in 1..pos.len() {
            x.set(pos[k - 1], pos[k], Rational::one());
        }
    }
    x
}

/// A hyperbolic pair `(p, q)` in the abstract string space with
/// `B(p, q) = beta`, `label(p) = label`.
struct HypPair {
    p: Vec<Rational>,
    q: Vec<Rational>,
    beta: Rational,
    label: Label,
}

fn classical_realization(phi: &LanglandsParam, labels: &[Label], attempt: u64) -> Result<RatMatrix> {
    let group = *phi.group();
    let m = phi.unit_modulus();
    let n = group.size();
    let required = group.required_type().expect("classical group");
    let eps = if required == FormType::Orthogonal { rat(1) } else { rat(-1) };

    // Abstract string space: basis vectors, their labels, N and the Gram matrix.
    let mut wlabels: Vec<Label> = Vec::with_capacity(n);
    let mut nmat = RatMatrix::zeros(n, n);
    let mut gram = RatMatrix::zeros(n, n);
    let add_string = |s: Summand, wlabels: &mut Vec<Label>, nmat: &mut RatMatrix| -> usize {
        let start = wlabels.len();
        wlabels.extend(s.labels());
        for k in 1..s.a as usize {
            nmat.set(start + k - 1, start + k, Rational::one());
        }
        start
    };
    let sign = |k: usize| if k % 2 == 0 { rat(1) } else { rat(-1) };

    let mut pairs: Vec<HypPair> = Vec::new();
    // Anisotropic middle vectors of odd solo strings, per unit label.
    let mut middles: BTreeMap<u32, Vec<(usize, Label)>> = BTreeMap::new();
    let mut counts: BTreeMap<Summand, usize> = BTreeMap::new();
    for &s in phi.summands() {
        *counts.entry(s).or_insert(0) += 1;
    }
    let unit = |len: usize, i: usize| {
        let mut v = vec![Rational::zero(); len];
        v[i] = Rational::one();
        v
    };
    for (&s, &mult) in &counts {
        let a = s.a as usize;
        match s.form_type(m) {
            Some(t) if t == required => {
                for _ in 0..mult {
                    let start = add_string(s, &mut wlabels, &mut nmat);
                    let mut c = rat(1);
                    if a % 2 == 1 {
                        // Alternate the norms of middle vectors of equal unit.
                        let mid = (a - 1) / 2;
                        let seen = middles.get(&s.u.0).map_or(0, Vec::len);
                        let target = if seen % 2 == 0 { rat(1) } else { rat(-1) };
                        c = target * sign(mid);
                        middles
                            .entry(s.u.0)
                            .or_default()
                            .push((start + mid, wlabels[start + mid]));
                    }
                    for k in 0..a {
                        gram.set(start + k, start + a - 1 - k, &c * sign(k));
                    }
                    for k in 0..a {
                        let j = a - 1 - k;
                        if k < j {
                            pairs.push(HypPair {
                                p: unit(n, start + k),
                                q: unit(n, start + j),
                                beta: &c * sign(k),
                                label: wlabels[start + k],
                            });
                        }
                    }
                }
            }
            self_dual_type => {
                let d = s.dual(m);
                let copies = if self_dual_type.is_some() {
                    mult / 2
                } else if s < d {
                    mult
                } else {
                    0
                };
                for _ in 0..copies {
                    let w = add_string(s, &mut wlabels, &mut nmat);
                    let ws = add_string(d, &mut wlabels, &mut nmat);
                    for k in 0..a {
                        let j = a - 1 - k;
                        gram.set(w + k, ws + j, sign(k));
                        gram.set(ws + j, w + k, &eps * sign(k));
                        pairs.push(HypPair {
                            p: unit(n, w + k),
                            q: unit(n, ws + j),
                            beta: sign(k),
                            label: wlabels[w + k],
                        });
                    }
                }
            }
        }
    }
    if wlabels.len() != n {
        return Err(Error::Realization("string space has the wrong dimension".into()));
    }

    let mut middle_vector = None;
    for list in middles.values() {
        let mut it = list.chunks(2);
        for chunk in &mut it {
            match chunk {
                [(i1, l), (i2, _)] => {
                    let (v1, v2) = (unit(n, *i1), unit(n, *i2));
                    pairs.push(HypPair {
                        p: v1.iter().zip(&v2).map(|(a, b)| a + b).collect(),
                        q: v1.iter().zip(&v2).map(|(a, b)| a - b).collect(),
                        beta: rat(2),
                        label: *l,
                    });
                }
                [(i, l)] => {
                    if middle_vector.is_some() || *l != Label::new(0, crate::params::HalfInteger::ZERO) {
                        return Err(Error::Realization(format!(
                            "unpaired anisotropic vector of label {l}"
                        )));
                    }
                    middle_vector = Some(unit(n, *i));
                }
                _ => unreachable!(),
            }
        }
    }

    // Assign hyperbolic pairs to position pairs (i, N-1-i).
    let key = |l: Label| l.min(l.dual(m));
    let mut pool: BTreeMap<Label, Vec<HypPair>> = BTreeMap::new();
    for hp in pairs {
        pool.entry(key(hp.label)).or_default().push(hp);
    }
    for list in pool.values_mut() {
        list.reverse();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(attempt);
    let mut cols: Vec<Vec<Rational>> = vec![Vec::new(); n];
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let hp = pool
            .get_mut(&key(labels[i]))
            .and_then(Vec::pop)
            .ok_or_else(|| Error::Realization(format!("no hyperbolic pair for label {}", labels[i])))?;
        let (f, g, beta) = if hp.label == labels[i] {
            (hp.p, hp.q, hp.beta)
        } else {
            (hp.q, hp.p, &eps * &hp.beta)
        };
        let t = if attempt == 0 {
            rat(1)
        } else {
            rat(rng.gen_range(1..=50)) * if rng.gen_bool(0.5) { rat(1) } else { rat(-1) }
        };
        let sigma = rat(group.form_sign(i));
        let scale_g = sigma / (&beta * &t);
        cols[i] = f.iter().map(|x| x * &t).collect();
        cols[j] = g.iter().map(|x| x * &scale_g).collect();
    }
    if n % 2 == 1 {
        cols[n / 2] = middle_vector.ok_or_else(|| Error::Realization("missing middle vector".into()))?;
    }
    let p = RatMatrix::from_columns(n, &cols);
    let j = group.form().expect("classical form");
    if p.transpose().mul(&gram).mul(&p) != *j.matrix() {
        return Err(Error::Realization("adapted basis does not reproduce the form".into()));
    }
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::Realization("adapted basis is singular".into()))?;
    Ok(pinv.mul(&nmat).mul(&p))
}

/// The rank signature that `phi` predicts: the rank of `x^{j-i}` from
/// `E_(u,i)` to `E_(u,j)` counts the strings of unit `u` covering both.
pub fn predicted_signature(phi: &LanglandsParam, template: &RankSignature) -> RankSignature {
    let mut out = template.clone();
    for ((u, i, j), r) in out.iter_mut() {
        *r = phi
            .summands()
            .iter()
            .filter(|s| s.u == *u && s.covers(*i) && s.covers(*j))
            .count();
    }
    out
}

/// Checks every invariant of a realization against the parameter.
pub fn verify_realization(phi: &LanglandsParam, real: &MatrixRealization) -> Result<()> {
    let n = real.group.size();
    let x = real.x.matrix();
    let mut sorted = real.basis_labels.clone();
    sorted.sort();
    let mut expected = infinitesimal_of(phi).canonical_labels();
    expected.sort();
    if sorted != expected {
        return Err(Error::Realization("basis labels differ from the grading".into()));
    }
    for r in 0..n {
        for c in 0..n {
            if !x.get(r, c).is_zero() && real.basis_labels[r] != real.basis_labels[c].shifted(1) {
                return Err(Error::Realization(format!("entry ({r}, {c}) is outside the shift-one blocks")));
            }
        }
    }
    if !is_member(&real.group, x)? {
        return Err(Error::Realization("x is not in the Lie algebra".into()));
    }
    let sig = signature_of_matrix(x, &real.basis_labels);
    let predicted = predicted_signature(phi, &sig);
    if sig != predicted {
        return Err(Error::Realization(format!(
            "rank signature {sig:?} differs from the predicted {predicted:?}"
        )));
    }
    Ok(())
}

/// Matrix whose columns are `[Z, x]` for `Z` running over the basis of `h`.
fn tangent_matrix(spaces: &VoganSpaces, x: &LieElement) -> RatMatrix {
    let n = spaces.group.size();
    let cols: Vec<Vec<Rational>> = spaces
        .h
        .vectors()
        .iter()
        .map(|z| commutator(&as_matrix(n, z), x.matrix()).into_entries())
        .collect();
    RatMatrix::from_columns(n * n, &cols)
}

/// Dimension of the `H_λ`-orbit through `x`, as the rank of `Z ↦ [Z, x]`.
pub fn orbit_dim(spaces: &VoganSpaces, x: &LieElement) -> Result<usize> {
    spaces.require_in_v(x)?;
    Ok(rank(&tangent_matrix(spaces, x)))
}

/// `{y ∈ V*_λ : [x, y] = 0}`.
pub fn commutant_in_dual(spaces: &VoganSpaces, x: &LieElement) -> Result<SubspaceBasis> {
    spaces.require_in_v(x)?;
    let n = spaces.group.size();
    let cols: Vec<Vec<Rational>> = spaces
        .vstar
        .vectors()
        .iter()
        .map(|y| commutator(x.matrix(), &as_matrix(n, y)).into_entries())
        .collect();
    let m = RatMatrix::from_columns(n * n, &cols);
    let k = kernel_basis(&m);
    let vectors = k.vectors().iter().map(|c| spaces.vstar.combine(c)).collect();
    Ok(SubspaceBasis::from_independent(n * n, vectors))
}

/// Whether `phi` lies in the open orbit of its Vogan variety.
pub fn is_open(phi: &LanglandsParam) -> Result<bool> {
    let real = realize(phi)?;
    let spaces = real.spaces();
    Ok(orbit_dim(&spaces, &real.x)? == spaces.v.dim())
}

/// Order of the pole of `L(s, φ, Ad)` at `s = 1`, as `dim K_{x_φ}`.
pub fn l_adjoint_order(phi: &LanglandsParam) -> Result<usize> {
    let real = realize(phi)?;
    Ok(commutant_in_dual(&real.spaces(), &real.x)?.dim())
}

/// Orbit dimension, conormal fibre dimension and `dim V` at `x_φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConormalFiber {
    pub orbit_dim: usize,
    pub fiber_dim: usize,
    pub ambient_dim: usize,
}

impl ConormalFiber {
    pub fn is_balanced(&self) -> bool {
        self.orbit_dim + self.fiber_dim == self.ambient_dim
    }
}

pub fn conormal_fiber_check(phi: &LanglandsParam) -> Result<ConormalFiber> {
    let real = realize(phi)?;
    conormal_fiber_at(&real.spaces(), &real.x)
}

pub fn conormal_fiber_at(spaces: &VoganSpaces, x: &LieElement) -> Result<ConormalFiber> {
    Ok(ConormalFiber {
        orbit_dim: orbit_dim(spaces, x)?,
        fiber_dim: commutant_in_dual(spaces, x)?.dim(),
        ambient_dim: spaces.v.dim(),
    })
}

/// A seeded admissible rearrangement of `labels`: any permutation for
/// `GL_N`; for classical groups the dual position pairs are shuffled and
/// each pair is optionally flipped, keeping positional duality.
pub fn permute_labels(group: &DualGroupSpec, labels: &[Label], seed: u64) -> Vec<Label> {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = labels.len();
    if !group.is_classical() {
        let mut out = labels.to_vec();
        out.shuffle(&mut rng);
        return out;
    }
    let mut pairs: Vec<(Label, Label)> = (0..n / 2).map(|i| (labels[i], labels[n - 1 - i])).collect();
    pairs.shuffle(&mut rng);
    let mut out = labels.to_vec();
    for (i, (a, b)) in pairs.into_iter().enumerate() {
        let (a, b) = if rng.gen_bool(0.5) { (b, a) } else { (a, b) };
        out[i] = a;
        out[n - 1 - i] = b;
    }
    out
}

/// Coordinates of the entry `(r, c)` as an element, for tests and examples.
pub fn entry_element(group: DualGroupSpec, r: usize, c: usize) -> Result<LieElement> {
    let n = group.size();
    let mut v = vec![Rational::zero(); n * n];
    v[coord_index(&group, r, c)] = Rational::one();
    LieElement::from_coords(group, &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::intersect;
    use crate::liealg::matrix_unit;
    use crate::params::{params_with_infinitesimal, HalfInteger, DEFAULT_UNIT_MODULUS};

    fn h(t: i64) -> HalfInteger {
        HalfInteger::from_twice(t)
    }

    fn param(g: DualGroupSpec, s: &[(u32, i64, u32)]) -> LanglandsParam {
        LanglandsParam::new(
            g,
            DEFAULT_UNIT_MODULUS,
            s.iter().map(|&(u, e2, a)| Summand::new(u, h(e2), a)).collect(),
        )
        .unwrap()
    }

    fn chain(n: usize) -> InfinitesimalParam {
        InfinitesimalParam::new(
            DualGroupSpec::gl(n).unwrap(),
            DEFAULT_UNIT_MODULUS,
            (0..n).map(|i| (Label::new(0, h(n as i64 - 1 - 2 * i as i64)), 1)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn space_dimensions() {
        let s = build_spaces(&chain(2));
        assert_eq!((s.v.dim(), s.vstar.dim(), s.h.dim()), (1, 1, 2));
        let s = build_spaces(&chain(3));
        assert_eq!((s.v.dim(), s.vstar.dim(), s.h.dim()), (2, 2, 3));
        let flat = InfinitesimalParam::new(
            DualGroupSpec::gl(3).unwrap(),
            4,
            [(Label::new(0, h(1)), 2), (Label::new(1, h(1)), 1)].into_iter().collect(),
        )
        .unwrap();
        assert_eq!(build_spaces(&flat).v.dim(), 0);
    }

    #[test]
    fn selection_agrees_with_intersection() {
        let cases = [
            param(DualGroupSpec::sp(4).unwrap(), &[(0, 0, 4)]),
            param(DualGroupSpec::so(5).unwrap(), &[(0, 0, 3), (0, 2, 1), (0, -2, 1)]),
            param(DualGroupSpec::so(6).unwrap(), &[(0, 0, 2), (0, 0, 2), (0, 0, 1), (0, 0, 1)]),
            param(DualGroupSpec::gl(4).unwrap(), &[(0, 1, 2), (1, 0, 2)]),
        ];
        for phi in cases {
            let labels = infinitesimal_of(&phi).canonical_labels();
            let s = build_spaces(&infinitesimal_of(&phi));
            let g = *phi.group();
            let n = g.size();
            let full = full_algebra_basis(&g);
            for (space, shift) in [(&s.v, 2), (&s.vstar, -2), (&s.h, 0)] {
                let coords: Vec<usize> = (0..n * n)
                    .filter(|&k| {
                        let (r, c) = (k / n, k % n);
                        labels[r].u == labels[c].u && labels[r].e.twice() - labels[c].e.twice() == shift
                    })
                    .collect();
                let block = SubspaceBasis::coordinate(n * n, &coords);
                assert!(intersect(&full, &block).unwrap().same_span(space), "{phi}");
            }
            s.check_invariants().unwrap();
        }
    }

    #[test]
    fn realize_examples() {
        let r = realize(&param(DualGroupSpec::gl(2).unwrap(), &[(0, 0, 2)])).unwrap();
        assert_eq!(r.x.matrix(), &matrix_unit(2, 0, 1));
        let r = realize(&param(DualGroupSpec::gl(2).unwrap(), &[(0, 1, 1), (0, -1, 1)])).unwrap();
        assert!(r.x.is_zero());
        let nu4 = param(DualGroupSpec::sp(4).unwrap(), &[(0, 0, 4)]);
        let r = realize(&nu4).unwrap();
        assert!(is_member(&r.group, r.x.matrix()).unwrap());
        let sig = signature_of_matrix(r.x.matrix(), &r.basis_labels);
        assert_eq!(sig.values().copied().collect::<Vec<_>>(), vec![1; 6]);
    }

    #[test]
    fn nu4_realization_has_composite_ranks() {
        let nu4 = param(DualGroupSpec::sp(4).unwrap(), &[(0, 0, 4)]);
        let r = realize(&nu4).unwrap();
        let x = r.x.matrix();
        let mut p = x.clone();
        let mut ranks = vec![rank(&p)];
        for _ in 0..2 {
            p = p.mul(x);
            ranks.push(rank(&p));
        }
        assert_eq!(ranks, vec![3, 2, 1]);
    }

    #[test]
    fn every_small_classical_parameter_realizes() {
        for g in [
            DualGroupSpec::sp(2).unwrap(),
            DualGroupSpec::sp(4).unwrap(),
            DualGroupSpec::so(3).unwrap(),
            DualGroupSpec::so(4).unwrap(),
            DualGroupSpec::so(5).unwrap(),
            DualGroupSpec::so(6).unwrap(),
        ] {
            let phis = [
                vec![(0, 0, 1); g.size()],
                vec![(2, 0, 1); g.size()],
                vec![(0, 0, g.size() as u32)],
            ];
            for s in phis {
                let Ok(phi) = LanglandsParam::new(
                    g,
                    4,
                    s.iter().map(|&(u, e, a)| Summand::new(u, h(e), a)).collect(),
                ) else {
                    continue;
                };
                let lam = infinitesimal_of(&phi);
                for psi in params_with_infinitesimal(&lam) {
                    realize(&psi).unwrap();
                }
            }
        }
    }

    #[test]
    fn orbit_dims_and_commutants() {
        let s3 = build_spaces(&chain(3));
        let g3 = DualGroupSpec::gl(3).unwrap();
        assert_eq!(orbit_dim(&s3, &LieElement::zero(g3)).unwrap(), 0);
        let s2 = build_spaces(&chain(2));
        let g2 = DualGroupSpec::gl(2).unwrap();
        assert_eq!(orbit_dim(&s2, &entry_element(g2, 0, 1).unwrap()).unwrap(), 1);
        assert_eq!(commutant_in_dual(&s2, &entry_element(g2, 0, 1).unwrap()).unwrap().dim(), 0);
        let k = commutant_in_dual(&s3, &entry_element(g3, 0, 1).unwrap()).unwrap();
        assert!(k.same_span(&SubspaceBasis::coordinate(9, &[coord_index(&g3, 2, 1)])));
        assert_eq!(commutant_in_dual(&s3, &LieElement::zero(g3)).unwrap().dim(), 2);
        assert!(matches!(
            orbit_dim(&s3, &entry_element(g3, 1, 0).unwrap()),
            Err(Error::NotInVoganVariety)
        ));
        let nu4 = param(DualGroupSpec::sp(4).unwrap(), &[(0, 0, 4)]);
        let r = realize(&nu4).unwrap();
        assert_eq!(orbit_dim(&r.spaces(), &r.x).unwrap(), 2);
    }

    #[test]
    fn openness_and_pole_order() {
        for n in 1..=5 {
            let phi = param(DualGroupSpec::gl(n).unwrap(), &[(0, 0, n as u32)]);
            assert!(is_open(&phi).unwrap());
            assert_eq!(l_adjoint_order(&phi).unwrap(), 0);
        }
        let split = param(DualGroupSpec::gl(2).unwrap(), &[(0, 1, 1), (0, -1, 1)]);
        assert!(!is_open(&split).unwrap());
        assert_eq!(l_adjoint_order(&split).unwrap(), 1);
        let middle = param(DualGroupSpec::gl(3).unwrap(), &[(0, 1, 2), (0, -2, 1)]);
        assert_eq!(l_adjoint_order(&middle).unwrap(), 1);
        let c = conormal_fiber_check(&middle).unwrap();
        assert_eq!((c.orbit_dim, c.fiber_dim, c.ambient_dim), (1, 1, 2));
        let unit = param(DualGroupSpec::gl(2).unwrap(), &[(0, 0, 1), (1, 0, 1)]);
        assert!(is_open(&unit).unwrap());
    }

    #[test]
    fn permuted_labels_give_the_same_verdicts() {
        let phis = [
            param(DualGroupSpec::gl(4).unwrap(), &[(0, 1, 2), (0, -1, 2)]),
            param(DualGroupSpec::sp(6).unwrap(), &[(0, 0, 2), (0, 2, 1), (0, -2, 1), (2, 0, 2)]),
            param(DualGroupSpec::so(7).unwrap(), &[(0, 0, 3), (0, 0, 3), (0, 0, 1)]),
        ];
        for phi in phis {
            let base = conormal_fiber_check(&phi).unwrap();
            for seed in 0..6 {
                let labels = permute_labels(phi.group(), &infinitesimal_of(&phi).canonical_labels(), seed);
                let r = realize_with_labels(&phi, &labels).unwrap();
                assert_eq!(conormal_fiber_at(&r.spaces(), &r.x).unwrap(), base, "{phi} seed {seed}");
            }
        }
    }

    #[test]
    fn mismatched_labels_are_rejected() {
        let phi = param(DualGroupSpec::sp(2).unwrap(), &[(0, 0, 2)]);
        let bad = vec![Label::new(0, h(1)), Label::new(0, h(1))];
        assert!(realize_with_labels(&phi, &bad).is_err());
    }
}
