//! Jacobson–Morozov triples, weighted Dynkin diagrams, gradings and the
//! distinguished and q-distinguished criteria.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, rat, solve, RatMatrix, Rational, SubspaceBasis};
use crate::liealg::{commutator, diagonal_element, full_algebra_basis, is_member, DualGroupSpec, Family, LieElement};
use crate::orbits::open_orbit_rep;
use crate::params::{HalfInteger, InfinitesimalParam, LanglandsParam, Summand};
use crate::vogan::{build_spaces, element, realize};

/// `{e, h, f}` with `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SL2Triple {
    pub e: LieElement,
    pub h: LieElement,
    pub f: LieElement,
}

impl SL2Triple {
    pub fn verify(&self) -> Result<()> {
        let (e, h, f) = (self.e.matrix(), self.h.matrix(), self.f.matrix());
        let ok = commutator(h, e) == e.scale(&rat(2))
            && commutator(h, f) == f.scale(&rat(-2))
            && commutator(e, f) == *h;
        if !ok {
            return Err(Error::Triple("bracket identities fail".into()));
        }
        for x in [&self.e, &self.h, &self.f] {
            if !is_member(x.group(), x.matrix())? {
                return Err(Error::Triple("triple leaves the Lie algebra".into()));
            }
        }
        Ok(())
    }
}

fn mat(n: usize, v: &[Rational]) -> RatMatrix {
    RatMatrix::new(n, n, v.to_vec()).expect("n² coordinates")
}

fn stack(parts: &[Vec<Rational>]) -> Vec<Rational> {
    parts.concat()
}

/// Solves for `h ∈ span(h_basis)` and `z, f ∈ span(basis)` with
/// `[h, n] = 2n`, `[n, z] = h`, `[h, f] = -2f`, `[n, f] = h`.
/// By Kostant's lemma the second system is solvable whenever the first is.
fn solve_triple(
    n_dim: usize,
    h_basis: &[Vec<Rational>],
    basis: &[Vec<Rational>],
    n: &RatMatrix,
) -> Result<Option<(RatMatrix, RatMatrix)>> {
    let sq = n_dim * n_dim;
    let zeros = vec![Rational::zero(); sq];
    let mut cols = Vec::with_capacity(h_basis.len() + basis.len());
    for t in h_basis {
        let tm = mat(n_dim, t);
        let neg: Vec<Rational> = t.iter().map(|x| -x).collect();
        cols.push(stack(&[commutator(&tm, n).into_entries(), neg]));
    }
    let ad_n: Vec<Vec<Rational>> = basis
        .iter()
        .map(|g| commutator(n, &mat(n_dim, g)).into_entries())
        .collect();
    for a in &ad_n {
        cols.push(stack(&[zeros.clone(), a.clone()]));
    }
    let m = RatMatrix::from_columns(2 * sq, &cols);
    let rhs = stack(&[n.scale(&rat(2)).into_entries(), zeros.clone()]);
    let Some(sol) = solve(&m, &rhs)? else {
        return Ok(None);
    };
    let hv = SubspaceBasis::from_independent(sq, h_basis.to_vec()).combine(&sol[..h_basis.len()]);
    let h = mat(n_dim, &hv);

    let cols: Vec<Vec<Rational>> = basis
        .iter()
        .zip(&ad_n)
        .map(|(g, a)| {
            let gm = mat(n_dim, g);
            let hg = commutator(&h, &gm).add(&gm.scale(&rat(2)));
            stack(&[hg.into_entries(), a.clone()])
        })
        .collect();
    let m = RatMatrix::from_columns(2 * sq, &cols);
    let rhs = stack(&[zeros, hv]);
    let Some(sol) = solve(&m, &rhs)? else {
        return Err(Error::Triple("no f completes the triple".into()));
    };
    let fv = SubspaceBasis::from_independent(sq, basis.to_vec()).combine(&sol);
    Ok(Some((h, mat(n_dim, &fv))))
}

fn nilpotency_check(group: &DualGroupSpec, n: &LieElement) -> Result<()> {
    if n.is_zero() {
        return Err(Error::Triple("the zero element has no Jacobson–Morozov triple".into()));
    }
    let mut p = n.matrix().clone();
    for _ in 1..group.size() {
        p = p.mul(n.matrix());
    }
    if !p.is_zero() {
        return Err(Error::NotNilpotent(format!("n^{} ≠ 0", group.size())));
    }
    Ok(())
}

/// Jordan block sizes of a nilpotent matrix, descending, from the ranks of
/// its powers.
pub fn jordan_partition(n: &RatMatrix) -> Vec<usize> {
    let size = n.rows();
    let mut ranks = vec![size];
    let mut p = n.clone();
    while *ranks.last().unwrap() > 0 {
        ranks.push(rank(&p));
        p = p.mul(n);
        if ranks.len() > size + 1 {
            break;
        }
    }
    // Blocks of size ≥ k: r_{k-1} - r_k.
    let mut parts = Vec::new();
    for k in (1..ranks.len()).rev() {
        let at_least_k = ranks[k - 1] - ranks[k];
        let at_least_k1 = if k + 1 < ranks.len() { ranks[k] - ranks[k + 1] } else { 0 };
        parts.extend(std::iter::repeat_n(k, at_least_k - at_least_k1));
    }
    parts
}

/// `a-1, a-3, …, 1-a` for every part `a`, sorted descending.
pub fn partition_weights(partition: &[usize]) -> Vec<i64> {
    let mut w: Vec<i64> = partition
        .iter()
        .flat_map(|&a| (0..a).map(move |k| a as i64 - 1 - 2 * k as i64))
        .collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    w
}

/// Integer eigenvalues of a semisimple matrix with integer spectrum,
/// descending; `None` if the eigenspaces do not fill the space.
fn integer_spectrum(h: &RatMatrix) -> Option<Vec<i64>> {
    let n = h.rows() as i64;
    let mut out = Vec::new();
    for k in (-(2 * n)..=2 * n).rev() {
        let shifted = h.sub(&RatMatrix::identity(h.rows()).scale(&rat(k)));
        let mult = h.rows() - rank(&shifted);
        out.extend(std::iter::repeat_n(k, mult));
    }
    (out.len() == h.rows()).then_some(out)
}

/// A Jacobson–Morozov triple through `n`.
///
/// A diagonal `h` is tried first; when `n` is not adapted to the coordinate
/// basis no diagonal `h` exists and `h` is solved for in all of `ĝ`. The
/// spectrum of `h` is cross-checked against the weight strings of the
/// Jordan partition of `n`.
pub fn jm_triple(group: &DualGroupSpec, n: &LieElement) -> Result<SL2Triple> {
    if n.group() != group {
        return Err(Error::GroupMismatch(n.group().to_string(), group.to_string()));
    }
    nilpotency_check(group, n)?;
    let size = group.size();
    let basis = full_algebra_basis(group);
    let torus: Vec<Vec<Rational>> = basis
        .vectors()
        .iter()
        .filter(|v| is_diagonal_coords(size, v))
        .cloned()
        .collect();
    let found = match solve_triple(size, &torus, basis.vectors(), n.matrix())? {
        Some(t) => Some(t),
        None => solve_triple(size, basis.vectors(), basis.vectors(), n.matrix())?,
    };
    let (h, f) = found.ok_or_else(|| Error::Triple("no h with [h, n] = 2n in the image of ad n".into()))?;
    let triple = SL2Triple {
        e: n.clone(),
        h: element(*group, h.into_entries()),
        f: element(*group, f.into_entries()),
    };
    triple.verify()?;
    let spectrum = integer_spectrum(triple.h.matrix())
        .ok_or_else(|| Error::CrossCheck("h does not have an integral spectrum".into()))?;
    if spectrum != partition_weights(&jordan_partition(n.matrix())) {
        return Err(Error::CrossCheck(format!(
            "spectrum of h {spectrum:?} differs from the Jordan weights of n"
        )));
    }
    Ok(triple)
}

fn is_diagonal_coords(size: usize, v: &[Rational]) -> bool {
    v.iter()
        .enumerate()
        .all(|(k, x)| x.is_zero() || k / size == k % size)
}

/// Labels of the simple roots on the dominant `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDynkin {
    pub labels: Vec<u8>,
}

impl fmt::Display for WeightedDynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The dominant diagonal element with the given spectrum. A spectrum sorted
/// descending is already of the form `(t_1, …, [0,] -t_k, …, -t_1)` for a
/// classical group.
pub fn dominant_gamma(group: &DualGroupSpec, spectrum: &[i64]) -> Result<LieElement> {
    let mut d = spectrum.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    diagonal_element(*group, &d.iter().map(|&x| rat(x)).collect::<Vec<_>>())
}

/// Simple-root values of a dominant integral diagonal (descending entries).
pub fn simple_root_values(group: &DualGroupSpec, d: &[i64]) -> Vec<i64> {
    let n = group.size();
    let r = n / 2;
    let diffs = |k: usize| (0..k).map(|i| d[i] - d[i + 1]).collect::<Vec<_>>();
    match group.family() {
        Family::GeneralLinear => diffs(n.saturating_sub(1)),
        Family::Symplectic => {
            let mut v = diffs(r - 1);
            v.push(2 * d[r - 1]);
            v
        }
        Family::OddOrthogonal => {
            if r == 0 {
                return Vec::new();
            }
            let mut v = diffs(r - 1);
            v.push(d[r - 1]);
            v
        }
        Family::EvenOrthogonal => {
            if r < 2 {
                return Vec::new();
            }
            let mut v = diffs(r - 1);
            v.push(d[r - 2] + d[r - 1]);
            v
        }
    }
}

pub fn weighted_dynkin(group: &DualGroupSpec, n: &LieElement) -> Result<WeightedDynkin> {
    let triple = jm_triple(group, n)?;
    let spectrum = integer_spectrum(triple.h.matrix()).expect("checked by jm_triple");
    let values = simple_root_values(group, &spectrum);
    let labels = values
        .iter()
        .map(|&v| u8::try_from(v).ok().filter(|&x| x <= 2))
        .collect::<Option<Vec<u8>>>()
        .ok_or_else(|| Error::CrossCheck(format!("weighted Dynkin labels {values:?} outside {{0,1,2}}")))?;
    Ok(WeightedDynkin { labels })
}

/// Dimensions of the `ad(γ)`-eigenspaces of `ĝ` for a diagonal `γ`.
pub fn grading_dims(group: &DualGroupSpec, gamma: &LieElement) -> Result<BTreeMap<i64, usize>> {
    if !gamma.is_diagonal() {
        return Err(Error::invalid("diagonal grading element", "gamma must be diagonal"));
    }
    let size = group.size();
    let d = gamma.diagonal();
    let mut out = BTreeMap::new();
    for v in full_algebra_basis(group).vectors() {
        let lead = v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
        let value = &d[lead / size] - &d[lead % size];
        if !value.is_integer() {
            return Err(Error::NonIntegralGrading(format!("root value {value}")));
        }
        let k = value.to_integer().to_i64().expect("small root value");
        *out.entry(k).or_insert(0) += 1;
    }
    Ok(out)
}

/// `dim g(0) = dim g(2)` for the grading of a Jacobson–Morozov `h`. For
/// `GL_N` the grading is taken on `sl_N`. The zero element is graded by
/// `γ = 0`.
pub fn is_distinguished(group: &DualGroupSpec, n: &LieElement) -> Result<bool> {
    let spectrum = if n.is_zero() {
        vec![0; group.size()]
    } else {
        let triple = jm_triple(group, n)?;
        integer_spectrum(triple.h.matrix()).expect("checked by jm_triple")
    };
    let dims = grading_dims(group, &dominant_gamma(group, &spectrum)?)?;
    let g0 = dims.get(&0).copied().unwrap_or(0);
    let g2 = dims.get(&2).copied().unwrap_or(0);
    let centre = usize::from(group.family() == Family::GeneralLinear);
    Ok(g0 - centre == g2)
}

/// Heiermann's condition inside the derived algebra: the eigenvalue-`q`
/// space and the eigenvalue-1 space of `Ad(λ(Fr))` have equal dimension.
pub fn is_q_distinguished(group: &DualGroupSpec, lambda: &InfinitesimalParam) -> Result<bool> {
    if lambda.group() != group {
        return Err(Error::GroupMismatch(lambda.group().to_string(), group.to_string()));
    }
    let s = build_spaces(lambda);
    let centre = usize::from(group.family() == Family::GeneralLinear);
    Ok(s.v.dim() == s.h.dim() - centre)
}

/// Outcome of the q-distinguished ⟹ distinguished-open-element check.
#[derive(Clone, Debug)]
pub struct HeiermannResult {
    pub q_distinguished: bool,
    pub witness: Option<LieElement>,
    /// Distinguishedness of the witness in the centralizer of the unitary
    /// part of `λ(Fr)`.
    pub distinguished_in_centralizer: Option<bool>,
    /// Distinguishedness of the witness in all of `ĝ`, for information.
    pub distinguished_in_group: Option<bool>,
}

/// For a q-distinguished `λ`, takes the open-orbit element as witness and
/// checks that it is distinguished in the centralizer `k` of the unitary
/// part of `λ(Fr)` (the reductive group whose Lie algebra contains the whole
/// eigenvalue-`q` and eigenvalue-1 spaces). A failure is an error.
pub fn heiermann_pipeline(lambda: &InfinitesimalParam) -> Result<HeiermannResult> {
    let group = *lambda.group();
    if !is_q_distinguished(&group, lambda)? {
        return Ok(HeiermannResult {
            q_distinguished: false,
            witness: None,
            distinguished_in_centralizer: None,
            distinguished_in_group: None,
        });
    }
    let witness = open_orbit_rep(lambda)?;
    let in_k = is_distinguished_in_unit_centralizer(lambda, &witness)?;
    if !in_k {
        return Err(Error::CrossCheck(format!(
            "open element of q-distinguished {lambda} is not distinguished in the unit centralizer"
        )));
    }
    let in_g = is_distinguished(&group, &witness)?;
    Ok(HeiermannResult {
        q_distinguished: true,
        witness: Some(witness),
        distinguished_in_centralizer: Some(in_k),
        distinguished_in_group: Some(in_g),
    })
}

/// `dim k(0) - dim z(k) = dim k(2)` where `k` is spanned by the entries
/// joining basis vectors of equal unit label and the grading comes from a
/// Jacobson–Morozov triple solved inside `k`.
pub fn is_distinguished_in_unit_centralizer(lambda: &InfinitesimalParam, n: &LieElement) -> Result<bool> {
    let group = *lambda.group();
    let size = group.size();
    let labels = lambda.canonical_labels();
    let k: Vec<Vec<Rational>> = full_algebra_basis(&group)
        .vectors()
        .iter()
        .filter(|v| {
            let lead = v.iter().position(|x| !x.is_zero()).expect("nonzero");
            labels[lead / size].u == labels[lead % size].u
        })
        .cloned()
        .collect();
    // The centre of k lies in the diagonal torus, which k contains; a torus
    // element is central iff it kills every root vector of k.
    let torus: Vec<&Vec<Rational>> = k.iter().filter(|v| is_diagonal_coords(size, v)).collect();
    let roots: Vec<(usize, usize)> = k
        .iter()
        .filter(|v| !is_diagonal_coords(size, v))
        .map(|v| {
            let lead = v.iter().position(|x| !x.is_zero()).unwrap();
            (lead / size, lead % size)
        })
        .collect();
    let rows: Vec<Vec<Rational>> = roots
        .iter()
        .map(|&(r, c)| {
            torus
                .iter()
                .map(|t| &t[r * size + r] - &t[c * size + c])
                .collect()
        })
        .collect();
    let centre = if rows.is_empty() {
        torus.len()
    } else {
        kernel_basis(&RatMatrix::from_rows(rows)?).dim()
    };

    let (k0, k2) = if n.is_zero() {
        (k.len(), 0)
    } else {
        nilpotency_check(&group, n)?;
        let torus_owned: Vec<Vec<Rational>> = torus.iter().map(|v| (*v).clone()).collect();
        let found = match solve_triple(size, &torus_owned, &k, n.matrix())? {
            Some(t) => Some(t),
            None => solve_triple(size, &k, &k, n.matrix())?,
        };
        let (h, _) = found.ok_or_else(|| Error::Triple("no triple inside the unit centralizer".into()))?;
        (ad_eigen_dim(size, &k, &h, 0), ad_eigen_dim(size, &k, &h, 2))
    };
    Ok(k0 - centre == k2)
}

/// `dim {X ∈ span(basis) : [h, X] = i X}` for `ad h` preserving the span.
fn ad_eigen_dim(size: usize, basis: &[Vec<Rational>], h: &RatMatrix, i: i64) -> usize {
    let cols: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| {
            let bm = mat(size, b);
            commutator(h, &bm).sub(&bm.scale(&rat(i))).into_entries()
        })
        .collect();
    basis.len() - rank(&RatMatrix::from_columns(size * size, &cols))
}

/// Partitions of `group.size()` labelling nilpotent orbits: all for `GL_N`;
/// odd parts with even multiplicity for `Sp`; even parts with even
/// multiplicity for `SO`.
pub fn admissible_partitions(group: &DualGroupSpec) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    partitions_rec(group.size(), group.size(), &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|p| {
            let bad_parity = match group.family() {
                Family::GeneralLinear => return true,
                Family::Symplectic => 1,
                _ => 0,
            };
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for &a in p {
                *counts.entry(a).or_insert(0) += 1;
            }
            counts.iter().all(|(&a, &k)| a % 2 != bad_parity || k % 2 == 0)
        })
        .collect()
}

fn partitions_rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for a in (1..=rest.min(max)).rev() {
        cur.push(a);
        partitions_rec(rest - a, a, cur, out);
        cur.pop();
    }
}

/// Distinguishedness read off the partition: a single part for `GL_N`,
/// distinct even parts for `Sp`, distinct odd parts for `SO`.
pub fn partition_is_distinguished(group: &DualGroupSpec, partition: &[usize]) -> bool {
    let distinct = partition.windows(2).all(|w| w[0] != w[1]);
    match group.family() {
        Family::GeneralLinear => partition.len() == 1,
        Family::Symplectic => distinct && partition.iter().all(|a| a % 2 == 0),
        _ => distinct && partition.iter().all(|a| a % 2 == 1),
    }
}

/// A nilpotent element of Jordan type `partition`, realized from the
/// tempered parameter with those summand dimensions.
pub fn nilpotent_for_partition(group: &DualGroupSpec, partition: &[usize]) -> Result<LieElement> {
    let summands = partition
        .iter()
        .map(|&a| Summand::new(0, HalfInteger::ZERO, a as u32))
        .collect();
    let phi = LanglandsParam::new(*group, 1, summands)?;
    Ok(realize(&phi)?.x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::matrix_unit;
    use crate::params::{infinitesimal_of, Label};
    use crate::vogan::entry_element;

    fn gl(n: usize) -> DualGroupSpec {
        DualGroupSpec::gl(n).unwrap()
    }

    fn diag(g: DualGroupSpec, d: &[i64]) -> LieElement {
        diagonal_element(g, &d.iter().map(|&x| rat(x)).collect::<Vec<_>>()).unwrap()
    }

    fn nu4() -> LieElement {
        let sp4 = DualGroupSpec::sp(4).unwrap();
        nilpotent_for_partition(&sp4, &[4]).unwrap()
    }

    #[test]
    fn triple_examples() {
        let t = jm_triple(&gl(2), &entry_element(gl(2), 0, 1).unwrap()).unwrap();
        assert_eq!(t.h, diag(gl(2), &[1, -1]));
        assert_eq!(t.f, entry_element(gl(2), 1, 0).unwrap());
        let reg = LieElement::new(gl(3), matrix_unit(3, 0, 1).add(&matrix_unit(3, 1, 2))).unwrap();
        assert_eq!(jm_triple(&gl(3), &reg).unwrap().h, diag(gl(3), &[2, 0, -2]));
        let sp4 = DualGroupSpec::sp(4).unwrap();
        jm_triple(&sp4, &nu4()).unwrap().verify().unwrap();
    }

    #[test]
    fn triple_errors() {
        assert!(jm_triple(&gl(2), &LieElement::zero(gl(2))).is_err());
        let not_nil = LieElement::new(gl(2), matrix_unit(2, 0, 0)).unwrap();
        assert!(matches!(jm_triple(&gl(2), &not_nil), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn non_adapted_nilpotent_gets_a_triple() {
        // E_{01} + E_{02}: no diagonal h exists in this basis.
        let n = LieElement::new(gl(3), matrix_unit(3, 0, 1).add(&matrix_unit(3, 0, 2))).unwrap();
        let t = jm_triple(&gl(3), &n).unwrap();
        assert!(!t.h.is_diagonal());
        assert_eq!(jordan_partition(n.matrix()), vec![2, 1]);
    }

    #[test]
    fn weighted_dynkin_examples() {
        let wd = |g: DualGroupSpec, p: &[usize]| {
            weighted_dynkin(&g, &nilpotent_for_partition(&g, p).unwrap()).unwrap().labels
        };
        assert_eq!(wd(gl(2), &[2]), vec![2]);
        assert_eq!(wd(gl(4), &[2, 2]), vec![0, 2, 0]);
        assert_eq!(wd(gl(3), &[3]), vec![2, 2]);
        assert_eq!(wd(DualGroupSpec::sp(4).unwrap(), &[4]), vec![2, 2]);
        assert_eq!(wd(DualGroupSpec::so(5).unwrap(), &[5]), vec![2, 2]);
        assert_eq!(wd(DualGroupSpec::so(8).unwrap(), &[7, 1]), vec![2, 2, 2, 2]);
    }

    #[test]
    fn grading_examples() {
        let dims = grading_dims(&gl(2), &diag(gl(2), &[0, 0])).unwrap();
        assert_eq!(dims, BTreeMap::from([(0, 4)]));
        let dims = grading_dims(&gl(2), &diag(gl(2), &[1, -1])).unwrap();
        assert_eq!(dims, BTreeMap::from([(-2, 1), (0, 2), (2, 1)]));
        let sp4 = DualGroupSpec::sp(4).unwrap();
        let dims = grading_dims(&sp4, &diag(sp4, &[3, 1, -1, -3])).unwrap();
        assert_eq!((dims[&0], dims[&2]), (2, 2));
        let half = diagonal_element(gl(2), &[crate::exactla::rat_frac(1, 2), rat(0)]).unwrap();
        assert!(matches!(grading_dims(&gl(2), &half), Err(Error::NonIntegralGrading(_))));
    }

    #[test]
    fn distinguished_examples() {
        for n in 1..=5 {
            let reg = nilpotent_for_partition(&gl(n), &[n]).unwrap();
            assert!(is_distinguished(&gl(n), &reg).unwrap());
        }
        let x = nilpotent_for_partition(&gl(4), &[2, 2]).unwrap();
        assert!(!is_distinguished(&gl(4), &x).unwrap());
        // The (2,2) grading of gl_4 has dim g(0) = 8 and dim g(2) = 4.
        let dims = grading_dims(&gl(4), &diag(gl(4), &[1, 1, -1, -1])).unwrap();
        assert_eq!((dims[&0], dims[&2]), (8, 4));
        assert!(is_distinguished(&DualGroupSpec::sp(4).unwrap(), &nu4()).unwrap());
    }

    #[test]
    fn partitions_agree_with_the_grading_criterion() {
        let mut groups: Vec<DualGroupSpec> = (1..=6).map(gl).collect();
        groups.extend((1..=4).map(|k| DualGroupSpec::sp(2 * k).unwrap()));
        groups.extend((1..=8).map(|k| DualGroupSpec::so(k).unwrap()));
        for g in groups {
            for p in admissible_partitions(&g) {
                let x = nilpotent_for_partition(&g, &p).unwrap();
                assert_eq!(jordan_partition(x.matrix()), p);
                assert_eq!(
                    is_distinguished(&g, &x).unwrap(),
                    partition_is_distinguished(&g, &p),
                    "{g} {p:?}"
                );
            }
        }
    }

    #[test]
    fn q_distinguished_examples() {
        let chain = |n: usize| {
            InfinitesimalParam::new(
                gl(n),
                4,
                (0..n).map(|i| (Label::new(0, HalfInteger::from_twice(n as i64 - 1 - 2 * i as i64)), 1)).collect(),
            )
            .unwrap()
        };
        assert!(is_q_distinguished(&gl(2), &chain(2)).unwrap());
        let flat = InfinitesimalParam::new(gl(2), 4, [(Label::new(0, HalfInteger::ZERO), 2)].into_iter().collect()).unwrap();
        assert!(!is_q_distinguished(&gl(2), &flat).unwrap());
        assert!(heiermann_pipeline(&flat).unwrap().witness.is_none());
        let r = heiermann_pipeline(&chain(2)).unwrap();
        assert_eq!(r.witness, Some(entry_element(gl(2), 0, 1).unwrap()));
        let sp4 = DualGroupSpec::sp(4).unwrap();
        let phi = LanglandsParam::new(sp4, 4, vec![Summand::new(0, HalfInteger::ZERO, 4)]).unwrap();
        let lam = infinitesimal_of(&phi);
        assert!(is_q_distinguished(&sp4, &lam).unwrap());
        let r = heiermann_pipeline(&lam).unwrap();
        assert_eq!(r.distinguished_in_group, Some(true));
    }

    #[test]
    fn quadratic_twist_witness_is_distinguished_only_in_the_centralizer() {
        let sp4 = DualGroupSpec::sp(4).unwrap();
        let phi = LanglandsParam::new(
            sp4,
            4,
            vec![Summand::new(0, HalfInteger::ZERO, 2), Summand::new(2, HalfInteger::ZERO, 2)],
        )
        .unwrap();
        let r = heiermann_pipeline(&infinitesimal_of(&phi)).unwrap();
        assert_eq!(r.distinguished_in_centralizer, Some(true));
        assert_eq!(r.distinguished_in_group, Some(false));
    }
}
