//! Matrix realizations of gl_N, sp_N and so_N.
//!
//! Classical algebras are defined by `Xᵀ J + J X = 0` for an antidiagonal
//! form `J`. For orthogonal families every antidiagonal entry is `+1`; for the
//! symplectic family the entries are `+1` in the upper half and `-1` in the
//! lower half. With these forms the diagonal torus is
//! `diag(t_1, …, t_k, [1,] t_k⁻¹, …, t_1⁻¹)`, so position `i` and position
//! `N-1-i` always carry dual eigenvalues.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{rat, RatMatrix, Rational, SubspaceBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    GeneralLinear,
    Symplectic,
    EvenOrthogonal,
    OddOrthogonal,
}

/// Symmetry type of an invariant bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FormType {
    Orthogonal,
    Symplectic,
}

impl FormType {
    /// Type of a tensor product of two self-dual pieces.
    pub fn tensor(self, other: FormType) -> FormType {
        if self == other {
            FormType::Orthogonal
        } else {
            FormType::Symplectic
        }
    }

    /// Type of `Sym^{a-1}`, the irreducible representation of SL_2 of dimension `a`.
    pub fn of_sym(a: u32) -> FormType {
        if a % 2 == 1 {
            FormType::Orthogonal
        } else {
            FormType::Symplectic
        }
    }
}

/// The dual group, through its standard representation of dimension `size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualGroupSpec {
    family: Family,
    size: usize,
}

impl DualGroupSpec {
    pub fn new(family: Family, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidGroup("size must be at least 1".into()));
        }
        let ok = match family {
            Family::GeneralLinear => true,
            Family::Symplectic | Family::EvenOrthogonal => size % 2 == 0,
            Family::OddOrthogonal => size % 2 == 1,
        };
        if !ok {
            return Err(Error::InvalidGroup(format!(
                "{family:?} requires {} size, got {size}",
                if family == Family::OddOrthogonal { "odd" } else { "even" }
            )));
        }
        Ok(DualGroupSpec { family, size })
    }

    pub fn gl(n: usize) -> Result<Self> {
        Self::new(Family::GeneralLinear, n)
    }

    pub fn sp(n: usize) -> Result<Self> {
        Self::new(Family::Symplectic, n)
    }

    /// SO_N; the parity of `n` picks the family.
    pub fn so(n: usize) -> Result<Self> {
        if n % 2 == 0 {
            Self::new(Family::EvenOrthogonal, n)
        } else {
            Self::new(Family::OddOrthogonal, n)
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_classical(&self) -> bool {
        self.family != Family::GeneralLinear
    }

    pub fn is_orthogonal(&self) -> bool {
        matches!(self.family, Family::EvenOrthogonal | Family::OddOrthogonal)
    }

    /// Form type every family-compatible self-dual summand must have.
    pub fn required_type(&self) -> Option<FormType> {
        match self.family {
            Family::GeneralLinear => None,
            Family::Symplectic => Some(FormType::Symplectic),
            Family::EvenOrthogonal | Family::OddOrthogonal => Some(FormType::Orthogonal),
        }
    }

    /// Dimension of the Lie algebra.
    pub fn dim(&self) -> usize {
        let n = self.size;
        match self.family {
            Family::GeneralLinear => n * n,
            Family::Symplectic => n * (n + 1) / 2,
            Family::EvenOrthogonal | Family::OddOrthogonal => n * (n - 1) / 2,
        }
    }

    /// Rank of the Lie algebra (dimension of the diagonal torus).
    pub fn rank(&self) -> usize {
        match self.family {
            Family::GeneralLinear => self.size,
            _ => self.size / 2,
        }
    }

    pub fn form(&self) -> Option<FormMatrix> {
        self.is_classical().then(|| FormMatrix::for_group(self))
    }

    /// Sign of the antidiagonal form entry in row `i` (`J[i][N-1-i]`).
    pub(crate) fn form_sign(&self, i: usize) -> i64 {
        match self.family {
            Family::Symplectic if i >= self.size / 2 => -1,
            _ => 1,
        }
    }

    pub fn short_name(&self) -> String {
        let n = self.size;
        match self.family {
            Family::GeneralLinear => format!("GL_{n}"),
            Family::Symplectic => format!("Sp_{n}"),
            Family::EvenOrthogonal | Family::OddOrthogonal => format!("SO_{n}"),
        }
    }
}

impl fmt::Display for DualGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_name())
    }
}

/// The antidiagonal Gram matrix of the invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    matrix: RatMatrix,
}

impl FormMatrix {
    fn for_group(group: &DualGroupSpec) -> Self {
        let n = group.size;
        let mut matrix = RatMatrix::zeros(n, n);
        for i in 0..n {
            matrix.set(i, n - 1 - i, rat(group.form_sign(i)));
        }
        FormMatrix { matrix }
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }
}

/// An element of the Lie algebra of the dual group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    group: DualGroupSpec,
    matrix: RatMatrix,
}

impl LieElement {
    /// Checks the form condition before wrapping.
    pub fn new(group: DualGroupSpec, matrix: RatMatrix) -> Result<Self> {
        if !is_member(&group, &matrix)? {
            return Err(Error::InvalidParameter {
                invariant: "Lie algebra membership",
                detail: format!("matrix is not in the Lie algebra of {group}"),
            });
        }
        Ok(LieElement { group, matrix })
    }

    pub fn zero(group: DualGroupSpec) -> Self {
        LieElement {
            group,
            matrix: RatMatrix::zeros(group.size, group.size),
        }
    }

    /// From flattened row-major coordinates.
    pub fn from_coords(group: DualGroupSpec, coords: &[Rational]) -> Result<Self> {
        let n = group.size;
        Self::new(group, RatMatrix::new(n, n, coords.to_vec())?)
    }

    pub(crate) fn from_coords_unchecked(group: DualGroupSpec, coords: Vec<Rational>) -> Self {
        let n = group.size;
        LieElement {
            group,
            matrix: RatMatrix::new(n, n, coords).expect("coordinate length"),
        }
    }

    pub fn group(&self) -> &DualGroupSpec {
        &self.group
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.matrix.entries().to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// True when every off-diagonal entry vanishes.
    pub fn is_diagonal(&self) -> bool {
        let n = self.group.size;
        (0..n).all(|r| (0..n).all(|c| r == c || self.matrix.get(r, c).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.group.size)
            .map(|i| self.matrix.get(i, i).clone())
            .collect()
    }

    pub fn scale(&self, s: &Rational) -> LieElement {
        LieElement {
            group: self.group,
            matrix: self.matrix.scale(s),
        }
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        same_group(self, other)?;
        Ok(LieElement {
            group: self.group,
            matrix: self.matrix.add(&other.matrix),
        })
    }
}

fn same_group(a: &LieElement, b: &LieElement) -> Result<()> {
    if a.group != b.group {
        return Err(Error::GroupMismatch(a.group.to_string(), b.group.to_string()));
    }
    Ok(())
}

/// `[a, b] = ab − ba`.
pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement> {
    same_group(a, b)?;
    Ok(LieElement {
        group: a.group,
        matrix: commutator(&a.matrix, &b.matrix),
    })
}

pub(crate) fn commutator(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.mul(b).sub(&b.mul(a))
}

/// Whether `m` satisfies the defining equation of the Lie algebra.
pub fn is_member(group: &DualGroupSpec, m: &RatMatrix) -> Result<bool> {
    let n = group.size;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for {group}",
            m.rows(),
            m.cols()
        )));
    }
    if !group.is_classical() {
        return Ok(true);
    }
    // (Xᵀ J + J X)[i][j] = σ_{j'} X[j'][i] + σ_i X[i'][j], with i' = N-1-i.
    for i in 0..n {
        for j in 0..n {
            let ip = n - 1 - i;
            let jp = n - 1 - j;
            let s = m.get(jp, i) * rat(group.form_sign(jp)) + m.get(ip, j) * rat(group.form_sign(i));
            if !s.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Row-major coordinate index of matrix entry `(r, c)`.
pub fn coord_index(group: &DualGroupSpec, r: usize, c: usize) -> usize {
    r * group.size + c
}

/// The basis element pattern for entry `(r, c)`: the entries it touches and
/// their coefficients. Classical algebras pair `(r, c)` with
/// `(N-1-c, N-1-r)`.
pub(crate) fn root_vector(group: &DualGroupSpec, r: usize, c: usize) -> Option<Vec<(usize, usize, i64)>> {
    let n = group.size;
    if !group.is_classical() {
        return Some(vec![(r, c, 1)]);
    }
    let (pr, pc) = (n - 1 - c, n - 1 - r);
    // X[r][c] = -(σ_{c'} / σ_{r'}) X[c'][r'] with r' = N-1-r, c' = N-1-c.
    let coeff = -group.form_sign(pr) * group.form_sign(pc);
    if (pr, pc) == (r, c) {
        // Antidiagonal entry: free iff the relation is X = X.
        return (coeff == 1).then(|| vec![(r, c, 1)]);
    }
    Some(vec![(r, c, 1), (pr, pc, coeff)])
}

/// Basis of the Lie algebra inside the `N²`-dimensional matrix coordinates,
/// one element per root space (plus the diagonal torus), ordered by the
/// lexicographically smallest entry it touches.
pub fn full_algebra_basis(group: &DualGroupSpec) -> SubspaceBasis {
    let n = group.size;
    let ambient = n * n;
    let mut vectors = Vec::with_capacity(group.dim());
    for r in 0..n {
        for c in 0..n {
            let Some(pattern) = root_vector(group, r, c) else {
                continue;
            };
            if pattern.iter().any(|&(pr, pc, _)| (pr, pc) < (r, c)) {
                continue;
            }
            let mut v = vec![Rational::zero(); ambient];
            for (pr, pc, coeff) in pattern {
                v[coord_index(group, pr, pc)] = rat(coeff);
            }
            vectors.push(v);
        }
    }
    debug_assert_eq!(vectors.len(), group.dim());
    SubspaceBasis::from_independent(ambient, vectors)
}

/// The linear map `X ↦ Xᵀ J + J X` on matrix coordinates. Its kernel is the
/// Lie algebra of a classical group.
pub fn form_equation_matrix(group: &DualGroupSpec) -> RatMatrix {
    let n = group.size;
    let mut m = RatMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = coord_index(group, i, j);
            let ip = n - 1 - i;
            let jp = n - 1 - j;
            let a = coord_index(group, jp, i);
            let b = coord_index(group, ip, j);
            let va = m.get(row, a) + rat(group.form_sign(jp));
            m.set(row, a, va);
            let vb = m.get(row, b) + rat(group.form_sign(i));
            m.set(row, b, vb);
        }
    }
    m
}

/// Diagonal element of the Lie algebra with the given diagonal.
pub fn diagonal_element(group: DualGroupSpec, diag: &[Rational]) -> Result<LieElement> {
    let n = group.size;
    if diag.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "diagonal of length {} for {group}",
            diag.len()
        )));
    }
    let mut m = RatMatrix::zeros(n, n);
    for (i, d) in diag.iter().enumerate() {
        m.set(i, i, d.clone());
    }
    LieElement::new(group, m)
}

/// Matrix unit `E_{rc}` (0-based).
pub fn matrix_unit(n: usize, r: usize, c: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    m.set(r, c, Rational::one());
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::kernel_basis;

    fn gl(n: usize) -> DualGroupSpec {
        DualGroupSpec::gl(n).unwrap()
    }

    #[test]
    fn group_spec_parity() {
        assert!(DualGroupSpec::sp(3).is_err());
        assert!(DualGroupSpec::new(Family::EvenOrthogonal, 5).is_err());
        assert!(DualGroupSpec::new(Family::OddOrthogonal, 4).is_err());
        assert!(DualGroupSpec::gl(0).is_err());
        assert_eq!(DualGroupSpec::so(5).unwrap().family(), Family::OddOrthogonal);
    }

    #[test]
    fn bracket_examples() {
        let g = gl(2);
        let e12 = LieElement::new(g, matrix_unit(2, 0, 1)).unwrap();
        let e21 = LieElement::new(g, matrix_unit(2, 1, 0)).unwrap();
        let h = bracket(&e12, &e21).unwrap();
        assert_eq!(h.matrix(), &RatMatrix::from_i64(2, 2, &[1, 0, 0, -1]).unwrap());
        assert!(bracket(&e12, &e12).unwrap().is_zero());

        let g3 = gl(3);
        let a = LieElement::new(g3, matrix_unit(3, 0, 1)).unwrap();
        let b = LieElement::new(g3, matrix_unit(3, 2, 1)).unwrap();
        assert!(bracket(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn bracket_rejects_group_mismatch() {
        let a = LieElement::zero(gl(2));
        let b = LieElement::zero(DualGroupSpec::sp(2).unwrap());
        assert!(matches!(bracket(&a, &b), Err(Error::GroupMismatch(_, _))));
    }

    #[test]
    fn membership_examples() {
        for g in [DualGroupSpec::sp(4).unwrap(), DualGroupSpec::so(5).unwrap()] {
            assert!(is_member(&g, &RatMatrix::zeros(g.size(), g.size())).unwrap());
        }
        let sp2 = DualGroupSpec::sp(2).unwrap();
        assert!(is_member(&sp2, &matrix_unit(2, 0, 1)).unwrap());
        let so4 = DualGroupSpec::so(4).unwrap();
        assert!(!is_member(&so4, &RatMatrix::identity(4)).unwrap());
        assert!(is_member(&so4, &RatMatrix::identity(3)).is_err());
    }

    #[test]
    fn algebra_dimensions() {
        assert_eq!(full_algebra_basis(&gl(2)).dim(), 4);
        assert_eq!(full_algebra_basis(&DualGroupSpec::sp(4).unwrap()).dim(), 10);
        assert_eq!(full_algebra_basis(&DualGroupSpec::so(5).unwrap()).dim(), 10);
    }

    #[test]
    fn explicit_basis_matches_form_kernel() {
        for n in 1..=8 {
            let mut groups = vec![DualGroupSpec::so(n).unwrap()];
            if n % 2 == 0 {
                groups.push(DualGroupSpec::sp(n).unwrap());
            }
            for g in groups {
                let explicit = full_algebra_basis(&g);
                let kernel = kernel_basis(&form_equation_matrix(&g));
                assert_eq!(explicit.dim(), g.dim(), "{g}");
                assert!(explicit.same_span(&kernel), "{g}");
                for v in explicit.vectors() {
                    let x = RatMatrix::new(n, n, v.clone()).unwrap();
                    assert!(is_member(&g, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn torus_is_dual_paired() {
        let g = DualGroupSpec::sp(4).unwrap();
        let d = [rat(3), rat(1), rat(-1), rat(-3)];
        assert!(diagonal_element(g, &d).is_ok());
        let bad = [rat(3), rat(1), rat(1), rat(-3)];
        assert!(diagonal_element(g, &bad).is_err());
    }
}
