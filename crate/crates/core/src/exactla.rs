//! Exact dense linear algebra over the rationals.
//!
//! Rank and kernels go through fraction-free (Bareiss) elimination on
//! integer-scaled rows. Elimination first runs in checked `i128` arithmetic
//! and restarts with `BigInt` the moment an intermediate value overflows, so
//! the result never depends on which path produced it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Scalars of the base field. Always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Lower and upper bound (inclusive) for the integer coefficients drawn by
/// [`random_vector`].
pub const RANDOM_COEFF_MIN: i64 = 1;
pub const RANDOM_COEFF_MAX: i64 = 10_000;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&v| rat(v)).collect())
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(len: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (c, v) in columns.iter().enumerate() {
            debug_assert_eq!(v.len(), len);
            for (r, q) in v.iter().enumerate() {
                if !q.is_zero() {
                    m.set(r, c, q.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    t.set(c, r, v.clone());
                }
            }
        }
        t
    }

    /// Matrix product. Panics on shape mismatch.
    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.entries[idx] += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                let v = self.get(r, c);
                if !v.is_zero() {
                    out.set(i, j, v.clone());
                }
            }
        }
        out
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if p != c {
                for j in 0..n {
                    a.entries.swap(p * n + j, c * n + j);
                    inv.entries.swap(p * n + j, c * n + j);
                }
            }
            let piv = a.get(c, c).recip();
            for j in 0..n {
                let idx = c * n + j;
                if !a.entries[idx].is_zero() {
                    a.entries[idx] *= &piv;
                }
                if !inv.entries[idx].is_zero() {
                    inv.entries[idx] *= &piv;
                }
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let av = a.get(c, j).clone();
                    if !av.is_zero() {
                        a.entries[r * n + j] -= &f * av;
                    }
                    let iv = inv.get(c, j).clone();
                    if !iv.is_zero() {
                        inv.entries[r * n + j] -= &f * iv;
                    }
                }
            }
        }
        Some(inv)
    }
}

/// An explicit basis of a linear subspace of `Q^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    /// Wraps vectors already known to be independent.
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        let basis = SubspaceBasis {
            ambient_dim,
            vectors,
        };
        if rank(&basis.to_row_matrix()) != basis.dim() {
            return Err(Error::DimensionMismatch(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(basis)
    }

    /// Basis of the span of arbitrary vectors (dependent ones are dropped).
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        let mut kept: Vec<Vec<Rational>> = Vec::new();
        for v in vectors {
            let mut trial = kept.clone();
            trial.push(v.clone());
            let m = RatMatrix::from_rows(trial).expect("uniform lengths");
            if rank(&m) > kept.len() {
                kept.push(v.clone());
            }
        }
        Ok(SubspaceBasis {
            ambient_dim,
            vectors: kept,
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)).collect();
        SubspaceBasis {
            ambient_dim,
            vectors,
        }
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient_dim: usize, coords: &[usize]) -> Self {
        let vectors = coords.iter().map(|&i| unit_vector(ambient_dim, i)).collect();
        SubspaceBasis {
            ambient_dim,
            vectors,
        }
    }

    pub(crate) fn from_independent(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// Vectors stacked as rows.
    pub fn to_row_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.vectors.clone())
            .unwrap_or_else(|_| RatMatrix::zeros(0, self.ambient_dim))
            .pad_cols(self.ambient_dim)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.vectors.clone();
        rows.push(v.to_vec());
        rank(&RatMatrix::from_rows(rows).expect("uniform lengths")) == self.dim()
    }

    /// Span equality.
    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() == other.dim()
            && other.vectors.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `Σ c_i v_i`.
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }
}

impl RatMatrix {
    fn pad_cols(self, cols: usize) -> RatMatrix {
        if self.rows == 0 {
            RatMatrix::zeros(0, cols)
        } else {
            self
        }
    }
}

pub fn unit_vector(len: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[i] = Rational::one();
    v
}

/// Rank over Q by fraction-free elimination.
pub fn rank(m: &RatMatrix) -> usize {
    echelon(&integer_rows(m), m.cols).pivots.len()
}

/// Basis of `{v : m v = 0}`, scaled to primitive integer vectors.
pub fn kernel_basis(m: &RatMatrix) -> SubspaceBasis {
    let ech = echelon(&integer_rows(m), m.cols);
    let free: Vec<usize> = (0..m.cols).filter(|c| !ech.pivots.contains(c)).collect();
    let vectors = free
        .iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); m.cols];
            x[f] = Rational::one();
            back_substitute(&ech, &mut x, None);
            primitive(x)
        })
        .collect();
    SubspaceBasis::from_independent(m.cols, vectors)
}

/// One solution of `m x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            m.rows
        )));
    }
    let mut aug = RatMatrix::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            let v = m.get(r, c);
            if !v.is_zero() {
                aug.set(r, c, v.clone());
            }
        }
        aug.set(r, m.cols, b[r].clone());
    }
    let ech = echelon(&integer_rows(&aug), aug.cols);
    if ech.pivots.contains(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m.cols + 1];
    back_substitute(&ech, &mut x, Some(m.cols));
    x.truncate(m.cols);
    Ok(Some(x))
}

/// Basis of `a ∩ b`.
pub fn intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "intersecting subspaces of ambient dimension {} and {}",
            a.ambient_dim, b.ambient_dim
        )));
    }
    let n = a.ambient_dim;
    if a.is_empty() || b.is_empty() {
        return Ok(SubspaceBasis::zero(n));
    }
    // Solve Σ α_i a_i − Σ β_j b_j = 0 and map each solution to Σ α_i a_i.
    let mut cols: Vec<Vec<Rational>> = a.vectors.clone();
    cols.extend(b.vectors.iter().map(|v| v.iter().map(|x| -x).collect()));
    let k = kernel_basis(&RatMatrix::from_columns(n, &cols));
    let vectors = k
        .vectors
        .iter()
        .map(|sol| primitive(a.combine(&sol[..a.dim()])))
        .collect();
    Ok(SubspaceBasis::from_independent(n, vectors))
}

/// A seeded pseudo-random point of `space`.
///
/// Coefficients are integers drawn uniformly from
/// `[RANDOM_COEFF_MIN, RANDOM_COEFF_MAX]` by a ChaCha8 stream seeded with
/// `seed`, so the same seed always yields the same vector.
pub fn random_vector(space: &SubspaceBasis, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<Rational> = (0..space.dim())
        .map(|_| loop {
            let c: i64 = rng.gen_range(RANDOM_COEFF_MIN..=RANDOM_COEFF_MAX);
            if c != 0 {
                break rat(c);
            }
        })
        .collect();
    space.combine(&coeffs)
}

/// Divides out the content and makes the vector integral.
fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for q in &v {
        if !q.is_zero() {
            lcm = lcm.lcm(q.denom());
        }
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if g.is_zero() {
        return v;
    }
    // Normalize the sign so the first nonzero entry is positive.
    if ints.iter().find(|i| !i.is_zero()).is_some_and(|i| i.is_negative()) {
        g = -g;
    }
    ints.into_iter()
        .map(|i| Rational::from_integer(i / &g))
        .collect()
}

fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let mut lcm = BigInt::one();
            for q in row {
                if !q.is_zero() && !q.denom().is_one() {
                    lcm = lcm.lcm(q.denom());
                }
            }
            row.iter()
                .map(|q| {
                    if q.is_zero() {
                        BigInt::zero()
                    } else {
                        q.numer() * (&lcm / q.denom())
                    }
                })
                .collect()
        })
        .collect()
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn echelon(rows: &[Vec<BigInt>], cols: usize) -> Echelon {
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v.to_i64().map(i128::from)).collect())
        .collect();
    if let Some(mut small) = small {
        if let Some(pivots) = bareiss(&mut small, cols) {
            let rows = small
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect();
            return Echelon { rows, pivots };
        }
    }
    let mut big = rows.to_vec();
    let pivots = bareiss(&mut big, cols).expect("BigInt elimination cannot overflow");
    Echelon { rows: big, pivots }
}

trait ElimInt: Clone {
    fn e_zero() -> Self;
    fn e_one() -> Self;
    fn e_is_zero(&self) -> bool;
    /// `(p * a - q * b) / d`, exact; `None` on overflow.
    fn cross_div(p: &Self, a: &Self, q: &Self, b: &Self, d: &Self) -> Option<Self>;
}

impl ElimInt for i128 {
    fn e_zero() -> Self {
        0
    }
    fn e_one() -> Self {
        1
    }
    fn e_is_zero(&self) -> bool {
        *self == 0
    }
    fn cross_div(p: &Self, a: &Self, q: &Self, b: &Self, d: &Self) -> Option<Self> {
        let x = p.checked_mul(*a)?;
        let y = q.checked_mul(*b)?;
        let n = x.checked_sub(y)?;
        debug_assert_eq!(n % d, 0, "Bareiss division must be exact");
        Some(n / d)
    }
}

impl ElimInt for BigInt {
    fn e_zero() -> Self {
        Zero::zero()
    }
    fn e_one() -> Self {
        One::one()
    }
    fn e_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross_div(p: &Self, a: &Self, q: &Self, b: &Self, d: &Self) -> Option<Self> {
        let n = p * a - q * b;
        debug_assert!(Zero::is_zero(&(&n % d)), "Bareiss division must be exact");
        Some(n / d)
    }
}

/// Fraction-free row echelon form in place. Returns pivot columns, or `None`
/// if the integer type overflowed.
fn bareiss<T: ElimInt>(a: &mut [Vec<T>], cols: usize) -> Option<Vec<usize>> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = T::e_one();
    let mut k = 0;
    for c in 0..cols {
        if k == nrows {
            break;
        }
        let Some(p) = (k..nrows).find(|&r| !a[r][c].e_is_zero()) else {
            continue;
        };
        a.swap(k, p);
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pv = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                if f.e_is_zero() && row[j].e_is_zero() {
                    continue;
                }
                row[j] = T::cross_div(&pv, &row[j], &f, &pivot_row[j], &prev)?;
            }
            row[c] = T::e_zero();
        }
        prev = pv;
        pivots.push(c);
        k += 1;
    }
    Some(pivots)
}

/// Fills the pivot entries of `x` from the echelon rows, treating the entries
/// already present in `x` as the values of the free variables. With
/// `rhs = Some(col)`, column `col` holds the right-hand side.
fn back_substitute(ech: &Echelon, x: &mut [Rational], rhs: Option<usize>) {
    for (k, &p) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[k];
        let mut s = match rhs {
            Some(col) => -Rational::from_integer(row[col].clone()),
            None => Rational::zero(),
        };
        for j in p + 1..row.len() {
            if Some(j) == rhs || row[j].is_zero() || x[j].is_zero() {
                continue;
            }
            s += Rational::from_integer(row[j].clone()) * &x[j];
        }
        x[p] = -s / Rational::from_integer(row[p].clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> RatMatrix {
        RatMatrix::from_i64(rows, cols, e).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(2, 2, &[1, 0, 0, 0])), 1);
        assert_eq!(rank(&RatMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&m(3, 3, &[1, 2, 3, 2, 4, 6, 0, 1, 1])), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&RatMatrix::zeros(2, 2)).dim(), 2);
        assert_eq!(kernel_basis(&RatMatrix::identity(3)).dim(), 0);
        let k = kernel_basis(&m(1, 2, &[1, 1]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.vectors()[0], vec![rat(1), rat(-1)]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(2, 4, &[1, 2, 0, -1, 3, 6, 1, 0]);
        let k = kernel_basis(&a);
        assert_eq!(k.dim(), 2);
        for v in k.vectors() {
            let col = RatMatrix::from_columns(4, std::slice::from_ref(v));
            assert!(a.mul(&col).is_zero());
        }
    }

    #[test]
    fn intersect_examples() {
        let full = SubspaceBasis::full(3);
        let b = SubspaceBasis::new(3, vec![vec![rat(1), rat(2), rat(3)]]).unwrap();
        assert!(intersect(&full, &b).unwrap().same_span(&b));

        let l1 = SubspaceBasis::new(2, vec![vec![rat(1), rat(0)]]).unwrap();
        let l2 = SubspaceBasis::new(2, vec![vec![rat(1), rat(1)]]).unwrap();
        assert_eq!(intersect(&l1, &l2).unwrap().dim(), 0);

        let p1 = SubspaceBasis::coordinate(3, &[0, 1]);
        let p2 = SubspaceBasis::coordinate(3, &[1, 2]);
        let i = intersect(&p1, &p2).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.same_span(&SubspaceBasis::coordinate(3, &[1])));
    }

    #[test]
    fn intersect_rejects_mismatched_ambient() {
        let a = SubspaceBasis::full(2);
        let b = SubspaceBasis::full(3);
        assert!(matches!(
            intersect(&a, &b),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn random_vector_contract() {
        let empty = SubspaceBasis::zero(3);
        assert!(random_vector(&empty, 9).iter().all(Zero::is_zero));

        let plane = SubspaceBasis::coordinate(2, &[0, 1]);
        assert_eq!(random_vector(&plane, 5), random_vector(&plane, 5));
        let v = random_vector(&plane, 1);
        assert!(v.iter().all(|c| !c.is_zero()));
        let bound = rat(RANDOM_COEFF_MAX);
        assert!(v.iter().all(|c| c >= &rat(RANDOM_COEFF_MIN) && c <= &bound));
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        let x = solve(&a, &[rat(3), rat(2)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        assert!(solve(&m(2, 1, &[1, 1]), &[rat(1), rat(2)]).unwrap().is_none());
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(2));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn big_entries_fall_back_to_bigint() {
        let big = i64::MAX / 3;
        let a = m(3, 3, &[big, 1, 2, 3, big, 5, 7, 11, big]);
        assert_eq!(rank(&a), 3);
        let singular = m(2, 2, &[big, big - 1, big, big - 1]);
        assert_eq!(rank(&singular), 1);
        assert_eq!(kernel_basis(&singular).dim(), 1);
    }
}
