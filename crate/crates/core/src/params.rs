//! Combinatorial model of unramified Langlands, Arthur and infinitesimal
//! parameters on the standard representation of the dual group.
//!
//! A Langlands parameter is a multiset of summands `(u, e, a)` standing for
//! `χ_u ⊗ |·|^e ⊗ Sym^{a-1}`, where `χ_u` is a unitary unramified character
//! indexed by `u ∈ Z/m`. Contragredience is `(u, e, a) ↦ (-u, -e, a)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::liealg::{DualGroupSpec, Family, FormType};

/// Default size of the finite group of unit labels.
pub const DEFAULT_UNIT_MODULUS: u32 = 4;

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInteger { twice: 2 * v }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInteger {
            twice: self.twice.abs(),
        }
    }

    pub fn is_zero(self) -> bool {
        self.twice == 0
    }
}

impl std::ops::Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> HalfInteger {
        HalfInteger { twice: -self.twice }
    }
}

impl std::ops::Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger {
            twice: self.twice + rhs.twice,
        }
    }
}

impl std::ops::Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger {
            twice: self.twice - rhs.twice,
        }
    }
}

/// Integers print as integers, the rest as `p/2`.
impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl serde::Serialize for HalfInteger {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for HalfInteger {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let bad = || format!("`{s}` is not an integer or a fraction p/2");
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInteger::from_int).map_err(|_| bad()),
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                match q.trim() {
                    "1" => Ok(HalfInteger::from_int(p)),
                    "2" => Ok(HalfInteger::from_twice(p)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// Index of a unitary unramified character in `Z/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UnitLabel(pub u32);

impl UnitLabel {
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn dual(self, modulus: u32) -> UnitLabel {
        UnitLabel((modulus - self.0 % modulus) % modulus)
    }

    pub fn is_self_dual(self, modulus: u32) -> bool {
        (2 * self.0) % modulus == 0
    }
}

/// Frobenius eigenvalue label `ζ^u q^e` of a basis vector of the standard
/// representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub u: UnitLabel,
    pub e: HalfInteger,
}

impl Label {
    pub fn new(u: u32, e: HalfInteger) -> Self {
        Label { u: UnitLabel(u), e }
    }

    pub fn dual(self, modulus: u32) -> Label {
        Label {
            u: self.u.dual(modulus),
            e: -self.e,
        }
    }

    /// `e ↦ -e` with the unit kept; used to view V* as a Vogan variety.
    pub fn mirrored(self) -> Label {
        Label { u: self.u, e: -self.e }
    }

    pub fn shifted(self, steps: i64) -> Label {
        Label {
            u: self.u,
            e: HalfInteger::from_twice(self.e.twice() + 2 * steps),
        }
    }

    /// Exponents descending, then units ascending.
    pub fn canonical_key(self) -> (std::cmp::Reverse<HalfInteger>, UnitLabel) {
        (std::cmp::Reverse(self.e), self.u)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u.0, self.e)
    }
}

/// One irreducible summand `χ_u ⊗ |·|^e ⊗ Sym^{a-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub u: UnitLabel,
    pub e: HalfInteger,
    pub a: u32,
}

impl Summand {
    pub fn new(u: u32, e: HalfInteger, a: u32) -> Self {
        Summand { u: UnitLabel(u), e, a }
    }

    pub fn dual(self, modulus: u32) -> Summand {
        Summand {
            u: self.u.dual(modulus),
            e: -self.e,
            a: self.a,
        }
    }

    pub fn is_self_dual(self, modulus: u32) -> bool {
        self.u.is_self_dual(modulus) && self.e.is_zero()
    }

    /// Form type of a self-dual summand; `None` otherwise.
    pub fn form_type(self, modulus: u32) -> Option<FormType> {
        self.is_self_dual(modulus)
            .then(|| FormType::Orthogonal.tensor(FormType::of_sym(self.a)))
    }

    /// Exponent of position `k` along the string, from the top (`k = 0`).
    pub fn exponent_at(self, k: u32) -> HalfInteger {
        HalfInteger::from_twice(self.e.twice() + i64::from(self.a) - 1 - 2 * i64::from(k))
    }

    pub fn top(self) -> HalfInteger {
        self.exponent_at(0)
    }

    pub fn bottom(self) -> HalfInteger {
        self.exponent_at(self.a - 1)
    }

    /// Whether the string passes through exponent `x`.
    pub fn covers(self, x: HalfInteger) -> bool {
        let (lo, hi) = (self.bottom().twice(), self.top().twice());
        lo <= x.twice() && x.twice() <= hi && (x.twice() - lo) % 2 == 0
    }

    pub fn labels(self) -> impl Iterator<Item = Label> {
        (0..self.a).map(move |k| Label {
            u: self.u,
            e: self.exponent_at(k),
        })
    }
}

fn check_group_modulus(group: &DualGroupSpec, modulus: u32) -> Result<()> {
    let _ = group;
    if modulus == 0 {
        return Err(Error::invalid("unit modulus", "unit modulus must be at least 1"));
    }
    Ok(())
}

fn counts<T: Ord + Copy>(items: &[T]) -> BTreeMap<T, usize> {
    let mut m = BTreeMap::new();
    for &t in items {
        *m.entry(t).or_insert(0) += 1;
    }
    m
}

/// A Langlands parameter: a multiset of summands on the standard
/// representation of the dual group. Summands are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LanglandsParam {
    group: DualGroupSpec,
    unit_modulus: u32,
    summands: Vec<Summand>,
}

impl LanglandsParam {
    pub fn new(group: DualGroupSpec, unit_modulus: u32, mut summands: Vec<Summand>) -> Result<Self> {
        check_group_modulus(&group, unit_modulus)?;
        for s in &summands {
            if s.u.0 >= unit_modulus {
                return Err(Error::invalid(
                    "unit label range",
                    format!("unit label {} outside Z/{unit_modulus}", s.u.0),
                ));
            }
            if s.a == 0 {
                return Err(Error::invalid("summand dimension", "a must be at least 1"));
            }
        }
        let total: usize = summands.iter().map(|s| s.a as usize).sum();
        if total != group.size() {
            return Err(Error::invalid(
                "size",
                format!("summand dimensions add up to {total}, group {group} needs {}", group.size()),
            ));
        }
        summands.sort();
        if let Some(required) = group.required_type() {
            let c = counts(&summands);
            for (&s, &mult) in &c {
                let d = s.dual(unit_modulus);
                if c.get(&d).copied().unwrap_or(0) != mult {
                    return Err(Error::invalid(
                        "duality closure",
                        format!(
                            "summand ({}, {}, {}) occurs {mult} times but its dual ({}, {}, {}) occurs {} times",
                            s.u.0,
                            s.e,
                            s.a,
                            d.u.0,
                            d.e,
                            d.a,
                            c.get(&d).copied().unwrap_or(0)
                        ),
                    ));
                }
                if let Some(t) = s.form_type(unit_modulus) {
                    if t != required && mult % 2 == 1 {
                        return Err(Error::invalid(
                            "self-dual type",
                            format!(
                                "self-dual summand ({}, {}, {}) is {t:?} but {group} needs {required:?}; it must occur an even number of times",
                                s.u.0, s.e, s.a
                            ),
                        ));
                    }
                }
            }
            if group.is_orthogonal() {
                let odd = determinant_sign_count(&summands, unit_modulus);
                if odd % 2 == 1 {
                    return Err(Error::invalid(
                        "determinant",
                        "the parameter has determinant given by the nontrivial quadratic unit; it lands in O(N) but not SO(N)",
                    ));
                }
            }
        }
        Ok(LanglandsParam {
            group,
            unit_modulus,
            summands,
        })
    }

    pub fn group(&self) -> &DualGroupSpec {
        &self.group
    }

    pub fn unit_modulus(&self) -> u32 {
        self.unit_modulus
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }
}

/// Number of self-dual summands of odd dimension carrying the nontrivial
/// quadratic unit; its parity is the determinant of the parameter.
fn determinant_sign_count(summands: &[Summand], modulus: u32) -> usize {
    summands
        .iter()
        .filter(|s| s.is_self_dual(modulus) && s.u.0 != 0 && s.a % 2 == 1)
        .count()
}

impl fmt::Display for LanglandsParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| format!("({}, {}, {})", s.u.0, s.e, s.a))
            .collect();
        write!(f, "{} {{{}}}", self.group, parts.join(", "))
    }
}

/// One Arthur summand `χ_u ⊗ Sym^{a-1} ⊗ Sym^{b-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArthurTriple {
    pub u: UnitLabel,
    pub a: u32,
    pub b: u32,
}

impl ArthurTriple {
    pub fn new(u: u32, a: u32, b: u32) -> Self {
        ArthurTriple { u: UnitLabel(u), a, b }
    }

    pub fn is_self_dual(self, modulus: u32) -> bool {
        self.u.is_self_dual(modulus)
    }

    pub fn form_type(self, modulus: u32) -> Option<FormType> {
        self.is_self_dual(modulus)
            .then(|| FormType::of_sym(self.a).tensor(FormType::of_sym(self.b)))
    }

    pub fn dual(self, modulus: u32) -> ArthurTriple {
        ArthurTriple {
            u: self.u.dual(modulus),
            ..self
        }
    }

    /// The summands `(u, (b-1)/2 - j, a)` obtained by evaluating the Arthur
    /// SL_2 on the diagonal `diag(|w|^{1/2}, |w|^{-1/2})`.
    pub fn ladder(self) -> impl Iterator<Item = Summand> {
        (0..self.b).map(move |j| Summand {
            u: self.u,
            e: HalfInteger::from_twice(i64::from(self.b) - 1 - 2 * i64::from(j)),
            a: self.a,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArthurParam {
    group: DualGroupSpec,
    unit_modulus: u32,
    triples: Vec<ArthurTriple>,
}

impl ArthurParam {
    pub fn new(group: DualGroupSpec, unit_modulus: u32, mut triples: Vec<ArthurTriple>) -> Result<Self> {
        check_group_modulus(&group, unit_modulus)?;
        for t in &triples {
            if t.u.0 >= unit_modulus {
                return Err(Error::invalid(
                    "unit label range",
                    format!("unit label {} outside Z/{unit_modulus}", t.u.0),
                ));
            }
            if t.a == 0 || t.b == 0 {
                return Err(Error::invalid("summand dimension", "a and b must be at least 1"));
            }
        }
        let total: usize = triples.iter().map(|t| (t.a * t.b) as usize).sum();
        if total != group.size() {
            return Err(Error::invalid(
                "size",
                format!("Σ a·b = {total}, group {group} needs {}", group.size()),
            ));
        }
        triples.sort();
        if let Some(required) = group.required_type() {
            let c = counts(&triples);
            for (&t, &mult) in &c {
                let d = t.dual(unit_modulus);
                if c.get(&d).copied().unwrap_or(0) != mult {
                    return Err(Error::invalid(
                        "duality closure",
                        format!("Arthur summand ({}, {}, {}) is not matched by its dual", t.u.0, t.a, t.b),
                    ));
                }
                if let Some(ty) = t.form_type(unit_modulus) {
                    if ty != required && mult % 2 == 1 {
                        return Err(Error::invalid(
                            "self-dual type",
                            format!(
                                "self-dual Arthur summand ({}, {}, {}) is {ty:?} but {group} needs {required:?}",
                                t.u.0, t.a, t.b
                            ),
                        ));
                    }
                }
            }
            if group.is_orthogonal() {
                let odd = triples
                    .iter()
                    .filter(|t| t.is_self_dual(unit_modulus) && t.u.0 != 0 && (t.a * t.b) % 2 == 1)
                    .count();
                if odd % 2 == 1 {
                    return Err(Error::invalid(
                        "determinant",
                        "the Arthur parameter lands in O(N) but not SO(N)",
                    ));
                }
            }
        }
        Ok(ArthurParam {
            group,
            unit_modulus,
            triples,
        })
    }

    pub fn group(&self) -> &DualGroupSpec {
        &self.group
    }

    pub fn unit_modulus(&self) -> u32 {
        self.unit_modulus
    }

    pub fn triples(&self) -> &[ArthurTriple] {
        &self.triples
    }
}

/// An infinitesimal parameter: the multiplicity of each Frobenius eigenvalue
/// label on the standard representation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InfinitesimalParam {
    group: DualGroupSpec,
    unit_modulus: u32,
    grading: BTreeMap<Label, usize>,
}

impl InfinitesimalParam {
    pub fn new(group: DualGroupSpec, unit_modulus: u32, grading: BTreeMap<Label, usize>) -> Result<Self> {
        check_group_modulus(&group, unit_modulus)?;
        let grading: BTreeMap<Label, usize> = grading.into_iter().filter(|&(_, m)| m > 0).collect();
        if grading.keys().any(|l| l.u.0 >= unit_modulus) {
            return Err(Error::invalid("unit label range", "label outside Z/m"));
        }
        let total: usize = grading.values().sum();
        if total != group.size() {
            return Err(Error::invalid(
                "size",
                format!("multiplicities add up to {total}, group {group} needs {}", group.size()),
            ));
        }
        if group.is_classical() {
            for (&l, &mult) in &grading {
                let d = l.dual(unit_modulus);
                if grading.get(&d).copied().unwrap_or(0) != mult {
                    return Err(Error::invalid(
                        "duality closure",
                        format!("label {l} and its dual {d} have different multiplicities"),
                    ));
                }
                // A torus element of the classical group pairs position i
                // with N-1-i, so self-dual labels fill pairs of positions;
                // only the unit eigenvalue may sit in the middle.
                if d == l {
                    let middle_ok = l == Label::new(0, HalfInteger::ZERO) && group.size() % 2 == 1;
                    if mult % 2 == 1 && !middle_ok {
                        return Err(Error::invalid(
                            "torus arrangement",
                            format!("self-dual label {l} has odd multiplicity {mult}"),
                        ));
                    }
                }
            }
            if group.size() % 2 == 1 && grading.get(&Label::new(0, HalfInteger::ZERO)).copied().unwrap_or(0) % 2 == 0 {
                return Err(Error::invalid(
                    "torus arrangement",
                    "odd orthogonal groups need the label (0, 0) with odd multiplicity",
                ));
            }
        }
        Ok(InfinitesimalParam {
            group,
            unit_modulus,
            grading,
        })
    }

    pub fn group(&self) -> &DualGroupSpec {
        &self.group
    }

    pub fn unit_modulus(&self) -> u32 {
        self.unit_modulus
    }

    pub fn grading(&self) -> &BTreeMap<Label, usize> {
        &self.grading
    }

    pub fn multiplicity(&self, l: Label) -> usize {
        self.grading.get(&l).copied().unwrap_or(0)
    }

    /// The grading `(u, e) ↦ (u, -e)`, whose `V` is the `V*` of `self`.
    pub fn mirrored(&self) -> InfinitesimalParam {
        InfinitesimalParam {
            group: self.group,
            unit_modulus: self.unit_modulus,
            grading: self.grading.iter().map(|(l, &k)| (l.mirrored(), k)).collect(),
        }
    }

    /// The ordered basis labels of the standard representation.
    ///
    /// For `GL_N` the labels are sorted by exponent (descending) then unit.
    /// For classical groups the first half holds one representative of each
    /// dual pair (the one with larger exponent, or smaller unit at exponent
    /// 0) in the same order, the middle holds `(0, 0)` when `N` is odd, and
    /// the second half mirrors the first so position `N-1-i` is dual to `i`.
    pub fn canonical_labels(&self) -> Vec<Label> {
        let m = self.unit_modulus;
        if !self.group.is_classical() {
            let mut out: Vec<Label> = self
                .grading
                .iter()
                .flat_map(|(&l, &k)| std::iter::repeat_n(l, k))
                .collect();
            out.sort_by_key(|l| l.canonical_key());
            return out;
        }
        let mut first = Vec::new();
        for (&l, &k) in &self.grading {
            let d = l.dual(m);
            if d == l {
                first.extend(std::iter::repeat_n(l, k / 2));
            } else if l.e > d.e || (l.e == d.e && l.u.0 < d.u.0) {
                first.extend(std::iter::repeat_n(l, k));
            }
        }
        first.sort_by_key(|l| l.canonical_key());
        let mut out = first.clone();
        if self.group.size() % 2 == 1 {
            out.push(Label::new(0, HalfInteger::ZERO));
        }
        out.extend(first.iter().rev().map(|l| l.dual(m)));
        out
    }
}

impl fmt::Display for InfinitesimalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .grading
            .iter()
            .map(|(l, k)| format!("{l}:{k}"))
            .collect();
        write!(f, "{} {{{}}}", self.group, parts.join(", "))
    }
}

/// `λ_φ(w) = φ(w, diag(|w|^{1/2}, |w|^{-1/2}))`: every summand `(u, e, a)`
/// contributes the labels `(u, e + (a-1)/2 - j)` for `j = 0, …, a-1`.
pub fn infinitesimal_of(phi: &LanglandsParam) -> InfinitesimalParam {
    let mut grading = BTreeMap::new();
    for s in &phi.summands {
        for l in s.labels() {
            *grading.entry(l).or_insert(0) += 1;
        }
    }
    InfinitesimalParam::new(phi.group, phi.unit_modulus, grading)
        .expect("the grading of a valid parameter is a valid infinitesimal parameter")
}

/// `φ(w, x) = ψ(w, x, d_w)`.
pub fn arthur_to_langlands(psi: &ArthurParam) -> Result<LanglandsParam> {
    let summands = psi.triples.iter().flat_map(|t| t.ladder()).collect();
    LanglandsParam::new(psi.group, psi.unit_modulus, summands)
}

/// Bounded restriction to the Weil group: every exponent vanishes.
pub fn is_tempered(phi: &LanglandsParam) -> bool {
    phi.summands.iter().all(|s| s.e.is_zero())
}

/// Returns an Arthur parameter `ψ` with `φ(w, x) = ψ(w, x, d_w)` if one
/// exists.
///
/// A ladder `(u, a, b)` is centred at exponent 0, so its top summand has
/// exponent `(b-1)/2` and nothing in the ladder lies above it. Repeatedly
/// peeling the ladder whose top is a summand of largest exponent therefore
/// explores the only possible decomposition; the search is exhaustive.
pub fn is_arthur_type(phi: &LanglandsParam) -> Option<ArthurParam> {
    let mut remaining = counts(&phi.summands);
    let mut triples = Vec::new();
    while let Some(top) = remaining
        .keys()
        .copied()
        .max_by_key(|s| (s.e, std::cmp::Reverse(*s)))
    {
        if top.e.twice() < 0 {
            return None;
        }
        let b = u32::try_from(top.e.twice() + 1).ok()?;
        let triple = ArthurTriple { u: top.u, a: top.a, b };
        for s in triple.ladder() {
            match remaining.get_mut(&s) {
                Some(k) if *k > 0 => {
                    *k -= 1;
                    if *k == 0 {
                        remaining.remove(&s);
                    }
                }
                _ => return None,
            }
        }
        triples.push(triple);
    }
    ArthurParam::new(phi.group, phi.unit_modulus, triples).ok()
}

/// Discrete (elliptic) parameters. For `GL_N`: a single tempered summand.
/// For classical groups: tempered, multiplicity free, and every summand
/// self-dual of the type the group requires.
pub fn is_discrete(phi: &LanglandsParam) -> bool {
    match phi.group.required_type() {
        None => phi.summands.len() == 1 && phi.summands[0].e.is_zero(),
        Some(required) => {
            is_tempered(phi)
                && phi.summands.windows(2).all(|w| w[0] != w[1])
                && phi
                    .summands
                    .iter()
                    .all(|s| s.form_type(phi.unit_modulus) == Some(required))
        }
    }
}

/// Shape of the centralizer `Z(φ)` in the dual group and the 2-rank of its
/// component group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ComponentGroup {
    /// `GL(m)` factors from non-self-dual summand pairs.
    pub gl_factors: usize,
    /// `O(m)` factors from self-dual summands of the group's own type.
    pub orthogonal_factors: usize,
    /// `Sp(m)` factors from self-dual summands of the opposite type.
    pub symplectic_factors: usize,
    pub two_rank: usize,
}

pub fn component_group(phi: &LanglandsParam) -> Result<ComponentGroup> {
    let m = phi.unit_modulus;
    let c = counts(&phi.summands);
    let Some(required) = phi.group.required_type() else {
        return Ok(ComponentGroup {
            gl_factors: c.len(),
            ..ComponentGroup::default()
        });
    };
    let mut out = ComponentGroup::default();
    for (&s, &mult) in &c {
        let d = s.dual(m);
        if c.get(&d).copied().unwrap_or(0) != mult {
            return Err(Error::invalid("duality closure", format!("summand {s:?} has no matching dual")));
        }
        match s.form_type(m) {
            None => {
                if s < d {
                    out.gl_factors += 1;
                }
            }
            Some(t) if t == required => out.orthogonal_factors += 1,
            Some(_) => out.symplectic_factors += 1,
        }
    }
    out.two_rank = if phi.group.is_orthogonal() {
        out.orthogonal_factors.saturating_sub(1)
    } else {
        out.orthogonal_factors
    };
    Ok(out)
}

/// Parameter of `group` obtained from a parameter of a Levi subgroup
/// `GL_{n_1} × … × GL_{n_k} × G_0`. For a classical `group` every
/// `GL`-part summand enters together with its dual.
pub fn induce(levi_parts: &[LanglandsParam], group: DualGroupSpec) -> Result<LanglandsParam> {
    let modulus = levi_parts
        .first()
        .map_or(DEFAULT_UNIT_MODULUS, |p| p.unit_modulus);
    if levi_parts.iter().any(|p| p.unit_modulus != modulus) {
        return Err(Error::invalid("unit modulus", "Levi parts use different unit moduli"));
    }
    let mut summands = Vec::new();
    let mut classical_parts = 0;
    let mut size = 0;
    for p in levi_parts {
        let g = p.group;
        if g.family() == Family::GeneralLinear {
            size += if group.is_classical() { 2 * g.size() } else { g.size() };
            summands.extend_from_slice(&p.summands);
            if group.is_classical() {
                summands.extend(p.summands.iter().map(|s| s.dual(modulus)));
            }
        } else {
            if !group.is_classical() || g.family() != group.family() {
                return Err(Error::DimensionMismatch(format!(
                    "Levi factor {g} does not fit in {group}"
                )));
            }
            classical_parts += 1;
            size += g.size();
            summands.extend_from_slice(&p.summands);
        }
    }
    if classical_parts > 1 {
        return Err(Error::DimensionMismatch("at most one classical Levi factor".into()));
    }
    if size != group.size() {
        return Err(Error::DimensionMismatch(format!(
            "Levi factors have total size {size}, {group} needs {}",
            group.size()
        )));
    }
    LanglandsParam::new(group, modulus, summands)
}

/// Every Langlands parameter of `lambda`'s group whose infinitesimal
/// parameter is `lambda`. These are the multisegments on the grading; for
/// classical groups only those satisfying the parameter invariants remain.
/// Output is sorted.
pub fn params_with_infinitesimal(lambda: &InfinitesimalParam) -> Vec<LanglandsParam> {
    let mut remaining: BTreeMap<Label, usize> = lambda.grading.clone();
    let mut current = Vec::new();
    let mut out = Vec::new();
    segments_rec(&mut remaining, &mut current, None, &mut |segs| {
        if let Ok(p) = LanglandsParam::new(lambda.group, lambda.unit_modulus, segs.to_vec()) {
            out.push(p);
        }
    });
    out.sort();
    out.dedup();
    out
}

/// Segments are chosen bottom-up: the lowest remaining label of a unit is
/// necessarily the bottom of some segment. Segments sharing a bottom are
/// produced in non-increasing length to avoid repeats.
fn segments_rec(
    remaining: &mut BTreeMap<Label, usize>,
    current: &mut Vec<Summand>,
    last: Option<(Label, u32)>,
    emit: &mut dyn FnMut(&[Summand]),
) {
    let Some(bottom) = remaining
        .iter()
        .filter(|&(_, &k)| k > 0)
        .map(|(&l, _)| l)
        .min_by_key(|l| (l.u, l.e))
    else {
        emit(current);
        return;
    };
    let mut max_len = 0u32;
    while remaining.get(&bottom.shifted(i64::from(max_len))).copied().unwrap_or(0) > 0 {
        max_len += 1;
    }
    if let Some((lb, ll)) = last {
        if lb == bottom {
            max_len = max_len.min(ll);
        }
    }
    for len in (1..=max_len).rev() {
        for i in 0..len {
            *remaining.get_mut(&bottom.shifted(i64::from(i))).unwrap() -= 1;
        }
        current.push(Summand {
            u: bottom.u,
            e: HalfInteger::from_twice(bottom.e.twice() + i64::from(len) - 1),
            a: len,
        });
        segments_rec(remaining, current, Some((bottom, len)), emit);
        current.pop();
        for i in 0..len {
            *remaining.get_mut(&bottom.shifted(i64::from(i))).unwrap() += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInteger {
        HalfInteger::from_twice(twice)
    }

    fn gl(n: usize) -> DualGroupSpec {
        DualGroupSpec::gl(n).unwrap()
    }

    fn sp(n: usize) -> DualGroupSpec {
        DualGroupSpec::sp(n).unwrap()
    }

    fn param(g: DualGroupSpec, s: &[(u32, i64, u32)]) -> LanglandsParam {
        LanglandsParam::new(
            g,
            DEFAULT_UNIT_MODULUS,
            s.iter().map(|&(u, e2, a)| Summand::new(u, h(e2), a)).collect(),
        )
        .unwrap()
    }

    fn grading(pairs: &[(u32, i64, usize)]) -> BTreeMap<Label, usize> {
        pairs.iter().map(|&(u, e2, k)| (Label::new(u, h(e2)), k)).collect()
    }

    #[test]
    fn half_integer_text() {
        assert_eq!(h(1).to_string(), "1/2");
        assert_eq!(h(-3).to_string(), "-3/2");
        assert_eq!(h(4).to_string(), "2");
        assert_eq!("-3/2".parse::<HalfInteger>().unwrap(), h(-3));
        assert_eq!("0".parse::<HalfInteger>().unwrap(), h(0));
        assert_eq!("2/1".parse::<HalfInteger>().unwrap(), h(4));
        assert!("1/3".parse::<HalfInteger>().is_err());
        assert!("x".parse::<HalfInteger>().is_err());
    }

    #[test]
    fn infinitesimal_examples() {
        let st = param(gl(2), &[(0, 0, 2)]);
        assert_eq!(infinitesimal_of(&st).grading(), &grading(&[(0, 1, 1), (0, -1, 1)]));
        let triv = param(gl(1), &[(0, 0, 1)]);
        assert_eq!(infinitesimal_of(&triv).grading(), &grading(&[(0, 0, 1)]));
        let nu4 = param(sp(4), &[(0, 0, 4)]);
        assert_eq!(
            infinitesimal_of(&nu4).grading(),
            &grading(&[(0, 3, 1), (0, 1, 1), (0, -1, 1), (0, -3, 1)])
        );
    }

    #[test]
    fn arthur_to_langlands_examples() {
        let cases: [(&[(u32, u32, u32)], usize, &[(u32, i64, u32)]); 3] = [
            (&[(0, 1, 2)], 2, &[(0, 1, 1), (0, -1, 1)]),
            (&[(0, 2, 1)], 2, &[(0, 0, 2)]),
            (&[(0, 1, 3)], 3, &[(0, 2, 1), (0, 0, 1), (0, -2, 1)]),
        ];
        for (triples, n, expected) in cases {
            let psi = ArthurParam::new(
                gl(n),
                4,
                triples.iter().map(|&(u, a, b)| ArthurTriple::new(u, a, b)).collect(),
            )
            .unwrap();
            assert_eq!(arthur_to_langlands(&psi).unwrap(), param(gl(n), expected));
        }
    }

    #[test]
    fn temperedness() {
        assert!(is_tempered(&param(gl(2), &[(0, 0, 2)])));
        assert!(!is_tempered(&param(gl(2), &[(0, 1, 1), (0, -1, 1)])));
        assert!(is_tempered(&param(sp(4), &[(0, 0, 4)])));
    }

    #[test]
    fn arthur_type_examples() {
        let psi = is_arthur_type(&param(gl(2), &[(0, 1, 1), (0, -1, 1)])).unwrap();
        assert_eq!(psi.triples(), &[ArthurTriple::new(0, 1, 2)]);
        let psi = is_arthur_type(&param(gl(3), &[(0, 0, 3)])).unwrap();
        assert_eq!(psi.triples(), &[ArthurTriple::new(0, 3, 1)]);
        assert!(is_arthur_type(&param(gl(2), &[(0, 2, 1), (0, 0, 1)])).is_none());
    }

    #[test]
    fn arthur_type_respects_classical_types() {
        // Sym^1 of the Arthur SL_2 is symplectic: fine in Sp_2, impossible in SO_2.
        let sp2 = param(sp(2), &[(0, 1, 1), (0, -1, 1)]);
        assert!(is_arthur_type(&sp2).is_some());
        let so2 = param(DualGroupSpec::so(2).unwrap(), &[(0, 1, 1), (0, -1, 1)]);
        assert!(is_arthur_type(&so2).is_none());
    }

    #[test]
    fn discreteness() {
        assert!(is_discrete(&param(sp(4), &[(0, 0, 4)])));
        assert!(!is_discrete(&param(sp(4), &[(0, 0, 2), (0, 0, 2)])));
        assert!(is_discrete(&param(gl(2), &[(0, 0, 2)])));
        assert!(!is_discrete(&param(gl(2), &[(0, 0, 1), (1, 0, 1)])));
        assert!(is_discrete(&param(sp(4), &[(0, 0, 2), (2, 0, 2)])));
    }

    #[test]
    fn component_groups() {
        let g = component_group(&param(gl(3), &[(0, 0, 1), (1, 1, 1), (0, 0, 1)])).unwrap();
        assert_eq!(g.two_rank, 0);
        assert_eq!(g.gl_factors, 2);
        let g = component_group(&param(sp(4), &[(0, 0, 2), (2, 0, 2)])).unwrap();
        assert_eq!(g.two_rank, 2);
        let g = component_group(&param(sp(4), &[(0, 0, 4)])).unwrap();
        assert_eq!(g.two_rank, 1);
        let so5 = DualGroupSpec::so(5).unwrap();
        let g = component_group(&param(so5, &[(0, 0, 1), (0, 0, 3), (0, 0, 1)])).unwrap();
        assert_eq!((g.orthogonal_factors, g.two_rank), (2, 1));
    }

    #[test]
    fn classical_invariants_are_enforced() {
        let e = LanglandsParam::new(sp(2), 4, vec![Summand::new(0, h(1), 1), Summand::new(0, h(1), 1)]);
        assert!(matches!(e, Err(Error::InvalidParameter { invariant: "duality closure", .. })));
        let e = LanglandsParam::new(sp(2), 4, vec![Summand::new(0, h(0), 1), Summand::new(2, h(0), 1)]);
        assert!(matches!(e, Err(Error::InvalidParameter { invariant: "self-dual type", .. })));
        let so2 = DualGroupSpec::so(2).unwrap();
        let e = LanglandsParam::new(so2, 4, vec![Summand::new(0, h(0), 1), Summand::new(2, h(0), 1)]);
        assert!(matches!(e, Err(Error::InvalidParameter { invariant: "determinant", .. })));
        let e = LanglandsParam::new(gl(2), 4, vec![Summand::new(0, h(0), 1)]);
        assert!(matches!(e, Err(Error::InvalidParameter { invariant: "size", .. })));
    }

    #[test]
    fn induction() {
        let a = param(gl(1), &[(0, 0, 1)]);
        let b = param(gl(1), &[(1, 0, 1)]);
        assert_eq!(induce(&[a, b], gl(2)).unwrap(), param(gl(2), &[(0, 0, 1), (1, 0, 1)]));
        let c = param(gl(1), &[(0, 1, 1)]);
        assert_eq!(induce(&[c.clone()], sp(2)).unwrap(), param(sp(2), &[(0, 1, 1), (0, -1, 1)]));
        assert!(induce(&[c], sp(4)).is_err());
    }

    #[test]
    fn canonical_labels_pair_duals() {
        let nu4 = param(sp(4), &[(0, 0, 4)]);
        let labels = infinitesimal_of(&nu4).canonical_labels();
        assert_eq!(labels.iter().map(|l| l.e.twice()).collect::<Vec<_>>(), vec![3, 1, -1, -3]);
        let so5 = param(DualGroupSpec::so(5).unwrap(), &[(1, 0, 1), (3, 0, 1), (0, 0, 3)]);
        let labels = infinitesimal_of(&so5).canonical_labels();
        for i in 0..5 {
            assert_eq!(labels[4 - i], labels[i].dual(4));
        }
        assert_eq!(labels[2], Label::new(0, h(0)));
    }

    #[test]
    fn multisegments_of_regular_chain() {
        for n in 1..=6usize {
            let lam = InfinitesimalParam::new(
                gl(n),
                1,
                (0..n).map(|i| (Label::new(0, h(n as i64 - 1 - 2 * i as i64)), 1)).collect(),
            )
            .unwrap();
            assert_eq!(params_with_infinitesimal(&lam).len(), 1 << (n - 1));
        }
    }

    #[test]
    fn multisegments_reproduce_their_grading() {
        let lam = InfinitesimalParam::new(gl(5), 1, grading(&[(0, 2, 2), (0, 0, 2), (0, -2, 1)])).unwrap();
        let all = params_with_infinitesimal(&lam);
        assert!(!all.is_empty());
        for p in &all {
            assert_eq!(&infinitesimal_of(p), &lam);
        }
        assert_eq!(all.len(), brute_force_multisegments(&[1, 2, 2]));
    }

    /// Counts multisets of segments `[i, j]` on a chain with the given
    /// dimension vector by trying every multiplicity assignment.
    fn brute_force_multisegments(dims: &[usize]) -> usize {
        let n = dims.len();
        let segs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let bound = dims.iter().copied().max().unwrap_or(0) + 1;
        let mut count = 0;
        let mut mult = vec![0usize; segs.len()];
        'outer: loop {
            let mut v = vec![0usize; n];
            for (&(i, j), &k) in segs.iter().zip(&mult) {
                for t in &mut v[i..=j] {
                    *t += k;
                }
            }
            count += usize::from(v == dims);
            for k in mult.iter_mut() {
                *k += 1;
                if *k < bound {
                    continue 'outer;
                }
                *k = 0;
            }
            return count;
        }
    }

    #[test]
    fn multisegment_counts_match_brute_force() {
        for dims in [vec![2, 1], vec![1, 1, 1], vec![2, 2], vec![1, 2, 1], vec![2, 1, 2], vec![1, 2, 2, 1]] {
            let n: usize = dims.iter().sum();
            let g = dims
                .iter()
                .enumerate()
                .map(|(i, &k)| (Label::new(0, HalfInteger::from_int(i as i64)), k))
                .collect();
            let lam = InfinitesimalParam::new(gl(n), 1, g).unwrap();
            assert_eq!(params_with_infinitesimal(&lam).len(), brute_force_multisegments(&dims), "{dims:?}");
        }
    }
}
