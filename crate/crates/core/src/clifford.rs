//! The Clifford algebra `C(p)` for the trace form, its spin module `S`,
//! and the projections onto the `K̃`-isotypic pieces of `S`.
//!
//! Convention: `vw + wv = -2B(v, w)`, so `E_i F_j + F_j E_i = -2δ_ij`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::check::{CheckResult, CheckStats};
use crate::ensure;
use crate::lie::{self, GElement, GGenerator};
use crate::linalg::{kernel_basis, rank, solve_linear, SparseMatrix, SparseVector};
use crate::rational::{int, ratio, Rational};

/// Generator of `C(p)`, ordered `E1 < E2 < F1 < F2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CliffGen {
    E1,
    E2,
    F1,
    F2,
}

impl CliffGen {
    pub const ALL: [CliffGen; 4] = [CliffGen::E1, CliffGen::E2, CliffGen::F1, CliffGen::F2];

    pub fn bit(self) -> u8 {
        1 << (self as u8)
    }

    pub fn name(self) -> &'static str {
        match self {
            CliffGen::E1 => "E1",
            CliffGen::E2 => "E2",
            CliffGen::F1 => "F1",
            CliffGen::F2 => "F2",
        }
    }

    pub fn from_name(s: &str) -> Option<CliffGen> {
        Self::ALL.iter().copied().find(|g| g.name() == s)
    }

    pub fn to_g(self) -> GGenerator {
        match self {
            CliffGen::E1 => GGenerator::E1,
            CliffGen::E2 => GGenerator::E2,
            CliffGen::F1 => GGenerator::F1,
            CliffGen::F2 => GGenerator::F2,
        }
    }

    /// `B(a, b)` on generators.
    pub fn pairing(a: CliffGen, b: CliffGen) -> i64 {
        use CliffGen::*;
        match (a, b) {
            (E1, F1) | (F1, E1) | (E2, F2) | (F2, E2) => 1,
            _ => 0,
        }
    }
}

/// Ordered monomial of `C(p)`: a subset of `{E1, E2, F1, F2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliffMonomial {
    pub mask: u8,
}

impl CliffMonomial {
    pub const ONE: CliffMonomial = CliffMonomial { mask: 0 };

    pub fn new(mask: u8) -> Self {
        debug_assert!(mask < 16);
        CliffMonomial { mask }
    }

    pub fn all() -> impl Iterator<Item = CliffMonomial> {
        (0u8..16).map(CliffMonomial::new)
    }

    pub fn generators(self) -> Vec<CliffGen> {
        CliffGen::ALL.iter().copied().filter(|g| self.mask & g.bit() != 0).collect()
    }

    pub fn degree(self) -> u32 {
        self.mask.count_ones()
    }
}

impl fmt::Display for CliffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return f.write_str("1");
        }
        let names: Vec<&str> = self.generators().iter().map(|g| g.name()).collect();
        f.write_str(&names.join(" "))
    }
}

/// `g · m` in normal form, as a list of `(monomial, coefficient)`.
fn gen_times_monomial(g: CliffGen, mask: u8) -> Vec<(u8, i64)> {
    if mask == 0 {
        return alloc::vec![(g.bit(), 1)];
    }
    let low = mask.trailing_zeros() as u8;
    let x1 = CliffGen::ALL[low as usize];
    let rest = mask & !(1 << low);
    if g < x1 {
        return alloc::vec![(mask | g.bit(), 1)];
    }
    if g == x1 {
        return Vec::new();
    }
    // g x1 = -x1 g - 2B(g, x1)
    let mut out: Vec<(u8, i64)> = gen_times_monomial(g, rest)
        .into_iter()
        .map(|(m, c)| (m | x1.bit(), -c))
        .collect();
    let b = CliffGen::pairing(g, x1);
    if b != 0 {
        out.push((rest, -2 * b));
    }
    out
}

/// Sparse element of `C(p)` in ordered normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliffElement {
    coeffs: BTreeMap<CliffMonomial, Rational>,
}

impl CliffElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::monomial(CliffMonomial::ONE, c)
    }

    pub fn monomial(m: CliffMonomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    /// Product of the given generators, in the given order.
    pub fn word(gens: &[CliffGen]) -> Self {
        let mut e = Self::one();
        for g in gens.iter().rev() {
            e = e.left_mul_gen(*g);
        }
        e
    }

    /// Image of an element of `p` under `p ↪ C(p)`.
    pub fn from_p(x: &GElement) -> Self {
        let mut out = Self::zero();
        for (g, c) in x.terms() {
            let cg = g.clifford().expect("element of p");
            out.add_term(CliffMonomial::new(cg.bit()), c);
        }
        out
    }

    pub fn add_term(&mut self, m: CliffMonomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn coeff(&self, m: CliffMonomial) -> Rational {
        self.coeffs.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (CliffMonomial, &Rational)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, &-c);
        }
        out
    }

    pub fn scaled(&self, f: &Rational) -> Self {
        let mut out = Self::zero();
        if f.is_zero() {
            return out;
        }
        for (m, c) in self.terms() {
            out.add_term(m, &(c * f));
        }
        out
    }

    pub fn left_mul_gen(&self, g: CliffGen) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            for (mm, k) in gen_times_monomial(g, m.mask) {
                out.add_term(CliffMonomial::new(mm), &(c * int(k)));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        cliff_mul(self, other)
    }

    /// Coordinates in the 16 ordered monomials.
    pub fn to_vector(&self) -> SparseVector {
        SparseVector::from_pairs(self.terms().map(|(m, c)| (m.mask as usize, c.clone())))
    }
}

impl fmt::Display for CliffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::rational::write_combination(
            f,
            self.terms().map(|(m, c)| (c, if m.mask == 0 { String::new() } else { m.to_string() })),
        )
    }
}

pub fn cliff_mul(a: &CliffElement, b: &CliffElement) -> CliffElement {
    let mut out = CliffElement::zero();
    for (m, c) in a.terms() {
        let mut prod = b.clone();
        for g in m.generators().into_iter().rev() {
            prod = prod.left_mul_gen(g);
        }
        out = out.add(&prod.scaled(c));
    }
    out
}

/// Vector of `S` in the basis `(1, E1, E2, E1∧E2)`, indexed by the bitmask of E's.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinVector {
    pub coords: [Rational; 4],
}

impl SpinVector {
    pub fn zero() -> Self {
        SpinVector { coords: core::array::from_fn(|_| Rational::zero()) }
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.coords[i] = Rational::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scaled(&self, f: &Rational) -> Self {
        SpinVector { coords: core::array::from_fn(|i| &self.coords[i] * f) }
    }

    pub fn add(&self, o: &Self) -> Self {
        SpinVector { coords: core::array::from_fn(|i| &self.coords[i] + &o.coords[i]) }
    }
}

pub const SPIN_BASIS_NAMES: [&str; 4] = ["1", "E1", "E2", "E1^E2"];

/// Action of one generator on the spin basis vector with E-mask `b`.
fn gen_on_spin(g: CliffGen, b: usize) -> Option<(usize, i64)> {
    let (bit, raise) = match g {
        CliffGen::E1 => (1usize, true),
        CliffGen::E2 => (2, true),
        CliffGen::F1 => (1, false),
        CliffGen::F2 => (2, false),
    };
    let below = (b & (bit - 1)).count_ones();
    let sign = if below % 2 == 0 { 1 } else { -1 };
    if raise {
        if b & bit != 0 {
            None
        } else {
            Some((b | bit, sign))
        }
    } else if b & bit == 0 {
        None
    } else {
        Some((b & !bit, -2 * sign))
    }
}

pub fn spin_apply(c: &CliffElement, s: &SpinVector) -> SpinVector {
    let mut out = SpinVector::zero();
    for (m, coeff) in c.terms() {
        let gens = m.generators();
        for (b, x) in s.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut cur = Some((b, 1i64));
            for g in gens.iter().rev() {
                cur = cur.and_then(|(bb, k)| gen_on_spin(*g, bb).map(|(nb, kk)| (nb, k * kk)));
            }
            if let Some((nb, k)) = cur {
                out.coords[nb] += coeff * x * int(k);
            }
        }
    }
    out
}

/// Matrix of `c` acting on `S`, as `m[row][col]`.
pub fn spin_matrix(c: &CliffElement) -> [[Rational; 4]; 4] {
    let mut m: [[Rational; 4]; 4] = core::array::from_fn(|_| core::array::from_fn(|_| Rational::zero()));
    for j in 0..4 {
        let v = spin_apply(c, &SpinVector::basis(j));
        for i in 0..4 {
            m[i][j] = v.coords[i].clone();
        }
    }
    m
}

/// `p1, p2, p3` and `p′ = p1 + p3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionTriple {
    pub p1: CliffElement,
    pub p2: CliffElement,
    pub p3: CliffElement,
    pub p_prime: CliffElement,
}

/// `-½(E1F1 + E2F2)`: acts by 1 on `span{E1, E2}`, by 0 on `1` and by 2 on `E1∧E2`.
pub fn p2_formula() -> CliffElement {
    use CliffGen::*;
    CliffElement::word(&[E1, F1]).add(&CliffElement::word(&[E2, F2])).scaled(&ratio(-1, 2))
}

pub fn projections() -> ProjectionTriple {
    use CliffGen::*;
    let quarter = ratio(1, 4);
    let p1 = CliffElement::word(&[F1, E1, F2, E2]).scaled(&quarter);
    let p3 = CliffElement::word(&[E1, F1, E2, F2]).scaled(&quarter);
    let p2 = CliffElement::one().sub(&p1).sub(&p3);
    let p_prime = p1.add(&p3);
    ProjectionTriple { p1, p2, p3, p_prime }
}

pub fn verify_projections() -> CheckResult {
    let pr = projections();
    let ps = [&pr.p1, &pr.p2, &pr.p3];
    let supports = [[0usize].as_slice(), [1, 2].as_slice(), [3].as_slice()];
    for (i, p) in ps.iter().enumerate() {
        for (j, q) in ps.iter().enumerate() {
            let pq = p.mul(q);
            if i == j {
                ensure!(pq == **p, "p{} is not idempotent", i + 1);
            } else {
                ensure!(pq.is_zero(), "p{} p{} = {pq}", i + 1, j + 1);
            }
        }
        for b in 0..4 {
            let v = spin_apply(p, &SpinVector::basis(b));
            let expect = if supports[i].contains(&b) { SpinVector::basis(b) } else { SpinVector::zero() };
            ensure!(v == expect, "p{} on {} is wrong", i + 1, SPIN_BASIS_NAMES[b]);
        }
    }
    ensure!(pr.p1.add(&pr.p2).add(&pr.p3) == CliffElement::one(), "p1 + p2 + p3 != 1");
    // the displayed formula agrees with p2 on span{1, E1, E2}
    let f = p2_formula();
    for b in 0..3 {
        ensure!(
            spin_apply(&f, &SpinVector::basis(b)) == spin_apply(&pr.p2, &SpinVector::basis(b)),
            "-(E1F1 + E2F2)/2 differs from p2 on {}",
            SPIN_BASIS_NAMES[b]
        );
    }
    Ok(CheckStats::new(9 + 12 + 1 + 3))
}

/// Endomorphisms `T` of `S` with `T(E1) = T(E2) = 0` satisfy `T p′ = T`.
pub fn verify_e1e2_annihilator() -> CheckResult {
    use CliffGen::*;
    let pr = projections();
    let pm = spin_matrix(&pr.p_prime);
    let mut cases = 0;
    // basis: elementary matrices e_{i,j} with j ∈ {1, E1∧E2}
    for col in [0usize, 3] {
        for row in 0..4 {
            let mut t: [[Rational; 4]; 4] = core::array::from_fn(|_| core::array::from_fn(|_| Rational::zero()));
            t[row][col] = Rational::one();
            let mut tp: [[Rational; 4]; 4] = core::array::from_fn(|_| core::array::from_fn(|_| Rational::zero()));
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        tp[i][j] += &t[i][k] * &pm[k][j];
                    }
                }
            }
            ensure!(tp == t, "T = e({}, {}) violates T p' = T", SPIN_BASIS_NAMES[row], SPIN_BASIS_NAMES[col]);
            cases += 1;
        }
    }
    for w in [[E1, E2], [F1, F2]] {
        let x = CliffElement::word(&w);
        ensure!(x.mul(&pr.p_prime) == x, "{}{} p' != {}{}", w[0].name(), w[1].name(), w[0].name(), w[1].name());
        cases += 1;
    }
    Ok(CheckStats::new(cases))
}

/// `{1, E1F1 + E2F2, E1F1E2F2}`, the K-invariants of `C(p)`.
pub fn cliff_invariants_basis() -> Vec<CliffElement> {
    use CliffGen::*;
    alloc::vec![
        CliffElement::one(),
        CliffElement::word(&[E1, F1]).add(&CliffElement::word(&[E2, F2])),
        CliffElement::word(&[E1, F1, E2, F2]),
    ]
}

/// Invariance of the listed basis and dimension 3 of the full commutant of `α(k)`.
pub fn verify_cliff_invariants() -> CheckResult {
    let basis = cliff_invariants_basis();
    let alphas: Vec<CliffElement> = GGenerator::K.iter().map(|g| lie::alpha_gen(*g).unwrap()).collect();
    for b in &basis {
        for (g, a) in GGenerator::K.iter().zip(&alphas) {
            let c = a.mul(b).sub(&b.mul(a));
            ensure!(c.is_zero(), "{b} does not commute with alpha({g})");
        }
    }
    let listed = SparseMatrix::from_rows(basis.iter().map(|b| b.to_vector()).collect(), 16);
    ensure!(rank(&listed) == 3, "listed invariants are dependent");
    // commutant: kernel of x ↦ ([α(g), x])_g over the 16 monomials
    let mut rows = Vec::new();
    for a in &alphas {
        let images: Vec<SparseVector> = CliffMonomial::all()
            .map(|m| {
                let x = CliffElement::monomial(m, Rational::one());
                a.mul(&x).sub(&x.mul(a)).to_vector()
            })
            .collect();
        for r in 0..16 {
            rows.push(SparseVector::from_pairs(images.iter().enumerate().map(|(j, v)| (j, v.get(r)))));
        }
    }
    let dim = kernel_basis(&SparseMatrix::from_rows(rows, 16)).len();
    ensure!(dim == 3, "K-invariants of C(p) have dimension {dim}");
    Ok(CheckStats::new(basis.len() * 4 + 1).with("invariant_dim", dim as u64))
}

/// Associativity, the defining relations, and compatibility of the spin action.
pub fn verify_clifford_axioms() -> CheckResult {
    let mono: Vec<CliffElement> = CliffMonomial::all().map(|m| CliffElement::monomial(m, Rational::one())).collect();
    for a in &CliffGen::ALL {
        for b in &CliffGen::ALL {
            let s = CliffElement::word(&[*a, *b]).add(&CliffElement::word(&[*b, *a]));
            let expect = CliffElement::scalar(int(-2 * CliffGen::pairing(*a, *b)));
            ensure!(s == expect, "{{{}, {}}} = {s}", a.name(), b.name());
        }
    }
    let mut triples = 0u64;
    for x in &mono {
        for y in &mono {
            let xy = x.mul(y);
            for z in &mono {
                ensure!(xy.mul(z) == x.mul(&y.mul(z)), "associativity fails on ({x}, {y}, {z})");
                triples += 1;
            }
            for b in 0..4 {
                let s = SpinVector::basis(b);
                ensure!(
                    spin_apply(&xy, &s) == spin_apply(x, &spin_apply(y, &s)),
                    "spin action incompatible on ({x}, {y}, {})",
                    SPIN_BASIS_NAMES[b]
                );
            }
        }
    }
    Ok(CheckStats::new(triples as usize + 16 * 16 * 4 + 16).with("assoc_triples", triples))
}

/// Reduction of `C(p)` modulo the left ideal `C(p)F1F2 + C(p)E1E2`.
///
/// The ideal is the annihilator of `span{E1, E2} ⊂ S`, so the quotient is
/// identified with restriction to that span and has the basis [`QuotientCliffs::BASIS`].
#[derive(Debug, Clone)]
pub struct QuotientCliffs {
    table: [CliffElement; 16],
}

impl QuotientCliffs {
    pub const BASIS: [u8; 8] = [
        0b0001, // E1
        0b0010, // E2
        0b0100, // F1
        0b1000, // F2
        0b0101, // E1F1
        0b1001, // E1F2
        0b0110, // E2F1
        0b1010, // E2F2
    ];

    fn restriction(c: &CliffElement) -> SparseVector {
        let a = spin_apply(c, &SpinVector::basis(1));
        let b = spin_apply(c, &SpinVector::basis(2));
        SparseVector::from_pairs(
            a.coords.iter().cloned().enumerate().chain(b.coords.iter().cloned().enumerate().map(|(i, x)| (i + 4, x))),
        )
    }

    pub fn new() -> Self {
        let cols: Vec<SparseVector> = Self::BASIS
            .iter()
            .map(|&m| Self::restriction(&CliffElement::monomial(CliffMonomial::new(m), Rational::one())))
            .collect();
        // rows of the 8×8 system: restriction coordinates
        let rows: Vec<SparseVector> = (0..8)
            .map(|r| SparseVector::from_pairs(cols.iter().enumerate().map(|(j, v)| (j, v.get(r)))))
            .collect();
        let sys = SparseMatrix::from_rows(rows, 8);
        let table = core::array::from_fn(|m| {
            let target = Self::restriction(&CliffElement::monomial(CliffMonomial::new(m as u8), Rational::one()));
            let x = solve_linear(&sys, &target).expect("canonical cliffs span the quotient");
            let mut out = CliffElement::zero();
            for (j, c) in x.iter() {
                out.add_term(CliffMonomial::new(Self::BASIS[j]), c);
            }
            out
        });
        QuotientCliffs { table }
    }

    pub fn reduce_monomial(&self, m: CliffMonomial) -> &CliffElement {
        &self.table[m.mask as usize]
    }

    pub fn reduce(&self, c: &CliffElement) -> CliffElement {
        let mut out = CliffElement::zero();
        for (m, x) in c.terms() {
            out = out.add(&self.table[m.mask as usize].scaled(x));
        }
        out
    }

    /// `c ≡ 0` in the quotient.
    pub fn is_zero(&self, c: &CliffElement) -> bool {
        Self::restriction(c).is_zero()
    }
}

impl Default for QuotientCliffs {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CliffGen::*;

    #[test]
    fn relations() {
        let s = CliffElement::word(&[E1, F1]).add(&CliffElement::word(&[F1, E1]));
        assert_eq!(s, CliffElement::scalar(int(-2)));
        assert!(CliffElement::word(&[E1, E1]).is_zero());
        let ae = lie::alpha_gen(GGenerator::E).unwrap();
        let af = lie::alpha_gen(GGenerator::F).unwrap();
        let expect = CliffElement::word(&[E1, F1])
            .scaled(&ratio(-1, 2))
            .add(&CliffElement::word(&[E2, F2]).scaled(&ratio(1, 2)));
        assert_eq!(ae.mul(&af).sub(&af.mul(&ae)), expect);
    }

    #[test]
    fn spin_examples() {
        let e1 = SpinVector::basis(1);
        let e2 = SpinVector::basis(2);
        assert!(spin_apply(&CliffElement::word(&[E1, E2]), &e1).is_zero());
        assert!(spin_apply(&CliffElement::word(&[F1, F2]), &e2).is_zero());
        assert_eq!(spin_apply(&CliffElement::word(&[E1]), &SpinVector::basis(0)), e1);
        assert_eq!(spin_apply(&CliffElement::word(&[F2, E2]), &SpinVector::basis(0)), SpinVector::basis(0).scaled(&int(-2)));
    }

    #[test]
    fn projection_forms() {
        let pr = projections();
        assert_eq!(spin_matrix(&pr.p1)[0][0], int(1));
        assert_eq!(spin_matrix(&pr.p3)[3][3], int(1));
        let f = spin_matrix(&p2_formula());
        assert_eq!([f[0][0].clone(), f[1][1].clone(), f[2][2].clone(), f[3][3].clone()], [int(0), int(1), int(1), int(2)]);
        verify_projections().unwrap();
    }

    #[test]
    fn suites() {
        verify_e1e2_annihilator().unwrap();
        verify_cliff_invariants().unwrap();
        verify_clifford_axioms().unwrap();
    }

    #[test]
    fn quotient() {
        let q = QuotientCliffs::new();
        assert!(q.reduce(&CliffElement::word(&[E1, E2])).is_zero());
        assert!(q.reduce(&CliffElement::word(&[F1, F2])).is_zero());
        let vac = q.reduce(&CliffElement::one());
        assert_eq!(vac, q.reduce(&p2_formula()));
        assert_eq!(q.reduce(&CliffElement::word(&[E1, E2, F1])), CliffElement::word(&[E2]).scaled(&int(2)));
        assert_eq!(q.reduce(&CliffElement::word(&[E1, E2, F2])), CliffElement::word(&[E1]).scaled(&int(-2)));
        for m in QuotientCliffs::BASIS {
            let c = CliffElement::monomial(CliffMonomial::new(m), Rational::one());
            assert_eq!(q.reduce(&c), c);
        }
    }
}
