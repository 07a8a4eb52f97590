//! Structure data of `g = sl(3, C)` with the Cartan decomposition `g = k ⊕ p`
//! attached to `SU(2,1)`.
//!
//! Basis: `k = span{E, F, h1, h2}` and `p = span{E1, E2, F1, F2}` where
//! `E = e12`, `F = e21`, `E_i = e_i3`, `F_i = e_3i`,
//! `h1 = (2H1 - H2)/3`, `h2 = (2H2 - H1)/3`, `H_i = e_ii - e_33`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::check::{CheckResult, CheckStats};
use crate::clifford::{CliffElement, CliffGen};
use crate::ensure;
use crate::rational::{int, ratio, Rational};

/// Basis element of `g`, declared in PBW order `E1 < E2 < F1 < F2 < E < F < h1 < h2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GGenerator {
    E1,
    E2,
    F1,
    F2,
    E,
    F,
    H1,
    H2,
}

use GGenerator::*;

impl GGenerator {
    pub const ALL: [GGenerator; 8] = [E1, E2, F1, F2, E, F, H1, H2];
    pub const K: [GGenerator; 4] = [E, F, H1, H2];
    pub const P: [GGenerator; 4] = [E1, E2, F1, F2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> GGenerator {
        Self::ALL[i]
    }

    pub fn is_compact(self) -> bool {
        matches!(self, E | F | H1 | H2)
    }

    /// `θ`: `+1` on `k`, `-1` on `p`.
    pub fn theta(self) -> i64 {
        if self.is_compact() {
            1
        } else {
            -1
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            E1 => "E1",
            E2 => "E2",
            F1 => "F1",
            F2 => "F2",
            E => "E",
            F => "F",
            H1 => "h1",
            H2 => "h2",
        }
    }

    pub fn from_name(name: &str) -> Option<GGenerator> {
        Self::ALL.iter().copied().find(|g| g.name() == name)
    }

    /// The Clifford generator carried by a noncompact basis vector.
    pub fn clifford(self) -> Option<CliffGen> {
        match self {
            E1 => Some(CliffGen::E1),
            E2 => Some(CliffGen::E2),
            F1 => Some(CliffGen::F1),
            F2 => Some(CliffGen::F2),
            _ => None,
        }
    }
}

impl fmt::Display for GGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Eigenvalues of `(h1, h2)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub q1: Rational,
    pub q2: Rational,
}

impl Weight {
    pub fn new(q1: Rational, q2: Rational) -> Self {
        Weight { q1, q2 }
    }

    pub fn ints(q1: i64, q2: i64) -> Self {
        Weight::new(int(q1), int(q2))
    }

    pub fn zero() -> Self {
        Weight::ints(0, 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(&self.q1 + &other.q1, &self.q2 + &other.q2)
    }

    /// `3q1, 3q2 ∈ Z` and `q1 - q2 ∈ Z_{≥0}`.
    pub fn is_ktype_label(&self) -> bool {
        let three = int(3);
        let d = &self.q1 - &self.q2;
        (&self.q1 * &three).is_integer() && (&self.q2 * &three).is_integer() && d.is_integer() && d >= Rational::zero()
    }

    /// Coordinates `(s1, s2, s3)` with `s1 + s2 + s3 = 0`.
    pub fn epsilon_coords(&self) -> [Rational; 3] {
        [self.q1.clone(), self.q2.clone(), -(&self.q1 + &self.q2)]
    }

    /// Inverse of [`Weight::epsilon_coords`] on the hyperplane `s1 + s2 + s3 = 0`.
    pub fn from_epsilon(s: &[Rational; 3]) -> Weight {
        debug_assert!((&s[0] + &s[1] + &s[2]).is_zero());
        Weight::new(s[0].clone(), s[1].clone())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", crate::rational::format(&self.q1), crate::rational::format(&self.q2))
    }
}

/// Sparse element of `g`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GElement {
    coeffs: BTreeMap<GGenerator, Rational>,
}

impl GElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(g: GGenerator) -> Self {
        Self::term(g, Rational::one())
    }

    pub fn term(g: GGenerator, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(g, &c);
        e
    }

    pub fn from_terms(terms: &[(GGenerator, Rational)]) -> Self {
        let mut e = Self::zero();
        for (g, c) in terms {
            e.add_term(*g, c);
        }
        e
    }

    /// `H1 = 2h1 + h2`.
    pub fn big_h1() -> Self {
        Self::from_terms(&[(H1, int(2)), (H2, int(1))])
    }

    /// `H2 = h1 + 2h2`.
    pub fn big_h2() -> Self {
        Self::from_terms(&[(H1, int(1)), (H2, int(2))])
    }

    pub fn add_term(&mut self, g: GGenerator, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(g).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&g);
        }
    }

    pub fn coeff(&self, g: GGenerator) -> Rational {
        self.coeffs.get(&g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GGenerator, &Rational)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    pub fn add(&self, other: &GElement) -> GElement {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        out
    }

    pub fn scaled(&self, f: &Rational) -> GElement {
        let mut out = GElement::zero();
        for (g, c) in self.terms() {
            out.add_term(g, &(c * f));
        }
        out
    }

    pub fn in_k(&self) -> bool {
        self.terms().all(|(g, _)| g.is_compact())
    }

    pub fn in_p(&self) -> bool {
        self.terms().all(|(g, _)| !g.is_compact())
    }

    pub fn theta(&self) -> GElement {
        let mut out = GElement::zero();
        for (g, c) in self.terms() {
            out.add_term(g, &(c * int(g.theta())));
        }
        out
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::rational::write_combination(f, self.terms().map(|(g, c)| (c, String::from(g.name()))))
    }
}

/// Eigenvalue pair of `(ad h1, ad h2)` on a basis vector.
pub fn weight_of(g: GGenerator) -> Weight {
    match g {
        E1 => Weight::ints(1, 0),
        E2 => Weight::ints(0, 1),
        F1 => Weight::ints(-1, 0),
        F2 => Weight::ints(0, -1),
        E => Weight::ints(1, -1),
        F => Weight::ints(-1, 1),
        H1 | H2 => Weight::zero(),
    }
}

/// Bracket of two basis vectors from the structure-constant table.
pub fn bracket_gen(x: GGenerator, y: GGenerator) -> GElement {
    if x == y {
        return GElement::zero();
    }
    // Cartan elements act by the weight.
    if matches!(x, H1 | H2) {
        let w = weight_of(y);
        let c = if x == H1 { w.q1 } else { w.q2 };
        return GElement::term(y, c);
    }
    if matches!(y, H1 | H2) {
        return bracket_gen(y, x).scaled(&int(-1));
    }
    let table: Option<GElement> = match (x, y) {
        (E1, F1) => Some(GElement::big_h1()),
        (E2, F2) => Some(GElement::big_h2()),
        (E1, F2) => Some(GElement::gen(E)),
        (E2, F1) => Some(GElement::gen(F)),
        (E1, E2) | (F1, F2) => Some(GElement::zero()),
        (E, F) => Some(GElement::from_terms(&[(H1, int(1)), (H2, int(-1))])),
        (E, E1) | (E, F2) | (F, E2) | (F, F1) => Some(GElement::zero()),
        (E, E2) => Some(GElement::gen(E1)),
        (E, F1) => Some(GElement::term(F2, int(-1))),
        (F, E1) => Some(GElement::gen(E2)),
        (F, F2) => Some(GElement::term(F1, int(-1))),
        _ => None,
    };
    match table {
        Some(v) => v,
        None => bracket_gen(y, x).scaled(&int(-1)),
    }
}

/// Lie bracket, extended bilinearly.
pub fn bracket(x: &GElement, y: &GElement) -> GElement {
    let mut out = GElement::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let f = ca * cb;
            for (g, c) in bracket_gen(a, b).terms() {
                out.add_term(g, &(c * &f));
            }
        }
    }
    out
}

/// 3×3 rational matrix.
pub type Matrix3 = [[Rational; 3]; 3];

pub fn matrix_zero() -> Matrix3 {
    core::array::from_fn(|_| core::array::from_fn(|_| Rational::zero()))
}

pub fn matrix_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = matrix_zero();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

pub fn matrix_commutator(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let ab = matrix_mul(a, b);
    let ba = matrix_mul(b, a);
    core::array::from_fn(|i| core::array::from_fn(|j| &ab[i][j] - &ba[i][j]))
}

pub fn trace(a: &Matrix3) -> Rational {
    &a[0][0] + &a[1][1] + &a[2][2]
}

fn generator_matrix(g: GGenerator) -> Matrix3 {
    let mut m = matrix_zero();
    let mut set = |i: usize, j: usize, v: Rational| m[i][j] = v;
    match g {
        E1 => set(0, 2, int(1)),
        E2 => set(1, 2, int(1)),
        F1 => set(2, 0, int(1)),
        F2 => set(2, 1, int(1)),
        E => set(0, 1, int(1)),
        F => set(1, 0, int(1)),
        H1 => {
            set(0, 0, ratio(2, 3));
            set(1, 1, ratio(-1, 3));
            set(2, 2, ratio(-1, 3));
        }
        H2 => {
            set(0, 0, ratio(-1, 3));
            set(1, 1, ratio(2, 3));
            set(2, 2, ratio(-1, 3));
        }
    }
    m
}

/// Realization of `x` as a traceless 3×3 matrix.
pub fn matrix_realization(x: &GElement) -> Matrix3 {
    let mut out = matrix_zero();
    for (g, c) in x.terms() {
        let m = generator_matrix(g);
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] += &m[i][j] * c;
            }
        }
    }
    out
}

/// Inverse of [`matrix_realization`] on traceless matrices.
pub fn from_matrix(m: &Matrix3) -> Option<GElement> {
    if !trace(m).is_zero() {
        return None;
    }
    let mut x = GElement::zero();
    x.add_term(E, &m[0][1]);
    x.add_term(F, &m[1][0]);
    x.add_term(E1, &m[0][2]);
    x.add_term(E2, &m[1][2]);
    x.add_term(F1, &m[2][0]);
    x.add_term(F2, &m[2][1]);
    // diag(a, b, c) = (a - c) h1 + (b - c) h2 when a + b + c = 0
    x.add_term(H1, &(&m[0][0] - &m[2][2]));
    x.add_term(H2, &(&m[1][1] - &m[2][2]));
    Some(x)
}

/// The trace form `B(x, y) = tr(xy)`.
pub fn trace_form(x: &GElement, y: &GElement) -> Rational {
    trace(&matrix_mul(&matrix_realization(x), &matrix_realization(y)))
}

/// Declared dual pairs `(b_i, d_i)` with `B(b_i, d_j) = δ_ij`.
pub struct CartanData {
    pub k_dual_pairs: Vec<(GElement, GElement)>,
    pub p_dual_pairs: Vec<(GElement, GElement)>,
}

impl CartanData {
    pub fn su21() -> Self {
        let hm = GElement::from_terms(&[(H1, int(1)), (H2, int(-1))]);
        let hp = GElement::from_terms(&[(H1, int(1)), (H2, int(1))]);
        CartanData {
            k_dual_pairs: alloc::vec![
                (GElement::gen(E), GElement::gen(F)),
                (GElement::gen(F), GElement::gen(E)),
                (hm.clone(), hm.scaled(&ratio(1, 2))),
                (hp.clone(), hp.scaled(&ratio(3, 2))),
            ],
            p_dual_pairs: alloc::vec![
                (GElement::gen(E1), GElement::gen(F1)),
                (GElement::gen(E2), GElement::gen(F2)),
                (GElement::gen(F1), GElement::gen(E1)),
                (GElement::gen(F2), GElement::gen(E2)),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieError {
    /// `α` and the diagonal embedding are only defined on `k`.
    NotCompact(GElement),
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::NotCompact(x) => write!(f, "element has a p-component: {x}"),
        }
    }
}

/// `α` on a basis vector of `k`.
pub fn alpha_gen(g: GGenerator) -> Option<CliffElement> {
    use CliffGen as C;
    let half = ratio(-1, 2);
    let v = match g {
        H1 => CliffElement::scalar(half.clone()).add(&CliffElement::word(&[C::E1, C::F1]).scaled(&half)),
        H2 => CliffElement::scalar(half.clone()).add(&CliffElement::word(&[C::E2, C::F2]).scaled(&half)),
        E => CliffElement::word(&[C::E1, C::F2]).scaled(&half),
        F => CliffElement::word(&[C::E2, C::F1]).scaled(&half),
        _ => return None,
    };
    Some(v)
}

/// The Lie algebra map `α: k → C(p)`.
pub fn alpha(x: &GElement) -> Result<CliffElement, LieError> {
    if !x.in_k() {
        return Err(LieError::NotCompact(x.clone()));
    }
    let mut out = CliffElement::zero();
    for (g, c) in x.terms() {
        out = out.add(&alpha_gen(g).expect("compact generator").scaled(c));
    }
    Ok(out)
}

/// A root as integer `ε`-coordinates.
pub type Root = [i64; 3];

/// Roots, chambers and half-sums for `su(2,1)`.
pub struct RootDatum {
    pub roots: Vec<Root>,
    pub compact: Vec<Root>,
    pub noncompact: Vec<Root>,
    /// Positive noncompact roots for the chambers `D0, D1, D2`.
    pub noncompact_positive: [Vec<Root>; 3],
}

fn eps(i: usize, j: usize) -> Root {
    let mut r = [0; 3];
    r[i] += 1;
    r[j] -= 1;
    r
}

impl RootDatum {
    pub fn su21() -> Self {
        let mut roots = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    roots.push(eps(i, j));
                }
            }
        }
        RootDatum {
            roots,
            compact: alloc::vec![eps(0, 1), eps(1, 0)],
            noncompact: alloc::vec![eps(0, 2), eps(1, 2), eps(2, 0), eps(2, 1)],
            noncompact_positive: [
                alloc::vec![eps(2, 0), eps(2, 1)],
                alloc::vec![eps(0, 2), eps(2, 1)],
                alloc::vec![eps(0, 2), eps(1, 2)],
            ],
        }
    }

    fn half_sum(roots: &[Root]) -> [Rational; 3] {
        core::array::from_fn(|i| ratio(roots.iter().map(|r| r[i]).sum::<i64>(), 2))
    }

    /// Half-sum of the positive compact roots `{ε1 - ε2}`.
    pub fn rho_k(&self) -> [Rational; 3] {
        Self::half_sum(&[eps(0, 1)])
    }

    pub fn rho_p(&self, chamber: usize) -> [Rational; 3] {
        Self::half_sum(&self.noncompact_positive[chamber])
    }

    /// Strict membership in the chamber `D_j` (coordinates permuted by chamber).
    pub fn in_chamber(&self, chamber: usize, s: &[Rational; 3]) -> bool {
        match chamber {
            0 => s[2] > s[0] && s[0] > s[1],
            1 => s[0] > s[2] && s[2] > s[1],
            2 => s[0] > s[1] && s[1] > s[2],
            _ => false,
        }
    }

    /// `p + ρ_K - ρ_P^{D_j}`.
    pub fn shifted(&self, p: &Weight, chamber: usize) -> [Rational; 3] {
        let s = p.epsilon_coords();
        let rk = self.rho_k();
        let rp = self.rho_p(chamber);
        core::array::from_fn(|i| &s[i] + &rk[i] - &rp[i])
    }

    /// The chamber whose discrete series has minimal K-type `p`, if any.
    pub fn discrete_series_chamber(&self, p: &Weight) -> Option<usize> {
        (0..3).find(|&j| self.in_chamber(j, &self.shifted(p, j)))
    }

    /// Weyl group `S3` acting by coordinate permutations.
    pub fn weyl_group() -> [[usize; 3]; 6] {
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
    }
}

/// `true` iff `p` is a K-type label whose representation is a nonholomorphic discrete series.
pub fn is_nonholomorphic_parameter(p: &Weight) -> bool {
    p.is_ktype_label() && RootDatum::su21().discrete_series_chamber(p) == Some(1)
}

/// Brackets against the matrix oracle, Jacobi, θ, and the invariance and duality of `B`.
pub fn verify_structure() -> CheckResult {
    let mut cases = 0;
    for &x in &GGenerator::ALL {
        for &y in &GGenerator::ALL {
            let lhs = bracket_gen(x, y);
            let rhs = from_matrix(&matrix_commutator(
                &matrix_realization(&GElement::gen(x)),
                &matrix_realization(&GElement::gen(y)),
            ))
            .expect("commutators are traceless");
            ensure!(lhs == rhs, "[{x}, {y}] = {lhs} but matrix oracle gives {rhs}");
            let lhs = bracket_gen(x, y).theta();
            let rhs = bracket(&GElement::gen(x).theta(), &GElement::gen(y).theta());
            ensure!(lhs == rhs, "theta is not an automorphism on ({x}, {y})");
            cases += 2;
        }
    }
    for &x in &GGenerator::ALL {
        for &y in &GGenerator::ALL {
            for &z in &GGenerator::ALL {
                let (gx, gy, gz) = (GElement::gen(x), GElement::gen(y), GElement::gen(z));
                let j = bracket(&gx, &bracket(&gy, &gz))
                    .add(&bracket(&gy, &bracket(&gz, &gx)))
                    .add(&bracket(&gz, &bracket(&gx, &gy)));
                ensure!(j.is_zero(), "Jacobi fails on ({x}, {y}, {z}): {j}");
                let inv = trace_form(&bracket(&gx, &gy), &gz) - trace_form(&gx, &bracket(&gy, &gz));
                ensure!(inv.is_zero(), "trace form not invariant on ({x}, {y}, {z})");
                cases += 2;
            }
            ensure!(
                trace_form(&GElement::gen(x), &GElement::gen(y)) == trace_form(&GElement::gen(y), &GElement::gen(x)),
                "trace form not symmetric on ({x}, {y})"
            );
        }
    }
    let cd = CartanData::su21();
    for pairs in [&cd.k_dual_pairs, &cd.p_dual_pairs] {
        for (i, (b, _)) in pairs.iter().enumerate() {
            for (j, (_, d)) in pairs.iter().enumerate() {
                let expect = if i == j { Rational::one() } else { Rational::zero() };
                ensure!(trace_form(b, d) == expect, "B(b_{i}, d_{j}) != delta for ({b}; {d})");
                cases += 1;
            }
        }
    }
    Ok(CheckStats::new(cases).with("bracket_pairs", 64).with("jacobi_triples", 512))
}

/// `α([x, y]) = [α(x), α(y)]` on all unordered pairs of the k-basis.
pub fn verify_alpha_homomorphism() -> CheckResult {
    let mut pairs = 0;
    for (i, &x) in GGenerator::K.iter().enumerate() {
        for &y in &GGenerator::K[i + 1..] {
            let lhs = alpha(&bracket_gen(x, y)).expect("k is closed");
            let ax = alpha_gen(x).unwrap();
            let ay = alpha_gen(y).unwrap();
            let rhs = ax.mul(&ay).sub(&ay.mul(&ax));
            ensure!(lhs == rhs, "alpha([{x}, {y}]) = {lhs} but [alpha x, alpha y] = {rhs}");
            pairs += 1;
        }
    }
    // α reproduces ad on p inside C(p): [α(x), v] = [x, v].
    for &x in &GGenerator::K {
        for &v in &GGenerator::P {
            let ax = alpha_gen(x).unwrap();
            let cv = CliffElement::word(&[v.clifford().unwrap()]);
            let lhs = ax.mul(&cv).sub(&cv.mul(&ax));
            let rhs = CliffElement::from_p(&bracket_gen(x, v));
            ensure!(lhs == rhs, "[alpha({x}), {v}] = {lhs}, expected {rhs}");
        }
    }
    Ok(CheckStats::new(pairs).with("k_pairs", pairs as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_gen(F, E1), GElement::gen(E2));
        assert!(bracket_gen(H1, H2).is_zero());
        assert_eq!(bracket_gen(E1, F1), GElement::big_h1());
        // [E2, F1] = F, not the literal misprint [E1, F1] = F
        assert_eq!(bracket_gen(E2, F1), GElement::gen(F));
    }

    #[test]
    fn matrix_examples() {
        let m = matrix_realization(&GElement::gen(E1));
        assert_eq!(m[0][2], int(1));
        let h1 = matrix_realization(&GElement::gen(H1));
        assert_eq!((h1[0][0].clone(), h1[1][1].clone(), h1[2][2].clone()), (ratio(2, 3), ratio(-1, 3), ratio(-1, 3)));
        assert_eq!(matrix_realization(&GElement::zero()), matrix_zero());
    }

    #[test]
    fn weights() {
        assert_eq!(weight_of(E1), Weight::ints(1, 0));
        assert_eq!(weight_of(F2), Weight::ints(0, -1));
        assert_eq!(weight_of(H1), Weight::zero());
        for g in GGenerator::ALL {
            let w = weight_of(g);
            assert_eq!(bracket_gen(H1, g), GElement::term(g, w.q1.clone()));
            assert_eq!(bracket_gen(H2, g), GElement::term(g, w.q2.clone()));
        }
    }

    #[test]
    fn alpha_examples() {
        use CliffGen as C;
        let a = alpha(&GElement::big_h1()).unwrap();
        let expect = CliffElement::word(&[C::E1, C::F1])
            .scaled(&int(-1))
            .add(&CliffElement::word(&[C::E2, C::F2]).scaled(&ratio(-1, 2)))
            .add(&CliffElement::scalar(ratio(-3, 2)));
        assert_eq!(a, expect);
        assert!(alpha(&GElement::gen(E1)).is_err());
    }

    #[test]
    fn chamber_predicate() {
        assert!(is_nonholomorphic_parameter(&Weight::ints(1, -1)));
        assert!(!is_nonholomorphic_parameter(&Weight::ints(2, 1)));
        assert!(!is_nonholomorphic_parameter(&Weight::ints(0, 0)));
        assert!(is_nonholomorphic_parameter(&Weight::new(ratio(4, 3), ratio(-5, 3))));
        // rho_K coincides with rho_P for D1
        let rd = RootDatum::su21();
        assert_eq!(rd.rho_k(), rd.rho_p(1));
    }

    #[test]
    fn structure_suite() {
        verify_structure().unwrap();
        verify_alpha_homomorphism().unwrap();
    }
}
