//! `U(sl(3))` in PBW normal form for the order `E1 < E2 < F1 < F2 < E < F < h1 < h2`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::check::{CheckResult, CheckStats};
use crate::ensure;
use crate::lie::{bracket_gen, weight_of, GElement, GGenerator, Weight};
use crate::linalg::{Echelon, SparseVector};
use crate::rational::{int, ratio, Rational};

/// Exponents over the eight PBW letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PBWMonomial {
    pub exps: [u8; 8],
}

impl PBWMonomial {
    pub const ONE: PBWMonomial = PBWMonomial { exps: [0; 8] };

    pub fn new(exps: [u8; 8]) -> Self {
        PBWMonomial { exps }
    }

    pub fn gen(g: GGenerator) -> Self {
        let mut m = Self::ONE;
        m.exps[g.index()] = 1;
        m
    }

    pub fn pow(g: GGenerator, n: u8) -> Self {
        let mut m = Self::ONE;
        m.exps[g.index()] = n;
        m
    }

    /// `E1^a E2^b F1^c F2^d`.
    pub fn p_part(a: u8, b: u8, c: u8, d: u8) -> Self {
        PBWMonomial::new([a, b, c, d, 0, 0, 0, 0])
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, g: GGenerator) -> u8 {
        self.exps[g.index()]
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; 8]
    }

    /// The letters in normal order, with repetition.
    pub fn letters(&self) -> Vec<GGenerator> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                out.push(GGenerator::from_index(i));
            }
        }
        out
    }

    /// Product of two monomials whose letters are already in order (`self` before `other`).
    pub fn concat(&self, other: &PBWMonomial) -> PBWMonomial {
        PBWMonomial::new(core::array::from_fn(|i| self.exps[i] + other.exps[i]))
    }

    pub fn weight(&self) -> Weight {
        let mut w = Weight::zero();
        for (i, &e) in self.exps.iter().enumerate() {
            let g = weight_of(GGenerator::from_index(i));
            w = w.add(&Weight::new(&g.q1 * int(e as i64), &g.q2 * int(e as i64)));
        }
        w
    }

    /// Split into the `p`-part (first four letters) and the `k`-part.
    pub fn split_pk(&self) -> (PBWMonomial, PBWMonomial) {
        let mut p = *self;
        let mut k = *self;
        for i in 0..4 {
            k.exps[i] = 0;
        }
        for i in 4..8 {
            p.exps[i] = 0;
        }
        (p, k)
    }

    pub fn is_in_k(&self) -> bool {
        self.exps[..4].iter().all(|&e| e == 0)
    }

    /// All monomials of total degree `≤ max_deg`, sorted by degree then exponents.
    pub fn all_up_to(max_deg: u32) -> Vec<PBWMonomial> {
        Self::all_in(&GGenerator::ALL, max_deg)
    }

    /// Monomials in the given letters of degree `≤ max_deg`.
    pub fn all_in(letters: &[GGenerator], max_deg: u32) -> Vec<PBWMonomial> {
        let mut out = alloc::vec![PBWMonomial::ONE];
        for &g in letters {
            let mut next = Vec::new();
            for m in &out {
                let mut e = 0u8;
                while m.degree() + e as u32 <= max_deg {
                    let mut mm = *m;
                    mm.exps[g.index()] = e;
                    next.push(mm);
                    e += 1;
                }
            }
            out = next;
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
        out
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(GGenerator::from_index(i).name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse element of `U(g)`, always in normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UEnvElement {
    coeffs: BTreeMap<PBWMonomial, Rational>,
}

impl UEnvElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::monomial(PBWMonomial::ONE, c)
    }

    pub fn monomial(m: PBWMonomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    pub fn gen(g: GGenerator) -> Self {
        Self::monomial(PBWMonomial::gen(g), Rational::one())
    }

    pub fn from_g(x: &GElement) -> Self {
        let mut e = Self::zero();
        for (g, c) in x.terms() {
            e.add_term(PBWMonomial::gen(g), c);
        }
        e
    }

    /// Product of the letters in the given order, straightened.
    pub fn word(letters: &[GGenerator]) -> Self {
        let mut e = Self::one();
        for &g in letters {
            e = e.mul_gen(g);
        }
        e
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut e = Self::one();
        for _ in 0..n {
            e = e.mul(self);
        }
        e
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn coeff(&self, m: &PBWMonomial) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|m| m.degree()).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (m, c) in o.terms() {
            self.add_term(*m, c);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, f: &Rational) {
        if f.is_zero() {
            return;
        }
        for (m, c) in o.terms() {
            self.add_term(*m, &(c * f));
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &int(-1));
        out
    }

    pub fn scaled(&self, f: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, f);
        out
    }

    /// `self · g`.
    pub fn mul_gen(&self, g: GGenerator) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_scaled(&mono_times_gen(m, g), c);
        }
        out
    }

    /// `self · x` for `x ∈ g`.
    pub fn mul_g(&self, x: &GElement) -> Self {
        let mut out = Self::zero();
        for (g, c) in x.terms() {
            out.add_scaled(&self.mul_gen(g), c);
        }
        out
    }

    /// `self · m` for a normal-ordered monomial `m`.
    pub fn mul_monomial(&self, m: &PBWMonomial) -> Self {
        let mut e = self.clone();
        for g in m.letters() {
            e = e.mul_gen(g);
        }
        e
    }

    pub fn mul(&self, o: &Self) -> Self {
        u_mul(self, o)
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Coordinates against a monomial index.
    pub fn to_vector(&self, index: &BTreeMap<PBWMonomial, usize>) -> Option<SparseVector> {
        let mut pairs = Vec::with_capacity(self.len());
        for (m, c) in self.terms() {
            pairs.push((*index.get(m)?, c.clone()));
        }
        Some(SparseVector::from_pairs(pairs))
    }
}

impl fmt::Display for UEnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&PBWMonomial, &Rational)> = self.terms().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        crate::rational::write_combination(
            f,
            terms.into_iter().map(|(m, c)| (c, if m.is_one() { String::new() } else { m.to_string() })),
        )
    }
}

/// `m · g` straightened: `g` is moved left past every letter of `m` that sorts after it.
pub fn mono_times_gen(m: &PBWMonomial, g: GGenerator) -> UEnvElement {
    let gi = g.index();
    let mut prefix = *m;
    for i in gi + 1..8 {
        prefix.exps[i] = 0;
    }
    let mut suffix = *m;
    for i in 0..=gi {
        suffix.exps[i] = 0;
    }
    let mut head = prefix;
    head.exps[gi] += 1;
    if suffix.is_one() {
        return UEnvElement::monomial(head, Rational::one());
    }
    let mut out = UEnvElement::monomial(head.concat(&suffix), Rational::one());
    // m g = prefix g y1..yr + Σ_t prefix y1..y_{t-1} [y_t, g] y_{t+1}..y_r
    let ys = suffix.letters();
    let mut left = prefix;
    for (t, &y) in ys.iter().enumerate() {
        let br = bracket_gen(y, g);
        if !br.is_zero() {
            let mut term = UEnvElement::monomial(left, Rational::one()).mul_g(&br);
            for &z in &ys[t + 1..] {
                term = term.mul_gen(z);
            }
            out.add_assign(&term);
        }
        left.exps[y.index()] += 1;
    }
    out
}

pub fn u_mul(a: &UEnvElement, b: &UEnvElement) -> UEnvElement {
    let mut out = UEnvElement::zero();
    for (m, c) in b.terms() {
        out.add_scaled(&a.mul_monomial(m), c);
    }
    out
}

/// `(ad F)^n (u)`.
pub fn ad_power_f(n: u32, u: &UEnvElement) -> UEnvElement {
    let f = UEnvElement::gen(GGenerator::F);
    let mut x = u.clone();
    for _ in 0..n {
        if x.is_zero() {
            break;
        }
        x = f.commutator(&x);
    }
    x
}

/// `(ad x)(u)` for `x ∈ g`.
pub fn ad(x: &GElement, u: &UEnvElement) -> UEnvElement {
    UEnvElement::from_g(x).commutator(u)
}

/// `E1^n F2^m` as an element of `U(g)`.
pub fn e1n_f2m(n: u8, m: u8) -> UEnvElement {
    UEnvElement::monomial(PBWMonomial::p_part(n, 0, 0, m), Rational::one())
}

/// `Ω_k = EF + FE + ½(h1 - h2)² + 3/2(h1 + h2)²`.
pub fn casimir_k() -> UEnvElement {
    use GGenerator::*;
    let hm = UEnvElement::gen(H1).sub(&UEnvElement::gen(H2));
    let hp = UEnvElement::gen(H1).add(&UEnvElement::gen(H2));
    UEnvElement::word(&[E, F])
        .add(&UEnvElement::word(&[F, E]))
        .add(&hm.mul(&hm).scaled(&ratio(1, 2)))
        .add(&hp.mul(&hp).scaled(&ratio(3, 2)))
}

/// Scalar of `Ω_k` on the K-type with highest weight `q`.
pub fn casimir_k_scalar(q: &Weight) -> Rational {
    // on a highest weight vector EF = [E, F] = h1 - h2
    let d = &q.q1 - &q.q2;
    let s = &q.q1 + &q.q2;
    &d + &d * &d * ratio(1, 2) + &s * &s * ratio(3, 2)
}

/// The two displayed straightening formulas for `1 ≤ n ≤ max_n`.
pub fn verify_calc(max_n: u32) -> CheckResult {
    use GGenerator::*;
    let f2 = UEnvElement::gen(F2);
    let h2 = UEnvElement::from_g(&GElement::big_h2());
    for n in 1..=max_n {
        let nn = int(n as i64);
        let f2n = f2.pow(n);
        let f2n1 = f2.pow(n - 1);
        let lhs = UEnvElement::gen(E2).mul(&f2n);
        let rhs = f2n1
            .mul(&h2)
            .scaled(&nn)
            .sub(&f2n1.scaled(&(&nn * int(n as i64 - 1))))
            .add(&f2n.mul(&UEnvElement::gen(E2)));
        ensure!(lhs == rhs, "E2 F2^{n}: {lhs} != {rhs}");
        let lhs = f2n.mul(&UEnvElement::gen(E1));
        let rhs = UEnvElement::gen(E1).mul(&f2n).sub(&f2n1.mul(&UEnvElement::gen(E)).scaled(&nn));
        ensure!(lhs == rhs, "F2^{n} E1: {lhs} != {rhs}");
    }
    Ok(CheckStats::new(2 * max_n as usize))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `(ad F)^s(x) = F^s x - Σ_{i=1}^{s} C(s,i) (ad F)^{s-i}(x) F^i` for `x = E1^n F2^m`.
pub fn verify_ad_f_powers(max_n: u32) -> CheckResult {
    let f = UEnvElement::gen(GGenerator::F);
    let mut cases = 0;
    for n in 0..=max_n {
        for m in 0..=max_n {
            let x = e1n_f2m(n as u8, m as u8);
            let ads: Vec<UEnvElement> = (0..=max_n).map(|s| ad_power_f(s, &x)).collect();
            for s in 1..=max_n {
                let mut rhs = f.pow(s).mul(&x);
                for i in 1..=s {
                    let t = ads[(s - i) as usize].mul(&f.pow(i));
                    rhs.add_scaled(&t, &int(-(binomial(s as u64, i as u64) as i64)));
                }
                ensure!(ads[s as usize] == rhs, "identity fails at (n, m, s) = ({n}, {m}, {s})");
                cases += 1;
            }
        }
    }
    Ok(CheckStats::new(cases))
}

/// Products `x (E1F1 + E2F2)^t y` span `U_d(g)`: exact rank equals `C(8 + d, 8)`.
pub fn verify_pbw_basis(max_deg: u32) -> CheckResult {
    use GGenerator::*;
    let all = PBWMonomial::all_up_to(max_deg);
    let target = all.len();
    ensure!(target as u64 == binomial(8 + max_deg as u64, 8), "PBW count {target} disagrees with the binomial");
    let index: BTreeMap<PBWMonomial, usize> = all.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let q = UEnvElement::word(&[E1, F1]).add(&UEnvElement::word(&[E2, F2]));
    let q_pows: Vec<UEnvElement> = (0..=max_deg / 2).map(|t| q.pow(t)).collect();
    let ys = PBWMonomial::all_in(&[E, F, H1, H2], max_deg);
    let mut ech = Echelon::new();
    let mut products = 0usize;
    'outer: for a in 0..=max_deg {
        for n in 0..=a {
            let base = e1n_f2m(n as u8, (a - n) as u8);
            let mut x = base.clone();
            for _j in 0..=a {
                for t in 0..=(max_deg - a) / 2 {
                    let xq = x.mul(&q_pows[t as usize]);
                    for y in ys.iter().filter(|y| a + 2 * t + y.degree() <= max_deg) {
                        let v = xq.mul_monomial(y);
                        let vec = v.to_vector(&index).ok_or_else(|| {
                            crate::check::CheckFailure::new(alloc::format!("product {v} leaves the filtration level"))
                        })?;
                        products += 1;
                        let _ = ech.insert(&vec);
                        if ech.rank() == target {
                            break 'outer;
                        }
                    }
                }
                x = ad_power_f(1, &x);
            }
        }
    }
    ensure!(ech.rank() == target, "rank {} of products falls short of {target}", ech.rank());
    Ok(CheckStats::new(products).with("rank", target as u64))
}

/// Polynomial in the commuting variables `E1, E2, F1, F2` (the symmetric algebra `S(p)`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymPoly {
    coeffs: BTreeMap<[u8; 4], Rational>,
}

impl SymPoly {
    pub fn monomial(e: [u8; 4]) -> Self {
        let mut p = SymPoly::default();
        p.coeffs.insert(e, Rational::one());
        p
    }

    fn add_term(&mut self, e: [u8; 4], c: Rational) {
        let slot = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = SymPoly::default();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                out.add_term(core::array::from_fn(|i| a[i] + b[i]), x * y);
            }
        }
        out
    }

    /// Derivation action of a basis vector of `k` through `ad`.
    pub fn act(&self, x: GGenerator) -> Self {
        let mut out = SymPoly::default();
        for (e, c) in &self.coeffs {
            for i in 0..4 {
                if e[i] == 0 {
                    continue;
                }
                let mut rest = *e;
                rest[i] -= 1;
                let br = bracket_gen(x, GGenerator::P[i]);
                for (g, bc) in br.terms() {
                    let mut ee = rest;
                    ee[g.index()] += 1;
                    out.add_term(ee, c * bc * int(e[i] as i64));
                }
            }
        }
        out
    }

    pub fn to_vector(&self, index: &BTreeMap<[u8; 4], usize>) -> SparseVector {
        SparseVector::from_pairs(self.coeffs.iter().map(|(e, c)| (index[e], c.clone())))
    }
}

fn sym_monomials(n: u8) -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                out.push([a, b, c, n - a - b - c]);
            }
        }
    }
    out
}

/// `S^n(p) = ⊕_i V_{(n-i, -i)} ⊕ (E1F1 + E2F2) S^{n-2}(p)` by highest weights and ranks.
pub fn verify_sym_decomposition(n: u8) -> CheckResult {
    let basis = sym_monomials(n);
    let dim = basis.len();
    ensure!(dim as u64 == binomial(n as u64 + 3, 3), "dim S^{n}(p) = {dim}");
    let index: BTreeMap<[u8; 4], usize> = basis.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut ech = Echelon::new();
    for i in 0..=n {
        let hw = SymPoly::monomial([n - i, 0, 0, i]);
        ensure!(hw.act(GGenerator::E).is_zero(), "E does not kill E1^{} F2^{i}", n - i);
        let mut v = hw;
        let mut local = Echelon::new();
        for _ in 0..=n {
            let vec = v.to_vector(&index);
            let _ = local.insert(&vec);
            let _ = ech.insert(&vec);
            v = v.act(GGenerator::F);
        }
        ensure!(v.is_zero(), "(ad F)^{} does not kill E1^{} F2^{i}", n + 1, n - i);
        ensure!(local.rank() == n as usize + 1, "V_({}, -{i}) has dimension {}", n - i, local.rank());
    }
    let mut q = SymPoly::monomial([1, 0, 1, 0]);
    q.add_term([0, 1, 0, 1], Rational::one());
    let lower = if n >= 2 { sym_monomials(n - 2) } else { Vec::new() };
    for e in &lower {
        let _ = ech.insert(&q.mul(&SymPoly::monomial(*e)).to_vector(&index));
    }
    let expect = (n as usize + 1) * (n as usize + 1) + lower.len();
    ensure!(expect == dim, "component dimensions sum to {expect}, not {dim}");
    ensure!(ech.rank() == dim, "components span rank {} of {dim}", ech.rank());
    Ok(CheckStats::new(n as usize + 2).with("dim", dim as u64))
}

/// `Ω_k` and `h1 + h2` are central in `U(k)`.
pub fn verify_casimir() -> CheckResult {
    use GGenerator::*;
    let om = casimir_k();
    let z = UEnvElement::gen(H1).add(&UEnvElement::gen(H2));
    for g in [E, F, H1, H2] {
        let x = UEnvElement::gen(g);
        ensure!(om.commutator(&x).is_zero(), "Omega_k does not commute with {g}");
        ensure!(z.commutator(&x).is_zero(), "h1 + h2 does not commute with {g}");
    }
    Ok(CheckStats::new(8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use GGenerator::*;

    #[test]
    fn straightening_examples() {
        let lhs = UEnvElement::word(&[F2, E1]);
        let rhs = UEnvElement::word(&[E1, F2]).sub(&UEnvElement::gen(E));
        assert_eq!(lhs, rhs);
        let h = UEnvElement::word(&[H1, H2]);
        assert_eq!(h, UEnvElement::monomial(PBWMonomial::new([0, 0, 0, 0, 0, 0, 1, 1]), int(1)));
        // F2^2 E2 = E2 F2^2 - 2 F2 H2 + 2 F2
        let lhs = UEnvElement::word(&[F2, F2, E2]);
        let f2h2 = UEnvElement::gen(F2).mul_g(&GElement::big_h2());
        let rhs = UEnvElement::word(&[E2, F2, F2]).sub(&f2h2.scaled(&int(2))).add(&UEnvElement::gen(F2).scaled(&int(2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ad_examples() {
        assert_eq!(ad_power_f(1, &UEnvElement::gen(E1)), UEnvElement::gen(E2));
        assert_eq!(ad_power_f(1, &UEnvElement::gen(F2)), UEnvElement::gen(F1).scaled(&int(-1)));
        let x = UEnvElement::word(&[E1, F2]);
        let f = UEnvElement::gen(F);
        let direct = f.mul(&f).mul(&x).sub(&f.mul(&x).mul(&f).scaled(&int(2))).add(&x.mul(&f).mul(&f));
        assert_eq!(ad_power_f(2, &x), direct);
    }

    #[test]
    fn display() {
        let x = UEnvElement::word(&[F2, E1]);
        assert_eq!(x.to_string(), "E1 F2 - E");
        assert_eq!(UEnvElement::zero().to_string(), "0");
    }

    #[test]
    fn counts() {
        assert_eq!(PBWMonomial::all_up_to(2).len(), 45);
        assert_eq!(PBWMonomial::all_up_to(3).len(), 165);
    }

    #[test]
    fn suites() {
        verify_calc(6).unwrap();
        verify_ad_f_powers(3).unwrap();
        assert_eq!(verify_pbw_basis(1).unwrap().count("rank"), Some(9));
        assert_eq!(verify_pbw_basis(2).unwrap().count("rank"), Some(45));
        assert_eq!(verify_pbw_basis(4).unwrap().count("rank"), Some(495));
        for n in 2..=5 {
            verify_sym_decomposition(n).unwrap();
        }
        verify_casimir().unwrap();
    }

    #[test]
    fn casimir_scalar() {
        // highest weight vector E1^2 of V_(2,0) under the adjoint action
        let v = UEnvElement::word(&[E1, E1]);
        let om = casimir_k();
        let mut acted = UEnvElement::zero();
        for (m, c) in om.terms() {
            let mut w = v.clone();
            for g in m.letters().into_iter().rev() {
                w = ad(&GElement::gen(g), &w);
            }
            acted.add_scaled(&w, c);
        }
        assert_eq!(acted, v.scaled(&casimir_k_scalar(&Weight::ints(2, 0))));
    }
}
