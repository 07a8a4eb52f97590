//! Reduction modulo `Z` in `A ⊗ W`, the canonical generating set of `A ⊗_B W`,
//! and the evaluation map `φ: A ⊗ W → X ⊗ S`.
//!
//! Every rewrite is a left multiple of one of the relations that hold in
//! `A ⊗_B W` (`Z` is a left `A`-submodule), applied to monomial words
//! `(u ⊗ c) ⊗ w_s` with `c` one of the eight Clifford monomials that survive
//! the left ideal `C(p)F1F2 + C(p)E1E2`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{diagonal_gen, u_q, AElement};
use crate::check::{CheckFailure, CheckResult, CheckStats};
use crate::clifford::{CliffElement, CliffMonomial, QuotientCliffs};
use crate::cohomology::{k_delta_on_w, w_dim, w_vector};
use crate::ensure;
use crate::enveloping::{ad_power_f, e1n_f2m, PBWMonomial, UEnvElement};
use crate::lie::{self, GGenerator, Weight};
use crate::linalg::{solve_linear, Echelon, SparseMatrix, SparseVector};
use crate::module::{DiscreteSeriesModule, ModuleError, XSVector};
use crate::rational::{int, Rational};

const E1: u8 = 0b0001;
const E2: u8 = 0b0010;
const F1: u8 = 0b0100;
const F2: u8 = 0b1000;

/// Clifford parts of family A: `ℓ F2` for `ℓ ∈ {1, E1, E2, -½E1E2}`.
pub const A_CLIFFS: [u8; 4] = [F2, E1 | F2, E2 | F2, E1];
/// Clifford parts of family B: `ℓ F1` for `ℓ ∈ {1, E1, E2, ½E1E2}`.
pub const B_CLIFFS: [u8; 4] = [F1, E1 | F1, E2 | F1, E2];

/// `ℓ F1 ↦ ℓ F2` on the quotient, as `(A-cliff, sign)`.
fn b_to_a(c: u8) -> (u8, i64) {
    match c {
        F1 => (F2, 1),
        x if x == E1 | F1 => (E1 | F2, 1),
        x if x == E2 | F1 => (E2 | F2, 1),
        E2 => (E1, -1),
        _ => unreachable!("not a B-cliff"),
    }
}

/// `ℓ F2 ↦ ℓ F1` on the quotient, as `(B-cliff, sign)`.
fn a_to_b(c: u8) -> (u8, i64) {
    match c {
        F2 => (F1, 1),
        x if x == E1 | F2 => (E1 | F1, 1),
        x if x == E2 | F2 => (E2 | F1, 1),
        E1 => (E2, -1),
        _ => unreachable!("not an A-cliff"),
    }
}

fn cliff_name(mask: u8) -> String {
    alloc::format!("{}", CliffMonomial::new(mask))
}

/// Element of `A ⊗ W` over the plain tensor product, keyed by `(u, c, s)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TensorWord {
    pub terms: BTreeMap<(PBWMonomial, CliffMonomial, usize), Rational>,
}

impl TensorWord {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(u: PBWMonomial, c: CliffMonomial, s: usize) -> Self {
        let mut t = Self::zero();
        t.add_term(u, c, s, &Rational::one());
        t
    }

    /// `a ⊗ w_s`.
    pub fn from_a(a: &AElement, s: usize) -> Self {
        let mut t = Self::zero();
        for (u, c, x) in a.terms() {
            t.add_term(*u, *c, s, x);
        }
        t
    }

    pub fn add_term(&mut self, u: PBWMonomial, c: CliffMonomial, s: usize, x: &Rational) {
        if x.is_zero() {
            return;
        }
        let e = self.terms.entry((u, c, s)).or_insert_with(Rational::zero);
        *e += x;
        if e.is_zero() {
            self.terms.remove(&(u, c, s));
        }
    }

    pub fn add_scaled(&mut self, o: &Self, f: &Rational) {
        for ((u, c, s), x) in &o.terms {
            self.add_term(*u, *c, *s, &(x * f));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|(u, _, _)| u.degree()).max().unwrap_or(0)
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::rational::write_combination(
            f,
            self.terms.iter().map(|((u, c, s), x)| (x, alloc::format!("{u} (x) {c} (x) w{s}"))),
        )
    }
}

/// A member of the canonical generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CanonicalGenerator {
    /// `(E1^n F2^m ⊗ c) ⊗ w_s` with `c` an A-cliff.
    A { n: u32, m: u32, cliff: u8, s: usize },
    /// `((ad F)^j (E1^n F2^m) ⊗ c) ⊗ w_top` with `c` a B-cliff.
    B { n: u32, m: u32, j: u32, cliff: u8 },
}

impl CanonicalGenerator {
    /// All canonical generators with `n ≤ k`, `m ≤ l`, for `dim W = top`.
    pub fn enumerate(k: u32, l: u32, top: usize) -> Vec<CanonicalGenerator> {
        let mut out = Vec::new();
        for n in 0..=k {
            for m in 0..=l {
                for &cliff in &A_CLIFFS {
                    for s in 1..=top {
                        out.push(CanonicalGenerator::A { n, m, cliff, s });
                    }
                }
                for j in 0..=n + m {
                    for &cliff in &B_CLIFFS {
                        out.push(CanonicalGenerator::B { n, m, j, cliff });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for CanonicalGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalGenerator::A { n, m, cliff, s } => {
                write!(f, "(E1^{n} F2^{m} (x) {}) (x) w{s}", cliff_name(*cliff))
            }
            CanonicalGenerator::B { n, m, j, cliff } => {
                write!(f, "((ad F)^{j}(E1^{n} F2^{m}) (x) {}) (x) w_top", cliff_name(*cliff))
            }
        }
    }
}

/// Linear combination of canonical generators.
pub type Combo = BTreeMap<CanonicalGenerator, Rational>;

fn combo_add(c: &mut Combo, g: CanonicalGenerator, x: &Rational) {
    if x.is_zero() {
        return;
    }
    let e = c.entry(g).or_insert_with(Rational::zero);
    *e += x;
    if e.is_zero() {
        c.remove(&g);
    }
}

pub fn format_combo(c: &Combo) -> String {
    struct Show<'a>(&'a Combo);
    impl fmt::Display for Show<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            crate::rational::write_combination(f, self.0.iter().map(|(g, x)| (x, alloc::format!("{g}"))))
        }
    }
    alloc::format!("{}", Show(c))
}

/// Outcome of [`Reducer::reduce_mod_z`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub source: TensorWord,
    pub combo: Combo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InductionError {
    DegreeBound { degree: u32, bound: u32 },
    MeasureIncrease(String),
    DivisionByZero(String),
    Module(ModuleError),
    Certificate(String),
}

impl fmt::Display for InductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InductionError::DegreeBound { degree, bound } => write!(f, "U-degree {degree} exceeds the bound {bound}"),
            InductionError::MeasureIncrease(s) => write!(f, "termination measure does not decrease: {s}"),
            InductionError::DivisionByZero(s) => write!(f, "rule applied outside its range: {s}"),
            InductionError::Module(e) => write!(f, "{e}"),
            InductionError::Certificate(s) => write!(f, "phi-soundness certificate fails: {s}"),
        }
    }
}

impl From<ModuleError> for InductionError {
    fn from(e: ModuleError) -> Self {
        InductionError::Module(e)
    }
}

/// A word `(u ⊗ c) ⊗ w_s` with `c` one of the eight surviving Clifford monomials.
type WordKey = (PBWMonomial, u8, usize);

/// Coordinates of the bidegree-`(nE, nF)` monomials against `{x_j} ∪ {ω(m')}`.
#[derive(Debug, Clone)]
struct HwDecomposition {
    /// `(α_j)` and `(β_{m'})` for each monomial.
    coords: BTreeMap<PBWMonomial, (Vec<Rational>, Vec<(PBWMonomial, Rational)>)>,
    /// `ω(m') - m'·(E1F1 + E2F2)`.
    remainder: BTreeMap<PBWMonomial, UEnvElement>,
}

fn p_monomials(ne: u32, nf: u32) -> Vec<PBWMonomial> {
    let mut out = Vec::new();
    for a in 0..=ne {
        for c in 0..=nf {
            out.push(PBWMonomial::p_part(a as u8, (ne - a) as u8, c as u8, (nf - c) as u8));
        }
    }
    out
}

/// The rewriting engine for a fixed parameter `p`.
#[derive(Debug, Clone)]
pub struct Reducer {
    pub p: Weight,
    pub top: usize,
    /// Scalar of `(E1F1 + E2F2) ⊗ 1` on `W`.
    pub lambda: Rational,
    pub max_degree: u32,
    quotient: QuotientCliffs,
    cache: BTreeMap<WordKey, Combo>,
    hw: BTreeMap<(u32, u32), HwDecomposition>,
    alphas: BTreeMap<GGenerator, CliffElement>,
    /// Number of single rewrite steps performed.
    pub steps: u64,
}

impl Reducer {
    pub fn new(p: Weight, max_degree: u32) -> Self {
        let top = w_dim(&p);
        let lambda = &p.q1 + &p.q2 * int(2) - int(1);
        let alphas = GGenerator::K.iter().map(|g| (*g, lie::alpha_gen(*g).expect("compact"))).collect();
        Reducer {
            p,
            top,
            lambda,
            max_degree,
            quotient: QuotientCliffs::new(),
            cache: BTreeMap::new(),
            hw: BTreeMap::new(),
            alphas,
            steps: 0,
        }
    }

    /// `p2 - p1 + s`, the divisor of the moves that raise `s`.
    pub fn kappa(&self, s: usize) -> Rational {
        &self.p.q2 - &self.p.q1 + int(s as i64)
    }

    fn measure(&self, key: &WordKey) -> (u32, usize, u8) {
        let class = if A_CLIFFS.contains(&key.1) { 1 } else { 0 };
        (key.0.degree(), self.top - key.2, class)
    }

    /// Pushes `f · (u ⊗ c) ⊗ w_s`, reducing `c` modulo the left ideal.
    fn push(&self, out: &mut Vec<(Rational, WordKey)>, u: &UEnvElement, c: &CliffElement, s: usize, f: &Rational) {
        let c = self.quotient.reduce(c);
        for (um, uc) in u.terms() {
            for (cm, cc) in c.terms() {
                out.push((f * uc * cc, (*um, cm.mask, s)));
            }
        }
    }

    fn hw_decomposition(&mut self, ne: u32, nf: u32) -> &HwDecomposition {
        if !self.hw.contains_key(&(ne, nf)) {
            let basis = p_monomials(ne, nf);
            let index: BTreeMap<PBWMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut gens: Vec<UEnvElement> = Vec::new();
            let base = e1n_f2m(ne as u8, nf as u8);
            for j in 0..=ne + nf {
                gens.push(ad_power_f(j, &base));
            }
            let lower = if ne > 0 && nf > 0 { p_monomials(ne - 1, nf - 1) } else { Vec::new() };
            let q = u_q();
            let mut remainder = BTreeMap::new();
            for mp in &lower {
                let m_el = UEnvElement::monomial(*mp, Rational::one());
                let omega = UEnvElement::gen(GGenerator::E1)
                    .mul(&m_el)
                    .mul_gen(GGenerator::F1)
                    .add(&UEnvElement::gen(GGenerator::E2).mul(&m_el).mul_gen(GGenerator::F2));
                remainder.insert(*mp, omega.sub(&m_el.mul(&q)));
                gens.push(omega);
            }
            // columns = generators, rows = monomials
            let mut rows = alloc::vec![SparseVector::new(); basis.len()];
            for (j, g) in gens.iter().enumerate() {
                for (m, c) in g.terms() {
                    rows[index[m]].add_to(j, c);
                }
            }
            let sys = SparseMatrix::from_rows(rows, gens.len());
            let mut coords = BTreeMap::new();
            let nx = (ne + nf + 1) as usize;
            for (i, m) in basis.iter().enumerate() {
                let mut e = SparseVector::new();
                e.add_to(i, &Rational::one());
                let x = solve_linear(&sys, &e).expect("highest weight vectors span the bidegree component");
                let alpha: Vec<Rational> = (0..nx).map(|j| x.get(j)).collect();
                let beta: Vec<(PBWMonomial, Rational)> =
                    lower.iter().enumerate().map(|(b, mp)| (*mp, x.get(nx + b))).filter(|(_, c)| !c.is_zero()).collect();
                coords.insert(*m, (alpha, beta));
            }
            self.hw.insert((ne, nf), HwDecomposition { coords, remainder });
        }
        &self.hw[&(ne, nf)]
    }

    /// One rewrite of a word: new words plus canonical generators reached directly.
    fn rewrite(&mut self, key: &WordKey) -> Result<(Vec<(Rational, WordKey)>, Combo), InductionError> {
        let (u, c, s) = *key;
        let cl = CliffElement::monomial(CliffMonomial::new(c), Rational::one());
        let mut out = Vec::new();
        let mut direct = Combo::new();
        // k-elimination: (u'x ⊗ c) ⊗ w = (u' ⊗ c) ⊗ x_Δ w - (u' ⊗ c α(x)) ⊗ w
        if let Some(x) = (4..8).rev().map(GGenerator::from_index).find(|g| u.exp(*g) > 0) {
            let mut up = u;
            up.exps[x.index()] -= 1;
            let ue = UEnvElement::monomial(up, Rational::one());
            if let Some((s2, f)) = k_delta_on_w(&self.p, x, s) {
                self.push(&mut out, &ue, &cl, s2, &f);
            }
            let ca = cl.mul(&self.alphas[&x]);
            self.push(&mut out, &ue, &ca, s, &int(-1));
            return Ok((out, direct));
        }
        let is_a = A_CLIFFS.contains(&c);
        let has = |g: GGenerator| u.exp(g) > 0;
        let minus = |g: GGenerator| {
            let mut m = u;
            m.exps[g.index()] -= 1;
            m
        };
        if s < self.top {
            let kappa = self.kappa(s);
            if kappa.is_zero() {
                return Err(InductionError::DivisionByZero(alloc::format!("p2 - p1 + {s} = 0")));
            }
            let inv = Rational::one() / &kappa;
            if !is_a {
                // (u ⊗ ℓF1) ⊗ κ w_s ≡ (u ⊗ ℓF2) ⊗ w_{s+1}
                let (a, sign) = b_to_a(c);
                out.push((&inv * int(sign), (u, a, s + 1)));
            } else if has(GGenerator::F1) {
                // (u''F1 ⊗ c) ⊗ κ w_s ≡ (u''F2 ⊗ c) ⊗ w_{s+1}
                let mut m = minus(GGenerator::F1);
                m.exps[GGenerator::F2.index()] += 1;
                out.push((inv, (m, c, s + 1)));
            } else if has(GGenerator::E2) {
                // (u''E2 ⊗ c) ⊗ κ w_s ≡ -(u''E1 ⊗ c) ⊗ w_{s+1}
                let upp = UEnvElement::monomial(minus(GGenerator::E2), Rational::one());
                let lower = UEnvElement::monomial(u, Rational::one()).sub(&upp.mul_gen(GGenerator::E2));
                self.push(&mut out, &upp.mul_gen(GGenerator::E1), &cl, s + 1, &-inv);
                self.push(&mut out, &lower, &cl, s, &Rational::one());
            } else {
                let g = CanonicalGenerator::A { n: u.exp(GGenerator::E1) as u32, m: u.exp(GGenerator::F2) as u32, cliff: c, s };
                combo_add(&mut direct, g, &Rational::one());
            }
            return Ok((out, direct));
        }
        if is_a {
            let (b, sign) = a_to_b(c);
            if has(GGenerator::F1) {
                // (F1 ⊗ F2 - F2 ⊗ F1) ⊗ w ∈ Z, multiplied on the left by u'' ⊗ ℓ
                let mut m = minus(GGenerator::F1);
                m.exps[GGenerator::F2.index()] += 1;
                out.push((int(sign), (m, b, s)));
            } else if has(GGenerator::E2) {
                // C ⊗ w ∈ Z, multiplied on the left by u'' ⊗ ℓ
                let upp = UEnvElement::monomial(minus(GGenerator::E2), Rational::one());
                let lower = UEnvElement::monomial(u, Rational::one()).sub(&upp.mul_gen(GGenerator::E2));
                let bcl = CliffElement::monomial(CliffMonomial::new(b), Rational::one());
                self.push(&mut out, &upp.mul_gen(GGenerator::E1), &bcl, s, &int(-sign));
                self.push(&mut out, &lower, &cl, s, &Rational::one());
            } else {
                let g = CanonicalGenerator::A { n: u.exp(GGenerator::E1) as u32, m: u.exp(GGenerator::F2) as u32, cliff: c, s };
                combo_add(&mut direct, g, &Rational::one());
            }
            return Ok((out, direct));
        }
        // B-cliff at s = top: split u into highest weight vectors and ω(m')
        let ne = (u.exp(GGenerator::E1) + u.exp(GGenerator::E2)) as u32;
        let nf = (u.exp(GGenerator::F1) + u.exp(GGenerator::F2)) as u32;
        let lambda = self.lambda.clone();
        let hw = self.hw_decomposition(ne, nf).clone();
        let (alpha, beta) = &hw.coords[&u];
        for (j, a) in alpha.iter().enumerate() {
            combo_add(&mut direct, CanonicalGenerator::B { n: ne, m: nf, j: j as u32, cliff: c }, a);
        }
        for (mp, b) in beta {
            // ω(m') = m'(E1F1 + E2F2) + remainder, and (E1F1 + E2F2) ⊗ 1 acts on W by λ
            out.push((b * &lambda, (*mp, c, s)));
            self.push(&mut out, &hw.remainder[mp], &cl, s, b);
        }
        Ok((out, direct))
    }

    fn reduce_key(&mut self, key: &WordKey) -> Result<Combo, InductionError> {
        if let Some(c) = self.cache.get(key) {
            return Ok(c.clone());
        }
        let deg = key.0.degree();
        if deg > self.max_degree {
            return Err(InductionError::DegreeBound { degree: deg, bound: self.max_degree });
        }
        let (terms, mut combo) = self.rewrite(key)?;
        self.steps += 1;
        let here = self.measure(key);
        let mut merged: BTreeMap<WordKey, Rational> = BTreeMap::new();
        for (f, k) in terms {
            if f.is_zero() {
                continue;
            }
            let next = self.measure(&k);
            if next >= here {
                return Err(InductionError::MeasureIncrease(alloc::format!(
                    "{} (x) {} (x) w{} -> {} (x) {} (x) w{}",
                    key.0,
                    cliff_name(key.1),
                    key.2,
                    k.0,
                    cliff_name(k.1),
                    k.2
                )));
            }
            *merged.entry(k).or_insert_with(Rational::zero) += f;
        }
        for (k, f) in merged {
            if f.is_zero() {
                continue;
            }
            let sub = self.reduce_key(&k)?;
            for (g, x) in sub {
                combo_add(&mut combo, g, &(x * &f));
            }
        }
        self.cache.insert(*key, combo.clone());
        Ok(combo)
    }

    /// Reduces an element of `A ⊗ W` to canonical generators modulo `Z`.
    pub fn reduce_mod_z(&mut self, t: &TensorWord) -> Result<ReductionResult, InductionError> {
        let mut combo = Combo::new();
        for ((u, c, s), x) in &t.terms {
            if *s == 0 || *s > self.top {
                return Err(InductionError::DivisionByZero(alloc::format!("w{s} is not a basis vector of W")));
            }
            let q = self.quotient.reduce_monomial(*c).clone();
            for (cm, cc) in q.terms() {
                let sub = self.reduce_key(&(*u, cm.mask, *s))?;
                let f = x * cc;
                for (g, y) in sub {
                    combo_add(&mut combo, g, &(y * &f));
                }
            }
        }
        Ok(ReductionResult { source: t.clone(), combo })
    }
}

/// `φ` on words and canonical generators, with cached generator images.
#[derive(Debug, Clone)]
pub struct Phi<'a> {
    pub module: &'a DiscreteSeriesModule,
    ws: Vec<XSVector>,
    generators: BTreeMap<CanonicalGenerator, XSVector>,
}

impl<'a> Phi<'a> {
    pub fn new(module: &'a DiscreteSeriesModule) -> Result<Self, InductionError> {
        let p = module.p();
        let ws = (1..=w_dim(p)).map(|s| w_vector(p, s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Phi { module, ws, generators: BTreeMap::new() })
    }

    pub fn w(&self, s: usize) -> &XSVector {
        &self.ws[s - 1]
    }

    /// `φ(a ⊗ w_s) = a · w_s`.
    pub fn word(&self, t: &TensorWord) -> Result<XSVector, InductionError> {
        let mut by_s: BTreeMap<usize, AElement> = BTreeMap::new();
        for ((u, c, s), x) in &t.terms {
            by_s.entry(*s).or_default().add_term(*u, *c, x);
        }
        let mut out = XSVector::zero();
        for (s, a) in by_s {
            let img = self.module.act_on_xs(&a, self.w(s))?;
            out.add_scaled(&img, &Rational::one());
        }
        Ok(out)
    }

    pub fn generator(&mut self, g: &CanonicalGenerator) -> Result<XSVector, InductionError> {
        if let Some(v) = self.generators.get(g) {
            return Ok(v.clone());
        }
        let top = self.ws.len();
        let v = match *g {
            CanonicalGenerator::A { n, m, cliff, s } => {
                let a = AElement::term(PBWMonomial::p_part(n as u8, 0, 0, m as u8), CliffMonomial::new(cliff), Rational::one());
                self.module.act_on_xs(&a, self.w(s))?
            }
            CanonicalGenerator::B { n, m, j, cliff } => {
                let x = ad_power_f(j, &e1n_f2m(n as u8, m as u8));
                let a = AElement::pure(&x, &CliffElement::monomial(CliffMonomial::new(cliff), Rational::one()));
                self.module.act_on_xs(&a, self.w(top))?
            }
        };
        self.generators.insert(*g, v.clone());
        Ok(v)
    }

    pub fn combo(&mut self, c: &Combo) -> Result<XSVector, InductionError> {
        let mut out = XSVector::zero();
        for (g, x) in c {
            let v = self.generator(g)?;
            out.add_scaled(&v, x);
        }
        Ok(out)
    }

    /// Reduces `t` and checks `φ(t) = φ(combo)`.
    pub fn certify(&mut self, reducer: &mut Reducer, t: &TensorWord) -> Result<ReductionResult, InductionError> {
        let r = reducer.reduce_mod_z(t)?;
        let lhs = self.word(t)?;
        let rhs = self.combo(&r.combo)?;
        if lhs != rhs {
            return Err(InductionError::Certificate(alloc::format!("{t} reduces to {}", format_combo(&r.combo))));
        }
        Ok(r)
    }
}

/// Every raw word `(u ⊗ c) ⊗ w_s` with `deg u ≤ max_deg`.
pub fn raw_words(max_deg: u32, top: usize) -> Vec<TensorWord> {
    let mut out = Vec::new();
    for u in PBWMonomial::all_up_to(max_deg) {
        for c in CliffMonomial::all() {
            for s in 1..=top {
                out.push(TensorWord::single(u, c, s));
            }
        }
    }
    out
}

/// Rank of the `φ`-images of the canonical generators with `n ≤ k`, `m ≤ l`.
pub fn canonical_image_rank(phi: &mut Phi<'_>, k: u32, l: u32) -> Result<(usize, usize), InductionError> {
    let gens = CanonicalGenerator::enumerate(k, l, phi.ws.len());
    let mut index: BTreeMap<(u32, u32, u32, u8), usize> = BTreeMap::new();
    let mut ech = Echelon::new();
    for g in &gens {
        let v = phi.generator(g)?;
        let row = SparseVector::from_pairs(v.coords.iter().map(|(key, c)| {
            let l = index.len();
            (*index.entry(*key).or_insert(l), c.clone())
        }));
        let _ = ech.insert(&row);
    }
    Ok((gens.len(), ech.rank()))
}

fn ierr(e: InductionError) -> CheckFailure {
    CheckFailure::new(alloc::format!("{e}"))
}

fn rank_of(vectors: &[XSVector]) -> usize {
    let mut index: BTreeMap<(u32, u32, u32, u8), usize> = BTreeMap::new();
    let mut ech = Echelon::new();
    for v in vectors {
        let row = SparseVector::from_pairs(v.coords.iter().map(|(key, c)| {
            let l = index.len();
            (*index.entry(*key).or_insert(l), c.clone())
        }));
        let _ = ech.insert(&row);
    }
    ech.rank()
}

/// `dim V_{k,l} = Σ_{n ≤ k, m ≤ l} (p1 - p2 + n + m + 1)`.
pub fn dim_v(p: &Weight, k: u32, l: u32) -> usize {
    let top = w_dim(p);
    (0..=k).flat_map(|n| (0..=l).map(move |m| top + (n + m) as usize + 1)).sum()
}

/// The finite basis of `V_{k,l}`, its `X ⊗ 1` companion, and the eight-family basis of `V_{k,l} ⊗ S`.
pub fn verify_finite_bases(module: &DiscreteSeriesModule, k: u32, l: u32) -> CheckResult {
    let p = module.p().clone();
    let top = w_dim(&p);
    let dim = dim_v(&p, k, l);
    let mut phi = Phi::new(module).map_err(ierr)?;
    let f2 = CliffMonomial::new(F2);
    // (F^t E1^n F2^m ⊗ F2) · w_1
    let mut first = Vec::new();
    for n in 0..=k {
        for m in 0..=l {
            let span = top as u32 + n + m;
            let mut u = e1n_f2m(n as u8, m as u8);
            for _t in 0..=span {
                let a = AElement::pure(&u, &CliffElement::monomial(f2, Rational::one()));
                let v = module.act_on_xs(&a, phi.w(1)).map_err(|e| ierr(e.into()))?;
                ensure!(v.coords.keys().all(|key| key.3 == 0), "(F^t E1^n F2^m (x) F2) w_1 leaves X (x) 1");
                first.push(v);
                u = UEnvElement::gen(GGenerator::F).mul(&u);
            }
        }
    }
    ensure!(first.len() == dim, "finite basis has {} members, expected {dim}", first.len());
    let r1 = rank_of(&first);
    ensure!(r1 == dim, "finite basis has rank {r1}, expected {dim}");
    // {(E1^n F2^m ⊗ F2) w_s, (x ⊗ F1) w_top}
    let mut second = Vec::new();
    for n in 0..=k {
        for m in 0..=l {
            for s in 1..=top {
                second.push(phi.generator(&CanonicalGenerator::A { n, m, cliff: F2, s }).map_err(ierr)?);
            }
            for j in 0..=n + m {
                second.push(phi.generator(&CanonicalGenerator::B { n, m, j, cliff: F1 }).map_err(ierr)?);
            }
        }
    }
    ensure!(second.iter().all(|v| v.coords.keys().all(|key| key.3 == 0)), "X (x) 1 family leaves X (x) 1");
    let r2 = rank_of(&second);
    ensure!(second.len() == dim && r2 == dim, "X (x) 1 family: {} vectors of rank {r2}, expected {dim}", second.len());
    let (count, r3) = canonical_image_rank(&mut phi, k, l).map_err(ierr)?;
    ensure!(count == 4 * dim && r3 == 4 * dim, "eight-family list: {count} vectors of rank {r3}, expected {}", 4 * dim);
    Ok(CheckStats::new(first.len() + second.len() + count)
        .with("finite_basis_rank", r1 as u64)
        .with("x_tensor_1_rank", r2 as u64)
        .with("x_tensor_s_rank", r3 as u64))
}

/// Identities in `X ⊗ S` used to turn the generating set into a basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XsIdentity {
    OneTensorF1,
    F1TensorOne,
    FF2,
    FF2Top,
    FF1Top,
    EF1Top,
    EDeltaTop,
    E1E2Kills,
}

impl XsIdentity {
    pub const ALL: [XsIdentity; 8] = [
        XsIdentity::OneTensorF1,
        XsIdentity::F1TensorOne,
        XsIdentity::FF2,
        XsIdentity::FF2Top,
        XsIdentity::FF1Top,
        XsIdentity::EF1Top,
        XsIdentity::EDeltaTop,
        XsIdentity::E1E2Kills,
    ];

    pub fn id(self) -> &'static str {
        match self {
            XsIdentity::OneTensorF1 => "a",
            XsIdentity::F1TensorOne => "b",
            XsIdentity::FF2 => "c",
            XsIdentity::FF2Top => "d",
            XsIdentity::FF1Top => "e",
            XsIdentity::EF1Top => "f",
            XsIdentity::EDeltaTop => "g",
            XsIdentity::E1E2Kills => "h",
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            XsIdentity::OneTensorF1 => "1oF_1",
            XsIdentity::F1TensorOne => "F_1o1",
            XsIdentity::FF2 => "FF2",
            XsIdentity::FF2Top => "FF2p",
            XsIdentity::FF1Top => "FF1p",
            XsIdentity::EF1Top => "EoF_1",
            XsIdentity::EDeltaTop => "E_delta_top",
            XsIdentity::E1E2Kills => "E1E2_w",
        }
    }
}

fn word_a(u: &UEnvElement, c: u8) -> AElement {
    AElement::pure(u, &CliffElement::monomial(CliffMonomial::new(c), Rational::one()))
}

/// Checks one identity for all `n, m ≤ bound` and all admissible `s`.
pub fn verify_xs_identity(module: &DiscreteSeriesModule, id: XsIdentity, bound: u32) -> CheckResult {
    let p = module.p().clone();
    let top = w_dim(&p);
    let phi = Phi::new(module).map_err(ierr)?;
    let act = |a: &AElement, v: &XSVector| module.act_on_xs(a, v).map_err(|e| CheckFailure::new(alloc::format!("{e}")));
    let w = |s: usize| phi.w(s).clone();
    let f_delta = |s: usize| if s < top { w(s + 1) } else { XSVector::zero() };
    let kappa = |s: usize| &p.q2 - &p.q1 + int(s as i64);
    let one = UEnvElement::one();
    let (p1, p2) = (p.q1.clone(), p.q2.clone());
    let mut cases = 0;
    match id {
        XsIdentity::OneTensorF1 | XsIdentity::F1TensorOne => {
            for s in 1..=top {
                let pairs: [(AElement, AElement, i64); 2] = if id == XsIdentity::OneTensorF1 {
                    [(word_a(&one, F1), word_a(&one, F2), 1), (word_a(&one, E2), word_a(&one, E1), -1)]
                } else {
                    let g = |x: GGenerator| word_a(&UEnvElement::gen(x), 0);
                    [(g(GGenerator::F1), g(GGenerator::F2), 1), (g(GGenerator::E2), g(GGenerator::E1), -1)]
                };
                for (lhs_a, rhs_a, sign) in pairs {
                    let lhs = act(&lhs_a, &w(s))?.scaled(&kappa(s));
                    let rhs = act(&rhs_a, &f_delta(s))?.scaled(&int(sign));
                    ensure!(lhs == rhs, "{} fails at s = {s} for ({lhs_a})", id.anchor());
                    cases += 1;
                }
            }
        }
        XsIdentity::FF2 | XsIdentity::FF2Top => {
            for n in 0..=bound {
                for m in 0..=bound {
                    let base = e1n_f2m(n as u8, m as u8);
                    let lower = if n > 0 && m > 0 { e1n_f2m(n as u8 - 1, m as u8 - 1) } else { one.clone() };
                    let fu = UEnvElement::gen(GGenerator::F).mul(&base);
                    let nm = int((n * m) as i64);
                    let mi = int(m as i64);
                    if id == XsIdentity::FF2 {
                        for s in 1..top {
                            let lhs = act(&word_a(&fu, F2), &w(s))?.scaled(&kappa(s));
                            let mut rhs = act(&word_a(&lower, F2), &w(s))?
                                .scaled(&(kappa(s) * &nm * (&p1 + &p2 * int(2) - &mi)));
                            let c2 = -(int((n + m) as i64) + &p1 - &p2 - int(s as i64 - 1));
                            rhs.add_scaled(&act(&word_a(&base, F2), &w(s + 1))?, &c2);
                            ensure!(lhs == rhs, "FF2 fails at (n, m, s) = ({n}, {m}, {s})");
                            cases += 1;
                        }
                    } else {
                        let lhs = act(&word_a(&fu, F2), &w(top))?;
                        let mut rhs = act(&word_a(&lower, F2), &w(top))?.scaled(&(&nm * (&p2 * int(2) + &p1 - &mi)));
                        rhs.add_scaled(&act(&word_a(&base, F1), &w(top))?, &-int((m + n + 1) as i64));
                        ensure!(lhs == rhs, "FF2p fails at (n, m) = ({n}, {m})");
                        cases += 1;
                    }
                }
            }
        }
        XsIdentity::FF1Top => {
            for n in 0..=bound {
                for m in 0..=bound {
                    let base = e1n_f2m(n as u8, m as u8);
                    for t in 0..=bound + 1 {
                        let lhs = act(&word_a(&UEnvElement::gen(GGenerator::F).pow(t).mul(&base), F1), &w(top))?;
                        let rhs = act(&word_a(&ad_power_f(t, &base), F1), &w(top))?;
                        ensure!(lhs == rhs, "FF1p fails at (n, m, t) = ({n}, {m}, {t})");
                        cases += 1;
                    }
                }
            }
        }
        XsIdentity::EF1Top => {
            let lhs = act(&word_a(&UEnvElement::gen(GGenerator::E), F1), &w(top))?;
            let rhs = act(&word_a(&one, F2), &w(top))?.scaled(&(&p2 - &p1));
            ensure!(lhs == rhs, "(E (x) F1) w_top != (p2 - p1)(1 (x) F2) w_top");
            cases += 1;
        }
        XsIdentity::EDeltaTop => {
            let lhs = act(&diagonal_gen(GGenerator::E), &w(top))?;
            let rhs = if top > 1 { w(top - 1).scaled(&int(top as i64 - 1)) } else { XSVector::zero() };
            ensure!(lhs == rhs, "E_diag w_top != (p1 - p2 - 1) w_(top-1)");
            cases += 1;
        }
        XsIdentity::E1E2Kills => {
            for s in 1..=top {
                ensure!(act(&word_a(&one, E1 | E2), &w(s))?.is_zero(), "(1 (x) E1E2) w_{s} != 0");
                cases += 1;
            }
        }
    }
    Ok(CheckStats::new(cases))
}

/// Independence of the canonical images and reduction of every raw word with a certificate.
pub fn verify_isomorphism(module: &DiscreteSeriesModule, k: u32, l: u32, max_deg: u32) -> CheckResult {
    let p = module.p().clone();
    let top = w_dim(&p);
    let dim = dim_v(&p, k, l);
    let mut phi = Phi::new(module).map_err(ierr)?;
    let (count, rank) = canonical_image_rank(&mut phi, k, l).map_err(ierr)?;
    ensure!(count == 4 * dim, "canonical count {count} != 4 dim V = {}", 4 * dim);
    ensure!(rank == count, "canonical images have rank {rank} < {count}");
    let words = raw_words(max_deg, top);
    let steps = certify_words(module, &words, max_deg).map_err(ierr)?;
    Ok(CheckStats::new(words.len() + 1)
        .with("canonical_count", count as u64)
        .with("phi_rank", rank as u64)
        .with("raw_words", words.len() as u64)
        .with("rewrite_steps", steps))
}

/// Reduces and certifies each word with a fresh reducer; returns the number of rewrite steps.
pub fn certify_words(module: &DiscreteSeriesModule, words: &[TensorWord], max_deg: u32) -> Result<u64, InductionError> {
    let mut phi = Phi::new(module)?;
    let mut reducer = Reducer::new(module.p().clone(), max_deg);
    for t in words {
        phi.certify(&mut reducer, t)?;
    }
    Ok(reducer.steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn module() -> DiscreteSeriesModule {
        DiscreteSeriesModule::build(Weight::ints(1, -1), 4, 4).unwrap()
    }

    #[test]
    fn cliff_maps_match_quotient() {
        let q = QuotientCliffs::new();
        let ls = [(0u8, 1i64, 1i64), (E1, 1, 1), (E2, 1, 1)];
        for (l, _, _) in ls {
            let lc = CliffElement::monomial(CliffMonomial::new(l), Rational::one());
            let f1 = CliffElement::word(&[crate::clifford::CliffGen::F1]);
            let f2 = CliffElement::word(&[crate::clifford::CliffGen::F2]);
            let b = q.reduce(&lc.mul(&f1));
            let a = q.reduce(&lc.mul(&f2));
            let (bm, _) = b.terms().next().unwrap();
            let (am, _) = a.terms().next().unwrap();
            assert_eq!(b_to_a(bm.mask), (am.mask, 1));
            assert_eq!(a_to_b(am.mask), (bm.mask, 1));
        }
        // ℓ = ½E1E2 on F1 and -½E1E2 on F2
        let e12 = CliffElement::word(&[crate::clifford::CliffGen::E1, crate::clifford::CliffGen::E2]);
        let b = q.reduce(&e12.mul(&CliffElement::word(&[crate::clifford::CliffGen::F1])).scaled(&ratio(1, 2)));
        let a = q.reduce(&e12.mul(&CliffElement::word(&[crate::clifford::CliffGen::F2])).scaled(&ratio(1, 2)));
        assert_eq!(b, CliffElement::monomial(CliffMonomial::new(E2), int(1)));
        assert_eq!(a, CliffElement::monomial(CliffMonomial::new(E1), int(-1)));
    }

    #[test]
    fn examples() {
        let m = module();
        let mut phi = Phi::new(&m).unwrap();
        let mut r = Reducer::new(Weight::ints(1, -1), 3);
        let one = PBWMonomial::ONE;
        let t = TensorWord::single(one, CliffMonomial::new(F2), 1);
        let res = phi.certify(&mut r, &t).unwrap();
        assert_eq!(res.combo.len(), 1);
        assert_eq!(res.combo[&CanonicalGenerator::A { n: 0, m: 0, cliff: F2, s: 1 }], int(1));
        let t = TensorWord::single(one, CliffMonomial::new(F1), 1);
        let res = phi.certify(&mut r, &t).unwrap();
        assert_eq!(res.combo.len(), 1);
        assert_eq!(res.combo[&CanonicalGenerator::A { n: 0, m: 0, cliff: F2, s: 2 }], int(-1));
        let t = TensorWord::single(PBWMonomial::gen(GGenerator::F1), CliffMonomial::ONE, 1);
        let res = phi.certify(&mut r, &t).unwrap();
        let mut expect = Combo::new();
        expect.insert(CanonicalGenerator::A { n: 0, m: 1, cliff: E2 | F2, s: 2 }, ratio(1, 2));
        expect.insert(CanonicalGenerator::B { n: 0, m: 1, j: 0, cliff: E1 | F1 }, ratio(1, 2));
        assert_eq!(res.combo, expect);
        assert!(r.reduce_mod_z(&TensorWord::zero()).unwrap().combo.is_empty());
        // φ((1 ⊗ F2) ⊗ w_1) = 4 v^(0) ⊗ 1
        let v = phi.word(&TensorWord::single(one, CliffMonomial::new(F2), 1)).unwrap();
        assert_eq!(v.coords.len(), 1);
        assert_eq!(v.coords[&(0, 0, 0, 0)], int(4));
    }

    #[test]
    fn phi_kills_z() {
        let m = module();
        let phi = Phi::new(&m).unwrap();
        let a = AElement::gen_tensor(GGenerator::E1, &CliffElement::word(&[crate::clifford::CliffGen::F2]));
        for s in 1..=2 {
            for x in GGenerator::K {
                let lhs = phi.word(&TensorWord::from_a(&a.mul(&diagonal_gen(x)), s)).unwrap();
                let mut rhs = XSVector::zero();
                if let Some((s2, f)) = k_delta_on_w(m.p(), x, s) {
                    rhs = phi.word(&TensorWord::from_a(&a, s2)).unwrap().scaled(&f);
                }
                assert_eq!(lhs, rhs);
            }
            let d = crate::algebra::dirac();
            assert!(phi.word(&TensorWord::from_a(&a.mul(&d), s)).unwrap().is_zero());
            let e12 = AElement::from_cliff(&CliffElement::word(&[crate::clifford::CliffGen::E1, crate::clifford::CliffGen::E2]));
            assert!(phi.word(&TensorWord::from_a(&e12, s)).unwrap().is_zero());
        }
    }

    #[test]
    fn canonical_counts() {
        assert_eq!(CanonicalGenerator::enumerate(3, 3, 2).len(), 384);
        assert_eq!(dim_v(&Weight::ints(1, -1), 3, 3), 96);
        assert_eq!(dim_v(&Weight::ints(1, -1), 0, 0), 3);
    }

    #[test]
    fn identities_small() {
        let m = module();
        for id in XsIdentity::ALL {
            let r = verify_xs_identity(&m, id, 2);
            assert!(r.is_ok(), "{}: {:?}", id.anchor(), r.err());
        }
    }

    #[test]
    fn isomorphism_full() {
        for (p, top) in [(Weight::ints(1, -1), 2usize), (Weight::new(ratio(4, 3), ratio(-5, 3)), 3)] {
            let m = DiscreteSeriesModule::build(p.clone(), 4, 4).unwrap();
            let st = verify_isomorphism(&m, 3, 3, 3).unwrap();
            assert_eq!(st.count("raw_words"), Some(165 * 16 * top as u64));
            assert_eq!(st.count("phi_rank"), Some(4 * dim_v(&p, 3, 3) as u64));
            verify_finite_bases(&m, 3, 3).unwrap();
            for id in XsIdentity::ALL {
                verify_xs_identity(&m, id, 2).unwrap();
            }
        }
    }

    #[test]
    fn isomorphism_small() {
        let m = DiscreteSeriesModule::build(Weight::ints(1, -1), 2, 2).unwrap();
        let st = verify_isomorphism(&m, 1, 1, 2).unwrap();
        assert_eq!(st.count("phi_rank"), Some(4 * dim_v(&Weight::ints(1, -1), 1, 1) as u64));
        verify_finite_bases(&m, 1, 1).unwrap();
    }
}
