//! Truncated nonholomorphic discrete series modules: K-types, the p-action
//! through Clebsch-Gordan component maps, a solver for the transition
//! scalars, and the action of `A` on `X ⊗ S`.
//!
//! K-types are labelled `(n, m)` for `q = (p1 + n, p2 - m)`; inside a K-type
//! the index `k` stands for the basis vector `v_q^{(q1 - q2) - 2k}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::AElement;
use crate::check::{CheckFailure, CheckResult, CheckStats};
use crate::clifford::{spin_apply, CliffElement, SpinVector};
use crate::ensure;
use crate::enveloping::{PBWMonomial, UEnvElement};
use crate::lie::{bracket_gen, is_nonholomorphic_parameter, GElement, GGenerator, Weight};
use crate::linalg::{determined_unknowns, kernel_basis, Echelon, SparseMatrix, SparseVector};
use crate::rational::{int, Rational};

/// A highest weight `q` of `K̃`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KTypeLabel {
    pub q: Weight,
}

impl KTypeLabel {
    pub fn new(q: Weight) -> Option<Self> {
        q.is_ktype_label().then_some(KTypeLabel { q })
    }

    /// `q1 - q2`.
    pub fn span(&self) -> u32 {
        crate::rational::to_i64(&(&self.q.q1 - &self.q.q2)).expect("label") as u32
    }

    pub fn dim(&self) -> u32 {
        self.span() + 1
    }
}

/// Vector of one K-type in the basis `k ↦ v_q^{(q1 - q2) - 2k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTypeVector {
    pub label: KTypeLabel,
    pub coords: BTreeMap<u32, Rational>,
}

impl KTypeVector {
    pub fn basis(label: KTypeLabel, k: u32) -> Self {
        assert!(k <= label.span(), "index {k} outside V_{}", label.q);
        let mut coords = BTreeMap::new();
        coords.insert(k, Rational::one());
        KTypeVector { label, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.values().all(|c| c.is_zero())
    }
}

/// `x · v^{(k)}` for `x ∈ {E, F, h1, h2}` on `V_q`.
pub fn k_action_basis(x: GGenerator, q: &Weight, k: u32) -> Option<(u32, Rational)> {
    let d = crate::rational::to_i64(&(&q.q1 - &q.q2)).expect("integral span");
    let kk = k as i64;
    match x {
        GGenerator::H1 => Some((k, &q.q1 - int(kk))),
        GGenerator::H2 => Some((k, &q.q2 + int(kk))),
        GGenerator::E => (k > 0).then(|| (k - 1, int(kk * (d - kk + 1)))),
        GGenerator::F => (kk < d).then(|| (k + 1, Rational::one())),
        _ => None,
    }
}

pub fn k_action(x: GGenerator, v: &KTypeVector) -> KTypeVector {
    assert!(x.is_compact(), "k_action needs a generator of k");
    let mut coords = BTreeMap::new();
    for (k, c) in &v.coords {
        if let Some((kk, f)) = k_action_basis(x, &v.label.q, *k) {
            let slot = coords.entry(kk).or_insert_with(Rational::zero);
            *slot += c * f;
        }
    }
    coords.retain(|_, c: &mut Rational| !c.is_zero());
    KTypeVector { label: v.label.clone(), coords }
}

/// Adjacent K-type reached by a noncompact generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// `(q1 + 1, q2)`: `n + 1`, component of `p⁺`.
    A,
    /// `(q1, q2 + 1)`: `m - 1`, component of `p⁺`.
    B,
    /// `(q1 - 1, q2)`: `n - 1`, component of `p⁻`.
    C,
    /// `(q1, q2 - 1)`: `m + 1`, component of `p⁻`.
    D,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::A, Direction::B, Direction::C, Direction::D];

    pub fn shift(self, n: u32, m: u32) -> Option<(u32, u32)> {
        match self {
            Direction::A => Some((n + 1, m)),
            Direction::B => m.checked_sub(1).map(|m| (n, m)),
            Direction::C => n.checked_sub(1).map(|n| (n, m)),
            Direction::D => Some((n, m + 1)),
        }
    }

    pub fn weight_shift(self) -> Weight {
        match self {
            Direction::A => Weight::ints(1, 0),
            Direction::B => Weight::ints(0, 1),
            Direction::C => Weight::ints(-1, 0),
            Direction::D => Weight::ints(0, -1),
        }
    }

    /// Raising component: the target has dimension one larger.
    pub fn is_up(self) -> bool {
        matches!(self, Direction::A | Direction::D)
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::A => "a",
            Direction::B => "b",
            Direction::C => "c",
            Direction::D => "d",
        }
    }
}

/// How a generator of `p` sits in `p^± ≅ V_1`: `(u-index, sign, up direction, down direction)`.
pub fn p_generator_data(g: GGenerator) -> Option<(u8, i64, Direction, Direction)> {
    match g {
        GGenerator::E1 => Some((0, 1, Direction::A, Direction::B)),
        GGenerator::E2 => Some((1, 1, Direction::A, Direction::B)),
        GGenerator::F2 => Some((0, 1, Direction::D, Direction::C)),
        GGenerator::F1 => Some((1, -1, Direction::D, Direction::C)),
        _ => None,
    }
}

/// Coefficient of the k-equivariant component map `V_1 ⊗ V_d → V_{d±1}` on `u_i ⊗ v^{(k)}`.
///
/// Up maps send `u_0 ⊗ v^{(0)}` to the top vector; down maps are the projection
/// with the sign fixed by `u_1 ⊗ v^{(0)} ↦ -1/(d+1) · top`.
pub fn cg_coefficient(d: u32, up: bool, i: u8, k: u32) -> Option<(u32, Rational)> {
    let den = (d + 1) as i64;
    let kk = k as i64;
    match (up, i) {
        (true, 0) => Some((k, Rational::new((den - kk).into(), den.into()))),
        (true, _) => Some((k + 1, Rational::new(1.into(), den.into()))),
        (false, 0) => (k >= 1).then(|| (k - 1, Rational::new(kk.into(), den.into()))),
        (false, _) => (k < d).then(|| (k, Rational::new((-1).into(), den.into()))),
    }
}

/// Matrix of a component map: rows index the target basis, columns `(i, k) ↦ i·(d+1) + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CgMap {
    pub source: KTypeLabel,
    pub target: KTypeLabel,
    pub direction: Direction,
    pub matrix: BTreeMap<(u32, usize), Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleError {
    InvalidTarget(String),
    NotNonholomorphic(Weight),
    Inconsistent(String),
    Underdetermined(String),
    ZeroTransition(String),
    WindowOverflow(String),
}

impl fmt::Display for ModuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleError::InvalidTarget(s) => write!(f, "invalid target K-type: {s}"),
            ModuleError::NotNonholomorphic(p) => write!(f, "{p} is not a nonholomorphic discrete series parameter"),
            ModuleError::Inconsistent(s) => write!(f, "inconsistent transition system: {s}"),
            ModuleError::Underdetermined(s) => write!(f, "underdetermined transition system: {s}"),
            ModuleError::ZeroTransition(s) => write!(f, "vanishing transition scalar: {s}"),
            ModuleError::WindowOverflow(s) => write!(f, "support leaves the truncation window: {s}"),
        }
    }
}

pub fn cg_component_maps(q: &KTypeLabel, direction: Direction) -> Result<CgMap, ModuleError> {
    let target_q = q.q.add(&direction.weight_shift());
    let target = KTypeLabel::new(target_q.clone()).ok_or_else(|| {
        ModuleError::InvalidTarget(alloc::format!("{} from {} in direction {}", target_q, q.q, direction.name()))
    })?;
    let d = q.span();
    let mut matrix = BTreeMap::new();
    for i in 0..2u8 {
        for k in 0..=d {
            if let Some((t, c)) = cg_coefficient(d, direction.is_up(), i, k) {
                matrix.insert((t, i as usize * (d as usize + 1) + k as usize), c);
            }
        }
    }
    Ok(CgMap { source: q.clone(), target, direction, matrix })
}

/// The generators spanning `p⁺` or `p⁻` as `u_0, u_1`.
fn p_half_basis(direction: Direction) -> [GElement; 2] {
    if matches!(direction, Direction::A | Direction::B) {
        [GElement::gen(GGenerator::E1), GElement::gen(GGenerator::E2)]
    } else {
        [GElement::gen(GGenerator::F2), GElement::term(GGenerator::F1, int(-1))]
    }
}

/// `x ∈ k` acting on `u_0, u_1` through `ad`: returns the 2×2 matrix `[to][from]`.
fn ad_on_half(x: GGenerator, direction: Direction) -> [[Rational; 2]; 2] {
    let basis = p_half_basis(direction);
    let mut m: [[Rational; 2]; 2] = core::array::from_fn(|_| core::array::from_fn(|_| Rational::zero()));
    for (j, u) in basis.iter().enumerate() {
        let mut img = GElement::zero();
        for (g, c) in u.terms() {
            img = img.add(&bracket_gen(x, g).scaled(c));
        }
        // expand img in u_0, u_1
        for (i, b) in basis.iter().enumerate() {
            let (g, c) = b.terms().next().expect("basis vector");
            m[i][j] = img.coeff(g) / c;
        }
    }
    m
}

/// Source action of `x` on `V_1 ⊗ V_q` as a sparse matrix on the column index.
fn tensor_action(x: GGenerator, q: &KTypeLabel, direction: Direction) -> BTreeMap<(usize, usize), Rational> {
    let d = q.span() as usize;
    let ad = ad_on_half(x, direction);
    let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for i in 0..2 {
        for k in 0..=d {
            let col = i * (d + 1) + k;
            for (ii, row) in ad.iter().enumerate() {
                if !row[i].is_zero() {
                    *out.entry((ii * (d + 1) + k, col)).or_insert_with(Rational::zero) += &row[i];
                }
            }
            if let Some((kk, c)) = k_action_basis(x, &q.q, k as u32) {
                *out.entry((i * (d + 1) + kk as usize, col)).or_insert_with(Rational::zero) += c;
            }
        }
    }
    out
}

/// Equivariance of every component map, and that the space of equivariant maps is one-dimensional.
pub fn verify_cg_maps(labels: &[KTypeLabel]) -> CheckResult {
    let mut cases = 0;
    for q in labels {
        let d = q.span() as usize;
        let ncols = 2 * (d + 1);
        for dir in Direction::ALL {
            let Ok(map) = cg_component_maps(q, dir) else { continue };
            let tdim = map.target.dim() as usize;
            for x in GGenerator::K {
                let src = tensor_action(x, q, dir);
                for col in 0..ncols {
                    // map ∘ x
                    let mut lhs = BTreeMap::<u32, Rational>::new();
                    for ((r, c), v) in &src {
                        if *c != col {
                            continue;
                        }
                        for ((t, cc), w) in &map.matrix {
                            if cc == r {
                                *lhs.entry(*t).or_insert_with(Rational::zero) += v * w;
                            }
                        }
                    }
                    // x ∘ map
                    let mut rhs = BTreeMap::<u32, Rational>::new();
                    for ((t, cc), w) in &map.matrix {
                        if *cc != col {
                            continue;
                        }
                        if let Some((tt, f)) = k_action_basis(x, &map.target.q, *t) {
                            *rhs.entry(tt).or_insert_with(Rational::zero) += w * f;
                        }
                    }
                    lhs.retain(|_, v| !v.is_zero());
                    rhs.retain(|_, v| !v.is_zero());
                    ensure!(lhs == rhs, "component map {} at {} fails equivariance for {x}", dir.name(), q.q);
                    cases += 1;
                }
            }
            // unknown matrix entries (t, col) ↦ t·ncols + col; equations M∘x = x∘M
            let mut rows = Vec::new();
            for x in GGenerator::K {
                let src = tensor_action(x, q, dir);
                for t in 0..tdim {
                    for col in 0..ncols {
                        let mut row = SparseVector::new();
                        for ((r, c), v) in &src {
                            if *c == col {
                                row.add_to(t * ncols + r, v);
                            }
                        }
                        for tt in 0..tdim {
                            if let Some((t2, f)) = k_action_basis(x, &map.target.q, tt as u32) {
                                if t2 as usize == t {
                                    row.add_to(tt * ncols + col, &-f);
                                }
                            }
                        }
                        if !row.is_zero() {
                            rows.push(row);
                        }
                    }
                }
            }
            let ker = kernel_basis(&SparseMatrix::from_rows(rows, tdim * ncols)).len();
            ensure!(ker == 1, "equivariant maps in direction {} at {} form a space of dimension {ker}", dir.name(), q.q);
            cases += 1;
        }
    }
    Ok(CheckStats::new(cases))
}

/// The truncated spectrum `{(p1 + n, p2 - m) : n ≤ N, m ≤ M}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumWindow {
    pub p: Weight,
    pub n_max: u32,
    pub m_max: u32,
}

impl SpectrumWindow {
    pub fn new(p: Weight, n_max: u32, m_max: u32) -> Result<Self, ModuleError> {
        if !is_nonholomorphic_parameter(&p) {
            return Err(ModuleError::NotNonholomorphic(p));
        }
        Ok(SpectrumWindow { p, n_max, m_max })
    }

    pub fn label(&self, n: u32, m: u32) -> KTypeLabel {
        KTypeLabel::new(Weight::new(&self.p.q1 + int(n as i64), &self.p.q2 - int(m as i64))).expect("spectrum label")
    }

    /// `q1 - q2` at `(n, m)`.
    pub fn span(&self, n: u32, m: u32) -> u32 {
        self.label(n, m).span()
    }

    pub fn contains(&self, n: u32, m: u32) -> bool {
        n <= self.n_max && m <= self.m_max
    }

    pub fn is_interior(&self, n: u32, m: u32) -> bool {
        n < self.n_max && m < self.m_max
    }

    pub fn labels(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..=self.n_max).flat_map(move |n| (0..=self.m_max).map(move |m| (n, m)))
    }

    /// `Σ dim V_q` over the window.
    pub fn dimension(&self) -> usize {
        self.labels().map(|(n, m)| self.span(n, m) as usize + 1).sum()
    }
}

/// Solved transition scalars on a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionTable {
    pub window: SpectrumWindow,
    pub gauge: String,
    /// `(n, m) ↦ [a, b, c, d]`.
    pub entries: BTreeMap<(u32, u32), [Rational; 4]>,
}

pub const GAUGE: &str = "a=1;d(p1,q2)=1";

impl TransitionTable {
    pub fn p(&self) -> &Weight {
        &self.window.p
    }

    pub fn scalar(&self, dir: Direction, n: u32, m: u32) -> Option<&Rational> {
        self.entries.get(&(n, m)).map(|e| &e[dir as usize])
    }
}

/// One edge scalar in the solver: known or an unknown index.
#[derive(Debug, Clone)]
enum Slot {
    Known(Rational),
    Unknown(usize),
}

type Key = (Direction, u32, u32);

/// A relation residual: `Σ coeff · s(k1) s(k2) + constant`.
#[derive(Debug, Clone, Default)]
struct Residual {
    quadratic: BTreeMap<(Key, Key), Rational>,
    constant: Rational,
}

/// `g v^{(k)}` at `(n, m)` as a list of `(direction, target, coefficient)`, scalars not applied.
fn p_step(w: &SpectrumWindow, g: GGenerator, n: u32, m: u32, k: u32) -> Vec<(Direction, (u32, u32, u32), Rational)> {
    let (i, sign, up, down) = p_generator_data(g).expect("noncompact generator");
    let d = w.span(n, m);
    let mut out = Vec::new();
    for (dir, is_up) in [(up, true), (down, false)] {
        let Some((nn, mm)) = dir.shift(n, m) else { continue };
        if let Some((kk, c)) = cg_coefficient(d, is_up, i, k) {
            out.push((dir, (nn, mm, kk), c * int(sign)));
        }
    }
    out
}

fn relations() -> [(GGenerator, GGenerator); 6] {
    use GGenerator::*;
    [(E1, F1), (E2, F2), (E1, F2), (E2, F1), (E1, E2), (F1, F2)]
}

/// Lattice margin `(dn, dm)` a relation needs above its base K-type.
fn relation_margin(x: GGenerator, y: GGenerator) -> (u32, u32) {
    let raising = |g: GGenerator| matches!(g, GGenerator::E1 | GGenerator::E2);
    match (raising(x), raising(y)) {
        (true, true) => (2, 0),
        (false, false) => (0, 2),
        _ => (1, 1),
    }
}

/// Residuals of `x(yv) - y(xv) - [x, y]v` at every coordinate, for `v = v^{(k)}` at `(n, m)`.
fn relation_residuals(w: &SpectrumWindow, x: GGenerator, y: GGenerator, n: u32, m: u32, k: u32) -> BTreeMap<(u32, u32, u32), Residual> {
    let mut out: BTreeMap<(u32, u32, u32), Residual> = BTreeMap::new();
    for (first, second, sign) in [(y, x, 1i64), (x, y, -1)] {
        for (d1, (n1, m1, k1), c1) in p_step(w, first, n, m, k) {
            for (d2, t, c2) in p_step(w, second, n1, m1, k1) {
                let key = ((d1, n, m), (d2, n1, m1));
                let r = out.entry(t).or_default();
                *r.quadratic.entry(key).or_insert_with(Rational::zero) += &c1 * &c2 * int(sign);
            }
        }
    }
    for (g, c) in bracket_gen(x, y).terms() {
        if let Some((kk, f)) = k_action_basis(g, &w.label(n, m).q, k) {
            out.entry((n, m, kk)).or_default().constant -= c * f;
        }
    }
    out
}

/// Polynomial in the unknowns after substitution: monomials of degree ≤ 2.
fn substitute(r: &Residual, slots: &BTreeMap<Key, Slot>) -> BTreeMap<Vec<usize>, Rational> {
    let mut out: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    let mut push = |k: Vec<usize>, c: Rational| {
        if c.is_zero() {
            return;
        }
        let e = out.entry(k).or_insert_with(Rational::zero);
        *e += c;
    };
    push(Vec::new(), r.constant.clone());
    for ((k1, k2), c) in &r.quadratic {
        let (s1, s2) = (&slots[k1], &slots[k2]);
        match (s1, s2) {
            (Slot::Known(a), Slot::Known(b)) => push(Vec::new(), c * a * b),
            (Slot::Known(a), Slot::Unknown(u)) | (Slot::Unknown(u), Slot::Known(a)) => push(alloc::vec![*u], c * a),
            (Slot::Unknown(u), Slot::Unknown(v)) => {
                let mut key = alloc::vec![*u, *v];
                key.sort_unstable();
                push(key, c.clone())
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Solves for `b, c, d` under the gauge `a ≡ 1`, `d = 1` on the column `q1 = p1`.
///
/// The system is solved on a window two steps larger than requested so that
/// every stored scalar is pinned by relations that fit inside it.
pub fn solve_transitions(window: &SpectrumWindow) -> Result<TransitionTable, ModuleError> {
    if !is_nonholomorphic_parameter(&window.p) {
        return Err(ModuleError::NotNonholomorphic(window.p.clone()));
    }
    let ext = SpectrumWindow { p: window.p.clone(), n_max: window.n_max + 2, m_max: window.m_max + 2 };
    let mut slots: BTreeMap<Key, Slot> = BTreeMap::new();
    let mut names: Vec<Key> = Vec::new();
    for (n, m) in ext.labels() {
        for dir in Direction::ALL {
            let slot = match dir {
                Direction::A => Slot::Known(Rational::one()),
                Direction::B if m == 0 => Slot::Known(Rational::zero()),
                Direction::C if n == 0 => Slot::Known(Rational::zero()),
                Direction::D if n == 0 => Slot::Known(Rational::one()),
                _ => {
                    names.push((dir, n, m));
                    Slot::Unknown(names.len() - 1)
                }
            };
            slots.insert((dir, n, m), slot);
        }
    }
    let mut equations = Vec::new();
    for (n, m) in ext.labels() {
        for (x, y) in relations() {
            let (dn, dm) = relation_margin(x, y);
            if n + dn > ext.n_max || m + dm > ext.m_max {
                continue;
            }
            for k in 0..=ext.span(n, m) {
                equations.extend(relation_residuals(&ext, x, y, n, m, k).into_values());
            }
        }
    }
    loop {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for eq in &equations {
            let poly = substitute(eq, &slots);
            if poly.is_empty() {
                continue;
            }
            if poly.keys().all(|k| k.len() <= 1) {
                if poly.keys().all(|k| k.is_empty()) {
                    return Err(ModuleError::Inconsistent(alloc::format!("a relation reduces to the nonzero constant {}", crate::rational::format(&poly[&Vec::new()]))));
                }
                let row = SparseVector::from_pairs(poly.iter().filter(|(k, _)| k.len() == 1).map(|(k, c)| (k[0], c.clone())));
                rows.push(row);
                rhs.push(-poly.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero));
            }
        }
        let nrows = rows.len();
        let sys = SparseMatrix::from_rows(rows, names.len());
        let b = SparseVector::from_pairs(rhs.into_iter().enumerate().take(nrows));
        let fixed = determined_unknowns(&sys, &b)
            .ok_or_else(|| ModuleError::Inconsistent(String::from("linear constraints on the transition scalars have no solution")))?;
        let mut progress = false;
        for (u, v) in fixed {
            let key = names[u];
            if matches!(slots[&key], Slot::Unknown(_)) {
                slots.insert(key, Slot::Known(v));
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let mut entries = BTreeMap::new();
    for (n, m) in window.labels() {
        let mut vals: [Rational; 4] = core::array::from_fn(|_| Rational::zero());
        for dir in Direction::ALL {
            match &slots[&(dir, n, m)] {
                Slot::Known(v) => vals[dir as usize] = v.clone(),
                Slot::Unknown(_) => {
                    return Err(ModuleError::Underdetermined(alloc::format!("{}(n={n}, m={m}) is not pinned down", dir.name())))
                }
            }
        }
        if window.is_interior(n, m) && (vals[0].is_zero() || vals[3].is_zero()) {
            return Err(ModuleError::ZeroTransition(alloc::format!("at n={n}, m={m}")));
        }
        entries.insert((n, m), vals);
    }
    let table = TransitionTable { window: window.clone(), gauge: String::from(GAUGE), entries };
    if let Err(e) = verify_relations(&table) {
        return Err(ModuleError::Inconsistent(e.witness));
    }
    Ok(table)
}

/// Blind recheck: all six bracket relations on every interior basis vector.
pub fn verify_relations(table: &TransitionTable) -> CheckResult {
    let w = &table.window;
    let mut cases = 0;
    for (n, m) in w.labels().filter(|(n, m)| w.is_interior(*n, *m)) {
        for (x, y) in relations() {
            for k in 0..=w.span(n, m) {
                for (t, r) in relation_residuals(w, x, y, n, m, k) {
                    let mut total = r.constant.clone();
                    for (((d1, n1, m1), (d2, n2, m2)), c) in &r.quadratic {
                        let s1 = table.scalar(*d1, *n1, *m1);
                        let s2 = table.scalar(*d2, *n2, *m2);
                        match (s1, s2) {
                            (Some(a), Some(b)) => total += c * a * b,
                            _ => {
                                return Err(CheckFailure::new(alloc::format!(
                                    "relation [{x}, {y}] at (n={n}, m={m}) needs scalars outside the table"
                                )))
                            }
                        }
                    }
                    ensure!(
                        total.is_zero(),
                        "[{x}, {y}] fails on v^({k}) at (n={n}, m={m}), coordinate {:?}: residual {}",
                        t,
                        crate::rational::format(&total)
                    );
                }
                cases += 1;
            }
        }
    }
    Ok(CheckStats::new(cases))
}

/// Basis index `(n, m, k)` of the truncated module `X`.
pub type XKey = (u32, u32, u32);

/// Sparse vector of `X`.
pub type XVector = BTreeMap<XKey, Rational>;

fn x_add(v: &mut XVector, key: XKey, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(key).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&key);
    }
}

/// Sparse vector of `X ⊗ S`, keyed by `(n, m, k, spin index)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct XSVector {
    pub coords: BTreeMap<(u32, u32, u32, u8), Rational>,
}

impl XSVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: XKey, spin: u8) -> Self {
        let mut v = Self::zero();
        v.add_term(key, spin, &Rational::one());
        v
    }

    pub fn add_term(&mut self, key: XKey, spin: u8, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let k = (key.0, key.1, key.2, spin);
        let e = self.coords.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, f: &Rational) {
        if f.is_zero() {
            return;
        }
        for ((n, m, k, s), c) in &o.coords {
            self.add_term((*n, *m, *k), *s, &(c * f));
        }
    }

    pub fn scaled(&self, f: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, f);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// `x ⊗ s` for a vector of `X` and one spin basis index.
    pub fn from_x(x: &XVector, spin: u8) -> Self {
        let mut out = Self::zero();
        for (k, c) in x {
            out.add_term(*k, spin, c);
        }
        out
    }

    /// Split by spin index.
    pub fn by_spin(&self) -> BTreeMap<u8, XVector> {
        let mut out: BTreeMap<u8, XVector> = BTreeMap::new();
        for ((n, m, k, s), c) in &self.coords {
            out.entry(*s).or_default().insert((*n, *m, *k), c.clone());
        }
        out
    }

    pub fn to_vector(&self, index: &impl Fn(&(u32, u32, u32, u8)) -> usize) -> SparseVector {
        SparseVector::from_pairs(self.coords.iter().map(|(k, c)| (index(k), c.clone())))
    }
}

/// A solved module: the window and its transition table.
#[derive(Debug, Clone)]
pub struct DiscreteSeriesModule {
    pub table: TransitionTable,
}

impl DiscreteSeriesModule {
    pub fn new(table: TransitionTable) -> Self {
        DiscreteSeriesModule { table }
    }

    pub fn build(p: Weight, n_max: u32, m_max: u32) -> Result<Self, ModuleError> {
        let w = SpectrumWindow::new(p, n_max, m_max)?;
        Ok(Self::new(solve_transitions(&w)?))
    }

    pub fn window(&self) -> &SpectrumWindow {
        &self.table.window
    }

    pub fn p(&self) -> &Weight {
        &self.table.window.p
    }

    /// `v_p^{top}`.
    pub fn top(&self) -> XVector {
        let mut v = XVector::new();
        v.insert((0, 0, 0), Rational::one());
        v
    }

    /// One generator of `g` on a vector of `X`.
    pub fn act_gen(&self, g: GGenerator, v: &XVector) -> Result<XVector, ModuleError> {
        let w = self.window();
        let mut out = XVector::new();
        for ((n, m, k), c) in v {
            if g.is_compact() {
                if let Some((kk, f)) = k_action_basis(g, &w.label(*n, *m).q, *k) {
                    x_add(&mut out, (*n, *m, kk), c * f);
                }
                continue;
            }
            for (dir, (nn, mm, kk), f) in p_step(w, g, *n, *m, *k) {
                let s = self.table.scalar(dir, *n, *m).expect("source inside the window");
                if s.is_zero() {
                    continue;
                }
                if !w.contains(nn, mm) {
                    return Err(ModuleError::WindowOverflow(alloc::format!(
                        "{g} maps (n={n}, m={m}) to (n={nn}, m={mm})"
                    )));
                }
                x_add(&mut out, (nn, mm, kk), c * s * f);
            }
        }
        Ok(out)
    }

    /// A PBW monomial on `X`, letters applied right to left.
    pub fn act_monomial(&self, u: &PBWMonomial, v: &XVector) -> Result<XVector, ModuleError> {
        let mut cur = v.clone();
        for g in u.letters().into_iter().rev() {
            if cur.is_empty() {
                break;
            }
            cur = self.act_gen(g, &cur)?;
        }
        Ok(cur)
    }

    pub fn act_u(&self, u: &UEnvElement, v: &XVector) -> Result<XVector, ModuleError> {
        let mut out = XVector::new();
        for (m, c) in u.terms() {
            for (k, x) in self.act_monomial(m, v)? {
                x_add(&mut out, k, x * c);
            }
        }
        Ok(out)
    }

    /// `A` on `X ⊗ S`: `U(g)` on the first factor, `C(p)` on the spin module.
    pub fn act_on_xs(&self, a: &AElement, v: &XSVector) -> Result<XSVector, ModuleError> {
        let parts = v.by_spin();
        let mut out = XSVector::zero();
        let mut cache: BTreeMap<(PBWMonomial, u8), XVector> = BTreeMap::new();
        for (u, c, x) in a.terms() {
            let cl = CliffElement::monomial(*c, Rational::one());
            for (s, xv) in &parts {
                let img = spin_apply(&cl, &SpinVector::basis(*s as usize));
                if img.is_zero() {
                    continue;
                }
                if !cache.contains_key(&(*u, *s)) {
                    let r = self.act_monomial(u, xv)?;
                    cache.insert((*u, *s), r);
                }
                let ux = &cache[&(*u, *s)];
                for (t, f) in img.coords.iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    let ff = f * x;
                    for (key, val) in ux {
                        out.add_term(*key, t as u8, &(val * &ff));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `F^t E1^n F2^m v_p^{top}` for `n ≤ n_max`, `m ≤ m_max` are independent, with the expected count.
pub fn verify_basis1(module: &DiscreteSeriesModule, n_max: u32, m_max: u32) -> CheckResult {
    let w = module.window();
    ensure!(n_max <= w.n_max && m_max <= w.m_max, "sub-window ({n_max}, {m_max}) exceeds the module window");
    let mut ech = Echelon::new();
    let mut index: BTreeMap<XKey, usize> = BTreeMap::new();
    let mut count = 0usize;
    for n in 0..=n_max {
        for m in 0..=m_max {
            let u = PBWMonomial::p_part(n as u8, 0, 0, m as u8);
            let mut v = module.act_monomial(&u, &module.top()).map_err(|e| CheckFailure::new(alloc::format!("{e}")))?;
            let span = w.span(n, m);
            for t in 0..=span {
                let row = SparseVector::from_pairs(v.iter().map(|(k, c)| {
                    let l = index.len();
                    let i = *index.entry(*k).or_insert(l);
                    (i, c.clone())
                }));
                ensure!(ech.insert(&row) == Ok(true), "F^{t} E1^{n} F2^{m} v_p is dependent on earlier vectors");
                count += 1;
                v = module.act_gen(GGenerator::F, &v).map_err(|e| CheckFailure::new(alloc::format!("{e}")))?;
            }
            ensure!(v.is_empty(), "F^{} E1^{n} F2^{m} v_p does not vanish", span + 1);
        }
    }
    let expect: usize = (0..=n_max).flat_map(|n| (0..=m_max).map(move |m| (n, m))).map(|(n, m)| w.span(n, m) as usize + 1).sum();
    ensure!(count == expect && ech.rank() == expect, "rank {} with count {count}, expected {expect}", ech.rank());
    Ok(CheckStats::new(count).with("rank", ech.rank() as u64))
}

/// `E1 v^{top} = A1 v^{top}_{q+e1}` and `F2 v^{top} = B2 v^{top}_{q-e2}` with `A1, B2 ≠ 0` on the interior.
pub fn verify_paction_shape(module: &DiscreteSeriesModule) -> CheckResult {
    let w = module.window();
    let mut cases = 0;
    let interior: BTreeSet<(u32, u32)> = w.labels().filter(|(n, m)| w.is_interior(*n, *m)).collect();
    for (n, m) in interior {
        let mut top = XVector::new();
        top.insert((n, m, 0), Rational::one());
        for (g, target) in [(GGenerator::E1, (n + 1, m)), (GGenerator::F2, (n, m + 1))] {
            let img = module.act_gen(g, &top).map_err(|e| CheckFailure::new(alloc::format!("{e}")))?;
            ensure!(img.len() == 1, "{g} v_top at (n={n}, m={m}) is not a multiple of one top vector");
            let (k, c) = img.iter().next().expect("one term");
            ensure!(*k == (target.0, target.1, 0) && !c.is_zero(), "{g} v_top at (n={n}, m={m}) lands on {k:?}");
            cases += 1;
        }
    }
    Ok(CheckStats::new(cases))
}

/// `act(ab, v) = act(a, act(b, v))` on basis vectors of a sub-window with enough margin.
pub fn verify_action_compatibility(module: &DiscreteSeriesModule, pairs: &[(AElement, AElement)], margin: u32) -> CheckResult {
    let w = module.window();
    let mut cases = 0;
    for (n, m) in w.labels().filter(|(n, m)| n + margin <= w.n_max && m + margin <= w.m_max) {
        for k in 0..=w.span(n, m) {
            for s in 0..4u8 {
                let v = XSVector::basis((n, m, k), s);
                for (a, b) in pairs {
                    let err = |e: ModuleError| CheckFailure::new(alloc::format!("{e}"));
                    let lhs = module.act_on_xs(&a.mul(b), &v).map_err(err)?;
                    let rhs = module.act_on_xs(a, &module.act_on_xs(b, &v).map_err(err)?).map_err(err)?;
                    ensure!(lhs == rhs, "action is not multiplicative on ({a}) * ({b}) at {:?}", (n, m, k, s));
                    cases += 1;
                }
            }
        }
    }
    Ok(CheckStats::new(cases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn label(q1: i64, q2: i64) -> KTypeLabel {
        KTypeLabel::new(Weight::ints(q1, q2)).unwrap()
    }

    #[test]
    fn kaction_examples() {
        let q = label(1, -1);
        let top = KTypeVector::basis(q.clone(), 0);
        assert!(k_action(GGenerator::E, &top).is_zero());
        let bottom = KTypeVector::basis(q.clone(), 2);
        assert!(k_action(GGenerator::F, &bottom).is_zero());
        assert!(k_action(GGenerator::H1, &KTypeVector::basis(q, 1)).is_zero());
    }

    #[test]
    fn cg_examples() {
        let q = label(1, -1);
        let a = cg_component_maps(&q, Direction::A).unwrap();
        assert_eq!(a.matrix[&(0, 0)], int(1));
        let d = cg_component_maps(&q, Direction::D).unwrap();
        assert_eq!(d.matrix[&(0, 0)], int(1));
        assert!(cg_component_maps(&label(0, 0), Direction::B).is_err());
        verify_cg_maps(&[q, label(2, -1), label(1, -3)]).unwrap();
    }

    #[test]
    fn solve_small() {
        let w = SpectrumWindow::new(Weight::ints(1, -1), 4, 4).unwrap();
        let t = solve_transitions(&w).unwrap();
        for ((n, m), e) in &t.entries {
            assert_eq!(e[0], int(1));
            if *n == 0 {
                assert!(e[2].is_zero());
            }
            if *m == 0 {
                assert!(e[1].is_zero());
            }
        }
        let module = DiscreteSeriesModule::new(t);
        assert_eq!(verify_basis1(&module, 3, 3).unwrap().count("rank"), Some(96));
        assert_eq!(verify_basis1(&module, 2, 2).unwrap().count("rank"), Some(45));
        verify_paction_shape(&module).unwrap();
    }

    #[test]
    fn second_parameter() {
        let w = SpectrumWindow::new(Weight::new(ratio(4, 3), ratio(-5, 3)), 3, 3).unwrap();
        let t = solve_transitions(&w).unwrap();
        verify_relations(&t).unwrap();
    }

    #[test]
    fn rejects_holomorphic() {
        assert!(matches!(SpectrumWindow::new(Weight::ints(2, 1), 2, 2), Err(ModuleError::NotNonholomorphic(_))));
    }
}
