//! The algebra `A = U(g) ⊗ C(p)` (ordinary tensor product) and its distinguished elements.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::check::{CheckResult, CheckStats};
use crate::clifford::{projections, CliffElement, CliffGen, CliffMonomial};
use crate::ensure;
use crate::enveloping::{casimir_k, PBWMonomial, UEnvElement};
use crate::lie::{self, bracket_gen, GElement, GGenerator, LieError};
use crate::rational::{int, ratio, Rational};

/// Sparse element of `A`, keyed by `(PBW monomial, Clifford monomial)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AElement {
    coeffs: BTreeMap<(PBWMonomial, CliffMonomial), Rational>,
}

impl AElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::pure(&UEnvElement::one(), &CliffElement::one())
    }

    pub fn term(u: PBWMonomial, c: CliffMonomial, x: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(u, c, &x);
        e
    }

    /// `u ⊗ c`.
    pub fn pure(u: &UEnvElement, c: &CliffElement) -> Self {
        let mut e = Self::zero();
        for (um, uc) in u.terms() {
            for (cm, cc) in c.terms() {
                e.add_term(*um, cm, &(uc * cc));
            }
        }
        e
    }

    /// `u ⊗ 1`.
    pub fn from_u(u: &UEnvElement) -> Self {
        Self::pure(u, &CliffElement::one())
    }

    /// `1 ⊗ c`.
    pub fn from_cliff(c: &CliffElement) -> Self {
        Self::pure(&UEnvElement::one(), c)
    }

    /// `g ⊗ c` for a single generator of `g`.
    pub fn gen_tensor(g: GGenerator, c: &CliffElement) -> Self {
        Self::pure(&UEnvElement::gen(g), c)
    }

    pub fn add_term(&mut self, u: PBWMonomial, c: CliffMonomial, x: &Rational) {
        if x.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((u, c)).or_insert_with(Rational::zero);
        *slot += x;
        if slot.is_zero() {
            self.coeffs.remove(&(u, c));
        }
    }

    pub fn coeff(&self, u: &PBWMonomial, c: &CliffMonomial) -> Rational {
        self.coeffs.get(&(*u, *c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &CliffMonomial, &Rational)> {
        self.coeffs.iter().map(|((u, c), x)| (u, c, x))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_scaled(&mut self, o: &Self, f: &Rational) {
        if f.is_zero() {
            return;
        }
        for (u, c, x) in o.terms() {
            self.add_term(*u, *c, &(x * f));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &Rational::one());
        out
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

    pub fn mul(&self, o: &Self) -> Self {
        a_mul(self, o)
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    /// Groups the terms by Clifford monomial: `Σ_c u_c ⊗ c`.
    pub fn by_cliff(&self) -> BTreeMap<CliffMonomial, UEnvElement> {
        let mut out: BTreeMap<CliffMonomial, UEnvElement> = BTreeMap::new();
        for (u, c, x) in self.terms() {
            out.entry(*c).or_default().add_term(*u, x);
        }
        out
    }

    /// First coefficient where `self` and `o` differ, for failure witnesses.
    pub fn first_difference(&self, o: &Self) -> Option<String> {
        let d = self.sub(o);
        let out = d.terms().next().map(|(u, c, _)| {
            alloc::format!(
                "coefficient of {u} (x) {c}: {} vs {}",
                crate::rational::format(&self.coeff(u, c)),
                crate::rational::format(&o.coeff(u, c))
            )
        });
        out
    }
}

impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::rational::write_combination(
            f,
            self.terms().map(|(u, c, x)| {
                let body = match (u.is_one(), c.mask == 0) {
                    (true, true) => String::new(),
                    _ => alloc::format!("{u} (x) {c}"),
                };
                (x, body)
            }),
        )
    }
}

pub fn a_mul(a: &AElement, b: &AElement) -> AElement {
    let mut out = AElement::zero();
    let mut cache: BTreeMap<(PBWMonomial, PBWMonomial), UEnvElement> = BTreeMap::new();
    for (ua, ca, xa) in a.terms() {
        for (ub, cb, xb) in b.terms() {
            let cprod = CliffElement::monomial(*ca, Rational::one()).mul(&CliffElement::monomial(*cb, Rational::one()));
            if cprod.is_zero() {
                continue;
            }
            let uprod = cache
                .entry((*ua, *ub))
                .or_insert_with(|| UEnvElement::monomial(*ua, Rational::one()).mul_monomial(ub));
            let f = xa * xb;
            for (um, uc) in uprod.terms() {
                for (cm, cc) in cprod.terms() {
                    out.add_term(*um, cm, &(&f * uc * cc));
                }
            }
        }
    }
    out
}

fn cl(gens: &[CliffGen]) -> CliffElement {
    CliffElement::word(gens)
}

/// `C = E1 ⊗ F1 + E2 ⊗ F2`.
pub fn c_plus() -> AElement {
    use GGenerator::*;
    AElement::gen_tensor(E1, &cl(&[CliffGen::F1])).add(&AElement::gen_tensor(E2, &cl(&[CliffGen::F2])))
}

/// `C⁻ = F1 ⊗ E1 + F2 ⊗ E2`.
pub fn c_minus() -> AElement {
    use GGenerator::*;
    AElement::gen_tensor(F1, &cl(&[CliffGen::E1])).add(&AElement::gen_tensor(F2, &cl(&[CliffGen::E2])))
}

/// `D = Σ b_i ⊗ d_i` over the dual bases of `p`.
pub fn dirac() -> AElement {
    let mut d = AElement::zero();
    for (b, dual) in lie::CartanData::su21().p_dual_pairs {
        d.add_scaled(&AElement::pure(&UEnvElement::from_g(&b), &CliffElement::from_p(&dual)), &Rational::one());
    }
    d
}

/// `D^k = Σ b_i ⊗ α(d_i)` over the dual bases of `k`.
pub fn k_dirac() -> AElement {
    let mut d = AElement::zero();
    for (b, dual) in lie::CartanData::su21().k_dual_pairs {
        let a = lie::alpha(&dual).expect("dual basis lies in k");
        d.add_scaled(&AElement::pure(&UEnvElement::from_g(&b), &a), &Rational::one());
    }
    d
}

fn h_minus() -> UEnvElement {
    UEnvElement::gen(GGenerator::H1).sub(&UEnvElement::gen(GGenerator::H2))
}

fn h_plus() -> UEnvElement {
    UEnvElement::gen(GGenerator::H1).add(&UEnvElement::gen(GGenerator::H2))
}

/// `E1F1 + E2F2` in `C(p)`.
pub fn cliff_q() -> CliffElement {
    use CliffGen::*;
    cl(&[E1, F1]).add(&cl(&[E2, F2]))
}

/// The expanded display of `D^k`, built term by term.
pub fn k_dirac_expanded() -> AElement {
    use CliffGen as C;
    use GGenerator::*;
    let mut inner = AElement::gen_tensor(E, &cl(&[C::E2, C::F1])).scaled(&int(2));
    inner = inner.add(&AElement::pure(&h_minus(), &cl(&[C::E1, C::F1]).sub(&cl(&[C::E2, C::F2]))));
    inner = inner.add(&AElement::pure(&h_plus(), &cliff_q()).scaled(&int(3)));
    inner = inner.add(&AElement::gen_tensor(F, &cl(&[C::E1, C::F2])).scaled(&int(2)));
    inner.scaled(&ratio(-1, 4)).sub(&AElement::from_u(&h_plus()).scaled(&ratio(3, 2)))
}

/// `x_Δ = x ⊗ 1 + 1 ⊗ α(x)` for `x ∈ k`.
pub fn diagonal_embed(x: &GElement) -> Result<AElement, LieError> {
    let a = lie::alpha(x)?;
    Ok(AElement::from_u(&UEnvElement::from_g(x)).add(&AElement::from_cliff(&a)))
}

pub fn diagonal_gen(g: GGenerator) -> AElement {
    diagonal_embed(&GElement::gen(g)).expect("compact generator")
}

/// Named generators of the algebra `B`.
#[derive(Debug, Clone)]
pub struct BGeneratorSet {
    pub k_diagonal: Vec<(String, AElement)>,
    pub center: Vec<(String, AElement)>,
    pub cliff_invariants: Vec<(String, AElement)>,
    pub distinguished: Vec<(String, AElement)>,
}

impl BGeneratorSet {
    pub fn new() -> Self {
        let k_diagonal = GGenerator::K
            .iter()
            .map(|g| (alloc::format!("{g}_diag"), diagonal_gen(*g)))
            .collect();
        let center = alloc::vec![
            (String::from("Omega_k (x) 1"), AElement::from_u(&casimir_k())),
            (String::from("(h1 + h2) (x) 1"), AElement::from_u(&h_plus())),
        ];
        let pr = projections();
        let cliff_invariants = alloc::vec![
            (String::from("p1"), AElement::from_cliff(&pr.p1)),
            (String::from("p2"), AElement::from_cliff(&pr.p2)),
            (String::from("p3"), AElement::from_cliff(&pr.p3)),
        ];
        let distinguished = alloc::vec![
            (String::from("D"), dirac()),
            (String::from("D^k"), k_dirac()),
            (String::from("C"), c_plus()),
            (String::from("C-"), c_minus()),
            (String::from("(E1F1 + E2F2) (x) 1"), AElement::from_u(&u_q())),
            (String::from("1 (x) (E1F1 + E2F2)"), AElement::from_cliff(&cliff_q())),
        ];
        BGeneratorSet { k_diagonal, center, cliff_invariants, distinguished }
    }

    /// The K-invariant members (everything except the diagonal copy of `k`).
    pub fn invariants(&self) -> impl Iterator<Item = &(String, AElement)> {
        self.center.iter().chain(&self.cliff_invariants).chain(&self.distinguished)
    }
}

impl Default for BGeneratorSet {
    fn default() -> Self {
        Self::new()
    }
}

/// `E1F1 + E2F2` in `U(g)`.
pub fn u_q() -> UEnvElement {
    use GGenerator::*;
    UEnvElement::word(&[E1, F1]).add(&UEnvElement::word(&[E2, F2]))
}

/// Entries of the identity catalog for `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AIdentity {
    HalfDirac,
    Connection,
    HSum,
    AnticomF,
    AnticomE,
    Dx,
}

impl AIdentity {
    pub const ALL: [AIdentity; 6] =
        [AIdentity::HalfDirac, AIdentity::Connection, AIdentity::HSum, AIdentity::AnticomF, AIdentity::AnticomE, AIdentity::Dx];

    pub fn id(self) -> &'static str {
        match self {
            AIdentity::HalfDirac => "i",
            AIdentity::Connection => "ii",
            AIdentity::HSum => "iii",
            AIdentity::AnticomF => "iv",
            AIdentity::AnticomE => "v",
            AIdentity::Dx => "vi",
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            AIdentity::HalfDirac => "halfdirac",
            AIdentity::Connection => "connection",
            AIdentity::HSum => "h-sum",
            AIdentity::AnticomF => "anticom-F",
            AIdentity::AnticomE => "anticom-E",
            AIdentity::Dx => "dx",
        }
    }
}

fn compare(name: &str, lhs: &AElement, rhs: &AElement) -> Result<(), crate::check::CheckFailure> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(d) => Err(crate::check::CheckFailure::new(alloc::format!("{name}: {d}"))),
    }
}

pub fn verify_identity(id: AIdentity) -> CheckResult {
    use CliffGen as C;
    use GGenerator::*;
    let d = dirac();
    let cp = c_plus();
    let cm = c_minus();
    match id {
        AIdentity::HalfDirac => {
            let t = AElement::from_cliff(&cliff_q()).scaled(&ratio(-1, 2));
            compare("halfdirac", &d.commutator(&t), &cp.sub(&cm))?;
            compare("D = C + C-", &d, &cp.add(&cm))?;
            Ok(CheckStats::new(2))
        }
        AIdentity::Connection => {
            let mut inner = cp.mul(&cm).scaled(&int(2)).add(&cm.mul(&cp).scaled(&int(2)));
            inner = inner.add(&AElement::pure(&h_plus(), &cliff_q()).scaled(&int(3)));
            inner = inner.add(&AElement::gen_tensor(E, &cl(&[C::E2, C::F1])).scaled(&int(2)));
            inner = inner.add(&AElement::pure(&h_minus(), &cl(&[C::E1, C::F1]).sub(&cl(&[C::E2, C::F2]))));
            inner = inner.add(&AElement::gen_tensor(F, &cl(&[C::E1, C::F2])).scaled(&int(2)));
            compare("connection", &AElement::from_u(&u_q()), &inner.scaled(&ratio(-1, 4)))?;
            Ok(CheckStats::new(1))
        }
        AIdentity::HSum => {
            let hd = diagonal_embed(&GElement::from_terms(&[(H1, int(1)), (H2, int(1))])).expect("k");
            let corr = cliff_q().scaled(&ratio(-1, 2)).sub(&CliffElement::one());
            compare("h-sum", &AElement::from_u(&h_plus()), &hd.sub(&AElement::from_cliff(&corr)))?;
            Ok(CheckStats::new(1))
        }
        AIdentity::AnticomF => {
            let s = AElement::from_cliff(&cl(&[C::F1, C::F2]));
            let rhs = AElement::gen_tensor(F1, &cl(&[C::F2]))
                .sub(&AElement::gen_tensor(F2, &cl(&[C::F1])))
                .scaled(&int(-2));
            compare("anticom-F", &cm.commutator(&s), &rhs)?;
            Ok(CheckStats::new(1))
        }
        AIdentity::AnticomE => {
            let s = AElement::from_cliff(&cl(&[C::E1, C::E2]));
            let rhs = AElement::gen_tensor(E1, &cl(&[C::E2]))
                .sub(&AElement::gen_tensor(E2, &cl(&[C::E1])))
                .scaled(&int(-2));
            compare("anticom-E", &cp.commutator(&s), &rhs)?;
            Ok(CheckStats::new(1))
        }
        AIdentity::Dx => {
            for x in CliffGen::ALL {
                let one_x = AElement::from_cliff(&cl(&[x]));
                let rhs = AElement::from_u(&UEnvElement::gen(x.to_g())).scaled(&int(-2));
                compare(&alloc::format!("dx[{}]", x.name()), &d.anticommutator(&one_x), &rhs)?;
            }
            Ok(CheckStats::new(4))
        }
    }
}

/// Both displayed forms of `D^k` agree, and `D`, `D^k`, `D²` commute with `k_Δ`.
pub fn verify_k_dirac() -> CheckResult {
    let form1 = k_dirac();
    let form2 = k_dirac_expanded();
    compare("D^k forms", &form1, &form2)?;
    let hp = PBWMonomial::gen(GGenerator::H1);
    ensure!(
        form2.coeff(&hp, &CliffMonomial::ONE) == ratio(-3, 2),
        "coefficient of h1 (x) 1 in D^k is not -3/2"
    );
    let d = dirac();
    let d2 = d.mul(&d);
    let mut cases = 2;
    for g in GGenerator::K {
        let xd = diagonal_gen(g);
        for (name, y) in [("D", &d), ("D^k", &form1), ("D^2", &d2)] {
            ensure!(xd.commutator(y).is_zero(), "[{g}_diag, {name}] != 0");
            cases += 1;
        }
    }
    Ok(CheckStats::new(cases))
}

/// Every K-invariant generator of `B` commutes with `k_Δ`; `x ↦ x_Δ` is a Lie homomorphism.
pub fn verify_b_generators() -> CheckResult {
    let set = BGeneratorSet::new();
    let mut cases = 0;
    for (name, y) in set.invariants() {
        for (xname, x) in &set.k_diagonal {
            ensure!(x.commutator(y).is_zero(), "{name} does not commute with {xname}");
            cases += 1;
        }
    }
    for (i, &x) in GGenerator::K.iter().enumerate() {
        for &y in &GGenerator::K[i + 1..] {
            let lhs = diagonal_gen(x).commutator(&diagonal_gen(y));
            let rhs = diagonal_embed(&bracket_gen(x, y)).expect("k is closed");
            compare(&alloc::format!("[{x}_diag, {y}_diag]"), &lhs, &rhs)?;
            cases += 1;
        }
    }
    Ok(CheckStats::new(cases))
}

/// All catalog identities plus the `D^k` and invariance checks.
pub fn verify_algebra_suite() -> Vec<(String, CheckResult)> {
    let mut out: Vec<(String, CheckResult)> =
        AIdentity::ALL.iter().map(|id| (id.anchor().to_string(), verify_identity(*id))).collect();
    out.push((String::from("k-dirac"), verify_k_dirac()));
    out.push((String::from("b-invariance"), verify_b_generators()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use GGenerator::*;

    #[test]
    fn products() {
        let a = AElement::gen_tensor(E1, &CliffElement::one());
        let b = AElement::from_cliff(&cl(&[CliffGen::F1]));
        assert_eq!(a.mul(&b), AElement::gen_tensor(E1, &cl(&[CliffGen::F1])));
        let e = AElement::from_cliff(&cl(&[CliffGen::E1]));
        assert!(e.mul(&e).is_zero());
    }

    #[test]
    fn diagonal() {
        let h1 = diagonal_gen(H1);
        let expect = AElement::gen_tensor(H1, &CliffElement::one())
            .add(&AElement::from_cliff(&lie::alpha_gen(H1).unwrap()));
        assert_eq!(h1, expect);
        assert!(diagonal_embed(&GElement::zero()).unwrap().is_zero());
        assert!(diagonal_embed(&GElement::gen(E1)).is_err());
    }

    #[test]
    fn catalog() {
        for (name, r) in verify_algebra_suite() {
            assert!(r.is_ok(), "{name}: {:?}", r.err());
        }
    }
}
