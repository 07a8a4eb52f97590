//! The Dirac cohomology `W = H^D(X)` of a truncated module: the vectors `w_s`,
//! the kernel of `D`, the `k_Δ`-action on `W` and the scalars by which the
//! `K`-invariant generators of `B` act.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{c_minus, c_plus, cliff_q, diagonal_gen, dirac, k_dirac, u_q, AElement};
use crate::check::{CheckFailure, CheckResult, CheckStats};
use crate::clifford::projections;
use crate::ensure;
use crate::enveloping::{casimir_k, UEnvElement};
use crate::lie::{GGenerator, Weight};
use crate::linalg::{kernel_basis, Echelon, SparseMatrix, SparseVector};
use crate::module::{DiscreteSeriesModule, ModuleError, XSVector};
use crate::rational::{int, ratio, Rational};

/// Spin indices of `E1` and `E2` in the basis `(1, E1, E2, E1∧E2)`.
const SPIN_E1: u8 = 1;
const SPIN_E2: u8 = 2;

/// `dim W = p1 - p2`.
pub fn w_dim(p: &Weight) -> usize {
    crate::rational::to_i64(&(&p.q1 - &p.q2)).expect("integral span") as usize
}

/// `w_s = v_p^{(s)} ⊗ E1 - (p1 - p2 - (s - 1)) v_p^{(s-1)} ⊗ E2` for `1 ≤ s ≤ p1 - p2`.
pub fn w_vector(p: &Weight, s: usize) -> Result<XSVector, ModuleError> {
    let d = w_dim(p);
    if s == 0 || s > d {
        return Err(ModuleError::InvalidTarget(alloc::format!("w_{s} is outside 1..={d}")));
    }
    let mut v = XSVector::zero();
    v.add_term((0, 0, s as u32), SPIN_E1, &Rational::one());
    v.add_term((0, 0, s as u32 - 1), SPIN_E2, &-int((d - (s - 1)) as i64));
    Ok(v)
}

/// Coordinates of a vector in the span of the `w_s`, if it lies there.
pub fn w_coordinates(p: &Weight, v: &XSVector) -> Option<BTreeMap<usize, Rational>> {
    let d = w_dim(p);
    let mut coords = BTreeMap::new();
    let mut rest = v.clone();
    for s in 1..=d {
        let c = v.coords.get(&(0, 0, s as u32, SPIN_E1)).cloned().unwrap_or_else(Rational::zero);
        if !c.is_zero() {
            rest.add_scaled(&w_vector(p, s).expect("index in range"), &-c.clone());
            coords.insert(s, c);
        }
    }
    rest.is_zero().then_some(coords)
}

fn err(e: ModuleError) -> CheckFailure {
    CheckFailure::new(alloc::format!("{e}"))
}

/// Exact kernel of `D` on the span of basis vectors supported on interior K-types.
pub fn compute_kernel_d(module: &DiscreteSeriesModule) -> Result<Vec<XSVector>, ModuleError> {
    let w = module.window();
    let d = dirac();
    let mut domain = Vec::new();
    for (n, m) in w.labels().filter(|(n, m)| w.is_interior(*n, *m)) {
        for k in 0..=w.span(n, m) {
            for s in 0..4u8 {
                domain.push(((n, m, k), s));
            }
        }
    }
    let mut row_index: BTreeMap<(u32, u32, u32, u8), usize> = BTreeMap::new();
    let mut rows: Vec<SparseVector> = Vec::new();
    for (j, (key, s)) in domain.iter().enumerate() {
        let img = module.act_on_xs(&d, &XSVector::basis(*key, *s))?;
        for (t, c) in img.coords {
            let next = row_index.len();
            let r = *row_index.entry(t).or_insert(next);
            if r == rows.len() {
                rows.push(SparseVector::new());
            }
            rows[r].add_to(j, &c);
        }
    }
    let ker = kernel_basis(&SparseMatrix::from_rows(rows, domain.len()));
    Ok(ker
        .into_iter()
        .map(|x| {
            let mut v = XSVector::zero();
            for (j, c) in x.iter() {
                let (key, s) = domain[j];
                v.add_term(key, s, c);
            }
            v
        })
        .collect())
}

/// The interior kernel of `D` equals `span{w_1, …, w_{p1-p2}}`, and `D`, `C`, `C⁻` kill each `w_s`.
pub fn verify_kernel(module: &DiscreteSeriesModule) -> CheckResult {
    let p = module.p().clone();
    let dim = w_dim(&p);
    let ker = compute_kernel_d(module).map_err(err)?;
    ensure!(ker.len() == dim, "interior kernel of D has dimension {}, expected {dim}", ker.len());
    let mut index: BTreeMap<(u32, u32, u32, u8), usize> = BTreeMap::new();
    let mut to_vec = |v: &XSVector| {
        SparseVector::from_pairs(v.coords.iter().map(|(k, c)| {
            let l = index.len();
            (*index.entry(*k).or_insert(l), c.clone())
        }))
    };
    let mut ech = Echelon::new();
    for v in &ker {
        let _ = ech.insert(&to_vec(v));
    }
    let mut cases = 0;
    for s in 1..=dim {
        let ws = w_vector(&p, s).map_err(err)?;
        ensure!(ech.contains(&to_vec(&ws)), "w_{s} is not in the kernel of D");
        for (name, x) in [("D", dirac()), ("C", c_plus()), ("C-", c_minus())] {
            ensure!(module.act_on_xs(&x, &ws).map_err(err)?.is_zero(), "{name} w_{s} != 0");
        }
        cases += 4;
    }
    Ok(CheckStats::new(cases).with("kernel_dim", ker.len() as u64))
}

/// The `k_Δ`-action on `W`.
pub fn verify_dircoho_action(module: &DiscreteSeriesModule) -> CheckResult {
    let p = module.p().clone();
    let dim = w_dim(&p);
    let half = ratio(1, 2);
    let mut cases = 0;
    for s in 1..=dim {
        let ws = w_vector(&p, s).map_err(err)?;
        let si = int(s as i64);
        let act = |g: GGenerator| module.act_on_xs(&diagonal_gen(g), &ws).map_err(err);
        ensure!(act(GGenerator::H1)? == ws.scaled(&(&p.q1 - &si + &half)), "h1_diag w_{s} is wrong");
        ensure!(act(GGenerator::H2)? == ws.scaled(&(&p.q2 + &si - &half)), "h2_diag w_{s} is wrong");
        let e_expect = if s == 1 {
            XSVector::zero()
        } else {
            w_vector(&p, s - 1).map_err(err)?.scaled(&int(((s - 1) * (dim - (s - 1))) as i64))
        };
        ensure!(act(GGenerator::E)? == e_expect, "E_diag w_{s} is wrong");
        let f_expect = if s == dim { XSVector::zero() } else { w_vector(&p, s + 1).map_err(err)? };
        ensure!(act(GGenerator::F)? == f_expect, "F_diag w_{s} is wrong");
        cases += 4;
    }
    Ok(CheckStats::new(cases))
}

/// `k_Δ`-action on `W` in the `w_s` basis, read off the verified formulas.
pub fn k_delta_on_w(p: &Weight, g: GGenerator, s: usize) -> Option<(usize, Rational)> {
    let dim = w_dim(p);
    let si = int(s as i64);
    match g {
        GGenerator::H1 => Some((s, &p.q1 - &si + ratio(1, 2))),
        GGenerator::H2 => Some((s, &p.q2 + &si - ratio(1, 2))),
        GGenerator::E => (s > 1).then(|| (s - 1, int(((s - 1) * (dim - (s - 1))) as i64))),
        GGenerator::F => (s < dim).then(|| (s + 1, Rational::one())),
        _ => None,
    }
}

/// Scalars by which the `K`-invariant generators of `B` act on `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarActionTable {
    pub entries: Vec<(String, Rational)>,
}

impl ScalarActionTable {
    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

/// The generators whose scalar is reported, with the stated value where there is one.
pub fn scalar_generators(p: &Weight) -> Vec<(&'static str, AElement, Option<Rational>)> {
    let pr = projections();
    let hp = UEnvElement::gen(GGenerator::H1).add(&UEnvElement::gen(GGenerator::H2));
    alloc::vec![
        ("D", dirac(), Some(Rational::zero())),
        ("C", c_plus(), Some(Rational::zero())),
        ("C-", c_minus(), Some(Rational::zero())),
        ("(E1F1 + E2F2) (x) 1", AElement::from_u(&u_q()), Some(&p.q1 + &p.q2 * int(2) - int(1))),
        ("1 (x) (E1F1 + E2F2)", AElement::from_cliff(&cliff_q()), Some(int(-2))),
        ("p1", AElement::from_cliff(&pr.p1), Some(Rational::zero())),
        ("p2", AElement::from_cliff(&pr.p2), Some(Rational::one())),
        ("p3", AElement::from_cliff(&pr.p3), Some(Rational::zero())),
        ("Omega_k (x) 1", AElement::from_u(&casimir_k()), None),
        ("(h1 + h2) (x) 1", AElement::from_u(&hp), None),
        ("D^k", k_dirac(), None),
    ]
}

/// Applies each generator to every `w_s`; fails if the action is not scalar or
/// differs from a stated value.
pub fn compute_scalar_actions(module: &DiscreteSeriesModule) -> Result<ScalarActionTable, CheckFailure> {
    let p = module.p().clone();
    let dim = w_dim(&p);
    let mut entries = Vec::new();
    for (name, x, expect) in scalar_generators(&p) {
        let mut scalar: Option<Rational> = None;
        for s in 1..=dim {
            let ws = w_vector(&p, s).map_err(err)?;
            let img = module.act_on_xs(&x, &ws).map_err(err)?;
            let coords = w_coordinates(&p, &img).ok_or_else(|| CheckFailure::new(alloc::format!("{name} w_{s} leaves W")))?;
            let c = coords.get(&s).cloned().unwrap_or_else(Rational::zero);
            ensure!(coords.keys().all(|k| *k == s), "{name} w_{s} is not a multiple of w_{s}");
            if let Some(prev) = &scalar {
                ensure!(*prev == c, "{name} acts by different scalars on w_1 and w_{s}");
            }
            scalar = Some(c);
        }
        let value = scalar.unwrap_or_else(Rational::zero);
        if let Some(e) = expect {
            ensure!(value == e, "{name} acts by {}, expected {}", crate::rational::format(&value), crate::rational::format(&e));
        }
        entries.push((String::from(name), value));
    }
    Ok(ScalarActionTable { entries })
}

pub fn verify_scalar_actions(module: &DiscreteSeriesModule) -> CheckResult {
    let t = compute_scalar_actions(module)?;
    Ok(CheckStats::new(t.entries.len() * w_dim(module.p())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(n: u32) -> DiscreteSeriesModule {
        DiscreteSeriesModule::build(Weight::ints(1, -1), n, n).unwrap()
    }

    #[test]
    fn w_examples() {
        let p = Weight::ints(1, -1);
        let w1 = w_vector(&p, 1).unwrap();
        assert_eq!(w1.coords[&(0, 0, 1, 1)], int(1));
        assert_eq!(w1.coords[&(0, 0, 0, 2)], int(-2));
        let w2 = w_vector(&p, 2).unwrap();
        assert_eq!(w2.coords[&(0, 0, 1, 2)], int(-1));
        assert!(w_vector(&p, 0).is_err());
        assert!(w_vector(&p, 3).is_err());
    }

    #[test]
    fn cohomology_suite() {
        let m = module(2);
        assert_eq!(verify_kernel(&m).unwrap().count("kernel_dim"), Some(2));
        verify_dircoho_action(&m).unwrap();
        let t = compute_scalar_actions(&m).unwrap();
        assert_eq!(t.get("(E1F1 + E2F2) (x) 1"), Some(&int(-2)));
        assert!(t.get("D^k").is_some());
    }
}
