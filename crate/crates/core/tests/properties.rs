use std::sync::OnceLock;

use proptest::prelude::*;

use su21_core::algebra::AElement;
use su21_core::clifford::{spin_apply, CliffElement, CliffMonomial, SpinVector};
use su21_core::enveloping::{u_mul, PBWMonomial, UEnvElement};
use su21_core::induction::{Phi, Reducer, TensorWord};
use su21_core::lie::{bracket, GElement, GGenerator, Weight};
use su21_core::linalg::{kernel_basis, rank, solve_linear, SparseMatrix, SparseVector};
use su21_core::module::DiscreteSeriesModule;
use su21_core::rational::{format, int, parse, ratio};
use su21_core::Rational;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn matrix() -> impl Strategy<Value = SparseMatrix> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            let rows: Vec<SparseVector> =
                rows.iter().map(|row| SparseVector::from_dense(&row.iter().map(|x| int(*x)).collect::<Vec<_>>())).collect();
            SparseMatrix::from_rows(rows, c)
        })
    })
}

fn u_element(max_deg: u32) -> impl Strategy<Value = UEnvElement> {
    let monos = PBWMonomial::all_up_to(max_deg);
    let n = monos.len();
    prop::collection::vec((0..n, small_rational()), 1..4).prop_map(move |ts| {
        let mut u = UEnvElement::zero();
        for (i, c) in ts {
            u.add_term(monos[i], &c);
        }
        u
    })
}

fn cliff_element() -> impl Strategy<Value = CliffElement> {
    prop::collection::vec((0u8..16, small_rational()), 1..4).prop_map(|ts| {
        let mut c = CliffElement::zero();
        for (m, x) in ts {
            c.add_term(CliffMonomial::new(m), &x);
        }
        c
    })
}

fn g_element() -> impl Strategy<Value = GElement> {
    prop::collection::vec(-3i64..=3, 8).prop_map(|cs| {
        let mut x = GElement::zero();
        for (g, c) in GGenerator::ALL.iter().zip(cs) {
            x.add_term(*g, &int(c));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), m.ncols);
        for v in &k {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solutions_satisfy_system(m in matrix(), x in prop::collection::vec(-3i64..=3, 6)) {
        let x = SparseVector::from_dense(&x[..m.ncols].iter().map(|v| int(*v)).collect::<Vec<_>>());
        let b = m.mul_vec(&x);
        let y = solve_linear(&m, &b).expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn rational_text_round_trip(r in small_rational()) {
        prop_assert_eq!(parse(&format(&r)).unwrap(), r);
    }

    #[test]
    fn jacobi(x in g_element(), y in g_element(), z in g_element()) {
        let t = bracket(&x, &bracket(&y, &z));
        let t = t.add(&bracket(&y, &bracket(&z, &x)));
        let t = t.add(&bracket(&z, &bracket(&x, &y)));
        prop_assert!(t.is_zero());
    }

    #[test]
    fn enveloping_associative(a in u_element(2), b in u_element(2), c in u_element(1)) {
        prop_assert_eq!(u_mul(&u_mul(&a, &b), &c), u_mul(&a, &u_mul(&b, &c)));
    }

    #[test]
    fn enveloping_bracket_is_lie_bracket(x in g_element(), y in g_element()) {
        let ux = UEnvElement::from_g(&x);
        let uy = UEnvElement::from_g(&y);
        prop_assert_eq!(ux.commutator(&uy), UEnvElement::from_g(&bracket(&x, &y)));
    }

    #[test]
    fn clifford_associative_and_spin_module(a in cliff_element(), b in cliff_element(), c in cliff_element(), s in 0usize..4) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        let v = SpinVector::basis(s);
        prop_assert_eq!(spin_apply(&a.mul(&b), &v), spin_apply(&a, &spin_apply(&b, &v)));
    }

    #[test]
    fn algebra_associative(u1 in u_element(1), u2 in u_element(1), u3 in u_element(1),
                           c1 in cliff_element(), c2 in cliff_element(), c3 in cliff_element()) {
        let a = AElement::pure(&u1, &c1);
        let b = AElement::pure(&u2, &c2);
        let c = AElement::pure(&u3, &c3);
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}

fn module() -> &'static DiscreteSeriesModule {
    static M: OnceLock<DiscreteSeriesModule> = OnceLock::new();
    M.get_or_init(|| DiscreteSeriesModule::build(Weight::ints(1, -1), 4, 4).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_is_phi_sound(ts in prop::collection::vec((0usize..165, 0u8..16, 1usize..=2, small_rational()), 1..4)) {
        let module = module();
        let monos = PBWMonomial::all_up_to(3);
        let mut t = TensorWord::zero();
        for (i, c, s, x) in ts {
            t.add_term(monos[i], CliffMonomial::new(c), s, &x);
        }
        let mut phi = Phi::new(module).unwrap();
        let mut reducer = Reducer::new(Weight::ints(1, -1), 3);
        let r = phi.certify(&mut reducer, &t).unwrap();
        // reduction is linear: reducing again with a warm cache gives the same combination
        prop_assert_eq!(reducer.reduce_mod_z(&t).unwrap().combo, r.combo);
    }
}
