use std::sync::OnceLock;

use bialg::cohochschild::{d_tensor, invariant_basis};
use bialg::envelope::{AlgebraTag, Envelope, PBWElement};
use bialg::{
    cocycle_defect, coproduct_insert, g_action, gauge_phi, gauge_rho, lift_associator, lift_twist,
    pentagon_defect, poisson_bracket, star, twist_class, Algebra, RKind, RMat, Rational, Scalar, Tensor,
};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Small-coefficient polynomial in one slot, degrees in [lo, hi].
fn poly(dim: usize, lo: u8, hi: u8, trunc: usize) -> impl Strategy<Value = Tensor> {
    prop::collection::vec((prop::collection::vec(0u8..=hi, dim), -3i64..=3), 0..6).prop_map(move |terms| {
        let terms = terms.into_iter().filter(|(k, _)| {
            let d: u8 = k.iter().sum();
            (lo..=hi).contains(&d)
        });
        Tensor::from_terms(dim, 1, trunc, terms.map(|(k, c)| (k, q(c))).collect::<Vec<_>>())
    })
}

/// Two-slot tensor with both slots of positive degree.
fn two_slot(dim: usize, trunc: usize) -> impl Strategy<Value = Tensor> {
    prop::collection::vec((prop::collection::vec(0u8..=2, 2 * dim), -3i64..=3), 0..5).prop_map(move |terms| {
        let terms = terms.into_iter().filter(|(k, _)| {
            let (a, b) = k.split_at(dim);
            let (da, db) = (a.iter().sum::<u8>(), b.iter().sum::<u8>());
            da > 0 && db > 0 && (da + db) as usize <= trunc
        });
        Tensor::from_terms(dim, 2, trunc, terms.map(|(k, c)| (k, q(c))).collect::<Vec<_>>())
    })
}

fn sl2() -> Algebra {
    Algebra::sl2()
}

fn sl2_r() -> RMat {
    RMat::from_triples(3, &[(0, 2, Rational::ratio(1, 2)), (2, 0, Rational::ratio(-1, 2))], RKind::AntisymmetricCoboundary)
        .unwrap()
}

/// φ, ρ for sl2 at N = 5, computed once.
fn sl2_lift() -> &'static (Tensor, Tensor) {
    static LIFT: OnceLock<(Tensor, Tensor)> = OnceLock::new();
    LIFT.get_or_init(|| {
        let g = sl2();
        let z = twist_class(&g, &sl2_r()).unwrap();
        let phi = lift_associator(&g, &z, 5).unwrap();
        let rho = lift_twist(&g, &sl2_r(), &phi, 5).unwrap();
        (phi, rho)
    })
}

fn invariant_sigma(coeffs: &[i64]) -> Tensor {
    let g = sl2();
    let mut sigma = Tensor::zero(3, 2, 5);
    let basis: Vec<Tensor> = (2..=5).flat_map(|d| invariant_basis(&g, 2, d)).collect();
    for (b, c) in basis.iter().zip(coeffs) {
        sigma = &sigma + &b.with_trunc(5).scale(&q(*c));
    }
    sigma
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn poisson_jacobi(f in poly(3, 0, 2, 6), g in poly(3, 0, 2, 6), h in poly(3, 0, 2, 6)) {
        let alg = sl2();
        let br = |a: &Tensor, b: &Tensor| poisson_bracket(&alg, a, b).unwrap();
        let sum = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn poisson_leibniz(f in poly(3, 0, 2, 6), g in poly(3, 0, 2, 6), h in poly(3, 0, 2, 6)) {
        let alg = sl2();
        let lhs = poisson_bracket(&alg, &f, &(&g * &h)).unwrap();
        let rhs = &(&poisson_bracket(&alg, &f, &g).unwrap() * &h) + &(&g * &poisson_bracket(&alg, &f, &h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_associative(f in poly(3, 2, 3, 5), g in poly(3, 2, 3, 5), h in poly(3, 2, 3, 5)) {
        let alg = sl2();
        let l = star(&alg, &star(&alg, &f, &g).unwrap(), &h).unwrap();
        let r = star(&alg, &f, &star(&alg, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn star_inverse(f in poly(3, 2, 4, 5)) {
        let alg = sl2();
        prop_assert!(star(&alg, &f, &-&f).unwrap().is_zero());
    }

    #[test]
    fn d_squared_vanishes(c in two_slot(2, 5)) {
        prop_assert!(d_tensor(&d_tensor(&c)).is_zero());
    }

    #[test]
    fn g_action_is_derivation(f in poly(3, 0, 2, 5), g in poly(3, 0, 2, 5), i in 0usize..3) {
        let alg = sl2();
        let lhs = g_action(&alg, i, &(&f * &g)).unwrap();
        let rhs = &(&g_action(&alg, i, &f).unwrap() * &g) + &(&f * &g_action(&alg, i, &g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_coassociative(f in poly(2, 0, 3, 4)) {
        let d = coproduct_insert(&f, &[&[0, 1]], 2).unwrap();
        let left = coproduct_insert(&d, &[&[0, 1], &[2]], 3).unwrap();
        let right = coproduct_insert(&d, &[&[0], &[1, 2]], 3).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, coproduct_insert(&f, &[&[0, 1, 2]], 3).unwrap());
    }

    #[test]
    fn pbw_associative(
        a in prop::collection::vec((prop::collection::vec(0usize..3, 0..3), -2i64..=2), 1..4),
        b in prop::collection::vec((prop::collection::vec(0usize..3, 0..3), -2i64..=2), 1..4),
        c in prop::collection::vec((prop::collection::vec(0usize..3, 0..3), -2i64..=2), 1..4),
    ) {
        let u = Envelope::new(AlgebraTag::G, sl2());
        let elt = |terms: Vec<(Vec<usize>, i64)>| {
            terms.into_iter().fold(PBWElement::zero(AlgebraTag::G), |acc, (w, k)| {
                let m = w.iter().fold(u.one(), |m, &i| u.product(&m, &u.generator(i)).unwrap());
                &acc + &m.scale(&q(k))
            })
        };
        let (x, y, z) = (elt(a), elt(b), elt(c));
        let l = u.product(&u.product(&x, &y).unwrap(), &z).unwrap();
        let r = u.product(&x, &u.product(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn gauge_phi_keeps_pentagon(coeffs in prop::collection::vec(-2i64..=2, 3)) {
        let alg = sl2();
        let (phi, _) = sl2_lift();
        let moved = gauge_phi(&alg, &invariant_sigma(&coeffs), phi).unwrap();
        prop_assert!(pentagon_defect(&alg, &moved).unwrap().is_zero());
    }

    #[test]
    fn gauge_rho_keeps_cocycle(lambda in poly(3, 2, 4, 5)) {
        let alg = sl2();
        let (phi, rho) = sl2_lift();
        let moved = gauge_rho(&alg, &lambda, rho).unwrap();
        prop_assert!(cocycle_defect(&alg, &moved, phi).unwrap().is_zero());
        prop_assert_eq!(moved.multidegree_part(&[1, 1]), rho.multidegree_part(&[1, 1]));
    }
}

#[test]
fn sigma_gauge_moves_twist_along() {
    // σ·φ pairs with ρ ⋆ (−σ)
    let alg = sl2();
    let (phi, rho) = sl2_lift();
    let sigma = invariant_sigma(&[1, -1, 2]);
    let phi2 = gauge_phi(&alg, &sigma, phi).unwrap();
    let rho2 = star(&alg, rho, &-&sigma).unwrap();
    assert!(cocycle_defect(&alg, &rho2, &phi2).unwrap().is_zero());
}
