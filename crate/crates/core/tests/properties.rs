use proptest::prelude::*;
use wstar_core::groupoid::{compose, involution, GroupoidElement};
use wstar_core::lattice::{phi, phi_inv};
use wstar_core::wstar::{partial_inverse, polar_decompose, verify_inverse_characterization};
use wstar_core::{Algebra, Cx, Operator, Projection};

const N: usize = 4;

fn operator(entries: &[(f64, f64)]) -> Operator<f64> {
    Operator::from_fn(N, |i, j| {
        let (re, im) = entries[i * N + j];
        Cx::new(re, im)
    })
}

/// A rank-`k` operator `a b*` built from `N x k` blocks taken out of `entries`.
fn low_rank(entries: &[(f64, f64)], k: usize) -> Operator<f64> {
    let a = operator(entries);
    let mut cut = Operator::zeros(N);
    for i in 0..k {
        cut = cut + Operator::unit(N, i, i);
    }
    &a * &cut * &a.adjoint()
}

fn entries() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), N * N)
}

fn projection_from(alg: &Algebra<f64>, x: &Operator<f64>) -> Option<Projection<f64>> {
    polar_decompose(alg, x).ok().map(|d| d.l_support)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_reconstructs(e in entries(), k in 1usize..=N) {
        let alg = Algebra::with_defaults(N);
        let x = low_rank(&e, k);
        if let Ok(d) = polar_decompose(&alg, &x) {
            let back = &d.u * &d.modulus;
            prop_assert!(back.dist(&x) <= 1e-8 * (1.0 + x.norm()));
            let uu = &d.u.adjoint() * &d.u;
            prop_assert!(uu.dist(d.r_support.matrix()) <= 1e-8);
        }
    }

    #[test]
    fn partial_inverse_is_characterized(e in entries(), k in 1usize..=N) {
        let alg = Algebra::with_defaults(N);
        let x = low_rank(&e, k);
        if let Ok(y) = partial_inverse(&alg, &x) {
            prop_assert!(verify_inverse_characterization(&alg, &x, &y));
        }
    }

    #[test]
    fn chart_round_trip(e in entries(), f in entries()) {
        let alg = Algebra::with_defaults(N);
        let (Some(p), Some(q)) = (projection_from(&alg, &low_rank(&e, 2)), projection_from(&alg, &low_rank(&f, 2))) else {
            return Ok(());
        };
        if let Ok(pt) = phi(&alg, &p, &q) {
            let back = phi_inv(&alg, &pt).unwrap();
            prop_assert!(back.dist(&q) <= 1e-6);
        }
    }

    #[test]
    fn units_are_idempotent_and_self_involutive(e in entries()) {
        let alg = Algebra::with_defaults(N);
        let Some(p) = projection_from(&alg, &low_rank(&e, 2)) else { return Ok(()) };
        let unit = GroupoidElement::unit(&p);
        let twice = compose(&alg, &unit, &unit).unwrap();
        prop_assert!(twice.op().dist(p.matrix()) <= 1e-10);
        let j = involution(&alg, &unit).unwrap();
        prop_assert!(j.op().dist(p.matrix()) <= 1e-8);
    }
}

#[test]
fn single_precision_alias_works() {
    let alg = Algebra::<f32>::with_defaults(3);
    let x = Operator::<f32>::from_real_diag(&[2.0, 0.5, 0.0]);
    let d = polar_decompose(&alg, &x).unwrap();
    assert_eq!(d.l_support.rank(), 2);
    assert!((&d.u * &d.modulus).dist(&x) < 1e-5);
}

#[test]
fn operators_and_projections_serialize() {
    let p = Projection::<f64>::canonical(3, 1);
    let json = serde_json::to_string(&p).unwrap();
    let back: Projection<f64> = serde_json::from_str(&json).unwrap();
    assert_eq!(back.rank(), 1);
    assert!(back.dist(&p) < 1e-15);

    let x = Operator::<f64>::from_rows(&[&[(1.0, 2.0), (0.0, -1.0)], &[(3.0, 0.0), (0.5, 0.5)]]);
    let back: Operator<f64> = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
    assert_eq!(back, x);
}

#[test]
fn rank_deficient_input_is_handled() {
    let alg = Algebra::with_defaults(N);
    let zero = Operator::<f64>::zeros(N);
    let d = polar_decompose(&alg, &zero).unwrap();
    assert_eq!(d.l_support.rank(), 0);
}
