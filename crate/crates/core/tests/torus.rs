use std::f64::consts::PI;
use std::sync::Arc;

use ncg_forge::linalg::{c, C64};
use ncg_forge::torus::forms::{epsilon, index_sets};
use ncg_forge::torus::gauge::{diagonal_monomial_unitary, random_monomial_unitary};
use ncg_forge::torus::theta::mode;
use ncg_forge::torus::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_theta(n: usize, rng: &mut ChaCha8Rng) -> Arc<Theta> {
    use rand::Rng;
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.random_range(-1.0..1.0);
            m[i * n + j] = v;
            m[j * n + i] = -v;
        }
    }
    Arc::new(Theta::new(n, m).unwrap())
}

fn connection(t: &Arc<Theta>, size: usize, rng: &mut ChaCha8Rng) -> Vec<MatNCPoly> {
    (0..t.n).map(|_| MatNCPoly::random_antihermitian(t, size, 3, 1, rng)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn associativity_and_trace(seed in 0u64..10_000, n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_theta(n, &mut rng);
        let a = NCPoly::random(&t, 5, 2, &mut rng);
        let b = NCPoly::random(&t, 5, 2, &mut rng);
        let d = NCPoly::random(&t, 5, 2, &mut rng);
        let l = a.mul(&b).unwrap().mul(&d).unwrap();
        let r = a.mul(&b.mul(&d).unwrap()).unwrap();
        prop_assert!(l.sub(&r).unwrap().max_abs() < 1e-12);
        let ab = a.mul(&b).unwrap().trace();
        let ba = b.mul(&a).unwrap().trace();
        prop_assert!((ab - ba).norm() < 1e-12);
        for mu in 0..n {
            prop_assert!(a.mul(&b).unwrap().derive(mu).unwrap().trace().norm() < 1e-12);
            // Leibniz rule
            let lhs = a.mul(&b).unwrap().derive(mu).unwrap();
            let rhs = a.derive(mu).unwrap().mul(&b).unwrap().add(&a.mul(&b.derive(mu).unwrap()).unwrap()).unwrap();
            prop_assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-10);
        }
        prop_assert!(a.star().star().sub(&a).unwrap().max_abs() == 0.0);
        // (ab)* = b*a*
        let s1 = a.mul(&b).unwrap().star();
        let s2 = b.star().mul(&a.star()).unwrap();
        prop_assert!(s1.sub(&s2).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn d_squared_and_hodge(seed in 0u64..10_000, n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_theta(n, &mut rng);
        for p in 0..=n {
            let w = NCForm::random(&t, 1, p, 2, 1, &mut rng).unwrap();
            prop_assert!(ext_d(&ext_d(&w).unwrap()).unwrap().max_abs() < 1e-12);
            let hh = hodge(&hodge(&w).unwrap()).unwrap();
            let sign = if (p * (n - p)) % 2 == 0 { 1.0 } else { -1.0 };
            for (k, m) in &w.comps {
                prop_assert!(hh.comps[k].sub(&m.scale(c(sign, 0.0))).unwrap().max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn closedness(seed in 0u64..10_000, n in 1usize..5) {
        // ε-contracted ∫ of d(ω) vanishes for any (n−1)-form
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_theta(n, &mut rng);
        let w = NCForm::random(&t, 2, n - 1, 3, 2, &mut rng).unwrap();
        let dw = ext_d(&w).unwrap();
        let top: Vec<usize> = (0..n).collect();
        prop_assert!(dw.component(&top).integrate().norm() < 1e-12);
    }

    #[test]
    fn wedge_leibniz(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_theta(4, &mut rng);
        let a = NCForm::random(&t, 1, 1, 2, 1, &mut rng).unwrap();
        let b = NCForm::random(&t, 1, 2, 2, 1, &mut rng).unwrap();
        // d(a∧b) = da∧b − a∧db for a 1-form a
        let lhs = ext_d(&wedge(&a, &b).unwrap()).unwrap();
        let minus = wedge(&a, &ext_d(&b).unwrap()).unwrap();
        let rhs = wedge(&ext_d(&a).unwrap(), &b).unwrap();
        for (k, m) in &lhs.comps {
            let r = rhs.comps[k].sub(&minus.comps[k]).unwrap();
            prop_assert!(m.sub(&r).unwrap().max_abs() < 1e-10);
        }
    }
}

#[test]
fn product_law_examples() {
    let t = Arc::new(Theta::two(1.0 / 3.0));
    let u = NCPoly::monomial(&t, &[1, 0], c(1.0, 0.0)).unwrap();
    let v = NCPoly::monomial(&t, &[0, 1], c(1.0, 0.0)).unwrap();
    let uv = u.mul(&v).unwrap();
    assert!((uv.coeff(&mode(&[1, 1]).unwrap()) - C64::from_polar(1.0, PI / 3.0)).norm() < 1e-15);
    let z = Arc::new(Theta::zero(2).unwrap());
    let u0 = NCPoly::monomial(&z, &[1, 0], c(1.0, 0.0)).unwrap();
    let v0 = NCPoly::monomial(&z, &[0, 1], c(1.0, 0.0)).unwrap();
    assert_eq!(u0.mul(&v0).unwrap().coeff(&mode(&[1, 1]).unwrap()), c(1.0, 0.0));
}

#[test]
fn hodge_is_involution_on_four_dim_two_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = random_theta(4, &mut rng);
    let w = NCForm::random(&t, 2, 2, 2, 1, &mut rng).unwrap();
    let hh = hodge(&hodge(&w).unwrap()).unwrap();
    for (k, m) in &w.comps {
        assert!(hh.comps[k].sub(m).unwrap().max_abs() == 0.0);
    }
    assert_eq!(index_sets(4, 2).len(), 6);
    assert_eq!(epsilon(&[1, 0, 2, 3]), -1.0);
}

#[test]
fn curvature_examples() {
    let t = Arc::new(Theta::two(0.3));
    let zero = vec![MatNCPoly::zero(&t, 1); 2];
    let f = curvature(&zero, None, 1.0).unwrap();
    assert_eq!(f[0][1].max_abs(), 0.0);
    // A_μ = c_μ U^p: the commutator term drops out
    let p = [2, -1];
    let cs = [c(0.0, 0.7), c(0.0, -0.4)];
    let a: Vec<MatNCPoly> = cs.iter().map(|z| MatNCPoly::scalar(&NCPoly::monomial(&t, &p, *z).unwrap())).collect();
    let f = curvature(&a, None, 2.5).unwrap();
    let want = c(0.0, 2.0 * PI) * (cs[1] * p[0] as f64 - cs[0] * p[1] as f64);
    let got = f[0][1].get(0, 0);
    assert_eq!(got.len(), 1);
    assert!((got.coeff(&mode(&p).unwrap()) - want).norm() < 1e-12);
    // non-projector rejected
    let bad = MatNCPoly::identity(&t, 1).scale(c(2.0, 0.0));
    assert!(curvature(&a, Some(&bad), 1.0).is_err());
}

#[test]
fn curvature_is_antihermitian_and_bianchi_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in [3, 4] {
        let t = random_theta(n, &mut rng);
        let a = connection(&t, 2, &mut rng);
        let f = curvature(&a, None, 0.9).unwrap();
        for mu in 0..n {
            for nu in 0..n {
                assert!(f[mu][nu].is_antihermitian(1e-12));
            }
        }
        assert!(bianchi_residual(&a, None, 0.9).unwrap() < 1e-10);
        assert!(ym_action(&a, None, 0.9).unwrap() >= 0.0);
    }
}

#[test]
fn bianchi_with_projector() {
    // e = u P u* with P a constant rank-one projector is an exact, non-constant projector
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let t = random_theta(3, &mut rng);
    let u = random_monomial_unitary(&t, 2, 1, &mut rng).unwrap();
    let p = ncg_forge::linalg::CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let pm = MatNCPoly::from_matrix(&t, &p, &NCPoly::one(&t)).unwrap();
    let e = u.mul3(&pm, &u.star()).unwrap();
    assert!(e.idempotency_defect().unwrap() < 1e-12);
    let a = connection(&t, 2, &mut rng);
    assert!(bianchi_residual(&a, Some(&e), 1.0).unwrap() < 1e-10);
    let f = curvature(&a, Some(&e), 1.0).unwrap();
    assert!(f[0][1].is_antihermitian(1e-10));
}

#[test]
fn eom_matches_first_variation() {
    // d/dt S(A + tδA) at t = 0 equals Σ_ν ∫tr(E^ν δA_ν)
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let t = random_theta(3, &mut rng);
    let a = connection(&t, 2, &mut rng);
    let da = connection(&t, 2, &mut rng);
    let g = 0.6;
    let e = eom_residual(&a, None, g).unwrap();
    let lin: f64 = e.iter().zip(&da).map(|(x, y)| x.mul(y).unwrap().integrate().re).sum();
    let h = 1e-4;
    let shift = |s: f64| -> Vec<MatNCPoly> { a.iter().zip(&da).map(|(x, y)| x.add(&y.scale(c(s, 0.0))).unwrap()).collect() };
    // S is quartic in t, so the five-point stencil is exact up to rounding
    let f = |s: f64| ym_action(&shift(s), None, g).unwrap();
    let deriv = (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
    assert!((deriv - lin).abs() < 1e-6 * lin.abs().max(1.0), "{deriv} vs {lin}");
}

#[test]
fn pure_gauge_solves_eom() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let t = random_theta(3, &mut rng);
    let u = random_monomial_unitary(&t, 2, 2, &mut rng).unwrap();
    let zero = vec![MatNCPoly::zero(&t, 2); 3];
    let a = gauge_transform(&zero, &u, 1.3).unwrap();
    assert!(eom_residual(&a, None, 1.3).unwrap().iter().all(|r| r.max_abs() < 1e-9));
    assert!(ym_action(&a, None, 1.3).unwrap().abs() < 1e-9);
}

#[test]
fn gauge_action_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let t = random_theta(3, &mut rng);
    let a = connection(&t, 2, &mut rng);
    let u = random_monomial_unitary(&t, 2, 1, &mut rng).unwrap();
    let v = random_monomial_unitary(&t, 2, 1, &mut rng).unwrap();
    let g = 0.8;
    let left = gauge_transform(&gauge_transform(&a, &u, g).unwrap(), &v, g).unwrap();
    let right = gauge_transform(&a, &v.mul(&u).unwrap(), g).unwrap();
    for (x, y) in left.iter().zip(&right) {
        assert!(x.sub(y).unwrap().max_abs() < 1e-10);
    }
    let id = MatNCPoly::identity(&t, 2);
    let same = gauge_transform(&a, &id, g).unwrap();
    for (x, y) in same.iter().zip(&a) {
        assert!(x.sub(y).unwrap().max_abs() < 1e-14);
    }
}

#[test]
fn ym_gauge_invariance_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..5 {
        let t = random_theta(4, &mut rng);
        let a = connection(&t, 2, &mut rng);
        let u = random_monomial_unitary(&t, 2, 1, &mut rng).unwrap().mul(&random_monomial_unitary(&t, 2, 1, &mut rng).unwrap()).unwrap();
        let s0 = ym_action(&a, None, 1.1).unwrap();
        let s1 = ym_action(&gauge_transform(&a, &u, 1.1).unwrap(), None, 1.1).unwrap();
        assert!((s0 - s1).abs() < 1e-8 * s0.max(1.0));
    }
}

#[test]
fn chern_simons() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = random_theta(3, &mut rng);
    let zero = vec![MatNCPoly::zero(&t, 2); 3];
    assert_eq!(cs_action(&zero, 1.0).unwrap(), 0.0);
    for _ in 0..5 {
        let a = connection(&t, 2, &mut rng);
        let u = random_monomial_unitary(&t, 2, 1, &mut rng).unwrap().mul(&random_monomial_unitary(&t, 2, 1, &mut rng).unwrap()).unwrap();
        let k = 2.0;
        let lhs = cs_action(&gauge_transform(&a, &u, 1.0).unwrap(), k).unwrap() - cs_action(&a, k).unwrap();
        assert!((lhs - cs_gauge_defect(&u, k).unwrap()).abs() < 1e-8);
    }
    let mono = diagonal_monomial_unitary(&t, &[vec![1, 0, 0], vec![2, -1, 3]], &[0.3, 1.0]).unwrap();
    assert_eq!(cs_gauge_defect(&mono, 1.0).unwrap(), 0.0);
    let t2 = Arc::new(Theta::two(0.1));
    assert!(cs_action(&[MatNCPoly::zero(&t2, 1), MatNCPoly::zero(&t2, 1)], 1.0).is_err());
}

#[test]
fn powers_rieffel_quality() {
    let a = powers_rieffel(1.0 / 3.0, 16).unwrap();
    assert_eq!(a.integral, 1.0 / 3.0);
    let k16 = powers_rieffel(0.4, 16).unwrap();
    let k32 = powers_rieffel(0.4, 32).unwrap();
    assert!(k32.defect < k16.defect);
    let ch = topological_charge(&MatNCPoly::scalar(&k32.e)).unwrap();
    assert!((ch.c[0][1] - 1.0).abs() < 1e-3);
    assert!(powers_rieffel(1.0, 16).is_err());
    assert!(powers_rieffel(0.5, 4).is_err());
}

#[test]
fn identity_has_no_charge() {
    let t = Arc::new(Theta::block4(0.3, 0.6));
    let ch = topological_charge(&MatNCPoly::identity(&t, 2)).unwrap();
    assert!(ch.c.iter().flatten().all(|&x| x == 0.0));
    assert_eq!(ch.q, Some(0.0));
    assert_eq!(ch.rank, 2.0);
}

#[test]
fn orientability() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 1..=5 {
        let t = random_theta(n, &mut rng);
        assert!(orientability_cycle(&t).unwrap().residual < 1e-12, "n = {n}");
    }
}

#[test]
fn symmetries() {
    let t = Theta::two(1.0 / 3.0);
    assert!(center_test(&[0, 0], &t).unwrap());
    assert!(center_test(&[3, 0], &t).unwrap());
    assert!(!center_test(&[1, 0], &t).unwrap());
    let s = Theta::two(0.123);
    for m in [vec![vec![1, 1], vec![0, 1]], vec![vec![3, 2], vec![1, 1]], vec![vec![0, 1], vec![-1, 0]]] {
        assert!(modular_compatible(&m, &s).unwrap());
    }
}
