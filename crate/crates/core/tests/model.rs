use std::f64::consts::PI;

use nalgebra::DVector;
use ncg_forge::linalg::{c, randn, random_complex, CMatrix};
use ncg_forge::model::abelian::{abelian_sector, charge_matrix};
use ncg_forge::model::anomaly::{anomaly_check, linear_constraint_matrix};
use ncg_forge::model::constants::SpectralConstants;
use ncg_forge::model::higgs::{field_space, gauge_transform, yukawa_operator};
use ncg_forge::model::intersection::{intersection_form, sm_mu_with_right_neutrinos};
use ncg_forge::model::potential::scalar_potential;
use ncg_forge::model::report::{build_model, coupling_constants};
use ncg_forge::model::ssb::mass_bound_check;
use ncg_forge::triple::random::{random_triple, RandomTripleOptions};
use ncg_forge::triple::{sm, AlgebraSpec, Field, FiniteTriple, Rep};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn sm_intersection_form_is_exact() {
    let f = intersection_form(&sm::sm_algebra(), &sm::sm_reps(), &sm::sm_mu());
    assert_eq!(f.matrix, vec![vec![6, -6, 6], vec![-6, 0, -6], vec![6, -6, 0]]);
    assert_eq!(f.det, 216);
}

#[test]
fn right_neutrinos_degenerate_only_at_three_two() {
    for n_gen in 1..=5 {
        for eps in 1..=2 {
            let mu = sm_mu_with_right_neutrinos(n_gen, eps);
            let det = intersection_form(&sm::sm_algebra(), &sm::sm_reps(), &mu).det;
            assert_eq!(det == 0, (n_gen, eps) == (3, 2), "n_gen {n_gen} eps {eps} det {det}");
        }
    }
}

#[test]
fn sm_couplings_and_abelian_sector() {
    let g = coupling_constants(&sm::sm_algebra(), &sm::sm_reps(), &sm::sm_mu(), 4, 1.3, 2.0).unwrap();
    assert_eq!(g.len(), 2);
    assert_eq!(g[0].g, g[1].g);
    let an = anomaly_check(&sm::sm_algebra(), &sm::sm_reps(), &sm::sm_nu(), None);
    let lin = linear_constraint_matrix(&an);
    let a = abelian_sector(&sm::sm_algebra(), &sm::sm_reps(), &sm::sm_mu(), None, Some(&lin)).unwrap();
    assert_eq!(a.n, 2);
    assert_eq!(a.n_prime, 1);
    assert_eq!(a.parameter_count, 1);
}

#[test]
fn sm_model_report() {
    let k = SpectralConstants::new(1.0, 0.5, 1.0, 1.0, 4.0, 4).unwrap();
    let r = build_model(&sm::standard_model_default(), &k, Some(&[3.0, 1.0])).unwrap();
    assert!(r.anomaly.as_ref().unwrap().anomaly_free);
    assert!(r.mass_bound.holds);
    assert_eq!(r.fermions.particle_dim(), Some(45));
    let bad = build_model(&sm::standard_model_default(), &k, Some(&[-3.0, 1.0])).unwrap();
    assert!(!bad.anomaly.unwrap().anomaly_free);
}

fn random_masses(rng: &mut ChaCha8Rng) -> sm::SmMasses {
    let mut draw = || [0; 3].map(|_| rng.random_range(0.01..5.0));
    let (lepton, up, down) = (draw(), draw(), draw());
    sm::SmMasses { lepton, up, down, ckm: [0.3, 0.05, 0.1, 0.7] }
}

#[test]
fn sm_quartic_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let m = random_masses(&mut rng);
        let f4 = rng.random_range(0.5..2.0);
        let k = SpectralConstants::new(1.0, 1.0, f4, 1.0, 4.0, 4).unwrap();
        let (fs, p) = scalar_potential(&sm::standard_model(&m), &k).unwrap();
        let sq = |x: [f64; 3]| x.iter().map(|v| v * v).sum::<f64>();
        let q4 = |x: [f64; 3]| x.iter().map(|v| v.powi(4)).sum::<f64>();
        let l = sq(m.lepton) + 3.0 * sq(m.up) + 3.0 * sq(m.down);
        let q = q4(m.lepton) + 3.0 * q4(m.up) + 3.0 * q4(m.down);
        let want = PI * PI * q / (2.0 * f4 * l * l);
        let th = DVector::from_fn(fs.dim(), |_, _| randn(&mut rng));
        let got = p.quartic_value(&fs.from_theta(&th)) / th.norm_squared().powi(2);
        assert!((got - want).abs() <= 1e-9 * want, "{got} vs {want}");
    }
}

#[test]
fn sm_cross_invariant_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let (a, b) = (random_complex(&mut rng), random_complex(&mut rng));
        let phi = CMatrix::from_column_slice(2, 1, &[a, b]);
        let tilde = CMatrix::from_column_slice(2, 1, &[b.conj(), -a.conj()]);
        // tr[Φ T* Φ T*] = (T*Φ)² by cyclicity
        let inner = (tilde.adjoint() * &phi)[(0, 0)];
        assert_eq!(inner * inner, c(0.0, 0.0));
    }
}

#[test]
fn symmetric_epsilon_is_anomaly_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let o = RandomTripleOptions { max_summands: 4, max_n: 4, max_mult: 3, link_prob: 0.5 };
    for _ in 0..50 {
        let t = random_triple(&mut rng, &o);
        let n = t.nrep();
        let mut eps = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.random_range(-3..=3);
                eps[i][j] = v;
                eps[j][i] = v;
            }
        }
        let ns = charge_matrix(&t.algebra, &t.reps).1.ncols();
        let b: Vec<f64> = (0..ns).map(|_| randn(&mut rng)).collect();
        let r = anomaly_check(&t.algebra, &t.reps, &eps, Some(&b));
        assert!(r.anomaly_free, "{:?} {:?} {r:?}", t.algebra, eps);
    }
}

fn linked(rng: &mut ChaCha8Rng, o: &RandomTripleOptions) -> FiniteTriple {
    loop {
        let t = random_triple(rng, o);
        if !t.blocks.is_empty() {
            return t;
        }
    }
}

#[test]
fn random_vacua_respect_mass_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let o = RandomTripleOptions::default();
    for _ in 0..50 {
        let t = linked(&mut rng, &o);
        let fs = field_space(&t, 1.0);
        let rep = t.representation().unwrap();
        let v = fs.from_theta(&DVector::from_fn(fs.dim(), |_, _| randn(&mut rng)));
        let vac = yukawa_operator(&t, &rep, &fs, &v);
        let r = mass_bound_check(&t, Some(&vac), None).unwrap();
        assert!(r.m_b_max.powi(2) <= 6.0 * r.m_f_max.powi(2) * (1.0 + 1e-9) + 1e-9, "{r:?}");
        assert!(r.holds);
    }
}

#[test]
fn potential_is_gauge_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let k = SpectralConstants::new(1.0, 1.0, 1.0, 1.0, 4.0, 4).unwrap();
    let mut cases = vec![sm::standard_model_default()];
    for _ in 0..10 {
        cases.push(linked(&mut rng, &RandomTripleOptions::default()));
    }
    for t in &cases {
        let (fs, p) = scalar_potential(t, &k).unwrap();
        for _ in 0..10 {
            let v = fs.from_theta(&DVector::from_fn(fs.dim(), |_, _| randn(&mut rng)));
            let u = t.algebra.random_unitary(&mut rng);
            let (a, b) = (p.potential(&v), p.potential(&gauge_transform(t, &fs, &v, &u)));
            assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{a} vs {b}");
        }
    }
}

#[test]
fn toy_link_saturates_six() {
    let alg = AlgebraSpec::new(vec![(Field::C, 1); 3]).unwrap();
    let reps = (0..3).map(|s| Rep { summand: s, conj: false }).collect();
    let mu = vec![vec![0, 0, 1], vec![0, 0, -1], vec![1, -1, 0]];
    let mut t = FiniteTriple::new(alg, Some(reps), mu).unwrap();
    t.set_block(0, 1, 2, CMatrix::from_element(1, 1, c(2.5, 0.0))).unwrap();
    let r = mass_bound_check(&t, None, None).unwrap();
    assert!((r.ratio - 6.0).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_rotation_leaves_potential_unchanged(seed in 0u64..100_000) {
        // rotating Yukawa blocks by unitaries on the multiplicity spaces is a change of fermion basis
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_masses(&mut rng);
        let k = SpectralConstants::new(1.0, 1.0, 1.0, 1.0, 4.0, 4).unwrap();
        let (fs, p) = scalar_potential(&sm::standard_model(&m), &k).unwrap();
        let mut m2 = m.clone();
        m2.ckm = [rng.random_range(0.0..1.0), rng.random_range(0.0..0.3), rng.random_range(0.0..1.0), rng.random_range(0.0..6.0)];
        let (fs2, p2) = scalar_potential(&sm::standard_model(&m2), &k).unwrap();
        prop_assert_eq!(fs.dim(), fs2.dim());
        let th = DVector::from_fn(fs.dim(), |_, _| randn(&mut rng));
        let (a, b) = (p.potential(&fs.from_theta(&th)), p2.potential(&fs2.from_theta(&th)));
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }
}
