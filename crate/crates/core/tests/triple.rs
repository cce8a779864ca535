use ncg_forge::linalg::{c, commutator, frob, hermitian_eigenvalues, opnorm, CMatrix};
use ncg_forge::triple::axioms::{validate_axioms, ValidateOptions};
use ncg_forge::triple::diagram::{diagram_of, triple_from_diagram};
use ncg_forge::triple::random::{random_triple, RandomTripleOptions};
use ncg_forge::triple::{decompose_dirac, sm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn standard_model_passes_everything() {
    let r = validate_axioms(&sm::standard_model_default(), &ValidateOptions::default()).unwrap();
    for ch in &r.checks {
        assert!(ch.pass, "{} {}", ch.name, ch.residual);
    }
    assert!(r.all_pass);
    assert_eq!(r.intersection.det, 216);
}

#[test]
fn leptoquark_breaks_only_s0() {
    let t = sm::standard_model_leptoquark(&sm::SmMasses::default(), 0.3);
    let r = validate_axioms(&t, &ValidateOptions::default()).unwrap();
    assert!(r.axioms_pass());
    assert!(!r.check("s0_reality").unwrap().pass);
    assert!(!r.all_pass);
}

#[test]
fn commutative_real_structure_forces_zero_d() {
    let opts = ValidateOptions::default();
    for signs in [vec![1, -1], vec![1, -1, 1], vec![-1, 1, 1, -1]] {
        let n = signs.len();
        let zero = sm::commutative(&signs, None);
        assert!(validate_axioms(&zero, &opts).unwrap().axioms_pass());
        let mut d = CMatrix::zeros(n, n);
        d[(0, 1)] = c(0.7, 0.0);
        d[(1, 0)] = c(0.7, 0.0);
        let r = validate_axioms(&sm::commutative(&signs, Some(d)), &opts).unwrap();
        assert!(!r.axioms_pass(), "{signs:?}");
    }
    // even an imaginary coupling is caught
    let mut d = CMatrix::zeros(2, 2);
    d[(0, 1)] = c(0.0, 1e-3);
    d[(1, 0)] = c(0.0, -1e-3);
    assert!(!validate_axioms(&sm::commutative(&[1, -1], Some(d)), &opts).unwrap().axioms_pass());
}

#[test]
fn random_triples_decompose_and_rebuild() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let t = random_triple(&mut rng, &RandomTripleOptions::default());
        let d = t.assemble_dirac().unwrap();
        let (delta, horiz, back) = decompose_dirac(&t, &d, 0.0).unwrap();
        assert!(frob(&(&d - &delta - &horiz)) < 1e-12);
        assert_eq!(back.blocks.len(), t.blocks.len());
        for (k, m) in &t.blocks {
            assert!(frob(&(m - &back.blocks[k])) < 1e-10);
        }

        let g = diagram_of(&t);
        let again = triple_from_diagram(&t.algebra, &t.reps, &g, &t.blocks).unwrap();
        assert_eq!(again.mu, t.mu);
        assert_eq!(diagram_of(&again), g);
        assert!(frob(&(again.assemble_dirac().unwrap() - &d)) < 1e-12);
    }
}

fn opts() -> RandomTripleOptions {
    RandomTripleOptions { max_summands: 3, max_n: 2, max_mult: 2, link_prob: 0.8 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_triples_satisfy_axioms(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_triple(&mut rng, &opts());
        let r = validate_axioms(&t, &ValidateOptions { seed, ..Default::default() }).unwrap();
        for name in ["hermiticity", "chi_anticommutes_d", "j_commutes_d", "j_squared", "order_zero", "first_order"] {
            let ch = r.check(name).unwrap();
            prop_assert!(ch.pass, "{} {}", name, ch.residual);
        }
    }

    #[test]
    fn spectrum_is_symmetric(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_triple(&mut rng, &opts());
        let d = t.assemble_dirac().unwrap();
        let ev = hermitian_eigenvalues(&d);
        let n = ev.len();
        let s = opnorm(&d).max(1.0);
        for i in 0..n {
            prop_assert!((ev[i] + ev[n - 1 - i]).abs() < 1e-9 * s);
        }
    }

    #[test]
    fn first_order_on_random_pairs(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_triple(&mut rng, &opts());
        let rep = t.representation().unwrap();
        let d = t.assemble_dirac().unwrap();
        let s = opnorm(&d).max(1.0);
        for _ in 0..20 {
            let a = rep.pi(&t.reps, &t.algebra.random_element(&mut rng));
            let b = rep.pi_opp(&t.reps, &t.algebra.random_element(&mut rng));
            let sc = opnorm(&a).max(1.0) * opnorm(&b).max(1.0) * s;
            prop_assert!(frob(&commutator(&commutator(&d, &a), &b)) < 1e-9 * sc);
        }
    }
}
