use std::f64::consts::PI;
use std::sync::Arc;

use ncg_forge::linalg::c;
use ncg_forge::qft::*;
use ncg_forge::torus::{NCPoly, Theta};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn theta3() -> Arc<Theta> {
    Arc::new(Theta::new(3, vec![0.0, 0.37, -0.21, -0.37, 0.0, 0.53, 0.21, -0.53, 0.0]).unwrap())
}

fn fields(t: &Arc<Theta>, seed: u64) -> (Vec<NCPoly>, NCPoly, NCPoly) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = (0..t.n)
        .map(|_| {
            let x = NCPoly::random(t, 4, 1, &mut rng);
            x.sub(&x.star()).unwrap().scale(c(0.5, 0.0))
        })
        .collect();
    let cf = NCPoly::random(t, 3, 1, &mut rng);
    let cb = NCPoly::random(t, 3, 1, &mut rng);
    (a, cf, cb)
}

#[test]
fn vertices_reconstruct_the_action() {
    let t = theta3();
    for seed in 0..5 {
        let (a, cf, cb) = fields(&t, seed);
        let r = reconstruction_check(&a, &cf, &cb, 0.8).unwrap();
        assert!(r.max_error < 1e-10, "{r:?}");
        assert!(r.cubic_action.abs() > 1e-3 && r.quartic_action.abs() > 1e-3, "{r:?}");
    }
}

#[test]
fn cubic_matches_closed_sum() {
    // S3 = 4πg Σ p_μ sin(πθ(q,r)) A_ν^p A_μ^q A_ν^r δ(p+q+r)
    let t = theta3();
    let (a, _, _) = fields(&t, 9);
    let g = 1.3;
    let mut s = c(0.0, 0.0);
    for mu in 0..3 {
        for nu in 0..3 {
            for (p, x) in &a[nu].terms {
                for (q, y) in &a[mu].terms {
                    let mut r = *p;
                    for k in 0..3 {
                        r[k] = -p[k] - q[k];
                    }
                    if let Some(z) = a[nu].terms.get(&r) {
                        s += x * y * z * (4.0 * PI * g * p[mu] as f64 * t.sin(q, &r));
                    }
                }
            }
        }
    }
    let pieces = action_pieces(&a, g).unwrap();
    assert!((s.re - pieces.cubic).abs() < 1e-10 && s.im.abs() < 1e-10);
}

fn perms4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for cc in 0..4 {
                for d in 0..4 {
                    let v = [a, b, cc, d];
                    let mut s = v.to_vec();
                    s.sort();
                    s.dedup();
                    if s.len() == 4 {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn quartic_closed_form_matches_permutation_sum() {
    // −∂⁴ of g² Σ sin(p,q) sin(r,s) A_μ^p A_ν^q A_μ^r A_ν^s, summed literally over slot assignments
    let t = Theta::new(4, vec![0.0, 0.3, 0.1, -0.2, -0.3, 0.0, 0.45, 0.05, -0.1, -0.45, 0.0, 0.25, 0.2, -0.05, -0.25, 0.0]).unwrap();
    let ps: [[i32; 4]; 4] = [[1, 0, -1, 2], [0, 1, 1, -1], [-2, 1, 0, 0], [1, -2, 0, -1]];
    let g = 0.7;
    for idx in [[0, 1, 0, 1], [0, 0, 1, 1], [2, 2, 2, 2], [0, 1, 2, 3], [3, 1, 1, 3]] {
        let mut want = 0.0;
        for s in perms4() {
            let m: Vec<_> = s.iter().map(|&k| ncg_forge::torus::theta::mode(&ps[k]).unwrap()).collect();
            let ten = if idx[s[0]] == idx[s[2]] && idx[s[1]] == idx[s[3]] { 1.0 } else { 0.0 };
            want -= g * g * t.sin(&m[0], &m[1]) * t.sin(&m[2], &m[3]) * ten;
        }
        let got = vertex4(&t, [&ps[0], &ps[1], &ps[2], &ps[3]], idx, g).unwrap();
        assert!((got - want).abs() < 1e-12, "{idx:?}: {got} vs {want}");
    }
}

#[test]
fn vertex3_bose_symmetric() {
    let t = Theta::new(4, vec![0.0, 0.3, 0.1, -0.2, -0.3, 0.0, 0.45, 0.05, -0.1, -0.45, 0.0, 0.25, 0.2, -0.05, -0.25, 0.0]).unwrap();
    let (p, q, r) = ([1, 0, -1, 2], [0, 1, 1, -1], [-1, -1, 0, -1]);
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in 0..4 {
                let v = vertex3(&t, &p, &q, &r, [mu, nu, rho], 1.0).unwrap();
                let w = vertex3(&t, &q, &p, &r, [nu, mu, rho], 1.0).unwrap();
                let x = vertex3(&t, &q, &r, &p, [nu, rho, mu], 1.0).unwrap();
                assert!((v - w).abs() < 1e-12 && (v - x).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn propagator_inverts_gauge_fixed_kernel() {
    // (δ − (1−α)pp/p²)(p²δ − (1 − 1/α)pp) = p² δ
    let p = [1, -2, 0, 3];
    let alpha = 0.6;
    let q: f64 = p.iter().map(|&x| (x * x) as f64).sum();
    for mu in 0..4 {
        for nu in 0..4 {
            let mut s = 0.0;
            for l in 0..4 {
                let d = gluon_propagator(&p, mu, l, alpha).unwrap() * q / (-4.0 * PI * PI);
                let k = if l == nu { q } else { 0.0 } - (1.0 - 1.0 / alpha) * (p[l] * p[nu]) as f64;
                s += d * k;
            }
            let want = if mu == nu { q } else { 0.0 };
            assert!((s - want).abs() < 1e-9);
        }
        // contraction with p gives −4π²α p_ν/p²
        let s: f64 = (0..4).map(|l| p[l] as f64 * gluon_propagator(&p, l, mu, alpha).unwrap()).sum();
        assert!((s + 4.0 * PI * PI * alpha * p[mu] as f64 / q).abs() < 1e-9);
    }
}

#[test]
fn loop_probe_grows() {
    let t = Theta::block4(0.5f64.sqrt(), 0.3);
    let r = loop_sum_probe(&t, &[1, 0, 0, 0], 2, 1.0).unwrap();
    assert!(r.partial_doubled >= r.partial && r.partial > 0.0);
    let z = loop_sum_probe(&Theta::zero(4).unwrap(), &[1, 0, 0, 0], 2, 1.0).unwrap();
    assert!(z.partial.is_finite() && z.partial == 0.0);
}

#[test]
fn rational_theta_sin_values_are_finite() {
    for nn in [2, 3, 5] {
        let t = Theta::new(3, vec![0.0, 1.0 / nn as f64, 0.0, -1.0 / nn as f64, 0.0, 2.0 / nn as f64, 0.0, -2.0 / nn as f64, 0.0]).unwrap();
        assert!(sin_value_set(&t, 3).len() <= 2 * nn);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sin_antisymmetry(p in prop::array::uniform4(-4i32..5), q in prop::array::uniform4(-4i32..5), mu in 0usize..4) {
        let t = Theta::block4(0.31, 0.77);
        let r: Vec<i32> = (0..4).map(|k| -p[k] - q[k]).collect();
        let v = ghost_vertex(&t, &p, &q, &r, mu, 1.0).unwrap();
        let w = ghost_vertex(&t, &q, &p, &r, mu, 1.0).unwrap();
        prop_assert!((v + w).abs() < 1e-9);
        let zero = Theta::zero(4).unwrap();
        prop_assert_eq!(vertex3(&zero, &p, &q, &r, [mu, mu, mu], 1.0).unwrap(), 0.0);
    }
}
