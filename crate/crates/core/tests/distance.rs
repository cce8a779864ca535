use ncg_forge::distance::*;
use ncg_forge::linalg::{c, C64};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn num(p: &DistanceProblem, i: usize, j: usize) -> f64 {
    distance_numeric(p, i, j, TOL).unwrap().value
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn three_point_closed_form_matches_solver() {
    for &(a, b, cc) in &[(1.0, 1.0, 1.0), (0.3, 2.0, 1.1), (5.0, 0.1, 0.7), (1.0, 0.0, 2.0)] {
        let p = DistanceProblem::from_links(3, &[(0, 1, a), (0, 2, b), (1, 2, cc)]).unwrap();
        let (d12, d13, d23) = distance_three_point(a, b, cc).unwrap();
        assert!(rel(num(&p, 0, 1), d12) < 1e-6);
        assert!(rel(num(&p, 0, 2), d13) < 1e-6);
        assert!(rel(num(&p, 1, 2), d23) < 1e-6);
    }
}

#[test]
fn chain4_matches_solver_in_both_regimes() {
    for &(a, b, g) in &[(1.0, 1.0, 1.0), (1.0, 0.2, 1.5), (0.4, 3.0, 0.9), (1.0, 1e3, 1.0), (2.0, 0.5, 0.3)] {
        let p = chain_problem(&[a, b, g]).unwrap();
        let want = distance_chain4(a, b, g).unwrap();
        let got = num(&p, 0, 3);
        assert!(rel(got, want) < 1e-6, "({a},{b},{g}): {got} vs {want}");
    }
}

#[test]
fn uniform_chains_up_to_seven() {
    for n in 2..=7 {
        let l = 0.8;
        let p = chain_problem(&vec![1.0 / l; n - 1]).unwrap();
        let want = chain_uniform(n, l).unwrap();
        assert!(rel(num(&p, 0, n - 1), want) < 1e-6, "n = {n}");
    }
}

#[test]
fn lattice_distances() {
    let p = lattice_dirac(4, 1.3).unwrap();
    assert!(rel(num(&p, 0, 3), 3.0 * 1.3) < 1e-6);
    let p = lattice_dirac(5, 1.0).unwrap();
    assert!(rel(num(&p, 1, 3), 2.0) < 1e-6);
    let p = lattice_dirac(2, 0.5).unwrap();
    assert!(rel(num(&p, 0, 1), 0.5) < 1e-6);
}

#[test]
fn geodesic_bound_dominates() {
    let p = chain_problem(&[1.0, 1.0]).unwrap();
    let g = geodesic_bound(&p, 0, 2);
    assert!(g.length >= num(&p, 0, 2));
    assert!(rel(num(&p, 0, 2), 2f64.sqrt()) < 1e-6);
}

fn unit_vec(n: usize, seed: &[f64]) -> Vec<C64> {
    (0..n).map(|k| c(seed[2 * k], seed[2 * k + 1])).collect()
}

#[test]
fn mn_plus_c_random_gated_pairs() {
    // states with equal overlap on m: rotate the orthogonal part by a phase
    let m = vec![c(0.8, 0.1), c(0.0, 0.0), c(0.0, 0.0)];
    let mn = (0.65f64).sqrt();
    let mh: Vec<C64> = m.iter().map(|z| z / mn).collect();
    let u = vec![c(0.0, 0.0), c(0.6, 0.0), c(0.0, 0.8)];
    for &(a, phase) in &[(0.3f64, 0.7f64), (0.9, 2.0), (0.5, -1.1)] {
        let b = (1.0 - a * a).sqrt();
        let x: Vec<C64> = (0..3).map(|k| mh[k] * a + u[k] * b).collect();
        let z: Vec<C64> = (0..3).map(|k| mh[k] * a + u[k] * b * C64::from_polar(1.0, phase)).collect();
        let (sx, sz) = (McState::Vector(x), McState::Vector(z));
        let want = distance_mn_plus_c(&m, &sx, &sz).unwrap();
        assert!(want.is_finite());
        let got = distance_mn_plus_c_numeric(&m, &sx, &sz, 1e-9).unwrap();
        assert!(rel(got, want) < 1e-6, "{got} vs {want}");
    }
    let s = McState::Vector(unit_vec(2, &[0.3, 0.1, -0.2, 0.5]));
    let m2 = vec![c(1.0, 0.0), c(0.5, 0.0)];
    assert!(distance_mn_plus_c(&m2, &McState::Point, &s).unwrap().is_infinite());
    assert!(distance_mn_plus_c_numeric(&m2, &McState::Point, &s, 1e-9).unwrap().is_infinite());
}

#[test]
fn single_link_removal_can_shrink() {
    // zeroing one link is not a compression, and the distance may drop
    let p = DistanceProblem::from_links(
        5,
        &[(0, 1, 0.98386837937396), (0, 4, 1.7509022295020813), (1, 2, 1.0405486300332458), (2, 3, 1.5705444136746995), (2, 4, 1.7891630470488358), (3, 4, 1.1356686471566706)],
    )
    .unwrap();
    let mut q = p.clone();
    q.set_block(2, 4, &ncg_forge::linalg::zeros(1, 1));
    let (dp, dq) = (num(&p, 1, 3), num(&q, 1, 3));
    assert!(dq < dp * (1.0 - 1e-3), "{dp} {dq}");
}

fn random_connected(n: usize, w: &[f64], extra: &[bool]) -> DistanceProblem {
    let mut links = vec![];
    // spanning path plus optional chords
    for k in 0..n - 1 {
        links.push((k, k + 1, 0.2 + w[k]));
    }
    let mut idx = 0;
    for a in 0..n {
        for b in a + 2..n {
            if extra[idx % extra.len()] {
                links.push((a, b, 0.2 + w[(n + idx) % w.len()]));
            }
            idx += 1;
        }
    }
    DistanceProblem::from_links(n, &links).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn homogeneity(w in prop::collection::vec(0.0f64..2.0, 12), ex in prop::collection::vec(any::<bool>(), 6)) {
        let p = random_connected(4, &w, &ex);
        let d = num(&p, 0, 3);
        for lam in [0.5, 2.0, 10.0] {
            let mut q = p.clone();
            q.delta *= c(lam, 0.0);
            prop_assert!(rel(num(&q, 0, 3), d / lam) < 1e-6);
        }
    }

    #[test]
    fn triangle_inequality(n in 4usize..=6, w in prop::collection::vec(0.0f64..2.0, 20), ex in prop::collection::vec(any::<bool>(), 10)) {
        let p = random_connected(n, &w, &ex);
        let d: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| num(&p, i, j)).collect()).collect();
        for i in 0..n { for j in 0..n { for k in 0..n {
            prop_assert!(d[i][j] <= d[i][k] + d[k][j] + 1e-6 * d[i][j]);
        }}}
    }

    #[test]
    fn squared_inequality_three_points(a in 0.05f64..3.0, b in 0.05f64..3.0, cc in 0.05f64..3.0) {
        let p = DistanceProblem::from_links(3, &[(0, 1, a), (0, 2, b), (1, 2, cc)]).unwrap();
        let (d12, d13, d23) = (num(&p, 0, 1), num(&p, 0, 2), num(&p, 1, 2));
        let tol = 1e-6 * (d12 * d12 + d13 * d13 + d23 * d23);
        prop_assert!(d12 * d12 <= d13 * d13 + d23 * d23 + tol);
        prop_assert!(d13 * d13 <= d12 * d12 + d23 * d23 + tol);
        prop_assert!(d23 * d23 <= d12 * d12 + d13 * d13 + tol);
        let back = deltas_from_distances(d12, d13, d23).unwrap();
        prop_assert!(rel(back.0, a) < 1e-4 && rel(back.1, b) < 1e-4 && rel(back.2, cc) < 1e-4);
    }

    #[test]
    fn isolating_a_point_never_shrinks(w in prop::collection::vec(0.0f64..2.0, 12), ex in prop::collection::vec(any::<bool>(), 6), k in 0usize..5) {
        // zero row and column k of Δ
        let p = random_connected(5, &w, &ex);
        let mut q = p.clone();
        for b in (0..5).filter(|&b| b != k) {
            q.set_block(k, b, &ncg_forge::linalg::zeros(1, 1));
        }
        for (i, j) in [(0, 4), (1, 3), (0, 2), (2, 3)] {
            if i == k || j == k {
                continue;
            }
            let (dp, dq) = (num(&p, i, j), num(&q, i, j));
            prop_assert!(dq >= dp * (1.0 - 1e-6));
        }
    }

    #[test]
    fn path_locality(w in prop::collection::vec(0.1f64..2.0, 6), pert in 0.1f64..5.0) {
        // chain 0-1-2 with a pendant 3 hanging off 1 and an isolated pair 4-5
        let links = |x: f64| vec![(0, 1, w[0]), (1, 2, w[1]), (0, 2, w[2]), (1, 3, x), (4, 5, w[4])];
        let p = DistanceProblem::from_links(6, &links(w[3])).unwrap();
        let q = DistanceProblem::from_links(6, &links(pert)).unwrap();
        prop_assert!(rel(num(&p, 0, 2), num(&q, 0, 2)) < 1e-6);
        prop_assert!(num(&p, 0, 4).is_infinite());
    }
}
