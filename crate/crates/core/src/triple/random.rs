//! Random small triples for property suites.

use rand::Rng;

use super::{build_representation, AlgebraSpec, Field, FiniteTriple, Mu, Rep};
use crate::linalg::{random_matrix, CMatrix};

#[derive(Clone, Debug)]
pub struct RandomTripleOptions {
    pub max_summands: usize,
    pub max_n: usize,
    /// Largest |μ_ij|.
    pub max_mult: i64,
    /// Chance of filling each admissible vertical link.
    pub link_prob: f64,
}

impl Default for RandomTripleOptions {
    fn default() -> Self {
        Self { max_summands: 3, max_n: 2, max_mult: 1, link_prob: 0.7 }
    }
}

fn random_algebra<R: Rng + ?Sized>(rng: &mut R, o: &RandomTripleOptions) -> AlgebraSpec {
    let k = rng.random_range(1..=o.max_summands.max(1));
    let s = (0..k)
        .map(|_| match rng.random_range(0..4) {
            0 => (Field::R, rng.random_range(1..=o.max_n)),
            1 => (Field::H, 1),
            _ => (Field::C, rng.random_range(1..=o.max_n)),
        })
        .collect();
    AlgebraSpec::new(s).expect("positive sizes")
}

fn random_mu<R: Rng + ?Sized>(rng: &mut R, n: usize, max_mult: i64) -> Mu {
    let mut mu = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            if rng.random_bool(0.6) {
                let m = rng.random_range(1..=max_mult);
                let v = if rng.random_bool(0.5) { m } else { -m };
                mu[i][j] = v;
                mu[j][i] = v;
            }
        }
    }
    mu
}

/// Random valid triple with random Yukawa blocks on a random subset of the admissible links.
pub fn random_triple<R: Rng + ?Sized>(rng: &mut R, o: &RandomTripleOptions) -> FiniteTriple {
    loop {
        let algebra = random_algebra(rng, o);
        let reps: Vec<Rep> = algebra
            .default_reps()
            .into_iter()
            .filter(|r| !r.conj || rng.random_bool(0.6))
            .collect();
        let mu = random_mu(rng, reps.len(), o.max_mult.max(1));
        if build_representation(&algebra, &reps, &mu).is_err() {
            continue;
        }
        let mut t = FiniteTriple::new(algebra, Some(reps), mu).expect("representation checked");
        randomize_blocks(&mut t, rng, o.link_prob);
        return t;
    }
}

/// Replace every block, each admissible link filled with probability `p`.
pub fn randomize_blocks<R: Rng + ?Sized>(t: &mut FiniteTriple, rng: &mut R, p: f64) {
    t.blocks.clear();
    let n = t.nrep();
    for j in 0..n {
        for i in 0..n {
            for k in i + 1..n {
                if t.mu[i][j] * t.mu[k][j] < 0 && rng.random_bool(p) {
                    let (r, c) = t.block_shape(i, k, j);
                    let m: CMatrix = random_matrix(r, c, rng);
                    t.set_block(i, k, j, m).expect("admissible link");
                }
            }
        }
    }
}
