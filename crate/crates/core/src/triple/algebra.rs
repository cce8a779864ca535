//! Real finite-dimensional C*-algebras ⊕ M_n(K) and their irreducible representations.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, frob, random_complex, randn, CMatrix, C64, I};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Hash, PartialOrd, Ord)]
pub enum Field {
    R,
    C,
    H,
}

impl Field {
    pub fn parse(s: &str) -> Option<Field> {
        match s {
            "R" | "r" => Some(Field::R),
            "C" | "c" => Some(Field::C),
            "H" | "h" => Some(Field::H),
            _ => None,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Field::R => "R",
            Field::C => "C",
            Field::H => "H",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub field: Field,
    pub n: usize,
}

/// Irreducible representation: a summand, possibly complex-conjugated (C only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Hash, PartialOrd, Ord)]
pub struct Rep {
    pub summand: usize,
    pub conj: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub summands: Vec<Summand>,
}

impl AlgebraSpec {
    pub fn new(summands: Vec<(Field, usize)>) -> Result<Self> {
        for (k, &(_, n)) in summands.iter().enumerate() {
            if n == 0 {
                return Err(Error::input(format!("algebra[{k}].n"), "summand size must be >= 1"));
            }
        }
        Ok(Self { summands: summands.into_iter().map(|(field, n)| Summand { field, n }).collect() })
    }

    /// One index per R and H summand, two (fundamental, conjugate) per C summand.
    pub fn default_reps(&self) -> Vec<Rep> {
        let mut out = vec![];
        for (s, sm) in self.summands.iter().enumerate() {
            out.push(Rep { summand: s, conj: false });
            if sm.field == Field::C {
                out.push(Rep { summand: s, conj: true });
            }
        }
        out
    }

    pub fn rep_dim(&self, r: Rep) -> usize {
        let sm = self.summands[r.summand];
        match sm.field {
            Field::H => 2 * sm.n,
            _ => sm.n,
        }
    }

    pub fn check_reps(&self, reps: &[Rep]) -> Result<()> {
        for (k, r) in reps.iter().enumerate() {
            if r.summand >= self.summands.len() {
                return Err(Error::input(format!("reps[{k}].summand"), "summand index out of range"));
            }
            if r.conj && self.summands[r.summand].field != Field::C {
                return Err(Error::input(
                    format!("reps[{k}].conj"),
                    "only complex summands have a conjugate representation",
                ));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for (k, r) in reps.iter().enumerate() {
            if !seen.insert(*r) {
                return Err(Error::input(format!("reps[{k}]"), "duplicate representation"));
            }
        }
        Ok(())
    }

    pub fn real_dim(&self) -> usize {
        self.summands
            .iter()
            .map(|s| match s.field {
                Field::R => s.n * s.n,
                Field::C => 2 * s.n * s.n,
                Field::H => 4 * s.n * s.n,
            })
            .sum()
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        AlgebraElement {
            parts: self
                .summands
                .iter()
                .map(|s| match s.field {
                    Field::R => CMatrix::from_fn(s.n, s.n, |_, _| c(randn(rng), 0.0)),
                    Field::C => CMatrix::from_fn(s.n, s.n, |_, _| random_complex(rng)),
                    Field::H => {
                        let x = CMatrix::from_fn(s.n, s.n, |_, _| random_complex(rng));
                        let y = CMatrix::from_fn(s.n, s.n, |_, _| random_complex(rng));
                        quaternion_embed(&x, &y)
                    }
                })
                .collect(),
        }
    }

    /// Unit of summand s.
    pub fn unit(&self, s: usize) -> AlgebraElement {
        AlgebraElement {
            parts: self
                .summands
                .iter()
                .enumerate()
                .map(|(k, sm)| {
                    let d = if sm.field == Field::H { 2 * sm.n } else { sm.n };
                    if k == s {
                        CMatrix::identity(d, d)
                    } else {
                        CMatrix::zeros(d, d)
                    }
                })
                .collect(),
        }
    }

    pub fn zero_element(&self) -> AlgebraElement {
        AlgebraElement {
            parts: self
                .summands
                .iter()
                .map(|sm| {
                    let d = if sm.field == Field::H { 2 * sm.n } else { sm.n };
                    CMatrix::zeros(d, d)
                })
                .collect(),
        }
    }

    /// A real basis of the algebra, summand by summand.
    pub fn real_basis(&self) -> Vec<AlgebraElement> {
        let mut out = vec![];
        for (s, sm) in self.summands.iter().enumerate() {
            let n = sm.n;
            for a in 0..n {
                for b in 0..n {
                    let units: Vec<CMatrix> = match sm.field {
                        Field::R => vec![unit_mat(n, a, b, c(1.0, 0.0))],
                        Field::C => vec![unit_mat(n, a, b, c(1.0, 0.0)), unit_mat(n, a, b, I)],
                        Field::H => quaternion_units()
                            .into_iter()
                            .map(|q| {
                                let mut m = CMatrix::zeros(2 * n, 2 * n);
                                m.view_mut((2 * a, 2 * b), (2, 2)).copy_from(&q);
                                m
                            })
                            .collect(),
                    };
                    for u in units {
                        let mut e = self.zero_element();
                        e.parts[s] = u;
                        out.push(e);
                    }
                }
            }
        }
        out
    }

    /// Random unitary of the algebra (O(n), U(n), Sp(n) per summand).
    pub fn random_unitary<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        AlgebraElement {
            parts: self
                .summands
                .iter()
                .map(|sm| match sm.field {
                    Field::R => crate::linalg::to_complex(&crate::linalg::random_orthogonal(sm.n, rng)),
                    Field::C => crate::linalg::random_unitary(sm.n, rng),
                    Field::H => random_symplectic(sm.n, rng),
                })
                .collect(),
        }
    }
}

fn unit_mat(n: usize, a: usize, b: usize, z: C64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(a, b)] = z;
    m
}

/// 1, i, j, k under q = x + y j ↦ [[x, −ȳ],[y, x̄]].
pub fn quaternion_units() -> Vec<CMatrix> {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    vec![
        CMatrix::from_row_slice(2, 2, &[one, o, o, one]),
        CMatrix::from_row_slice(2, 2, &[I, o, o, -I]),
        CMatrix::from_row_slice(2, 2, &[o, -one, one, o]),
        CMatrix::from_row_slice(2, 2, &[o, -I, -I, o]),
    ]
}

/// Quaternionic n×n matrix x + y j as a 2n×2n complex matrix.
pub fn quaternion_embed(x: &CMatrix, y: &CMatrix) -> CMatrix {
    let n = x.nrows();
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        for b in 0..n {
            m[(2 * a, 2 * b)] = x[(a, b)];
            m[(2 * a, 2 * b + 1)] = -y[(a, b)].conj();
            m[(2 * a + 1, 2 * b)] = y[(a, b)];
            m[(2 * a + 1, 2 * b + 1)] = x[(a, b)].conj();
        }
    }
    m
}

/// Distance of a 2n×2n complex matrix from the quaternionic pattern.
pub fn quaternion_pattern_residual(m: &CMatrix) -> f64 {
    let n = m.nrows() / 2;
    let mut r = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let x = m[(2 * a, 2 * b)];
            let y = m[(2 * a + 1, 2 * b)];
            r = r.max((m[(2 * a, 2 * b + 1)] + y.conj()).norm());
            r = r.max((m[(2 * a + 1, 2 * b + 1)] - x.conj()).norm());
        }
    }
    r
}

fn random_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    // polar part of a random quaternionic matrix stays quaternionic
    let x = CMatrix::from_fn(n, n, |_, _| random_complex(rng));
    let y = CMatrix::from_fn(n, n, |_, _| random_complex(rng));
    let q = quaternion_embed(&x, &y);
    let svd = q.svd(true, true);
    let u = svd.u.unwrap() * svd.v_t.unwrap();
    debug_assert!(frob(&(u.adjoint() * &u - CMatrix::identity(2 * n, 2 * n))) < 1e-9);
    u
}

/// Element of ⊕ M_n(K), one complex matrix per summand (H summands in 2n×2n form).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub parts: Vec<CMatrix>,
}

impl AlgebraElement {
    /// Image under a representation.
    pub fn rep(&self, r: Rep) -> CMatrix {
        let m = &self.parts[r.summand];
        if r.conj {
            m.map(|z| z.conj())
        } else {
            m.clone()
        }
    }

    pub fn adjoint(&self) -> Self {
        Self { parts: self.parts.iter().map(|m| m.adjoint()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { parts: self.parts.iter().zip(&o.parts).map(|(a, b)| a * b).collect() }
    }
}
