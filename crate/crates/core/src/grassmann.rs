//! Finite Grassmann algebra over C with at most 24 generators.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{c, C64};

pub const MAX_GENERATORS: usize = 24;

/// Element of the Grassmann algebra. Monomials are bitmasks; bit k is generator θ_k,
/// and a monomial is read in increasing generator order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GrassmannPoly {
    pub ngen: usize,
    pub terms: BTreeMap<u32, C64>,
}

#[inline]
fn reorder_sign(a: u32, b: u32) -> f64 {
    // number of pairs (i in a, j in b) with i > j
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        let above = if j >= 31 { 0 } else { a & !((1u32 << (j + 1)) - 1) };
        swaps += above.count_ones();
        bb &= bb - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl GrassmannPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn zero_with(ngen: usize) -> Self {
        Self { ngen, terms: BTreeMap::new() }
    }

    pub fn scalar(z: C64) -> Self {
        let mut g = Self::zero();
        if z != c(0.0, 0.0) {
            g.terms.insert(0, z);
        }
        g
    }

    pub fn generator(k: usize) -> Result<Self> {
        if k >= MAX_GENERATORS {
            return Err(Error::domain(format!(
                "Grassmann capacity exhausted: generator {k} >= {MAX_GENERATORS}"
            )));
        }
        let mut g = Self::zero_with(k + 1);
        g.terms.insert(1u32 << k, c(1.0, 0.0));
        Ok(g)
    }

    /// Generator k inside an algebra with `ngen` generators.
    pub fn generator_in(k: usize, ngen: usize) -> Result<Self> {
        if ngen > MAX_GENERATORS || k >= ngen {
            return Err(Error::domain(format!(
                "Grassmann capacity exhausted: generator {k} of {ngen} (cap {MAX_GENERATORS})"
            )));
        }
        let mut g = Self::generator(k)?;
        g.ngen = ngen;
        Ok(g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn coeff(&self, mask: u32) -> C64 {
        self.terms.get(&mask).copied().unwrap_or(c(0.0, 0.0))
    }

    pub fn body(&self) -> C64 {
        self.coeff(0)
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut out = Self::zero_with(self.ngen);
        if z == c(0.0, 0.0) {
            return out;
        }
        for (&m, &v) in &self.terms {
            out.terms.insert(m, v * z);
        }
        out
    }

    pub fn add_term(&mut self, mask: u32, z: C64) {
        let e = self.terms.entry(mask).or_insert(c(0.0, 0.0));
        *e += z;
        if *e == c(0.0, 0.0) {
            self.terms.remove(&mask);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        self.ngen = self.ngen.max(other.ngen);
        for (&m, &v) in &other.terms {
            self.add_term(m, v);
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero_with(self.ngen.max(other.ngen));
        for (&a, &x) in &self.terms {
            for (&b, &y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                out.add_term(a | b, x * y * reorder_sign(a, b));
            }
        }
        out
    }

    /// Parity projections.
    pub fn even(&self) -> Self {
        Self {
            ngen: self.ngen,
            terms: self.terms.iter().filter(|(m, _)| m.count_ones() % 2 == 0).map(|(&m, &v)| (m, v)).collect(),
        }
    }

    pub fn odd(&self) -> Self {
        Self {
            ngen: self.ngen,
            terms: self.terms.iter().filter(|(m, _)| m.count_ones() % 2 == 1).map(|(&m, &v)| (m, v)).collect(),
        }
    }

    /// Part containing generator k, with θ_k stripped from the left.
    pub fn left_derivative(&self, k: usize) -> Self {
        let bit = 1u32 << k;
        let mut out = Self::zero_with(self.ngen);
        for (&m, &v) in &self.terms {
            if m & bit != 0 {
                let below = (m & (bit - 1)).count_ones();
                let s = if below % 2 == 0 { 1.0 } else { -1.0 };
                out.add_term(m & !bit, v * s);
            }
        }
        out
    }

    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, v| v.norm() > tol);
    }
}

/// Checked product: both operands must live in the same algebra.
pub fn gr_mul(x: &GrassmannPoly, y: &GrassmannPoly) -> Result<GrassmannPoly> {
    if x.ngen != y.ngen {
        return Err(Error::input(
            "generator_count",
            format!("mismatched generator counts {} and {}", x.ngen, y.ngen),
        ));
    }
    Ok(x.mul_ref(y))
}

impl Add for &GrassmannPoly {
    type Output = GrassmannPoly;
    fn add(self, rhs: &GrassmannPoly) -> GrassmannPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &GrassmannPoly {
    type Output = GrassmannPoly;
    fn sub(self, rhs: &GrassmannPoly) -> GrassmannPoly {
        let mut out = self.clone();
        for (&m, &v) in &rhs.terms {
            out.add_term(m, -v);
        }
        out
    }
}

impl Mul for &GrassmannPoly {
    type Output = GrassmannPoly;
    fn mul(self, rhs: &GrassmannPoly) -> GrassmannPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &GrassmannPoly {
    type Output = GrassmannPoly;
    fn neg(self) -> GrassmannPoly {
        self.scale(c(-1.0, 0.0))
    }
}
