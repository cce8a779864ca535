//! Signed-vertex diagrams: vertices (i, j) with sign μ_ij, vertical and horizontal links.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{AlgebraSpec, BlockKey, FiniteTriple, Rep};
use crate::error::{Error, Result};
use crate::linalg::{c, frob, CMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub i: usize,
    pub j: usize,
    pub sign: i64,
    pub mult: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LinkKind {
    Vertical,
    Horizontal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Link {
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub kind: LinkKind,
}

impl Link {
    pub fn new(a: (usize, usize), b: (usize, usize)) -> Result<Self> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let kind = if a.1 == b.1 && a.0 != b.0 {
            LinkKind::Vertical
        } else if a.0 == b.0 && a.1 != b.1 {
            LinkKind::Horizontal
        } else {
            return Err(Error::input("links", format!("{a:?}-{b:?} is neither vertical nor horizontal")));
        };
        Ok(Self { a, b, kind })
    }

    /// Image under (i, j) ↦ (j, i).
    pub fn transpose(&self) -> Self {
        Self::new((self.a.1, self.a.0), (self.b.1, self.b.0)).unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub nrep: usize,
    pub vertices: Vec<Vertex>,
    pub links: Vec<Link>,
}

impl Diagram {
    pub fn vertical_links(&self) -> impl Iterator<Item = &Link> {
        self.links.iter().filter(|l| l.kind == LinkKind::Vertical)
    }

    pub fn validate(&self) -> Result<()> {
        let signs: BTreeMap<(usize, usize), i64> = self.vertices.iter().map(|v| ((v.i, v.j), v.sign)).collect();
        for v in &self.vertices {
            match signs.get(&(v.j, v.i)) {
                Some(&s) if s == v.sign => {}
                _ => return Err(Error::input(format!("vertices({},{})", v.i, v.j), "diagram not symmetric")),
            }
        }
        let set: BTreeSet<Link> = self.links.iter().cloned().collect();
        for (k, l) in self.links.iter().enumerate() {
            let (sa, sb) = match (signs.get(&l.a), signs.get(&l.b)) {
                (Some(x), Some(y)) => (*x, *y),
                _ => return Err(Error::input(format!("links[{k}]"), "link endpoint is not a vertex")),
            };
            if sa * sb >= 0 {
                return Err(Error::input(format!("links[{k}]"), "link between same-sign vertices"));
            }
            if !set.contains(&l.transpose()) {
                return Err(Error::input(format!("links[{k}]"), "missing transposed partner link"));
            }
        }
        Ok(())
    }
}

pub fn diagram_of(t: &FiniteTriple) -> Diagram {
    let n = t.nrep();
    let mut vertices = vec![];
    for i in 0..n {
        for j in 0..n {
            if t.mu[i][j] != 0 {
                vertices.push(Vertex { i, j, sign: t.mu[i][j].signum(), mult: t.mu[i][j].unsigned_abs() as usize });
            }
        }
    }
    let mut links = BTreeSet::new();
    for (&(i, k, j), m) in &t.blocks {
        if frob(m) == 0.0 {
            continue;
        }
        let l = Link::new((i, j), (k, j)).unwrap();
        links.insert(l);
        links.insert(l.transpose());
    }
    Diagram { nrep: n, vertices, links: links.into_iter().collect() }
}

/// Build a triple from a diagram. Vertical links take their block from `blocks`
/// (keyed (i, k, j), either orientation) or a unit-pattern default.
pub fn triple_from_diagram(
    algebra: &AlgebraSpec,
    reps: &[Rep],
    d: &Diagram,
    blocks: &BTreeMap<BlockKey, CMatrix>,
) -> Result<FiniteTriple> {
    d.validate()?;
    let n = d.nrep;
    let mut mu = vec![vec![0i64; n]; n];
    for v in &d.vertices {
        mu[v.i][v.j] = v.sign * v.mult as i64;
    }
    let mut t = FiniteTriple::new(algebra.clone(), Some(reps.to_vec()), mu)?;
    for l in d.vertical_links() {
        let (i, k, j) = (l.a.0, l.b.0, l.a.1);
        let m = if let Some(m) = blocks.get(&(i, k, j)) {
            m.clone()
        } else if let Some(m) = blocks.get(&(k, i, j)) {
            m.adjoint()
        } else {
            let (r, cc) = t.block_shape(i, k, j);
            CMatrix::from_fn(r, cc, |x, y| if x == y { c(1.0, 0.0) } else { c(0.0, 0.0) })
        };
        t.set_block(i, k, j, m)?;
    }
    Ok(t)
}
