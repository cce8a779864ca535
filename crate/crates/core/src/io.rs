//! JSON problem files.
//!
//! Complex numbers are `[re, im]`, matrices are arrays of rows, integer vectors are arrays.
//! Every file carries `kind` ∈ {finite_triple, distance, model, torus}. Reports echo the
//! input payload and add a `report` object, so a report can be read back as a problem.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::distance::DistanceProblem;
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, C64};
use crate::model::SpectralConstants;
use crate::torus::theta::mode;
use crate::torus::{MatNCPoly, NCPoly, Theta};
use crate::triple::{AlgebraSpec, Field, FiniteTriple, Mu, Rep};

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn at(path: &str, k: usize) -> String {
    format!("{path}[{k}]")
}

fn get<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    obj(v, path)?.get(key).ok_or_else(|| Error::input(join(path, key), "missing field"))
}

fn opt<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::input(path, "expected an object"))
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::input(path, "expected an array"))
}

fn num(v: &Value, path: &str) -> Result<f64> {
    let x = v.as_f64().ok_or_else(|| Error::input(path, "expected a number"))?;
    if !x.is_finite() {
        return Err(Error::input(path, "not finite"));
    }
    Ok(x)
}

fn int(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::input(path, "expected an integer"))
}

fn uint(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::input(path, "expected a nonnegative integer"))
}

fn num_field(v: &Value, path: &str, key: &str) -> Result<f64> {
    num(get(v, path, key)?, &join(path, key))
}

fn num_or(v: &Value, path: &str, key: &str, default: f64) -> Result<f64> {
    match opt(v, key) {
        Some(x) => num(x, &join(path, key)),
        None => Ok(default),
    }
}

pub fn complex(v: &Value, path: &str) -> Result<C64> {
    if let Some(x) = v.as_f64() {
        return Ok(c(x, 0.0));
    }
    let a = v.as_array().ok_or_else(|| Error::input(path, "expected [re, im] or a number"))?;
    if a.len() != 2 {
        return Err(Error::input(path, "complex number must be [re, im]"));
    }
    Ok(c(num(&a[0], &at(path, 0))?, num(&a[1], &at(path, 1))?))
}

pub fn complex_json(z: C64) -> Value {
    // adding 0.0 turns −0.0 into 0.0
    json!([z.re + 0.0, z.im + 0.0])
}

pub fn matrix(v: &Value, path: &str) -> Result<CMatrix> {
    let rows = arr(v, path)?;
    let ncols = match rows.first() {
        Some(r) => arr(r, &at(path, 0))?.len(),
        None => 0,
    };
    let mut m = CMatrix::zeros(rows.len(), ncols);
    for (i, r) in rows.iter().enumerate() {
        let rp = at(path, i);
        let r = arr(r, &rp)?;
        if r.len() != ncols {
            return Err(Error::input(rp, format!("row has {} entries, expected {ncols}", r.len())));
        }
        for (j, x) in r.iter().enumerate() {
            m[(i, j)] = complex(x, &at(&rp, j))?;
        }
    }
    Ok(m)
}

pub fn matrix_json(m: &CMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| complex_json(m[(i, j)])).collect())).collect())
}

fn int_matrix(v: &Value, path: &str) -> Result<Mu> {
    let rows = arr(v, path)?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let rp = at(path, i);
            arr(r, &rp)?.iter().enumerate().map(|(j, x)| int(x, &at(&rp, j))).collect()
        })
        .collect()
}

fn real_vec(v: &Value, path: &str) -> Result<Vec<f64>> {
    arr(v, path)?.iter().enumerate().map(|(k, x)| num(x, &at(path, k))).collect()
}

fn int_vec(v: &Value, path: &str) -> Result<Vec<i32>> {
    arr(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let y = int(x, &at(path, k))?;
            i32::try_from(y).map_err(|_| Error::input(at(path, k), "integer out of range"))
        })
        .collect()
}

// ---------- finite triples ----------

pub fn triple_from_json(v: &Value, path: &str) -> Result<FiniteTriple> {
    let ap = join(path, "algebra");
    let mut summands = vec![];
    for (k, s) in arr(get(v, path, "algebra")?, &ap)?.iter().enumerate() {
        let sp = at(&ap, k);
        let f = get(s, &sp, "field")?;
        let field = f
            .as_str()
            .and_then(Field::parse)
            .ok_or_else(|| Error::input(join(&sp, "field"), "expected \"R\", \"C\" or \"H\""))?;
        let n = uint(get(s, &sp, "n")?, &join(&sp, "n"))?;
        summands.push((field, n));
    }
    let algebra = AlgebraSpec::new(summands).map_err(|e| reroot(e, path))?;
    let reps = match opt(v, "reps") {
        None => None,
        Some(r) => {
            let rp = join(path, "reps");
            let mut out = vec![];
            for (k, x) in arr(r, &rp)?.iter().enumerate() {
                let xp = at(&rp, k);
                let summand = uint(get(x, &xp, "summand")?, &join(&xp, "summand"))?;
                let conj = match opt(x, "conj") {
                    None => false,
                    Some(b) => b.as_bool().ok_or_else(|| Error::input(join(&xp, "conj"), "expected a boolean"))?,
                };
                out.push(Rep { summand, conj });
            }
            algebra.check_reps(&out).map_err(|e| reroot(e, path))?;
            Some(out)
        }
    };
    let mu = int_matrix(get(v, path, "mu")?, &join(path, "mu"))?;
    let nrep = reps.as_ref().map_or_else(|| algebra.default_reps().len(), |r| r.len());
    if mu.len() != nrep || mu.iter().any(|r| r.len() != nrep) {
        return Err(Error::input(join(path, "mu"), format!("expected a {nrep}x{nrep} matrix")));
    }
    let mut t = FiniteTriple::new(algebra, reps, mu).map_err(|e| reroot(e, path))?;
    if let Some(b) = opt(v, "blocks") {
        let bp = join(path, "blocks");
        for (k, x) in arr(b, &bp)?.iter().enumerate() {
            let xp = at(&bp, k);
            let i = uint(get(x, &xp, "i")?, &join(&xp, "i"))?;
            let kk = uint(get(x, &xp, "k")?, &join(&xp, "k"))?;
            let j = uint(get(x, &xp, "j")?, &join(&xp, "j"))?;
            let m = matrix(get(x, &xp, "m")?, &join(&xp, "m"))?;
            t.set_block(i, kk, j, m).map_err(|e| match e {
                Error::Input { msg, .. } => Error::input(xp.clone(), msg),
                e => e,
            })?;
        }
    }
    if let Some(d) = opt(v, "dirac") {
        t.dirac_override = Some(matrix(d, &join(path, "dirac"))?);
        t.assemble_dirac().map_err(|e| reroot(e, path))?;
    }
    if let Some(s) = opt(v, "s0_split") {
        let sp = join(path, "s0_split");
        let nu = int_matrix(s, &sp)?;
        if nu.len() != nrep || nu.iter().any(|r| r.len() != nrep) {
            return Err(Error::input(sp, format!("expected a {nrep}x{nrep} matrix")));
        }
        t.s0_split = Some(nu);
    }
    Ok(t)
}

fn reroot(e: Error, path: &str) -> Error {
    match e {
        Error::Input { path: p, msg } if !path.is_empty() => Error::input(join(path, &p), msg),
        e => e,
    }
}

pub fn triple_json(t: &FiniteTriple) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert(
        "algebra".into(),
        Value::Array(t.algebra.summands.iter().map(|s| json!({"field": s.field.symbol(), "n": s.n})).collect()),
    );
    m.insert(
        "reps".into(),
        Value::Array(t.reps.iter().map(|r| json!({"summand": r.summand, "conj": r.conj})).collect()),
    );
    m.insert("mu".into(), json!(t.mu));
    m.insert(
        "blocks".into(),
        Value::Array(
            t.blocks.iter().map(|(&(i, k, j), b)| json!({"i": i, "k": k, "j": j, "m": matrix_json(b)})).collect(),
        ),
    );
    if let Some(d) = &t.dirac_override {
        m.insert("dirac".into(), matrix_json(d));
    }
    if let Some(nu) = &t.s0_split {
        m.insert("s0_split".into(), json!(nu));
    }
    m
}

// ---------- distances ----------

pub fn distance_from_json(v: &Value, path: &str) -> Result<DistanceProblem> {
    let delta = matrix(get(v, path, "delta")?, &join(path, "delta"))?;
    let sizes = match opt(v, "sizes") {
        Some(s) => {
            let sp = join(path, "sizes");
            arr(s, &sp)?.iter().enumerate().map(|(k, x)| uint(x, &at(&sp, k))).collect::<Result<Vec<_>>>()?
        }
        None => vec![1; delta.nrows()],
    };
    if sizes.iter().sum::<usize>() != delta.nrows() || delta.nrows() != delta.ncols() {
        return Err(Error::input(join(path, "delta"), "shape does not match the block sizes"));
    }
    DistanceProblem::new(sizes, delta).map_err(|e| reroot(e, path))
}

pub fn distance_json(p: &DistanceProblem) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("sizes".into(), json!(p.sizes));
    m.insert("delta".into(), matrix_json(&p.delta));
    m
}

// ---------- spectral constants ----------

/// Inputs of [`SpectralConstants::new`], kept separately so they can be written back verbatim.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsInput {
    pub f0: f64,
    pub f2: f64,
    pub f4: f64,
    pub lambda: f64,
    pub tr1: f64,
    pub n: u32,
}

impl Default for ConstantsInput {
    fn default() -> Self {
        Self { f0: 1.0, f2: 1.0, f4: 1.0, lambda: 1.0, tr1: 4.0, n: 4 }
    }
}

impl ConstantsInput {
    pub fn build(&self) -> Result<SpectralConstants> {
        SpectralConstants::new(self.f0, self.f2, self.f4, self.lambda, self.tr1, self.n)
    }
}

pub fn constants_from_json(v: &Value, path: &str) -> Result<ConstantsInput> {
    let d = ConstantsInput::default();
    let n = match opt(v, "n") {
        Some(x) => u32::try_from(uint(x, &join(path, "n"))?).map_err(|_| Error::input(join(path, "n"), "too large"))?,
        None => d.n,
    };
    let k = ConstantsInput {
        f0: num_or(v, path, "F0", d.f0)?,
        f2: num_or(v, path, "F2", d.f2)?,
        f4: num_or(v, path, "F4", d.f4)?,
        lambda: num_or(v, path, "Lambda", d.lambda)?,
        tr1: num_or(v, path, "tr1", d.tr1)?,
        n,
    };
    k.build().map_err(|e| match e {
        Error::Input { path: p, msg } => Error::input(join(path, p.trim_start_matches("constants.")), msg),
        e => e,
    })?;
    Ok(k)
}

pub fn constants_json(k: &ConstantsInput) -> Value {
    json!({"F0": k.f0, "F2": k.f2, "F4": k.f4, "Lambda": k.lambda, "tr1": k.tr1, "n": k.n})
}

// ---------- torus ----------

pub fn theta_from_json(v: &Value, path: &str) -> Result<Theta> {
    let rows = arr(v, path)?;
    let n = rows.len();
    let mut m = Vec::with_capacity(n * n);
    for (i, r) in rows.iter().enumerate() {
        let row = real_vec(r, &at(path, i))?;
        if row.len() != n {
            return Err(Error::input(at(path, i), format!("expected {n} entries")));
        }
        m.extend(row);
    }
    Theta::new(n, m).map_err(|e| match e {
        Error::Input { msg, .. } => Error::input(path, msg),
        e => e,
    })
}

pub fn theta_json(t: &Theta) -> Value {
    Value::Array((0..t.n).map(|i| json!(t.m[i * t.n..(i + 1) * t.n].to_vec())).collect())
}

/// Term list `[{p, coeff}, ...]`.
pub fn poly_from_json(theta: &Arc<Theta>, v: &Value, path: &str) -> Result<NCPoly> {
    let mut out = NCPoly::zero(theta);
    for (k, t) in arr(v, path)?.iter().enumerate() {
        let tp = at(path, k);
        let p = int_vec(get(t, &tp, "p")?, &join(&tp, "p"))?;
        if p.len() != theta.n {
            return Err(Error::input(join(&tp, "p"), format!("expected {} components", theta.n)));
        }
        let z = complex(get(t, &tp, "coeff")?, &join(&tp, "coeff"))?;
        let m = mode(&p)?;
        let prev = out.coeff(&m);
        out.insert(m, prev + z);
    }
    Ok(out)
}

pub fn poly_json(a: &NCPoly) -> Value {
    let n = a.n();
    Value::Array(a.terms.iter().map(|(p, z)| json!({"p": p[..n].to_vec(), "coeff": complex_json(*z)})).collect())
}

fn is_term_list(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(|x| x.is_object()))
}

/// Either a term list (1×1) or an N×N array of term lists.
pub fn matpoly_from_json(theta: &Arc<Theta>, v: &Value, path: &str) -> Result<MatNCPoly> {
    if is_term_list(v) {
        return Ok(MatNCPoly::scalar(&poly_from_json(theta, v, path)?));
    }
    let rows = arr(v, path)?;
    let size = rows.len();
    let mut m = MatNCPoly::zero(theta, size);
    for (i, r) in rows.iter().enumerate() {
        let rp = at(path, i);
        let r = arr(r, &rp)?;
        if r.len() != size {
            return Err(Error::input(rp, format!("expected {size} entries")));
        }
        for (j, x) in r.iter().enumerate() {
            m.set(i, j, poly_from_json(theta, x, &at(&rp, j))?);
        }
    }
    Ok(m)
}

pub fn matpoly_json(m: &MatNCPoly) -> Value {
    if m.size == 1 {
        return poly_json(m.get(0, 0));
    }
    Value::Array((0..m.size).map(|i| Value::Array((0..m.size).map(|j| poly_json(m.get(i, j))).collect())).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProjectorInput {
    Explicit(MatNCPoly),
    PowersRieffel { lambda: f64, k: usize, v1: Vec<i32>, v2: Vec<i32>, ramp: f64 },
    BlockProduct { a: f64, b: f64, k: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorusInput {
    pub theta: Arc<Theta>,
    pub g: f64,
    pub k: f64,
    pub alpha: f64,
    /// n components, all of one matrix size.
    pub connection: Vec<MatNCPoly>,
    pub unitary: Option<MatNCPoly>,
    pub projector: Option<ProjectorInput>,
    pub ghost: Option<NCPoly>,
    pub antighost: Option<NCPoly>,
    pub ghost_modes: usize,
    pub ghost_radius: i32,
    pub momenta: Vec<Vec<i32>>,
    pub loop_cutoff: i32,
}

pub fn torus_from_json(v: &Value, path: &str) -> Result<TorusInput> {
    let theta = Arc::new(theta_from_json(get(v, path, "theta")?, &join(path, "theta"))?);
    let n = theta.n;
    let g = num_or(v, path, "g", 1.0)?;
    if g == 0.0 {
        return Err(Error::input(join(path, "g"), "coupling must be nonzero"));
    }
    let connection = match opt(v, "connection") {
        Some(c) => {
            let cp = join(path, "connection");
            let comps = arr(c, &cp)?;
            if comps.len() != n {
                return Err(Error::input(cp, format!("expected {n} components")));
            }
            comps.iter().enumerate().map(|(k, x)| matpoly_from_json(&theta, x, &at(&cp, k))).collect::<Result<Vec<_>>>()?
        }
        None => vec![MatNCPoly::zero(&theta, 1); n],
    };
    let size = connection[0].size;
    if let Some(k) = connection.iter().position(|a| a.size != size) {
        return Err(Error::input(at(&join(path, "connection"), k), "components differ in matrix size"));
    }
    let unitary = match opt(v, "unitary") {
        Some(u) => {
            let m = matpoly_from_json(&theta, u, &join(path, "unitary"))?;
            if m.size != size {
                return Err(Error::input(join(path, "unitary"), format!("expected size {size}")));
            }
            Some(m)
        }
        None => None,
    };
    let projector = match opt(v, "projector") {
        None => None,
        Some(p) => Some(projector_from_json(&theta, p, &join(path, "projector"))?),
    };
    let poly_opt = |key: &str| -> Result<Option<NCPoly>> {
        opt(v, key).map(|x| poly_from_json(&theta, x, &join(path, key))).transpose()
    };
    let ghost = poly_opt("ghost")?;
    let antighost = poly_opt("antighost")?;
    let (mut ghost_modes, mut ghost_radius) = (3, 1);
    if let Some(b) = opt(v, "brs") {
        let bp = join(path, "brs");
        if let Some(x) = opt(b, "ghost_modes") {
            ghost_modes = uint(x, &join(&bp, "ghost_modes"))?;
        }
        if let Some(x) = opt(b, "radius") {
            ghost_radius = int(x, &join(&bp, "radius"))? as i32;
        }
    }
    let momenta = match opt(v, "momenta") {
        Some(m) => {
            let mp = join(path, "momenta");
            let out = arr(m, &mp)?.iter().enumerate().map(|(k, x)| int_vec(x, &at(&mp, k))).collect::<Result<Vec<_>>>()?;
            if let Some(k) = out.iter().position(|p| p.len() != n) {
                return Err(Error::input(at(&mp, k), format!("expected {n} components")));
            }
            out
        }
        None => vec![],
    };
    let loop_cutoff = match opt(v, "loop_cutoff") {
        Some(x) => int(x, &join(path, "loop_cutoff"))? as i32,
        None => 2,
    };
    Ok(TorusInput {
        theta,
        g,
        k: num_or(v, path, "k", 1.0)?,
        alpha: num_or(v, path, "alpha", 1.0)?,
        connection,
        unitary,
        projector,
        ghost,
        antighost,
        ghost_modes,
        ghost_radius,
        momenta,
        loop_cutoff,
    })
}

fn projector_from_json(theta: &Arc<Theta>, v: &Value, path: &str) -> Result<ProjectorInput> {
    if let Some(pr) = opt(v, "powers_rieffel") {
        let pp = join(path, "powers_rieffel");
        let lambda = num_field(pr, &pp, "lambda")?;
        let k = uint(get(pr, &pp, "K")?, &join(&pp, "K"))?;
        let unit = |i: usize| (0..theta.n).map(|k| i32::from(k == i)).collect::<Vec<_>>();
        let v1 = match opt(pr, "v1") {
            Some(x) => int_vec(x, &join(&pp, "v1"))?,
            None => unit(1),
        };
        let v2 = match opt(pr, "v2") {
            Some(x) => int_vec(x, &join(&pp, "v2"))?,
            None => unit(0),
        };
        let ramp = num_or(pr, &pp, "ramp", 1.0)?;
        return Ok(ProjectorInput::PowersRieffel { lambda, k, v1, v2, ramp });
    }
    if let Some(bp) = opt(v, "block_product") {
        let p = join(path, "block_product");
        return Ok(ProjectorInput::BlockProduct {
            a: num_field(bp, &p, "a")?,
            b: num_field(bp, &p, "b")?,
            k: uint(get(bp, &p, "K")?, &join(&p, "K"))?,
        });
    }
    if let Some(e) = opt(v, "explicit") {
        return Ok(ProjectorInput::Explicit(matpoly_from_json(theta, e, &join(path, "explicit"))?));
    }
    Err(Error::input(path, "expected one of powers_rieffel, block_product, explicit"))
}

fn projector_json(p: &ProjectorInput) -> Value {
    match p {
        ProjectorInput::Explicit(e) => json!({"explicit": matpoly_json(e)}),
        ProjectorInput::PowersRieffel { lambda, k, v1, v2, ramp } => {
            json!({"powers_rieffel": {"lambda": lambda, "K": k, "v1": v1, "v2": v2, "ramp": ramp}})
        }
        ProjectorInput::BlockProduct { a, b, k } => json!({"block_product": {"a": a, "b": b, "K": k}}),
    }
}

pub fn torus_json(t: &TorusInput) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("theta".into(), theta_json(&t.theta));
    m.insert("g".into(), json!(t.g));
    m.insert("k".into(), json!(t.k));
    m.insert("alpha".into(), json!(t.alpha));
    m.insert("connection".into(), Value::Array(t.connection.iter().map(matpoly_json).collect()));
    if let Some(u) = &t.unitary {
        m.insert("unitary".into(), matpoly_json(u));
    }
    if let Some(p) = &t.projector {
        m.insert("projector".into(), projector_json(p));
    }
    if let Some(x) = &t.ghost {
        m.insert("ghost".into(), poly_json(x));
    }
    if let Some(x) = &t.antighost {
        m.insert("antighost".into(), poly_json(x));
    }
    m.insert("brs".into(), json!({"ghost_modes": t.ghost_modes, "radius": t.ghost_radius}));
    m.insert("momenta".into(), json!(t.momenta));
    m.insert("loop_cutoff".into(), json!(t.loop_cutoff));
    m
}

// ---------- whole files ----------

#[derive(Clone, Debug, PartialEq)]
pub enum Problem {
    FiniteTriple(FiniteTriple),
    Distance(DistanceProblem),
    Model { triple: FiniteTriple, constants: ConstantsInput, charges: Option<Vec<f64>> },
    Torus(TorusInput),
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Problem::FiniteTriple(_) => "finite_triple",
            Problem::Distance(_) => "distance",
            Problem::Model { .. } => "model",
            Problem::Torus(_) => "torus",
        }
    }

    pub fn to_json(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("kind".into(), json!(self.kind()));
        let body = match self {
            Problem::FiniteTriple(t) => triple_json(t),
            Problem::Distance(p) => distance_json(p),
            Problem::Model { triple, constants, charges } => {
                let mut b = triple_json(triple);
                b.insert("constants".into(), constants_json(constants));
                if let Some(q) = charges {
                    b.insert("charges".into(), json!(q));
                }
                b
            }
            Problem::Torus(t) => torus_json(t),
        };
        m.extend(body);
        m
    }
}

pub fn parse_problem(v: &Value) -> Result<Problem> {
    let kind = get(v, "", "kind")?.as_str().ok_or_else(|| Error::input("kind", "expected a string"))?;
    match kind {
        "finite_triple" => Ok(Problem::FiniteTriple(triple_from_json(v, "")?)),
        "distance" => Ok(Problem::Distance(distance_from_json(v, "")?)),
        "model" => {
            let triple = triple_from_json(v, "")?;
            let constants = match opt(v, "constants") {
                Some(k) => constants_from_json(k, "constants")?,
                None => ConstantsInput::default(),
            };
            let charges = opt(v, "charges").map(|q| real_vec(q, "charges")).transpose()?;
            Ok(Problem::Model { triple, constants, charges })
        }
        "torus" => Ok(Problem::Torus(torus_from_json(v, "")?)),
        other => Err(Error::input("kind", format!("unknown kind {other:?}"))),
    }
}

pub fn parse_str(s: &str) -> Result<Problem> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::input("$", format!("not valid JSON: {e}")))?;
    parse_problem(&v)
}

pub fn read_problem(path: &std::path::Path) -> Result<Problem> {
    parse_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::sm::standard_model_default;

    #[test]
    fn triple_round_trip() {
        let t = standard_model_default();
        let p = Problem::FiniteTriple(t);
        let s = serde_json::to_string(&Value::Object(p.to_json())).unwrap();
        assert_eq!(parse_str(&s).unwrap(), p);
    }

    #[test]
    fn error_paths() {
        let bad = r#"{"kind":"finite_triple","algebra":[{"field":"C","n":1}],"mu":[[1,0],[0,"x"]]}"#;
        match parse_str(bad) {
            Err(Error::Input { path, .. }) => assert_eq!(path, "mu[1][1]"),
            e => panic!("{e:?}"),
        }
        let bad = r#"{"kind":"distance","delta":[[0,1],[1,[0]]]}"#;
        match parse_str(bad) {
            Err(Error::Input { path, .. }) => assert_eq!(path, "delta[1][1]"),
            e => panic!("{e:?}"),
        }
        let bad = r#"{"kind":"torus","theta":[[0,0.5],[-0.5,0]],"connection":[[{"p":[1],"coeff":[1,0]}],[]]}"#;
        match parse_str(bad) {
            Err(Error::Input { path, .. }) => assert_eq!(path, "connection[0][0].p"),
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_str(r#"{"kind":"nope"}"#), Err(Error::Input { .. })));
    }

    #[test]
    fn torus_round_trip() {
        let s = r#"{"kind":"torus","theta":[[0,0.25],[-0.25,0]],"g":0.5,
            "connection":[[{"p":[1,0],"coeff":[0,1]}],[{"p":[0,-1],"coeff":[0.5,0]}]],
            "unitary":[{"p":[1,1],"coeff":[1,0]}],
            "projector":{"powers_rieffel":{"lambda":0.4,"K":16}}}"#;
        let p = parse_str(s).unwrap();
        let back = serde_json::to_string(&Value::Object(p.to_json())).unwrap();
        assert_eq!(parse_str(&back).unwrap(), p);
    }
}
