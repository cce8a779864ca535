//! Command-line front end. `main.rs` only parses arguments and prints an [`Outcome`].

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::distance::{distance_numeric, geodesic_bound};
use crate::error::{Error, Result};
use crate::io::{self, Problem, ProjectorInput, TorusInput};
use crate::model::build_model;
use crate::qft;
use crate::torus::brs::{brs_check, generator_count, BrsFields};
use crate::torus::theta::mode;
use crate::torus::{
    bianchi_residual, block_product_projector, cs_action, cs_gauge_defect, eom_residual, gauge_transform,
    powers_rieffel_on, topological_charge, ym_action, MatNCPoly, NCPoly,
};
use crate::triple::axioms::{validate_axioms, ValidateOptions};
use crate::triple::FiniteTriple;

#[derive(Parser, Debug, Clone)]
#[command(name = "ncg-forge", version, about = "Finite spectral triples and gauge theory on the noncommutative torus")]
pub struct Cli {
    /// Pass/fail tolerance for residuals.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the machine-readable report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check the dimension-0 axioms of a triple.
    Validate { file: PathBuf },
    /// Connes distance between points I and J (1-based).
    Distance { file: PathBuf, i: usize, j: usize },
    /// Extract the Yang-Mills-Higgs model of a triple.
    Model { file: PathBuf },
    /// Gauge theory on the noncommutative torus.
    Torus { file: PathBuf, action: TorusAction },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusAction {
    Ym,
    Cs,
    Charge,
    Brs,
    Feynman,
}

impl TorusAction {
    fn name(self) -> &'static str {
        match self {
            TorusAction::Ym => "ym",
            TorusAction::Cs => "cs",
            TorusAction::Charge => "charge",
            TorusAction::Brs => "brs",
            TorusAction::Feynman => "feynman",
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    /// Input payload plus `command` and `report`; empty on input errors.
    pub report: Value,
}

/// Run one command. Errors become exit code 2 with the message as text.
pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: EXIT_INPUT, text: format!("error: {e}\n"), report: Value::Null },
    }
}

fn read(file: &PathBuf) -> Result<Problem> {
    let s = std::fs::read_to_string(file).map_err(|e| Error::input("file", format!("{}: {e}", file.display())))?;
    io::parse_str(&s)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn finish(problem: &Problem, command: Value, report: Value, text: String, ok: bool) -> Outcome {
    let mut m = problem.to_json();
    m.insert("command".into(), command);
    m.insert("report".into(), report);
    Outcome { code: if ok { EXIT_OK } else { EXIT_FAIL }, text, report: Value::Object(m) }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Error::input("--tol", "tolerance must be positive"));
    }
    crate::threads::init_pool()?;
    match &cli.command {
        Command::Validate { file } => {
            let p = read(file)?;
            let t = triple_of(&p)?;
            cmd_validate(&p, t, cli)
        }
        Command::Distance { file, i, j } => cmd_distance(&read(file)?, *i, *j, cli),
        Command::Model { file } => cmd_model(&read(file)?, cli),
        Command::Torus { file, action } => match read(file)? {
            Problem::Torus(t) => cmd_torus(&Problem::Torus(t.clone()), &t, *action, cli),
            _ => Err(Error::input("kind", "torus command needs kind \"torus\"")),
        },
    }
}

fn triple_of(p: &Problem) -> Result<&FiniteTriple> {
    match p {
        Problem::FiniteTriple(t) | Problem::Model { triple: t, .. } => Ok(t),
        _ => Err(Error::input("kind", "expected kind \"finite_triple\" or \"model\"")),
    }
}

pub fn cmd_validate(p: &Problem, t: &FiniteTriple, cli: &Cli) -> Result<Outcome> {
    let opts = ValidateOptions { tol: cli.tol, seed: cli.seed, ..Default::default() };
    let r = validate_axioms(t, &opts)?;
    let mut s = String::new();
    let dim = t.representation()?.dim;
    let _ = writeln!(s, "axioms (dim H = {dim}, tol = {:e})", cli.tol);
    for ch in &r.checks {
        let _ = writeln!(s, "  {:<24} {:>12.3e}  {}", ch.name, ch.residual, pass(ch.pass));
    }
    let _ = writeln!(s, "intersection form {:?}, det = {}", r.intersection.matrix, r.intersection.det);
    let _ = writeln!(
        s,
        "S0-reality: declared = {}, split valid = {}, structure exists = {}, real = {}",
        r.s0.declared, r.s0.split_valid, r.s0.structure_exists, r.s0.s0_real
    );
    if r.has_one_form_multiplicity {
        let _ = writeln!(s, "note: some p_ik > 1, outside the multiplicity-free gauge reconstruction");
    }
    let _ = writeln!(s, "verdict: {}", if r.all_pass { "all pass" } else { "failed" });
    Ok(finish(p, json!({"name": "validate"}), serde_json::to_value(&r)?, s, r.all_pass))
}

fn float_json(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!("inf")
    }
}

pub fn cmd_distance(p: &Problem, i: usize, j: usize, cli: &Cli) -> Result<Outcome> {
    let Problem::Distance(d) = p else {
        return Err(Error::input("kind", "distance command needs kind \"distance\""));
    };
    let n = d.npoints();
    for (name, x) in [("i", i), ("j", j)] {
        if x == 0 || x > n {
            return Err(Error::input(name, format!("point {x} outside 1..={n}")));
        }
    }
    let tol = cli.tol.min(1e-3);
    let r = distance_numeric(d, i - 1, j - 1, tol)?;
    let b = geodesic_bound(d, i - 1, j - 1);
    let mut s = String::new();
    if r.finite {
        let _ = writeln!(s, "d({i},{j}) = {:.12}", r.value);
        let _ = writeln!(s, "certificate x = {:?}", r.certificate);
        let _ = writeln!(s, "||[D,x]|| = {:.3e}, gap = {:.3e}, iterations = {}", r.constraint_norm, r.gap, r.iterations);
    } else {
        let _ = writeln!(s, "d({i},{j}) = inf (points are not linked)");
    }
    let _ = writeln!(s, "geodesic bound = {}", if b.connected { format!("{:.12}", b.length) } else { "inf".into() });
    let report = json!({
        "value": float_json(r.value),
        "finite": r.finite,
        "certificate": r.certificate,
        "constraint_norm": r.constraint_norm,
        "gap": r.gap,
        "iterations": r.iterations,
        "geodesic_bound": float_json(b.length),
        "geodesic_path": b.path.iter().map(|k| k + 1).collect::<Vec<_>>(),
    });
    Ok(finish(p, json!({"name": "distance", "i": i, "j": j}), report, s, true))
}

pub fn cmd_model(p: &Problem, _cli: &Cli) -> Result<Outcome> {
    let (t, constants, charges) = match p {
        Problem::Model { triple, constants, charges } => (triple, constants.clone(), charges.clone()),
        Problem::FiniteTriple(t) => (t, io::ConstantsInput::default(), None),
        _ => return Err(Error::input("kind", "model command needs kind \"model\" or \"finite_triple\"")),
    };
    let k = constants.build()?;
    let r = build_model(t, &k, charges.as_deref())?;
    let mut s = String::new();
    let _ = writeln!(s, "gauge group: {}", r.gauge_group);
    let _ = writeln!(s, "fermions:");
    for f in &r.fermions.rows {
        let _ = writeln!(
            s,
            "  ({}, {}bar) x{} chirality {:+} dim {}{}",
            f.rep_i,
            f.rep_j,
            f.multiplicity,
            f.chirality,
            f.dim,
            f.particle_slots.map(|q| format!(" particles {q}")).unwrap_or_default()
        );
    }
    let _ = writeln!(s, "couplings:");
    for g in &r.couplings {
        let _ = writeln!(s, "  {} (summand {}): sum = {}, g = {:.12}", g.group, g.summand, g.row_sum, g.g);
    }
    let _ = writeln!(s, "one-forms: dimension {}, multiplicities {:?}", r.one_forms.dimension, r.one_forms.pairs);
    let _ = writeln!(s, "higgs fields:");
    for h in &r.higgs {
        let _ = writeln!(
            s,
            "  Phi[{},{}]^{} {}x{} {:?}{} links {:?}",
            h.i,
            h.k,
            h.p,
            h.shape.0,
            h.shape.1,
            h.kind,
            if h.derived { " (derived)" } else { "" },
            h.links
        );
    }
    let _ = writeln!(
        s,
        "potential: mass coefficient {:.6e}, lambda_norm {:.6e}, {} quartic loop classes",
        r.potential.mass_coefficient,
        r.potential.lambda_norm,
        r.potential.quartic.len()
    );
    let _ = writeln!(
        s,
        "abelian sector: N = {}, N' = {}, free parameters {}",
        r.abelian.n, r.abelian.n_prime, r.abelian.parameter_count
    );
    if let Some(a) = &r.anomaly {
        if a.mixed.is_nan() {
            let _ = writeln!(s, "anomalies: rigid ok = {}, charge conditions need \"charges\"", a.rigid_ok);
        } else {
            let _ = writeln!(
                s,
                "anomalies: rigid ok = {}, mixed {:.3e}, cubic {:.3e}, anomaly free = {}",
                a.rigid_ok, a.mixed, a.cubic, a.anomaly_free
            );
        }
    }
    let _ = writeln!(s, "intersection form {:?}, det = {}", r.intersection.matrix, r.intersection.det);
    let _ = writeln!(
        s,
        "mass bound: m_b^2 = {:.6e}, m_f^2 = {:.6e}, m_b^2 <= 6 m_f^2 {}",
        r.mass_bound.m_b_max.powi(2),
        r.mass_bound.m_f_max.powi(2),
        pass(r.mass_bound.holds)
    );
    let _ = writeln!(s, "constants: mu = {:.6e}, G = {:.6e} ({})", k.mu_scalar, k.g_newton, k.g_newton_flag);
    let ok = r.mass_bound.holds;
    Ok(finish(p, json!({"name": "model"}), serde_json::to_value(&r)?, s, ok))
}

fn projector(t: &TorusInput) -> Result<Option<(MatNCPoly, Value)>> {
    let Some(pi) = &t.projector else { return Ok(None) };
    Ok(Some(match pi {
        ProjectorInput::Explicit(e) => (e.clone(), json!({"source": "explicit"})),
        ProjectorInput::PowersRieffel { lambda, k, v1, v2, ramp } => {
            let pr = powers_rieffel_on(&t.theta, v1, v2, *lambda, *k, *ramp)?;
            let info = json!({"source": "powers_rieffel", "integral": pr.integral, "defect": pr.defect,
                              "hermitian_defect": pr.hermitian_defect, "ramp": pr.ramp});
            (MatNCPoly::scalar(&pr.e), info)
        }
        ProjectorInput::BlockProduct { a, b, k } => {
            if t.theta.n != 4 {
                return Err(Error::input("projector.block_product", "needs a 4-dimensional theta"));
            }
            let (e, p1, p2) = block_product_projector(*a, *b, *k)?;
            if (0..16).any(|x| (t.theta.m[x] - e.theta.m[x]).abs() > 1e-14) {
                return Err(Error::input("theta", "block product fixes theta = block4(a, -b)"));
            }
            let info = json!({"source": "block_product", "defects": [p1.defect, p2.defect]});
            (MatNCPoly::scalar(&e), info)
        }
    }))
}

fn scale_of(x: &[f64]) -> f64 {
    x.iter().fold(1.0, |m, v| m.max(v.abs()))
}

pub fn cmd_torus(p: &Problem, t: &TorusInput, action: TorusAction, cli: &Cli) -> Result<Outcome> {
    let command = json!({"name": "torus", "action": action.name()});
    let mut s = String::new();
    let n = t.theta.n;
    let a = &t.connection;
    let (report, ok) = match action {
        TorusAction::Ym => {
            let e = projector(t)?;
            let eref = e.as_ref().map(|x| &x.0);
            if let Some(ee) = eref {
                if ee.size != a[0].size {
                    return Err(Error::input("projector", "size differs from the connection"));
                }
            }
            let act = ym_action(a, eref, t.g)?;
            let eom = eom_residual(a, eref, t.g)?.iter().map(MatNCPoly::max_abs).fold(0.0, f64::max);
            let bianchi = bianchi_residual(a, eref, t.g)?;
            let tol = cli.tol * scale_of(&[act]);
            let _ = writeln!(s, "S_YM = {act:.15e}");
            let _ = writeln!(s, "EOM residual max = {eom:.3e}");
            let _ = writeln!(s, "Bianchi residual = {bianchi:.3e}  {}", pass(bianchi <= tol));
            let mut ok = bianchi <= tol;
            let mut gauge = Value::Null;
            if let (Some(u), None) = (&t.unitary, eref) {
                let au = gauge_transform(a, u, t.g)?;
                let act_u = ym_action(&au, None, t.g)?;
                let diff = (act_u - act).abs();
                ok &= diff <= tol;
                let _ = writeln!(s, "S_YM[A^u] = {act_u:.15e}, difference {diff:.3e}  {}", pass(diff <= tol));
                gauge = json!({"action": act_u, "difference": diff});
            }
            (json!({"action": act, "eom_residual": eom, "bianchi_residual": bianchi, "gauge": gauge,
                    "projector": e.map(|x| x.1)}), ok)
        }
        TorusAction::Cs => {
            if n != 3 {
                return Err(Error::input("theta", "Chern-Simons needs n = 3"));
            }
            let sa = cs_action(a, t.k)?;
            let _ = writeln!(s, "S_CS = {sa:.15e} (k = {})", t.k);
            let mut ok = true;
            let mut gauge = Value::Null;
            if let Some(u) = &t.unitary {
                // the defect identity is stated for the g = 1 normalization of A^u
                let au = gauge_transform(a, u, 1.0)?;
                let su = cs_action(&au, t.k)?;
                let gamma = cs_gauge_defect(u, t.k)? + 0.0;
                let resid = (su - sa - gamma).abs();
                ok = resid <= cli.tol * scale_of(&[sa, su, gamma]);
                let _ = writeln!(s, "S_CS[A^u] = {su:.15e}");
                let _ = writeln!(s, "defect Gamma[u] = {gamma:.15e}");
                let _ = writeln!(s, "identity residual = {resid:.3e}  {}", pass(ok));
                gauge = json!({"action": su, "defect": gamma, "residual": resid});
            }
            (json!({"action": sa, "gauge": gauge}), ok)
        }
        TorusAction::Charge => {
            let (e, info) = projector(t)?.ok_or_else(|| Error::input("projector", "missing field"))?;
            let q = topological_charge(&e)?;
            let _ = writeln!(s, "rank = {:.12}, ||e^2 - e||_1 = {:.3e}", q.rank, q.defect);
            for mu in 0..n {
                for nu in mu + 1..n {
                    let _ = writeln!(s, "c[{}{}] = {:+.9} +- {:.1e}", mu + 1, nu + 1, q.c[mu][nu], q.c_error);
                }
            }
            if let Some(x) = q.q {
                let _ = writeln!(s, "q = {x:+.9} +- {:.1e}", q.q_error.unwrap_or(f64::NAN));
            }
            let mut r = serde_json::to_value(&q)?;
            r["projector"] = info;
            (r, true)
        }
        TorusAction::Brs => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let f = BrsFields::random(&t.theta, t.ghost_modes, t.ghost_radius.max(1), &mut rng)?;
            let ngen = generator_count(t.ghost_modes);
            let r = brs_check(&f, t.g, t.alpha, ngen - 2, ngen - 1)?;
            let ok = r.s2_a <= cli.tol && r.s2_c <= cli.tol && r.ym_variation <= cli.tol && r.gauge_fixing_variation <= cli.tol;
            let _ = writeln!(s, "{} ghost modes, {} Grassmann generators", t.ghost_modes, r.generators);
            let _ = writeln!(s, "s^2 A   = {:.3e}", r.s2_a);
            let _ = writeln!(s, "s^2 C   = {:.3e}", r.s2_c);
            let _ = writeln!(s, "s S_YM  = {:.3e}", r.ym_variation);
            let _ = writeln!(s, "s S_GF  = {:.3e}", r.gauge_fixing_variation);
            let _ = writeln!(s, "verdict: {}", pass(ok));
            (serde_json::to_value(&r)?, ok)
        }
        TorusAction::Feynman => feynman(t, cli, &mut s)?,
    };
    Ok(finish(p, command, report, s, ok))
}

fn feynman(t: &TorusInput, cli: &Cli, s: &mut String) -> Result<(Value, bool)> {
    let n = t.theta.n;
    let unit = |k: usize| (0..n).map(|x| i32::from(x == k)).collect::<Vec<_>>();
    let mut moms = t.momenta.clone();
    if moms.is_empty() {
        moms.push(unit(0));
        moms.push(if n > 1 { unit(1) } else { unit(0) });
    }
    if moms.len() == 2 {
        moms.push((0..n).map(|x| -moms[0][x] - moms[1][x]).collect());
    }
    let (g, alpha) = (t.g, t.alpha);
    let mut props = vec![];
    let _ = writeln!(s, "propagators (alpha = {alpha}):");
    for p in &moms {
        if p.iter().all(|&x| x == 0) {
            continue;
        }
        let gl: Vec<Vec<f64>> =
            (0..n).map(|mu| (0..n).map(|nu| qft::gluon_propagator(p, mu, nu, alpha)).collect()).collect::<Result<_>>()?;
        let gh = qft::ghost_propagator(p)?;
        let _ = writeln!(s, "  p = {p:?}: ghost {gh:.9}, gluon diagonal {:?}", (0..n).map(|k| gl[k][k]).collect::<Vec<_>>());
        props.push(json!({"p": p, "gluon": gl, "ghost": gh}));
    }
    let (pp, qq, rr) = (&moms[0], &moms[1], &moms[2]);
    let mut v3 = vec![];
    let mut vg = vec![];
    for mu in 0..n {
        for nu in 0..n {
            for rho in 0..n {
                let v = qft::vertex3(&t.theta, pp, qq, rr, [mu, nu, rho], g)?;
                if v != 0.0 {
                    v3.push(json!({"indices": [mu, nu, rho], "value": v}));
                }
            }
        }
        let v = qft::ghost_vertex(&t.theta, pp, qq, rr, mu, g)?;
        if v != 0.0 {
            vg.push(json!({"index": mu, "value": v}));
        }
    }
    let _ = writeln!(s, "three-gluon vertex at p = {pp:?}, q = {qq:?}, r = {rr:?}: {} nonzero entries", v3.len());
    for x in &v3 {
        let _ = writeln!(s, "  {} {:.12e}", x["indices"], x["value"].as_f64().unwrap_or(0.0));
    }
    let _ = writeln!(s, "ghost vertex: {} nonzero entries", vg.len());
    for x in &vg {
        let _ = writeln!(s, "  {} {:.12e}", x["index"], x["value"].as_f64().unwrap_or(0.0));
    }
    let mut v4 = vec![];
    if moms.len() >= 4 {
        let ps = [&moms[0][..], &moms[1][..], &moms[2][..], &moms[3][..]];
        let mut idx = [0usize; 4];
        for code in 0..n.pow(4) {
            let mut c = code;
            for slot in idx.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            let v = qft::vertex4(&t.theta, ps, idx, g)?;
            if v != 0.0 {
                v4.push(json!({"indices": idx, "value": v}));
            }
        }
        let _ = writeln!(s, "four-gluon vertex: {} nonzero entries", v4.len());
    }
    let mut ok = true;
    let mut recon = Value::Null;
    if t.connection[0].size == 1 {
        let a: Vec<NCPoly> = t.connection.iter().map(|m| m.get(0, 0).clone()).collect();
        let zero = NCPoly::zero(&t.theta);
        let cf = t.ghost.clone().unwrap_or_else(|| zero.clone());
        let cb = t.antighost.clone().unwrap_or(zero);
        let r = qft::reconstruction_check(&a, &cf, &cb, g)?;
        let scale = scale_of(&[r.cubic_action, r.quartic_action, r.ghost_action]);
        ok = r.max_error <= cli.tol * scale;
        let _ = writeln!(s, "action reconstruction: max error {:.3e}  {}", r.max_error, pass(ok));
        recon = serde_json::to_value(&r)?;
    }
    let mut probe = Value::Null;
    if n == 4 {
        let pe = moms.iter().find(|p| p.iter().any(|&x| x != 0)).cloned().unwrap_or_else(|| unit(0));
        mode(&pe)?;
        let lp = qft::loop_sum_probe(&t.theta, &pe, t.loop_cutoff, g)?;
        let _ = writeln!(
            s,
            "loop probe at p = {pe:?}: K = {} -> {:.6e}, K = {} -> {:.6e}",
            lp.cutoff, lp.partial, lp.doubled_cutoff, lp.partial_doubled
        );
        probe = serde_json::to_value(&lp)?;
    }
    Ok((
        json!({"momenta": moms, "propagators": props, "vertex3": v3, "vertex4": v4, "ghost_vertex": vg,
               "reconstruction": recon, "loop_probe": probe}),
        ok,
    ))
}

/// Render an outcome: text or pretty JSON on stdout, JSON to `--out` when given.
pub fn emit(cli: &Cli, o: &Outcome) -> std::io::Result<String> {
    let machine = serde_json::to_string_pretty(&o.report).map(|x| x + "\n").unwrap_or_default();
    if let (Some(path), false) = (&cli.out, o.report.is_null()) {
        std::fs::write(path, &machine)?;
    }
    Ok(if cli.json && !o.report.is_null() { machine } else { o.text.clone() })
}
