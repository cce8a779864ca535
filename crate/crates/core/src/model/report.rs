//! Gauge group, fermion content, couplings and the assembled model report.

use std::f64::consts::PI;

use serde::Serialize;

use super::abelian::{abelian_sector, AbelianReport};
use super::anomaly::{anomaly_check, linear_constraint_matrix, AnomalyReport};
use super::constants::SpectralConstants;
use super::higgs::{higgs_fields, HiggsField};
use super::intersection::{intersection_form, IntersectionForm};
use super::oneforms::OneFormSummary;
use super::potential::{scalar_potential, PotentialCoefficients};
use super::ssb::{mass_bound_check, MassBound};
use crate::error::{Error, Result};
use crate::triple::{AlgebraSpec, Field, FiniteTriple, Mu, Rep};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GaugeFactor {
    pub summand: usize,
    pub name: String,
    pub nonabelian: bool,
}

pub fn group_name(field: Field, n: usize) -> String {
    match field {
        Field::R => format!("O({n})"),
        Field::C => format!("U({n})"),
        Field::H if n == 1 => "SU(2)".into(),
        Field::H => format!("Sp({n})"),
    }
}

pub fn is_nonabelian(field: Field, n: usize) -> bool {
    match field {
        Field::R => n >= 3,
        Field::C => n >= 2,
        Field::H => true,
    }
}

pub fn gauge_group(algebra: &AlgebraSpec) -> Vec<GaugeFactor> {
    algebra
        .summands
        .iter()
        .enumerate()
        .map(|(s, x)| GaugeFactor { summand: s, name: group_name(x.field, x.n), nonabelian: is_nonabelian(x.field, x.n) })
        .collect()
}

pub fn gauge_group_string(algebra: &AlgebraSpec) -> String {
    gauge_group(algebra).iter().map(|f| f.name.clone()).collect::<Vec<_>>().join("×")
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FermionRow {
    pub i: usize,
    pub j: usize,
    pub rep_i: String,
    pub rep_j: String,
    pub multiplicity: usize,
    pub chirality: i64,
    /// Number of multiplicity slots assigned to particles by the declared split.
    pub particle_slots: Option<usize>,
    /// Complex dimension n_i·|μ_ij|·n_j.
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FermionTable {
    pub rows: Vec<FermionRow>,
}

impl FermionTable {
    pub fn particle_dim(&self) -> Option<usize> {
        let mut s = 0;
        for r in &self.rows {
            let n = r.dim / r.multiplicity;
            s += n * r.particle_slots?;
        }
        Some(s)
    }
}

fn rep_label(algebra: &AlgebraSpec, r: Rep) -> String {
    let s = &algebra.summands[r.summand];
    let base = match s.field {
        Field::R => format!("{}R", s.n),
        Field::C => format!("{}C", s.n),
        Field::H => format!("{}H", s.n),
    };
    if r.conj {
        format!("{base}*")
    } else {
        base
    }
}

pub fn fermion_table(t: &FiniteTriple) -> FermionTable {
    let mut rows = vec![];
    for i in 0..t.nrep() {
        for j in 0..t.nrep() {
            let m = t.mu[i][j];
            if m == 0 {
                continue;
            }
            let mult = m.unsigned_abs() as usize;
            let particle_slots = t.s0_split.as_ref().map(|nu| {
                let (a, b) = (nu[i][j].unsigned_abs() as usize, nu[j][i].unsigned_abs() as usize);
                if i < j {
                    a.min(mult)
                } else if i > j {
                    mult - b.min(mult)
                } else {
                    mult / 2
                }
            });
            rows.push(FermionRow {
                i,
                j,
                rep_i: rep_label(&t.algebra, t.reps[i]),
                rep_j: rep_label(&t.algebra, t.reps[j]),
                multiplicity: mult,
                chirality: m.signum(),
                particle_slots,
                dim: t.rep_dim(i) * mult * t.rep_dim(j),
            });
        }
    }
    FermionTable { rows }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Coupling {
    pub summand: usize,
    pub group: String,
    pub row_sum: f64,
    pub g: f64,
}

/// g_s = (2π)^{n/4} √(3/2 / (F4 Λ^{n−4} Σ_s)), Σ_s = Σ_{i∈s} Σ_j |μ_ij| n_j, per nonabelian factor.
pub fn coupling_constants(
    algebra: &AlgebraSpec,
    reps: &[Rep],
    mu: &Mu,
    n: u32,
    f4: f64,
    lambda: f64,
) -> Result<Vec<Coupling>> {
    if !(f4 > 0.0 && lambda > 0.0) {
        return Err(Error::input("constants", "F4 and the cutoff must be positive"));
    }
    let mut out = vec![];
    for f in gauge_group(algebra).into_iter().filter(|f| f.nonabelian) {
        let mut sum = 0.0;
        let mut found = false;
        for (i, r) in reps.iter().enumerate() {
            if r.summand != f.summand {
                continue;
            }
            found = true;
            sum += (0..reps.len()).map(|j| mu[i][j].abs() as f64 * algebra.rep_dim(reps[j]) as f64).sum::<f64>();
        }
        if !found || sum == 0.0 {
            return Err(Error::domain(format!("gauge factor {} of summand {} is not represented", f.name, f.summand)));
        }
        let nf = n as f64;
        let g = (2.0 * PI).powf(nf / 4.0) * (1.5 / (f4 * lambda.powf(nf - 4.0) * sum)).sqrt();
        out.push(Coupling { summand: f.summand, group: f.name, row_sum: sum, g });
    }
    Ok(out)
}

/// π√(F4/2), the closed value printed for g₂ = g₃. The formula above gives π/√(2F4) at n = 4, Σ = 12.
pub fn sm_coupling_reference(f4: f64) -> f64 {
    PI * (f4 / 2.0).sqrt()
}

/// Quartic coefficient π²Q/(2F4L²) with L = tr(M*M) summed over the Yukawa blocks of one column class
/// and Q the corresponding quartic trace.
pub fn quartic_reference(f4: f64, q: f64, l: f64) -> f64 {
    PI * PI * q / (2.0 * f4 * l * l)
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelReport {
    pub gauge_group: String,
    pub factors: Vec<GaugeFactor>,
    pub fermions: FermionTable,
    pub couplings: Vec<Coupling>,
    pub intersection: IntersectionForm,
    pub one_forms: OneFormSummary,
    pub higgs: Vec<HiggsField>,
    pub potential: PotentialCoefficients,
    pub abelian: AbelianReport,
    pub anomaly: Option<AnomalyReport>,
    pub mass_bound: MassBound,
    pub constants: SpectralConstants,
}

pub fn build_model(t: &FiniteTriple, k: &SpectralConstants, charges: Option<&[f64]>) -> Result<ModelReport> {
    let (fs, potential) = scalar_potential(t, k)?;
    let anomaly = t.s0_split.as_ref().map(|nu| anomaly_check(&t.algebra, &t.reps, nu, charges));
    let lin = anomaly.as_ref().map(linear_constraint_matrix);
    let couplings = match coupling_constants(&t.algebra, &t.reps, &t.mu, k.n, k.f4, k.lambda) {
        Ok(c) => c,
        Err(Error::Domain(_)) => vec![],
        Err(e) => return Err(e),
    };
    Ok(ModelReport {
        gauge_group: gauge_group_string(&t.algebra),
        factors: gauge_group(&t.algebra),
        fermions: fermion_table(t),
        couplings,
        intersection: intersection_form(&t.algebra, &t.reps, &t.mu),
        one_forms: fs.space.summary(t),
        higgs: higgs_fields(t, &fs),
        potential,
        abelian: abelian_sector(&t.algebra, &t.reps, &t.mu, None, lin.as_ref())?,
        anomaly,
        mass_bound: mass_bound_check(t, None, None)?,
        constants: k.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::sm;

    #[test]
    fn names() {
        assert_eq!(group_name(Field::R, 2), "O(2)");
        assert_eq!(group_name(Field::C, 1), "U(1)");
        assert_eq!(gauge_group_string(&sm::sm_algebra()), "U(1)×SU(2)×U(3)");
    }

    #[test]
    fn sm_fermions() {
        let t = sm::standard_model_default();
        let ft = fermion_table(&t);
        assert_eq!(ft.rows.len(), 10);
        assert_eq!(ft.rows.iter().map(|r| r.dim).sum::<usize>(), 90);
        assert_eq!(ft.particle_dim(), Some(45));
    }

    #[test]
    fn sm_couplings_equal() {
        let g = coupling_constants(&sm::sm_algebra(), &sm::sm_reps(), &sm::sm_mu(), 4, 2.0, 3.0).unwrap();
        assert_eq!(g.len(), 2);
        for c in &g {
            assert_eq!(c.row_sum, 12.0);
            assert!((c.g - PI / (2.0f64 * 2.0).sqrt()).abs() < 1e-12);
        }
        assert!((g[0].g - g[1].g).abs() < 1e-15);
    }
}
