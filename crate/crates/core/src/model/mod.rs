//! Yang-Mills-Higgs content of a finite triple.

pub mod abelian;
pub mod anomaly;
pub mod constants;
pub mod higgs;
pub mod intersection;
pub mod oneforms;
pub mod potential;
pub mod report;
pub mod ssb;

pub use abelian::{abelian_sector, AbelianReport};
pub use anomaly::{anomaly_check, AnomalyReport};
pub use constants::SpectralConstants;
pub use higgs::{field_space, higgs_fields, yukawa_blocks, FieldSpace, HiggsField, HiggsValues};
pub use intersection::{intersection_form, IntersectionForm};
pub use potential::{scalar_potential, PotentialCoefficients};
pub use report::{build_model, coupling_constants, fermion_table, gauge_group, ModelReport};
pub use ssb::{mass_bound_check, MassBound};
