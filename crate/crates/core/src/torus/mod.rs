//! Noncommutative torus: algebra, differential calculus, gauge theory, topology and BRS.

pub mod brs;
pub mod forms;
pub mod gauge;
pub mod matpoly;
pub mod poly;
pub mod theta;
pub mod topology;

pub use forms::{ext_d, hodge, wedge, NCForm};
pub use gauge::{
    bianchi_residual, cs_action, cs_gauge_defect, curvature, eom_residual, gauge_transform, ym_action, ym_action_with,
};
pub use matpoly::MatNCPoly;
pub use poly::{nc_comm, nc_derive, nc_mul, nc_star, nc_trace, GPoly, NCPoly};
pub use theta::{center_test, modular_compatible, Theta};
pub use topology::{
    block_product_projector, orientability_cycle, powers_rieffel, powers_rieffel_on, topological_charge,
    PowersRieffel, TopologicalCharge,
};
