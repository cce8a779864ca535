//! Finite spectral triples, their Yang-Mills-Higgs models, noncommutative distances
//! and gauge theory on the noncommutative torus.

pub mod cli;
pub mod distance;
pub mod error;
pub mod grassmann;
pub mod io;
pub mod linalg;
pub mod model;
pub mod qft;
pub mod threads;
pub mod torus;
pub mod triple;

pub use error::{Error, Result};
