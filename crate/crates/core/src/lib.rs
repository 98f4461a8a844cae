//! Dispersion analysis and finite-element verification for the convected
//! Helmholtz equation on uniform quadrilateral grids.

pub mod dispersion;
pub mod error;
pub mod fem;
pub mod linsolve;
pub mod math;
pub mod params;

pub use error::{Error, Result};
pub use params::{Element, FlowParams, Formulation, SchemeId, WaveProbe};
