//! Structured quadrilateral finite elements for the convected problem.
//!
//! The conforming bilinear element and two rotated bilinear (nonconforming)
//! elements share one mesh and one assembly path; they differ only in their
//! DOF placement and local basis.

mod assembly;
mod basis;
mod dofs;
mod element;
mod mesh;
mod norm;
mod oracle;
mod quadrature;
mod solve;
mod wave;

pub use assembly::{assemble, assemble_blocks, boundary_load, AssembledSystem, OperatorBlocks};
pub use basis::{reference_basis, ShapeSet};
pub use dofs::{DofKind, DofMap};
pub use element::{Block, ElementMatrices};
pub use mesh::{build_mesh, QuadMesh, Side};
pub use norm::{energy_norm_error, interpolate_exact};
pub use oracle::{stencil_oracle, stencil_oracle_complex};
pub use quadrature::{gauss_legendre, tensor_rule};
pub use solve::{estimated_solve_bytes, resolution_for, solve_plane_wave, PlaneWaveRun};
pub use wave::PlaneWave;
