use std::time::Instant;

use num_complex::Complex64;

use crate::error::Result;
use crate::linsolve::{solve_sparse, SolverKind, Symbolic};
use crate::params::{Element, FlowParams, SchemeId};

use super::assembly::{assemble, assemble_blocks};
use super::mesh::QuadMesh;
use super::norm::energy_norm_error;
use super::wave::PlaneWave;

/// Subdivisions keeping `ω³h² <= 1` on the unit square.
pub fn resolution_for(omega: f64) -> usize {
    (omega.powf(1.5) - 1e-9).ceil().max(1.0) as usize
}

#[derive(Debug, Clone)]
pub struct PlaneWaveRun {
    pub element: Element,
    pub omega: f64,
    pub theta: f64,
    pub n: usize,
    pub h: f64,
    pub dofs: usize,
    pub energy_error: f64,
    pub relative_residual: f64,
    pub solution: Vec<Complex64>,
    pub seconds: f64,
}

/// Solves the plane-wave problem on the unit square and measures the error.
pub fn solve_plane_wave(
    element: Element,
    flow: FlowParams,
    omega: f64,
    theta: f64,
    n: usize,
    solver: SolverKind,
) -> Result<PlaneWaveRun> {
    let start = Instant::now();
    let mesh = QuadMesh::unit_square(n)?;
    let wave = PlaneWave::new(omega, theta, flow)?;
    let sys = assemble(&mesh, SchemeId::convected(element), flow, omega, &wave)?;
    let report = solve_sparse(&sys.matrix, sys.dofs.grid_coords(), &sys.rhs, solver)?;
    let energy_error = energy_norm_error(&report.solution, &wave, &sys.dofs, flow)?;
    Ok(PlaneWaveRun {
        element,
        omega,
        theta,
        n,
        h: mesh.h(),
        dofs: sys.dofs.len(),
        energy_error,
        relative_residual: report.relative_residual,
        solution: report.solution,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Predicted peak memory of the default solver for this problem size.
pub fn estimated_solve_bytes(element: Element, n: usize) -> Result<usize> {
    let mesh = QuadMesh::unit_square(n)?;
    let (dofs, blocks) = assemble_blocks(&mesh, element, FlowParams::new(0.0)?);
    let sym = Symbolic::analyze(&blocks.mass, dofs.grid_coords())?;
    // Matrix, its four blocks and work vectors on top of the factors.
    let nnz = blocks.mass.nnz();
    let sparse = 5 * nnz * (std::mem::size_of::<Complex64>() + std::mem::size_of::<usize>());
    Ok(sym.estimated_peak_bytes() + sparse + 16 * dofs.len() * std::mem::size_of::<Complex64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_rule() {
        assert_eq!(resolution_for(10.0), 32);
        assert_eq!(resolution_for(20.0), 90);
        assert_eq!(resolution_for(40.0), 253);
        assert_eq!(resolution_for(80.0), 716);
        assert_eq!(resolution_for(4.0), 8);
    }

    #[test]
    fn small_solve_is_accurate() {
        let f = FlowParams::new(0.3).unwrap();
        for e in Element::ALL {
            let r = solve_plane_wave(e, f, 4.0, 0.5, 16, SolverKind::NestedDissection).unwrap();
            assert!(r.relative_residual < 1e-10);
            assert!(r.energy_error < 0.3 * (2.0f64 * 16.0).sqrt(), "{e}: {}", r.energy_error);
        }
    }
}
