use num_complex::Complex64;

use convhelm_core::fem::{
    assemble, assemble_blocks, reference_basis, solve_plane_wave, gauss_legendre, PlaneWave, QuadMesh, Side,
};
use convhelm_core::linsolve::{relative_residual, solve_sparse, SolverKind};
use convhelm_core::{Element, FlowParams, SchemeId};

fn flow(m: f64) -> FlowParams {
    FlowParams::new(m).unwrap()
}

/// `D + D^T` must equal the sum over element boundaries of `phi_i phi_j nu_x`.
#[test]
fn convection_plus_transpose_is_a_boundary_term() {
    let n = 4;
    let mesh = QuadMesh::unit_square(n).unwrap();
    let (t, w) = gauss_legendre(3);
    for e in Element::ALL {
        let (dofs, blocks) = assemble_blocks(&mesh, e, flow(0.5));
        let shapes = reference_basis(e);
        let nd = dofs.len();
        let mut want = vec![0.0; nd * nd];
        for j in 0..n {
            for i in 0..n {
                let ids = dofs.element_dofs(i, j);
                for side in [Side::Right, Side::Left] {
                    let nx = side.outward_normal()[0];
                    for (&t, &w) in t.iter().zip(&w) {
                        let (xi, eta) = side.reference_point(t);
                        let v = shapes.values(xi, eta);
                        for a in 0..4 {
                            for b in 0..4 {
                                want[ids[a] * nd + ids[b]] += nx * 0.5 * mesh.h() * w * v[a] * v[b];
                            }
                        }
                    }
                }
            }
        }
        let d = &blocks.convection;
        let mut worst = 0.0f64;
        for r in 0..nd {
            for c in 0..nd {
                let got = d.get(r, c).re + d.get(c, r).re;
                worst = worst.max((got - want[r * nd + c]).abs());
            }
        }
        assert!(worst < 1e-14, "{e}: {worst:e}");
    }
}

#[test]
fn bilinear_convection_is_skew_away_from_the_boundary() {
    let mesh = QuadMesh::unit_square(5).unwrap();
    let (dofs, blocks) = assemble_blocks(&mesh, Element::P1C, flow(0.3));
    let d = &blocks.convection;
    for r in (0..dofs.len()).filter(|&r| !dofs.is_boundary(r)) {
        for (c, v) in d.row(r) {
            if !dofs.is_boundary(c) {
                assert!((v + d.get(c, r)).norm() < 1e-15, "({r}, {c})");
            }
        }
    }
}

#[test]
fn banded_and_nested_dissection_agree() {
    let mesh = QuadMesh::unit_square(12).unwrap();
    let f = flow(0.6);
    let wave = PlaneWave::new(8.0, 0.7, f).unwrap();
    for e in Element::ALL {
        let sys = assemble(&mesh, SchemeId::convected(e), f, 8.0, &wave).unwrap();
        let coords = sys.dofs.grid_coords();
        let banded = solve_sparse(&sys.matrix, coords, &sys.rhs, SolverKind::Banded).unwrap();
        let nd = solve_sparse(&sys.matrix, coords, &sys.rhs, SolverKind::NestedDissection).unwrap();
        let again = solve_sparse(&sys.matrix, coords, &sys.rhs, SolverKind::NestedDissection).unwrap();
        assert_eq!(nd.solution, again.solution, "{e}: not deterministic");
        for r in [&banded, &nd] {
            assert!(relative_residual(&sys.matrix, &r.solution, &sys.rhs).unwrap() <= 1e-10);
        }
        let scale = banded.solution.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let diff = banded
            .solution
            .iter()
            .zip(&nd.solution)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff <= 1e-10 * scale, "{e}: {diff:e}");
    }
}

#[test]
fn errors_shrink_under_refinement() {
    for e in Element::ALL {
        let errs: Vec<f64> = [8, 16, 32, 64]
            .iter()
            .map(|&n| solve_plane_wave(e, flow(0.3), 6.0, 1.0, n, SolverKind::NestedDissection).unwrap().energy_error)
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] < 0.6 * w[0], "{e}: {errs:?}");
        }
    }
}

/// Without flow, x -> 1 - x maps the wave at theta = 0 onto the wave at
/// theta = pi, and the mesh onto itself.
#[test]
fn mirrored_waves_have_equal_errors_without_flow() {
    for e in Element::ALL {
        let a = solve_plane_wave(e, flow(0.0), 10.0, 0.0, 24, SolverKind::NestedDissection).unwrap();
        let b = solve_plane_wave(e, flow(0.0), 10.0, std::f64::consts::PI, 24, SolverKind::NestedDissection).unwrap();
        let rel = (a.energy_error - b.energy_error).abs() / a.energy_error;
        assert!(rel < 1e-10, "{e}: {} vs {}", a.energy_error, b.energy_error);
    }
}

#[test]
fn impedance_system_is_nonsingular_at_resonant_looking_frequencies() {
    // Pure Dirichlet/Neumann Laplacian eigenvalues on the unit square are
    // pi^2 (a^2 + b^2); the impedance term keeps the system solvable there.
    let mesh = QuadMesh::unit_square(16).unwrap();
    let f = flow(0.0);
    let omega = std::f64::consts::PI * 2f64.sqrt();
    let wave = PlaneWave::new(omega, 0.3, f).unwrap();
    let sys = assemble(&mesh, SchemeId::convected(Element::RT1NC), f, omega, &wave).unwrap();
    let r = solve_sparse(&sys.matrix, sys.dofs.grid_coords(), &sys.rhs, SolverKind::NestedDissection).unwrap();
    assert!(r.relative_residual <= 1e-10);
    assert!(r.solution.iter().all(|z: &Complex64| z.is_finite()));
}
