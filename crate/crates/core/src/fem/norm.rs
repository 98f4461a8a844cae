use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Element, FlowParams};

use super::basis::reference_basis;
use super::dofs::DofMap;
use super::quadrature::tensor_rule;
use super::wave::PlaneWave;

/// DOF values of the plane wave: point values at nodes and midpoints, edge
/// means for the mean-value element.
pub fn interpolate_exact(wave: &PlaneWave, dofs: &DofMap) -> Vec<Complex64> {
    let h = dofs.mesh().h();
    (0..dofs.len())
        .map(|d| {
            let (x, y) = dofs.position(d);
            match dofs.element() {
                Element::RT2NC => wave.edge_mean(dofs.kind(d), x, y, h),
                _ => wave.value(x, y),
            }
        })
        .collect()
}

/// Energy-norm distance `(Σ_K ∫ |√A ∇(p - p_h)|² + ω² |p - p_h|²)^{1/2}`
/// with broken gradients and a 3×3 Gauss rule per element.
pub fn energy_norm_error(solution: &[Complex64], wave: &PlaneWave, dofs: &DofMap, flow: FlowParams) -> Result<f64> {
    if solution.len() != dofs.len() {
        return Err(Error::DimensionMismatch {
            expected: dofs.len(),
            got: solution.len(),
        });
    }
    let mesh = dofs.mesh();
    let shapes = reference_basis(dofs.element());
    let rule = tensor_rule(3);
    let tab: Vec<_> = rule
        .iter()
        .map(|&(xi, eta, w)| (xi, eta, w, shapes.values(xi, eta), shapes.gradients(xi, eta)))
        .collect();
    let (h, n) = (mesh.h(), mesh.n());
    let (a1, w2) = (flow.a11(), wave.omega() * wave.omega());
    let (jac, area) = (2.0 / h, 0.25 * h * h);
    let mut total = 0.0;
    for j in 0..n {
        for i in 0..n {
            let g = dofs.element_dofs(i, j);
            let u = g.map(|d| solution[d]);
            for (xi, eta, w, v, gr) in &tab {
                let (x, y) = mesh.to_physical(i, j, *xi, *eta);
                let mut ph = Complex64::new(0.0, 0.0);
                let mut gx = ph;
                let mut gy = ph;
                for k in 0..4 {
                    ph += u[k] * v[k];
                    gx += u[k] * gr[k][0];
                    gy += u[k] * gr[k][1];
                }
                let p = wave.value(x, y);
                let dp = wave.gradient(x, y);
                let ex = dp[0] - gx * jac;
                let ey = dp[1] - gy * jac;
                total += w * area * (a1 * ex.norm_sqr() + ey.norm_sqr() + w2 * (p - ph).norm_sqr());
            }
        }
    }
    Ok(total.sqrt())
}
