//! Discrete dispersion relation recovered from an assembled 2×2 patch.
//!
//! The patch `[-1, 1]²` (h = 1) is assembled with the ordinary element
//! matrices. The test function is the sum of all interior DOF basis
//! functions; substituting a discrete plane wave for the trial DOFs leaves a
//! quadratic in `ω`, independent of any closed form.

use num_complex::Complex64;

use crate::dispersion::{helmholtz_k3, QuadraticInOmega};
use crate::error::{Error, Result};
use crate::math::sinc_minus_one;
use crate::params::{Element, FlowParams, Formulation, SchemeId, WaveProbe};

use super::basis::reference_basis;
use super::dofs::{DofKind, DofMap};
use super::element::ElementMatrices;
use super::mesh::build_mesh;

/// Complex coefficients `(a, b, c)` of `a x² + b x + c` before taking real parts.
pub fn stencil_oracle_complex(
    scheme: SchemeId,
    probe: WaveProbe,
    flow: FlowParams,
) -> Result<[Complex64; 3]> {
    let (k1, k2) = probe.components();
    let (kx, mass_scale, conv) = match scheme.formulation {
        Formulation::Convected => (k1, 1.0, true),
        Formulation::HelmholtzReformulated => (helmholtz_k3(k1, probe.kappa(), flow), 1.0 / flow.a11(), false),
    };
    let ky = k2;
    let mesh = build_mesh([-1.0, -1.0, 1.0, 1.0], 2)?;
    let dofs = DofMap::new(&mesh, scheme.element);
    let em = ElementMatrices::compute(&reference_basis(scheme.element), 1.0, 3);
    let stiff = em.stiffness(flow.a11());

    // p_j - 1, written without cancellation for small phases.
    let minus_one: Vec<Complex64> = (0..dofs.len())
        .map(|d| {
            let (x, y) = dofs.position(d);
            let phi = kx * x + ky * y;
            let h = 0.5 * phi;
            let e = Complex64::new(-2.0 * h.sin() * h.sin(), phi.sin());
            if scheme.element != Element::RT2NC {
                return e;
            }
            let sm1 = match dofs.kind(d) {
                DofKind::HorizontalEdge => sinc_minus_one(0.5 * kx),
                DofKind::VerticalEdge => sinc_minus_one(0.5 * ky),
                DofKind::Node => 0.0,
            };
            e * (1.0 + sm1) + sm1
        })
        .collect();

    let mut a = Complex64::new(0.0, 0.0);
    let mut s_conv = Complex64::new(0.0, 0.0);
    let mut c = Complex64::new(0.0, 0.0);
    for j in 0..2 {
        for i in 0..2 {
            let g = dofs.element_dofs(i, j);
            for r in 0..4 {
                if dofs.is_boundary(g[r]) {
                    continue;
                }
                for q in 0..4 {
                    let pm1 = minus_one[g[q]];
                    c += stiff[r][q] * pm1;
                    s_conv += em.convection[r][q] * pm1;
                    a -= mass_scale * em.mass[r][q] * (pm1 + 1.0);
                }
            }
        }
    }
    let b = if conv {
        Complex64::new(0.0, -2.0 * flow.mach()) * s_conv
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok([a, b, c])
}

/// Quadratic in `ω h` whose positive root is the patch's discrete frequency.
pub fn stencil_oracle(scheme: SchemeId, probe: WaveProbe, flow: FlowParams) -> Result<QuadraticInOmega> {
    let [a, b, c] = stencil_oracle_complex(scheme, probe, flow)?;
    let scale = a.norm() + b.norm() + c.norm();
    let imag = a.im.abs() + b.im.abs() + c.im.abs();
    if imag > 1e-10 * scale {
        return Err(Error::InvalidParameter {
            name: "probe",
            reason: format!("patch equation is not real (imaginary part {imag:e})"),
        });
    }
    Ok(QuadraticInOmega { a: a.re, b: b.re, c: c.re })
}
