//! Residual check for the phase transform `u = p exp(i w M x / (1 - M^2))`
//! that maps convected plane waves onto solutions of
//! `-div(A grad u) - w^2 / (1 - M^2) u = 0`.

use num_complex::Complex64;

use crate::error::Result;
use crate::params::FlowParams;

use super::continuous_omega;

/// Residual of the reformulated operator applied to the transformed wave at
/// one point, by the product rule on `p` and the phase factor.
pub fn transformed_wave_residual(k: f64, theta: f64, flow: FlowParams, x: f64, y: f64) -> Result<Complex64> {
    let omega = continuous_omega(k, theta, flow)?;
    Ok(residual_at(k, theta, omega, flow, x, y))
}

fn residual_at(k: f64, theta: f64, omega: f64, flow: FlowParams, x: f64, y: f64) -> Complex64 {
    let d = flow.a11();
    let beta = omega * flow.mach() / d;
    let (kx, ky) = (k * theta.cos(), k * theta.sin());
    let i = Complex64::i();

    let p = (i * (kx * x + ky * y)).exp();
    let p_x = i * kx * p;
    let p_xx = -kx * kx * p;
    let p_yy = -ky * ky * p;
    let alpha = (i * beta * x).exp();
    let alpha_x = i * beta * alpha;
    let alpha_xx = -beta * beta * alpha;

    let u_xx = p_xx * alpha + 2.0 * p_x * alpha_x + p * alpha_xx;
    let u_yy = p_yy * alpha;
    let u = p * alpha;
    -d * u_xx - u_yy - omega * omega / d * u
}

/// Maximum residual modulus over the sample points.
pub fn max_transformed_residual(k: f64, theta: f64, flow: FlowParams, sample_points: &[(f64, f64)]) -> Result<f64> {
    sample_points.iter().try_fold(0.0f64, |acc, &(x, y)| {
        Ok(acc.max(transformed_wave_residual(k, theta, flow, x, y)?.norm()))
    })
}
