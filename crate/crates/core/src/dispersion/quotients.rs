//! Phase and group velocity quotients `q_p = v_p / v_p^h`, `q_g = v_g / v_g^h`.

use crate::error::{Error, Result};
use crate::params::{FlowParams, SchemeId, WaveProbe};

use super::{omega_from_components, scheme_omega};

/// One sample of a dispersion-quotient curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    /// `w^h h`
    pub h: f64,
    pub q_p: f64,
    pub q_g: f64,
}

/// Finite-difference gradient of `w^h h` with respect to the dimensionless
/// wave vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupVelocity {
    pub gradient: [f64; 2],
    pub magnitude: f64,
    /// `|g(delta/2) - g(delta)|`, the change removed by one Richardson level.
    pub richardson_correction: f64,
}

/// `|grad w|` of the continuous relation along direction `theta`:
/// `sqrt(1 + 2 M cos(theta) + M^2)`.
pub fn continuous_group_speed(theta: f64, flow: FlowParams) -> f64 {
    let m = flow.mach();
    (1.0 + 2.0 * m * theta.cos() + m * m).sqrt()
}

fn central_gradient(
    scheme: SchemeId,
    flow: FlowParams,
    k1: f64,
    k2: f64,
    delta: f64,
) -> Result<[f64; 2]> {
    let f = |a: f64, b: f64| omega_from_components(scheme, a, b, flow);
    let gx = (f(k1 + delta, k2)? - f(k1 - delta, k2)?) / (2.0 * delta);
    let gy = (f(k1, k2 + delta)? - f(k1, k2 - delta)?) / (2.0 * delta);
    Ok([gx, gy])
}

/// Gradient of `w^h h` by central differences at steps `delta` and `delta/2`
/// combined with one Richardson level. The default step is
/// `1e-5 max(kappa, 0.01)`.
pub fn discrete_group_velocity(
    scheme: SchemeId,
    flow: FlowParams,
    probe: WaveProbe,
    step: Option<f64>,
) -> Result<GroupVelocity> {
    let delta = step.unwrap_or(1e-5 * probe.kappa().max(0.01));
    let (k1, k2) = probe.components();
    let coarse = central_gradient(scheme, flow, k1, k2, delta)?;
    let fine = central_gradient(scheme, flow, k1, k2, 0.5 * delta)?;
    let g = [
        (4.0 * fine[0] - coarse[0]) / 3.0,
        (4.0 * fine[1] - coarse[1]) / 3.0,
    ];
    let correction = (fine[0] - coarse[0]).hypot(fine[1] - coarse[1]);
    Ok(GroupVelocity {
        gradient: g,
        magnitude: g[0].hypot(g[1]),
        richardson_correction: correction,
    })
}

/// Phase and group quotients at the probe `kappa e_theta`.
pub fn dispersion_quotients(
    scheme: SchemeId,
    flow: FlowParams,
    theta: f64,
    kappa: f64,
) -> Result<DispersionPoint> {
    let probe = WaveProbe::new(kappa, theta)?;
    let h = scheme_omega(scheme, probe, flow)?;
    let q_p = kappa * (1.0 + flow.mach() * theta.cos()) / h;
    let vg = discrete_group_velocity(scheme, flow, probe, None)?;
    let q_g = continuous_group_speed(theta, flow) / vg.magnitude;
    Ok(DispersionPoint { h, q_p, q_g })
}

/// Inverts `kappa -> w^h h` along direction `theta` by bisection.
///
/// The map is checked for monotonicity on the bracket before bisecting.
pub fn kappa_for_h(scheme: SchemeId, flow: FlowParams, theta: f64, target: f64) -> Result<f64> {
    if !(target > 0.0) {
        return Err(Error::InvalidParameter {
            name: "H",
            reason: format!("target w^h h must be positive, got {target}"),
        });
    }
    let eval = |k: f64| -> Result<f64> { scheme_omega(scheme, WaveProbe::new(k, theta)?, flow) };
    let speed = 1.0 + flow.mach() * theta.cos();
    let cap = std::f64::consts::PI * (1.0 - 1e-12);
    let mut hi = (target / speed).min(0.5 * cap);
    while eval(hi)? < target {
        if hi >= cap {
            return Err(Error::ProbeOutOfRange(format!(
                "w^h h = {target} not reached below the grid Nyquist limit"
            )));
        }
        hi = (2.0 * hi).min(cap);
    }
    let mut lo = hi * 1e-6;
    if eval(lo)? > target {
        lo = 0.0;
    }

    const SAMPLES: usize = 32;
    let mut prev = if lo > 0.0 { eval(lo)? } else { 0.0 };
    for i in 1..=SAMPLES {
        let k = lo + (hi - lo) * i as f64 / SAMPLES as f64;
        let v = eval(k)?;
        if v <= prev {
            return Err(Error::ProbeOutOfRange(format!(
                "w^h h not monotone in kappa near kappa = {k}"
            )));
        }
        prev = v;
    }

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eval(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
