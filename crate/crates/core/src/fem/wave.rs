use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::sinc;
use crate::params::FlowParams;

use super::dofs::DofKind;

/// Plane wave `exp(i k x·e_r)` at frequency `omega`, `e_r = (cos θ, sin θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    k: f64,
    theta: f64,
    omega: f64,
}

impl PlaneWave {
    /// The exact solution of the convected problem: `k = ω / (1 + M cos θ)`.
    pub fn new(omega: f64, theta: f64, flow: FlowParams) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidParameter {
                name: "omega",
                reason: format!("must be positive and finite, got {omega}"),
            });
        }
        if !theta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "theta",
                reason: "must be finite".into(),
            });
        }
        let k = omega / (1.0 + flow.mach() * theta.cos());
        Ok(Self { k, theta, omega })
    }

    /// Explicit wavenumber, not tied to a dispersion relation.
    pub fn with_wavenumber(k: f64, theta: f64, omega: f64) -> Self {
        Self { k, theta, omega }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn wave_vector(&self) -> [f64; 2] {
        [self.k * self.theta.cos(), self.k * self.theta.sin()]
    }

    pub fn value(&self, x: f64, y: f64) -> Complex64 {
        let [k1, k2] = self.wave_vector();
        Complex64::from_polar(1.0, k1 * x + k2 * y)
    }

    pub fn gradient(&self, x: f64, y: f64) -> [Complex64; 2] {
        let p = self.value(x, y) * Complex64::i();
        let [k1, k2] = self.wave_vector();
        [p * k1, p * k2]
    }

    /// Mean over the edge of length `h` centred at `(x, y)`.
    pub fn edge_mean(&self, kind: DofKind, x: f64, y: f64, h: f64) -> Complex64 {
        let [k1, k2] = self.wave_vector();
        let s = match kind {
            DofKind::HorizontalEdge => sinc(0.5 * k1 * h),
            DofKind::VerticalEdge => sinc(0.5 * k2 * h),
            DofKind::Node => 1.0,
        };
        self.value(x, y) * s
    }

    /// Impedance data `i (k ν·(A e_r) - ω) p` for outward normal `ν`.
    pub fn boundary_data(&self, flow: FlowParams, normal: [f64; 2], x: f64, y: f64) -> Complex64 {
        let [a1, a2] = flow.anisotropy();
        let flux = normal[0] * a1 * self.theta.cos() + normal[1] * a2 * self.theta.sin();
        Complex64::new(0.0, self.k * flux - self.omega) * self.value(x, y)
    }
}
