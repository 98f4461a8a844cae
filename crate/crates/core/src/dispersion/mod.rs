//! Continuous and discrete dispersion relations of the convected Helmholtz
//! equation `-div(A grad p) - 2 i w M.grad p - w^2 p = 0`.
//!
//! Every discrete relation is carried as a quadratic in the dimensionless
//! frequency `wh`; the physical branch is its positive root. Working with the
//! quadratic keeps the relations regular at `M = 0`, where the solved forms
//! have `M` in a denominator.

mod closed;
mod coefficient;
mod transformed;
mod quotients;

pub use closed::Rt1HelmholtzDenominator;
pub use coefficient::{
    a1_closed, a1_numeric, a1_numeric_with, dispersion_error_ladder, expansion_ladder,
    fit_error_expansion, fitted_order, A1Estimate, ErrorExpansion, LadderConfig, LadderPoint,
    LeadingCoefficient,
};
pub use transformed::{max_transformed_residual, transformed_wave_residual};
pub use quotients::{
    continuous_group_speed, discrete_group_velocity, dispersion_quotients, kappa_for_h,
    DispersionPoint, GroupVelocity,
};

use crate::error::{Error, Result};
use crate::params::{FlowParams, Formulation, SchemeId, WaveProbe};

/// Continuous dispersion relation `w = k1 M + |k| = k (1 + M cos(theta))`.
pub fn continuous_omega(k: f64, theta: f64, flow: FlowParams) -> Result<f64> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: format!("wavenumber must be positive, got {k}"),
        });
    }
    Ok(k * (1.0 + flow.mach() * theta.cos()))
}

/// Wavenumber along x after the phase transform to the pure Helmholtz form:
/// `kappa3 = (kappa1 + kappa M) / (1 - M^2)` with `kappa = |kappa|`.
pub fn helmholtz_k3(kappa1: f64, kappa: f64, flow: FlowParams) -> f64 {
    (kappa1 + kappa * flow.mach()) / flow.a11()
}

/// `a (wh)^2 + b (wh) + c = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticInOmega {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadraticInOmega {
    pub fn eval(&self, x: f64) -> f64 {
        (self.a * x + self.b) * x + self.c
    }

    /// Both real roots, smaller first. `None` for a negative discriminant.
    pub fn real_roots(&self) -> Option<(f64, f64)> {
        let QuadraticInOmega { a, b, c } = *self;
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 || a == 0.0 {
            return None;
        }
        // Avoids cancellation between -b and the square root.
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / a, c / q) };
        Some(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
    }

    /// The physical (largest positive) root.
    pub fn positive_root(&self) -> Result<f64> {
        if !(self.a < 0.0) {
            return Err(Error::ProbeOutOfRange(format!(
                "mass coefficient a = {:e} is not negative",
                self.a
            )));
        }
        match self.real_roots() {
            Some((_, hi)) if hi > 0.0 => Ok(hi),
            _ => Err(Error::NoPositiveRoot {
                a: self.a,
                b: self.b,
                c: self.c,
            }),
        }
    }

    /// Coefficients divided by `-a`, i.e. `-(wh)^2 + beta (wh) + gamma`.
    pub fn normalized(&self) -> Self {
        let s = -1.0 / self.a;
        Self {
            a: -1.0,
            b: self.b * s,
            c: self.c * s,
        }
    }
}

/// Exact quadratic in `wh` for the given scheme and probe.
///
/// For the Helmholtz-reformulated family the transformed component `kappa3` is
/// formed internally and the linear term vanishes.
pub fn scheme_quadratic(
    scheme: SchemeId,
    probe: WaveProbe,
    flow: FlowParams,
) -> Result<QuadraticInOmega> {
    let (k1, k2) = probe.components();
    quadratic_from_components(scheme, k1, k2, flow)
}

/// Discrete dimensionless frequency `w^h h` (the positive root).
pub fn scheme_omega(scheme: SchemeId, probe: WaveProbe, flow: FlowParams) -> Result<f64> {
    scheme_quadratic(scheme, probe, flow)?.positive_root()
}

/// Same as [`scheme_quadratic`] on raw Cartesian components, without the
/// magnitude bound of [`WaveProbe`]. Used for finite differences.
pub(crate) fn quadratic_from_components(
    scheme: SchemeId,
    k1: f64,
    k2: f64,
    flow: FlowParams,
) -> Result<QuadraticInOmega> {
    match scheme.formulation {
        Formulation::Convected => closed::convected(scheme.element, k1, k2, flow.mach()),
        Formulation::HelmholtzReformulated => {
            let k3 = helmholtz_k3(k1, k1.hypot(k2), flow);
            closed::helmholtz(
                scheme.element,
                k3,
                k2,
                flow.mach(),
                Rt1HelmholtzDenominator::Product,
            )
        }
    }
}

pub(crate) fn omega_from_components(
    scheme: SchemeId,
    k1: f64,
    k2: f64,
    flow: FlowParams,
) -> Result<f64> {
    quadratic_from_components(scheme, k1, k2, flow)?.positive_root()
}

/// Helmholtz-form RT1 quadratic with an explicit choice of denominator
/// variant, for reporting which variant agrees with the patch oracle.
pub fn helmholtz_rt1_variant(
    probe: WaveProbe,
    flow: FlowParams,
    variant: Rt1HelmholtzDenominator,
) -> Result<QuadraticInOmega> {
    let (k1, k2) = probe.components();
    let k3 = helmholtz_k3(k1, probe.kappa(), flow);
    closed::helmholtz(crate::params::Element::RT1NC, k3, k2, flow.mach(), variant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Element;
    use std::f64::consts::PI;

    fn flow(m: f64) -> FlowParams {
        FlowParams::new(m).unwrap()
    }

    #[test]
    fn continuous_examples() {
        assert!((continuous_omega(1.0, 0.0, flow(0.5)).unwrap() - 1.5).abs() < 1e-15);
        assert!((continuous_omega(2.0, PI, flow(0.5)).unwrap() - 1.0).abs() < 1e-15);
        assert!((continuous_omega(1.0, PI / 2.0, flow(0.9)).unwrap() - 1.0).abs() < 1e-15);
        assert!(continuous_omega(0.0, 0.0, flow(0.5)).is_err());
        assert!(continuous_omega(-1.0, 0.0, flow(0.5)).is_err());
    }

    #[test]
    fn k3_examples() {
        assert!((helmholtz_k3(1.0, 1.0, flow(0.5)) - 2.0).abs() < 1e-15);
        assert_eq!(helmholtz_k3(0.37, 0.5, flow(0.0)), 0.37);
        // kappa3 = kappa1 + (wh) M / (1 - M^2) with wh from the continuous relation.
        for &(k, th, m) in &[(0.3, 0.4, 0.3), (0.8, 2.0, 0.6), (0.1, PI, 0.9)] {
            let f = flow(m);
            let k1 = k * f64::cos(th);
            let wh = continuous_omega(k, th, f).unwrap();
            let lhs = helmholtz_k3(k1, k, f);
            let rhs = k1 + wh * m / (1.0 - m * m);
            assert!((lhs - rhs).abs() < 1e-14 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn rt1_zero_flow_has_no_linear_term() {
        let p = WaveProbe::new(0.4, 0.7).unwrap();
        let q = scheme_quadratic(SchemeId::convected(Element::RT1NC), p, flow(0.0)).unwrap();
        assert_eq!(q.b, 0.0);
    }

    #[test]
    fn rt1_axis_value() {
        // Solved form at M -> 0: (wh)^2 = 24 (1 - C1) / (2 + C1), C1 = cos(0.1).
        let p = WaveProbe::new(0.2, 0.0).unwrap();
        let wh = scheme_omega(SchemeId::convected(Element::RT1NC), p, flow(0.0)).unwrap();
        let c1 = f64::cos(0.1);
        let direct = (24.0 * (1.0 - c1) / (2.0 + c1)).sqrt();
        assert!((wh - direct).abs() < 1e-14);
        assert!((wh - 0.200083).abs() < 1e-6);
    }

    #[test]
    fn helmholtz_has_no_linear_term() {
        let p = WaveProbe::new(0.3, 1.1).unwrap();
        for e in Element::ALL {
            let q = scheme_quadratic(SchemeId::helmholtz(e), p, flow(0.6)).unwrap();
            assert_eq!(q.b, 0.0);
            assert!(q.a < 0.0);
        }
    }

    #[test]
    fn zero_flow_formulations_agree() {
        for e in Element::ALL {
            for &(k, th) in &[(0.2, 0.0), (0.9, 1.0), (2.5, 3.0)] {
                let p = WaveProbe::new(k, th).unwrap();
                let a = scheme_omega(SchemeId::convected(e), p, flow(0.0)).unwrap();
                let b = scheme_omega(SchemeId::helmholtz(e), p, flow(0.0)).unwrap();
                assert!((a - b).abs() <= 1e-14 * a, "{e}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn p1c_matches_solved_form() {
        // Positive root of x^2 - 6 M G3 x + 6 N3 / D3 = 0 in the printed variables.
        for &(k, th, m) in &[(0.3, 0.2, 0.3), (0.7, 2.2, 0.9), (1.5, 1.0, 0.6)] {
            let p = WaveProbe::new(k, th).unwrap();
            let (k1, k2) = p.components();
            let (c1, c2, s1) = (k1.cos(), k2.cos(), k1.sin());
            let d3 = c1 * c2 + 2.0 * (c1 + c2) + 4.0;
            let g3 = s1 * (2.0 + c2) / d3;
            let n3 = 2.0 * c1 * c2 + c1 + c2 - 4.0 + m * m * (2.0 - c1 * c2 - 2.0 * c1 + c2);
            let direct =
                3.0 * m * g3 + ((3.0 * m * g3).powi(2) - 6.0 * n3 / d3).sqrt();
            let wh = scheme_omega(SchemeId::convected(Element::P1C), p, flow(m)).unwrap();
            assert!((wh - direct).abs() <= 1e-12 * direct, "{wh} vs {direct}");
        }
    }

    #[test]
    fn rt_solved_forms_off_axis() {
        // Printed solved forms, evaluated where they are non-degenerate.
        for &(k, th, m) in &[(0.3, 0.4, 0.3), (0.8, 2.0, 0.6), (0.5, 1.2, 0.9)] {
            let p = WaveProbe::new(k, th).unwrap();
            let (k1, k2) = p.components();
            let (cc1, cc2, ss1) = ((k1 / 2.0).cos(), (k2 / 2.0).cos(), (k1 / 2.0).sin());
            let g1 = ss1 * cc2 * (2.0 * cc1 + cc2) / ((cc1 + cc2) * (cc1 * cc2 + 2.0));
            let inner = 1.5 * ((cc1 + cc2) * (1.0 - cc1 * cc2) - m * m * ss1 * ss1 * cc2)
                / (m * m * (cc1 + cc2) * (2.0 + cc1 * cc2));
            let rt1 = 4.0 * m * (g1 + (g1 * g1 + inner).sqrt());
            let got = scheme_omega(SchemeId::convected(Element::RT1NC), p, flow(m)).unwrap();
            assert!((got - rt1).abs() <= 1e-11 * rt1, "RT1 {got} vs {rt1}");

            let (c1, c2, s1, s2) = (k1.cos(), k2.cos(), k1.sin(), k2.sin());
            let den = k1 * s2 * (5.0 + c1) + k2 * s1 * (5.0 + c2);
            let g2 = (k1 * s1 * s2 + k2 * (1.0 - c1) * (1.0 + c2)) / den;
            let inner2 = (2.0 / 3.0)
                * (k1 * s2 * (1.0 - c1) + k2 * s1 * (1.0 - c2) - m * m * k1 * s2 * (1.0 - c1))
                / (m * m * den);
            let rt2 = 6.0 * m * (g2 + (g2 * g2 + inner2).sqrt());
            let got = scheme_omega(SchemeId::convected(Element::RT2NC), p, flow(m)).unwrap();
            assert!((got - rt2).abs() <= 1e-11 * rt2, "RT2 {got} vs {rt2}");
        }
    }

    #[test]
    fn quadratic_roots() {
        let q = QuadraticInOmega { a: -1.0, b: 0.0, c: 4.0 };
        assert_eq!(q.real_roots(), Some((-2.0, 2.0)));
        assert_eq!(q.positive_root().unwrap(), 2.0);
        let q = QuadraticInOmega { a: -1.0, b: 0.0, c: -4.0 };
        assert!(matches!(q.positive_root(), Err(Error::NoPositiveRoot { .. })));
        let q = QuadraticInOmega { a: 1.0, b: 0.0, c: -4.0 };
        assert!(q.positive_root().is_err());
    }
}
