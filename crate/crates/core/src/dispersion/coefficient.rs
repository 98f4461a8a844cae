//! Leading dispersion-error coefficient `A1(M, theta)` in
//! `|w^h - w| = A1 w^3 h^2 + O(w^5 h^4)`.

use crate::error::{Error, Result};
use crate::math::{least_squares, loglog_slope};
use crate::params::{Element, FlowParams, Formulation, SchemeId, WaveProbe};

use super::scheme_omega;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingCoefficient {
    /// Non-negative by definition (absolute value of the signed coefficient).
    pub value: f64,
    pub scheme: SchemeId,
    pub mach: f64,
    pub theta: f64,
}

/// Closed-form `A1` for each scheme and formulation.
pub fn a1_closed(scheme: SchemeId, flow: FlowParams, theta: f64) -> LeadingCoefficient {
    let m = flow.mach();
    let c = |k: f64| (k * theta).cos();
    let value = match (scheme.formulation, scheme.element) {
        (Formulation::Convected, Element::RT1NC) => {
            let num = 2.0 * (1.0 + c(4.0))
                + 4.0 * m * (c(3.0) - 3.0 * c(1.0))
                + m * m * (c(4.0) - 6.0 * c(2.0) - 7.0);
            num.abs() / (384.0 * (1.0 + m * c(1.0)).powi(3))
        }
        (Formulation::Convected, Element::RT2NC) => {
            let num = 2.0 * (1.0 + c(4.0))
                + 4.0 * m * (c(3.0) - c(1.0))
                + m * m * (c(4.0) - 2.0 * c(2.0) - 3.0);
            num.abs() / (192.0 * (1.0 + m * c(1.0)).powi(3))
        }
        (Formulation::Convected, Element::P1C) => {
            let num = 3.0 + c(4.0) - 4.0 * m * m * c(1.0).powi(4);
            num.abs() / (96.0 * (1.0 + m * c(1.0)).powi(3))
        }
        (Formulation::HelmholtzReformulated, Element::RT1NC) => helmholtz_rt1(m, theta),
        (Formulation::HelmholtzReformulated, Element::RT2NC) => 2.0 * helmholtz_rt1(m, theta),
        (Formulation::HelmholtzReformulated, Element::P1C) => {
            let (s, ct) = theta.sin_cos();
            let d = 1.0 - m * m;
            let num = ct.powi(4)
                + 4.0 * m * ct.powi(3)
                + 6.0 * m * m * ct * ct
                + 4.0 * m.powi(3) * ct
                + m.powi(4)
                + d.powi(3) * s.powi(4);
            num.abs() / (24.0 * d * d * (1.0 + m * ct).powi(4))
        }
    };
    LeadingCoefficient {
        value,
        scheme,
        mach: m,
        theta,
    }
}

fn helmholtz_rt1(m: f64, theta: f64) -> f64 {
    let c = |k: f64| (k * theta).cos();
    let (m2, m4, m6) = (m * m, m.powi(4), m.powi(6));
    let num = (4.0 + 10.0 * m2 + 28.0 * m4 - 7.0 * m6)
        + 4.0 * m * (4.0 + 11.0 * m2 - m4) * c(1.0)
        + 4.0 * m2 * (11.0 - 6.0 * m2 + 2.0 * m4) * c(2.0)
        + 4.0 * m * (4.0 - 3.0 * m2 + m4) * c(3.0)
        + (4.0 - 6.0 * m2 + 4.0 * m4 - m6) * c(4.0);
    let d = 1.0 - m2;
    num.abs() / (768.0 * d * d * (1.0 + m * c(1.0)).powi(4))
}

/// Geometric step ladder `h_m = h0 r^m`, `m = 0..levels`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderConfig {
    pub h0: f64,
    pub levels: usize,
    pub ratio: f64,
}

impl Default for LadderConfig {
    fn default() -> Self {
        Self::halving(0.1, 5)
    }
}

impl LadderConfig {
    pub fn halving(h0: f64, levels: usize) -> Self {
        Self { h0, levels, ratio: 0.5 }
    }

    pub fn steps(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.levels).map(move |m| self.h0 * self.ratio.powi(m as i32))
    }
}

/// One rung of the dispersion-error ladder at unit wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderPoint {
    pub h: f64,
    pub omega: f64,
    pub omega_h: f64,
    /// Signed `(w^h - w) / (w^3 h^2)`.
    pub ratio: f64,
}

impl LadderPoint {
    pub fn error(&self) -> f64 {
        self.omega_h - self.omega
    }
}

/// Evaluates `w^h` on the ladder with `k = 1`, so `w = 1 + M cos(theta)` and
/// the probe is `kappa = h e_theta`.
pub fn dispersion_error_ladder(
    scheme: SchemeId,
    flow: FlowParams,
    theta: f64,
    ladder: &LadderConfig,
) -> Result<Vec<LadderPoint>> {
    let omega = 1.0 + flow.mach() * theta.cos();
    if !(omega > 0.0) {
        return Err(Error::InvalidParameter {
            name: "theta",
            reason: format!("1 + M cos(theta) = {omega} must be positive"),
        });
    }
    ladder
        .steps()
        .map(|h| {
            let omega_h = scheme_omega(scheme, WaveProbe::new(h, theta)?, flow)? / h;
            Ok(LadderPoint {
                h,
                omega,
                omega_h,
                ratio: (omega_h - omega) / (omega.powi(3) * h * h),
            })
        })
        .collect()
}

/// Richardson estimate of `A1` with its error bar.
#[derive(Debug, Clone, PartialEq)]
pub struct A1Estimate {
    pub coefficient: LeadingCoefficient,
    /// Difference between the two finest extrapolated values.
    pub residual: f64,
    /// Signed extrapolated values, coarsest pair first.
    pub extrapolated: Vec<f64>,
    pub ladder: Vec<LadderPoint>,
}

/// [`a1_numeric_with`] on the default ladder (`h0 = 0.1`, five levels).
pub fn a1_numeric(scheme: SchemeId, flow: FlowParams, theta: f64) -> Result<A1Estimate> {
    a1_numeric_with(scheme, flow, theta, &LadderConfig::default())
}

/// Estimates `A1` from the ladder by eliminating the `h^2` remainder:
/// `(4 r(h/2) - r(h)) / 3` on consecutive rungs.
pub fn a1_numeric_with(
    scheme: SchemeId,
    flow: FlowParams,
    theta: f64,
    ladder: &LadderConfig,
) -> Result<A1Estimate> {
    if ladder.levels < 3 || ladder.ratio != 0.5 {
        return Err(Error::InvalidParameter {
            name: "levels",
            reason: "Richardson needs a halving ladder with at least three rungs".into(),
        });
    }
    let points = dispersion_error_ladder(scheme, flow, theta, ladder)?;
    let extrapolated: Vec<f64> = points
        .windows(2)
        .map(|w| (4.0 * w[1].ratio - w[0].ratio) / 3.0)
        .collect();
    let diffs: Vec<f64> = extrapolated.windows(2).map(|w| (w[1] - w[0]).abs()).collect();

    // Rounding in w^h is about eps w, i.e. eps / (w^2 h^2) in the ratio.
    let omega = points[0].omega;
    let noise = |h: f64| 64.0 * f64::EPSILON / (omega * omega * h * h);
    for (i, w) in diffs.windows(2).enumerate() {
        let floor = noise(points[i + 3].h);
        if w[1] > w[0] && w[1] > floor {
            return Err(Error::NonConvergentLadder(format!(
                "Richardson residual grew from {:e} to {:e} at h = {}",
                w[0],
                w[1],
                points[i + 3].h
            )));
        }
    }

    let best = *extrapolated.last().unwrap();
    Ok(A1Estimate {
        coefficient: LeadingCoefficient {
            value: best.abs(),
            scheme,
            mach: flow.mach(),
            theta,
        },
        residual: *diffs.last().unwrap(),
        extrapolated,
        ladder: points,
    })
}

/// Least-squares fit of `w^h - w = Σ c_p h^p` over a ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorExpansion {
    pub powers: Vec<i32>,
    pub coefficients: Vec<f64>,
}

impl ErrorExpansion {
    pub fn coefficient(&self, power: i32) -> Option<f64> {
        self.powers.iter().position(|&p| p == power).map(|i| self.coefficients[i])
    }

    /// Largest `|c_p / c_2|` over odd `p`.
    pub fn max_odd_ratio(&self) -> f64 {
        let c2 = self.coefficient(2).unwrap_or(f64::NAN);
        self.powers
            .iter()
            .zip(&self.coefficients)
            .filter(|(p, _)| *p % 2 != 0)
            .map(|(_, c)| (c / c2).abs())
            .fold(0.0, f64::max)
    }
}

/// Ladder and basis used for the expansion check: twelve-ish rungs spaced by
/// `2^{-1/2}` from `h = 0.5`, even powers up to 12 plus `h` and `h^3`.
pub fn expansion_ladder() -> (LadderConfig, Vec<i32>) {
    (
        LadderConfig {
            h0: 0.5,
            levels: 14,
            ratio: 0.5f64.sqrt(),
        },
        vec![1, 2, 3, 4, 6, 8, 10, 12],
    )
}

pub fn fit_error_expansion(
    scheme: SchemeId,
    flow: FlowParams,
    theta: f64,
    ladder: &LadderConfig,
    powers: &[i32],
) -> Result<ErrorExpansion> {
    if ladder.levels < powers.len() {
        return Err(Error::InvalidParameter {
            name: "levels",
            reason: format!("{} rungs cannot determine {} coefficients", ladder.levels, powers.len()),
        });
    }
    let points = dispersion_error_ladder(scheme, flow, theta, ladder)?;
    let design: Vec<f64> = points
        .iter()
        .flat_map(|p| powers.iter().map(move |&k| p.h.powi(k)))
        .collect();
    let y: Vec<f64> = points.iter().map(LadderPoint::error).collect();
    Ok(ErrorExpansion {
        powers: powers.to_vec(),
        coefficients: least_squares(&design, powers.len(), &y),
    })
}

/// Log-log slope of `|w^h - w|` against `h`.
pub fn fitted_order(points: &[LadderPoint]) -> f64 {
    let h: Vec<f64> = points.iter().map(|p| p.h).collect();
    let e: Vec<f64> = points.iter().map(|p| p.error().abs()).collect();
    loglog_slope(&h, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn flow(m: f64) -> FlowParams {
        FlowParams::new(m).unwrap()
    }

    #[test]
    fn closed_form_spot_values() {
        let at = |e, m, th| a1_closed(SchemeId::convected(e), flow(m), th).value;
        assert!((at(Element::P1C, 0.0, 0.0) - 1.0 / 24.0).abs() < 1e-16);
        assert!((at(Element::RT1NC, 0.0, 0.0) - 1.0 / 96.0).abs() < 1e-16);
        assert!((at(Element::RT2NC, 0.0, 0.0) - 1.0 / 48.0).abs() < 1e-16);
        let strong = at(Element::RT1NC, 0.9, PI);
        let want = (4.0f64 + 7.2 - 9.72).abs() / (384.0 * 0.1f64.powi(3));
        assert!((strong - want).abs() < 1e-12 * want);
        assert!((strong - 3.854).abs() < 1e-3);
    }

    #[test]
    fn helmholtz_rt2_doubles_rt1() {
        for &(m, th) in &[(0.0, 0.0), (0.45, 1.0), (0.95, 2.5)] {
            let r1 = a1_closed(SchemeId::helmholtz(Element::RT1NC), flow(m), th).value;
            let r2 = a1_closed(SchemeId::helmholtz(Element::RT2NC), flow(m), th).value;
            assert_eq!(r2, 2.0 * r1);
        }
    }

    #[test]
    fn zero_flow_formulations_share_a1() {
        for e in Element::ALL {
            for &th in &[0.0, 0.3, 1.2, 2.9] {
                let a = a1_closed(SchemeId::convected(e), flow(0.0), th).value;
                let b = a1_closed(SchemeId::helmholtz(e), flow(0.0), th).value;
                assert!((a - b).abs() < 1e-16, "{e} {th}: {a} {b}");
            }
        }
    }

    #[test]
    fn numeric_rt1_axis() {
        let est = a1_numeric(SchemeId::convected(Element::RT1NC), flow(0.0), 0.0).unwrap();
        assert!((est.coefficient.value - 1.0 / 96.0).abs() < 1e-8);
        assert!(est.residual < 1e-8);
        assert_eq!(est.ladder.len(), 5);
    }

    #[test]
    fn ladder_rejects_stagnant_flow() {
        // 1 + M cos(theta) must stay positive.
        let err = dispersion_error_ladder(
            SchemeId::convected(Element::P1C),
            flow(0.5),
            PI,
            &LadderConfig::default(),
        );
        assert!(err.is_ok());
        let too_short = LadderConfig::halving(0.1, 2);
        assert!(a1_numeric_with(SchemeId::convected(Element::P1C), flow(0.5), 0.0, &too_short).is_err());
    }

    #[test]
    fn expansion_has_no_odd_terms() {
        let f = FlowParams::new(0.3).unwrap();
        let (ladder, powers) = expansion_ladder();
        let s = SchemeId::convected(Element::P1C);
        let fit = fit_error_expansion(s, f, 1.0, &ladder, &powers).unwrap();
        assert!(fit.max_odd_ratio() < 1e-8);
        // Leading coefficient is the signed A1 scaled by w^3.
        let w: f64 = 1.0 + 0.3 * 1.0f64.cos();
        let a1 = a1_closed(s, f, 1.0).value;
        assert!((fit.coefficient(2).unwrap().abs() - a1 * w.powi(3)).abs() < 1e-8);
        let pts = dispersion_error_ladder(s, f, 1.0, &LadderConfig::default()).unwrap();
        assert!((fitted_order(&pts) - 2.0).abs() < 0.01);
        assert!(fit_error_expansion(s, f, 1.0, &LadderConfig::halving(0.1, 3), &powers).is_err());
    }
}
