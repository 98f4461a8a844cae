//! Closed-form quadratics for the six scheme/formulation pairs.
//!
//! Coefficients are scaled so that `a` equals minus the assembled mass
//! symbol of the central patch (`-2` for the edge elements and `-1` for the
//! nodal element as `kappa -> 0`, divided by `1 - M^2` in the Helmholtz form).
//! All `1 - cos` factors are evaluated through `2 sin^2` and the mean-value
//! relations are divided through by `kappa1 kappa2`, which removes the 0/0
//! they exhibit on the coordinate axes.

use crate::error::{Error, Result};
use crate::math::{one_minus_cos, sinc};
use crate::params::Element;

use super::QuadraticInOmega;

/// Denominators closer than this to zero are treated as singular.
const DENOMINATOR_FLOOR: f64 = 1e-8;

/// Denominator of the Helmholtz-form RT1 relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rt1HelmholtzDenominator {
    /// `(C2 + C3)(2 + C2 C3)`, the limit-consistent form.
    Product,
    /// `(C2 + C3) + (2 + C2 C3)`, as it is sometimes typeset.
    PrintedSum,
}

fn guard(value: f64, what: &str) -> Result<()> {
    if value.abs() < DENOMINATOR_FLOOR || !value.is_finite() {
        Err(Error::ProbeOutOfRange(format!("{what} = {value:e} vanishes")))
    } else {
        Ok(())
    }
}

/// `(1 - cos(t)) / t` for the mean-value element.
fn one_minus_cos_over(t: f64) -> f64 {
    let h = 0.5 * t;
    h.sin() * sinc(h)
}

pub(super) fn convected(element: Element, k1: f64, k2: f64, m: f64) -> Result<QuadraticInOmega> {
    let m2 = m * m;
    match element {
        Element::RT1NC => {
            let (s1, c1) = (0.5 * k1).sin_cos();
            let c2 = (0.5 * k2).cos();
            let (v1, v2) = (one_minus_cos(0.5 * k1), one_minus_cos(0.5 * k2));
            let sum = c1 + c2;
            guard(sum, "C1 + C2")?;
            let den = sum * (2.0 + c1 * c2);
            // (C1 + C2)(1 - C1 C2) - M^2 S1^2 C2
            let num = sum * (v1 + c1 * v2) - m2 * s1 * s1 * c2;
            Ok(QuadraticInOmega {
                a: -den / 3.0,
                b: 8.0 / 3.0 * m * s1 * c2 * (2.0 * c1 + c2),
                c: 8.0 * num,
            })
        }
        Element::RT2NC => {
            let (s1, c1) = k1.sin_cos();
            let c2 = k2.cos();
            let (sg1, sg2) = (sinc(k1), sinc(k2));
            let (w1, w2) = (one_minus_cos(k1), one_minus_cos(k2));
            let den = sg2 * (5.0 + c1) + sg1 * (5.0 + c2);
            guard(den, "mean-value denominator")?;
            let g = s1 * sg2 + one_minus_cos_over(k1) * (1.0 + c2);
            let num = (1.0 - m2) * sg2 * w1 + sg1 * w2;
            Ok(QuadraticInOmega {
                a: -den / 6.0,
                b: 2.0 * m * g,
                c: 4.0 * num,
            })
        }
        Element::P1C => {
            let (s1, _) = k1.sin_cos();
            let c2 = k2.cos();
            let (w1, w2) = (one_minus_cos(k1), one_minus_cos(k2));
            // cos k1 cos k2 + 2 (cos k1 + cos k2) + 4
            let den = 9.0 - 3.0 * w1 - 3.0 * w2 + w1 * w2;
            guard(den, "nodal mass symbol")?;
            let num = 3.0 * w1 + 3.0 * w2 - 2.0 * w1 * w2 - m2 * w1 * (3.0 - w2);
            Ok(QuadraticInOmega {
                a: -den / 9.0,
                b: 2.0 / 3.0 * m * s1 * (2.0 + c2),
                c: 2.0 / 3.0 * num,
            })
        }
    }
}

/// `k3` runs along x, `k2` along y.
pub(super) fn helmholtz(
    element: Element,
    k3: f64,
    k2: f64,
    m: f64,
    rt1_denominator: Rt1HelmholtzDenominator,
) -> Result<QuadraticInOmega> {
    let m2 = m * m;
    let inv = 1.0 / (1.0 - m2);
    match element {
        Element::RT1NC => {
            let (s3, c3) = (0.5 * k3).sin_cos();
            let c2 = (0.5 * k2).cos();
            let (v3, v2) = (one_minus_cos(0.5 * k3), one_minus_cos(0.5 * k2));
            let sum = c2 + c3;
            guard(sum, "C2 + C3")?;
            let den = match rt1_denominator {
                Rt1HelmholtzDenominator::Product => sum * (2.0 + c2 * c3),
                Rt1HelmholtzDenominator::PrintedSum => sum + (2.0 + c2 * c3),
            };
            guard(den, "RT1 denominator")?;
            let num = sum * (v3 + c3 * v2) - m2 * c2 * s3 * s3;
            Ok(QuadraticInOmega {
                a: -inv * den / 3.0,
                b: 0.0,
                c: 8.0 * num,
            })
        }
        Element::RT2NC => {
            let (c3, c2) = (k3.cos(), k2.cos());
            let (sg3, sg2) = (sinc(k3), sinc(k2));
            let (w3, w2) = (one_minus_cos(k3), one_minus_cos(k2));
            let den = sg3 * (5.0 + c2) + sg2 * (5.0 + c3);
            guard(den, "mean-value denominator")?;
            let num = sg3 * w2 + (1.0 - m2) * sg2 * w3;
            Ok(QuadraticInOmega {
                a: -inv * den / 6.0,
                b: 0.0,
                c: 4.0 * num,
            })
        }
        Element::P1C => {
            let (w3, w2) = (one_minus_cos(k3), one_minus_cos(k2));
            let den = 9.0 - 3.0 * w2 - 3.0 * w3 + w2 * w3;
            guard(den, "nodal mass symbol")?;
            let num = 3.0 * w2 + 3.0 * w3 - 2.0 * w2 * w3 - m2 * w3 * (3.0 - w2);
            Ok(QuadraticInOmega {
                a: -inv * den / 9.0,
                b: 0.0,
                c: 2.0 / 3.0 * num,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_wave_limits() {
        // Leading symbols: a -> -2 (edges) / -1 (nodes); c -> 2((1-M^2)k1^2 + k2^2) / (1-M^2)k1^2 + k2^2.
        let (k1, k2, m) = (1e-3, 2e-3, 0.6);
        let sym = (1.0 - m * m) * k1 * k1 + k2 * k2;
        for (e, scale) in [(Element::RT1NC, 2.0), (Element::RT2NC, 2.0), (Element::P1C, 1.0)] {
            let q = convected(e, k1, k2, m).unwrap();
            assert!((q.a + scale).abs() < 1e-5, "{e}: a = {}", q.a);
            assert!((q.c / (scale * sym) - 1.0).abs() < 1e-5, "{e}: c = {}", q.c);
            // Linear term ~ 2 M k1 times the mass scale.
            assert!((q.b / (scale * 2.0 * m * k1) - 1.0).abs() < 1e-5, "{e}: b = {}", q.b);
        }
    }

    #[test]
    fn denominators_guarded() {
        // C1 + C2 = 0 at k1 + k2 = 2 pi.
        let err = convected(Element::RT1NC, std::f64::consts::PI, std::f64::consts::PI, 0.3);
        assert!(matches!(err, Err(Error::ProbeOutOfRange(_))));
    }
}
