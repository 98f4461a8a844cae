use std::f64::consts::PI;

use proptest::prelude::*;

use convhelm_core::dispersion::{a1_closed, continuous_omega, scheme_omega};
use convhelm_core::fem::{reference_basis, stencil_oracle};
use convhelm_core::{Element, FlowParams, Formulation, SchemeId, WaveProbe};

fn scheme() -> impl Strategy<Value = SchemeId> {
    (0usize..3, any::<bool>()).prop_map(|(e, helm)| {
        let f = if helm { Formulation::HelmholtzReformulated } else { Formulation::Convected };
        SchemeId::new(Element::ALL[e], f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_forms_match_patch_oracle(s in scheme(), kappa in 0.01f64..0.6, theta in 0.0..=PI, m in 0.0f64..0.8) {
        let f = FlowParams::new(m).unwrap();
        let p = WaveProbe::new(kappa, theta).unwrap();
        let closed = scheme_omega(s, p, f).unwrap();
        let oracle = stencil_oracle(s, p, f).unwrap().positive_root().unwrap();
        prop_assert!((closed - oracle).abs() <= 1e-12 * oracle, "{} vs {}", closed, oracle);
    }

    #[test]
    fn reflection_and_periodicity(s in scheme(), kappa in 0.01f64..1.0, theta in 0.0..=PI, m in 0.0f64..0.9) {
        let f = FlowParams::new(m).unwrap();
        let w = |t: f64| scheme_omega(s, WaveProbe::new(kappa, t).unwrap(), f);
        if let Ok(a) = w(theta) {
            let b = w(-theta).unwrap();
            let c = w(theta + 2.0 * PI).unwrap();
            prop_assert!((a - b).abs() <= 1e-13 * a);
            prop_assert!((a - c).abs() <= 1e-12 * a);
        } else {
            prop_assert!(w(-theta).is_err());
        }
    }

    /// The relative dispersion error is second order with the closed leading
    /// coefficient: (w^h - w) / (w^3 h^2) -> A1 up to O(h^2).
    #[test]
    fn small_probe_error_is_second_order(s in scheme(), theta in 0.0..=PI, m in 0.0f64..0.9) {
        let f = FlowParams::new(m).unwrap();
        let h = 1e-2;
        let w = continuous_omega(1.0, theta, f).unwrap();
        let wh = scheme_omega(s, WaveProbe::new(h, theta).unwrap(), f).unwrap() / h;
        let a1 = a1_closed(s, f, theta).value;
        let ratio = ((wh - w) / (w.powi(3) * h * h)).abs();
        prop_assert!((ratio - a1).abs() <= 1e-2 * a1.max(1e-3) / (1.0 - m * m).powi(3), "{} vs {}", ratio, a1);
    }

    #[test]
    fn shape_functions_form_a_partition_of_unity(xi in -1.0f64..1.0, eta in -1.0f64..1.0, e in 0usize..3) {
        let s = reference_basis(Element::ALL[e]);
        let v = s.values(xi, eta);
        let g = s.gradients(xi, eta);
        prop_assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        prop_assert!(g.iter().map(|g| g[0]).sum::<f64>().abs() < 1e-14);
        prop_assert!(g.iter().map(|g| g[1]).sum::<f64>().abs() < 1e-14);
    }
}

#[test]
fn shape_functions_are_dual_to_their_dofs() {
    for e in Element::ALL {
        let s = reference_basis(e);
        for j in 0..4 {
            for l in 0..4 {
                let v = s.dof_functional(l, |x, y| s.values(x, y)[j]);
                let want = if j == l { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-14, "{e} phi_{j} under l_{l}: {v}");
            }
        }
    }
}
