//! Self-check suites behind `convhelm validate`.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use convhelm_core::dispersion::{
    a1_closed, a1_numeric, dispersion_quotients, helmholtz_rt1_variant, max_transformed_residual,
    scheme_omega, Rt1HelmholtzDenominator,
};
use convhelm_core::fem::{solve_plane_wave, stencil_oracle};
use convhelm_core::linsolve::SolverKind;
use convhelm_core::math::loglog_slope;
use convhelm_core::{Element, FlowParams, Result, SchemeId, WaveProbe};

use crate::sweeps::relative_error;

const SEED: u64 = 0x5eed_2024;
const PROBE_MACHS: [f64; 4] = [0.0, 0.3, 0.6, 0.9];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self { name, passed, detail }
    }
}

/// Random probe with `kappa in (0.01, 1)`, `theta in [0, pi]` and a Mach number
/// from the fixed list.
pub fn random_probe(rng: &mut StdRng) -> (WaveProbe, FlowParams) {
    let kappa = rng.random_range(0.01..1.0);
    let theta = rng.random_range(0.0..=PI);
    let m = PROBE_MACHS[rng.random_range(0..PROBE_MACHS.len())];
    (
        WaveProbe::new(kappa, theta).expect("kappa in range"),
        FlowParams::new(m).expect("Mach in range"),
    )
}

/// Compares `closed` against the patch oracle on `per_scheme` random probes
/// for each scheme.
pub fn oracle_suite_with<F>(closed: F, per_scheme: usize, tol: f64) -> SuiteResult
where
    F: Fn(SchemeId, WaveProbe, FlowParams) -> Result<f64>,
{
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    let mut rootless = 0usize;
    for scheme in SchemeId::all() {
        for _ in 0..per_scheme {
            let (probe, flow) = random_probe(&mut rng);
            let got = closed(scheme, probe, flow);
            let want = stencil_oracle(scheme, probe, flow).and_then(|q| q.positive_root());
            // Helmholtz-form probes near M = 0.9 can alias past the grid
            // Nyquist limit; both sides must then agree there is no root.
            let err = match (got, want) {
                (Ok(a), Ok(b)) => relative_error(a, b),
                (Err(_), Err(_)) => {
                    rootless += 1;
                    0.0
                }
                _ => f64::INFINITY,
            };
            if !(err <= worst) {
                worst = err;
                worst_at = format!("{scheme} kappa={:.4} theta={:.4} M={}", probe.kappa(), probe.theta(), flow.mach());
            }
        }
    }
    SuiteResult::new(
        "oracle-equivalence",
        worst <= tol,
        format!(
            "max relative root mismatch {worst:.2e} (tol {tol:.0e}) at {worst_at}; {rootless} probes rootless on both sides"
        ),
    )
}

pub fn oracle_suite() -> SuiteResult {
    oracle_suite_with(scheme_omega, 100, 1e-12)
}

/// Closed vs numeric leading coefficient on the convected grid. Cells where
/// the closed value is exactly zero use an absolute tolerance scaled by the
/// largest coefficient of that scheme.
pub fn a1_suite() -> SuiteResult {
    let thetas = [0.0, PI / 4.0, 3.0 * PI / 4.0, PI];
    let mut worst = 0.0f64;
    let mut detail = String::new();
    let mut failed = Vec::new();
    for e in Element::ALL {
        let s = SchemeId::convected(e);
        let mut cells = Vec::new();
        for m in PROBE_MACHS {
            let f = FlowParams::new(m).unwrap();
            for t in thetas {
                let c = a1_closed(s, f, t).value;
                let n = a1_numeric(s, f, t).map(|x| x.coefficient.value).unwrap_or(f64::NAN);
                cells.push((m, t, c, n));
            }
        }
        let peak = cells.iter().map(|c| c.2.abs()).fold(0.0, f64::max);
        for (m, t, c, n) in cells {
            let err = if c == 0.0 { (n - c).abs() / peak } else { relative_error(n, c) };
            worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
            if !(err <= 1e-6) {
                failed.push(format!("{s} M={m} theta={t:.4}: {err:.2e}"));
            }
        }
    }
    let spots = [
        (Element::P1C, 1.0 / 24.0),
        (Element::RT1NC, 1.0 / 96.0),
        (Element::RT2NC, 1.0 / 48.0),
    ];
    let f0 = FlowParams::new(0.0).unwrap();
    for (e, want) in spots {
        let got = a1_closed(SchemeId::convected(e), f0, 0.0).value;
        if (got - want).abs() > 1e-15 {
            failed.push(format!("{e} spot value {got} != {want}"));
        }
    }
    detail.push_str(&format!("max error {worst:.2e} (tol 1e-6)"));
    if !failed.is_empty() {
        detail.push_str(&format!("; failing: {}", failed.join("; ")));
    }
    SuiteResult::new("a1-agreement", failed.is_empty(), detail)
}

pub fn transformed_wave_suite() -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(SEED ^ 41);
    let mut worst = 0.0f64;
    for k in [1.0, 3.0] {
        for theta in [0.0, 0.3 * PI] {
            for m in [0.5, 0.9] {
                let f = FlowParams::new(m).unwrap();
                let pts: Vec<(f64, f64)> = (0..100)
                    .map(|_| (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect();
                let omega = k * (1.0 + m * f64::cos(theta));
                let r = max_transformed_residual(k, theta, f, &pts).unwrap_or(f64::INFINITY);
                worst = worst.max(r / (omega * omega));
            }
        }
    }
    SuiteResult::new(
        "transformed-wave-residual",
        worst <= 1e-10,
        format!("max residual / w^2 = {worst:.2e} (tol 1e-10)"),
    )
}

pub fn symmetry_suite() -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(SEED ^ 7);
    let mut worst = 0.0f64;
    for scheme in SchemeId::all() {
        for _ in 0..20 {
            let (probe, flow) = random_probe(&mut rng);
            let (k, t) = (probe.kappa(), probe.theta());
            let mirrored = WaveProbe::new(k, -t).unwrap();
            let a = scheme_omega(scheme, probe, flow);
            let b = scheme_omega(scheme, mirrored, flow);
            let qa = dispersion_quotients(scheme, flow, t, k);
            let qb = dispersion_quotients(scheme, flow, -t, k);
            // A probe with no propagating root must fail on both sides.
            let err = match (a, b) {
                (Ok(a), Ok(b)) => relative_error(b, a),
                (Err(_), Err(_)) => 0.0,
                _ => f64::INFINITY,
            };
            let qerr = match (qa, qb) {
                (Ok(qa), Ok(qb)) => (qa.q_p - qb.q_p).abs().max((qa.q_g - qb.q_g).abs()),
                (Err(_), Err(_)) => 0.0,
                _ => f64::INFINITY,
            };
            let err = err.max(qerr);
            worst = worst.max(err);
        }
    }
    SuiteResult::new(
        "reflection-symmetry",
        worst <= 1e-12,
        format!("max deviation under theta -> -theta {worst:.2e} (tol 1e-12)"),
    )
}

/// Reduced mesh-refinement study: w = 10, n = 16, 32, 64, theta = 0.
pub fn convergence_suite() -> SuiteResult {
    let ns = [16usize, 32, 64];
    let hs: Vec<f64> = ns.iter().map(|&n| 1.0 / n as f64).collect();
    let mut worst = f64::INFINITY;
    let mut worst_at = String::new();
    for e in Element::ALL {
        for m in [0.0, 0.3, 0.6] {
            let f = FlowParams::new(m).unwrap();
            let errs: Result<Vec<f64>> = ns
                .iter()
                .map(|&n| solve_plane_wave(e, f, 10.0, 0.0, n, SolverKind::NestedDissection).map(|r| r.energy_error))
                .collect();
            let rate = errs.map(|v| loglog_slope(&hs, &v)).unwrap_or(f64::NAN);
            if !(rate >= worst) {
                worst = rate;
                worst_at = format!("{e} M={m}");
            }
        }
    }
    SuiteResult::new(
        "fem-convergence",
        worst >= 0.9,
        format!("slowest energy-norm rate {worst:.3} at {worst_at} (need >= 0.9)"),
    )
}

/// How well each reading of the reformulated RT1 denominator matches the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct DenominatorReport {
    pub product_mismatch: f64,
    pub printed_sum_mismatch: f64,
}

impl DenominatorReport {
    pub fn resolved(&self) -> Rt1HelmholtzDenominator {
        if self.product_mismatch <= self.printed_sum_mismatch {
            Rt1HelmholtzDenominator::Product
        } else {
            Rt1HelmholtzDenominator::PrintedSum
        }
    }
}

pub fn denominator_report() -> DenominatorReport {
    let mut rng = StdRng::seed_from_u64(SEED ^ 4);
    let scheme = SchemeId::helmholtz(Element::RT1NC);
    let (mut prod, mut sum) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let (probe, flow) = random_probe(&mut rng);
        let Ok(want) = stencil_oracle(scheme, probe, flow).and_then(|q| q.positive_root()) else {
            continue;
        };
        let root = |v| helmholtz_rt1_variant(probe, flow, v).and_then(|q| q.positive_root());
        prod = prod.max(root(Rt1HelmholtzDenominator::Product).map_or(f64::INFINITY, |x| relative_error(x, want)));
        sum = sum.max(root(Rt1HelmholtzDenominator::PrintedSum).map_or(f64::INFINITY, |x| relative_error(x, want)));
    }
    DenominatorReport {
        product_mismatch: prod,
        printed_sum_mismatch: sum,
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub suites: Vec<SuiteResult>,
    pub denominator: DenominatorReport,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!("{} {}: {}\n", if s.passed { "PASS" } else { "FAIL" }, s.name, s.detail));
        }
        let d = &self.denominator;
        out.push_str(&format!(
            "reformulated RT1 denominator: product (C2+C3)(2+C2C3) mismatch {:.2e}, printed sum (C2+C3)+(2+C2C3) mismatch {:.2e} -> using {:?}\n",
            d.product_mismatch,
            d.printed_sum_mismatch,
            d.resolved()
        ));
        out
    }
}

pub fn run_all() -> ValidationReport {
    ValidationReport {
        suites: vec![
            oracle_suite(),
            a1_suite(),
            transformed_wave_suite(),
            symmetry_suite(),
            convergence_suite(),
        ],
        denominator: denominator_report(),
    }
}
