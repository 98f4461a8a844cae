//! Parameter sweeps. Each sweep fans out over a worker pool and returns rows
//! sorted by (scheme, formulation, M, theta, abscissa).

use std::cmp::Ordering;

use rayon::prelude::*;

use convhelm_core::dispersion::{
    a1_closed, a1_numeric_with, dispersion_quotients, kappa_for_h, LadderConfig,
};
use convhelm_core::fem::{estimated_solve_bytes, resolution_for, solve_plane_wave};
use convhelm_core::linsolve::SolverKind;
use convhelm_core::{Element, Error, FlowParams, Formulation, SchemeId};

use crate::config::{ConfigError, SweepConfig};

fn key_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRow {
    pub scheme: SchemeId,
    pub mach: f64,
    pub theta: f64,
    pub h: f64,
    pub q_p: f64,
    pub q_g: f64,
}

/// Rows plus notes about points that could not be computed.
#[derive(Debug, Clone)]
pub struct Sweep<T> {
    pub rows: Vec<T>,
    pub notes: Vec<String>,
}

fn schemes(cfg: &SweepConfig) -> Vec<SchemeId> {
    let mut out = Vec::new();
    for &e in &cfg.elements {
        for &f in &cfg.formulations {
            out.push(SchemeId::new(e, f));
        }
    }
    out
}

fn sort_key(s: SchemeId) -> (Element, Formulation) {
    (s.element, s.formulation)
}

/// `H_i = h_max i / samples`, `i = 1..=samples`.
pub fn h_grid(cfg: &SweepConfig) -> Vec<f64> {
    (1..=cfg.samples).map(|i| cfg.h_max * i as f64 / cfg.samples as f64).collect()
}

pub fn quotient_sweep(cfg: &SweepConfig) -> Sweep<QuotientRow> {
    let hs = h_grid(cfg);
    let mut panels = Vec::new();
    for s in schemes(cfg) {
        for &m in &cfg.machs {
            for &t in &cfg.thetas {
                panels.push((s, m, t));
            }
        }
    }
    let results: Vec<(Vec<QuotientRow>, Vec<String>)> = panels
        .par_iter()
        .map(|&(scheme, m, theta)| {
            let mut rows = Vec::new();
            let mut notes = Vec::new();
            let flow = match FlowParams::new(m) {
                Ok(f) => f,
                Err(e) => return (rows, vec![e.to_string()]),
            };
            for &h in &hs {
                let point = kappa_for_h(scheme, flow, theta, h)
                    .and_then(|k| dispersion_quotients(scheme, flow, theta, k));
                match point {
                    Ok(p) => rows.push(QuotientRow {
                        scheme,
                        mach: m,
                        theta,
                        h,
                        q_p: p.q_p,
                        q_g: p.q_g,
                    }),
                    Err(e) => {
                        notes.push(format!("{scheme} M={m} theta={theta:.6}: H={h} skipped ({e})"));
                        break;
                    }
                }
            }
            (rows, notes)
        })
        .collect();
    let mut rows: Vec<QuotientRow> = Vec::new();
    let mut notes = Vec::new();
    for (r, n) in results {
        rows.extend(r);
        notes.extend(n);
    }
    rows.sort_by(|a, b| {
        sort_key(a.scheme)
            .cmp(&sort_key(b.scheme))
            .then(key_cmp(&[a.mach, a.theta, a.h], &[b.mach, b.theta, b.h]))
    });
    Sweep { rows, notes }
}

#[derive(Debug, Clone, PartialEq)]
pub struct A1Row {
    pub scheme: SchemeId,
    pub mach: f64,
    pub theta: f64,
    pub closed: f64,
    pub numeric: f64,
    pub rel_err: f64,
    pub residual: f64,
}

/// Ladder for one table cell. The reformulated relations see the stretched
/// wavenumber `~ k / (1 - M^2)`, so the steps shrink with it.
pub fn table_ladder(scheme: SchemeId, mach: f64, levels: usize) -> LadderConfig {
    let h0 = match scheme.formulation {
        Formulation::Convected => 0.1,
        Formulation::HelmholtzReformulated => 0.1 * (1.0 - mach * mach).min(1.0),
    };
    LadderConfig::halving(h0, levels)
}

/// Relative error, falling back to the absolute difference when the
/// reference is exactly zero.
pub fn relative_error(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        (value - reference).abs()
    } else {
        (value - reference).abs() / reference.abs()
    }
}

pub fn a1_sweep(cfg: &SweepConfig) -> Sweep<A1Row> {
    let mut cells = Vec::new();
    for s in schemes(cfg) {
        for &m in &cfg.table_machs() {
            for &t in &cfg.thetas {
                cells.push((s, m, t));
            }
        }
    }
    let results: Vec<(A1Row, Option<String>)> = cells
        .par_iter()
        .map(|&(scheme, m, theta)| {
            let flow = FlowParams::new(m).expect("validated Mach number");
            let closed = a1_closed(scheme, flow, theta).value;
            // Fewer rungs if rounding overtakes the truncation error first.
            let mut last_err = None;
            for levels in [5, 4, 3] {
                match a1_numeric_with(scheme, flow, theta, &table_ladder(scheme, m, levels)) {
                    Ok(est) => {
                        let numeric = est.coefficient.value;
                        return (
                            A1Row {
                                scheme,
                                mach: m,
                                theta,
                                closed,
                                numeric,
                                rel_err: relative_error(numeric, closed),
                                residual: est.residual,
                            },
                            None,
                        );
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            let note = format!("{scheme} M={m} theta={theta:.6}: {}", last_err.unwrap());
            (
                A1Row {
                    scheme,
                    mach: m,
                    theta,
                    closed,
                    numeric: f64::NAN,
                    rel_err: f64::NAN,
                    residual: f64::NAN,
                },
                Some(note),
            )
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut notes = Vec::new();
    for (r, n) in results {
        rows.push(r);
        notes.extend(n);
    }
    rows.sort_by(|a, b| {
        sort_key(a.scheme)
            .cmp(&sort_key(b.scheme))
            .then(key_cmp(&[a.mach, a.theta], &[b.mach, b.theta]))
    });
    Sweep { rows, notes }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FemRow {
    pub element: Element,
    pub mach: f64,
    pub theta: f64,
    pub omega: f64,
    pub n: usize,
    pub h: f64,
    pub err_energy: f64,
    pub wall_time: f64,
    pub relative_residual: f64,
}

/// Predicted memory per frequency; refuses the sweep if any exceeds the cap.
#[derive(Debug, Clone, PartialEq)]
pub struct SizingLine {
    pub element: Element,
    pub omega: f64,
    pub n: usize,
    pub bytes: usize,
}

pub fn fem_sizing(cfg: &SweepConfig) -> Result<Vec<SizingLine>, ConfigError> {
    let mut lines = Vec::new();
    for &omega in &cfg.omegas {
        let n = resolution_for(omega);
        for &e in &cfg.elements {
            let bytes = estimated_solve_bytes(e, n).map_err(|err| ConfigError {
                key: "omega".into(),
                message: err.to_string(),
            })?;
            lines.push(SizingLine { element: e, omega, n, bytes });
        }
    }
    let cap = cfg.memory_cap_mb << 20;
    if let Some(worst) = lines.iter().max_by_key(|l| l.bytes).filter(|l| l.bytes > cap) {
        let report: Vec<String> = lines
            .iter()
            .map(|l| format!("  {} omega={} n={}: ~{} MB", l.element, l.omega, l.n, l.bytes >> 20))
            .collect();
        return Err(ConfigError {
            key: "memory_cap_mb".into(),
            message: format!(
                "{} at omega={} needs ~{} MB, above the {} MB cap\n{}",
                worst.element,
                worst.omega,
                worst.bytes >> 20,
                cfg.memory_cap_mb,
                report.join("\n")
            ),
        });
    }
    Ok(lines)
}

/// Plane-wave error sweep at `w^3 h^2 <= 1`. Only the convected problem has
/// boundary data, so the formulation list is ignored here.
pub fn fem_sweep(cfg: &SweepConfig) -> Result<Vec<FemRow>, Error> {
    let sizing = fem_sizing(cfg).map_err(|e| Error::InvalidParameter {
        name: "memory_cap_mb",
        reason: e.message,
    })?;
    let mut rows = Vec::new();
    for &omega in &cfg.omegas {
        let n = resolution_for(omega);
        let peak = sizing
            .iter()
            .filter(|l| l.omega == omega)
            .map(|l| l.bytes)
            .max()
            .unwrap_or(1)
            .max(1);
        let workers = ((cfg.memory_cap_mb << 20) / peak).clamp(1, rayon::current_num_threads());
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        let mut jobs = Vec::new();
        for &e in &cfg.elements {
            for &m in &cfg.machs {
                for &t in &cfg.thetas {
                    jobs.push((e, m, t));
                }
            }
        }
        let batch: Result<Vec<FemRow>, Error> = pool.install(|| {
            jobs.par_iter()
                .map(|&(element, m, theta)| {
                    let run = solve_plane_wave(element, FlowParams::new(m)?, omega, theta, n, SolverKind::NestedDissection)?;
                    Ok(FemRow {
                        element,
                        mach: m,
                        theta,
                        omega,
                        n,
                        h: run.h,
                        err_energy: run.energy_error,
                        wall_time: run.seconds,
                        relative_residual: run.relative_residual,
                    })
                })
                .collect()
        });
        rows.extend(batch?);
    }
    rows.sort_by(|a, b| {
        a.element
            .cmp(&b.element)
            .then(key_cmp(&[a.mach, a.theta, a.omega], &[b.mach, b.theta, b.omega]))
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SweepConfig {
        SweepConfig {
            elements: vec![Element::RT1NC, Element::P1C],
            formulations: vec![Formulation::Convected],
            machs: vec![0.6, 0.3],
            thetas: vec![1.0, 0.0],
            samples: 4,
            mach_samples: 0,
            omegas: vec![4.0],
            ..Default::default()
        }
    }

    #[test]
    fn quotient_rows_sorted_and_complete() {
        let s = quotient_sweep(&small());
        assert!(s.notes.is_empty());
        assert_eq!(s.rows.len(), 2 * 2 * 2 * 4);
        assert_eq!(s.rows[0].scheme.element, Element::P1C);
        assert_eq!((s.rows[0].mach, s.rows[0].theta), (0.3, 0.0));
        assert!(s.rows.iter().all(|r| (r.q_p - 1.0).abs() < 0.05));
    }

    #[test]
    fn a1_rows_agree() {
        let s = a1_sweep(&small());
        assert_eq!(s.rows.len(), 8);
        for r in &s.rows {
            assert!(r.rel_err < 1e-6, "{r:?}");
        }
        assert_eq!(relative_error(1e-9, 0.0), 1e-9);
    }

    #[test]
    fn fem_rows_and_sizing() {
        let cfg = small();
        let rows = fem_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.n == 8 && r.relative_residual < 1e-10));
        let tight = SweepConfig { memory_cap_mb: 1, omegas: vec![40.0], ..cfg };
        let e = fem_sizing(&tight).unwrap_err();
        assert!(e.message.contains("MB"));
    }
}
