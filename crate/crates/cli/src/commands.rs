//! Subcommand bodies: run a sweep, write CSV (and SVG on request).

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use crate::config::SweepConfig;
use crate::csv::{write_csv, Cell};
use crate::svg::{LineChart, Series};
use crate::sweeps::{a1_sweep, fem_sweep, quotient_sweep};

/// Files written by a command and any per-point notes.
#[derive(Debug, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub notes: Vec<String>,
}

fn text(s: impl Into<String>) -> Cell {
    Cell::Text(s.into())
}

fn write_table(dir: &Path, name: &str, header: &[&str], rows: &[Vec<Cell>]) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    write_csv(BufWriter::new(f), header, rows).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn write_svg(dir: &Path, name: &str, chart: &LineChart) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, chart.render()).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn tag(v: f64) -> String {
    format!("{v:.4}").replace('.', "p")
}

pub fn quotients(cfg: &SweepConfig) -> Result<Outcome> {
    let sweep = quotient_sweep(cfg);
    let rows: Vec<Vec<Cell>> = sweep
        .rows
        .iter()
        .map(|r| {
            vec![
                text(r.scheme.element.label()),
                text(r.scheme.formulation.label()),
                Cell::Num(r.mach),
                Cell::Num(r.theta),
                Cell::Num(r.h),
                Cell::Num(r.q_p),
                Cell::Num(r.q_g),
            ]
        })
        .collect();
    let header = ["scheme", "formulation", "M", "theta", "H", "q_p", "q_g"];
    let mut out = Outcome {
        files: vec![write_table(&cfg.out_dir, "quotients.csv", &header, &rows)?],
        notes: sweep.notes,
    };
    if cfg.svg {
        let mut panels: BTreeMap<(String, String, String), Vec<Series>> = BTreeMap::new();
        let mut curves: BTreeMap<(String, String, String, String), (Vec<(f64, f64)>, Vec<(f64, f64)>)> = BTreeMap::new();
        for r in &sweep.rows {
            let key = (r.scheme.formulation.label().to_string(), tag(r.mach), tag(r.theta), r.scheme.element.label().to_string());
            let c = curves.entry(key).or_default();
            c.0.push((r.h, r.q_p));
            c.1.push((r.h, r.q_g));
        }
        for ((f, m, t, e), (qp, qg)) in curves {
            let p = panels.entry((f, m, t)).or_default();
            p.push(Series { label: format!("{e} q_p"), points: qp, dashed: false });
            p.push(Series { label: format!("{e} q_g"), points: qg, dashed: true });
        }
        for ((f, m, t), series) in panels {
            let chart = LineChart {
                title: format!("{f}: M = {}, theta = {}", m.replace('p', "."), t.replace('p', ".")),
                x_label: "H = w^h h".into(),
                y_label: "quotient".into(),
                log_y: false,
                series,
            };
            out.files.push(write_svg(&cfg.out_dir, &format!("quotients_{f}_M{m}_theta{t}.svg"), &chart)?);
        }
    }
    Ok(out)
}

pub fn a1_table(cfg: &SweepConfig) -> Result<Outcome> {
    let sweep = a1_sweep(cfg);
    let rows: Vec<Vec<Cell>> = sweep
        .rows
        .iter()
        .map(|r| {
            vec![
                text(r.scheme.element.label()),
                text(r.scheme.formulation.label()),
                Cell::Num(r.mach),
                Cell::Num(r.theta),
                Cell::Num(r.closed),
                Cell::Num(r.numeric),
                Cell::Num(r.rel_err),
                Cell::Num(r.residual),
            ]
        })
        .collect();
    let header = [
        "scheme",
        "formulation",
        "M",
        "theta",
        "A1_closed",
        "A1_numeric",
        "rel_err",
        "extrapolation_residual",
    ];
    let mut out = Outcome {
        files: vec![write_table(&cfg.out_dir, "a1_table.csv", &header, &rows)?],
        notes: sweep.notes,
    };
    if cfg.svg {
        let mut panels: BTreeMap<(String, String), BTreeMap<String, Vec<(f64, f64)>>> = BTreeMap::new();
        for r in &sweep.rows {
            panels
                .entry((r.scheme.formulation.label().to_string(), tag(r.theta)))
                .or_default()
                .entry(r.scheme.element.label().to_string())
                .or_default()
                .push((r.mach, r.closed));
        }
        for ((f, t), curves) in panels {
            let series = curves
                .into_iter()
                .map(|(label, points)| Series { label, points, dashed: false })
                .collect();
            let chart = LineChart {
                title: format!("{f}: A1 vs M, theta = {}", t.replace('p', ".")),
                x_label: "M".into(),
                y_label: "A1 (log10)".into(),
                log_y: true,
                series,
            };
            out.files.push(write_svg(&cfg.out_dir, &format!("a1_{f}_theta{t}.svg"), &chart)?);
        }
    }
    Ok(out)
}

pub fn fem_errors(cfg: &SweepConfig) -> Result<Outcome> {
    let rows = fem_sweep(cfg)?;
    let cells: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| {
            vec![
                text(r.element.label()),
                Cell::Num(r.mach),
                Cell::Num(r.theta),
                Cell::Num(r.omega),
                Cell::Int(r.n),
                Cell::Num(r.h),
                Cell::Num(r.err_energy),
                Cell::Num(r.wall_time),
            ]
        })
        .collect();
    let header = ["scheme", "M", "theta", "omega", "n", "h", "err_energy", "wall_time"];
    let mut out = Outcome {
        files: vec![write_table(&cfg.out_dir, "fem_errors.csv", &header, &cells)?],
        notes: Vec::new(),
    };
    if let Some(r) = rows.iter().find(|r| r.relative_residual > 1e-10) {
        out.notes.push(format!(
            "{} M={} theta={} omega={}: solver residual {:.2e}",
            r.element, r.mach, r.theta, r.omega, r.relative_residual
        ));
    }
    if cfg.svg {
        let mut panels: BTreeMap<String, BTreeMap<(String, String), Vec<(f64, f64)>>> = BTreeMap::new();
        for r in &rows {
            panels
                .entry(r.element.label().to_string())
                .or_default()
                .entry((tag(r.mach), tag(r.theta)))
                .or_default()
                .push((r.omega, r.err_energy));
        }
        for (e, curves) in panels {
            let series = curves
                .into_iter()
                .map(|((m, t), points)| Series {
                    label: format!("M={} th={}", m.replace('p', "."), t.replace('p', ".")),
                    points,
                    dashed: false,
                })
                .collect();
            let chart = LineChart {
                title: format!("{e}: energy error at w^3 h^2 = 1"),
                x_label: "omega".into(),
                y_label: "error (log10)".into(),
                log_y: true,
                series,
            };
            out.files.push(write_svg(&cfg.out_dir, &format!("fem_errors_{e}.svg"), &chart)?);
        }
    }
    Ok(out)
}
