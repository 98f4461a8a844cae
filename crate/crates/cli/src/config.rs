//! Sweep configuration: `key = value` files overridden by command-line flags.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use convhelm_core::{Element, Formulation};

/// A bad configuration value, tagged with the key it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    fn new(key: &str, message: impl Into<String>) -> Self {
        Self {
            key: key.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid `{}`: {}", self.key, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Largest frequency allowed without `allow_large`.
pub const DEFAULT_OMEGA_CAP: f64 = 40.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub elements: Vec<Element>,
    pub formulations: Vec<Formulation>,
    pub machs: Vec<f64>,
    pub thetas: Vec<f64>,
    /// Upper end of the `H = w^h h` axis.
    pub h_max: f64,
    /// Points per quotient curve.
    pub samples: usize,
    /// Extra evenly spaced Mach numbers on [0, 0.99] for the coefficient table.
    pub mach_samples: usize,
    pub omegas: Vec<f64>,
    pub out_dir: PathBuf,
    pub svg: bool,
    pub allow_large: bool,
    pub memory_cap_mb: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            elements: Element::ALL.to_vec(),
            formulations: Formulation::ALL.to_vec(),
            machs: vec![0.3, 0.6, 0.9],
            thetas: vec![0.0, PI / 4.0, 3.0 * PI / 4.0, PI],
            h_max: 0.3,
            samples: 60,
            mach_samples: 100,
            omegas: vec![10.0, 20.0, 40.0],
            out_dir: PathBuf::from("out"),
            svg: false,
            allow_large: false,
            memory_cap_mb: 4096,
        }
    }
}

/// Parses an angle: a number, or a multiple/fraction of `pi` such as
/// `pi`, `3pi/4`, `pi/4`, `0.5pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(' ', "");
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.to_string(), b.parse::<f64>().map_err(|_| format!("bad angle `{s}`"))?),
        None => (t.clone(), 1.0),
    };
    let coef = num
        .strip_suffix("pi")
        .ok_or_else(|| format!("bad angle `{s}`"))?
        .trim_end_matches('*');
    let c = if coef.is_empty() {
        1.0
    } else {
        coef.parse::<f64>().map_err(|_| format!("bad angle `{s}`"))?
    };
    Ok(c * PI / den)
}

fn split_list(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_list<T>(key: &str, v: &str, f: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, ConfigError> {
    let out: Vec<T> = split_list(v)
        .map(|s| f(s).map_err(|m| ConfigError::new(key, m)))
        .collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err(ConfigError::new(key, "empty list"));
    }
    Ok(out)
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|_| format!("`{s}` is not a number"))
}

fn parse_bool(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(ConfigError::new(key, format!("`{v}` is not a boolean"))),
    }
}

fn parse_elements(key: &str, v: &str) -> Result<Vec<Element>, ConfigError> {
    if v.trim().eq_ignore_ascii_case("all") {
        return Ok(Element::ALL.to_vec());
    }
    parse_list(key, v, |s| s.parse::<Element>().map_err(|e| e.to_string()))
}

fn parse_formulations(key: &str, v: &str) -> Result<Vec<Formulation>, ConfigError> {
    if v.trim().eq_ignore_ascii_case("all") {
        return Ok(Formulation::ALL.to_vec());
    }
    parse_list(key, v, |s| s.parse::<Formulation>().map_err(|e| e.to_string()))
}

impl SweepConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let v = value.trim();
        match key {
            "scheme" | "schemes" => self.elements = parse_elements(key, v)?,
            "formulation" | "formulations" => self.formulations = parse_formulations(key, v)?,
            "mach" => self.machs = parse_list(key, v, parse_f64)?,
            "theta" => self.thetas = parse_list(key, v, parse_angle)?,
            "omega" => self.omegas = parse_list(key, v, parse_f64)?,
            "h_max" => self.h_max = parse_f64(v).map_err(|m| ConfigError::new(key, m))?,
            "samples" => {
                self.samples = v.parse().map_err(|_| ConfigError::new(key, format!("`{v}` is not a count")))?
            }
            "mach_samples" => {
                self.mach_samples = v.parse().map_err(|_| ConfigError::new(key, format!("`{v}` is not a count")))?
            }
            "memory_cap_mb" => {
                self.memory_cap_mb = v.parse().map_err(|_| ConfigError::new(key, format!("`{v}` is not a size")))?
            }
            "out" => self.out_dir = PathBuf::from(v),
            "svg" => self.svg = parse_bool(key, v)?,
            "allow_large" => self.allow_large = parse_bool(key, v)?,
            _ => return Err(ConfigError::new(key, "unknown key")),
        }
        Ok(())
    }

    /// Applies a whole file. `#` starts a comment; blank lines are ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                ConfigError::new(&format!("line {}", lineno + 1), format!("expected key = value, got `{line}`"))
            })?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("config", format!("cannot read {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    /// Checks ranges. Frequencies above the default cap need `allow_large`.
    pub fn validate(&self) -> Result<(), ConfigError> {
        for &m in &self.machs {
            if !(0.0..1.0).contains(&m) {
                return Err(ConfigError::new("mach", format!("{m} is outside [0, 1)")));
            }
        }
        for &t in &self.thetas {
            if !(0.0..=PI + 1e-12).contains(&t) {
                return Err(ConfigError::new("theta", format!("{t} is outside [0, pi]")));
            }
        }
        if !(self.h_max > 0.0 && self.h_max <= 1.0) {
            return Err(ConfigError::new("h_max", format!("{} is outside (0, 1]", self.h_max)));
        }
        if self.samples < 2 {
            return Err(ConfigError::new("samples", "need at least 2 points per curve"));
        }
        for &w in &self.omegas {
            if !(w > 0.0 && w.is_finite()) {
                return Err(ConfigError::new("omega", format!("{w} must be positive")));
            }
            if w > DEFAULT_OMEGA_CAP && !self.allow_large {
                return Err(ConfigError::new(
                    "omega",
                    format!("{w} exceeds {DEFAULT_OMEGA_CAP}; pass --allow-large to run it"),
                ));
            }
        }
        if self.memory_cap_mb == 0 {
            return Err(ConfigError::new("memory_cap_mb", "must be positive"));
        }
        Ok(())
    }

    /// Mach numbers for the coefficient table: the configured list plus an
    /// even grid, deduplicated and sorted.
    pub fn table_machs(&self) -> Vec<f64> {
        let mut m = self.machs.clone();
        if self.mach_samples > 1 {
            let k = self.mach_samples - 1;
            m.extend((0..=k).map(|i| (0.99 * i as f64 / k as f64 * 1e12).round() / 1e12));
        }
        m.sort_by(f64::total_cmp);
        m.dedup();
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0").unwrap(), 0.0);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert!((parse_angle("3pi/4").unwrap() - 0.75 * PI).abs() < 1e-15);
        assert!((parse_angle("pi/4").unwrap() - 0.25 * PI).abs() < 1e-15);
        assert!((parse_angle("0.5*pi").unwrap() - 0.5 * PI).abs() < 1e-15);
        assert!(parse_angle("tau").is_err());
    }

    #[test]
    fn file_and_errors() {
        let mut c = SweepConfig::default();
        c.apply_text("# comment\nscheme = rt1, p1c\nmach=0.2,0.4 \ntheta = 0, pi\nsvg = yes\n").unwrap();
        assert_eq!(c.elements, vec![Element::RT1NC, Element::P1C]);
        assert_eq!(c.machs, vec![0.2, 0.4]);
        assert!(c.svg);
        c.validate().unwrap();

        let e = c.apply_text("bogus = 1").unwrap_err();
        assert_eq!(e.key, "bogus");
        let e = c.apply_text("mach 3").unwrap_err();
        assert!(e.key.starts_with("line"));

        c.set("mach", "1.2").unwrap();
        assert_eq!(c.validate().unwrap_err().key, "mach");
        c.set("mach", "0.5").unwrap();
        c.set("omega", "80").unwrap();
        assert_eq!(c.validate().unwrap_err().key, "omega");
        c.allow_large = true;
        c.validate().unwrap();
        c.set("theta", "4").unwrap();
        assert_eq!(c.validate().unwrap_err().key, "theta");
    }

    #[test]
    fn table_grid() {
        let c = SweepConfig {
            mach_samples: 4,
            ..Default::default()
        };
        assert_eq!(c.table_machs(), vec![0.0, 0.3, 0.33, 0.6, 0.66, 0.9, 0.99]);
    }
}
