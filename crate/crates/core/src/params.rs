//! Shared parameter types: mean flow, scheme identifiers, wave probes.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Uniform mean flow along the x-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowParams {
    mach: f64,
}

impl FlowParams {
    pub fn new(mach: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&mach) {
            return Err(Error::InvalidMach(mach));
        }
        Ok(Self { mach })
    }

    pub fn mach(&self) -> f64 {
        self.mach
    }

    /// `1 - M^2`, the first diagonal entry of the anisotropy matrix.
    pub fn a11(&self) -> f64 {
        1.0 - self.mach * self.mach
    }

    /// Diagonal of `A = diag(1 - M^2, 1)`.
    pub fn anisotropy(&self) -> [f64; 2] {
        [self.a11(), 1.0]
    }
}

/// Lowest-order quadrilateral elements.
///
/// `P1C` is the bilinear conforming element; the label is kept for
/// traceability with the literature that calls it P1-C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    P1C,
    RT1NC,
    RT2NC,
}

impl Element {
    pub const ALL: [Element; 3] = [Element::P1C, Element::RT1NC, Element::RT2NC];

    pub fn is_nonconforming(self) -> bool {
        !matches!(self, Element::P1C)
    }

    pub fn label(self) -> &'static str {
        match self {
            Element::P1C => "P1C",
            Element::RT1NC => "RT1NC",
            Element::RT2NC => "RT2NC",
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().replace(['-', '_'], "").as_str() {
            "P1C" | "P1" | "Q1" => Ok(Element::P1C),
            "RT1NC" | "RT1" => Ok(Element::RT1NC),
            "RT2NC" | "RT2" => Ok(Element::RT2NC),
            _ => Err(Error::InvalidParameter {
                name: "scheme",
                reason: format!("unknown element `{s}` (expected P1C, RT1NC or RT2NC)"),
            }),
        }
    }
}

/// Which equation the scheme discretizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formulation {
    /// The convected Helmholtz equation itself.
    Convected,
    /// The pure Helmholtz problem obtained by the phase transform
    /// `u = p * exp(i w M x / (1 - M^2))`.
    HelmholtzReformulated,
}

impl Formulation {
    pub const ALL: [Formulation; 2] = [Formulation::Convected, Formulation::HelmholtzReformulated];

    pub fn label(self) -> &'static str {
        match self {
            Formulation::Convected => "convected",
            Formulation::HelmholtzReformulated => "helmholtz",
        }
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "convected" | "conv" => Ok(Formulation::Convected),
            "helmholtz" | "helmholtzreformulated" | "helmholtz-reformulated" | "helm" => {
                Ok(Formulation::HelmholtzReformulated)
            }
            _ => Err(Error::InvalidParameter {
                name: "formulation",
                reason: format!("unknown formulation `{s}` (expected convected or helmholtz)"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemeId {
    pub element: Element,
    pub formulation: Formulation,
}

impl SchemeId {
    pub const fn new(element: Element, formulation: Formulation) -> Self {
        Self { element, formulation }
    }

    pub const fn convected(element: Element) -> Self {
        Self::new(element, Formulation::Convected)
    }

    pub const fn helmholtz(element: Element) -> Self {
        Self::new(element, Formulation::HelmholtzReformulated)
    }

    /// All six element/formulation pairs.
    pub fn all() -> impl Iterator<Item = SchemeId> {
        Formulation::ALL
            .into_iter()
            .flat_map(|f| Element::ALL.into_iter().map(move |e| SchemeId::new(e, f)))
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.element, self.formulation)
    }
}

/// A dimensionless discrete wave vector `kappa = k^h * h` in polar form.
///
/// The magnitude must stay strictly inside `(0, pi)`. Any finite angle is
/// accepted so that reflection symmetry can be probed at negative angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveProbe {
    kappa: f64,
    theta: f64,
}

impl WaveProbe {
    pub fn new(kappa: f64, theta: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa < PI) {
            return Err(Error::ProbeOutOfRange(format!(
                "kappa = {kappa} must lie in (0, pi)"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::ProbeOutOfRange(format!("theta = {theta} is not finite")));
        }
        Ok(Self { kappa, theta })
    }

    /// Builds a probe from Cartesian components.
    pub fn from_components(kappa1: f64, kappa2: f64) -> Result<Self> {
        Self::new(kappa1.hypot(kappa2), kappa2.atan2(kappa1))
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `(kappa cos(theta), kappa sin(theta))`.
    pub fn components(&self) -> (f64, f64) {
        let (s, c) = self.theta.sin_cos();
        (self.kappa * c, self.kappa * s)
    }
}
