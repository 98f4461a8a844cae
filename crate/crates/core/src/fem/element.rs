//! Element matrices on a square of side `h`.

use super::basis::ShapeSet;
use super::quadrature::tensor_rule;

pub type Block = [[f64; 4]; 4];

/// Row = test function, column = trial function.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementMatrices {
    /// `∫ ∂x φj ∂x φi`
    pub stiffness_x: Block,
    /// `∫ ∂y φj ∂y φi`
    pub stiffness_y: Block,
    /// `∫ ∂x φj φi`
    pub convection: Block,
    /// `∫ φj φi`
    pub mass: Block,
}

impl ElementMatrices {
    /// Integrates with an `order × order` Gauss rule; 3 is already exact.
    pub fn compute(shapes: &ShapeSet, h: f64, order: usize) -> Self {
        let mut kx = [[0.0; 4]; 4];
        let mut ky = [[0.0; 4]; 4];
        let mut d = [[0.0; 4]; 4];
        let mut m = [[0.0; 4]; 4];
        for (xi, eta, w) in tensor_rule(order) {
            let v = shapes.values(xi, eta);
            let g = shapes.gradients(xi, eta);
            for i in 0..4 {
                for j in 0..4 {
                    kx[i][j] += w * (g[j][0] * g[i][0]);
                    ky[i][j] += w * (g[j][1] * g[i][1]);
                    d[i][j] += w * g[j][0] * v[i];
                    m[i][j] += w * (v[j] * v[i]);
                }
            }
        }
        // Jacobian h/2 per direction: gradients pick up 2/h, area h²/4.
        let (sd, sm) = (0.5 * h, 0.25 * h * h);
        for i in 0..4 {
            for j in 0..4 {
                d[i][j] *= sd;
                m[i][j] *= sm;
            }
        }
        Self {
            stiffness_x: kx,
            stiffness_y: ky,
            convection: d,
            mass: m,
        }
    }

    /// `(1 - M²) Kx + Ky`.
    pub fn stiffness(&self, a11: f64) -> Block {
        std::array::from_fn(|i| std::array::from_fn(|j| a11 * self.stiffness_x[i][j] + self.stiffness_y[i][j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::basis::reference_basis;
    use crate::params::Element;

    #[test]
    fn three_point_rule_is_exact() {
        for e in Element::ALL {
            let s = reference_basis(e);
            let a = ElementMatrices::compute(&s, 0.7, 3);
            let b = ElementMatrices::compute(&s, 0.7, 5);
            for i in 0..4 {
                for j in 0..4 {
                    for (p, q) in [
                        (a.stiffness_x[i][j], b.stiffness_x[i][j]),
                        (a.stiffness_y[i][j], b.stiffness_y[i][j]),
                        (a.convection[i][j], b.convection[i][j]),
                        (a.mass[i][j], b.mass[i][j]),
                    ] {
                        assert!((p - q).abs() < 1e-14, "{e}");
                    }
                }
            }
        }
    }

    #[test]
    fn rt1_mass_entries() {
        let m = ElementMatrices::compute(&reference_basis(Element::RT1NC), 2.0, 3).mass;
        assert!((m[0][0] - 113.0 / 180.0).abs() < 1e-14);
        assert!((m[0][1] + 7.0 / 180.0).abs() < 1e-14);
        assert!((m[0][2] - 37.0 / 180.0).abs() < 1e-14);
    }

    #[test]
    fn q1_mass_row_sums() {
        let h = 0.3;
        let m = ElementMatrices::compute(&reference_basis(Element::P1C), h, 3).mass;
        for row in m {
            assert!((row.iter().sum::<f64>() - h * h / 4.0).abs() < 1e-15);
        }
    }
}
