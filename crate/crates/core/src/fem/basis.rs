//! Reference shape functions on [-1, 1]².

use crate::params::Element;

use super::mesh::Side;
use super::quadrature::gauss_legendre;

/// Four shape functions stored as coefficients over a fixed monomial set:
/// `{1, xi, eta, xi^2 - eta^2}` for the rotated elements and
/// `{1, xi, eta, xi*eta}` for the bilinear one.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSet {
    element: Element,
    coef: [[f64; 4]; 4],
}

fn monomials(element: Element, xi: f64, eta: f64) -> [f64; 4] {
    match element {
        Element::P1C => [1.0, xi, eta, xi * eta],
        _ => [1.0, xi, eta, xi * xi - eta * eta],
    }
}

fn monomial_grads(element: Element, xi: f64, eta: f64) -> [[f64; 2]; 4] {
    match element {
        Element::P1C => [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [eta, xi]],
        _ => [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [2.0 * xi, -2.0 * eta]],
    }
}

const CORNERS: [(f64, f64); 4] = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];

/// Local DOF functional `l` applied to monomial `m`.
fn functional(element: Element, l: usize) -> impl Fn(usize) -> f64 {
    move |m| match element {
        Element::P1C => {
            let (x, y) = CORNERS[l];
            monomials(element, x, y)[m]
        }
        Element::RT1NC => {
            let (x, y) = Side::ALL[l].reference_point(0.0);
            monomials(element, x, y)[m]
        }
        Element::RT2NC => {
            let (t, w) = gauss_legendre(2);
            t.iter()
                .zip(&w)
                .map(|(&t, &w)| {
                    let (x, y) = Side::ALL[l].reference_point(t);
                    0.5 * w * monomials(element, x, y)[m]
                })
                .sum()
        }
    }
}

/// Solves the 4×4 system `G^T c = e_j` for all `j` (Gaussian elimination with
/// partial pivoting).
fn invert_transpose(g: [[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut a = [[0.0; 8]; 4];
    for r in 0..4 {
        for c in 0..4 {
            a[r][c] = g[c][r];
        }
        a[r][4 + r] = 1.0;
    }
    for k in 0..4 {
        let p = (k..4)
            .max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))
            .unwrap();
        a.swap(k, p);
        let d = a[k][k];
        assert!(d.abs() > 1e-12, "unisolvence failed");
        for c in 0..8 {
            a[k][c] /= d;
        }
        for r in 0..4 {
            if r != k {
                let f = a[r][k];
                for c in 0..8 {
                    a[r][c] -= f * a[k][c];
                }
            }
        }
    }
    // C G^T = I, so row j of (G^T)^{-1} holds the coefficients of φ_j.
    std::array::from_fn(|j| std::array::from_fn(|m| a[j][4 + m]))
}

pub fn reference_basis(element: Element) -> ShapeSet {
    let mut g = [[0.0; 4]; 4];
    for (l, row) in g.iter_mut().enumerate() {
        let f = functional(element, l);
        for (m, v) in row.iter_mut().enumerate() {
            *v = f(m);
        }
    }
    ShapeSet {
        element,
        coef: invert_transpose(g),
    }
}

impl ShapeSet {
    pub fn element(&self) -> Element {
        self.element
    }

    /// Monomial coefficients of shape function `j`.
    pub fn coefficients(&self, j: usize) -> [f64; 4] {
        self.coef[j]
    }

    pub fn values(&self, xi: f64, eta: f64) -> [f64; 4] {
        let m = monomials(self.element, xi, eta);
        std::array::from_fn(|j| (0..4).map(|k| self.coef[j][k] * m[k]).sum())
    }

    /// Reference gradients `(d/dxi, d/deta)`.
    pub fn gradients(&self, xi: f64, eta: f64) -> [[f64; 2]; 4] {
        let g = monomial_grads(self.element, xi, eta);
        std::array::from_fn(|j| {
            let mut out = [0.0; 2];
            for k in 0..4 {
                out[0] += self.coef[j][k] * g[k][0];
                out[1] += self.coef[j][k] * g[k][1];
            }
            out
        })
    }

    /// Local DOF functional `l` applied to an arbitrary function of
    /// reference coordinates (exact for quadratics).
    pub fn dof_functional(&self, l: usize, f: impl Fn(f64, f64) -> f64) -> f64 {
        match self.element {
            Element::P1C => {
                let (x, y) = CORNERS[l];
                f(x, y)
            }
            Element::RT1NC => {
                let (x, y) = Side::ALL[l].reference_point(0.0);
                f(x, y)
            }
            Element::RT2NC => {
                let (t, w) = gauss_legendre(3);
                t.iter()
                    .zip(&w)
                    .map(|(&t, &w)| {
                        let (x, y) = Side::ALL[l].reference_point(t);
                        0.5 * w * f(x, y)
                    })
                    .sum()
            }
        }
    }
}
