use crate::error::{Error, Result};

/// Uniform `n × n` grid of square elements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadMesh {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    n: usize,
    h: f64,
}

/// One side of an element, also used for the outer boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
    Top,
    Bottom,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Right, Side::Left, Side::Top, Side::Bottom];

    pub fn outward_normal(self) -> [f64; 2] {
        match self {
            Side::Right => [1.0, 0.0],
            Side::Left => [-1.0, 0.0],
            Side::Top => [0.0, 1.0],
            Side::Bottom => [0.0, -1.0],
        }
    }

    /// Reference point on this side at parameter `t` in [-1, 1].
    pub fn reference_point(self, t: f64) -> (f64, f64) {
        match self {
            Side::Right => (1.0, t),
            Side::Left => (-1.0, t),
            Side::Top => (t, 1.0),
            Side::Bottom => (t, -1.0),
        }
    }
}

pub fn build_mesh(domain: [f64; 4], n: usize) -> Result<QuadMesh> {
    let [x0, y0, x1, y1] = domain;
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "need at least one subdivision".into(),
        });
    }
    let (wx, wy) = (x1 - x0, y1 - y0);
    if !(wx > 0.0) || !wx.is_finite() || (wx - wy).abs() > 1e-12 * wx.abs().max(wy.abs()) {
        return Err(Error::NonSquareDomain { x0, y0, x1, y1 });
    }
    Ok(QuadMesh {
        x0,
        y0,
        x1,
        y1,
        n,
        h: wx / n as f64,
    })
}

impl QuadMesh {
    pub fn unit_square(n: usize) -> Result<Self> {
        build_mesh([0.0, 0.0, 1.0, 1.0], n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn domain(&self) -> [f64; 4] {
        [self.x0, self.y0, self.x1, self.y1]
    }

    pub fn element_count(&self) -> usize {
        self.n * self.n
    }

    pub fn node_count(&self) -> usize {
        (self.n + 1) * (self.n + 1)
    }

    pub fn edge_count(&self) -> usize {
        2 * self.n * (self.n + 1)
    }

    /// Grid node `(i, j)`, `0 <= i, j <= n`.
    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        (self.x0 + i as f64 * self.h, self.y0 + j as f64 * self.h)
    }

    /// Centre of element `(i, j)`.
    pub fn element_center(&self, i: usize, j: usize) -> (f64, f64) {
        let (x, y) = self.node(i, j);
        (x + 0.5 * self.h, y + 0.5 * self.h)
    }

    /// Maps reference coordinates of element `(i, j)` to physical ones.
    pub fn to_physical(&self, i: usize, j: usize, xi: f64, eta: f64) -> (f64, f64) {
        let (cx, cy) = self.element_center(i, j);
        (cx + 0.5 * self.h * xi, cy + 0.5 * self.h * eta)
    }

    /// Elements touching the outer boundary, with the side that lies on it.
    /// Corner elements appear twice.
    pub fn boundary_sides(&self) -> Vec<(usize, usize, Side)> {
        let n = self.n;
        let mut out = Vec::with_capacity(4 * n);
        for k in 0..n {
            out.push((k, 0, Side::Bottom));
            out.push((n - 1, k, Side::Right));
            out.push((k, n - 1, Side::Top));
            out.push((0, k, Side::Left));
        }
        out
    }
}
