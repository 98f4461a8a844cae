//! Multifrontal LU ordered by geometric nested dissection.
//!
//! DOFs carry integer coordinates on a doubled grid (nodes at even/even,
//! edge midpoints at odd/even or even/odd). Separators are the DOFs lying
//! on an even grid line, which decouples the two halves for both nodal
//! and edge-based elements on a structured quad mesh.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::csr::CsrMatrix;
use super::dense::DenseLu;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const NONE: usize = usize::MAX;
const LEAF_SIZE: usize = 64;

#[derive(Debug, Clone)]
struct TreeNode {
    elim: Vec<usize>,
    update: Vec<usize>,
    children: Vec<usize>,
}

/// Elimination tree and front structure, independent of matrix values.
#[derive(Debug, Clone)]
pub struct Symbolic {
    n: usize,
    nodes: Vec<TreeNode>,
    node_of: Vec<usize>,
}

impl Symbolic {
    pub fn analyze(pattern: &CsrMatrix, coords: &[[i64; 2]]) -> Result<Self> {
        let n = pattern.dim();
        if coords.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: coords.len(),
            });
        }
        let mut sym = Self {
            n,
            nodes: Vec::new(),
            node_of: vec![NONE; n],
        };
        if n > 0 {
            sym.dissect((0..n).collect(), coords);
        }
        for (t, node) in sym.nodes.iter().enumerate() {
            for &d in &node.elim {
                sym.node_of[d] = t;
            }
        }

        let mut stamp = vec![NONE; n];
        for t in 0..sym.nodes.len() {
            let mut upd = Vec::new();
            for &d in &sym.nodes[t].elim {
                stamp[d] = t;
            }
            let children = sym.nodes[t].children.clone();
            for c in children {
                for &d in &sym.nodes[c].update {
                    if stamp[d] != t {
                        stamp[d] = t;
                        upd.push(d);
                    }
                }
            }
            for k in 0..sym.nodes[t].elim.len() {
                let i = sym.nodes[t].elim[k];
                for (j, _) in pattern.row(i) {
                    if stamp[j] != t && sym.node_of[j] > t {
                        stamp[j] = t;
                        upd.push(j);
                    }
                }
            }
            upd.sort_unstable();
            sym.nodes[t].update = upd;
        }
        Ok(sym)
    }

    fn dissect(&mut self, dofs: Vec<usize>, coords: &[[i64; 2]]) -> usize {
        if dofs.len() > LEAF_SIZE {
            let mut lo = [i64::MAX; 2];
            let mut hi = [i64::MIN; 2];
            for &d in &dofs {
                for a in 0..2 {
                    lo[a] = lo[a].min(coords[d][a]);
                    hi[a] = hi[a].max(coords[d][a]);
                }
            }
            let first = if hi[0] - lo[0] >= hi[1] - lo[1] { 0 } else { 1 };
            for axis in [first, 1 - first] {
                let mut s = (lo[axis] + hi[axis]).div_euclid(2);
                s -= s.rem_euclid(2);
                if s <= lo[axis] {
                    s += 2;
                }
                if s >= hi[axis] {
                    continue;
                }
                let (mut left, mut sep, mut right) = (Vec::new(), Vec::new(), Vec::new());
                for &d in &dofs {
                    match coords[d][axis].cmp(&s) {
                        std::cmp::Ordering::Less => left.push(d),
                        std::cmp::Ordering::Equal => sep.push(d),
                        std::cmp::Ordering::Greater => right.push(d),
                    }
                }
                if left.is_empty() || right.is_empty() {
                    continue;
                }
                let a = self.dissect(left, coords);
                let b = self.dissect(right, coords);
                self.nodes.push(TreeNode {
                    elim: sep,
                    update: Vec::new(),
                    children: vec![a, b],
                });
                return self.nodes.len() - 1;
            }
        }
        self.nodes.push(TreeNode {
            elim: dofs,
            update: Vec::new(),
            children: Vec::new(),
        });
        self.nodes.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Bytes held by the stored factors.
    pub fn factor_bytes(&self) -> usize {
        self.nodes
            .iter()
            .map(|t| {
                let (e, u) = (t.elim.len(), t.update.len());
                (e * e + 2 * e * u) * std::mem::size_of::<Complex64>()
            })
            .sum()
    }

    /// Largest single frontal matrix in bytes.
    pub fn max_front_bytes(&self) -> usize {
        self.nodes
            .iter()
            .map(|t| {
                let f = t.elim.len() + t.update.len();
                f * f * std::mem::size_of::<Complex64>()
            })
            .max()
            .unwrap_or(0)
    }

    /// Rough peak memory for a factorization, including pending Schur complements.
    pub fn estimated_peak_bytes(&self) -> usize {
        self.factor_bytes() + 3 * self.max_front_bytes()
    }
}

#[derive(Debug, Clone)]
struct Front {
    lu: DenseLu,
    // E⁻¹·F_EU, row-major e × u.
    w: Vec<Complex64>,
    // F_UE, row-major u × e.
    f_ue: Vec<Complex64>,
}

/// Numeric multifrontal factorization.
#[derive(Debug, Clone)]
pub struct NestedDissection {
    symbolic: Symbolic,
    fronts: Vec<Front>,
}

impl NestedDissection {
    pub fn factorize(matrix: &CsrMatrix, coords: &[[i64; 2]]) -> Result<Self> {
        let symbolic = Symbolic::analyze(matrix, coords)?;
        Self::factorize_with(symbolic, matrix)
    }

    pub fn factorize_with(symbolic: Symbolic, matrix: &CsrMatrix) -> Result<Self> {
        let n = symbolic.n;
        if matrix.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.dim(),
            });
        }
        let amax = (0..n)
            .flat_map(|i| matrix.row(i).map(|(_, v)| v.norm()))
            .fold(0.0f64, f64::max);
        let tiny = 1e-14 * amax.max(f64::MIN_POSITIVE);

        let mut local = vec![NONE; n];
        let mut pending: Vec<Option<Vec<Complex64>>> = vec![None; symbolic.nodes.len()];
        let mut fronts = Vec::with_capacity(symbolic.nodes.len());

        for (t, node) in symbolic.nodes.iter().enumerate() {
            let e = node.elim.len();
            let u = node.update.len();
            let f = e + u;
            for (l, &d) in node.elim.iter().chain(&node.update).enumerate() {
                local[d] = l;
            }
            let mut front = vec![ZERO; f * f];
            for (li, &i) in node.elim.iter().enumerate() {
                for (j, v) in matrix.row(i) {
                    let lj = local[j];
                    if lj != NONE {
                        front[li * f + lj] += v;
                    }
                }
            }
            for (lk, &k) in node.update.iter().enumerate() {
                for (j, v) in matrix.row(k) {
                    if symbolic.node_of[j] == t {
                        front[(e + lk) * f + local[j]] += v;
                    }
                }
            }
            for &c in &node.children {
                let s = pending[c].take().expect("children precede parents");
                let cu = &symbolic.nodes[c].update;
                let m = cu.len();
                for (a, &da) in cu.iter().enumerate() {
                    let ra = local[da] * f;
                    for (b, &db) in cu.iter().enumerate() {
                        front[ra + local[db]] += s[a * m + b];
                    }
                }
            }
            for &d in node.elim.iter().chain(&node.update) {
                local[d] = NONE;
            }

            let mut f_ee = Vec::with_capacity(e * e);
            let mut w = Vec::with_capacity(e * u);
            for r in 0..e {
                f_ee.extend_from_slice(&front[r * f..r * f + e]);
                w.extend_from_slice(&front[r * f + e..(r + 1) * f]);
            }
            let lu = DenseLu::factor(f_ee, e, tiny)?;
            lu.solve_block(&mut w, u);
            let mut f_ue = Vec::with_capacity(u * e);
            let mut schur = Vec::with_capacity(u * u);
            for r in 0..u {
                let row = &front[(e + r) * f..(e + r + 1) * f];
                f_ue.extend_from_slice(&row[..e]);
                schur.extend_from_slice(&row[e..]);
            }
            for r in 0..u {
                let srow = &mut schur[r * u..(r + 1) * u];
                for k in 0..e {
                    let l = f_ue[r * e + k];
                    if l != ZERO {
                        for (x, &y) in srow.iter_mut().zip(&w[k * u..(k + 1) * u]) {
                            *x -= l * y;
                        }
                    }
                }
            }
            if u > 0 {
                pending[t] = Some(schur);
            }
            fronts.push(Front { lu, w, f_ue });
        }
        Ok(Self { symbolic, fronts })
    }

    pub fn dim(&self) -> usize {
        self.symbolic.n
    }

    pub fn symbolic(&self) -> &Symbolic {
        &self.symbolic
    }

    /// One forward/backward sweep.
    pub fn solve(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.symbolic.n;
        if rhs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: rhs.len(),
            });
        }
        let mut x = rhs.to_vec();
        let mut buf = Vec::new();
        for (node, fr) in self.symbolic.nodes.iter().zip(&self.fronts) {
            buf.clear();
            buf.extend(node.elim.iter().map(|&d| x[d]));
            fr.lu.solve_block(&mut buf, 1);
            let e = node.elim.len();
            for (r, &k) in node.update.iter().enumerate() {
                let dot: Complex64 = fr.f_ue[r * e..(r + 1) * e].iter().zip(&buf).map(|(a, b)| a * b).sum();
                x[k] -= dot;
            }
            for (&d, &v) in node.elim.iter().zip(&buf) {
                x[d] = v;
            }
        }
        for (node, fr) in self.symbolic.nodes.iter().zip(&self.fronts).rev() {
            let u = node.update.len();
            if u == 0 {
                continue;
            }
            buf.clear();
            buf.extend(node.update.iter().map(|&d| x[d]));
            for (r, &d) in node.elim.iter().enumerate() {
                let dot: Complex64 = fr.w[r * u..(r + 1) * u].iter().zip(&buf).map(|(a, b)| a * b).sum();
                x[d] -= dot;
            }
        }
        debug_assert!(self.fronts.iter().map(|f| f.lu.dim()).sum::<usize>() == n);
        Ok(x)
    }
}
