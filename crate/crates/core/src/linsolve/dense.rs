//! Dense complex LU used for the frontal matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Row-major LU with partial pivoting.
#[derive(Debug, Clone)]
pub(crate) struct DenseLu {
    n: usize,
    lu: Vec<Complex64>,
    piv: Vec<usize>,
}

impl DenseLu {
    /// `tiny` is the absolute pivot floor below which the matrix counts as singular.
    pub(crate) fn factor(mut a: Vec<Complex64>, n: usize, tiny: f64) -> Result<Self> {
        debug_assert_eq!(a.len(), n * n);
        let mut piv = vec![0usize; n];
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].norm();
            for i in k + 1..n {
                let v = a[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > tiny) {
                return Err(Error::Singular { column: k, pivot: best });
            }
            piv[k] = p;
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
            }
            let inv = 1.0 / a[k * n + k];
            let (top, rest) = a.split_at_mut((k + 1) * n);
            let pivot_row = &top[k * n + k + 1..k * n + n];
            for i in 0..n - k - 1 {
                let row = &mut rest[i * n..(i + 1) * n];
                let l = row[k] * inv;
                row[k] = l;
                if l != ZERO {
                    for (x, &u) in row[k + 1..].iter_mut().zip(pivot_row) {
                        *x -= l * u;
                    }
                }
            }
        }
        Ok(Self { n, lu: a, piv })
    }

    pub(crate) fn dim(&self) -> usize {
        self.n
    }

    /// Overwrites the row-major `n × m` block `b` with `A⁻¹ b`.
    pub(crate) fn solve_block(&self, b: &mut [Complex64], m: usize) {
        let n = self.n;
        debug_assert_eq!(b.len(), n * m);
        if m == 0 {
            return;
        }
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                for j in 0..m {
                    b.swap(k * m + j, p * m + j);
                }
            }
        }
        for k in 0..n {
            let (top, rest) = b.split_at_mut((k + 1) * m);
            let src = &top[k * m..];
            for i in k + 1..n {
                let l = self.lu[i * n + k];
                if l != ZERO {
                    for (x, &s) in rest[(i - k - 1) * m..(i - k) * m].iter_mut().zip(src) {
                        *x -= l * s;
                    }
                }
            }
        }
        for k in (0..n).rev() {
            let (top, rest) = b.split_at_mut((k + 1) * m);
            let row = &mut top[k * m..];
            for j in k + 1..n {
                let u = self.lu[k * n + j];
                if u != ZERO {
                    for (x, &s) in row.iter_mut().zip(&rest[(j - k - 1) * m..(j - k) * m]) {
                        *x -= u * s;
                    }
                }
            }
            let inv = 1.0 / self.lu[k * n + k];
            for x in row.iter_mut() {
                *x *= inv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let c = |r: f64, i: f64| Complex64::new(r, i);
        let a = vec![c(0.0, 0.0), c(2.0, 0.0), c(1.0, 1.0), c(1.0, 0.0)];
        let lu = DenseLu::factor(a.clone(), 2, 1e-300).unwrap();
        let mut b = vec![c(2.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 0.0)];
        let orig = b.clone();
        lu.solve_block(&mut b, 2);
        for col in 0..2 {
            for row in 0..2 {
                let r: Complex64 = (0..2).map(|k| a[row * 2 + k] * b[k * 2 + col]).sum();
                assert!((r - orig[row * 2 + col]).norm() < 1e-15);
            }
        }
        assert!(DenseLu::factor(vec![ZERO; 4], 2, 1e-300).is_err());
    }
}
