use num_complex::Complex64;

use crate::error::{Error, Result};

/// Compressed sparse row matrix with complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl CsrMatrix {
    /// Builds a square matrix from `(row, col, value)` triplets. Duplicates are
    /// summed in input order, so the result does not depend on how the caller
    /// interleaves rows.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, Complex64)]) -> Result<Self> {
        for &(r, c, _) in triplets {
            if r >= n || c >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.max(c) + 1,
                });
            }
        }
        let mut order: Vec<usize> = (0..triplets.len()).collect();
        // Stable sort keeps input order among duplicates.
        order.sort_by_key(|&k| (triplets[k].0, triplets[k].1));

        let mut row_ptr = vec![0usize; n + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values: Vec<Complex64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for &k in &order {
            let (r, c, v) = triplets[k];
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                values.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(Self {
            n,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Column indices and values of one row.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[r.clone()].binary_search(&j) {
            Ok(k) => self.values[r.start + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| self.row(i).map(|(j, v)| v * x[j]).sum())
            .collect())
    }

    /// `(lower, upper)` bandwidth of the stored pattern.
    pub fn bandwidths(&self) -> (usize, usize) {
        let mut kl = 0;
        let mut ku = 0;
        for i in 0..self.n {
            for (j, _) in self.row(i) {
                if j < i {
                    kl = kl.max(i - j);
                } else {
                    ku = ku.max(j - i);
                }
            }
        }
        (kl, ku)
    }

    /// Same pattern, values mapped entry by entry.
    pub fn map_values(&self, f: impl Fn(usize, usize, Complex64) -> Complex64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                out.values[k] = f(i, self.col_idx[k], self.values[k]);
            }
        }
        out
    }

    /// `Σ c_k A_k` over matrices sharing one sparsity pattern.
    pub fn combine(terms: &[(&CsrMatrix, Complex64)]) -> Result<Self> {
        let (first, _) = terms.first().ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        let mut out = (*first).clone();
        out.values.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for (m, c) in terms {
            if m.row_ptr != out.row_ptr || m.col_idx != out.col_idx {
                return Err(Error::InvalidParameter {
                    name: "pattern",
                    reason: "matrices do not share a sparsity pattern".into(),
                });
            }
            for (o, v) in out.values.iter_mut().zip(&m.values) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let triplets: Vec<_> = (0..self.n)
            .flat_map(|i| self.row(i).map(move |(j, v)| (j, i, v)))
            .collect();
        Self::from_triplets(self.n, &triplets).expect("indices already validated")
    }
}

/// `||b - A x||_2 / ||b||_2`, with `||b|| = 0` treated as 1.
pub fn relative_residual(a: &CsrMatrix, x: &[Complex64], b: &[Complex64]) -> Result<f64> {
    let ax = a.mul_vec(x)?;
    let r: f64 = ax.iter().zip(b).map(|(p, q)| (q - p).norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    Ok(if nb == 0.0 { r } else { r / nb })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn duplicates_are_summed() {
        let m = CsrMatrix::from_triplets(2, &[(0, 0, c(1.0)), (1, 0, c(2.0)), (0, 0, c(3.0))]).unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 0), c(4.0));
        assert_eq!(m.get(1, 0), c(2.0));
        assert_eq!(m.get(1, 1), c(0.0));
        assert_eq!(m.bandwidths(), (1, 0));
        assert!(CsrMatrix::from_triplets(2, &[(2, 0, c(1.0))]).is_err());
    }

    #[test]
    fn matvec() {
        let m = CsrMatrix::from_triplets(2, &[(0, 1, c(2.0)), (1, 0, Complex64::i())]).unwrap();
        let y = m.mul_vec(&[c(1.0), c(3.0)]).unwrap();
        assert_eq!(y, vec![c(6.0), Complex64::i()]);
        assert_eq!(m.transpose().get(1, 0), c(2.0));
        assert!(m.mul_vec(&[c(1.0)]).is_err());
    }
}
