//! Band LU with partial pivoting restricted to the band.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::csr::CsrMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square matrix stored by diagonals: `kl` sub- and `ku` super-diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedComplexMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    // Column-major, `kl + ku + 1` rows per column; A(i, j) at ku + i - j.
    data: Vec<Complex64>,
}

impl BandedComplexMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let kl = kl.min(n.saturating_sub(1));
        let ku = ku.min(n.saturating_sub(1));
        Self {
            n,
            kl,
            ku,
            data: vec![ZERO; (kl + ku + 1) * n],
        }
    }

    pub fn from_csr(a: &CsrMatrix) -> Self {
        let (kl, ku) = a.bandwidths();
        let mut m = Self::zeros(a.dim(), kl, ku);
        for i in 0..a.dim() {
            for (j, v) in a.row(i) {
                m.add(i, j, v).expect("bandwidths taken from the pattern");
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.kl, self.ku)
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n || i > j + self.kl || j > i + self.ku {
            return None;
        }
        Some(j * (self.kl + self.ku + 1) + self.ku + i - j)
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.slot(i, j).map_or(ZERO, |s| self.data[s])
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) -> Result<()> {
        let s = self.slot(i, j).ok_or(Error::OutsideBand { row: i, col: j })?;
        self.data[s] = v;
        Ok(())
    }

    pub fn add(&mut self, i: usize, j: usize, v: Complex64) -> Result<()> {
        let s = self.slot(i, j).ok_or(Error::OutsideBand { row: i, col: j })?;
        self.data[s] += v;
        Ok(())
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut y = vec![ZERO; self.n];
        for j in 0..self.n {
            let lo = j.saturating_sub(self.ku);
            let hi = (j + self.kl).min(self.n - 1);
            for i in lo..=hi {
                y[i] += self.get(i, j) * x[j];
            }
        }
        Ok(y)
    }

    fn row_max(&self) -> Vec<f64> {
        let mut m = vec![0.0f64; self.n];
        for j in 0..self.n {
            let lo = j.saturating_sub(self.ku);
            let hi = (j + self.kl).min(self.n - 1);
            for (i, mi) in m.iter_mut().enumerate().take(hi + 1).skip(lo) {
                *mi = mi.max(self.get(i, j).norm());
            }
        }
        m
    }
}

/// LU factors in LAPACK `gbtrf` layout (upper bandwidth widened to `kl + ku`).
#[derive(Debug, Clone)]
pub struct BandedLu {
    n: usize,
    kl: usize,
    kv: usize,
    ab: Vec<Complex64>,
    ipiv: Vec<usize>,
}

impl BandedLu {
    fn ld(&self) -> usize {
        self.kl + self.kv + 1
    }

    #[inline]
    fn at(&self, r: usize, j: usize) -> Complex64 {
        self.ab[j * self.ld() + r]
    }
}

/// Factorizes with row pivoting inside the band. A pivot below
/// `1e-14` times the largest entry of its (original) row is reported as
/// singular.
pub fn factorize(matrix: &BandedComplexMatrix) -> Result<BandedLu> {
    let n = matrix.n;
    let (kl, ku) = (matrix.kl, matrix.ku);
    let kv = kl + ku;
    let ld = 2 * kl + ku + 1;
    let mut ab = vec![ZERO; ld * n];
    for j in 0..n {
        let lo = j.saturating_sub(ku);
        let hi = (j + kl).min(n.saturating_sub(1));
        for i in lo..=hi {
            ab[j * ld + kv + i - j] = matrix.get(i, j);
        }
    }
    let mut scale = matrix.row_max();
    let mut ipiv = vec![0usize; n];
    let mut ju = 0usize;

    for j in 0..n {
        let km = kl.min(n - 1 - j);
        let col = j * ld;
        let mut jp = 0;
        let mut best = -1.0f64;
        for r in 0..=km {
            let v = ab[col + kv + r].norm();
            if v > best {
                best = v;
                jp = r;
            }
        }
        ipiv[j] = j + jp;
        let threshold = 1e-14 * scale[j + jp].max(f64::MIN_POSITIVE);
        if !(best >= threshold) || best == 0.0 {
            return Err(Error::Singular { column: j, pivot: best });
        }
        ju = ju.max((j + ku + jp).min(n - 1));
        if jp != 0 {
            scale.swap(j, j + jp);
            for c in j..=ju {
                let base = c * ld + kv;
                ab.swap(base + j - c, base + j + jp - c);
            }
        }
        if km > 0 {
            let inv = 1.0 / ab[col + kv];
            for r in 1..=km {
                ab[col + kv + r] *= inv;
            }
            for c in (j + 1)..=ju {
                let cb = c * ld + kv;
                let f = ab[cb + j - c];
                if f == ZERO {
                    continue;
                }
                for r in 1..=km {
                    let l = ab[col + kv + r];
                    ab[cb + j + r - c] -= l * f;
                }
            }
        }
    }
    Ok(BandedLu { n, kl, kv, ab, ipiv })
}

/// Solves `A x = rhs` with a factorization from [`factorize`].
pub fn solve(lu: &BandedLu, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = lu.n;
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rhs.len(),
        });
    }
    let kv = lu.kv;
    let mut x = rhs.to_vec();
    for j in 0..n {
        let p = lu.ipiv[j];
        if p != j {
            x.swap(p, j);
        }
        let km = lu.kl.min(n - 1 - j);
        let xj = x[j];
        if xj != ZERO {
            for r in 1..=km {
                x[j + r] -= lu.at(kv + r, j) * xj;
            }
        }
    }
    for j in (0..n).rev() {
        x[j] /= lu.at(kv, j);
        let xj = x[j];
        if xj != ZERO {
            for i in j.saturating_sub(kv)..j {
                x[i] -= lu.at(kv + i - j, j) * xj;
            }
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn one_by_one() {
        let mut a = BandedComplexMatrix::zeros(1, 0, 0);
        a.set(0, 0, c(2.0, 1.0)).unwrap();
        let lu = factorize(&a).unwrap();
        let x = solve(&lu, &[c(1.0, 3.0)]).unwrap();
        assert!((x[0] - c(1.0, 3.0) / c(2.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn identity_and_zero_rhs() {
        let mut a = BandedComplexMatrix::zeros(5, 1, 2);
        for i in 0..5 {
            a.set(i, i, c(1.0, 0.0)).unwrap();
        }
        let lu = factorize(&a).unwrap();
        let b: Vec<_> = (0..5).map(|i| c(i as f64, -1.0)).collect();
        assert_eq!(solve(&lu, &b).unwrap(), b);
        assert!(solve(&lu, &[ZERO; 5]).unwrap().iter().all(|v| *v == ZERO));
        assert!(solve(&lu, &[ZERO; 4]).is_err());
    }

    #[test]
    fn outside_band_rejected() {
        let mut a = BandedComplexMatrix::zeros(4, 1, 1);
        assert!(matches!(a.set(3, 0, ZERO), Err(Error::OutsideBand { .. })));
        assert_eq!(a.get(3, 0), ZERO);
    }

    #[test]
    fn singular_detected() {
        let a = BandedComplexMatrix::zeros(3, 1, 1);
        assert!(matches!(factorize(&a), Err(Error::Singular { .. })));
    }

    #[test]
    fn random_banded_system() {
        let mut rng = StdRng::seed_from_u64(7);
        let (n, kl, ku) = (50, 3, 5);
        let mut a = BandedComplexMatrix::zeros(n, kl, ku);
        for j in 0..n {
            for i in j.saturating_sub(ku)..=(j + kl).min(n - 1) {
                a.set(i, j, c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).unwrap();
            }
        }
        let b: Vec<_> = (0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let lu = factorize(&a).unwrap();
        let x = solve(&lu, &b).unwrap();
        let ax = a.mul_vec(&x).unwrap();
        let r: f64 = ax.iter().zip(&b).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
        let nb: f64 = b.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        assert!(r / nb <= 1e-12, "{}", r / nb);
    }

    #[test]
    fn pivoting_needed() {
        // Zero leading entry forces a row swap.
        let mut a = BandedComplexMatrix::zeros(2, 1, 1);
        a.set(0, 1, c(1.0, 0.0)).unwrap();
        a.set(1, 0, c(2.0, 0.0)).unwrap();
        a.set(1, 1, c(1.0, 0.0)).unwrap();
        let x = solve(&factorize(&a).unwrap(), &[c(3.0, 0.0), c(5.0, 0.0)]).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((x[1] - c(3.0, 0.0)).norm() < 1e-15);
    }
}
