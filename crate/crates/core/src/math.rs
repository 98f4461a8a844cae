//! Small numerical helpers shared across modules.

/// `1 - cos(t)` without cancellation near zero.
#[inline]
pub fn one_minus_cos(t: f64) -> f64 {
    let s = (0.5 * t).sin();
    2.0 * s * s
}

/// `sin(t) / t`, equal to 1 at the origin.
#[inline]
pub fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 - t2 / 6.0 * (1.0 - t2 / 20.0)
    } else {
        t.sin() / t
    }
}

/// `sin(t)/t - 1` without cancellation near zero.
#[inline]
pub fn sinc_minus_one(t: f64) -> f64 {
    if t.abs() < 0.5 {
        // Alternating series; 10 terms reach double precision for |t| < 0.5.
        let t2 = t * t;
        let mut term = -t2 / 6.0;
        let mut sum = term;
        for n in 2..12 {
            let n = n as f64;
            term *= -t2 / ((2.0 * n) * (2.0 * n + 1.0));
            sum += term;
        }
        sum
    } else {
        t.sin() / t - 1.0
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Solves the overdetermined system `design * c ~ y` in the least-squares
/// sense with Householder QR. `design` is row-major with `ncols` columns.
pub fn least_squares(design: &[f64], ncols: usize, y: &[f64]) -> Vec<f64> {
    let nrows = y.len();
    assert_eq!(design.len(), nrows * ncols);
    assert!(nrows >= ncols);
    let mut a = design.to_vec();
    let mut b = y.to_vec();
    for k in 0..ncols {
        let norm = (k..nrows).map(|i| a[i * ncols + k].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k * ncols + k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..nrows).map(|i| a[i * ncols + k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..ncols {
            let dot: f64 = (k..nrows).map(|i| v[i - k] * a[i * ncols + j]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k..nrows {
                a[i * ncols + j] -= f * v[i - k];
            }
        }
        let dot: f64 = (k..nrows).map(|i| v[i - k] * b[i]).sum();
        let f = 2.0 * dot / vnorm2;
        for i in k..nrows {
            b[i] -= f * v[i - k];
        }
    }
    let mut c = vec![0.0; ncols];
    for k in (0..ncols).rev() {
        let s: f64 = ((k + 1)..ncols).map(|j| a[k * ncols + j] * c[j]).sum();
        c[k] = (b[k] - s) / a[k * ncols + k];
    }
    c
}

/// Spearman rank correlation (average ranks for ties).
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let rx = ranks(x);
    let ry = ranks(y);
    let n = rx.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let sxy: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    sxy / (sxx * syy).sqrt()
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}
