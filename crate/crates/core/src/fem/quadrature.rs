//! Gauss–Legendre rules on [-1, 1].

/// Nodes and weights of the `n`-point rule, `1 <= n <= 5`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    match n {
        1 => (vec![0.0], vec![2.0]),
        2 => {
            let a = 1.0 / 3f64.sqrt();
            (vec![-a, a], vec![1.0, 1.0])
        }
        3 => {
            let a = (0.6f64).sqrt();
            (vec![-a, 0.0, a], vec![5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0])
        }
        4 => {
            let r = (6.0f64 / 5.0).sqrt() * 2.0;
            let a = ((3.0 - r) / 7.0).sqrt();
            let b = ((3.0 + r) / 7.0).sqrt();
            let wa = (18.0 + 30f64.sqrt()) / 36.0;
            let wb = (18.0 - 30f64.sqrt()) / 36.0;
            (vec![-b, -a, a, b], vec![wb, wa, wa, wb])
        }
        5 => {
            let r = 2.0 * (10.0f64 / 7.0).sqrt();
            let a = (5.0 - r).sqrt() / 3.0;
            let b = (5.0 + r).sqrt() / 3.0;
            let s = 70f64.sqrt();
            let wa = (322.0 + 13.0 * s) / 900.0;
            let wb = (322.0 - 13.0 * s) / 900.0;
            (vec![-b, -a, 0.0, a, b], vec![wb, wa, 128.0 / 225.0, wa, wb])
        }
        _ => panic!("gauss_legendre supports 1..=5 points, got {n}"),
    }
}

/// Tensor-product rule on the reference square: `(xi, eta, weight)`.
pub fn tensor_rule(n: usize) -> Vec<(f64, f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let mut out = Vec::with_capacity(n * n);
    for (j, &eta) in x.iter().enumerate() {
        for (i, &xi) in x.iter().enumerate() {
            out.push((xi, eta, w[i] * w[j]));
        }
    }
    out
}
