//! Finite-difference stencils on sampled data.

use std::ops::{Add, Mul, Sub};

/// Fourth-order central first derivative at interior index `i` of a uniform
/// grid with spacing `h`. Requires `2 <= i < values.len() - 2`.
pub fn five_point<T>(values: &[T], i: usize, h: f64) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let (m2, m1, p1, p2) = (values[i - 2], values[i - 1], values[i + 1], values[i + 2]);
    ((m2 - p2) + (p1 - m1) * 8.0) * (1.0 / (12.0 * h))
}

/// Derivative at `at` of the polynomial interpolating `(x[i], y[i])`.
fn lagrange_derivative(x: &[f64], y: &[f64], at: f64) -> f64 {
    let k = x.len();
    let mut total = 0.0;
    for j in 0..k {
        let mut denom = 1.0;
        for l in 0..k {
            if l != j {
                denom *= x[j] - x[l];
            }
        }
        let mut numer = 0.0;
        for m in 0..k {
            if m == j {
                continue;
            }
            let mut prod = 1.0;
            for l in 0..k {
                if l != j && l != m {
                    prod *= at - x[l];
                }
            }
            numer += prod;
        }
        total += y[j] * numer / denom;
    }
    total
}

/// First derivatives of `y(x)` on a possibly non-uniform grid, from the
/// five-point interpolating polynomial: centered in the interior, one-sided
/// near both ends. Grids shorter than five points use all available points.
pub fn gradient(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    assert_eq!(n, y.len());
    if n < 2 {
        return vec![0.0; n];
    }
    let width = n.min(5);
    let half = width / 2;
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half).min(n - width);
            lagrange_derivative(&x[lo..lo + width], &y[lo..lo + width], x[i])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn five_point_is_exact_on_quartics() {
        let h = 0.1;
        let f = |x: f64| x.powi(4) - 2.0 * x.powi(3) + x;
        let xs: Vec<f64> = (0..7).map(|i| 0.3 + h * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let x = xs[3];
        let want = 4.0 * x.powi(3) - 6.0 * x * x + 1.0;
        assert_relative_eq!(five_point(&ys, 3, h), want, epsilon = 1e-12);
    }

    #[test]
    fn gradient_is_exact_on_quartics() {
        let xs: [f64; 7] = [0.0, 0.1, 0.35, 0.4, 0.9, 1.0, 1.2];
        let ys: Vec<f64> = xs
            .iter()
            .map(|&x| x.powi(4) + 3.0 * x * x - x + 2.0)
            .collect();
        for (x, d) in xs.iter().zip(gradient(&xs, &ys)) {
            assert_relative_eq!(d, 4.0 * x.powi(3) + 6.0 * x - 1.0, epsilon = 1e-11);
        }
        let short = gradient(&[0.0, 2.0], &[1.0, 5.0]);
        assert_eq!(short, vec![2.0, 2.0]);
    }
}
