/// Trapezoidal rule over (possibly non-uniform) sample points.
pub fn trapezoid(t: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(t.len(), y.len());
    t.windows(2)
        .zip(y.windows(2))
        .map(|(t, y)| 0.5 * (t[1] - t[0]) * (y[0] + y[1]))
        .sum()
}

/// Central differences at interior samples.
pub fn central_differences(t: &[f64], y: &[f64]) -> Vec<f64> {
    (1..t.len().saturating_sub(1))
        .map(|k| (y[k + 1] - y[k - 1]) / (t[k + 1] - t[k - 1]))
        .collect()
}
