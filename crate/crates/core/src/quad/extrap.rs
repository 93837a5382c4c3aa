use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: Complex64,
    /// Difference between the two highest-order estimates.
    pub error: f64,
}

/// Neville's algorithm for the value at `h = 0` of the interpolating
/// polynomial through `(h_i, y_i)`.
pub fn neville_to_zero(h: &[f64], y: &[Complex64]) -> Extrapolated {
    assert_eq!(h.len(), y.len(), "abscissa and ordinate counts differ");
    assert!(!h.is_empty(), "nothing to extrapolate");
    let n = h.len();
    let mut t = y.to_vec();
    // After pass k, t[i] uses points i..=i+k; t[1] before the last pass is
    // the estimate from the finest n-1 points.
    let mut previous = if n > 1 { t[1] } else { t[0] };
    for k in 1..n {
        for i in 0..n - k {
            t[i] = (t[i + 1] * h[i] - t[i] * h[i + k]) / (h[i] - h[i + k]);
        }
        if k == n - 2 {
            previous = t[1];
        }
    }
    let value = t[0];
    let error = if n == 1 {
        f64::INFINITY
    } else {
        (value - previous).norm()
    };
    Extrapolated { value, error }
}
