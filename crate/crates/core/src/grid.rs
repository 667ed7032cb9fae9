//! Fixed, reproducible `τ` sample sets near the fundamental domain.
//!
//! Every point has `Re τ ∈ (−½, ½) \ {0}` and `Im τ ∈ [0.8, 1.8]`, so the
//! theta series converge fast and `θ₃⁴/θ₂⁴` stays off the real axis.

use num_complex::Complex64;

const STANDARD: [(f64, f64); 20] = [
    (0.10, 1.10),
    (-0.20, 0.95),
    (0.30, 1.25),
    (-0.35, 1.05),
    (0.15, 1.60),
    (-0.05, 1.35),
    (0.40, 0.90),
    (-0.45, 1.20),
    (0.25, 1.75),
    (-0.15, 1.15),
    (0.05, 0.85),
    (-0.30, 1.50),
    (0.45, 1.40),
    (-0.40, 0.85),
    (0.20, 1.00),
    (-0.25, 1.70),
    (0.35, 1.55),
    (-0.10, 1.80),
    (0.12, 1.30),
    (-0.48, 1.00),
];

const THETA_IDENTITY: [(f64, f64); 20] = [
    (-1.0, 0.05),
    (0.3, 0.08),
    (-0.6, 0.12),
    (0.9, 0.18),
    (0.0, 0.25),
    (-0.25, 0.35),
    (0.55, 0.5),
    (-0.85, 0.7),
    (0.15, 0.9),
    (1.0, 1.1),
    (-0.4, 1.4),
    (0.7, 1.8),
    (-0.1, 2.3),
    (0.45, 3.0),
    (-0.7, 3.8),
    (0.2, 4.8),
    (-0.95, 6.0),
    (0.8, 7.2),
    (-0.3, 8.5),
    (0.05, 10.0),
];

/// 20 points spanning `0.05 ≤ Im τ ≤ 10`, `|Re τ| ≤ 1`, for the
/// theta-function identities.
pub fn theta_identity_grid() -> Vec<Complex64> {
    THETA_IDENTITY.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
}

/// The 20-point standard grid.
pub fn standard_tau_grid() -> Vec<Complex64> {
    STANDARD.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
}

/// The first `n` points of the standard grid, cycling with a small
/// imaginary offset per lap when `n > 20`.
pub fn tau_grid(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let (re, im) = STANDARD[k % STANDARD.len()];
            Complex64::new(re, im + 0.013 * (k / STANDARD.len()) as f64)
        })
        .collect()
}

/// `n` quasi-random points (golden-ratio / √2 low-discrepancy sequence)
/// in `Re τ ∈ [−0.45, 0.45]`, `Im τ ∈ [0.8, 1.8]`.
pub fn sample_taus(n: usize) -> Vec<Complex64> {
    const PHI: f64 = 0.618_033_988_749_894_9;
    const SQRT2_FRAC: f64 = 0.414_213_562_373_095_1;
    (1..=n)
        .map(|k| {
            let u = (k as f64 * PHI).fract();
            let v = (k as f64 * SQRT2_FRAC).fract();
            Complex64::new(-0.45 + 0.9 * u, 0.8 + v)
        })
        .collect()
}
