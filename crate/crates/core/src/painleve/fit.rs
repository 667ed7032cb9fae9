//! Recovery of a polynomial relation `F(x, y) = Σ cᵢⱼ xⁱ yʲ = 0` from
//! sampled points, via the smallest singular direction of the monomial
//! matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

const DISTINCT_TOL: f64 = 1e-8;
const HELDOUT_FRACTION: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveFitSpec {
    pub deg_x: usize,
    pub deg_y: usize,
    pub sample_count: usize,
    /// Threshold on `σ/σ_max` below which a singular value counts as zero.
    pub rank_tol: f64,
}

impl CurveFitSpec {
    pub fn new(deg_x: usize, deg_y: usize) -> Result<Self> {
        Self::with(deg_x, deg_y, (deg_x + 1) * (deg_y + 1) + 5, 1e-10)
    }

    pub fn with(deg_x: usize, deg_y: usize, sample_count: usize, rank_tol: f64) -> Result<Self> {
        if deg_x < 1 || deg_y < 1 {
            return Err(Error::InvalidParams(format!("degrees must be at least 1, got ({deg_x}, {deg_y})")));
        }
        let needed = (deg_x + 1) * (deg_y + 1) + 5;
        if sample_count < needed {
            return Err(Error::InsufficientSamples {
                got: sample_count,
                needed,
            });
        }
        if !(rank_tol > 0.0 && rank_tol < 1.0) {
            return Err(Error::InvalidParams(format!("rank_tol must lie in (0, 1), got {rank_tol}")));
        }
        Ok(CurveFitSpec {
            deg_x,
            deg_y,
            sample_count,
            rank_tol,
        })
    }

    fn columns(&self) -> usize {
        (self.deg_x + 1) * (self.deg_y + 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveFit {
    pub deg_x: usize,
    pub deg_y: usize,
    /// `coeffs[i][j]` multiplies `xⁱ yʲ`; the largest modulus is 1.
    pub coeffs: Vec<Vec<Complex64>>,
    /// `max |F(x, y)|` over the held-out samples.
    pub heldout_residual: f64,
    /// Singular values relative to the largest, descending.
    pub singular_values: Vec<f64>,
}

impl CurveFit {
    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        horner2(&self.coeffs, x, y)
    }

    /// Nonzero coefficients with their `(i, j)` exponents.
    pub fn terms(&self, cutoff: f64) -> Vec<(usize, usize, Complex64)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c.norm() > cutoff {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    pub fn total_degree(&self, cutoff: f64) -> usize {
        self.terms(cutoff).iter().map(|&(i, j, _)| i + j).max().unwrap_or(0)
    }
}

fn horner2(coeffs: &[Vec<Complex64>], x: Complex64, y: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, row| {
        acc * x + row.iter().rev().fold(Complex64::new(0.0, 0.0), |r, &c| r * y + c)
    })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic `(training, heldout)` index split.
fn split(n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (splitmix64(i as u64), i));
    let k = (n as f64 * HELDOUT_FRACTION).round() as usize;
    let mut held = order[..k].to_vec();
    let mut train = order[k..].to_vec();
    held.sort_unstable();
    train.sort_unstable();
    (train, held)
}

fn monomial_row(x: Complex64, y: Complex64, dx: usize, dy: usize) -> Vec<Complex64> {
    let mut row = Vec::with_capacity((dx + 1) * (dy + 1));
    let mut xi = Complex64::new(1.0, 0.0);
    for _ in 0..=dx {
        let mut yj = Complex64::new(1.0, 0.0);
        for _ in 0..=dy {
            row.push(xi * yj);
            yj *= y;
        }
        xi *= x;
    }
    row
}

fn check_distinct(points: &[(Complex64, Complex64)]) -> Result<()> {
    for i in 0..points.len() {
        for j in 0..i {
            let (a, b) = (points[i], points[j]);
            if (a.0 - b.0).norm() < DISTINCT_TOL && (a.1 - b.1).norm() < DISTINCT_TOL {
                return Err(Error::InvalidParams(format!("samples {j} and {i} coincide")));
            }
        }
    }
    Ok(())
}

/// Fits `F` of bidegree `(deg_x, deg_y)` on 80% of `points` and reports the
/// largest `|F|` on the held-out 20%.
pub fn fit_algebraic_relation(points: &[(Complex64, Complex64)], spec: &CurveFitSpec) -> Result<CurveFit> {
    if points.len() < spec.sample_count {
        return Err(Error::InsufficientSamples {
            got: points.len(),
            needed: spec.sample_count,
        });
    }
    check_distinct(points)?;
    let (train, held) = split(points.len());
    let cols = spec.columns();
    if train.len() < cols {
        return Err(Error::InsufficientSamples {
            got: points.len(),
            needed: ((cols as f64) / (1.0 - HELDOUT_FRACTION)).ceil() as usize,
        });
    }
    let mut m = DMatrix::<Complex64>::zeros(train.len(), cols);
    for (r, &i) in train.iter().enumerate() {
        let (x, y) = points[i];
        for (c, v) in monomial_row(x, y, spec.deg_x, spec.deg_y).into_iter().enumerate() {
            m[(r, c)] = v;
        }
    }
    let norms: Vec<f64> = (0..cols).map(|c| m.column(c).norm()).collect();
    if norms.iter().any(|&n| !(n > 0.0) || !n.is_finite()) {
        return Err(Error::NonFiniteResult);
    }
    for (c, &n) in norms.iter().enumerate() {
        m.column_mut(c).scale_mut(1.0 / n);
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.as_ref().ok_or(Error::NonFiniteResult)?;
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if !(smax > 0.0) {
        return Err(Error::NonFiniteResult);
    }
    let mut rel: Vec<(usize, f64)> = sv.iter().map(|&s| s / smax).enumerate().collect();
    rel.sort_by(|a, b| b.1.total_cmp(&a.1));
    let small = rel.iter().filter(|(_, s)| *s < spec.rank_tol).count();
    match small {
        0 => return Err(Error::NoRelation),
        1 => {}
        k => return Err(Error::RankDeficient(k)),
    }
    let (k_min, _) = *rel.last().expect("at least one singular value");
    let mut flat: Vec<Complex64> = (0..cols).map(|c| v_t[(k_min, c)].conj() / norms[c]).collect();
    let pivot = flat
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("non-empty coefficient vector");
    for c in flat.iter_mut() {
        *c /= pivot;
    }
    let coeffs: Vec<Vec<Complex64>> = flat.chunks(spec.deg_y + 1).map(|r| r.to_vec()).collect();
    let heldout_residual = held
        .iter()
        .map(|&i| horner2(&coeffs, points[i].0, points[i].1).norm())
        .fold(0.0, f64::max);
    Ok(CurveFit {
        deg_x: spec.deg_x,
        deg_y: spec.deg_y,
        coeffs,
        heldout_residual,
        singular_values: rel.into_iter().map(|(_, s)| s).collect(),
    })
}

/// Sweeps bidegrees by increasing `deg_x + deg_y`, then `deg_x`, and returns
/// the first unambiguous relation.
pub fn fit_minimal_relation(points: &[(Complex64, Complex64)], max_deg: usize, rank_tol: f64) -> Result<CurveFit> {
    let mut last = Error::NoRelation;
    for total in 2..=2 * max_deg {
        for dx in 1..=max_deg {
            if total <= dx || total - dx > max_deg {
                continue;
            }
            let dy = total - dx;
            let spec = CurveFitSpec::with(dx, dy, (dx + 1) * (dy + 1) + 5, rank_tol)?;
            match fit_algebraic_relation(points, &spec) {
                Ok(fit) => return Ok(fit),
                Err(e @ (Error::NoRelation | Error::RankDeficient(_) | Error::InsufficientSamples { .. })) => {
                    last = e;
                }
                Err(e) => return Err(e),
            }
        }
    }
    Err(last)
}
