//! Error probability of the nearest-plane partition.
//!
//! `P_e` is the fraction of the origin's Babai cell lying outside the origin's
//! Voronoi cell, i.e. the probability (in the fine-quantization limit) that
//! the nearest-plane point differs from the closest lattice point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::geometry::{area, clip_convex, make_ccw};
use super::voronoi::voronoi_polygon_general;
use crate::babai::babai_cell;
use crate::error::{LatticeError, Result};
use crate::lattice::{CvpOracle, GeneratorMatrix, LatticeVector, ReducedBasis2D};

/// Samples drawn from one RNG substream; fixes the work split independently of the thread count.
pub const MC_BATCH: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeEstimate {
    pub estimate: f64,
    /// Binomial standard error `sqrt(p (1 - p) / n)` of the estimate.
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl PeEstimate {
    fn from_count(errors: u64, n_samples: u64, seed: u64) -> Self {
        let p = errors as f64 / n_samples as f64;
        Self {
            estimate: p,
            std_error: (p * (1.0 - p) / n_samples as f64).sqrt(),
            n_samples,
            seed,
        }
    }
}

/// `F(a, b) = (a - a^2) / (4 b^2)` for a canonical reduced basis `{(1,0),(a,b)}`.
pub fn analytic_pe(a: f64, b: f64) -> Result<f64> {
    let basis = ReducedBasis2D::new(a, b)?;
    let (a, b) = (basis.a(), basis.b());
    Ok((a - a * a) / (4.0 * b * b))
}

/// The same quantity in polar form, `(1/(4 rho)) |cos t| / sin^2 t * (1 - rho |cos t|)`.
///
/// Besides `pi/3 <= theta <= 2 pi/3` and `rho >= 1`, the pair must describe a
/// reduced basis, which also needs `rho |cos theta| <= 1/2`.
pub fn analytic_pe_polar(theta: f64, rho: f64) -> Result<f64> {
    use std::f64::consts::PI;
    let eps = 1e-12;
    if !theta.is_finite() || !rho.is_finite() {
        return Err(LatticeError::NonFinite(if theta.is_finite() {
            rho
        } else {
            theta
        }));
    }
    if theta < PI / 3.0 - eps || theta > 2.0 * PI / 3.0 + eps {
        return Err(LatticeError::Domain(format!(
            "theta = {theta} outside [pi/3, 2pi/3]"
        )));
    }
    if rho < 1.0 - eps {
        return Err(LatticeError::Domain(format!("rho = {rho} < 1")));
    }
    let (c, s) = (theta.cos().abs(), theta.sin());
    if rho * c > 0.5 + eps {
        return Err(LatticeError::Domain(format!(
            "rho |cos theta| = {} > 1/2: basis not reduced",
            rho * c
        )));
    }
    Ok(c / (4.0 * rho * s * s) * (1.0 - rho * c))
}

fn require_2d(v: &GeneratorMatrix) -> Result<()> {
    if v.n() != 2 {
        return Err(LatticeError::UnsupportedDimension {
            got: v.n(),
            reason: "exact geometry is two-dimensional",
        });
    }
    Ok(())
}

/// `1 - area(B(0) ∩ V(0)) / |det V|`, with the Babai cell of `v` exactly as given.
pub fn exact_pe_area(v: &GeneratorMatrix) -> Result<f64> {
    require_2d(v)?;
    let cell = babai_cell(v, &LatticeVector::origin(2))?;
    let voronoi = voronoi_polygon_general(v)?;
    let inter = clip_convex(&make_ccw(cell.corners_2d()), &voronoi.vertices);
    Ok((1.0 - area(&inter) / v.abs_det()).clamp(0.0, 1.0))
}

/// Uniform samples from the origin's Babai cell, checked against the exact closest point.
///
/// Batch `i` draws from `ChaCha8(seed)` stream `i`, so the result depends only
/// on `(seed, n_samples)`.
pub fn monte_carlo_pe(v: &GeneratorMatrix, n_samples: u64, seed: u64) -> Result<PeEstimate> {
    if n_samples == 0 {
        return Err(LatticeError::Domain("n_samples must be at least 1".into()));
    }
    let oracle = CvpOracle::new(v)?;
    let cell = babai_cell(v, &LatticeVector::origin(v.n()))?;
    let n = v.n();
    let batches = n_samples.div_ceil(MC_BATCH);
    let counts: Vec<u64> = (0..batches)
        .into_par_iter()
        .map(|batch| -> Result<u64> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch);
            let len = MC_BATCH.min(n_samples - batch * MC_BATCH);
            let mut y = vec![0.0; n];
            let mut errors = 0;
            for _ in 0..len {
                for (yi, h) in y.iter_mut().zip(&cell.half_widths) {
                    *yi = h * (2.0 * rng.random::<f64>() - 1.0);
                }
                let x = cell.frame.mul_vec(&y);
                if oracle.closest_coeffs(&x)?.iter().any(|&c| c != 0) {
                    errors += 1;
                }
            }
            Ok(errors)
        })
        .collect::<Result<_>>()?;
    Ok(PeEstimate::from_count(counts.iter().sum(), n_samples, seed))
}

/// Points of the level curve `F(a, b) = k` on a uniform grid of `a` over `[0, 1/2]`.
///
/// Every point satisfies `(a - 1/2)^2 + 4 k b^2 = 1/4`; points outside the
/// reduced region are dropped.
pub fn level_curve_points(k: f64, a_grid_count: usize) -> Result<Vec<(f64, f64)>> {
    if !(k > 0.0 && k <= 1.0 / 12.0 + 1e-15) {
        return Err(LatticeError::Domain(format!(
            "level k = {k} outside (0, 1/12]"
        )));
    }
    if a_grid_count < 2 {
        return Err(LatticeError::Domain(
            "a grid needs at least 2 points".into(),
        ));
    }
    Ok((0..a_grid_count)
        .map(|i| 0.5 * i as f64 / (a_grid_count - 1) as f64)
        .map(|a| (a, ((a - a * a) / (4.0 * k)).sqrt()))
        .filter(|&(a, b)| ReducedBasis2D::new(a, b).is_ok())
        .collect())
}
