//! Babai's nearest-plane algorithm and the rectangular partition it induces.
//!
//! One rounding convention is used everywhere (here, in the protocol nodes
//! and at the fusion center): ties round toward +infinity.

use crate::error::{LatticeError, Result};
use crate::lattice::{
    cvp_bruteforce, dot, gram_schmidt, qr_upper_triangular, GeneratorMatrix, LatticeVector,
    SquareMatrix,
};

/// Nearest integer, with exact halves rounded up: `[0.5] = 1`, `[-0.5] = 0`.
pub fn round_nearest(z: f64) -> Result<i64> {
    if !z.is_finite() {
        return Err(LatticeError::NonFinite(z));
    }
    let f = z.floor();
    // z - floor(z) is exact for |z| < 2^52, unlike z + 0.5.
    let r = if z - f >= 0.5 { f + 1.0 } else { f };
    if r.abs() >= 9.0e18 {
        return Err(LatticeError::Domain(format!("{z} does not round into i64")));
    }
    Ok(r as i64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NearestPlaneResult {
    pub coeffs: Vec<i64>,
    pub point: Vec<f64>,
    /// Unrounded value at each level, indexed like `coeffs`.
    pub residuals: Vec<f64>,
}

/// Nearest-plane coefficients for an upper-triangular basis:
/// `b_m = [(x_m - sum_{l>m} b_l v_{m,l}) / v_{m,m}]`, for `m = n..1`.
fn nearest_plane_triangular(v: &GeneratorMatrix, x: &[f64]) -> Result<(Vec<i64>, Vec<f64>)> {
    let n = v.n();
    let mut coeffs = vec![0i64; n];
    let mut residuals = vec![0.0; n];
    for m in (0..n).rev() {
        let coupled: f64 = (m + 1..n).map(|l| coeffs[l] as f64 * v.entry(m, l)).sum();
        let r = (x[m] - coupled) / v.entry(m, m);
        residuals[m] = r;
        coeffs[m] = round_nearest(r)?;
    }
    Ok((coeffs, residuals))
}

fn nearest_plane_general(v: &GeneratorMatrix, x: &[f64]) -> Result<(Vec<i64>, Vec<f64>)> {
    let n = v.n();
    let gs = gram_schmidt(v)?;
    let mut z = x.to_vec();
    let mut coeffs = vec![0i64; n];
    let mut residuals = vec![0.0; n];
    for i in (0..n).rev() {
        let r = dot(&z, &gs.ortho[i]) / gs.sq_norms[i];
        let b = round_nearest(r)?;
        residuals[i] = r;
        coeffs[i] = b;
        let bf = b as f64;
        z.iter_mut()
            .zip(v.column(i))
            .for_each(|(a, c)| *a -= bf * c);
    }
    Ok((coeffs, residuals))
}

/// Babai's nearest-plane approximation `x_np` of the closest lattice point,
/// relative to the basis exactly as given.
pub fn nearest_plane(v: &GeneratorMatrix, x: &[f64]) -> Result<NearestPlaneResult> {
    if x.len() != v.n() {
        return Err(LatticeError::DimensionMismatch {
            expected: v.n(),
            got: x.len(),
        });
    }
    if let Some(bad) = x.iter().find(|c| !c.is_finite()) {
        return Err(LatticeError::NonFinite(*bad));
    }
    let (coeffs, residuals) = if v.is_upper_triangular() {
        nearest_plane_triangular(v, x)?
    } else {
        nearest_plane_general(v, x)?
    };
    let point = v.point(&coeffs);
    Ok(NearestPlaneResult {
        coeffs,
        point,
        residuals,
    })
}

/// A cell of the Babai partition: the half-open box
/// `center + Q * prod_i [-h_i, h_i)` with `h_i = |r_ii| / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BabaiCell {
    pub center: LatticeVector,
    pub half_widths: Vec<f64>,
    pub frame: SquareMatrix,
}

impl BabaiCell {
    pub fn volume(&self) -> f64 {
        self.half_widths.iter().map(|h| 2.0 * h).product()
    }

    /// Offset of `x` from the center in the cell's axis frame.
    pub fn local_coords(&self, x: &[f64]) -> Vec<f64> {
        let d: Vec<f64> = x
            .iter()
            .zip(&self.center.point)
            .map(|(a, c)| a - c)
            .collect();
        self.frame.tr_mul_vec(&d)
    }

    pub fn contains(&self, x: &[f64], slack: f64) -> bool {
        self.local_coords(x)
            .iter()
            .zip(&self.half_widths)
            .all(|(y, h)| *y >= -h - slack && *y < h + slack)
    }

    /// Corners in original coordinates; for `n = 2` they come out counter-clockwise
    /// in the cell frame.
    pub fn corners_2d(&self) -> Vec<[f64; 2]> {
        let (hx, hy) = (self.half_widths[0], self.half_widths[1]);
        [(-hx, -hy), (hx, -hy), (hx, hy), (-hx, hy)]
            .iter()
            .map(|&(a, b)| {
                let p = self.frame.mul_vec(&[a, b]);
                [p[0] + self.center.point[0], p[1] + self.center.point[1]]
            })
            .collect()
    }
}

pub fn babai_cell(v: &GeneratorMatrix, lattice_point: &LatticeVector) -> Result<BabaiCell> {
    if lattice_point.coeffs.len() != v.n() {
        return Err(LatticeError::DimensionMismatch {
            expected: v.n(),
            got: lattice_point.coeffs.len(),
        });
    }
    let qr = qr_upper_triangular(v)?;
    let half_widths = (0..v.n()).map(|i| qr.r.entry(i, i).abs() / 2.0).collect();
    Ok(BabaiCell {
        center: LatticeVector::new(v, lattice_point.coeffs.clone()),
        half_widths,
        frame: qr.q,
    })
}

/// Does the nearest-plane point coincide with the exact closest point?
pub fn np_matches_cvp(v: &GeneratorMatrix, x: &[f64]) -> Result<bool> {
    let np = nearest_plane(v, x)?;
    let nl = cvp_bruteforce(v, x)?;
    Ok(np
        .point
        .iter()
        .zip(&nl.point)
        .all(|(a, b)| (a - b).abs() <= 1e-9))
}
