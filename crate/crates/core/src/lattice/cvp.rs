//! Exhaustive closest-vector oracle for small dimensions.

use super::matrix::{norm, GeneratorMatrix, SquareMatrix};
use crate::error::{LatticeError, Result};

pub const MAX_ORACLE_DIM: usize = 6;

/// Largest enumeration box the oracle will walk.
pub const MAX_CANDIDATES: u128 = 50_000_000;

/// A lattice point together with its integer coordinates in the owning basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeVector {
    pub coeffs: Vec<i64>,
    pub point: Vec<f64>,
}

impl LatticeVector {
    pub fn new(v: &GeneratorMatrix, coeffs: Vec<i64>) -> Self {
        let point = v.point(&coeffs);
        Self { coeffs, point }
    }

    pub fn origin(n: usize) -> Self {
        Self {
            coeffs: vec![0; n],
            point: vec![0.0; n],
        }
    }
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub(crate) fn invert(m: &SquareMatrix) -> Result<SquareMatrix> {
    let n = m.n();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("nonempty range");
        if a[pivot][col] == 0.0 {
            return Err(LatticeError::DegenerateBasis("singular matrix".into()));
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for row in 0..n {
            if row != col {
                let f = a[row][col];
                if f != 0.0 {
                    for j in 0..n {
                        a[row][j] -= f * a[col][j];
                        inv[row][j] -= f * inv[col][j];
                    }
                }
            }
        }
    }
    SquareMatrix::from_rows(&inv)
}

/// Exact `argmin_u ||x - V u||`, ties going to the lexicographically smallest `u`.
///
/// Rounds the real solution `t = V^-1 x` to get an incumbent at distance `d`;
/// any minimizer then satisfies `|u_i - t_i| <= ||row_i(V^-1)|| * d`, and that
/// box is enumerated in lexicographic order.
pub fn cvp_bruteforce(v: &GeneratorMatrix, x: &[f64]) -> Result<LatticeVector> {
    CvpOracle::new(v)?.closest(x)
}

/// [`cvp_bruteforce`] with the inverse basis precomputed, for repeated queries.
#[derive(Debug, Clone)]
pub struct CvpOracle<'a> {
    basis: &'a GeneratorMatrix,
    inverse: SquareMatrix,
    dual_norms: Vec<f64>,
}

impl<'a> CvpOracle<'a> {
    pub fn new(basis: &'a GeneratorMatrix) -> Result<Self> {
        let n = basis.n();
        if n > MAX_ORACLE_DIM {
            return Err(LatticeError::UnsupportedDimension {
                got: n,
                reason: "brute-force CVP supports n <= 6",
            });
        }
        let inverse = invert(basis.basis())?;
        let dual_norms = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| inverse.get(i, j).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect();
        Ok(Self {
            basis,
            inverse,
            dual_norms,
        })
    }

    pub fn closest(&self, x: &[f64]) -> Result<LatticeVector> {
        self.closest_coeffs(x)
            .map(|u| LatticeVector::new(self.basis, u))
    }

    pub fn closest_coeffs(&self, x: &[f64]) -> Result<Vec<i64>> {
        let v = self.basis;
        let n = v.n();
        if x.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        if let Some(bad) = x.iter().find(|c| !c.is_finite()) {
            return Err(LatticeError::NonFinite(*bad));
        }
        let t = self.inverse.mul_vec(x);
        let incumbent: Vec<f64> = t.iter().map(|c| c.round()).collect();
        let residual: Vec<f64> = v
            .basis()
            .mul_vec(&incumbent)
            .iter()
            .zip(x)
            .map(|(p, q)| q - p)
            .collect();
        let radius = norm(&residual);

        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        let mut count: u128 = 1;
        for (&ti, &dual) in t.iter().zip(&self.dual_norms) {
            let reach = dual * radius * (1.0 + 1e-9) + 1e-9;
            let (l, h) = ((ti - reach).ceil(), (ti + reach).floor());
            if !(l.abs() < 9e15 && h.abs() < 9e15) {
                return Err(LatticeError::Domain("query too far from the origin".into()));
            }
            let (l, h) = (l as i64, h as i64);
            count = count.saturating_mul((h - l + 1).max(1) as u128);
            lo.push(l);
            hi.push(h);
        }
        if count > MAX_CANDIDATES {
            return Err(LatticeError::EnumerationTooLarge(count));
        }

        let mut u = lo.clone();
        let mut best_d = f64::INFINITY;
        let mut best = u.clone();
        let mut point = vec![0.0; n];
        loop {
            point.iter_mut().for_each(|p| *p = 0.0);
            for (j, &c) in u.iter().enumerate() {
                let cf = c as f64;
                point
                    .iter_mut()
                    .zip(v.column(j))
                    .for_each(|(p, b)| *p += cf * b);
            }
            let d: f64 = point.iter().zip(x).map(|(p, q)| (q - p) * (q - p)).sum();
            if d < best_d - 1e-12 * best_d.clamp(1.0, f64::MAX) {
                best_d = d;
                best.copy_from_slice(&u);
            }
            // Odometer, last coordinate fastest: lexicographic order.
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(best);
                }
                k -= 1;
                if u[k] < hi[k] {
                    u[k] += 1;
                    u[k + 1..n].copy_from_slice(&lo[k + 1..n]);
                    break;
                }
            }
        }
    }
}
