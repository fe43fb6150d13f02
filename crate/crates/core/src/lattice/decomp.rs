//! Gram-Schmidt orthogonalization and the QR triangularization of a basis.

use super::matrix::{dot, norm, GeneratorMatrix, SquareMatrix};
use crate::error::{LatticeError, Result};

/// Relative threshold for `||v_i^perp||` below which the basis counts as rank deficient.
const RANK_TOLERANCE: f64 = 1e-12;

/// Orthogonalized columns `v_i^perp` and projection coefficients
/// `mu[i][j] = <v_i, v_j^perp> / ||v_j^perp||^2` for `j < i`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramSchmidt {
    pub ortho: Vec<Vec<f64>>,
    pub mu: Vec<Vec<f64>>,
    pub sq_norms: Vec<f64>,
}

/// Unchecked classical Gram-Schmidt with one re-orthogonalization pass.
pub(crate) fn orthogonalize_columns(basis: &SquareMatrix) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n = basis.n();
    let mut ortho: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut sq: Vec<f64> = Vec::with_capacity(n);
    let mut mu = vec![vec![0.0; n]; n];
    for (i, col) in basis.columns().enumerate() {
        let mut w = col.to_vec();
        for _pass in 0..2 {
            for j in 0..i {
                if sq[j] == 0.0 {
                    continue;
                }
                let c = dot(&w, &ortho[j]) / sq[j];
                mu[i][j] += c;
                w.iter_mut().zip(&ortho[j]).for_each(|(a, b)| *a -= c * b);
            }
        }
        sq.push(dot(&w, &w));
        ortho.push(w);
    }
    (ortho, mu)
}

pub fn gram_schmidt(v: &GeneratorMatrix) -> Result<GramSchmidt> {
    let (ortho, mu) = orthogonalize_columns(v.basis());
    let sq_norms: Vec<f64> = ortho.iter().map(|w| dot(w, w)).collect();
    for (i, (w, col)) in ortho.iter().zip(v.columns()).enumerate() {
        if norm(w) <= RANK_TOLERANCE * norm(col) {
            return Err(LatticeError::DegenerateBasis(format!(
                "column {i} is dependent on its predecessors"
            )));
        }
    }
    Ok(GramSchmidt {
        ortho,
        mu,
        sq_norms,
    })
}

/// `V = Q R` with `Q` orthogonal and `R` upper triangular with positive diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Qr {
    pub q: SquareMatrix,
    pub r: GeneratorMatrix,
}

pub fn qr_upper_triangular(v: &GeneratorMatrix) -> Result<Qr> {
    let n = v.n();
    if v.is_upper_triangular() {
        // Exact path: only row signs change, so exact entries survive.
        let flip: Vec<bool> = (0..n).map(|i| v.entry(i, i) < 0.0).collect();
        let mut q = SquareMatrix::identity(n);
        for (i, &f) in flip.iter().enumerate() {
            if f {
                q.set(i, i, -1.0);
            }
        }
        return Ok(Qr {
            q,
            r: v.with_row_signs(&flip)?,
        });
    }
    let gs = gram_schmidt(v)?;
    let mut q = SquareMatrix::zeros(n);
    for (j, w) in gs.ortho.iter().enumerate() {
        let len = norm(w);
        for (i, c) in w.iter().enumerate() {
            q.set(i, j, c / len);
        }
    }
    let mut r = SquareMatrix::zeros(n);
    for j in 0..n {
        for i in 0..j {
            r.set(i, j, dot(q.column(i), v.column(j)));
        }
        r.set(j, j, norm(&gs.ortho[j]));
    }
    Ok(Qr {
        q,
        r: GeneratorMatrix::from_square(r)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn gram_schmidt_identity_is_fixed() {
        let gs = gram_schmidt(&GeneratorMatrix::identity(2).unwrap()).unwrap();
        assert_eq!(gs.ortho, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(gs.mu[1][0], 0.0);
    }

    #[test]
    fn gram_schmidt_hexagonal() {
        let h = 3f64.sqrt() / 2.0;
        let v = GeneratorMatrix::from_columns(&[vec![1.0, 0.0], vec![0.5, h]]).unwrap();
        let gs = gram_schmidt(&v).unwrap();
        assert!(close(gs.ortho[1][0], 0.0) && close(gs.ortho[1][1], h));
        assert!(close(gs.mu[1][0], 0.5));
    }

    #[test]
    fn gram_schmidt_triangular_example() {
        let v = GeneratorMatrix::from_columns(&[vec![5.0, 0.0], vec![3.0, 1.0]]).unwrap();
        let gs = gram_schmidt(&v).unwrap();
        assert!(close(gs.ortho[1][0], 0.0) && close(gs.ortho[1][1], 1.0));
        assert!(close(gs.mu[1][0], 0.6));
    }

    #[test]
    fn gram_schmidt_reconstructs_columns() {
        let v = GeneratorMatrix::from_columns(&[
            vec![2.0, -1.0, 0.5],
            vec![0.3, 4.0, 1.0],
            vec![-1.0, 0.2, 3.0],
        ])
        .unwrap();
        let gs = gram_schmidt(&v).unwrap();
        for i in 0..3 {
            for j in 0..i {
                assert!(dot(&gs.ortho[i], &gs.ortho[j]).abs() < 1e-12);
            }
            let mut rebuilt = gs.ortho[i].clone();
            for j in 0..i {
                rebuilt
                    .iter_mut()
                    .zip(&gs.ortho[j])
                    .for_each(|(a, b)| *a += gs.mu[i][j] * b);
            }
            for (a, b) in rebuilt.iter().zip(v.column(i)) {
                assert!(close(*a, *b));
            }
        }
    }

    #[test]
    fn qr_rotated_square() {
        let v = GeneratorMatrix::from_columns(&[vec![1.0, 2.0], vec![-2.0, 1.0]]).unwrap();
        let qr = qr_upper_triangular(&v).unwrap();
        let s5 = 5f64.sqrt();
        assert!(close(qr.r.entry(0, 0), s5) && close(qr.r.entry(1, 1), s5));
        assert!(close(qr.r.entry(0, 1), 0.0) && qr.r.entry(1, 0) == 0.0);
    }

    #[test]
    fn qr_fixed_point_on_triangular_input() {
        let v = GeneratorMatrix::from_rows(&[vec![1.0, 0.311], vec![0.0, 1.01]]).unwrap();
        let qr = qr_upper_triangular(&v).unwrap();
        assert_eq!(qr.q, SquareMatrix::identity(2));
        assert_eq!(qr.r, v);
    }

    #[test]
    fn qr_hand_example() {
        let v = GeneratorMatrix::from_columns(&[vec![3.0, 4.0], vec![0.0, 1.0]]).unwrap();
        let qr = qr_upper_triangular(&v).unwrap();
        assert!(close(qr.r.entry(0, 0), 5.0));
        assert!(close(qr.r.entry(0, 1), 0.8));
        assert!(close(qr.r.entry(1, 1), 0.6));
        assert!(close(qr.r.abs_det(), 3.0));
    }

    #[test]
    fn qr_negative_diagonal_flips_rows_exactly() {
        let v = GeneratorMatrix::from_rational_rows(&[
            vec!["-2".parse().unwrap(), "1/3".parse().unwrap()],
            vec!["0".parse().unwrap(), "5".parse().unwrap()],
        ])
        .unwrap();
        let qr = qr_upper_triangular(&v).unwrap();
        assert_eq!(qr.r.entry(0, 0), 2.0);
        assert_eq!(qr.r.rational_entry(0, 1), Some("-1/3".parse().unwrap()));
        assert_eq!(qr.q.get(0, 0), -1.0);
    }
}
