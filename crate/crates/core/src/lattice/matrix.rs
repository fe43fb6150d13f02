//! Square dense matrices and lattice generator matrices.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::decomp::orthogonalize_columns;
use super::rational::Rational;
use crate::error::{LatticeError, Result};

/// Relative singularity threshold: `|det V| < DET_TOLERANCE * prod ||v_i||` is rejected.
pub const DET_TOLERANCE: f64 = 1e-9;

/// Column-major `n x n` real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let n = columns.len();
        if n == 0 {
            return Err(LatticeError::EmptyInput);
        }
        let mut data = Vec::with_capacity(n * n);
        for col in columns {
            if col.len() != n {
                return Err(LatticeError::DimensionMismatch {
                    expected: n,
                    got: col.len(),
                });
            }
            data.extend_from_slice(col);
        }
        Ok(Self { n, data })
    }

    /// Row-major convenience constructor.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Ok(Self::from_columns(rows)?.transpose())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.n + row]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[col * self.n + row] = value;
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for j in 0..n {
            for k in 0..n {
                let b = other.get(k, j);
                if b == 0.0 {
                    continue;
                }
                for i in 0..n {
                    out.data[j * n + i] += self.get(i, k) * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (j, col) in self.columns().enumerate() {
            for (o, c) in out.iter_mut().zip(col) {
                *o += c * x[j];
            }
        }
        out
    }

    /// `self^T x`.
    pub fn tr_mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.columns().map(|col| dot(col, x)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn to_columns(&self) -> Vec<Vec<f64>> {
        self.columns().map(<[f64]>::to_vec).collect()
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// One entry of a matrix file: a plain real or an exact rational.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Entry {
    Real(f64),
    Exact(Rational),
}

impl Entry {
    pub fn value(&self) -> f64 {
        match self {
            Entry::Real(x) => *x,
            Entry::Exact(r) => r.to_f64(),
        }
    }
}

/// A full-rank lattice basis; column `i` is the basis vector `v_i`.
///
/// Entries given as exact rationals are kept alongside their double
/// values and are what the centralized protocol reads its ratios from.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix {
    basis: SquareMatrix,
    rational: Option<Vec<Option<Rational>>>,
    abs_det: f64,
}

impl GeneratorMatrix {
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        Self::from_square(SquareMatrix::from_columns(columns)?)
    }

    /// Row-major input, handy for upper-triangular matrices written as in print.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_square(SquareMatrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_square(SquareMatrix::identity(n))
    }

    pub fn from_square(basis: SquareMatrix) -> Result<Self> {
        Self::build(basis, None)
    }

    /// Columns of mixed real/exact entries.
    pub fn from_entry_columns(columns: &[Vec<Entry>]) -> Result<Self> {
        let values: Vec<Vec<f64>> = columns
            .iter()
            .map(|c| c.iter().map(Entry::value).collect())
            .collect();
        let basis = SquareMatrix::from_columns(&values)?;
        let exact: Vec<Option<Rational>> = columns
            .iter()
            .flatten()
            .map(|e| match e {
                Entry::Exact(r) => Some(*r),
                Entry::Real(_) => None,
            })
            .collect();
        let rational = exact.iter().any(Option::is_some).then_some(exact);
        Self::build(basis, rational)
    }

    /// Row-major exact rationals.
    pub fn from_rational_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let n = rows.len();
        let columns: Vec<Vec<Entry>> = (0..n)
            .map(|j| {
                rows.iter()
                    .map(|row| {
                        row.get(j)
                            .copied()
                            .map(Entry::Exact)
                            .unwrap_or(Entry::Real(f64::NAN))
                    })
                    .collect()
            })
            .collect();
        for row in rows {
            if row.len() != n {
                return Err(LatticeError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        Self::from_entry_columns(&columns)
    }

    fn build(basis: SquareMatrix, rational: Option<Vec<Option<Rational>>>) -> Result<Self> {
        if let Some(bad) = basis.data.iter().find(|v| !v.is_finite()) {
            return Err(LatticeError::NonFinite(*bad));
        }
        let (ortho, _) = orthogonalize_columns(&basis);
        let abs_det: f64 = ortho.iter().map(|v| norm(v)).product();
        let scale: f64 = basis.columns().map(norm).product();
        if abs_det.is_nan() || abs_det < DET_TOLERANCE * scale || scale == 0.0 {
            return Err(LatticeError::DegenerateBasis(format!(
                "|det| = {abs_det:e} below {DET_TOLERANCE:e} * product of column norms ({scale:e})"
            )));
        }
        Ok(Self {
            basis,
            rational,
            abs_det,
        })
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn basis(&self) -> &SquareMatrix {
        &self.basis
    }

    /// `v_{row, col}`: component `row` of basis vector `col`.
    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.basis.get(row, col)
    }

    pub fn column(&self, j: usize) -> &[f64] {
        self.basis.column(j)
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        self.basis.columns()
    }

    pub fn abs_det(&self) -> f64 {
        self.abs_det
    }

    pub fn has_rational_entries(&self) -> bool {
        self.rational.is_some()
    }

    pub fn rational_entry(&self, row: usize, col: usize) -> Option<Rational> {
        self.rational.as_ref().and_then(|r| r[col * self.n() + row])
    }

    pub fn is_upper_triangular(&self) -> bool {
        let n = self.n();
        (0..n).all(|j| (j + 1..n).all(|i| self.entry(i, j) == 0.0))
    }

    /// `V u`.
    pub fn point(&self, coeffs: &[i64]) -> Vec<f64> {
        let u: Vec<f64> = coeffs.iter().map(|&c| c as f64).collect();
        self.basis.mul_vec(&u)
    }

    /// The lattice `alpha * V`. Exact entries stay exact: every finite double is a dyadic rational.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(LatticeError::Domain(format!(
                "scale must be positive, got {alpha}"
            )));
        }
        let mut basis = self.basis.clone();
        basis.data.iter_mut().for_each(|v| *v *= alpha);
        let rational = match (&self.rational, Rational::from_f64_exact(alpha)) {
            (Some(r), Some(a)) => Some(r.iter().map(|e| e.map(|q| q * a)).collect()),
            _ => None,
        };
        Ok(Self {
            basis,
            rational,
            abs_det: self.abs_det * alpha.powi(self.n() as i32),
        })
    }

    /// Same lattice basis with exact entries negated in the rows where `flip[row]`.
    pub(crate) fn with_row_signs(&self, flip: &[bool]) -> Result<Self> {
        let n = self.n();
        let mut basis = self.basis.clone();
        let mut rational = self.rational.clone();
        for j in 0..n {
            for (i, &f) in flip.iter().enumerate() {
                if f {
                    basis.set(i, j, -basis.get(i, j));
                    if let Some(r) = rational.as_mut() {
                        r[j * n + i] = r[j * n + i].map(|q| -q);
                    }
                }
            }
        }
        Ok(Self {
            basis,
            rational,
            abs_det: self.abs_det,
        })
    }

    pub fn to_spec(&self) -> MatrixSpec {
        let n = self.n();
        let columns = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| match self.rational_entry(i, j) {
                        Some(r) => Value::String(r.to_string()),
                        None => serde_json::json!(self.entry(i, j)),
                    })
                    .collect()
            })
            .collect();
        MatrixSpec { n, columns }
    }
}

/// Matrix file format: `{"n": 2, "columns": [[1, 0], ["1/2", 0.8660254037844386]]}`.
///
/// Entries are JSON numbers or strings. Strings (`"p/q"`, integers, finite
/// decimals) and integral JSON numbers are taken as exact rationals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub n: usize,
    pub columns: Vec<Vec<Value>>,
}

impl MatrixSpec {
    pub fn to_matrix(&self) -> Result<GeneratorMatrix> {
        if self.columns.len() != self.n {
            return Err(LatticeError::DimensionMismatch {
                expected: self.n,
                got: self.columns.len(),
            });
        }
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(parse_entry).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GeneratorMatrix::from_entry_columns(&columns)
    }
}

impl TryFrom<&MatrixSpec> for GeneratorMatrix {
    type Error = LatticeError;
    fn try_from(spec: &MatrixSpec) -> Result<Self> {
        spec.to_matrix()
    }
}

fn parse_entry(v: &Value) -> Result<Entry> {
    match v {
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(Entry::Exact(Rational::from_integer(i as i128)))
            } else {
                num.as_f64()
                    .map(Entry::Real)
                    .ok_or_else(|| LatticeError::Parse(format!("bad number {num}")))
            }
        }
        Value::String(s) => Ok(Entry::Exact(s.parse()?)),
        other => Err(LatticeError::Parse(format!(
            "matrix entry must be a number or string, got {other}"
        ))),
    }
}
