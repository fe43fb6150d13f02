//! Two-dimensional Lagrange-Gauss (Minkowski) reduction and the canonical
//! `{(1,0), (a,b)}` form of a reduced basis.

use std::f64::consts::FRAC_PI_2;

use super::matrix::{dot, Entry, GeneratorMatrix, SquareMatrix};
use super::rational::Rational;
use crate::error::{LatticeError, Result};

/// Absolute slack for the reduction inequalities, on the squared-norm scale.
pub const REDUCED_TOLERANCE: f64 = 1e-12;

const MAX_REDUCTION_STEPS: usize = 10_000;

/// Integer change of basis, row-major: `reduced = V * U`, `|det U| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unimodular2(pub [[i64; 2]; 2]);

impl Unimodular2 {
    pub const IDENTITY: Self = Self([[1, 0], [0, 1]]);

    pub fn det(&self) -> i64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    fn column(&self, j: usize) -> [i64; 2] {
        [self.0[0][j], self.0[1][j]]
    }

    fn set_column(&mut self, j: usize, c: [i64; 2]) {
        self.0[0][j] = c[0];
        self.0[1][j] = c[1];
    }
}

fn require_2d(v: &GeneratorMatrix) -> Result<()> {
    if v.n() != 2 {
        return Err(LatticeError::UnsupportedDimension {
            got: v.n(),
            reason: "two-dimensional routine",
        });
    }
    Ok(())
}

/// `||v1|| <= ||v2||` and `2 |<v1,v2>| <= ||v1||^2`, within [`REDUCED_TOLERANCE`].
pub fn is_minkowski_reduced_2d(v: &GeneratorMatrix) -> Result<bool> {
    require_2d(v)?;
    let (v1, v2) = (v.column(0), v.column(1));
    let n1 = dot(v1, v1);
    let n2 = dot(v2, v2);
    let ip = dot(v1, v2);
    Ok(n1 <= n2 + REDUCED_TOLERANCE && 2.0 * ip.abs() <= n1 + REDUCED_TOLERANCE)
}

/// Lagrange-Gauss reduction, with the second vector's sign chosen so `<w1, w2> >= 0`.
pub fn gauss_reduce_2d(v: &GeneratorMatrix) -> Result<(GeneratorMatrix, Unimodular2)> {
    require_2d(v)?;
    let mut w = [v.column(0).to_vec(), v.column(1).to_vec()];
    let mut u = Unimodular2::IDENTITY;
    let sq = |x: &[f64]| dot(x, x);

    // Relative slack so that equal-norm pairs (e.g. hexagonal) are left alone.
    let shorter = |a: &[f64], b: &[f64]| sq(a) < sq(b) * (1.0 - 1e-12);

    if shorter(&w[1], &w[0]) {
        w.swap(0, 1);
        u = swap_columns(u);
    }
    let mut steps = 0;
    loop {
        steps += 1;
        if steps > MAX_REDUCTION_STEPS {
            return Err(LatticeError::DegenerateBasis(
                "Gauss reduction did not terminate".into(),
            ));
        }
        let ratio = dot(&w[0], &w[1]) / sq(&w[0]);
        let mu = if ratio.abs() <= 0.5 {
            0.0
        } else {
            ratio.round()
        };
        if mu != 0.0 {
            let m = mu as i64;
            let (w0, w1) = (w[0].clone(), &mut w[1]);
            w1.iter_mut().zip(&w0).for_each(|(a, b)| *a -= mu * b);
            let (c0, c1) = (u.column(0), u.column(1));
            u.set_column(1, [c1[0] - m * c0[0], c1[1] - m * c0[1]]);
        }
        if !shorter(&w[1], &w[0]) {
            break;
        }
        w.swap(0, 1);
        u = swap_columns(u);
    }
    if dot(&w[0], &w[1]) < 0.0 {
        let c1 = u.column(1);
        u.set_column(1, [-c1[0], -c1[1]]);
    }
    Ok((apply_unimodular(v, &u)?, u))
}

fn swap_columns(u: Unimodular2) -> Unimodular2 {
    let m = u.0;
    Unimodular2([[m[0][1], m[0][0]], [m[1][1], m[1][0]]])
}

/// `V U`, recomputed from the original entries (exactly, when `V` is fully rational).
fn apply_unimodular(v: &GeneratorMatrix, u: &Unimodular2) -> Result<GeneratorMatrix> {
    let exact: Option<Vec<Rational>> = (0..2)
        .flat_map(|j| (0..2).map(move |i| (i, j)))
        .map(|(i, j)| v.rational_entry(i, j))
        .collect();
    let columns: Vec<Vec<Entry>> = (0..2)
        .map(|j| {
            (0..2)
                .map(|i| match &exact {
                    Some(r) => Entry::Exact(
                        r[i] * Rational::from_integer(u.0[0][j] as i128)
                            + r[2 + i] * Rational::from_integer(u.0[1][j] as i128),
                    ),
                    None => Entry::Real(
                        v.entry(i, 0) * u.0[0][j] as f64 + v.entry(i, 1) * u.0[1][j] as f64,
                    ),
                })
                .collect()
        })
        .collect();
    GeneratorMatrix::from_entry_columns(&columns)
}

/// Canonical parameters `(a, b)` of a reduced basis `{(1,0), (a,b)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedBasis2D {
    a: f64,
    b: f64,
}

impl ReducedBasis2D {
    /// Validates `0 <= a <= 1/2`, `b >= sqrt(3)/2` and `a^2 + b^2 >= 1` (slack 1e-12).
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let tol = REDUCED_TOLERANCE;
        let ok = a.is_finite()
            && b.is_finite()
            && (0.0..=0.5).contains(&a)
            && b >= 3f64.sqrt() / 2.0 - tol
            && a * a + b * b >= 1.0 - tol;
        if !ok {
            return Err(LatticeError::Domain(format!(
                "(a, b) = ({a}, {b}) is outside the canonical reduced region"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Norm ratio `||v2|| / ||v1||`.
    pub fn rho(&self) -> f64 {
        self.a.hypot(self.b)
    }

    /// Angle between the basis vectors, in `[pi/3, pi/2]`.
    pub fn theta(&self) -> f64 {
        if self.a == 0.0 {
            FRAC_PI_2
        } else {
            self.b.atan2(self.a)
        }
    }

    pub fn matrix(&self) -> GeneratorMatrix {
        GeneratorMatrix::from_rows(&[vec![1.0, self.a], vec![0.0, self.b]])
            .expect("canonical reduced basis is full rank")
    }
}

/// `isometry * V * transform / scale = [[1, a], [0, b]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Canonical2D {
    pub basis: ReducedBasis2D,
    pub scale: f64,
    pub isometry: SquareMatrix,
    pub transform: Unimodular2,
}

pub fn canonicalize_2d(v: &GeneratorMatrix) -> Result<Canonical2D> {
    let (w, transform) = gauss_reduce_2d(v)?;
    let (w1, w2) = (w.column(0), w.column(1));
    let scale = dot(w1, w1).sqrt();
    let e1 = [w1[0] / scale, w1[1] / scale];
    let cross = w1[0] * w2[1] - w1[1] * w2[0];
    // Rows: e1 and the unit normal on w2's side (a reflection when the pair is clockwise).
    let side = if cross >= 0.0 { 1.0 } else { -1.0 };
    let isometry =
        SquareMatrix::from_rows(&[vec![e1[0], e1[1]], vec![-side * e1[1], side * e1[0]]])?;
    let sq = scale * scale;
    let mut a = dot(w1, w2) / sq;
    let b = cross.abs() / sq;
    // Reduction guarantees a in [0, 1/2]; absorb rounding at the ends.
    if (-1e-9..0.0).contains(&a) {
        a = 0.0;
    } else if a > 0.5 && a <= 0.5 + 1e-9 {
        a = 0.5;
    }
    Ok(Canonical2D {
        basis: ReducedBasis2D::new(a, b)?,
        scale,
        isometry,
        transform,
    })
}
