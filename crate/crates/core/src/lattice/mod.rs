//! Lattice bases, exact rationals, orthogonalization, 2D reduction and the
//! brute-force closest-vector oracle.

mod cvp;
mod decomp;
mod matrix;
mod rational;
mod reduce;

pub use cvp::{cvp_bruteforce, CvpOracle, LatticeVector, MAX_CANDIDATES, MAX_ORACLE_DIM};
pub use decomp::{gram_schmidt, qr_upper_triangular, GramSchmidt, Qr};
pub use matrix::{dot, norm, Entry, GeneratorMatrix, MatrixSpec, SquareMatrix, DET_TOLERANCE};
pub use rational::{lcm_all, Rational};
pub use reduce::{
    canonicalize_2d, gauss_reduce_2d, is_minkowski_reduced_2d, Canonical2D, ReducedBasis2D,
    Unimodular2, REDUCED_TOLERANCE,
};
