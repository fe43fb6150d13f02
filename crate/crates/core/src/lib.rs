//! Closest lattice points in a distributed setting.
//!
//! * [`lattice`]: generator matrices, Gram-Schmidt/QR, 2D Lagrange-Gauss
//!   reduction and an exhaustive CVP oracle.
//! * [`babai`]: the nearest-plane algorithm and its rectangular partition.
//! * [`analysis`]: the 2D error probability of the nearest-plane partition,
//!   computed in closed form, by polygon clipping and by Monte Carlo.
//! * [`protocol`]: the centralized (fusion center) and interactive
//!   (broadcast) protocols with bit accounting and rate formulas.

pub mod analysis;
pub mod babai;
pub mod error;
pub mod lattice;
pub mod protocol;

pub use analysis::{analytic_pe, exact_pe_area, monte_carlo_pe, PeEstimate, VoronoiPolygon2D};
pub use babai::{
    babai_cell, nearest_plane, np_matches_cvp, round_nearest, BabaiCell, NearestPlaneResult,
};
pub use error::{LatticeError, Result};
pub use lattice::{
    cvp_bruteforce, GeneratorMatrix, LatticeVector, MatrixSpec, Rational, ReducedBasis2D,
};
pub use protocol::{run_centralized, run_interactive, SourceModel, Transcript};
