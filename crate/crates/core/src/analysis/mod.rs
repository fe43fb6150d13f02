//! Two-dimensional error probability of the nearest-plane partition.

pub mod geometry;
mod perror;
mod voronoi;

pub use perror::{
    analytic_pe, analytic_pe_polar, exact_pe_area, level_curve_points, monte_carlo_pe, PeEstimate,
    MC_BATCH,
};
pub use voronoi::{
    third_relevant_vector, voronoi_polygon_general, voronoi_vertices_reduced, VoronoiPolygon2D,
};
