//! Voronoi cell of the origin for two-dimensional lattices.
//!
//! Two independent constructions: [`voronoi_vertices_reduced`] intersects the
//! bisectors of the three known relevant vectors of a canonical reduced
//! basis, while [`voronoi_polygon_general`] clips a bounding box by the
//! bisectors of every short lattice vector and reads the relevant vectors off
//! the resulting edges.
//!
//! Note on the third vertex pair of the hexagon: intersecting the bisectors
//! of `(a, b)` and `(a - 1, b)` gives `((2a - 1)/2, (b^2 - a^2 + a)/(2b))`.
//! Expressions without the `1/(2b)` scaling in the second coordinate are
//! dimensionally inconsistent with the other vertices and are not used.

use super::geometry::{
    area, clip_halfplane, cross2, dedup_ring, dot2, intersect_lines, is_convex_ccw, make_ccw,
    Point2,
};
use crate::error::{LatticeError, Result};
use crate::lattice::{
    gauss_reduce_2d, is_minkowski_reduced_2d, norm, GeneratorMatrix, ReducedBasis2D,
};

#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiPolygon2D {
    /// Counter-clockwise.
    pub vertices: Vec<Point2>,
    /// One representative of each `±w` pair, ordered by angle in `[0, pi)`.
    pub relevant_vectors: Vec<Point2>,
}

impl VoronoiPolygon2D {
    pub fn area(&self) -> f64 {
        area(&self.vertices)
    }

    pub fn is_convex(&self) -> bool {
        is_convex_ccw(&self.vertices, 1e-12)
    }

    pub fn is_centrally_symmetric(&self, tol: f64) -> bool {
        self.vertices.iter().all(|p| {
            self.vertices
                .iter()
                .any(|q| (p[0] + q[0]).abs() <= tol && (p[1] + q[1]).abs() <= tol)
        })
    }

    /// Is `w` (up to sign) among the relevant vectors?
    pub fn has_relevant_vector(&self, w: Point2, tol: f64) -> bool {
        self.relevant_vectors.iter().any(|r| {
            ((r[0] - w[0]).abs() <= tol && (r[1] - w[1]).abs() <= tol)
                || ((r[0] + w[0]).abs() <= tol && (r[1] + w[1]).abs() <= tol)
        })
    }
}

/// Sign representative with angle in `[0, pi)`.
fn upper_half(w: Point2) -> Point2 {
    let tol = 1e-12 * w[0].hypot(w[1]);
    if w[1] < -tol || (w[1].abs() <= tol && w[0] < 0.0) {
        [-w[0], -w[1]]
    } else {
        w
    }
}

fn sort_by_angle(mut vs: Vec<Point2>) -> Vec<Point2> {
    vs.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
    vs
}

/// The relevant vector besides `(1,0)` and `(a,b)` of a reduced basis `{(1,0),(a,b)}`:
/// `(a - 1, b)` when the angle is at most `pi/2` (`a >= 0`), else `(a + 1, b)`.
pub fn third_relevant_vector(a: f64, b: f64) -> Result<Point2> {
    if b.is_nan() || b <= 0.0 {
        return Err(LatticeError::Domain(format!("b must be positive, got {b}")));
    }
    let v = GeneratorMatrix::from_rows(&[vec![1.0, a], vec![0.0, b]])?;
    if !is_minkowski_reduced_2d(&v)? {
        return Err(LatticeError::NotReduced);
    }
    Ok(if a >= 0.0 { [a - 1.0, b] } else { [a + 1.0, b] })
}

/// Cell polygon from relevant vectors: consecutive bisectors (by angle) meet at the vertices.
fn polygon_from_relevant(relevant: &[Point2]) -> Result<Vec<Point2>> {
    let all = sort_by_angle(relevant.iter().flat_map(|&w| [w, [-w[0], -w[1]]]).collect());
    let k = all.len();
    (0..k)
        .map(|i| {
            let (u, w) = (all[i], all[(i + 1) % k]);
            intersect_lines(u, dot2(u, u) / 2.0, w, dot2(w, w) / 2.0)
                .ok_or_else(|| LatticeError::DegenerateBasis("parallel relevant vectors".into()))
        })
        .collect()
}

/// Voronoi cell of the canonical reduced basis `{(1,0),(a,b)}`.
///
/// A hexagon for `a > 0`; for `a = 0` the third relevant vector only touches a
/// corner and the cell is the rectangle `(±1/2, ±b/2)`.
pub fn voronoi_vertices_reduced(a: f64, b: f64) -> Result<VoronoiPolygon2D> {
    let basis = ReducedBasis2D::new(a, b)?;
    let (a, b) = (basis.a(), basis.b());
    let relevant = if a == 0.0 {
        vec![[1.0, 0.0], [0.0, b]]
    } else {
        vec![
            [1.0, 0.0],
            [a, b],
            third_relevant_vector(a, b).map(upper_half)?,
        ]
    };
    let vertices = make_ccw(polygon_from_relevant(&relevant)?);
    Ok(VoronoiPolygon2D {
        vertices,
        relevant_vectors: sort_by_angle(relevant),
    })
}

/// Voronoi cell of an arbitrary full-rank 2D lattice, in the coordinates of `v`.
pub fn voronoi_polygon_general(v: &GeneratorMatrix) -> Result<VoronoiPolygon2D> {
    let (reduced, _) = gauss_reduce_2d(v)?;
    let w1 = [reduced.entry(0, 0), reduced.entry(1, 0)];
    let w2 = [reduced.entry(0, 1), reduced.entry(1, 1)];
    let (l1, l2) = (norm(&w1), norm(&w2));
    let reach = 2.0 * l2 * (1.0 + 1e-9);

    // ||c1 w1 + c2 w2||^2 >= (c1^2 l1^2 + c2^2 l2^2) / 2 on a reduced basis.
    let c1_max = (2.0 * 2f64.sqrt() * l2 / l1).ceil() as i64 + 1;
    let mut candidates = Vec::new();
    for c1 in -c1_max..=c1_max {
        for c2 in -3i64..=3 {
            if (c1, c2) == (0, 0) {
                continue;
            }
            let w = [
                c1 as f64 * w1[0] + c2 as f64 * w2[0],
                c1 as f64 * w1[1] + c2 as f64 * w2[1],
            ];
            if norm(&w) <= reach {
                candidates.push(w);
            }
        }
    }

    let half = l1 + l2;
    let mut poly = vec![[-half, -half], [half, -half], [half, half], [-half, half]];
    for w in &candidates {
        poly = clip_halfplane(&poly, *w, dot2(*w, *w) / 2.0);
    }
    let poly = make_ccw(dedup_ring(poly, 1e-12 * l1));

    // A relevant vector's bisector carries an edge: two distinct vertices on it.
    let edge_tol = 1e-9;
    let mut relevant: Vec<Point2> = Vec::new();
    for w in candidates.iter().map(|&w| upper_half(w)) {
        let c = dot2(w, w) / 2.0;
        let on_line = poly
            .iter()
            .filter(|p| (dot2(**p, w) - c).abs() <= edge_tol * dot2(w, w))
            .count();
        let seen = relevant
            .iter()
            .any(|r| cross2(*r, w).abs() <= 1e-9 * dot2(w, w) && dot2(*r, w) > 0.0);
        if on_line >= 2 && !seen {
            relevant.push(w);
        }
    }
    Ok(VoronoiPolygon2D {
        vertices: poly,
        relevant_vectors: sort_by_angle(relevant),
    })
}
