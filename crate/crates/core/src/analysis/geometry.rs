//! Convex polygon helpers: shoelace area, half-plane clipping
//! (Sutherland-Hodgman) and line intersection.

pub type Point2 = [f64; 2];

/// Classification slack for on-edge points.
pub const CLIP_TOLERANCE: f64 = 1e-10;

#[inline]
pub fn dot2(a: Point2, b: Point2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub fn cross2(a: Point2, b: Point2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Positive for counter-clockwise vertex order.
pub fn signed_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    0.5 * (0..n)
        .map(|i| cross2(poly[i], poly[(i + 1) % n]))
        .sum::<f64>()
}

pub fn area(poly: &[Point2]) -> f64 {
    signed_area(poly).abs()
}

pub fn make_ccw(mut poly: Vec<Point2>) -> Vec<Point2> {
    if signed_area(&poly) < 0.0 {
        poly.reverse();
    }
    poly
}

/// Keep the part of `poly` with `<p, normal> <= offset`.
pub fn clip_halfplane(poly: &[Point2], normal: Point2, offset: f64) -> Vec<Point2> {
    let n = poly.len();
    if n == 0 {
        return Vec::new();
    }
    let scale = dot2(normal, normal).sqrt().max(offset.abs()).max(1.0);
    let slack = CLIP_TOLERANCE * scale;
    let side = |p: Point2| dot2(p, normal) - offset;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let s = poly[i];
        let e = poly[(i + 1) % n];
        let (ds, de) = (side(s), side(e));
        let (s_in, e_in) = (ds <= slack, de <= slack);
        if s_in != e_in {
            let t = ds / (ds - de);
            out.push([s[0] + (e[0] - s[0]) * t, s[1] + (e[1] - s[1]) * t]);
        }
        if e_in {
            out.push(e);
        }
    }
    dedup_ring(out, slack)
}

/// Clip `subject` against the convex counter-clockwise polygon `clip`.
pub fn clip_convex(subject: &[Point2], clip: &[Point2]) -> Vec<Point2> {
    let n = clip.len();
    let mut result = subject.to_vec();
    for i in 0..n {
        if result.len() < 3 {
            return Vec::new();
        }
        let a = clip[i];
        let b = clip[(i + 1) % n];
        // Inside is to the left of a -> b: <p, outward normal> <= <a, outward normal>.
        let outward = [b[1] - a[1], a[0] - b[0]];
        result = clip_halfplane(&result, outward, dot2(a, outward));
    }
    if result.len() < 3 {
        Vec::new()
    } else {
        result
    }
}

/// Drop consecutive (cyclically) vertices closer than `tol`.
pub fn dedup_ring(poly: Vec<Point2>, tol: f64) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::with_capacity(poly.len());
    for p in poly {
        if out
            .last()
            .is_none_or(|q| (p[0] - q[0]).hypot(p[1] - q[1]) > tol)
        {
            out.push(p);
        }
    }
    while out.len() > 1 {
        let (f, l) = (out[0], out[out.len() - 1]);
        if (f[0] - l[0]).hypot(f[1] - l[1]) > tol {
            break;
        }
        out.pop();
    }
    out
}

/// Intersection of the lines `<p, n1> = c1` and `<p, n2> = c2`.
pub fn intersect_lines(n1: Point2, c1: f64, n2: Point2, c2: f64) -> Option<Point2> {
    let det = cross2(n1, n2);
    if det.abs() < 1e-15 * dot2(n1, n1).sqrt() * dot2(n2, n2).sqrt() {
        return None;
    }
    Some([
        (c1 * n2[1] - c2 * n1[1]) / det,
        (n1[0] * c2 - n2[0] * c1) / det,
    ])
}

pub fn is_convex_ccw(poly: &[Point2], tol: f64) -> bool {
    let n = poly.len();
    n >= 3
        && (0..n).all(|i| {
            let (a, b, c) = (poly[i], poly[(i + 1) % n], poly[(i + 2) % n]);
            cross2([b[0] - a[0], b[1] - a[1]], [c[0] - b[0], c[1] - b[1]]) >= -tol
        })
}
