#![allow(dead_code)]

use latnp::lattice::{norm, SquareMatrix};
use latnp::{GeneratorMatrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const HEX_H: f64 = 0.866_025_403_784_438_6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn hex() -> GeneratorMatrix {
    GeneratorMatrix::from_rows(&[vec![1.0, 0.5], vec![0.0, HEX_H]]).unwrap()
}

pub fn exact(json: &str) -> GeneratorMatrix {
    serde_json::from_str::<latnp::MatrixSpec>(json)
        .unwrap()
        .to_matrix()
        .unwrap()
}

pub fn hex_exact() -> GeneratorMatrix {
    exact(r#"{"n":2,"columns":[[1,0],["1/2",0.8660254037844386]]}"#)
}

pub fn fine_ratio() -> GeneratorMatrix {
    exact(r#"{"n":2,"columns":[[1,0],["311/1000","101/100"]]}"#)
}

/// Entries uniform in `[-range, range]`, rejecting bases whose orthogonality
/// defect `prod ||v_i|| / |det|` exceeds `max_defect`.
pub fn random_basis(
    rng: &mut ChaCha8Rng,
    n: usize,
    range: f64,
    max_defect: f64,
) -> GeneratorMatrix {
    loop {
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-range..=range)).collect())
            .collect();
        if let Ok(v) = GeneratorMatrix::from_columns(&cols) {
            let defect: f64 = cols.iter().map(|c| norm(c)).product::<f64>() / v.abs_det();
            if defect <= max_defect {
                return v;
            }
        }
    }
}

/// Haar-ish random rotation (possibly with a reflection) from Gram-Schmidt on a random matrix.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> SquareMatrix {
    let v = random_basis(rng, n, 1.0, 1e6);
    latnp::lattice::qr_upper_triangular(&v).unwrap().q
}

/// `(a, b)` uniform over `0 <= a <= 1/2`, `max(sqrt(3)/2, sqrt(1 - a^2)) <= b <= b_max`.
pub fn random_reduced(rng: &mut ChaCha8Rng, b_max: f64) -> (f64, f64) {
    loop {
        let a: f64 = rng.random_range(0.0..=0.5);
        let b: f64 = rng.random_range(HEX_H..=b_max);
        if a * a + b * b >= 1.0 {
            return (a, b);
        }
    }
}

fn small_rational(rng: &mut ChaCha8Rng, positive: bool) -> Rational {
    let q = rng.random_range(1..=12i128);
    let p = if positive {
        rng.random_range(1..=3 * q)
    } else {
        rng.random_range(-3 * q..=3 * q)
    };
    Rational::new(p, q).unwrap()
}

/// Upper-triangular basis with small exact rational entries and positive diagonal.
pub fn random_rational_upper(rng: &mut ChaCha8Rng, n: usize) -> GeneratorMatrix {
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => Rational::zero(),
                    std::cmp::Ordering::Equal => small_rational(rng, true),
                    std::cmp::Ordering::Greater => small_rational(rng, false),
                })
                .collect()
        })
        .collect();
    GeneratorMatrix::from_rational_rows(&rows).unwrap()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
