use num_integer::Integer;

use crate::error::{LatticeError, Result};
use crate::lattice::{GeneratorMatrix, Rational};

/// Exact ratios `v_{m,l} / v_{m,m}` (`l > m`) of an upper-triangular basis and
/// the per-row common denominators `q_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioTable {
    /// `ratios[m][k]` is the ratio for column `l = m + 1 + k`.
    ratios: Vec<Vec<Rational>>,
    q: Vec<u64>,
}

impl RatioTable {
    /// From the strictly-upper ratios directly, row by row (row `m` has `n - 1 - m` entries).
    pub fn new(ratios: Vec<Vec<Rational>>) -> Result<Self> {
        let n = ratios.len();
        for (m, row) in ratios.iter().enumerate() {
            if row.len() != n - 1 - m {
                return Err(LatticeError::DimensionMismatch {
                    expected: n - 1 - m,
                    got: row.len(),
                });
            }
        }
        let q = ratios
            .iter()
            .map(|row| {
                row.iter().try_fold(1u64, |acc, r| {
                    let d = u64::try_from(r.denominator()).ok()?;
                    (acc / acc.gcd(&d)).checked_mul(d)
                })
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                LatticeError::ProtocolUnsupported("common denominator exceeds 64 bits".into())
            })?;
        Ok(Self { ratios, q })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn ratio(&self, m: usize, l: usize) -> Rational {
        self.ratios[m][l - m - 1]
    }

    pub fn q(&self) -> &[u64] {
        &self.q
    }

    /// Idealized side information: `sum_m ceil(log2 q_m)`.
    pub fn side_info_bits(&self) -> u64 {
        self.q.iter().map(|&q| ceil_log2(q)).sum()
    }

    /// `sum_m log2 q_m`.
    pub fn side_info_bound(&self) -> f64 {
        self.q.iter().map(|&q| (q as f64).log2()).sum()
    }
}

pub fn ceil_log2(q: u64) -> u64 {
    if q <= 1 {
        0
    } else {
        64 - (q - 1).leading_zeros() as u64
    }
}

/// Ratio table from the exact entries of an upper-triangular basis.
///
/// A ratio needs `v_{m,l}` and `v_{m,m}` both exact, except that an
/// off-diagonal zero is exact whatever its source.
pub fn build_ratio_table(v: &GeneratorMatrix) -> Result<RatioTable> {
    if !v.is_upper_triangular() {
        return Err(LatticeError::ProtocolUnsupported(
            "basis must be upper triangular; QR-decompose it first".into(),
        ));
    }
    let n = v.n();
    let ratios = (0..n)
        .map(|m| {
            (m + 1..n)
                .map(|l| {
                    if v.entry(m, l) == 0.0 {
                        return Ok(Rational::zero());
                    }
                    match (v.rational_entry(m, l), v.rational_entry(m, m)) {
                        (Some(num), Some(den)) => num.checked_div(&den),
                        _ => Err(LatticeError::ProtocolUnsupported(format!(
                            "ratio v[{m}][{l}] / v[{m}][{m}] is not given as an exact rational"
                        ))),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RatioTable::new(ratios)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::MatrixSpec;

    fn matrix(json: &str) -> GeneratorMatrix {
        serde_json::from_str::<MatrixSpec>(json)
            .unwrap()
            .to_matrix()
            .unwrap()
    }

    #[test]
    fn hexagonal_table() {
        let v = matrix(r#"{"n":2,"columns":[[1,0],["1/2",0.8660254037844386]]}"#);
        let t = build_ratio_table(&v).unwrap();
        assert_eq!(t.q(), &[2, 1]);
        assert_eq!(t.ratio(0, 1), Rational::new(1, 2).unwrap());
        assert_eq!(t.side_info_bits(), 1);
    }

    #[test]
    fn fine_ratio_table() {
        let v = matrix(r#"{"n":2,"columns":[[1,0],["311/1000","101/100"]]}"#);
        let t = build_ratio_table(&v).unwrap();
        assert_eq!(t.q(), &[1000, 1]);
        assert_eq!(t.side_info_bits(), 10);
        assert!((t.side_info_bound() - 9.965784284662087).abs() < 1e-12);
    }

    #[test]
    fn diagonal_and_reduced_ratios() {
        let t = build_ratio_table(&GeneratorMatrix::identity(3).unwrap()).unwrap();
        assert_eq!(t.q(), &[1, 1, 1]);
        assert_eq!(t.side_info_bits(), 0);
        let v = matrix(r#"{"n":3,"columns":[["3/2",0,0],["1/2","2",0],["9/4","1/3",5]]}"#);
        let t = build_ratio_table(&v).unwrap();
        assert_eq!(t.ratio(0, 1), Rational::new(1, 3).unwrap());
        assert_eq!(t.ratio(0, 2), Rational::new(3, 2).unwrap());
        assert_eq!(t.ratio(1, 2), Rational::new(1, 6).unwrap());
        assert_eq!(t.q(), &[6, 6, 1]);
    }

    #[test]
    fn missing_exact_data() {
        let v = GeneratorMatrix::from_rows(&[vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            build_ratio_table(&v),
            Err(LatticeError::ProtocolUnsupported(_))
        ));
        let v = GeneratorMatrix::from_columns(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            build_ratio_table(&v),
            Err(LatticeError::ProtocolUnsupported(_))
        ));
    }

    #[test]
    fn direct_ratios_and_ceil_log2() {
        let t = RatioTable::new(vec![vec![Rational::new(2, 7).unwrap()], vec![]]).unwrap();
        assert_eq!(t.q(), &[7, 1]);
        assert!(RatioTable::new(vec![vec![], vec![]]).is_err());
        assert_eq!(
            (
                ceil_log2(1),
                ceil_log2(2),
                ceil_log2(3),
                ceil_log2(1024),
                ceil_log2(1025)
            ),
            (0, 1, 2, 10, 11)
        );
    }
}
