//! Fusion-center protocol: every node sends its rounded coordinate and a
//! small side-information index, and the fusion center reconstructs the
//! nearest-plane coefficients exactly.

use serde::{Deserialize, Serialize};

use super::table::{build_ratio_table, ceil_log2, RatioTable};
use super::transcript::{Decoded, Message, Model, Payload, Transcript};
use super::varint::varint_bits;
use crate::babai::round_nearest;
use crate::error::{LatticeError, Result};
use crate::lattice::{GeneratorMatrix, Rational};

pub const FUSION_CENTER: usize = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizedMessage {
    /// Node id, `1..=n`.
    pub sender: usize,
    pub b_tilde: i64,
    pub s_of_m: u64,
}

/// Largest `s` in `0..q` with `[z - s/q] = [z]`, by scanning. Test oracle for [`node_encode`].
pub fn s_of_m_scan(z: f64, q: u64) -> Result<u64> {
    let base = round_nearest(z)?;
    let mut best = 0;
    for s in 0..q {
        if round_nearest(z - s as f64 / q as f64)? == base {
            best = s;
        }
    }
    Ok(best)
}

/// Node `sender` observing `x_m`: `b~ = [x_m / v_mm]` and `s(m) = min(q - 1, floor(q frac(z + 1/2)))`.
pub fn node_encode(sender: usize, x_m: f64, v_mm: f64, q_m: u64) -> Result<CentralizedMessage> {
    if q_m == 0 {
        return Err(LatticeError::Domain("q_m must be at least 1".into()));
    }
    if v_mm == 0.0 {
        return Err(LatticeError::Domain("zero diagonal entry".into()));
    }
    let z = x_m / v_mm;
    let b_tilde = round_nearest(z)?;
    // frac(z + 1/2) from the exact frac(z), so the ties-up boundary matches round_nearest.
    let f = z - z.floor();
    let g = if f >= 0.5 { f - 0.5 } else { f + 0.5 };
    let mut s = ((q_m as f64 * g).floor() as u64).min(q_m - 1);
    // q * g can land one step off an exact boundary; settle against the definition.
    let keeps = |s: u64| round_nearest(z - s as f64 / q_m as f64).map(|r| r == b_tilde);
    while s + 1 < q_m && keeps(s + 1)? {
        s += 1;
    }
    while s > 0 && !keeps(s)? {
        s -= 1;
    }
    Ok(CentralizedMessage {
        sender,
        b_tilde,
        s_of_m: s,
    })
}

/// Reconstructs `b` for `m = n..1`: with `sum_{l>m} b_l v_ml / v_mm = I + s/q_m`,
/// `b_m = b~_m - I`, minus one more when `s > s(m)`.
pub fn fusion_decode(messages: &[CentralizedMessage], table: &RatioTable) -> Result<Vec<i64>> {
    let n = table.n();
    if messages.len() != n {
        return Err(LatticeError::Protocol(format!(
            "expected {n} messages, got {}",
            messages.len()
        )));
    }
    let mut by_node: Vec<Option<&CentralizedMessage>> = vec![None; n];
    for msg in messages {
        let slot = msg
            .sender
            .checked_sub(1)
            .and_then(|i| by_node.get_mut(i))
            .ok_or_else(|| LatticeError::Protocol(format!("unknown sender {}", msg.sender)))?;
        if slot.replace(msg).is_some() {
            return Err(LatticeError::Protocol(format!(
                "duplicate message from node {}",
                msg.sender
            )));
        }
    }
    let mut b = vec![0i64; n];
    for m in (0..n).rev() {
        let msg = by_node[m].expect("every slot filled: n distinct senders in 1..=n");
        let q = table.q()[m];
        if msg.s_of_m >= q {
            return Err(LatticeError::Protocol(format!(
                "s({}) = {} not below q = {q}",
                m + 1,
                msg.s_of_m
            )));
        }
        let coupled = (m + 1..n).fold(Rational::zero(), |acc, l| {
            acc + Rational::from_integer(b[l] as i128) * table.ratio(m, l)
        });
        let s = coupled.fract() * Rational::from_integer(q as i128);
        debug_assert!(s.is_integer());
        let carry = i128::from(s.numerator() > msg.s_of_m as i128);
        let bm = msg.b_tilde as i128 - coupled.floor() - carry;
        b[m] =
            i64::try_from(bm).map_err(|_| LatticeError::Protocol("coefficient overflow".into()))?;
    }
    Ok(b)
}

/// One centralized run on an upper-triangular basis with exact ratios.
pub fn run_centralized(v: &GeneratorMatrix, x: &[f64]) -> Result<(Vec<i64>, Transcript)> {
    let table = build_ratio_table(v)?;
    run_centralized_with_table(v, &table, x)
}

/// [`run_centralized`] with a ratio table supplied by the caller.
pub fn run_centralized_with_table(
    v: &GeneratorMatrix,
    table: &RatioTable,
    x: &[f64],
) -> Result<(Vec<i64>, Transcript)> {
    let n = v.n();
    if x.len() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if table.n() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            got: table.n(),
        });
    }
    if !v.is_upper_triangular() {
        return Err(LatticeError::ProtocolUnsupported(
            "basis must be upper triangular".into(),
        ));
    }
    let sent = (0..n)
        .map(|m| node_encode(m + 1, x[m], v.entry(m, m), table.q()[m]))
        .collect::<Result<Vec<_>>>()?;
    let log = sent
        .iter()
        .map(|msg| Message {
            from: msg.sender,
            to: vec![FUSION_CENTER],
            payload: Payload::Centralized {
                b_tilde: msg.b_tilde,
                s: msg.s_of_m,
            },
            bits: varint_bits(msg.b_tilde) + ceil_log2(table.q()[msg.sender - 1]),
        })
        .collect();
    let b = fusion_decode(&sent, table)?;
    let decoded = vec![Decoded {
        site: FUSION_CENTER,
        b: b.clone(),
    }];
    Ok((
        b,
        Transcript::new(Model::Centralized, log, table.side_info_bits(), decoded),
    ))
}
