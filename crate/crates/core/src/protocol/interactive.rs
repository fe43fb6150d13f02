//! Sequential broadcast: node `i = n..1` sends
//! `U_i = [(x_i - sum_{j>i} alpha v_ij U_j) / (alpha v_ii)]` to all other nodes.

use super::transcript::{Decoded, Message, Model, Payload, Transcript};
use super::varint::varint_bits;
use crate::babai::round_nearest;
use crate::error::{LatticeError, Result};
use crate::lattice::GeneratorMatrix;

pub fn run_interactive(
    v: &GeneratorMatrix,
    x: &[f64],
    alpha: f64,
) -> Result<(Vec<i64>, Transcript)> {
    let n = v.n();
    if x.len() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if !v.is_upper_triangular() {
        return Err(LatticeError::ProtocolUnsupported(
            "basis must be upper triangular; QR-decompose it first".into(),
        ));
    }
    // Same rounding of alpha * v_ij as the nearest-plane recursion on alpha V.
    let av = v.scaled(alpha)?;

    // known[node][j]: U_j as seen by node `node`.
    let mut known: Vec<Vec<Option<i64>>> = vec![vec![None; n]; n];
    let mut log = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let coupled: f64 = (i + 1..n)
            .map(|j| {
                let u = known[i][j].expect("U_j broadcast before node i speaks");
                av.entry(i, j) * u as f64
            })
            .sum();
        let u = round_nearest((x[i] - coupled) / av.entry(i, i))?;
        known[i][i] = Some(u);
        let receivers: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        for &k in &receivers {
            known[k][i] = Some(u);
        }
        log.push(Message {
            from: i + 1,
            to: receivers.iter().map(|k| k + 1).collect(),
            payload: Payload::Broadcast { u },
            bits: receivers.len() as u64 * varint_bits(u),
        });
    }
    let decoded: Vec<Decoded> = known
        .into_iter()
        .enumerate()
        .map(|(k, row)| Decoded {
            site: k + 1,
            b: row
                .into_iter()
                .map(|u| u.expect("all broadcasts received"))
                .collect(),
        })
        .collect();
    let b = decoded[0].b.clone();
    Ok((b, Transcript::new(Model::Interactive, log, 0, decoded)))
}
