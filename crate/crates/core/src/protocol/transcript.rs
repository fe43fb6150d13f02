use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Centralized,
    Interactive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Centralized { b_tilde: i64, s: u64 },
    Broadcast { u: i64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Message {
    pub from: usize,
    pub to: Vec<usize>,
    pub payload: Payload,
    /// Concrete encoded size, summed over all receivers.
    pub bits: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decoded {
    pub site: usize,
    pub b: Vec<i64>,
}

/// Record of one protocol run. Site 0 is the fusion center; nodes are `1..=n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub model: Model,
    pub messages: Vec<Message>,
    pub total_bits: u64,
    /// Idealized `sum ceil(log2 q_m)` spent on side information (centralized only).
    pub side_info_bits: u64,
    pub decoded: Vec<Decoded>,
    /// Filled in when the source model is known.
    pub analytic_rate_bound: Option<f64>,
}

impl Transcript {
    pub(crate) fn new(
        model: Model,
        messages: Vec<Message>,
        side_info_bits: u64,
        decoded: Vec<Decoded>,
    ) -> Self {
        let total_bits = messages.iter().map(|m| m.bits).sum();
        Self {
            model,
            messages,
            total_bits,
            side_info_bits,
            decoded,
            analytic_rate_bound: None,
        }
    }

    /// The coefficients held by the first decoding site.
    pub fn b(&self) -> &[i64] {
        &self.decoded[0].b
    }

    pub fn sites_agree(&self) -> bool {
        self.decoded.windows(2).all(|w| w[0].b == w[1].b)
    }
}
