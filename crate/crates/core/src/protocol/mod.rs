//! Distributed computation of the nearest-plane point.
//!
//! Node `m` observes coordinate `x_m` of the target in the triangular frame
//! of the basis. Two models are simulated with per-message bit accounting:
//! a fusion center that reconstructs the coefficients from one message per
//! node ([`run_centralized`]), and a single pass of broadcasts from node `n`
//! down to node 1 ([`run_interactive`]). Concrete payloads are varints;
//! idealized costs come from the rate formulas in this module.

mod centralized;
mod interactive;
mod rates;
mod scenario;
mod table;
mod transcript;
pub mod varint;

pub use centralized::{
    fusion_decode, node_encode, run_centralized, run_centralized_with_table, s_of_m_scan,
    CentralizedMessage, FUSION_CENTER,
};
pub use interactive::run_interactive;
pub use rates::{
    centralized_rate_bound, empirical_conditional_entropy, empirical_conditional_entropy_with,
    empirical_entropy, empirical_entropy_with, interactive_rate, EntropyEstimator, SourceModel,
};
pub use scenario::{run_scenario, Scenario, ScenarioReport};
pub use table::{build_ratio_table, ceil_log2, RatioTable};
pub use transcript::{Decoded, Message, Model, Payload, Transcript};
pub use varint::varint_bits;
