//! Local influence functions, the threshold cascade, and influence oracles.

mod exact;
mod model;
mod oracle;
mod simulate;

pub use exact::{sigma_exact, sigma_exact_with_budget, EXACT_STATE_BUDGET};
pub use model::CascadeModel;
pub use oracle::{sigma_mc, sigma_mc_sequential, thresholds_for, OracleConfig, OracleMode, SigmaEstimate};
pub use simulate::simulate_cascade;

