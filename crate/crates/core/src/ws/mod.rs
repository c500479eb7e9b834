//! Weak symmetry: explicit witnesses, generic search, obstructions and verdicts.

pub mod catalog;
pub mod obstruction;
pub mod search;
pub mod verdict;
pub mod witness;

pub use obstruction::{ObstructionConfig, ObstructionReport};
pub use search::{generic_witness_search, penalty, penalty_gradient, FailureRecord, SearchConfig, SearchOutcome};
pub use verdict::{exit_code, ws_sample_verdict, Verdict, VerdictConfig, WsReport};
pub use witness::{verify_witness, Residuals, Witness};
