//! Measured-versus-predicted checks and the tabular reports they produce.

mod checks;
mod report;

pub use checks::{
    corollary_distance_at, corollary_time, fg_arrival_at, norm_gap_vs_prediction, parse_checks, run_sweep,
    theorem_main_gaps, verify_corollary, verify_fg_arrival, verify_theorem_main, Check, SearchSetup, SweepOptions,
    EXACT_TOL,
};
pub use report::{CheckReport, SweepMetadata, SweepResult, HEADER};
