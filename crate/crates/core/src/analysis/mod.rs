//! Curve measurements: edge isotropy, straight runs, the Z-curve baseline,
//! and dimension-reduction displacement profiles.

mod dimred;
mod tally;
mod zcurve;

pub use dimred::{
    default_domain_levels, dimred_profile, format_significant, loglog_slope, DimredConfig, DimredCurve,
    DimredSeries, GapMean, DEFAULT_SEED,
};
pub use tally::{edge_tally, run_histogram, RunHistogram, Tally};
pub use zcurve::{z_decode, z_encode};
