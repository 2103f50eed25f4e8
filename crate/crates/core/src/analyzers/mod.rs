//! Falsification and certification tools: exhaustive shattering search,
//! compression map search, counting certificates against compression
//! schemes, range witnesses, the adversarial-measure experiment and
//! sample-size bounds.

pub mod adversarial;
pub mod bounds;
pub mod compression;
pub mod shatter;
pub mod witness;

pub use adversarial::{adversarial_pac_experiment, AdversarialReport};
pub use bounds::{
    compression_bound, compression_bound_beta, compression_min_n, vc_sample_bound, BoundQuery,
    CompressionBound,
};
pub use compression::{
    binomial, certify_no_compression_scheme, compression_map_search, find_compression_subtuple,
    subtuple_count, CompressionMode, CompressionReport, MapSearchEntry,
};
pub use shatter::{
    check_shattered, dvc_lower_bound, DvcReport, ShatterCheckReport, ShatterCounterexample,
    ShatterOptions, ShatterVerdict,
};
pub use witness::{
    range_shattered_by, realized_patterns, verify_range_shattering_witness, RangeWitnessReport,
};

/// Default cap on the number of tuples an exhaustive search may evaluate.
pub const DEFAULT_BUDGET: u64 = 20_000_000;
