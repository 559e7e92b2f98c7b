//! Motzkin paths by u-segment and h-segment statistics: enumeration,
//! closed forms, and named weight specializations.

mod closed;
pub mod path;
pub mod special;
mod weights;

pub use closed::{count_by_type, segment_types, v_coefficient, weighted_sum_by_segments, weighted_sum_closed, SegmentType};
pub use path::{
    enumerate_paths, enumerate_paths_with_bound, profile_histogram, runs_of, segment_profile, weighted_sum_bruteforce,
    weighted_sum_bruteforce_by_segments, MotzkinPath, Paths, SegmentProfile, Step, DEFAULT_BOUND,
};
pub use weights::{named_weights, power_series_weights, WeightKind};
