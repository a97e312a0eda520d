//! Dynamic time warping with simplification of the optimal warping path into
//! a few uniform subsequence mappings, per-segment shift/compression metrics,
//! and SVG rendering of the result.

pub mod dtw;
pub mod error;
pub mod fixtures;
pub mod metrics;
pub mod oracle;
pub mod path;
pub mod segmenter;
pub mod series;
pub mod viz;

pub use dtw::{accumulate, backtrack, dtw, AccumulatedCostMatrix, CostMatrix, DtwResult};
pub use error::{DswError, Result};
pub use metrics::{
    amplitude_band, compression, report, shift, shift_with, AmplitudeBand, Report, SegmentReport, ShiftDefinition,
};
pub use path::{
    linear_path_cost, optimal_path_cost, rasterize_linear, rasterize_simplified, validate_path, PathSegment,
    PathViolation, Point, ViolationKind, WarpingPath,
};
pub use segmenter::{
    derive_tolerances, farthest_point, merge_phase, simplify, simplify_path, simplify_with, split_phase,
    tolerance_check, DswResult, MergeCriterion, Simplification, SimplifiedPath, ToleranceParams, ToleranceSpec,
};
pub use series::{CostFunction, Series};
pub use viz::{
    render_matrix_paths, render_point_to_point, render_segmented, ColorRole, Overlay, Palette, RenderSpec, SeriesLayout,
};
