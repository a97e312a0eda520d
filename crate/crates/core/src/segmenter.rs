//! Simplification of a warping path into uniform subsequence mappings.
//!
//! The split phase starts from a single straight segment over the whole path
//! and recursively splits segments whose straight-line cost exceeds the
//! tolerance, at the path point farthest from the line. The merge phase then
//! revisits adjacent segment pairs, shortest first, and removes key points
//! whose removal keeps the merged segment within tolerance.
//!
//! Tolerances are given in distance space (`gamma`) and mapped to cost space
//! (`delta`) so that the simplified distance `d~` satisfies
//! `d~ <= d° * (1 + gamma_rel) + gamma_abs` for `phi(z) = z^lambda`,
//! `lambda >= 1`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::dtw::{dtw, CostMatrix, DtwResult};
use crate::error::{DswError, Result};
use crate::path::{line_cost, rasterize_simplified, segment_sum, PathSegment, Point, WarpingPath};
use crate::series::{CostFunction, Series};

/// Absolute slack on every tolerance comparison. Rasterized and path sums
/// accumulate rounding differently.
pub const CRITERION_SLACK: f64 = 1e-12;

/// User-facing tolerances in distance units (`gamma_abs`) and as a
/// proportion of the DTW distance (`gamma_rel`).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ToleranceSpec {
    pub gamma_abs: f64,
    pub gamma_rel: f64,
}

impl ToleranceSpec {
    pub fn new(gamma_abs: f64, gamma_rel: f64) -> Result<Self> {
        check_non_negative("gamma_abs", gamma_abs)?;
        check_non_negative("gamma_rel", gamma_rel)?;
        Ok(Self { gamma_abs, gamma_rel })
    }
}

fn check_non_negative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(DswError::InvalidParameter {
            name,
            value,
            reason: "must be finite and >= 0",
        })
    }
}

/// Cost-space tolerances for the per-segment criterion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ToleranceParams {
    pub delta_abs: f64,
    pub delta_rel: f64,
    /// Length `L` of the path being simplified.
    pub path_length: usize,
    #[serde(skip)]
    inverted: bool,
}

impl ToleranceParams {
    pub fn new(delta_abs: f64, delta_rel: f64, path_length: usize) -> Result<Self> {
        check_non_negative("delta_abs", delta_abs)?;
        check_non_negative("delta_rel", delta_rel)?;
        if path_length == 0 {
            return Err(DswError::InvalidParameter {
                name: "path_length",
                value: 0.0,
                reason: "must be >= 1",
            });
        }
        Ok(Self {
            delta_abs,
            delta_rel,
            path_length,
            inverted: false,
        })
    }

    /// Flips the acceptance test. Only for exercising verification harnesses.
    #[doc(hidden)]
    #[must_use]
    pub fn with_inverted_criterion(mut self) -> Self {
        self.inverted = true;
        self
    }
}

/// Maps distance tolerances to cost tolerances:
/// `delta_abs = phi(d° + gamma_abs) - phi(d°)` and
/// `delta_rel = phi(d° * gamma_rel) / phi(d°)`. When `d° = 0` the relative
/// margin is zero.
pub fn derive_tolerances(
    spec: &ToleranceSpec,
    d_opt: f64,
    f: &CostFunction,
    path_length: usize,
) -> Result<ToleranceParams> {
    check_non_negative("gamma_abs", spec.gamma_abs)?;
    check_non_negative("gamma_rel", spec.gamma_rel)?;
    check_non_negative("d_opt", d_opt)?;
    let phi_opt = f.distance_to_cost(d_opt)?;
    let delta_abs = (f.distance_to_cost(d_opt + spec.gamma_abs)? - phi_opt).max(0.0);
    let delta_rel = if phi_opt > 0.0 {
        f.distance_to_cost(d_opt * spec.gamma_rel)? / phi_opt
    } else {
        0.0
    };
    ToleranceParams::new(delta_abs, delta_rel, path_length)
}

/// `c' <= max(c + (l / L) * delta_abs, c * (1 + delta_rel))`.
pub fn tolerance_check(linear_cost: f64, optimal_cost: f64, length: usize, params: &ToleranceParams) -> bool {
    let abs_bound = optimal_cost + (length as f64 / params.path_length as f64) * params.delta_abs;
    let rel_bound = optimal_cost * (1.0 + params.delta_rel);
    let ok = linear_cost <= abs_bound.max(rel_bound) + CRITERION_SLACK;
    ok != params.inverted
}

/// Interior path position `s` with `b < s < e` whose point lies farthest
/// from the line through `P(b)` and `P(e)`. Ties go to the smallest `s`.
pub fn farthest_point(path: &WarpingPath, b: usize, e: usize) -> Result<usize> {
    if b < 1 || e > path.len() {
        return Err(DswError::IndexOutOfRange {
            index: if b < 1 { b } else { e },
            len: path.len(),
        });
    }
    if e < b + 2 {
        return Err(DswError::NoInterior { begin: b, end: e });
    }
    Ok(farthest_unchecked(path.points(), b, e))
}

fn farthest_unchecked(points: &[Point], b: usize, e: usize) -> usize {
    let p0 = points[b - 1];
    let p1 = points[e - 1];
    let (dx, dy) = (p1.i as i64 - p0.i as i64, p1.j as i64 - p0.j as i64);
    // The perpendicular distance is |cross| / |p1 - p0|; the denominator is
    // shared, so compare the integer cross products.
    let mut best = (b + 1, -1i64);
    for s in b + 1..e {
        let q = points[s - 1];
        let cross = (dx * (q.j as i64 - p0.j as i64) - dy * (q.i as i64 - p0.i as i64)).abs();
        if cross > best.1 {
            best = (s, cross);
        }
    }
    best.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SegmentWarning {
    /// A single-step segment failed the criterion. This cannot happen on an
    /// optimal path; the segment is kept as is.
    AcceptedWithoutInterior { begin: usize, end: usize },
}

/// Key points retained from a path, with the segment records between
/// consecutive key points.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplifiedPath {
    indices: Vec<usize>,
    key_points: Vec<Point>,
    segments: Vec<PathSegment>,
    warnings: Vec<SegmentWarning>,
}

impl SimplifiedPath {
    /// Builds the chain of key points `P(k)` for the given strictly
    /// increasing path positions, which must start at 1 and end at `L`.
    pub fn from_indices(path: &WarpingPath, cost: &CostMatrix, indices: Vec<usize>) -> Result<Self> {
        if indices.len() < 2 {
            return Err(DswError::TooFewKeyPoints);
        }
        if indices[0] != 1 || *indices.last().unwrap() != path.len() {
            return Err(DswError::Inconsistent(format!(
                "key point positions must run from 1 to {}",
                path.len()
            )));
        }
        if let Some(w) = indices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(DswError::UnorderedSegment { begin: w[0], end: w[1] });
        }
        if path.shape() != (cost.rows(), cost.cols()) {
            return Err(DswError::ShapeMismatch {
                expected_rows: path.shape().0,
                expected_cols: path.shape().1,
                rows: cost.rows(),
                cols: cost.cols(),
            });
        }
        Ok(Self::build(path, cost, indices, Vec::new()))
    }

    fn build(path: &WarpingPath, cost: &CostMatrix, indices: Vec<usize>, warnings: Vec<SegmentWarning>) -> Self {
        let key_points: Vec<Point> = indices.iter().map(|&k| path.at(k)).collect();
        let segments = indices
            .windows(2)
            .map(|w| segment_record(path, cost, w[0], w[1]))
            .collect();
        Self {
            indices,
            key_points,
            segments,
            warnings,
        }
    }

    /// Path positions of the key points, 1-based.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn key_points(&self) -> &[Point] {
        &self.key_points
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    pub fn warnings(&self) -> &[SegmentWarning] {
        &self.warnings
    }

    /// The full rasterized path `P~f`.
    pub fn rasterize(&self) -> WarpingPath {
        if self.segments.is_empty() {
            return WarpingPath::from_valid(vec![self.key_points[0]]);
        }
        rasterize_simplified(&self.key_points).expect("key points come from a valid path")
    }

    /// `c~ = sum c'_i + C(1, 1)`.
    pub fn total_cost(&self, cost: &CostMatrix) -> f64 {
        self.segments.iter().map(|s| s.linear_cost).sum::<f64>() + cost.get(1, 1)
    }
}

fn segment_record(path: &WarpingPath, cost: &CostMatrix, b: usize, e: usize) -> PathSegment {
    PathSegment {
        begin_index: b,
        end_index: e,
        begin: path.at(b),
        end: path.at(e),
        optimal_cost: segment_sum(path, cost, b, e),
        linear_cost: line_cost(cost, path.at(b), path.at(e)),
    }
}

fn check_inputs(path: &WarpingPath, cost: &CostMatrix, params: &ToleranceParams) -> Result<()> {
    if path.shape() != (cost.rows(), cost.cols()) {
        let (n, m) = path.shape();
        return Err(DswError::ShapeMismatch {
            expected_rows: n,
            expected_cols: m,
            rows: cost.rows(),
            cols: cost.cols(),
        });
    }
    if params.path_length != path.len() {
        return Err(DswError::Inconsistent(format!(
            "tolerances were derived for path length {}, path has {}",
            params.path_length,
            path.len()
        )));
    }
    Ok(())
}

/// Top-down splitting. Every emitted segment passes [`tolerance_check`]
/// unless it is a single step (see [`SegmentWarning`]).
pub fn split_phase(path: &WarpingPath, cost: &CostMatrix, params: &ToleranceParams) -> Result<SimplifiedPath> {
    check_inputs(path, cost, params)?;
    let len = path.len();
    if len == 1 {
        // A 1x1 grid: a single point, kept as a degenerate chain.
        return Ok(SimplifiedPath {
            indices: vec![1, 1],
            key_points: vec![path.at(1); 2],
            segments: Vec::new(),
            warnings: Vec::new(),
        });
    }
    let mut keys = BTreeSet::new();
    let mut warnings = Vec::new();
    let mut work = vec![(1, len)];
    while let Some((b, e)) = work.pop() {
        let linear = line_cost(cost, path.at(b), path.at(e));
        let optimal = segment_sum(path, cost, b, e);
        if tolerance_check(linear, optimal, e - b, params) {
            keys.insert(b);
            keys.insert(e);
        } else if e - b < 2 {
            warnings.push(SegmentWarning::AcceptedWithoutInterior { begin: b, end: e });
            keys.insert(b);
            keys.insert(e);
        } else {
            let s = farthest_unchecked(path.points(), b, e);
            work.push((s, e));
            work.push((b, s));
        }
    }
    Ok(SimplifiedPath::build(path, cost, keys.into_iter().collect(), warnings))
}

/// How the merge phase decides whether two adjacent segments may merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MergeCriterion {
    /// The merged segment must pass [`tolerance_check`].
    #[default]
    Local,
    /// The whole simplified path must stay within
    /// `c° * (1 + delta_rel) + delta_abs` after the merge.
    Global,
}

/// Shortest-first merging of adjacent segments. Never adds key points.
pub fn merge_phase(
    path: &WarpingPath,
    cost: &CostMatrix,
    simplified: &SimplifiedPath,
    params: &ToleranceParams,
    criterion: MergeCriterion,
) -> Result<SimplifiedPath> {
    check_inputs(path, cost, params)?;
    if simplified.segments.is_empty() {
        return Ok(simplified.clone());
    }
    let len = path.len();
    let mut keys: BTreeSet<usize> = simplified.indices.iter().copied().collect();
    // Linear cost of each current segment, keyed by its first position.
    let mut linear: BTreeMap<usize, f64> = simplified
        .segments
        .iter()
        .map(|s| (s.begin_index, s.linear_cost))
        .collect();
    let mut total = linear.values().sum::<f64>() + cost.get(1, 1);
    let budget = {
        let optimal = path.cost(cost);
        optimal * (1.0 + params.delta_rel) + params.delta_abs
    };

    let mut queue = BinaryHeap::new();
    for w in simplified.indices.windows(3) {
        let (b, m, e) = (w[0], w[1], w[2]);
        queue.push(Reverse(((m - b).min(e - m), b, m, e)));
    }

    while let Some(Reverse((_, b, m, e))) = queue.pop() {
        if !(keys.contains(&b) && keys.contains(&m) && keys.contains(&e)) {
            continue;
        }
        let merged_linear = line_cost(cost, path.at(b), path.at(e));
        let accept = match criterion {
            MergeCriterion::Local => {
                let optimal = segment_sum(path, cost, b, e);
                tolerance_check(merged_linear, optimal, e - b, params)
            }
            MergeCriterion::Global => {
                let candidate = total - linear[&b] - linear[&m] + merged_linear;
                (candidate <= budget + CRITERION_SLACK) != params.inverted
            }
        };
        if !accept {
            continue;
        }
        keys.remove(&m);
        total = total - linear[&b] - linear[&m] + merged_linear;
        linear.remove(&m);
        linear.insert(b, merged_linear);
        if b > 1 {
            let p = *keys.range(..b).next_back().expect("position 1 is always a key");
            queue.push(Reverse(((b - p).min(e - b), p, b, e)));
        }
        if e < len {
            let n = *keys.range(e + 1..).next().expect("position L is always a key");
            queue.push(Reverse(((e - b).min(n - e), b, e, n)));
        }
    }
    Ok(SimplifiedPath::build(
        path,
        cost,
        keys.into_iter().collect(),
        simplified.warnings.clone(),
    ))
}

/// Result of simplifying one path.
#[derive(Debug, Clone)]
pub struct Simplification {
    pub tolerance: ToleranceSpec,
    pub params: ToleranceParams,
    pub criterion: MergeCriterion,
    /// Output of the split phase.
    pub split: SimplifiedPath,
    /// Output of the merge phase.
    pub simplified: SimplifiedPath,
    /// Cost `c°` of the path that was simplified.
    pub reference_cost: f64,
    /// Distance `d°` of the path that was simplified.
    pub reference_distance: f64,
    /// `c~`, including the start cell once.
    pub cost: f64,
    /// `d~ = phi^-1(c~)`.
    pub distance: f64,
}

impl Simplification {
    /// `d° * (1 + gamma_rel) + gamma_abs`.
    pub fn distance_bound(&self) -> f64 {
        self.reference_distance * (1.0 + self.tolerance.gamma_rel) + self.tolerance.gamma_abs
    }
}

/// Simplifies an arbitrary valid path over `cost`. Its own cost plays the
/// role of `c°`.
pub fn simplify_path(
    path: &WarpingPath,
    cost: &CostMatrix,
    f: &CostFunction,
    spec: &ToleranceSpec,
    criterion: MergeCriterion,
) -> Result<Simplification> {
    let reference_cost = path.cost(cost);
    let reference_distance = f.inverse_phi(reference_cost);
    let params = derive_tolerances(spec, reference_distance, f, path.len())?;
    simplify_with_params(path, cost, f, spec, params, criterion)
}

#[doc(hidden)]
pub fn simplify_with_params(
    path: &WarpingPath,
    cost: &CostMatrix,
    f: &CostFunction,
    spec: &ToleranceSpec,
    params: ToleranceParams,
    criterion: MergeCriterion,
) -> Result<Simplification> {
    let reference_cost = path.cost(cost);
    let split = split_phase(path, cost, &params)?;
    let simplified = merge_phase(path, cost, &split, &params, criterion)?;
    let total = simplified.total_cost(cost);
    Ok(Simplification {
        tolerance: *spec,
        params,
        criterion,
        split,
        simplified,
        reference_cost,
        reference_distance: f.inverse_phi(reference_cost),
        cost: total,
        distance: f.inverse_phi(total),
    })
}

/// DTW followed by the simplification of its optimal path.
#[derive(Debug, Clone)]
pub struct DswResult {
    pub dtw: DtwResult,
    pub simplification: Simplification,
}

impl DswResult {
    pub fn simplified(&self) -> &SimplifiedPath {
        &self.simplification.simplified
    }

    /// `d~`.
    pub fn distance(&self) -> f64 {
        self.simplification.distance
    }
}

/// Runs DTW, derives tolerances, then the split and (local) merge phases.
pub fn simplify(s1: &Series, s2: &Series, f: &CostFunction, spec: &ToleranceSpec) -> Result<DswResult> {
    simplify_with(s1, s2, f, spec, MergeCriterion::Local)
}

pub fn simplify_with(
    s1: &Series,
    s2: &Series,
    f: &CostFunction,
    spec: &ToleranceSpec,
    criterion: MergeCriterion,
) -> Result<DswResult> {
    let dtw = dtw(s1, s2, f)?;
    let simplification = simplify_path(&dtw.path, &dtw.cost_matrix, f, spec, criterion)?;
    Ok(DswResult { dtw, simplification })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn params(delta_abs: f64, delta_rel: f64, len: usize) -> ToleranceParams {
        ToleranceParams::new(delta_abs, delta_rel, len).unwrap()
    }

    #[test]
    fn derive_tolerances_examples() {
        let sq = CostFunction::default();
        let p = derive_tolerances(&ToleranceSpec::new(1.0, 0.0).unwrap(), 2.0, &sq, 10).unwrap();
        assert_eq!(p.delta_abs, 5.0);
        assert_eq!(p.delta_rel, 0.0);
        let p = derive_tolerances(&ToleranceSpec::new(0.0, 0.5).unwrap(), 2.0, &sq, 10).unwrap();
        assert_eq!(p.delta_abs, 0.0);
        assert_eq!(p.delta_rel, 0.25);
        let lin = CostFunction::new(1.0, 1.0).unwrap();
        let p = derive_tolerances(&ToleranceSpec::new(0.3, 0.07).unwrap(), 4.5, &lin, 10).unwrap();
        assert!((p.delta_abs - 0.3).abs() < 1e-15);
        assert!((p.delta_rel - 0.07).abs() < 1e-15);
    }

    #[test]
    fn derive_tolerances_with_zero_distance() {
        let sq = CostFunction::default();
        let p = derive_tolerances(&ToleranceSpec::new(0.5, 0.2).unwrap(), 0.0, &sq, 4).unwrap();
        assert_eq!(p.delta_rel, 0.0);
        assert_eq!(p.delta_abs, 0.25);
    }

    #[test]
    fn derive_tolerances_rejects_negative_input() {
        let sq = CostFunction::default();
        assert!(ToleranceSpec::new(-1.0, 0.0).is_err());
        let bad = ToleranceSpec {
            gamma_abs: 0.0,
            gamma_rel: -0.1,
        };
        assert!(derive_tolerances(&bad, 1.0, &sq, 3).is_err());
        assert!(derive_tolerances(&ToleranceSpec::default(), -1.0, &sq, 3).is_err());
        assert!(derive_tolerances(&ToleranceSpec::default(), 1.0, &sq, 0).is_err());
    }

    #[test]
    fn tolerance_check_examples() {
        let p = params(0.3, 0.2, 10);
        assert!(tolerance_check(4.0, 4.0, 3, &p));
        for rel in [0.0, 0.5, 10.0] {
            assert!(!tolerance_check(0.01, 0.0, 5, &params(0.0, rel, 10)));
        }
        let p = params(0.0, 0.1, 10);
        assert!(tolerance_check(11.0, 10.0, 4, &p));
        assert!(!tolerance_check(11.01, 10.0, 4, &p));
    }

    #[test]
    fn tolerance_check_scales_absolute_margin_by_length() {
        let p = params(1.0, 0.0, 10);
        assert!(tolerance_check(5.5, 5.0, 5, &p));
        assert!(!tolerance_check(5.5, 5.0, 4, &p));
    }

    #[test]
    fn farthest_point_examples() {
        let straight = WarpingPath::from_pairs([(1, 1), (2, 2), (3, 3), (4, 4)]).unwrap();
        assert_eq!(farthest_point(&straight, 1, 4).unwrap(), 2);
        let corner = WarpingPath::from_pairs([(1, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(farthest_point(&corner, 1, 3).unwrap(), 2);
        assert_eq!(
            farthest_point(&corner, 1, 2),
            Err(DswError::NoInterior { begin: 1, end: 2 })
        );
        assert!(farthest_point(&corner, 1, 4).is_err());
    }

    #[test]
    fn split_identical_series_is_one_segment() {
        let s = Series::new(vec![0.0, 1.0, 3.0, 2.0, 2.0, -1.0]).unwrap();
        let r = simplify(&s, &s, &CostFunction::default(), &ToleranceSpec::default()).unwrap();
        assert_eq!(r.simplified().key_points(), &[Point::new(1, 1), Point::new(6, 6)]);
        assert_eq!(r.distance(), 0.0);
    }

    /// Cost 0 along the given polyline's rasterization, 1 elsewhere.
    fn corridor(corners: &[Point]) -> (CostMatrix, WarpingPath) {
        let path = rasterize_simplified(corners).unwrap();
        let (n, m) = path.shape();
        let mut rows = vec![vec![1.0; m]; n];
        for q in path.points() {
            rows[q.i - 1][q.j - 1] = 0.0;
        }
        (CostMatrix::from_rows(rows).unwrap(), path)
    }

    #[test]
    fn split_recovers_corners_of_piecewise_linear_path() {
        // Diagonal, horizontal and vertical pieces rasterize onto their exact
        // lines, so the farthest point of any span is one of the corners.
        let corners = [
            Point::new(1, 1),
            Point::new(6, 6),
            Point::new(6, 12),
            Point::new(14, 12),
            Point::new(20, 18),
            Point::new(20, 25),
            Point::new(27, 32),
        ];
        let (cost, path) = corridor(&corners);
        let p = params(0.0, 0.0, path.len());
        let split = split_phase(&path, &cost, &p).unwrap();
        assert_eq!(split.key_points(), &corners);
    }

    #[test]
    fn merge_leaves_two_key_points_alone() {
        let s = Series::new(vec![0.0, 1.0, 2.0]).unwrap();
        let r = crate::dtw::dtw(&s, &s, &CostFunction::default()).unwrap();
        let p = params(0.0, 0.0, r.path.len());
        let split = split_phase(&r.path, &r.cost_matrix, &p).unwrap();
        let merged = merge_phase(&r.path, &r.cost_matrix, &split, &p, MergeCriterion::Local).unwrap();
        assert_eq!(merged, split);
    }

    #[test]
    fn merge_collapses_unneeded_chain() {
        // Any chain over a straight zero-cost path merges down to its ends.
        let s = Series::new((0..12).map(|k| (k as f64).sin()).collect()).unwrap();
        let r = crate::dtw::dtw(&s, &s, &CostFunction::default()).unwrap();
        let p = params(0.0, 0.0, r.path.len());
        let chain = SimplifiedPath::from_indices(&r.path, &r.cost_matrix, vec![1, 3, 4, 8, 11, 12]).unwrap();
        for criterion in [MergeCriterion::Local, MergeCriterion::Global] {
            let merged = merge_phase(&r.path, &r.cost_matrix, &chain, &p, criterion).unwrap();
            assert_eq!(merged.indices(), &[1, 12]);
        }
    }

    #[test]
    fn from_indices_validates() {
        let s = Series::new(vec![0.0, 1.0, 2.0]).unwrap();
        let r = crate::dtw::dtw(&s, &s, &CostFunction::default()).unwrap();
        let (path, c) = (&r.path, &r.cost_matrix);
        assert!(SimplifiedPath::from_indices(path, c, vec![1]).is_err());
        assert!(SimplifiedPath::from_indices(path, c, vec![2, 3]).is_err());
        assert!(SimplifiedPath::from_indices(path, c, vec![1, 2, 2, 3]).is_err());
        assert!(SimplifiedPath::from_indices(path, c, vec![1, 2, 3]).is_ok());
    }

    #[test]
    fn single_point_grid() {
        let s = Series::new(vec![1.0]).unwrap();
        let t = Series::new(vec![3.0]).unwrap();
        let r = simplify(&s, &t, &CostFunction::default(), &ToleranceSpec::default()).unwrap();
        assert_eq!(r.distance(), 2.0);
        assert_eq!(r.simplified().segment_count(), 0);
    }

    #[test]
    fn suboptimal_single_step_is_kept_with_warning() {
        // Path goes through the expensive corner cell instead of the diagonal.
        let cost = CostMatrix::from_rows(vec![vec![0.0, 5.0], vec![0.0, 0.0]]).unwrap();
        let path = WarpingPath::from_pairs([(1, 1), (1, 2), (2, 2)]).unwrap();
        let p = params(0.0, 0.0, 3).with_inverted_criterion();
        let split = split_phase(&path, &cost, &p).unwrap();
        assert!(!split.warnings().is_empty());
    }

    #[test]
    fn inverted_criterion_breaks_bound() {
        let s1 = Series::new(vec![0.0, 0.0, 1.0, 3.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let s2 = Series::new(vec![0.0, 1.0, 3.0, 1.0, 0.0, 0.0, 0.0, 0.5]).unwrap();
        let f = CostFunction::default();
        let r = crate::dtw::dtw(&s1, &s2, &f).unwrap();
        let spec = ToleranceSpec::default();
        let p = derive_tolerances(&spec, r.distance, &f, r.path.len())
            .unwrap()
            .with_inverted_criterion();
        let out = simplify_with_params(&r.path, &r.cost_matrix, &f, &spec, p, MergeCriterion::Local).unwrap();
        assert!(out.distance > out.distance_bound() + 1e-9);
    }

    fn arb_pair() -> impl Strategy<Value = (Series, Series)> {
        let s = || prop::collection::vec(-3.0f64..3.0, 2..40).prop_map(|v| Series::new(v).unwrap());
        (s(), s())
    }

    fn arb_spec() -> impl Strategy<Value = ToleranceSpec> {
        (
            prop::sample::select(vec![0.0, 0.05, 0.2, 1.0]),
            prop::sample::select(vec![0.0, 0.05, 0.2]),
        )
            .prop_map(|(a, r)| ToleranceSpec::new(a, r).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn output_respects_distance_bound(
            (s1, s2) in arb_pair(),
            spec in arb_spec(),
            lambda in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0]),
            global in any::<bool>(),
        ) {
            let f = CostFunction::new(lambda, 2.0).unwrap();
            let criterion = if global { MergeCriterion::Global } else { MergeCriterion::Local };
            let r = simplify_with(&s1, &s2, &f, &spec, criterion).unwrap();
            let out = &r.simplification;
            prop_assert!(out.distance <= out.distance_bound() + 1e-9);
            prop_assert!(out.distance >= r.dtw.distance - 1e-9);
            if criterion == MergeCriterion::Local {
                for seg in out.simplified.segments() {
                    prop_assert!(tolerance_check(seg.linear_cost, seg.optimal_cost, seg.length(), &out.params));
                }
            }
            prop_assert!(out.simplified.warnings().is_empty());
        }

        #[test]
        fn split_and_merge_structure((s1, s2) in arb_pair(), spec in arb_spec()) {
            let f = CostFunction::default();
            let r = simplify(&s1, &s2, &f, &spec).unwrap();
            let out = &r.simplification;
            let path = &r.dtw.path;
            for sp in [&out.split, &out.simplified] {
                prop_assert_eq!(sp.indices()[0], 1);
                prop_assert_eq!(*sp.indices().last().unwrap(), path.len());
                prop_assert!(sp.indices().windows(2).all(|w| w[0] < w[1]));
                for (k, q) in sp.indices().iter().zip(sp.key_points()) {
                    prop_assert_eq!(path.at(*k), *q);
                }
                for seg in sp.segments() {
                    prop_assert!(seg.linear_cost >= seg.optimal_cost - 1e-9);
                    prop_assert!(tolerance_check(seg.linear_cost, seg.optimal_cost, seg.length(), &out.params));
                }
            }
            prop_assert!(out.simplified.key_points().len() <= out.split.key_points().len());
            let merged: BTreeSet<usize> = out.simplified.indices().iter().copied().collect();
            let split: BTreeSet<usize> = out.split.indices().iter().copied().collect();
            prop_assert!(merged.is_subset(&split));
        }

        #[test]
        fn tighter_tolerance_never_has_fewer_split_points((s1, s2) in arb_pair()) {
            let f = CostFunction::default();
            let r = crate::dtw::dtw(&s1, &s2, &f).unwrap();
            let mut previous: Option<BTreeSet<usize>> = None;
            for (a, rel) in [(1.0, 0.2), (0.2, 0.05), (0.05, 0.0), (0.0, 0.0)] {
                let spec = ToleranceSpec::new(a, rel).unwrap();
                let p = derive_tolerances(&spec, r.distance, &f, r.path.len()).unwrap();
                let keys: BTreeSet<usize> = split_phase(&r.path, &r.cost_matrix, &p).unwrap().indices().iter().copied().collect();
                if let Some(prev) = &previous {
                    prop_assert!(prev.is_subset(&keys));
                }
                previous = Some(keys);
            }
        }

        #[test]
        fn farthest_point_matches_scan(steps in prop::collection::vec(0usize..3, 3..60)) {
            let mut q = Point::new(1, 1);
            let mut pts = vec![q];
            for s in steps {
                let (di, dj) = [(1, 1), (1, 0), (0, 1)][s];
                q = Point::new(q.i + di, q.j + dj);
                pts.push(q);
            }
            let path = WarpingPath::from_pairs(pts.clone()).unwrap();
            let len = path.len();
            for (b, e) in [(1, len), (1, len / 2 + 2), (len / 3 + 1, len)] {
                if e >= b + 2 {
                    prop_assert_eq!(farthest_point(&path, b, e).unwrap(), oracle::farthest_point_scan(&pts, b, e));
                }
            }
        }
    }
}
