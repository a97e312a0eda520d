//! Warping paths over the cost matrix, their validation, segment costs and
//! Bresenham rasterization of straight segments.
//!
//! Path positions and matrix coordinates are 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dtw::{AccumulatedCostMatrix, CostMatrix};
use crate::error::{DswError, Result};

/// A cell `(i, j)` of the cost matrix: index `i` into the first series and
/// `j` into the second, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub i: usize,
    pub j: usize,
}

impl Point {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

impl From<(usize, usize)> for Point {
    fn from((i, j): (usize, usize)) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Empty,
    /// First pair is not `(1, 1)`.
    StartBoundary,
    /// Last pair is not `(n, m)`.
    EndBoundary,
    /// A step skips an index or repeats a pair.
    Continuity,
    /// A step decreases an index.
    Monotonicity,
    /// A pair lies outside the `n x m` grid.
    OutOfBounds,
}

/// First violated warping-path condition and the 1-based position in the
/// path where it was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathViolation {
    pub kind: ViolationKind,
    pub position: usize,
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::Empty => "empty path",
            ViolationKind::StartBoundary => "start boundary",
            ViolationKind::EndBoundary => "end boundary",
            ViolationKind::Continuity => "continuity",
            ViolationKind::Monotonicity => "monotonicity",
            ViolationKind::OutOfBounds => "out of bounds",
        };
        write!(f, "{what} violation at position {}", self.position)
    }
}

/// Checks boundaries, continuity and monotonicity for a path over an
/// `n x m` grid. Steps are checked in order, so the reported violation is the
/// first one along the path; the end boundary is checked last.
pub fn validate_path(pairs: &[Point], n: usize, m: usize) -> std::result::Result<(), PathViolation> {
    let violation = |kind, position| Err(PathViolation { kind, position });
    let Some(first) = pairs.first() else {
        return violation(ViolationKind::Empty, 0);
    };
    if *first != Point::new(1, 1) {
        return violation(ViolationKind::StartBoundary, 1);
    }
    for (k, w) in pairs.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let position = k + 2;
        if b.i < a.i || b.j < a.j {
            return violation(ViolationKind::Monotonicity, position);
        }
        let (di, dj) = (b.i - a.i, b.j - a.j);
        if di > 1 || dj > 1 || (di == 0 && dj == 0) {
            return violation(ViolationKind::Continuity, position);
        }
        if b.i > n || b.j > m {
            return violation(ViolationKind::OutOfBounds, position);
        }
    }
    if *pairs.last().unwrap() != Point::new(n, m) {
        return violation(ViolationKind::EndBoundary, pairs.len());
    }
    Ok(())
}

/// A sequence of index pairs satisfying the boundary, continuity and
/// monotonicity conditions for some `n x m` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarpingPath {
    points: Vec<Point>,
}

impl WarpingPath {
    /// Validates `points` against an `n x m` grid.
    pub fn new(points: Vec<Point>, n: usize, m: usize) -> Result<Self> {
        validate_path(&points, n, m).map_err(DswError::InvalidPath)?;
        Ok(Self { points })
    }

    /// Builds a path whose grid size is taken from its last pair.
    pub fn from_pairs<I, P>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<Point>,
    {
        let points: Vec<Point> = pairs.into_iter().map(Into::into).collect();
        let end = points.last().copied().unwrap_or(Point::new(0, 0));
        Self::new(points, end.i, end.j)
    }

    /// Path produced by construction elsewhere in the crate and already known
    /// to be valid.
    pub(crate) fn from_valid(points: Vec<Point>) -> Self {
        debug_assert!({
            let end = *points.last().unwrap();
            validate_path(&points, end.i, end.j).is_ok()
        });
        Self { points }
    }

    /// Path length `L`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `P(k)`, 1-based. Panics when out of range.
    pub fn at(&self, k: usize) -> Point {
        assert!(k >= 1 && k <= self.points.len(), "path index {k} out of range");
        self.points[k - 1]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// The `(n, m)` grid size the path spans.
    pub fn shape(&self) -> (usize, usize) {
        let end = self.points[self.points.len() - 1];
        (end.i, end.j)
    }

    /// Positions where the step direction changes.
    pub fn corner_count(&self) -> usize {
        self.points
            .windows(3)
            .filter(|w| {
                let d1 = (w[1].i - w[0].i, w[1].j - w[0].j);
                let d2 = (w[2].i - w[1].i, w[2].j - w[1].j);
                d1 != d2
            })
            .count()
    }

    /// Sum of `C` over every pair of the path.
    pub fn cost(&self, cost: &CostMatrix) -> f64 {
        self.points.iter().map(|&q| cost.at(q)).sum()
    }

    fn check_segment(&self, b: usize, e: usize) -> Result<()> {
        let len = self.points.len();
        if b < 1 || b > len {
            return Err(DswError::IndexOutOfRange { index: b, len });
        }
        if e < 1 || e > len {
            return Err(DswError::IndexOutOfRange { index: e, len });
        }
        if b >= e {
            return Err(DswError::UnorderedSegment { begin: b, end: e });
        }
        Ok(())
    }
}

/// A stretch `P(b..=e)` of a path together with the cost of the path itself
/// and of the straight line replacing it. Costs exclude the start point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathSegment {
    /// Path position of the first point.
    pub begin_index: usize,
    /// Path position of the last point.
    pub end_index: usize,
    pub begin: Point,
    pub end: Point,
    /// `c`: cost of the original path over the segment.
    pub optimal_cost: f64,
    /// `c'`: cost of the rasterized straight line.
    pub linear_cost: f64,
}

impl PathSegment {
    /// `l = e - b` in path positions.
    pub fn length(&self) -> usize {
        self.end_index - self.begin_index
    }
}

/// `c = D(P(e)) - D(P(b))`, the cost of an optimal path over positions
/// `b+1..=e`. Only meaningful when `path` was backtracked from `acc`.
pub fn optimal_path_cost(path: &WarpingPath, acc: &AccumulatedCostMatrix, b: usize, e: usize) -> Result<f64> {
    path.check_segment(b, e)?;
    check_shape(path, acc.rows(), acc.cols())?;
    Ok(acc.at(path.at(e)) - acc.at(path.at(b)))
}

/// Sum of `C` over path positions `b+1..=e`. Agrees with
/// [`optimal_path_cost`] on backtracked paths and is exact for any path.
pub fn path_segment_cost(path: &WarpingPath, cost: &CostMatrix, b: usize, e: usize) -> Result<f64> {
    path.check_segment(b, e)?;
    check_shape(path, cost.rows(), cost.cols())?;
    Ok(segment_sum(path, cost, b, e))
}

pub(crate) fn segment_sum(path: &WarpingPath, cost: &CostMatrix, b: usize, e: usize) -> f64 {
    path.points[b..e].iter().fold(0.0, |acc, &q| acc + cost.at(q))
}

/// `c'`: cost of the straight line from `P(b)` to `P(e)`, start excluded,
/// end included.
pub fn linear_path_cost(path: &WarpingPath, cost: &CostMatrix, b: usize, e: usize) -> Result<f64> {
    path.check_segment(b, e)?;
    check_shape(path, cost.rows(), cost.cols())?;
    Ok(line_cost(cost, path.at(b), path.at(e)))
}

pub(crate) fn line_cost(cost: &CostMatrix, q0: Point, q1: Point) -> f64 {
    let mut total = 0.0;
    bresenham(q0, q1, |q| total += cost.at(q));
    total
}

fn check_shape(path: &WarpingPath, rows: usize, cols: usize) -> Result<()> {
    let (n, m) = path.shape();
    if (n, m) != (rows, cols) {
        return Err(DswError::ShapeMismatch {
            expected_rows: n,
            expected_cols: m,
            rows,
            cols,
        });
    }
    Ok(())
}

/// Rasterizes the straight line from `q0` to `q1` with Bresenham's
/// algorithm. The result excludes `q0` and ends with `q1`; prefixed with `q0`
/// it is a continuous, monotone step sequence.
pub fn rasterize_linear(q0: Point, q1: Point) -> Result<Vec<Point>> {
    if q1.i < q0.i || q1.j < q0.j {
        return Err(DswError::NonMonotoneEndpoints {
            i0: q0.i,
            j0: q0.j,
            i1: q1.i,
            j1: q1.j,
        });
    }
    let mut out = Vec::with_capacity((q1.i - q0.i).max(q1.j - q0.j));
    bresenham(q0, q1, |q| out.push(q));
    Ok(out)
}

/// Walks the lattice line from `q0` to `q1` (component-wise `q0 <= q1`),
/// visiting every point after `q0` up to and including `q1`.
fn bresenham(q0: Point, q1: Point, mut visit: impl FnMut(Point)) {
    let d_f = (q1.i - q0.i) as i64;
    let d_t = -((q1.j - q0.j) as i64);
    let mut err = d_f + d_t;
    let mut q = q0;
    while q != q1 {
        // Both tests see the error from before this step's updates; a
        // simultaneous move in i and j is a diagonal step.
        let e2 = 2 * err;
        if e2 >= d_t {
            err += d_t;
            q.i += 1;
        }
        if e2 <= d_f {
            err += d_f;
            q.j += 1;
        }
        visit(q);
    }
}

/// Full path `P~f` obtained by rasterizing every segment of a key-point
/// chain. The chain must start at `(1, 1)` and be component-wise
/// non-decreasing; the result spans the grid ending at the last key point.
pub fn rasterize_simplified(key_points: &[Point]) -> Result<WarpingPath> {
    if key_points.len() < 2 {
        return Err(DswError::TooFewKeyPoints);
    }
    if key_points[0] != Point::new(1, 1) {
        return Err(DswError::InvalidPath(PathViolation {
            kind: ViolationKind::StartBoundary,
            position: 1,
        }));
    }
    let mut points = vec![key_points[0]];
    for w in key_points.windows(2) {
        if w[0] == w[1] {
            return Err(DswError::InvalidPath(PathViolation {
                kind: ViolationKind::Continuity,
                position: points.len() + 1,
            }));
        }
        points.extend(rasterize_linear(w[0], w[1])?);
    }
    Ok(WarpingPath::from_valid(points))
}
