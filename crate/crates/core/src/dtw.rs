//! Cost matrix, accumulated cost matrix and optimal warping path.

use crate::error::{DswError, Result};
use crate::path::{Point, WarpingPath};
use crate::series::{CostFunction, Series};

/// Dense `n x m` grid of finite non-negative reals, addressed by 1-based
/// [`Point`]s.
#[derive(Debug, Clone, PartialEq)]
struct Grid {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Grid {
    #[inline]
    fn at(&self, q: Point) -> f64 {
        debug_assert!(q.i >= 1 && q.i <= self.rows && q.j >= 1 && q.j <= self.cols);
        self.data[(q.i - 1) * self.cols + (q.j - 1)]
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[(i - 1) * self.cols..i * self.cols]
    }

    fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks_exact(self.cols).map(<[f64]>::to_vec).collect()
    }
}

/// Local costs `C(i, j) = delta(s1(i), s2(j))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix(Grid);

impl CostMatrix {
    pub fn build(s1: &Series, s2: &Series, f: &CostFunction) -> Result<Self> {
        if s1.dim() != s2.dim() {
            return Err(DswError::DimensionMismatch {
                index: 1,
                expected: s1.dim(),
                found: s2.dim(),
            });
        }
        let mut data = Vec::with_capacity(s1.len() * s2.len());
        for a in s1.samples() {
            data.extend(s2.samples().map(|b| f.cost_unchecked(a, b)));
        }
        Ok(Self(Grid {
            rows: s1.len(),
            cols: s2.len(),
            data,
        }))
    }

    /// Builds a matrix from explicit rows, e.g. a synthetic cost landscape.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 {
            return Err(DswError::EmptySeries);
        }
        let mut data = Vec::with_capacity(n * m);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(DswError::ShapeMismatch {
                    expected_rows: n,
                    expected_cols: m,
                    rows: n,
                    cols: row.len(),
                });
            }
            for (j, value) in row.into_iter().enumerate() {
                if !value.is_finite() || value < 0.0 {
                    return Err(DswError::InvalidCost {
                        i: i + 1,
                        j: j + 1,
                        value,
                    });
                }
                data.push(value);
            }
        }
        Ok(Self(Grid { rows: n, cols: m, data }))
    }

    pub fn rows(&self) -> usize {
        self.0.rows
    }

    pub fn cols(&self) -> usize {
        self.0.cols
    }

    /// `C(i, j)`, 1-based.
    #[inline]
    pub fn at(&self, q: Point) -> f64 {
        self.0.at(q)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.at(Point::new(i, j))
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.0.row(i)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.0.to_rows()
    }

    /// Smallest and largest entry.
    pub fn range(&self) -> (f64, f64) {
        self.0
            .data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }
}

/// Accumulated costs `D` of the DTW recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct AccumulatedCostMatrix(Grid);

impl AccumulatedCostMatrix {
    pub fn rows(&self) -> usize {
        self.0.rows
    }

    pub fn cols(&self) -> usize {
        self.0.cols
    }

    /// `D(i, j)`, 1-based.
    #[inline]
    pub fn at(&self, q: Point) -> f64 {
        self.0.at(q)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.at(Point::new(i, j))
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.0.to_rows()
    }
}

/// Fills `D` with the recurrence over the steps `(1,1)`, `(1,0)`, `(0,1)`:
/// prefix sums on the first row and column, `C + min` of the three
/// predecessors elsewhere.
pub fn accumulate(cost: &CostMatrix) -> AccumulatedCostMatrix {
    let (n, m) = (cost.rows(), cost.cols());
    let c = &cost.0.data;
    let mut d = vec![0.0; n * m];
    d[0] = c[0];
    for j in 1..m {
        d[j] = c[j] + d[j - 1];
    }
    for i in 1..n {
        let row = i * m;
        let prev = row - m;
        d[row] = c[row] + d[prev];
        for j in 1..m {
            let best = d[prev + j - 1].min(d[prev + j]).min(d[row + j - 1]);
            d[row + j] = c[row + j] + best;
        }
    }
    AccumulatedCostMatrix(Grid {
        rows: n,
        cols: m,
        data: d,
    })
}

/// Backtracks from `(n, m)` to `(1, 1)`, stepping to the predecessor with
/// the smallest accumulated cost. Ties prefer the diagonal, then `(i, j-1)`,
/// then `(i-1, j)`.
pub fn backtrack(acc: &AccumulatedCostMatrix) -> WarpingPath {
    let mut q = Point::new(acc.rows(), acc.cols());
    let mut points = vec![q];
    while q != Point::new(1, 1) {
        q = if q.i == 1 {
            Point::new(1, q.j - 1)
        } else if q.j == 1 {
            Point::new(q.i - 1, 1)
        } else {
            let diag = Point::new(q.i - 1, q.j - 1);
            let left = Point::new(q.i, q.j - 1);
            let up = Point::new(q.i - 1, q.j);
            let (dd, dl, du) = (acc.at(diag), acc.at(left), acc.at(up));
            if dd <= dl && dd <= du {
                diag
            } else if dl <= du {
                left
            } else {
                up
            }
        };
        points.push(q);
    }
    points.reverse();
    WarpingPath::from_valid(points)
}

/// Optimal alignment of two series.
#[derive(Debug, Clone)]
pub struct DtwResult {
    pub path: WarpingPath,
    /// `c° = D(n, m)`.
    pub cost: f64,
    /// `d° = phi^-1(c°)`.
    pub distance: f64,
    pub cost_matrix: CostMatrix,
    pub accumulated: AccumulatedCostMatrix,
}

pub fn dtw(s1: &Series, s2: &Series, f: &CostFunction) -> Result<DtwResult> {
    let cost_matrix = CostMatrix::build(s1, s2, f)?;
    Ok(dtw_from_cost(cost_matrix, f))
}

/// DTW over a precomputed cost matrix.
pub fn dtw_from_cost(cost_matrix: CostMatrix, f: &CostFunction) -> DtwResult {
    let accumulated = accumulate(&cost_matrix);
    let path = backtrack(&accumulated);
    let cost = accumulated.get(accumulated.rows(), accumulated.cols());
    DtwResult {
        path,
        cost,
        distance: f.inverse_phi(cost),
        cost_matrix,
        accumulated,
    }
}
