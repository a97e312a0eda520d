//! Brute-force reference computations used to check the DP and the
//! rasterizer. Nothing here is shared with the optimized code paths.

use crate::dtw::CostMatrix;
use crate::path::Point;

/// Every valid warping path on an `n x m` grid, by depth-first expansion of
/// the three steps.
pub fn enumerate_paths(n: usize, m: usize) -> Vec<Vec<Point>> {
    fn walk(q: Point, n: usize, m: usize, prefix: &mut Vec<Point>, out: &mut Vec<Vec<Point>>) {
        prefix.push(q);
        if q == Point::new(n, m) {
            out.push(prefix.clone());
        } else {
            for (di, dj) in [(1, 1), (1, 0), (0, 1)] {
                let next = Point::new(q.i + di, q.j + dj);
                if next.i <= n && next.j <= m {
                    walk(next, n, m, prefix, out);
                }
            }
        }
        prefix.pop();
    }
    let mut out = Vec::new();
    if n >= 1 && m >= 1 {
        walk(Point::new(1, 1), n, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Sum of costs along a path, accumulated in path order.
pub fn path_cost(cost: &CostMatrix, path: &[Point]) -> f64 {
    path.iter().fold(0.0, |acc, &q| acc + cost.at(q))
}

/// Minimum path cost over all enumerated paths.
pub fn brute_force_cost(cost: &CostMatrix) -> f64 {
    enumerate_paths(cost.rows(), cost.cols())
        .iter()
        .map(|p| path_cost(cost, p))
        .fold(f64::INFINITY, f64::min)
}

/// Number of monotone lattice paths with unit steps `(1,0)`, `(0,1)`,
/// `(1,1)` on an `n x m` grid: the Delannoy number `D(n-1, m-1)`, by its
/// closed form `sum_k C(a,k) C(b,k) 2^k`.
pub fn delannoy(n: usize, m: usize) -> u128 {
    let (a, b) = (n as u128 - 1, m as u128 - 1);
    (0..=a.min(b))
        .map(|k| binomial(a, k) * binomial(b, k) * (1u128 << k))
        .sum()
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Farthest interior point from the line through `points[b-1]` and
/// `points[e-1]`, by scanning in floating point. Ties go to the first index.
pub fn farthest_point_scan(points: &[Point], b: usize, e: usize) -> usize {
    let (p0, p1) = (points[b - 1], points[e - 1]);
    let (x0, y0, x1, y1) = (p0.i as f64, p0.j as f64, p1.i as f64, p1.j as f64);
    let norm = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt();
    let mut best = (b + 1, f64::NEG_INFINITY);
    for s in b + 1..e {
        let q = points[s - 1];
        let dist = ((y1 - y0) * q.i as f64 - (x1 - x0) * q.j as f64 + x1 * y0 - y1 * x0).abs() / norm;
        if dist > best.1 {
            best = (s, dist);
        }
    }
    best.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_delannoy_numbers() {
        for n in 1..=6 {
            for m in 1..=6 {
                assert_eq!(enumerate_paths(n, m).len() as u128, delannoy(n, m), "{n}x{m}");
            }
        }
        assert_eq!(delannoy(3, 3), 13);
        assert_eq!(delannoy(6, 6), 1683);
    }

    #[test]
    fn enumerated_paths_are_valid_and_distinct() {
        let all = enumerate_paths(4, 5);
        for p in &all {
            assert!(crate::path::validate_path(p, 4, 5).is_ok());
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }
}
