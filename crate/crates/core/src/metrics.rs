//! Per-segment descriptors of a simplified path: compression `K` and `kappa`,
//! time shift `sigma`, and the amplitude band `alpha`/`beta` around the first
//! series.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{DswError, Result};
use crate::path::{validate_path, WarpingPath};
use crate::segmenter::SimplifiedPath;
use crate::series::Series;

/// Absolute compression `K = (e' - b') - (e - b)` and log-ratio compression
/// `kappa = ln((e' - b') / (e - b))`. A zero source or target span gives
/// `kappa = +inf` or `-inf`.
pub fn compression(b: usize, e: usize, b2: usize, e2: usize) -> Result<(i64, f64)> {
    if e < b || e2 < b2 {
        return Err(DswError::UnorderedSegment { begin: b, end: e });
    }
    let source = (e - b) as i64;
    let target = (e2 - b2) as i64;
    let kappa = match (source, target) {
        (0, 0) => return Err(DswError::UndefinedCompression),
        (0, _) => f64::INFINITY,
        (_, 0) => f64::NEG_INFINITY,
        (s, t) => (t as f64 / s as f64).ln(),
    };
    Ok((target - source, kappa))
}

/// Which point of a segment defines its time shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftDefinition {
    /// Point closest to the diagonal; zero when the path crosses it.
    #[default]
    Closest,
    /// Difference between the start points, `b' - b`.
    Start,
    /// Difference between the end points, `e' - e`.
    End,
}

/// Closest-to-diagonal shift `sigma`.
pub fn shift(b: usize, e: usize, b2: usize, e2: usize) -> i64 {
    shift_with(ShiftDefinition::Closest, b, e, b2, e2)
}

pub fn shift_with(definition: ShiftDefinition, b: usize, e: usize, b2: usize, e2: usize) -> i64 {
    let start = b2 as i64 - b as i64;
    let end = e2 as i64 - e as i64;
    match definition {
        ShiftDefinition::Start => start,
        ShiftDefinition::End => end,
        ShiftDefinition::Closest => {
            if start * end < 0 {
                0
            } else if start.abs() <= end.abs() {
                start
            } else {
                end
            }
        }
    }
}

/// Descriptors of one segment mapping `s1(b..=e)` onto `s2(b'..=e')`.
/// Indices are 1-based; adjacent reports share their boundary index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegmentReport {
    pub b: usize,
    pub e: usize,
    #[serde(rename = "b_prime")]
    pub b2: usize,
    #[serde(rename = "e_prime")]
    pub e2: usize,
    #[serde(rename = "K")]
    pub k: i64,
    #[serde(serialize_with = "serialize_extended")]
    pub kappa: f64,
    pub sigma: i64,
    pub optimal_cost: f64,
    pub linear_cost: f64,
}

/// Writes finite values as numbers and infinities as `"+inf"` / `"-inf"`.
pub fn serialize_extended<S: Serializer>(value: &f64, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    if value.is_finite() {
        serializer.serialize_f64(*value)
    } else if *value > 0.0 {
        serializer.serialize_str("+inf")
    } else if *value < 0.0 {
        serializer.serialize_str("-inf")
    } else {
        serializer.serialize_str("nan")
    }
}

/// Largest upward (`alpha`) and downward (`beta`) deviation of the values
/// matched to each index of the first series. Shading spans
/// `[s1(i) - beta(i), s1(i) + alpha(i)]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeBand {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl AmplitudeBand {
    pub fn max_alpha(&self) -> f64 {
        self.alpha.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_beta(&self) -> f64 {
        self.beta.iter().copied().fold(0.0, f64::max)
    }

    /// Shading interval around `s1(i)`, 1-based.
    pub fn interval(&self, s1: &Series, i: usize) -> (f64, f64) {
        let v = s1.value(i);
        (v - self.beta[i - 1], v + self.alpha[i - 1])
    }
}

/// Band over a full path (normally the rasterized simplified path).
pub fn amplitude_band(s1: &Series, s2: &Series, path: &WarpingPath) -> Result<AmplitudeBand> {
    for s in [s1, s2] {
        if !s.is_univariate() {
            return Err(DswError::NotUnivariate(s.dim()));
        }
    }
    validate_path(path.points(), s1.len(), s2.len()).map_err(DswError::InvalidPath)?;
    let mut alpha = vec![0.0; s1.len()];
    let mut beta = vec![0.0; s1.len()];
    for q in path.points() {
        let (v1, v2) = (s1.value(q.i), s2.value(q.j));
        let diff = v2 - v1;
        if diff >= 0.0 {
            alpha[q.i - 1] = f64::max(alpha[q.i - 1], diff);
        }
        if diff <= 0.0 {
            beta[q.i - 1] = f64::max(beta[q.i - 1], -diff);
        }
    }
    Ok(AmplitudeBand { alpha, beta })
}

/// Segment reports in path order plus the amplitude band of the rasterized
/// simplified path. The band is omitted for multivariate series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub segments: Vec<SegmentReport>,
    pub band: Option<AmplitudeBand>,
}

pub fn report(simplified: &SimplifiedPath, s1: &Series, s2: &Series, shift_def: ShiftDefinition) -> Result<Report> {
    let end = *simplified.key_points().last().ok_or(DswError::TooFewKeyPoints)?;
    if (end.i, end.j) != (s1.len(), s2.len()) {
        return Err(DswError::Inconsistent(format!(
            "simplified path ends at {end}, series lengths are ({}, {})",
            s1.len(),
            s2.len()
        )));
    }
    let segments = simplified
        .segments()
        .iter()
        .map(|seg| {
            let (b, e, b2, e2) = (seg.begin.i, seg.end.i, seg.begin.j, seg.end.j);
            let (k, kappa) = compression(b, e, b2, e2)?;
            Ok(SegmentReport {
                b,
                e,
                b2,
                e2,
                k,
                kappa,
                sigma: shift_with(shift_def, b, e, b2, e2),
                optimal_cost: seg.optimal_cost,
                linear_cost: seg.linear_cost,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let band = if s1.is_univariate() && s2.is_univariate() {
        Some(amplitude_band(s1, s2, &simplified.rasterize())?)
    } else {
        None
    };
    Ok(Report { segments, band })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segmenter::{simplify, ToleranceSpec};
    use crate::series::CostFunction;
    use proptest::prelude::*;

    #[test]
    fn showcase_regions_have_constructed_signs() {
        let f = crate::fixtures::segment_showcase(crate::fixtures::DEFAULT_SEED);
        let spec = ToleranceSpec::new(1.2, 0.05).unwrap();
        let res = simplify(&f.s1, &f.s2, &CostFunction::default(), &spec).unwrap();
        let rep = report(res.simplified(), &f.s1, &f.s2, ShiftDefinition::Closest).unwrap();
        let ks: Vec<i64> = rep.segments.iter().map(|r| r.k).collect();
        let sigmas: Vec<i64> = rep.segments.iter().map(|r| r.sigma.signum()).collect();
        assert_eq!(ks, vec![0, -5, 0, 5]);
        assert_eq!(sigmas, vec![0, 0, -1, 0]);
        assert_eq!(rep.segments[2].sigma, -5);
    }

    #[test]
    fn compression_examples() {
        assert_eq!(compression(1, 11, 1, 11).unwrap(), (0, 0.0));
        let (k, kappa) = compression(1, 11, 1, 6).unwrap();
        assert_eq!(k, -5);
        assert!((kappa - 0.5f64.ln()).abs() < 1e-15);
        assert_eq!(compression(1, 1, 1, 6).unwrap(), (5, f64::INFINITY));
        assert_eq!(compression(1, 6, 3, 3).unwrap(), (-5, f64::NEG_INFINITY));
        assert_eq!(compression(4, 4, 2, 2), Err(DswError::UndefinedCompression));
        assert!(compression(5, 4, 1, 2).is_err());
    }

    #[test]
    fn shift_examples() {
        // b' - b = 3, e' - e = 5
        assert_eq!(shift(1, 10, 4, 15), 3);
        // b' - b = -2, e' - e = 4
        assert_eq!(shift(5, 10, 3, 14), 0);
        // b' - b = -7, e' - e = -4
        assert_eq!(shift(10, 20, 3, 16), -4);
        assert_eq!(shift_with(ShiftDefinition::Start, 10, 20, 3, 16), -7);
        assert_eq!(shift_with(ShiftDefinition::End, 10, 20, 3, 16), -4);
    }

    #[test]
    fn band_examples() {
        let s1 = Series::new(vec![0.0]).unwrap();
        let s2 = Series::new(vec![-1.0, 2.0]).unwrap();
        let path = WarpingPath::from_pairs([(1, 1), (1, 2)]).unwrap();
        let band = amplitude_band(&s1, &s2, &path).unwrap();
        assert_eq!(band.alpha, vec![2.0]);
        assert_eq!(band.beta, vec![1.0]);
        assert_eq!(band.interval(&s1, 1), (-1.0, 2.0));

        let s = Series::new(vec![1.0, 5.0, 2.0]).unwrap();
        let diag = WarpingPath::from_pairs([(1, 1), (2, 2), (3, 3)]).unwrap();
        let band = amplitude_band(&s, &s, &diag).unwrap();
        assert!(band.alpha.iter().chain(&band.beta).all(|&v| v == 0.0));
    }

    #[test]
    fn band_rejects_invalid_input() {
        let s1 = Series::new(vec![0.0, 1.0]).unwrap();
        let s2 = Series::new(vec![0.0, 1.0, 2.0]).unwrap();
        let diag = WarpingPath::from_pairs([(1, 1), (2, 2)]).unwrap();
        assert!(matches!(amplitude_band(&s1, &s2, &diag), Err(DswError::InvalidPath(_))));
        let mv = Series::multivariate(vec![vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(
            amplitude_band(&mv, &mv, &diag),
            Err(DswError::NotUnivariate(2))
        ));
    }

    #[test]
    fn identity_report_is_neutral() {
        let s = Series::new(vec![0.0, 2.0, 1.0, 3.0, 0.5]).unwrap();
        let r = simplify(&s, &s, &CostFunction::default(), &ToleranceSpec::default()).unwrap();
        let rep = report(r.simplified(), &s, &s, ShiftDefinition::Closest).unwrap();
        assert_eq!(rep.segments.len(), 1);
        let seg = rep.segments[0];
        assert_eq!((seg.k, seg.kappa, seg.sigma), (0, 0.0, 0));
        let band = rep.band.unwrap();
        assert_eq!(band.max_alpha(), 0.0);
        assert_eq!(band.max_beta(), 0.0);
    }

    #[test]
    fn kappa_serializes_infinity_as_string() {
        let seg = SegmentReport {
            b: 1,
            e: 1,
            b2: 1,
            e2: 6,
            k: 5,
            kappa: f64::INFINITY,
            sigma: 0,
            optimal_cost: 0.0,
            linear_cost: 0.0,
        };
        let json = serde_json::to_value(seg).unwrap();
        assert_eq!(json["kappa"], "+inf");
        assert_eq!(json["K"], 5);
        assert_eq!(json["b_prime"], 1);
        let json = serde_json::to_value(SegmentReport {
            kappa: f64::NEG_INFINITY,
            ..seg
        })
        .unwrap();
        assert_eq!(json["kappa"], "-inf");
        let json = serde_json::to_value(SegmentReport { kappa: -0.5, ..seg }).unwrap();
        assert_eq!(json["kappa"], -0.5);
    }

    fn brute_compression(b: usize, e: usize, b2: usize, e2: usize) -> (i64, f64) {
        // Count samples on each side, then compare spans.
        let src = (b..=e).count() as i64 - 1;
        let dst = (b2..=e2).count() as i64 - 1;
        let kappa = if src == 0 {
            f64::INFINITY
        } else if dst == 0 {
            f64::NEG_INFINITY
        } else {
            (dst as f64).ln() - (src as f64).ln()
        };
        (dst - src, kappa)
    }

    fn brute_shift(b: usize, e: usize, b2: usize, e2: usize) -> i64 {
        // Horizontal offset from the diagonal of every point on the segment
        // between the endpoints; zero if the segment crosses the diagonal.
        let (s, t) = (b2 as i64 - b as i64, e2 as i64 - e as i64);
        if (s < 0 && t > 0) || (s > 0 && t < 0) {
            return 0;
        }
        *[s, t]
            .iter()
            .min_by_key(|v| (v.abs(), if **v == s { 0 } else { 1 }))
            .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn compression_and_shift_match_brute_force(b in 1usize..200, l in 0usize..100, b2 in 1usize..200, l2 in 0usize..100) {
            prop_assume!(l + l2 > 0);
            let (e, e2) = (b + l, b2 + l2);
            let (k, kappa) = compression(b, e, b2, e2).unwrap();
            let (bk, bkappa) = brute_compression(b, e, b2, e2);
            prop_assert_eq!(k, bk);
            if kappa.is_finite() {
                prop_assert!((kappa - bkappa).abs() <= 1e-12);
            } else {
                prop_assert_eq!(kappa, bkappa);
            }
            prop_assert_eq!(shift(b, e, b2, e2), brute_shift(b, e, b2, e2));

            let (k_swap, kappa_swap) = compression(b2, e2, b, e).unwrap();
            prop_assert_eq!(k_swap, -k);
            if kappa.is_finite() {
                prop_assert!((kappa_swap + kappa).abs() <= 1e-12);
            }
            prop_assert_eq!(kappa == 0.0, l == l2);
            if l > 0 && l2 > 0 {
                prop_assert_eq!(k.signum(), if kappa > 0.0 { 1 } else if kappa < 0.0 { -1 } else { 0 });
            }
        }
    }
}
