//! Synthetic demonstration pairs built by scripted transformations of base
//! waveforms: time shift, uniform compression, amplitude scaling, plateau
//! insertion and additive noise. All generators are deterministic for a
//! given seed.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::series::Series;

pub const DEFAULT_SEED: u64 = 7;

/// A named pair of series.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub s1: Series,
    pub s2: Series,
}

/// Piecewise-linear time map from sample indices of a derived series to
/// (fractional) sample positions of the base waveform. Knots are
/// `(derived_index, base_position)` with strictly increasing derived indices.
fn warp(knots: &[(f64, f64)], len: usize) -> Vec<f64> {
    (1..=len)
        .map(|k| {
            let x = k as f64;
            let w = knots
                .windows(2)
                .find(|w| x <= w[1].0)
                .unwrap_or(&knots[knots.len() - 2..]);
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            y0 + (x - x0) * (y1 - y0) / (x1 - x0)
        })
        .collect()
}

fn bump(t: f64, center: f64, width: f64) -> f64 {
    (-0.5 * ((t - center) / width).powi(2)).exp()
}

fn noise(rng: &mut ChaCha8Rng, sd: f64, len: usize) -> Vec<f64> {
    let normal = Normal::new(0.0, sd).expect("valid standard deviation");
    (0..len).map(|_| normal.sample(rng)).collect()
}

fn add(values: &mut [f64], extra: &[f64]) {
    for (v, e) in values.iter_mut().zip(extra) {
        *v += e;
    }
}

fn named(values: Vec<f64>, name: &str) -> Series {
    Series::new(values)
        .expect("generated values are finite")
        .with_name(name)
}

/// One sine period embedded in a flat baseline; the second series holds the
/// same period compressed to half its length. Light noise makes the optimal
/// path wander on the baselines.
pub fn sine_compression(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = |t: f64| {
        if (21.0..=61.0).contains(&t) {
            (2.0 * PI * (t - 21.0) / 40.0).sin()
        } else {
            0.0
        }
    };
    let n = 90;
    let mut s1: Vec<f64> = (1..=n).map(|k| base(k as f64)).collect();
    // Sine over derived indices 21..41 covers base positions 21..61.
    let times = warp(&[(1.0, 1.0), (21.0, 21.0), (41.0, 61.0), (90.0, 110.0)], n);
    let mut s2: Vec<f64> = times.iter().map(|&t| base(t)).collect();
    add(&mut s1, &noise(&mut rng, 0.01, n));
    add(&mut s2, &noise(&mut rng, 0.01, n));
    Fixture {
        name: "sine-compression",
        s1: named(s1, "sine"),
        s2: named(s2, "sine-compressed"),
    }
}

/// Heartbeat-like waveform: P wave, QRS complex and T wave.
fn heartbeat(t: f64, r_height: f64, t_height: f64, t_width: f64) -> f64 {
    0.15 * bump(t, 22.0, 4.0) - 0.25 * bump(t, 44.0, 1.6) + r_height * bump(t, 50.0, 2.2) - 0.45 * bump(t, 56.0, 1.8)
        + t_height * bump(t, 82.0, t_width)
}

/// Two heartbeats: the second is slightly delayed, has a lower R peak and a
/// higher, wider T wave, and ends in a noisy tail. The first series drifts
/// slowly downward over the tail, so matching the tail noise drives the
/// optimal path into extreme one-to-many warping near the end.
pub fn ecg_noisy_tail(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 136;
    let drift = |t: f64| if t > 100.0 { -0.004 * (t - 100.0) } else { 0.0 };
    let mut s1: Vec<f64> = (1..=n)
        .map(|k| heartbeat(k as f64, 1.6, 0.45, 6.0) + drift(k as f64))
        .collect();
    let times = warp(&[(1.0, 1.0), (40.0, 38.0), (136.0, 136.0)], n);
    let mut s2: Vec<f64> = times.iter().map(|&t| heartbeat(t, 1.3, 0.6, 8.0)).collect();
    add(&mut s1, &noise(&mut rng, 0.004, n));
    let mut tail = noise(&mut rng, 0.06, n);
    for v in tail.iter_mut().take(104) {
        *v /= 15.0;
    }
    for (k, v) in tail.iter_mut().enumerate().skip(104) {
        *v -= 0.004 * (k as f64 - 103.0);
    }
    add(&mut s2, &tail);
    Fixture {
        name: "ecg-noisy-tail",
        s1: named(s1, "beat-a"),
        s2: named(s2, "beat-b"),
    }
}

/// Flat start with a valley; the second series has a narrower valley and a
/// noisier start.
pub fn umd_like(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 150;
    let base = |t: f64| -1.5 * bump(t, 80.0, 12.0) + 0.4 * bump(t, 125.0, 6.0);
    let mut s1: Vec<f64> = (1..=n).map(|k| base(k as f64)).collect();
    let times = warp(&[(1.0, 1.0), (60.0, 50.0), (95.0, 110.0), (150.0, 150.0)], n);
    let mut s2: Vec<f64> = times.iter().map(|&t| base(t)).collect();
    add(&mut s1, &noise(&mut rng, 0.02, n));
    let mut start = noise(&mut rng, 0.06, n);
    for v in start.iter_mut().skip(50) {
        *v *= 0.3;
    }
    add(&mut s2, &start);
    Fixture {
        name: "umd-like",
        s1: named(s1, "umd-a"),
        s2: named(s2, "umd-b"),
    }
}

/// Piecewise-constant pattern with a pause: the second series holds its value
/// for 25 samples starting at index 75.
pub fn pause(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 128;
    let level = |t: f64| match t {
        t if t < 20.0 => -0.8,
        t if t < 45.0 => 1.0,
        t if t < 60.0 => -1.0,
        t if t < 95.0 => 0.6 * ((t - 60.0) / 35.0 * 2.0 - 1.0),
        t if t < 110.0 => 1.2,
        _ => -0.5,
    };
    let mut s1: Vec<f64> = (1..=n).map(|k| level(k as f64)).collect();
    let mut s2 = s1[..75].to_vec();
    s2.extend(std::iter::repeat_n(s1[74], 25));
    s2.extend_from_slice(&s1[75..]);
    add(&mut s1, &noise(&mut rng, 0.02, n));
    let len2 = s2.len();
    add(&mut s2, &noise(&mut rng, 0.02, len2));
    Fixture {
        name: "pause",
        s1: named(s1, "process-a"),
        s2: named(s2, "process-b"),
    }
}

/// Four regions with known relations to the reference: identical,
/// compressed by 5 samples, shifted back by 5 samples with a larger
/// amplitude, and expanded by 5 samples. The base waveform has no flat
/// stretches, so the optimal path follows the constructed warp closely; the
/// four regions appear as four segments from about `gamma_abs = 1.2`.
pub fn segment_showcase(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = |t: f64| (t / 2.1).sin() + 0.6 * (t / 3.7 + 1.0).sin();
    let n = 80;
    let mut s1: Vec<f64> = (1..=n).map(|k| base(k as f64)).collect();
    let times = warp(&[(1.0, 1.0), (20.0, 20.0), (35.0, 40.0), (55.0, 60.0), (80.0, 80.0)], n);
    let mut s2: Vec<f64> = times
        .iter()
        .map(|&t| base(t) * if (40.0..60.0).contains(&t) { 1.15 } else { 1.0 })
        .collect();
    add(&mut s1, &noise(&mut rng, 0.005, n));
    add(&mut s2, &noise(&mut rng, 0.005, n));
    Fixture {
        name: "segment-showcase",
        s1: named(s1, "reference"),
        s2: named(s2, "transformed"),
    }
}

/// All demonstration fixtures for a seed.
pub fn all_with_seed(seed: u64) -> Vec<Fixture> {
    vec![
        ecg_noisy_tail(seed),
        umd_like(seed),
        pause(seed),
        sine_compression(seed),
        segment_showcase(seed),
    ]
}

/// All demonstration fixtures with the default seed.
pub fn all() -> Vec<Fixture> {
    all_with_seed(DEFAULT_SEED)
}

pub fn by_name(name: &str, seed: u64) -> Option<Fixture> {
    all_with_seed(seed).into_iter().find(|f| f.name == name)
}
