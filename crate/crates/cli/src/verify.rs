//! Seeded self-checks run by `dsw verify`: DTW against exhaustive path
//! enumeration, path counts against Delannoy numbers, line rasterization
//! validity, and the simplification distance bound.

use dsw_core::oracle::{brute_force_cost, delannoy, enumerate_paths};
use dsw_core::segmenter::simplify_with_params;
use dsw_core::{
    derive_tolerances, dtw, rasterize_linear, validate_path, CostFunction, MergeCriterion, Point, Series, ToleranceSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Tolerance grid `gamma_rel x gamma_abs` used by the bound suite.
pub const GAMMA_REL: [f64; 3] = [0.0, 0.05, 0.2];
pub const GAMMA_ABS: [f64; 3] = [0.0, 0.1, 1.0];

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random pairs for the DTW oracle suite.
    pub oracle_cases: usize,
    /// Random pairs for the bound suite.
    pub bound_cases: usize,
    /// Largest endpoint offset in the rasterization sweep.
    pub raster_limit: usize,
    /// Flip the tolerance criterion so the bound suite must fail.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 7,
            oracle_cases: 500,
            bound_cases: 1000,
            raster_limit: 25,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Smallest margin to a violation over all cases, if the suite has one.
    pub worst_slack: Option<f64>,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome {
            name,
            cases: 0,
            failures: 0,
            worst_slack: None,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, slack: Option<f64>, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if let Some(s) = slack {
            self.worst_slack = Some(self.worst_slack.map_or(s, |w| w.min(s)));
        }
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn summary(&self) -> String {
        let slack = self
            .worst_slack
            .map_or_else(|| "n/a".to_string(), |s| format!("{s:.3e}"));
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {:<14} cases={:<6} failures={:<6} worst_slack={slack}",
            self.name, self.cases, self.failures
        );
        if let Some(f) = &self.first_failure {
            line.push_str(&format!(" first_failure: {f}"));
        }
        line
    }
}

/// Gaussian random walk of the given length.
pub fn random_walk(rng: &mut ChaCha8Rng, len: usize) -> Series {
    let step = Normal::new(0.0, 1.0).expect("unit normal");
    let mut v = 0.0;
    let values = (0..len)
        .map(|_| {
            v += step.sample(rng);
            v
        })
        .collect();
    Series::new(values).expect("finite walk")
}

pub fn dtw_oracle(rng: &mut ChaCha8Rng, cases: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("dtw-oracle");
    for k in 0..cases {
        let (n, m) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let lambda = if k % 2 == 0 { 1.0 } else { 2.0 };
        let f = CostFunction::new(lambda, 2.0).expect("valid cost");
        let (s1, s2) = (random_walk(rng, n), random_walk(rng, m));
        let res = dtw(&s1, &s2, &f).expect("valid series");
        let brute = brute_force_cost(&res.cost_matrix);
        out.record(res.cost == brute, Some(0.0 - (res.cost - brute).abs()), || {
            format!("{n}x{m} lambda={lambda}: dp={} brute={brute}", res.cost)
        });
    }
    out
}

pub fn delannoy_counts() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("delannoy");
    for n in 1..=6 {
        for m in 1..=6 {
            let count = enumerate_paths(n, m).len() as u128;
            let expected = delannoy(n, m);
            out.record(count == expected, None, || {
                format!("{n}x{m}: {count} paths, expected {expected}")
            });
        }
    }
    out
}

/// Every offset pair up to `limit` from a few start cells: the rasterized
/// segment, prefixed with its start, must be a valid path on the bounding
/// grid that ends at the target.
pub fn rasterization(limit: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("rasterization");
    for (i0, j0) in [(1, 1), (3, 7), (11, 2)] {
        for di in 0..=limit {
            for dj in 0..=limit {
                let (q0, q1) = (Point::new(i0, j0), Point::new(i0 + di, j0 + dj));
                let ok = rasterize_linear(q0, q1).is_ok_and(|cells| {
                    let shifted: Vec<Point> = std::iter::once(q0)
                        .chain(cells)
                        .map(|q| Point::new(q.i - i0 + 1, q.j - j0 + 1))
                        .collect();
                    validate_path(&shifted, di + 1, dj + 1).is_ok() && shifted.len() == di.max(dj) + 1
                });
                out.record(ok, None, || format!("{q0} -> {q1}"));
            }
        }
    }
    out
}

pub fn bound_suite(rng: &mut ChaCha8Rng, cases: usize, inject_fault: bool) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("bound");
    let f = CostFunction::default();
    for k in 0..cases {
        let gamma_rel = GAMMA_REL[k % 3];
        let gamma_abs = GAMMA_ABS[(k / 3) % 3];
        let spec = ToleranceSpec::new(gamma_abs, gamma_rel).expect("valid tolerances");
        let (n, m) = (rng.random_range(20..=80), rng.random_range(20..=80));
        let (s1, s2) = (random_walk(rng, n), random_walk(rng, m));
        let res = dtw(&s1, &s2, &f).expect("valid series");
        let mut params =
            derive_tolerances(&spec, res.distance, &f, res.path.len()).expect("valid tolerance parameters");
        if inject_fault {
            params = params.with_inverted_criterion();
        }
        let simp = simplify_with_params(&res.path, &res.cost_matrix, &f, &spec, params, MergeCriterion::Local)
            .expect("simplification runs");
        let bound = res.distance * (1.0 + gamma_rel) + gamma_abs;
        let slack = bound - simp.distance;
        let mut ok = slack >= -1e-9 && simp.distance >= res.distance - 1e-9;
        if gamma_abs == 0.0 && gamma_rel == 0.0 {
            ok &= (simp.distance - res.distance).abs() <= 1e-9;
        }
        out.record(ok, Some(slack), || {
            format!(
                "{n}x{m} gamma=({gamma_abs},{gamma_rel}): simplified {} optimal {} bound {bound}",
                simp.distance, res.distance
            )
        });
    }
    out
}

pub fn run(opts: &VerifyOptions) -> Vec<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    vec![
        dtw_oracle(&mut rng, opts.oracle_cases),
        delannoy_counts(),
        rasterization(opts.raster_limit),
        bound_suite(&mut rng, opts.bound_cases, opts.inject_fault),
    ]
}
