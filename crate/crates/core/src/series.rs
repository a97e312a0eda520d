//! Time series values and local cost functions of the form `phi(||x - y||_p)`
//! with `phi(z) = z^lambda`.
//!
//! Indices into a [`Series`] are 1-based throughout the public API.

use serde::{Deserialize, Serialize};

use crate::error::{DswError, Result};

/// An ordered, equidistant sequence of samples. Each sample is a vector of
/// the same dimension `d >= 1`; univariate series have `d = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    values: Vec<f64>,
    dim: usize,
    name: Option<String>,
}

impl Series {
    /// Creates a univariate series.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(DswError::EmptySeries);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(DswError::NonFinite { index: index + 1 });
        }
        Ok(Self {
            values,
            dim: 1,
            name: None,
        })
    }

    /// Creates a multivariate series from one row per sample.
    pub fn multivariate(samples: Vec<Vec<f64>>) -> Result<Self> {
        let dim = samples.first().map(Vec::len).ok_or(DswError::EmptySeries)?;
        if dim == 0 {
            return Err(DswError::DimensionMismatch {
                index: 1,
                expected: 1,
                found: 0,
            });
        }
        let mut values = Vec::with_capacity(samples.len() * dim);
        for (k, sample) in samples.iter().enumerate() {
            if sample.len() != dim {
                return Err(DswError::DimensionMismatch {
                    index: k + 1,
                    expected: dim,
                    found: sample.len(),
                });
            }
            if sample.iter().any(|v| !v.is_finite()) {
                return Err(DswError::NonFinite { index: k + 1 });
            }
            values.extend_from_slice(sample);
        }
        Ok(Self {
            values,
            dim,
            name: None,
        })
    }

    #[must_use]
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of samples `n = |s|`.
    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    /// Always false; a series holds at least one sample.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_univariate(&self) -> bool {
        self.dim == 1
    }

    /// Sample `s(i)`, 1-based.
    ///
    /// Panics if `i` is outside `1..=len`.
    pub fn sample(&self, i: usize) -> &[f64] {
        assert!(i >= 1 && i <= self.len(), "series index {i} out of range");
        &self.values[(i - 1) * self.dim..i * self.dim]
    }

    /// First component of sample `s(i)`, 1-based. For univariate series this
    /// is the value itself.
    pub fn value(&self, i: usize) -> f64 {
        self.sample(i)[0]
    }

    /// Iterates over samples in order.
    pub fn samples(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.dim)
    }

    /// Raw values, row-major for multivariate series.
    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// Local cost `delta(x, y) = phi(||x - y||_p)` with `phi(z) = z^lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostFunction {
    lambda: f64,
    p: f64,
}

impl Default for CostFunction {
    /// Squared Euclidean cost (`lambda = 2`, `p = 2`).
    fn default() -> Self {
        Self { lambda: 2.0, p: 2.0 }
    }
}

impl CostFunction {
    /// Both exponents must be finite and at least 1; `lambda >= 1` keeps `phi`
    /// convex, which the combined tolerance bound relies on.
    pub fn new(lambda: f64, p: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 1.0 {
            return Err(DswError::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "must be finite and >= 1",
            });
        }
        if !p.is_finite() || p < 1.0 {
            return Err(DswError::InvalidParameter {
                name: "p",
                value: p,
                reason: "must be finite and >= 1",
            });
        }
        Ok(Self { lambda, p })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `phi(||a - b||_p)`. Fails if the samples differ in dimension.
    pub fn local_cost(&self, a: &[f64], b: &[f64]) -> Result<f64> {
        if a.len() != b.len() {
            return Err(DswError::DimensionMismatch {
                index: 1,
                expected: a.len(),
                found: b.len(),
            });
        }
        Ok(self.cost_unchecked(a, b))
    }

    /// Same as [`local_cost`](Self::local_cost) for callers that already
    /// checked dimensions.
    pub(crate) fn cost_unchecked(&self, a: &[f64], b: &[f64]) -> f64 {
        if a.len() == 1 {
            return self.phi((a[0] - b[0]).abs());
        }
        // phi(||x||_p) = sum |x_k|^p exactly when lambda == p.
        if self.lambda == self.p {
            return a.iter().zip(b).map(|(x, y)| pow((x - y).abs(), self.p)).sum();
        }
        let norm = if self.p == 1.0 {
            a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
        } else {
            let s: f64 = a.iter().zip(b).map(|(x, y)| pow((x - y).abs(), self.p)).sum();
            s.powf(1.0 / self.p)
        };
        self.phi(norm)
    }

    fn phi(&self, z: f64) -> f64 {
        pow(z, self.lambda)
    }

    /// `phi^-1(c) = c^(1/lambda)`.
    pub fn cost_to_distance(&self, cost: f64) -> Result<f64> {
        if cost.is_nan() || cost < 0.0 {
            return Err(DswError::InvalidParameter {
                name: "cost",
                value: cost,
                reason: "must be >= 0",
            });
        }
        Ok(self.inverse_phi(cost))
    }

    /// `phi(d) = d^lambda`.
    pub fn distance_to_cost(&self, distance: f64) -> Result<f64> {
        if distance.is_nan() || distance < 0.0 {
            return Err(DswError::InvalidParameter {
                name: "distance",
                value: distance,
                reason: "must be >= 0",
            });
        }
        Ok(self.phi(distance))
    }

    pub(crate) fn inverse_phi(&self, cost: f64) -> f64 {
        if self.lambda == 1.0 {
            cost
        } else if self.lambda == 2.0 {
            cost.sqrt()
        } else {
            cost.powf(1.0 / self.lambda)
        }
    }
}

fn pow(z: f64, exponent: f64) -> f64 {
    if exponent == 1.0 {
        z
    } else if exponent == 2.0 {
        z * z
    } else {
        z.powf(exponent)
    }
}
