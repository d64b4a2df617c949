//! Chebyshev expansion of `f(x) = 1 / (1 - c x)` on `(-1, 1)`.
//!
//! The coefficients `c_k = (2/pi) int_0^pi cos(kt) / (1 - c cos t) dt` form a
//! geometric sequence `c_k = c_0 beta^k` with `c_0 = 2 / sqrt(1 - c^2)` and
//! `beta = (1 - sqrt(1 - c^2)) / c`. The closed form is what the solver uses;
//! [`coefficients_quadrature`] integrates the definition directly and exists
//! to cross-check it.

pub mod quadrature;

use std::f64::consts::PI;

use crate::error::{Error, Result};

fn check_damping(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 && c < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "damping factor",
            value: c,
            expected: "(0, 1)",
        })
    }
}

/// Geometric ratio of the coefficient sequence.
///
/// Evaluated as `c / (1 + sqrt(1 - c^2))`, which is algebraically equal to
/// `(1 - sqrt(1 - c^2)) / c` but does not cancel to zero for tiny `c`.
pub fn beta(c: f64) -> Result<f64> {
    check_damping(c)?;
    Ok(c / (1.0 + (1.0 - c * c).sqrt()))
}

/// Per-round shrink factor of the unaccumulated mass,
/// `(c^2 - (2 - c) r) / (c^2 - c r)` with `r = 1 - sqrt(1 - c^2)`.
pub fn sigma(c: f64) -> Result<f64> {
    check_damping(c)?;
    let r = 1.0 - (1.0 - c * c).sqrt();
    let c2 = c * c;
    Ok((c2 - (2.0 - c) * r) / (c2 - c * r))
}

/// Whole-graph relative truncation error after `rounds` rounds,
/// `2 beta^(M+1) / (1 + beta)`.
pub fn err_bound(c: f64, rounds: usize) -> Result<f64> {
    let b = beta(c)?;
    Ok(2.0 * b.powf(rounds as f64 + 1.0) / (1.0 + b))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    pub damping: f64,
    pub beta: f64,
    pub c0: f64,
    /// `c_0 ..= c_M`
    pub coeffs: Vec<f64>,
}

impl CoefficientTable {
    /// Highest coefficient index held, `M`.
    pub fn max_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    /// `c_0 / 2 + sum_{i=1..=k} c_i`, accumulated from the stored entries.
    pub fn partial_sum(&self, k: usize) -> f64 {
        0.5 * self.coeffs[0] + self.coeffs[1..=k].iter().sum::<f64>()
    }

    /// `sum_{i > k} c_i = c_0 beta^(k+1) / (1 - beta)`, the mass per vertex
    /// still unaccumulated after round `k`.
    pub fn tail(&self, k: usize) -> f64 {
        self.c0 * self.beta.powf(k as f64 + 1.0) / (1.0 - self.beta)
    }

    /// Limit of the partial sums, `c_0 (1 + beta) / (2 (1 - beta))`.
    pub fn total(&self) -> f64 {
        0.5 * self.c0 * (1.0 + self.beta) / (1.0 - self.beta)
    }
}

/// Closed-form coefficients `c_0 ..= c_M`.
pub fn coefficients(c: f64, max_index: usize) -> Result<CoefficientTable> {
    let b = beta(c)?;
    let c0 = 2.0 / (1.0 - c * c).sqrt();
    let coeffs = (0..=max_index).map(|k| c0 * b.powi(k as i32)).collect();
    Ok(CoefficientTable {
        damping: c,
        beta: b,
        c0,
        coeffs,
    })
}

/// Coefficients by adaptive quadrature of their defining integral, each to
/// absolute tolerance `tol`.
pub fn coefficients_quadrature(c: f64, max_index: usize, tol: f64) -> Result<CoefficientTable> {
    let b = beta(c)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain {
            name: "quadrature tolerance",
            value: tol,
            expected: "(0, inf)",
        });
    }
    let coeffs = (0..=max_index)
        .map(|k| {
            let k = k as f64;
            let integral =
                quadrature::integrate(|t| (k * t).cos() / (1.0 - c * t.cos()), 0.0, PI, tol * PI / 2.0)?;
            Ok(2.0 / PI * integral)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(CoefficientTable {
        damping: c,
        beta: b,
        c0: coeffs[0],
        coeffs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxPlan {
    pub rounds: usize,
    pub target_err: f64,
    pub predicted_err: f64,
}

/// Smallest `M` with `err_bound(c, M) <= eps`.
pub fn plan_iterations(c: f64, eps: f64) -> Result<ApproxPlan> {
    check_damping(c)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain {
            name: "target error",
            value: eps,
            expected: "(0, 1)",
        });
    }
    const SEARCH_LIMIT: usize = 1_000_000;
    for rounds in 0..SEARCH_LIMIT {
        let predicted_err = err_bound(c, rounds)?;
        if predicted_err <= eps {
            return Ok(ApproxPlan {
                rounds,
                target_err: eps,
                predicted_err,
            });
        }
    }
    Err(Error::Numeric(format!(
        "no round count below {SEARCH_LIMIT} reaches error {eps} at c = {c}"
    )))
}
