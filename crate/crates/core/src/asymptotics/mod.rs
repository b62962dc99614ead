//! Limit functions of the random graph process.
//!
//! * `u(c)`: limiting number of components per vertex of `G(n, cn/2)`,
//!   `u(c) = (1/c) Σ_{r≥1} r^{r−2}/r! (c e^{−c})^r`.
//! * `u_prime(c)`: its termwise derivative.
//! * `mu(λ) = (u(2λ) + λ − 1) / (2λ)`: limiting genus per edge of `G(n, λn)`.
//! * `lambda_i(i)`: mean of the limiting Poisson count of isolated short
//!   cycles in the slightly supercritical phase, by nested quadrature.
//!
//! Regime classification and contiguity thresholds live in [`regime`].

pub mod quadrature;
pub mod regime;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use regime::{
    contiguity_verdict, predict_genus, Contiguity, Regime, RegimeConfig, RegimeParameter,
    RegimePrediction,
};

/// Hard cap on series terms; reached only for tolerances far below what
/// `f64` can resolve near `c = 1`.
pub const MAX_SERIES_TERMS: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("{name} = {value} is outside the domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("tolerance {tol} not reached: estimate {value} with error bound {error}")]
    ToleranceNotReached { tol: f64, value: f64, error: f64 },
    #[error("m = {m} exceeds C(n, 2) = {max}")]
    EdgeCountOutOfRange { m: u64, max: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesEval {
    pub value: f64,
    /// Index of the last term summed.
    pub truncation_index: u64,
    /// Rigorous bound on the discarded tail (roundoff excluded).
    pub tail_bound: f64,
}

fn finite(name: &'static str, value: f64) -> Result<f64, AsymptoticsError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(AsymptoticsError::NonFinite { name, value })
    }
}

fn check_tol(tol: f64) -> Result<f64, AsymptoticsError> {
    finite("tol", tol)?;
    if tol <= 0.0 {
        return Err(AsymptoticsError::OutOfDomain {
            name: "tol",
            value: tol,
            domain: "(0, ∞)",
        });
    }
    Ok(tol)
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Sum {
    s: f64,
    comp: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.comp += (self.s - t) + x;
        } else {
            self.comp += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.comp
    }
}

/// Walks the terms `t_r = r^{r−2}/r! z^r` with `z = c e^{−c}` in log space,
/// using `t_{r+1}/t_r = z (1 + 1/r)^{r−2}`.
struct TreeTerms {
    log_z: f64,
    r: u64,
    log_t: f64,
}

impl TreeTerms {
    fn new(c: f64) -> Self {
        let log_z = c.ln() - c;
        TreeTerms {
            log_z,
            r: 1,
            log_t: log_z,
        }
    }

    fn term(&self) -> f64 {
        self.log_t.exp()
    }

    fn advance(&mut self) {
        let r = self.r as f64;
        self.log_t += (r - 2.0) * (1.0 / r).ln_1p() + self.log_z;
        self.r += 1;
    }
}

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Bound on `Σ_{r>R} t_r` given `t_{R+1}` and `q = c e^{1−c}`: the smaller
/// of the geometric bound (every ratio is below `q`) and the Stirling bound
/// `t_r ≤ q^r r^{−5/2} / √(2π)`.
fn tail_of_terms(next_term: f64, q: f64, r: f64) -> f64 {
    let geometric = if q < 1.0 {
        next_term / (1.0 - q)
    } else {
        f64::INFINITY
    };
    let stirling = (r + 1.0) * q.ln();
    let stirling = stirling.exp() * (2.0 / 3.0) * r.powf(-1.5) * INV_SQRT_2PI;
    geometric.min(stirling)
}

/// Bound on `Σ_{r>R} r t_r`, same two routes with one power of `r` less
/// decay.
fn tail_of_weighted_terms(next_term: f64, q: f64, r: f64) -> f64 {
    let ratio = q * (1.0 + 1.0 / (r + 1.0));
    let geometric = if ratio < 1.0 {
        (r + 1.0) * next_term / (1.0 - ratio)
    } else {
        f64::INFINITY
    };
    let stirling = ((r + 1.0) * q.ln()).exp() * 2.0 * r.powf(-0.5) * INV_SQRT_2PI;
    geometric.min(stirling)
}

fn q_of(c: f64) -> f64 {
    // c e^{1−c} ≤ 1 with equality at c = 1; clamp roundoff.
    (c.ln() + 1.0 - c).exp().min(1.0)
}

/// `u(c)` summed until the tail bound is below `tol`.
pub fn u(c: f64, tol: f64) -> Result<SeriesEval, AsymptoticsError> {
    finite("c", c)?;
    check_tol(tol)?;
    if c < 0.0 {
        return Err(AsymptoticsError::OutOfDomain {
            name: "c",
            value: c,
            domain: "[0, ∞)",
        });
    }
    if c == 0.0 {
        return Ok(SeriesEval {
            value: 1.0,
            truncation_index: 1,
            tail_bound: 0.0,
        });
    }
    let q = q_of(c);
    if q >= 1.0 {
        // Only the polynomial tail is available; refuse hopeless requests
        // up front instead of summing to the cap.
        let needed = ((2.0 / 3.0) * INV_SQRT_2PI / (tol * c)).powf(2.0 / 3.0);
        if needed > MAX_SERIES_TERMS as f64 {
            return Err(AsymptoticsError::ToleranceNotReached {
                tol,
                value: f64::NAN,
                error: (2.0 / 3.0) * INV_SQRT_2PI * (MAX_SERIES_TERMS as f64).powf(-1.5) / c,
            });
        }
    }
    let mut terms = TreeTerms::new(c);
    let mut sum = Sum::default();
    loop {
        sum.add(terms.term());
        let r = terms.r;
        terms.advance();
        let tail = tail_of_terms(terms.term(), q, r as f64) / c;
        if tail <= tol {
            return Ok(SeriesEval {
                value: sum.value() / c,
                truncation_index: r,
                tail_bound: tail,
            });
        }
        if r >= MAX_SERIES_TERMS {
            return Err(AsymptoticsError::ToleranceNotReached {
                tol,
                value: sum.value() / c,
                error: tail,
            });
        }
    }
}

/// `u′(c) = (1/c²) Σ t_r ((1 − c) r − 1)`, the termwise derivative.
pub fn u_prime(c: f64, tol: f64) -> Result<SeriesEval, AsymptoticsError> {
    finite("c", c)?;
    check_tol(tol)?;
    if c <= 0.0 {
        return Err(AsymptoticsError::OutOfDomain {
            name: "c",
            value: c,
            domain: "(0, ∞)",
        });
    }
    let q = q_of(c);
    let slope = 1.0 - c;
    let scale = 1.0 / (c * c);
    let mut terms = TreeTerms::new(c);
    let mut sum = Sum::default();
    loop {
        let r = terms.r;
        sum.add(terms.term() * (slope * r as f64 - 1.0));
        terms.advance();
        let next = terms.term();
        let rf = r as f64;
        let tail = scale
            * (slope.abs() * tail_of_weighted_terms(next, q, rf) + tail_of_terms(next, q, rf));
        if tail <= tol {
            return Ok(SeriesEval {
                value: sum.value() * scale,
                truncation_index: r,
                tail_bound: tail,
            });
        }
        if r >= MAX_SERIES_TERMS {
            return Err(AsymptoticsError::ToleranceNotReached {
                tol,
                value: sum.value() * scale,
                error: tail,
            });
        }
    }
}

/// `μ(λ) = (u(2λ) + λ − 1) / (2λ)`. Defined for every `λ > 0`; it vanishes
/// on `(0, 1/2]`.
pub fn mu(lambda: f64, tol: f64) -> Result<SeriesEval, AsymptoticsError> {
    finite("lambda", lambda)?;
    check_tol(tol)?;
    if lambda <= 0.0 {
        return Err(AsymptoticsError::OutOfDomain {
            name: "lambda",
            value: lambda,
            domain: "(0, ∞)",
        });
    }
    let two = 2.0 * lambda;
    let inner = u(two, tol * two)?;
    Ok(SeriesEval {
        value: (inner.value + lambda - 1.0) / two,
        truncation_index: inner.truncation_index,
        tail_bound: inner.tail_bound / two,
    })
}

const QUAD_MAX_INTERVALS: usize = 2_000;

/// `λ(i) = (1/√(8π)) ∫_0^i ∫_0^∞ (e^{4x} − 1) y^{−3/2} exp(−x²/(2y) − 2y) dy dx`.
///
/// The inner integral is taken in `t = √y`, which turns the `y^{−3/2}`
/// endpoint into `2 t^{−2} exp(−x²/(2t²))`, smooth and vanishing at
/// `t = 0` for `x > 0`. It is truncated where `exp(−2t²)` falls below a
/// hundredth of its share of the tolerance.
pub fn lambda_i(i: f64, tol: f64) -> Result<f64, AsymptoticsError> {
    finite("i", i)?;
    check_tol(tol)?;
    if i < 0.0 {
        return Err(AsymptoticsError::OutOfDomain {
            name: "i",
            value: i,
            domain: "[0, ∞)",
        });
    }
    if i == 0.0 {
        return Ok(0.0);
    }
    let norm = 1.0 / (8.0 * PI).sqrt();
    let mut inner_failure = None;
    let outer = quadrature::integrate(
        |x| {
            let weight = (4.0 * x).exp_m1() * norm;
            if weight == 0.0 {
                return 0.0;
            }
            // Inner errors, scaled by the weight, add up to at most tol/2.
            let inner_tol = tol / (2.0 * i * weight);
            let t_max = ((100.0 / inner_tol).ln().max(1.0) / 2.0).sqrt();
            let x2 = x * x;
            let f = |t: f64| {
                let t2 = t * t;
                (std::f64::consts::LN_2 - x2 / (2.0 * t2) - 2.0 * t2 - 2.0 * t.ln()).exp()
            };
            match quadrature::integrate(f, 0.0, t_max, inner_tol, QUAD_MAX_INTERVALS) {
                Ok(q) => weight * q.value,
                Err(e) => {
                    inner_failure.get_or_insert(e);
                    weight * e.value
                }
            }
        },
        0.0,
        i,
        tol / 2.0,
        QUAD_MAX_INTERVALS,
    );
    if let Some(e) = inner_failure {
        return Err(AsymptoticsError::ToleranceNotReached {
            tol,
            value: f64::NAN,
            error: e.error,
        });
    }
    outer
        .map(|q| q.value)
        .map_err(|e| AsymptoticsError::ToleranceNotReached {
            tol,
            value: e.value,
            error: e.error,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_reference_values() {
        assert_eq!(u(0.0, 1e-12).unwrap().value, 1.0);
        assert!((u(0.6, 1e-12).unwrap().value - 0.7).abs() < 1e-11);
        let u2 = u(2.0, 1e-13).unwrap();
        assert!((u2.value - 0.161_902_559_472_978_7).abs() < 1e-12);
        assert!(u2.tail_bound <= 1e-13);
        let u6 = u(6.0, 1e-15).unwrap();
        assert!((u6.value - 0.002_497_464_519_221_82).abs() < 1e-14);
        let u40 = u(40.0, 1e-25).unwrap();
        assert!((u40.value / 4.248_354_255_291_589e-18 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn u_at_one_uses_polynomial_tail() {
        let e = u(1.0, 1e-8).unwrap();
        assert!((e.value - 0.5).abs() < 1e-8);
        assert!(e.truncation_index > 1000);
    }

    #[test]
    fn derivative_reference_values() {
        assert!((u_prime(0.5, 1e-12).unwrap().value + 0.5).abs() < 1e-11);
        assert!((u_prime(1.5, 1e-12).unwrap().value + 0.330_165_293_887_215_3).abs() < 1e-10);
        assert!((u_prime(2.0, 1e-12).unwrap().value + 0.182_545_214_726_479_3).abs() < 1e-10);
        assert!((u_prime(3.0, 1e-12).unwrap().value + 0.057_748_881_635_520_51).abs() < 1e-10);
    }

    #[test]
    fn mu_reference_values() {
        assert!(mu(0.5, 1e-10).unwrap().value.abs() < 1e-9);
        assert!((mu(3.0, 1e-12).unwrap().value - 0.333_749_577_419_870_35).abs() < 1e-11);
        assert!((mu(20.0, 1e-12).unwrap().value - 0.475).abs() < 1e-11);
        assert!((mu(50.0, 1e-12).unwrap().value - 0.49).abs() < 1e-11);
        assert!(mu(0.3, 1e-10).unwrap().value.abs() < 1e-9);
    }

    #[test]
    fn lambda_i_reference_values() {
        assert_eq!(lambda_i(0.0, 1e-8).unwrap(), 0.0);
        let l1 = lambda_i(1.0, 1e-9).unwrap();
        assert!((l1 - 2.501_567_433_354_975_6).abs() < 1e-8, "{l1}");
        let l2 = lambda_i(2.0, 1e-9).unwrap();
        assert!((l2 - 9.817_326_911_233_035).abs() < 1e-8, "{l2}");
        let lh = lambda_i(0.5, 1e-9).unwrap();
        assert!((lh - 1.057_250_875_375_728_5).abs() < 1e-8, "{lh}");
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            u(f64::NAN, 1e-6),
            Err(AsymptoticsError::NonFinite { .. })
        ));
        assert!(matches!(
            u(-1.0, 1e-6),
            Err(AsymptoticsError::OutOfDomain { .. })
        ));
        assert!(matches!(
            u(1.0, 0.0),
            Err(AsymptoticsError::OutOfDomain { .. })
        ));
        assert!(u_prime(0.0, 1e-6).is_err());
        assert!(mu(0.0, 1e-6).is_err());
        assert!(lambda_i(-0.1, 1e-6).is_err());
        assert!(matches!(
            u(1.0, 1e-300),
            Err(AsymptoticsError::ToleranceNotReached { .. })
        ));
    }
}
