//! Finite-`n` classification of `(n, m)` into the genus regimes of the
//! random graph `G(n, m)`, and contiguity verdicts against uniformly random
//! graphs of given genus.
//!
//! The regimes are asymptotic statements, so every cutoff below is a
//! configurable choice. Rules are tried in order and the first match wins:
//!
//! 1. `m < n/2 − w n^{2/3}`: planar subcritical, genus 0.
//! 2. `|m − n/2| ≤ w n^{2/3}`: critical window, genus in `[0, 8s₊³/(3n²)]`.
//! 3. `s = m − n/2 ≤ f n`: slightly supercritical, `8s³/(3n²)`.
//! 4. `m / n² ≥ d`: dense, `m/6`.
//! 5. `m < n ln n`: linear, `μ(m/n) m`.
//! 6. `m ≤ n^{1+a}`: near linear, `[(1−δ) m/2, m/2]`.
//! 7. `m / n^{1+1/j}` within a factor `F` of 1 for `j = round(1/α) ≥ 2`,
//!    `α = log_n(m/n)`: boundary between power-law rows, interval
//!    `[(j−1)m/(2(j+1)), jm/(2(j+2))]`.
//! 8. otherwise power-law gap with `j = ⌊1/α⌋`, `jm/(2(j+2))`.
//!
//! With the default `a = 0.05`, rule 6 is empty unless `n^{0.05} > ln n`,
//! i.e. for astronomically large `n`; raise `a` to see it at desk scale.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{mu, AsymptoticsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    PlanarSubcritical,
    CriticalWindow,
    SlightlySupercritical,
    Linear,
    NearLinear,
    PowerLawGap,
    PowerLawBoundary,
    Dense,
}

impl Regime {
    pub const ALL: [Regime; 8] = [
        Regime::PlanarSubcritical,
        Regime::CriticalWindow,
        Regime::SlightlySupercritical,
        Regime::Linear,
        Regime::NearLinear,
        Regime::PowerLawGap,
        Regime::PowerLawBoundary,
        Regime::Dense,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::PlanarSubcritical => "planar_subcritical",
            Regime::CriticalWindow => "critical_window",
            Regime::SlightlySupercritical => "slightly_supercritical",
            Regime::Linear => "linear",
            Regime::NearLinear => "near_linear",
            Regime::PowerLawGap => "power_law_gap",
            Regime::PowerLawBoundary => "power_law_boundary",
            Regime::Dense => "dense",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeParameter {
    /// `s = m − n/2`.
    S(f64),
    /// `λ = m / n`.
    Lambda(f64),
    J(u32),
    /// `c = m / n²`.
    Density(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeConfig {
    /// `w`: half-width of the critical window in units of `n^{2/3}`.
    pub window_width: f64,
    /// `f`: largest `s / n` still called slightly supercritical.
    pub supercritical_max_fraction: f64,
    /// `a`: near-linear while `m ≤ n^{1+a}`.
    pub near_linear_max_exponent: f64,
    /// `δ`: relative width of the near-linear interval below `m/2`.
    pub near_linear_delta: f64,
    /// `F`: multiplicative band around `n^{1+1/j}` counted as a boundary.
    pub boundary_band: f64,
    /// `d`: smallest `m / n²` called dense.
    pub dense_min_density: f64,
    /// Tolerance for `μ` in the linear regime.
    pub series_tol: f64,
}

impl Default for RegimeConfig {
    fn default() -> Self {
        RegimeConfig {
            window_width: 1.0,
            supercritical_max_fraction: 0.1,
            near_linear_max_exponent: 0.05,
            near_linear_delta: 0.05,
            boundary_band: 2.0,
            dense_min_density: 0.125,
            series_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimePrediction {
    pub regime: Regime,
    pub lo: f64,
    pub hi: f64,
    pub parameter: RegimeParameter,
}

impl RegimePrediction {
    fn point(regime: Regime, value: f64, parameter: RegimeParameter) -> Self {
        RegimePrediction {
            regime,
            lo: value,
            hi: value,
            parameter,
        }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

fn slightly_supercritical_genus(n: f64, s: f64) -> f64 {
    8.0 * s.powi(3) / (3.0 * n * n)
}

pub fn predict_genus(
    n: u64,
    m: u64,
    config: &RegimeConfig,
) -> Result<RegimePrediction, AsymptoticsError> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(AsymptoticsError::EdgeCountOutOfRange { m, max });
    }
    let (nf, mf) = (n as f64, m as f64);
    let window = config.window_width * nf.powf(2.0 / 3.0);
    let s = mf - nf / 2.0;
    if s < -window {
        return Ok(RegimePrediction::point(
            Regime::PlanarSubcritical,
            0.0,
            RegimeParameter::S(s),
        ));
    }
    if s <= window {
        let hi = slightly_supercritical_genus(nf, s.max(0.0));
        return Ok(RegimePrediction {
            regime: Regime::CriticalWindow,
            lo: 0.0,
            hi,
            parameter: RegimeParameter::S(s),
        });
    }
    if s <= config.supercritical_max_fraction * nf {
        return Ok(RegimePrediction::point(
            Regime::SlightlySupercritical,
            slightly_supercritical_genus(nf, s),
            RegimeParameter::S(s),
        ));
    }
    let density = mf / (nf * nf);
    if density >= config.dense_min_density {
        return Ok(RegimePrediction::point(
            Regime::Dense,
            mf / 6.0,
            RegimeParameter::Density(density),
        ));
    }
    let lambda = mf / nf;
    if mf < nf * nf.ln() {
        let mu = mu(lambda, config.series_tol)?.value;
        return Ok(RegimePrediction::point(
            Regime::Linear,
            mu * mf,
            RegimeParameter::Lambda(lambda),
        ));
    }
    let alpha = lambda.ln() / nf.ln();
    if alpha <= config.near_linear_max_exponent {
        return Ok(RegimePrediction {
            regime: Regime::NearLinear,
            lo: (1.0 - config.near_linear_delta) * mf / 2.0,
            hi: mf / 2.0,
            parameter: RegimeParameter::Lambda(lambda),
        });
    }
    let j_round = (1.0 / alpha).round();
    if j_round >= 2.0 {
        let ratio = mf / nf.powf(1.0 + 1.0 / j_round);
        if ratio >= 1.0 / config.boundary_band && ratio <= config.boundary_band {
            let j = j_round;
            return Ok(RegimePrediction {
                regime: Regime::PowerLawBoundary,
                lo: (j - 1.0) * mf / (2.0 * (j + 1.0)),
                hi: j * mf / (2.0 * (j + 2.0)),
                parameter: RegimeParameter::J(j as u32),
            });
        }
    }
    let j = (1.0 / alpha).floor().max(1.0);
    Ok(RegimePrediction::point(
        Regime::PowerLawGap,
        j * mf / (2.0 * (j + 2.0)),
        RegimeParameter::J(j as u32),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Contiguity {
    Contiguous,
    NotContiguous,
    Undetermined,
}

impl fmt::Display for Contiguity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Contiguity::Contiguous => "contiguous",
            Contiguity::NotContiguous => "not_contiguous",
            Contiguity::Undetermined => "undetermined",
        })
    }
}

/// Compares a uniformly random graph of genus at most `g` with `G(n)`
/// (`m = None`) or with `G(n, m)`. The two models agree asymptotically once
/// `g` clears the typical genus of the random graph by a factor `1 + eps`
/// and differ once `g` falls below it by `1 − eps`. Near the planarity
/// threshold no verdict is given.
pub fn contiguity_verdict(
    n: u64,
    m: Option<u64>,
    g: f64,
    eps: f64,
    config: &RegimeConfig,
) -> Result<Contiguity, AsymptoticsError> {
    super::finite("g", g)?;
    super::finite("eps", eps)?;
    if eps <= 0.0 {
        return Err(AsymptoticsError::OutOfDomain {
            name: "eps",
            value: eps,
            domain: "(0, ∞)",
        });
    }
    let (lo, hi) = match m {
        None => {
            let typical = (n as f64).powi(2) / 24.0;
            (typical, typical)
        }
        Some(m) => {
            let p = predict_genus(n, m, config)?;
            match p.regime {
                Regime::PlanarSubcritical | Regime::CriticalWindow => {
                    return Ok(Contiguity::Undetermined)
                }
                Regime::NearLinear => {
                    // Genus never exceeds m/2 in this range.
                    if g >= p.hi {
                        return Ok(Contiguity::Contiguous);
                    }
                    (p.hi, p.hi)
                }
                _ => (p.lo, p.hi),
            }
        }
    };
    Ok(if g >= (1.0 + eps) * hi {
        Contiguity::Contiguous
    } else if g <= (1.0 - eps) * lo {
        Contiguity::NotContiguous
    } else {
        Contiguity::Undetermined
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn predict(n: u64, m: u64) -> RegimePrediction {
        predict_genus(n, m, &RegimeConfig::default()).unwrap()
    }

    #[test]
    fn worked_examples() {
        let n = 1_000_000u64;
        let s = 31_623u64;
        let p = predict(n, n / 2 + s);
        assert_eq!(p.regime, Regime::SlightlySupercritical);
        assert!((p.lo - 84.329_191_470_312).abs() < 1e-9);

        let p = predict(10_000, 30_000);
        assert_eq!(p.regime, Regime::Linear);
        assert!((p.lo - 0.333_749_577_419_870_35 * 30_000.0).abs() < 1e-6);

        let m = 1000 * 999 / 2 / 2;
        let p = predict(1000, m);
        assert_eq!(p.regime, Regime::Dense);
        assert_eq!(p.lo, m as f64 / 6.0);
    }

    #[test]
    fn below_and_inside_window() {
        let n = 1_000_000u64;
        assert_eq!(predict(n, 400_000).regime, Regime::PlanarSubcritical);
        assert_eq!(predict(n, 400_000).hi, 0.0);
        let p = predict(n, 500_000 - 5_000);
        assert_eq!((p.regime, p.lo, p.hi), (Regime::CriticalWindow, 0.0, 0.0));
        let p = predict(n, 500_000 + 5_000);
        assert_eq!(p.regime, Regime::CriticalWindow);
        assert!(p.hi > 0.0);
    }

    #[test]
    fn power_law_rows() {
        let n = 10_000u64;
        // m = n^{1.5} sits on the j = 2 boundary.
        let p = predict(n, 1_000_000);
        assert_eq!(p.regime, Regime::PowerLawBoundary);
        assert_eq!(p.parameter, RegimeParameter::J(2));
        assert!(p.lo < p.hi);
        // n^{1.42}: between the j = 2 and j = 3 boundaries.
        let p = predict(n, 478_630);
        assert_eq!(p.regime, Regime::PowerLawGap);
        assert_eq!(p.parameter, RegimeParameter::J(2));
        assert!((p.lo - 478_630.0 / 4.0).abs() < 1e-6);
    }

    #[test]
    fn near_linear_needs_a_wider_exponent() {
        let n = 10_000u64;
        let m = 150_000u64; // above n ln n ≈ 92 103
        assert_ne!(predict(n, m).regime, Regime::NearLinear);
        let wide = RegimeConfig {
            near_linear_max_exponent: 0.3,
            ..RegimeConfig::default()
        };
        let p = predict_genus(n, m, &wide).unwrap();
        assert_eq!(p.regime, Regime::NearLinear);
        assert_eq!(p.hi, m as f64 / 2.0);
    }

    #[test]
    fn rejects_too_many_edges() {
        assert!(predict_genus(10, 46, &RegimeConfig::default()).is_err());
    }

    #[test]
    fn contiguity_examples() {
        let c = RegimeConfig::default();
        let n = 1000u64;
        let nf = n as f64;
        let v = |g: f64| contiguity_verdict(n, None, g, 0.1, &c).unwrap();
        assert_eq!(v(nf * nf / 20.0), Contiguity::Contiguous);
        assert_eq!(v(nf * nf / 30.0), Contiguity::NotContiguous);
        assert_eq!(v(nf * nf / 24.0), Contiguity::Undetermined);
        assert_eq!(
            contiguity_verdict(n, Some(100), 5.0, 0.1, &c).unwrap(),
            Contiguity::Undetermined
        );
        let m = 3000u64;
        let g = 0.3337 * m as f64;
        assert_eq!(
            contiguity_verdict(n, Some(m), 1.2 * g, 0.1, &c).unwrap(),
            Contiguity::Contiguous
        );
        assert_eq!(
            contiguity_verdict(n, Some(m), 0.8 * g, 0.1, &c).unwrap(),
            Contiguity::NotContiguous
        );
    }
}
