//! Block entropy under the uniform measure and scaling-law fits.
//!
//! With every admissible word equally likely, `H(n) = ln ω^n`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

/// Default fraction of the series (its tail) used by the entropy-rate estimator.
pub const DEFAULT_WINDOW: f64 = 0.5;

/// Golden-section tolerance on the Power-model exponent.
pub const MU_TOL: f64 = 1e-6;

/// Search interval for the Power-model exponent.
pub const MU_RANGE: (f64, f64) = (0.05, 0.95);

/// Natural log of an exact integer, from its bit length and top 64 bits.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return x
            .to_u64()
            .expect("fits in u64")
            .to_f64()
            .expect("finite")
            .ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyPoint {
    pub n: u64,
    #[serde(serialize_with = "crate::decimal::ser")]
    pub omega: BigUint,
    /// `ln ω`
    pub h: f64,
    /// `(1/n) log₂ ω`
    pub h_top_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropySeries {
    pub points: Vec<EntropyPoint>,
    /// Lengths dropped because no word of that length exists.
    pub excluded: Vec<u64>,
}

impl EntropySeries {
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> crate::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "omega", "H", "h_top_estimate"])?;
        for p in &self.points {
            w.write_record([
                p.n.to_string(),
                p.omega.to_string(),
                p.h.to_string(),
                p.h_top_estimate.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Builds `H(n)` and `(1/n) log₂ ω^n` from `(n, ω^n)` pairs, sorted by `n`.
/// Zero counts are excluded and listed in [`EntropySeries::excluded`].
pub fn entropy_series(counts: impl IntoIterator<Item = (u64, BigUint)>) -> EntropySeries {
    let mut counts: Vec<(u64, BigUint)> = counts.into_iter().collect();
    counts.sort_by_key(|(n, _)| *n);
    let mut points = Vec::with_capacity(counts.len());
    let mut excluded = Vec::new();
    for (n, omega) in counts {
        if omega.is_zero() {
            excluded.push(n);
            continue;
        }
        let h = ln_big(&omega);
        points.push(EntropyPoint {
            n,
            h,
            h_top_estimate: h / std::f64::consts::LN_2 / n as f64,
            omega,
        });
    }
    EntropySeries { points, excluded }
}

/// Least-squares slope of `log₂ ω` against `n` over the final half of the
/// series.
pub fn topological_entropy_estimate(series: &EntropySeries) -> crate::Result<f64> {
    topological_entropy_estimate_window(series, DEFAULT_WINDOW)
}

/// As [`topological_entropy_estimate`], over the final `window` fraction
/// (at least two points).
pub fn topological_entropy_estimate_window(
    series: &EntropySeries,
    window: f64,
) -> crate::Result<f64> {
    let len = series.points.len();
    if len < 2 {
        return Err(crate::Error::InvalidArgument(
            "entropy estimate needs at least two points".into(),
        ));
    }
    if !(window > 0.0 && window <= 1.0) {
        return Err(crate::Error::InvalidArgument(format!(
            "window {window} must lie in (0, 1]"
        )));
    }
    let take = ((len as f64 * window).ceil() as usize).clamp(2, len);
    let tail = &series.points[len - take..];
    let xs: Vec<f64> = tail.iter().map(|p| p.n as f64).collect();
    let ys: Vec<f64> = tail.iter().map(|p| p.h / std::f64::consts::LN_2).collect();
    Ok(linear_fit(&xs, &ys).0)
}

/// Least squares `y = slope x + intercept`; returns `(slope, intercept)`.
fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return (0.0, my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn rms(residuals: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = residuals.fold((0.0, 0usize), |(s, c), r| (s + r * r, c + 1));
    (sum / count as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ScalingModel {
    /// `H = n h + e`
    Linear,
    /// `H = g n^μ + e`
    Power,
    /// `H = g ln n + e`
    Logarithmic,
}

impl std::fmt::Display for ScalingModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScalingModel::Linear => "Linear",
            ScalingModel::Power => "Power",
            ScalingModel::Logarithmic => "Logarithmic",
        })
    }
}

/// One fitted candidate of `H(n) = n h + g n^μ (ln n)^ν + e`.
///
/// `Linear` sets `g = 0`, `μ = 1`; `Power` sets `h = 0`, `ν = 0`;
/// `Logarithmic` sets `h = 0`, `μ = 0`, `ν = 0` with `g` multiplying `ln n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingFit {
    pub model: ScalingModel,
    pub h: f64,
    pub g: f64,
    pub mu: f64,
    pub nu: f64,
    pub e: f64,
    pub residual: f64,
}

impl ScalingFit {
    pub fn predict(&self, n: f64) -> f64 {
        match self.model {
            ScalingModel::Linear => self.h * n + self.e,
            ScalingModel::Power => self.g * n.powf(self.mu) + self.e,
            ScalingModel::Logarithmic => self.g * n.ln() + self.e,
        }
    }
}

/// The selected model plus every candidate, in the order Linear, Power,
/// Logarithmic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub best: ScalingFit,
    pub candidates: Vec<ScalingFit>,
    pub n_min: u64,
    pub n_max: u64,
    pub points: usize,
}

impl FitReport {
    /// Plain-text report: selected model, parameters, all residuals and the
    /// sample range.
    pub fn to_text(&self) -> String {
        let b = &self.best;
        let mut s = String::new();
        let _ = writeln!(s, "model: {}", b.model);
        let _ = writeln!(s, "h: {}", b.h);
        let _ = writeln!(s, "g: {}", b.g);
        let _ = writeln!(s, "mu: {}", b.mu);
        let _ = writeln!(s, "nu: {}", b.nu);
        let _ = writeln!(s, "e: {}", b.e);
        let _ = writeln!(s, "residual: {}", b.residual);
        for c in &self.candidates {
            let _ = writeln!(s, "residual.{}: {}", c.model, c.residual);
        }
        let _ = writeln!(
            s,
            "samples: {} (n = {}..{})",
            self.points, self.n_min, self.n_max
        );
        s
    }
}

/// Fits the Linear, Power and Logarithmic candidates by least squares and
/// returns the one with the smallest RMS residual (earlier candidates win
/// ties).
pub fn fit_scaling(series: &EntropySeries) -> crate::Result<FitReport> {
    fit_scaling_values(&series.points.iter().map(|p| (p.n, p.h)).collect::<Vec<_>>())
}

/// As [`fit_scaling`] on raw `(n, H)` samples, in any log base.
pub fn fit_scaling_values(samples: &[(u64, f64)]) -> crate::Result<FitReport> {
    if samples.len() < 8 {
        return Err(crate::Error::InvalidArgument(format!(
            "scaling fit needs at least 8 points, got {}",
            samples.len()
        )));
    }
    let ns: Vec<f64> = samples.iter().map(|&(n, _)| n as f64).collect();
    let hs: Vec<f64> = samples.iter().map(|&(_, h)| h).collect();
    let n_min = samples.iter().map(|s| s.0).min().expect("non-empty");
    let n_max = samples.iter().map(|s| s.0).max().expect("non-empty");

    let first = hs[0];
    if hs.iter().all(|&h| h == first) {
        let flat = ScalingFit {
            model: ScalingModel::Linear,
            h: 0.0,
            g: 0.0,
            mu: 1.0,
            nu: 0.0,
            e: first,
            residual: 0.0,
        };
        return Ok(FitReport {
            best: flat,
            candidates: vec![flat],
            n_min,
            n_max,
            points: samples.len(),
        });
    }

    let candidates = vec![fit_linear(&ns, &hs), fit_power(&ns, &hs), fit_log(&ns, &hs)];
    let best = *candidates
        .iter()
        .reduce(|a, b| if b.residual < a.residual { b } else { a })
        .expect("three candidates");
    Ok(FitReport {
        best,
        candidates,
        n_min,
        n_max,
        points: samples.len(),
    })
}

fn fit_linear(ns: &[f64], hs: &[f64]) -> ScalingFit {
    let (mut h, mut e) = linear_fit(ns, hs);
    if h < 0.0 {
        h = 0.0;
        e = hs.iter().sum::<f64>() / hs.len() as f64;
    }
    let residual = rms(ns.iter().zip(hs).map(|(n, y)| y - (h * n + e)));
    ScalingFit {
        model: ScalingModel::Linear,
        h,
        g: 0.0,
        mu: 1.0,
        nu: 0.0,
        e,
        residual,
    }
}

fn fit_log(ns: &[f64], hs: &[f64]) -> ScalingFit {
    let xs: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let (g, e) = linear_fit(&xs, hs);
    let residual = rms(xs.iter().zip(hs).map(|(x, y)| y - (g * x + e)));
    ScalingFit {
        model: ScalingModel::Logarithmic,
        h: 0.0,
        g,
        mu: 0.0,
        nu: 0.0,
        e,
        residual,
    }
}

fn power_residual(ns: &[f64], hs: &[f64], mu: f64) -> (f64, f64, f64) {
    let xs: Vec<f64> = ns.iter().map(|n| n.powf(mu)).collect();
    let (g, e) = linear_fit(&xs, hs);
    let r = rms(xs.iter().zip(hs).map(|(x, y)| y - (g * x + e)));
    (r, g, e)
}

/// Golden-section search on `μ` with inner least squares for `(g, e)`.
fn fit_power(ns: &[f64], hs: &[f64]) -> ScalingFit {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = MU_RANGE;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = power_residual(ns, hs, c).0;
    let mut fd = power_residual(ns, hs, d).0;
    while b - a > MU_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = power_residual(ns, hs, c).0;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = power_residual(ns, hs, d).0;
        }
    }
    let mu = (a + b) / 2.0;
    let (residual, g, e) = power_residual(ns, hs, mu);
    ScalingFit {
        model: ScalingModel::Power,
        h: 0.0,
        g,
        mu,
        nu: 0.0,
        e,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::total_series;
    use crate::presets;

    fn series_of(g: &crate::DirectedGraph, n_max: u64) -> EntropySeries {
        entropy_series((1..).zip(total_series(g, n_max).unwrap()))
    }

    #[test]
    fn ln_big_matches_float_for_small_and_large() {
        for v in [1u64, 2, 3, 1000, u64::MAX] {
            let x = BigUint::from(v);
            assert!((ln_big(&x) - (v as f64).ln()).abs() < 1e-12 * (v as f64).ln().max(1.0));
        }
        let big = BigUint::from(3u32).pow(1000);
        let expected = 1000.0 * 3f64.ln();
        assert!(((ln_big(&big) - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn two_cycle_constant_entropy() {
        let s = series_of(&presets::two_cycle(), 20);
        for p in &s.points {
            assert!((p.h - 2f64.ln()).abs() < 1e-15);
        }
    }

    #[test]
    fn complete_graph_rate() {
        let s = series_of(&presets::complete(3), 40);
        for p in &s.points {
            assert!((p.h_top_estimate - 3f64.log2()).abs() < 1e-12);
        }
        let est = topological_entropy_estimate(&s).unwrap();
        assert!((est - 3f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn g1_rate_converges() {
        // H(n)/n - ln μ ≈ ln((15 + 7√5)/10) / n
        let s = series_of(&presets::g1(), 120);
        let mu = (1.0 + 5f64.sqrt()) / 2.0;
        let gap = |n: usize| s.points[n - 1].h / n as f64 - mu.ln();
        assert!(gap(40) < 0.03 && gap(40) > 0.01);
        assert!(gap(120) < 0.01);
        let c = ((15.0 + 7.0 * 5f64.sqrt()) / 10.0f64).ln();
        assert!((gap(120) - c / 120.0).abs() < 1e-12);
    }

    #[test]
    fn zero_counts_are_excluded() {
        let g = crate::DirectedGraph::from_mask(2, 0b0010);
        let s = series_of(&g, 5);
        assert_eq!(s.points.len(), 2);
        assert_eq!(s.excluded, vec![3, 4, 5]);
    }

    #[test]
    fn estimate_needs_two_points() {
        let s = series_of(&presets::g1(), 1);
        assert!(topological_entropy_estimate(&s).is_err());
    }

    #[test]
    fn degenerate_fit() {
        let s = series_of(&presets::two_cycle(), 12);
        let f = fit_scaling(&s).unwrap();
        assert_eq!(f.best.model, ScalingModel::Linear);
        assert_eq!((f.best.h, f.best.g), (0.0, 0.0));
    }

    #[test]
    fn fit_needs_eight_points() {
        let s = series_of(&presets::g1(), 7);
        assert!(fit_scaling(&s).is_err());
    }

    #[test]
    fn recovers_synthetic_power_law() {
        let samples: Vec<(u64, f64)> = (1..=30u64)
            .map(|n| (n * n, 1.7 * ((n * n) as f64).powf(0.4) + 0.3))
            .collect();
        let f = fit_scaling_values(&samples).unwrap();
        assert_eq!(f.best.model, ScalingModel::Power);
        assert!((f.best.mu - 0.4).abs() < 1e-5);
        assert!((f.best.g - 1.7).abs() < 1e-3);
    }

    #[test]
    fn text_report_lists_all_residuals() {
        let f = fit_scaling(&series_of(&presets::g2(), 400)).unwrap();
        assert!(f.best.residual < 0.02);
        let text = f.to_text();
        assert!(text.starts_with("model: Logarithmic"));
        for m in ["Linear", "Power", "Logarithmic"] {
            assert!(text.contains(&format!("residual.{m}:")));
        }
        assert!(text.contains("n = 1..400"));
    }
}
