use symgraph::entropy::{entropy_series, fit_scaling, fit_scaling_values, ScalingModel};
use symgraph::presets;
use symgraph::total_count;

fn series(g: &symgraph::DirectedGraph, n_max: u64) -> symgraph::entropy::EntropySeries {
    entropy_series((1..=n_max).map(|n| (n, total_count(g, n).unwrap())))
}

#[test]
fn fit_is_invariant_under_log_base() {
    let s = series(&presets::g1(), 200);
    let nats: Vec<(u64, f64)> = s.points.iter().map(|p| (p.n, p.h)).collect();
    let bits: Vec<(u64, f64)> = nats
        .iter()
        .map(|&(n, h)| (n, h / std::f64::consts::LN_2))
        .collect();
    let a = fit_scaling_values(&nats).unwrap();
    let b = fit_scaling_values(&bits).unwrap();
    assert_eq!(a.best.model, b.best.model);
    let scale = 1.0 / std::f64::consts::LN_2;
    assert!((a.best.h * scale - b.best.h).abs() < 1e-9);
    assert!((a.best.residual * scale - b.best.residual).abs() < 1e-9);
    for (x, y) in a.candidates.iter().zip(&b.candidates) {
        assert!((x.mu - y.mu).abs() < 1e-4, "{:?}", x.model);
    }
}

#[test]
fn recovers_synthetic_power_law() {
    let samples: Vec<(u64, f64)> = (1..=40u64)
        .map(|t| {
            let n = (t + 1).pow(4);
            (n, 1.7 * (n as f64).powf(0.5) - 3.0)
        })
        .collect();
    let fit = fit_scaling_values(&samples).unwrap();
    assert_eq!(fit.best.model, ScalingModel::Power);
    assert!((fit.best.mu - 0.5).abs() < 1e-5);
    assert!((fit.best.g - 1.7).abs() < 1e-3);
    assert!((fit.best.e + 3.0).abs() < 1e-2);
}

#[test]
fn recovers_synthetic_linear_and_log() {
    let lin: Vec<(u64, f64)> = (1..=50).map(|n| (n, 0.4 * n as f64 + 1.0)).collect();
    let fit = fit_scaling_values(&lin).unwrap();
    assert_eq!(fit.best.model, ScalingModel::Linear);
    assert!((fit.best.h - 0.4).abs() < 1e-12);

    let log: Vec<(u64, f64)> = (1..=50).map(|n| (n, 2.5 * (n as f64).ln() + 0.3)).collect();
    let fit = fit_scaling_values(&log).unwrap();
    assert_eq!(fit.best.model, ScalingModel::Logarithmic);
    assert!((fit.best.g - 2.5).abs() < 1e-9);
}

#[test]
fn single_graph_models() {
    assert_eq!(
        fit_scaling(&series(&presets::complete(3), 60))
            .unwrap()
            .best
            .model,
        ScalingModel::Linear
    );
    assert_eq!(
        fit_scaling(&series(&presets::g1(), 200))
            .unwrap()
            .best
            .model,
        ScalingModel::Linear
    );
    assert_eq!(
        fit_scaling(&series(&presets::g2(), 400))
            .unwrap()
            .best
            .model,
        ScalingModel::Logarithmic
    );
}

#[test]
fn too_few_samples_is_an_error() {
    assert!(fit_scaling(&series(&presets::g1(), 5)).is_err());
}
