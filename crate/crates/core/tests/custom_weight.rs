use smoothing_core::report::{build_report, ConstantReport};
use smoothing_core::weights::Tabulated;
use smoothing_core::{Equation, SearchConfig, WeightPair};

fn tabulated_gaussian() -> WeightPair {
    let r: Vec<f64> = (0..=1200).map(|i| i as f64 * 0.01).collect();
    let w = r.iter().map(|t| (-0.5 * t * t).exp()).collect();
    WeightPair::custom(Tabulated::new("gaussian-table", r, w).unwrap())
}

#[test]
fn tabulated_gaussian_tracks_builtin() {
    let cfg = SearchConfig::default();
    let table = build_report(Equation::Schrodinger, 3, &tabulated_gaussian(), &cfg).unwrap();
    let exact = build_report(Equation::Schrodinger, 3, &WeightPair::gaussian(), &cfg).unwrap();
    assert!((table.computed - exact.computed).abs() < 1e-6 * exact.computed);
    assert!(table.warnings.is_empty(), "{:?}", table.warnings);

    let back = ConstantReport::from_json(&table.to_json().unwrap()).unwrap();
    assert_eq!(back, table);
}

#[test]
fn malformed_tables_are_rejected() {
    assert!(Tabulated::new("t", vec![0.0, 1.0], vec![1.0]).is_err());
    assert!(Tabulated::new("t", vec![0.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]).is_err());
    assert!(Tabulated::new("t", vec![0.0, 1.0, 2.0], vec![1.0, f64::NAN, 0.0]).is_err());
}
