use cubicgap_certify::{fekete_finiteness, FeketeVerdict};
use cubicgap_core::enumerate_cubic_multigraphs;

fn distinct(values: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &v in values {
        if out.last().map_or(true, |&l| v - l > 1e-6) {
            out.push(v);
        }
    }
    out
}

#[test]
fn verdicts_agree_with_eigensolves() {
    let mut checked = 0;
    for n in (4..=10).step_by(2) {
        for g in enumerate_cubic_multigraphs(n, false, false).unwrap() {
            let spec = g.spectrum();
            let values = distinct(&spec.values);
            for mask in 1u32..(1 << values.len()) {
                let set: Vec<f64> =
                    values.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                let contained = spec.values.iter().all(|&v| set.iter().any(|&f| (v - f).abs() < 1e-9));
                let r = fekete_finiteness(&g, &set).unwrap();
                let want =
                    if contained { FeketeVerdict::Contained } else { FeketeVerdict::SpectrumNotContained };
                assert_eq!(r.verdict, want, "{} with {set:?}", g.name);
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}
