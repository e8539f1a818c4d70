use gapseries::measure::{
    h1_measure_of_log_image, h_log_measure, h_measure, numeric_inverse, Builtin, IntervalSet,
    InverseOpts, MonotoneFn,
};
use proptest::prelude::*;

fn disjoint_pairs() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.01f64..2.0, 0.01f64..2.0), 1..20).prop_map(|steps| {
        let mut at = 1.0;
        steps
            .into_iter()
            .map(|(skip, len)| {
                at += skip;
                let iv = (at, at + len);
                at += len;
                iv
            })
            .collect()
    })
}

/// Composite Simpson rule with `n` panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

proptest! {
    #[test]
    fn h_measure_is_additive(pairs in disjoint_pairs(), split in 0usize..20) {
        let h = Builtin::power(2.0);
        let k = split.min(pairs.len());
        let whole = IntervalSet::from_pairs(pairs.clone()).unwrap();
        let left = IntervalSet::from_pairs(pairs[..k].to_vec()).unwrap();
        let right = IntervalSet::from_pairs(pairs[k..].to_vec()).unwrap();
        let total = h_measure(&h, &whole).unwrap();
        let parts = h_measure(&h, &left).unwrap() + h_measure(&h, &right).unwrap();
        prop_assert!((total - parts).abs() <= 1e-10 * total.max(1.0));
    }

    #[test]
    fn h_measure_is_monotone(pairs in disjoint_pairs(), drop in 0usize..20) {
        let h = Builtin::XLog;
        let whole = IntervalSet::from_pairs(pairs.clone()).unwrap();
        let mut fewer = pairs;
        fewer.remove(drop % fewer.len());
        let sub = IntervalSet::from_pairs(fewer).unwrap();
        prop_assert!(sub.is_subset_of(&whole));
        prop_assert!(h_measure(&h, &sub).unwrap() <= h_measure(&h, &whole).unwrap());
    }

    #[test]
    fn numeric_inverse_round_trips(t in 0.0f64..1e6) {
        let h = Builtin::XLog;
        let x = numeric_inverse(&h, t, &InverseOpts::default()).unwrap();
        prop_assert!((h.value(x) - t).abs() <= 1e-9 * t.max(1.0));
    }

    #[test]
    fn substitution_identity(pairs in disjoint_pairs()) {
        let set = IntervalSet::from_pairs(pairs).unwrap();
        let hs = [Builtin::Identity, Builtin::power(2.0), Builtin::Exp { rate: 1.0 }];
        for h in &hs {
            let a = h_log_measure(h, &set, 1e-11).unwrap();
            let b = h1_measure_of_log_image(h, &set, 1e-11).unwrap();
            prop_assert!((a - b).abs() <= 1e-8 * a.max(1.0), "{h:?}: {a} vs {b}");
        }
    }
}

#[test]
fn h_log_measure_against_closed_forms_and_simpson() {
    let set = IntervalSet::from_pairs([(1.5, 2.0), (3.0, 7.5)]).unwrap();
    let id = h_log_measure(&Builtin::Identity, &set, 1e-12).unwrap();
    approx::assert_relative_eq!(
        id,
        (2.0f64 / 1.5).ln() + (7.5f64 / 3.0).ln(),
        max_relative = 1e-12
    );
    let sq = h_log_measure(&Builtin::power(2.0), &set, 1e-12).unwrap();
    approx::assert_relative_eq!(sq, 2.0 * (0.5 + 4.5), max_relative = 1e-12);
    let ex = h_log_measure(&Builtin::Exp { rate: 1.0 }, &set, 1e-12).unwrap();
    let oracle =
        simpson(|r| r.exp() / r, 1.5, 2.0, 20_000) + simpson(|r| r.exp() / r, 3.0, 7.5, 20_000);
    approx::assert_relative_eq!(ex, oracle, max_relative = 1e-11);
}
