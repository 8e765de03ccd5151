mod common;

use proptest::prelude::*;

use richrt::repetition::{
    exponent, find_even_power, is_power_free, max_exponent_factor, maximal_repetitions, smallest_period,
    IncrementalPowerFree,
};
use richrt::{Parallelism, Rational, Threshold};

#[test]
fn smallest_period_exhaustive_to_14() {
    common::for_each_word(&[0, 1, 2], 14, |w| {
        assert_eq!(smallest_period(w).unwrap(), common::smallest_period(w), "{w:?}");
    });
}

#[test]
fn even_powers_exhaustive_to_12() {
    for r in [Rational::integer(2), Rational::new(7, 3).unwrap(), Rational::new(3, 2).unwrap()] {
        common::for_each_word(&[0, 1, 2], 12, |w| {
            let fast = find_even_power(w, r).unwrap().map(|e| (e.occurrence.start, e.occurrence.end, e.period));
            assert_eq!(fast, common::even_power(w, r), "{w:?} at {r}");
        });
    }
}

#[test]
fn even_power_needs_exponent_above_one() {
    assert!(find_even_power(&[0, 0], Rational::integer(1)).is_err());
}

fn threshold() -> impl Strategy<Value = Threshold> {
    (2i64..12, 1i64..5, any::<bool>())
        .prop_filter("above one", |(n, d, _)| n > d)
        .prop_map(|(n, d, s)| Threshold::new(Rational::new(n, d).unwrap(), s))
}

fn word(alphabet: u8, max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..alphabet, 1..max)
}

proptest! {
    #[test]
    fn max_exponent_matches_brute_force(w in word(3, 30)) {
        let (e, occ) = max_exponent_factor(&w).unwrap();
        prop_assert_eq!(e, common::max_exponent(&w));
        prop_assert_eq!(exponent(occ.slice(&w)).unwrap(), e);
    }

    #[test]
    fn power_free_iff_max_exponent_below(w in word(3, 30), t in threshold()) {
        let (e, _) = max_exponent_factor(&w).unwrap();
        let fails = if t.strict { e > t.exponent } else { e >= t.exponent };
        prop_assert_eq!(is_power_free(&w, &t).unwrap(), !fails);
        prop_assert_eq!(is_power_free(&w, &t).unwrap(), common::power_free(&w, t.exponent, t.strict));
    }

    #[test]
    fn incremental_conjunction_is_batch(w in word(4, 40), t in threshold()) {
        let mut inc = IncrementalPowerFree::new(t).unwrap();
        let mut all = true;
        for &a in &w {
            all &= inc.push(a);
        }
        prop_assert_eq!(all, is_power_free(&w, &t).unwrap());
    }

    #[test]
    fn runs_are_maximal_with_smallest_period(w in word(2, 60)) {
        let t: Threshold = "2".parse().unwrap();
        for par in [Parallelism::Sequential, Parallelism::Parallel { threads: 0 }] {
            let runs = maximal_repetitions(&w, &t, w.len(), par);
            for r in &runs {
                let f = &w[r.start..=r.end];
                prop_assert_eq!(common::smallest_period(f), r.period);
                prop_assert!(r.exponent() >= Rational::integer(2));
                prop_assert!(r.start == 0 || w[r.start - 1] != w[r.start - 1 + r.period]);
                prop_assert!(r.end + 1 == w.len() || w[r.end + 1] != w[r.end + 1 - r.period]);
            }
            // Every square lies in some reported run.
            for i in 0..w.len() {
                for p in 1..=(w.len() - i) / 2 {
                    if common::has_period(&w[i..i + 2 * p], p) && common::smallest_period(&w[i..i + 2 * p]) == p {
                        prop_assert!(runs.iter().any(|r| r.period == p && r.start <= i && i + 2 * p - 1 <= r.end),
                            "square at {} period {} missed", i, p);
                    }
                }
            }
        }
    }
}
