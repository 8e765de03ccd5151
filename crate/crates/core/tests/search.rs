mod common;

use proptest::prelude::*;

use richrt::morphic::{FHAT, TAU};
use richrt::search::presets;
use richrt::search::{longest_word, satisfies_all, CheckerSet, Pipeline, Predicate, SearchConfig, Stage};
use richrt::{Parallelism, Threshold};

fn pf(s: &str) -> Predicate {
    Predicate::PowerFree(s.parse::<Threshold>().unwrap())
}

fn tau_image(inner: Vec<Predicate>) -> Predicate {
    Predicate::Image { pipeline: Pipeline::new(vec![Stage::Transducer(TAU.clone())]), inner }
}

fn naive(alphabet: u8, preds: &[Predicate], depth: usize) -> (Vec<u8>, u64) {
    let letters: Vec<u8> = (0..alphabet).collect();
    let mut best = Vec::new();
    let mut nodes = 0;
    for w in common::all_words(&letters, depth).into_iter().skip(1) {
        if (1..=w.len()).all(|k| satisfies_all(preds, &w[..k]).unwrap()) {
            nodes += 1;
            if w.len() > best.len() {
                best = w;
            }
        }
    }
    (best, nodes)
}

#[test]
fn agrees_with_naive_enumeration() {
    let cases: Vec<(u8, Vec<Predicate>, usize)> = vec![
        (2, vec![pf("5/2")], 12),
        (2, vec![pf("2+"), Predicate::Rich], 12),
        (4, vec![pf("3/2+")], 7),
        (3, vec![tau_image(vec![pf("16/7"), Predicate::Rich])], 9),
        (3, vec![Predicate::NoPoorFactor { pipeline: Pipeline::new(vec![]), window: 6 }, pf("3")], 9),
    ];
    for (alphabet, preds, depth) in cases {
        let (best, nodes) = naive(alphabet, &preds, depth);
        let mut cfg = SearchConfig::new(alphabet, preds.clone()).with_parallelism(Parallelism::Sequential);
        cfg.max_length = Some(depth);
        let r = longest_word(&cfg).unwrap();
        assert_eq!(r.witness.letters(), best.as_slice(), "{preds:?}");
        assert_eq!(r.nodes, nodes, "{preds:?}");
    }
}

#[test]
fn results_do_not_depend_on_schedule() {
    for name in ["no_00", "table1_102", "y_binary", "sigma2_psi"] {
        let base = presets::by_name(name).unwrap().config();
        let reference = longest_word(&base.clone().with_parallelism(Parallelism::Sequential)).unwrap();
        for threads in [0, 1, 2, 3] {
            for split in [1, 4, 8] {
                let mut cfg = base.clone().with_parallelism(Parallelism::Parallel { threads });
                cfg.split_depth = split;
                assert_eq!(longest_word(&cfg).unwrap(), reference, "{name} threads={threads} split={split}");
            }
        }
    }
}

#[test]
fn prefix_is_respected() {
    let cfg = SearchConfig::new(3, vec![pf("7/3"), Predicate::Rich]).with_prefix(&[1, 0, 2]);
    let r = longest_word(&cfg).unwrap();
    assert_eq!(r.length, 152);
    assert!(r.witness.letters().starts_with(&[1, 0, 2]));
    assert!(satisfies_all(&cfg.predicates, r.witness.letters()).unwrap());
}

fn predicate_mix() -> Vec<Predicate> {
    vec![
        pf("7/3"),
        Predicate::Rich,
        Predicate::NoFactorFrom(vec![vec![1, 1], vec![0, 2, 0, 2]]),
        tau_image(vec![pf("16/7"), Predicate::Rich]),
        Predicate::NoPoorFactor { pipeline: Pipeline::new(vec![Stage::Morphism(FHAT.clone())]), window: 16 },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rollback_matches_replay(ops in prop::collection::vec(prop_oneof![3 => (0u8..3).prop_map(Some), 1 => Just(None)], 0..120)) {
        let preds = predicate_mix();
        let mut set = CheckerSet::new(&preds).unwrap();
        let mut word: Vec<u8> = Vec::new();
        for op in ops {
            match op {
                Some(a) => {
                    if set.push(a) {
                        word.push(a);
                    } else {
                        set.pop();
                    }
                }
                None if !word.is_empty() => {
                    word.pop();
                    set.pop();
                }
                None => {}
            }
            prop_assert_eq!(set.depth(), word.len());
        }
        prop_assert!(satisfies_all(&preds, &word).unwrap());
        let mut fresh = CheckerSet::new(&preds).unwrap();
        for &a in &word {
            prop_assert!(fresh.push(a));
        }
        for a in 0..3 {
            let x = set.push(a);
            set.pop();
            let y = fresh.push(a);
            fresh.pop();
            prop_assert_eq!(x, y);
        }
    }
}
