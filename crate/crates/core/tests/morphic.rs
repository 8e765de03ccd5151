mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use richrt::morphic::{self, outer_length, z_prefix, Morphism, F, G, TAU};
use richrt::search::forbidden::{fractional_power, outer_image};
use richrt::word::{parikh_letters, sister_letters};

fn outer(w: &[u8], n: usize) -> usize {
    TAU.transduce(&G.apply(&F.power(w, n).unwrap()).unwrap()).unwrap().len()
}

#[test]
fn image_lengths_are_ordered() {
    for n in 0..=12 {
        let l: Vec<usize> = (0..3).map(|a| F.power(&[a], n).unwrap().len()).collect();
        assert!(l[2] <= l[0] && l[0] <= l[1] && l[1] <= 2 * l[2], "f^{n}: {l:?}");
        let t: Vec<usize> = (0..3).map(|a| outer(&[a], n)).collect();
        assert!(t[2] <= t[0] && t[0] <= t[1] && t[1] <= 2 * t[2], "outer {n}: {t:?}");
        for a in 0..3u8 {
            let mut p = [0u64; 3];
            p[a as usize] = 1;
            assert_eq!(outer_length(&p, n).unwrap() as usize, t[a as usize]);
        }
    }
}

#[test]
fn sister_closure_in_z() {
    let z = z_prefix(100_000);
    for m in 1..=30 {
        let factors: HashSet<&[u8]> = z.windows(m).collect();
        for f in &factors {
            assert!(factors.contains(sister_letters(f).as_slice()), "sister of {f:?} missing");
        }
    }
}

#[test]
fn fixed_point_and_parse() {
    let f = Morphism::parse("f", "0 -> 01\n1 -> 022\n2 -> 02").unwrap();
    assert_eq!(f.images(), F.images());
    assert!(F.is_prolongable(0) && !F.is_prolongable(1));
    let x = morphic::x_prefix(200);
    assert_eq!(F.apply(&x[..100]).unwrap()[..200], x[..]);
    assert_eq!(F.incidence_matrix(), vec![vec![1, 1, 1], vec![1, 0, 0], vec![0, 2, 1]]);
}

fn even_twos_word() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..3, 1..8).prop_filter("even number of 2s", |w| common::twos(w).is_multiple_of(2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn even_twos_are_preserved(p in even_twos_word(), n in 0usize..=10) {
        prop_assert_eq!(common::twos(&F.power(&p, n).unwrap()) % 2, 0);
    }

    #[test]
    fn parikh_drives_outer_length(w in prop::collection::vec(0u8..3, 1..10), n in 0usize..=6) {
        let p = parikh_letters(&w, 3);
        prop_assert_eq!(outer_length(&p, n).unwrap() as usize, outer(&w, n));
    }

    #[test]
    fn even_powers_keep_their_period(p in even_twos_word(), extra in 0usize..8, n in 0usize..=4) {
        let num = 2 * p.len() + extra.min(p.len());
        let x = fractional_power(&p, num, p.len());
        let image = outer_image(&x, n);
        let q = outer_image(&p, n).len();
        prop_assert!(common::has_period(&image, q));
    }
}
