//! Periods, exponents and power-freeness.

use std::cmp::Ordering;

use crate::error::{domain, Result};
use crate::parallel::{map_collect, Parallelism};
pub use crate::rational::{Rational, Threshold};
use crate::word::Occurrence;

/// `fail[i]` is the length of the longest proper border of `w[..=i]`.
pub fn border_array(w: &[u8]) -> Vec<usize> {
    let mut fail = vec![0usize; w.len()];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

pub fn smallest_period(w: &[u8]) -> Result<usize> {
    if w.is_empty() {
        return domain("the empty word has no period");
    }
    Ok(w.len() - border_array(w)[w.len() - 1])
}

pub fn exponent(w: &[u8]) -> Result<Rational> {
    Ok(Rational::ratio(w.len(), smallest_period(w)?))
}

/// Largest exponent of a factor of `w`, with a witness. Ties go to the
/// shortest witness, then the leftmost.
pub fn max_exponent_factor(w: &[u8]) -> Result<(Rational, Occurrence)> {
    if w.is_empty() {
        return domain("the empty word has no factors");
    }
    let mut best = (Rational::integer(1), Occurrence::new(0, 0));
    for i in 0..w.len() {
        let fail = border_array(&w[i..]);
        for (off, &b) in fail.iter().enumerate() {
            let len = off + 1;
            let e = Rational::ratio(len, len - b);
            let better = match e.cmp(&best.0) {
                Ordering::Greater => true,
                Ordering::Equal => len < best.1.len(),
                Ordering::Less => false,
            };
            if better {
                best = (e, Occurrence::new(i, i + off));
            }
        }
    }
    Ok(best)
}

fn check_threshold(t: &Threshold) -> Result<()> {
    if t.exponent <= Rational::integer(1) {
        return domain(format!("power-freeness threshold {t} must exceed 1"));
    }
    Ok(())
}

/// No factor has exponent at or above the threshold (or strictly above it,
/// for a strict threshold).
pub fn is_power_free(w: &[u8], t: &Threshold) -> Result<bool> {
    check_threshold(t)?;
    let n = w.len();
    for p in 1..n {
        let mut run = 0;
        for k in 0..n - p {
            if w[k] == w[k + p] {
                run += 1;
                if t.forbids(run + p, p) {
                    return Ok(false);
                }
            } else {
                run = 0;
            }
        }
    }
    Ok(true)
}

/// Incremental suffix test used by the searches. The word held here is
/// assumed power-free; `push` reports whether the extended word still is.
/// Only suffixes need examining, one candidate period at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncrementalPowerFree {
    threshold: Threshold,
    word: Vec<u8>,
}

impl IncrementalPowerFree {
    pub fn new(threshold: Threshold) -> Result<Self> {
        check_threshold(&threshold)?;
        Ok(IncrementalPowerFree { threshold, word: Vec::new() })
    }

    pub fn threshold(&self) -> Threshold {
        self.threshold
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Appends `a` and returns whether no suffix of the new word is a
    /// forbidden power. The letter is kept either way; undo with `pop`.
    pub fn push(&mut self, a: u8) -> bool {
        self.word.push(a);
        suffix_ok(&self.word, &self.threshold)
    }

    pub fn pop(&mut self) {
        self.word.pop();
    }
}

/// Whether no suffix of `w` is a forbidden power.
pub fn suffix_ok(w: &[u8], t: &Threshold) -> bool {
    let n = w.len();
    if n < 2 {
        return true;
    }
    let last = n - 1;
    for p in 1..n {
        // A suffix with period p has length p + (trailing matches).
        let need = t.exponent.ceil_times(p);
        if need > n {
            // Larger periods need even longer suffixes.
            break;
        }
        let mut len = p;
        let mut k = last;
        while k >= p && w[k] == w[k - p] {
            len += 1;
            if t.forbids(len, p) {
                return false;
            }
            k -= 1;
        }
    }
    true
}

/// Factor `x` of exponent at least `r` with respect to a period whose
/// period word holds an even number of 2s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EvenPower {
    pub occurrence: Occurrence,
    pub period: usize,
}

impl EvenPower {
    pub fn period_word<'a>(&self, host: &'a [u8]) -> &'a [u8] {
        &host[self.occurrence.start..self.occurrence.start + self.period]
    }
}

/// First even power of exponent at least `r`, ordered by period and then by
/// start. The occurrence reported is the longest one at that start.
pub fn find_even_power(w: &[u8], r: Rational) -> Result<Option<EvenPower>> {
    if r <= Rational::integer(1) {
        return domain("even powers are only meaningful for exponents above 1");
    }
    let n = w.len();
    let mut twos = vec![0usize; n + 1];
    for (i, &a) in w.iter().enumerate() {
        twos[i + 1] = twos[i] + usize::from(a == 2);
    }
    let mut matches = vec![0usize; n + 1];
    for q in 1..n {
        if r.ceil_times(q) > n {
            break;
        }
        matches[n - q] = 0;
        for k in (0..n - q).rev() {
            matches[k] = if w[k] == w[k + q] { matches[k + 1] + 1 } else { 0 };
        }
        for i in 0..n - q {
            let len = q + matches[i];
            if r.cmp_ratio(len, q) != Ordering::Less && (twos[i + q] - twos[i]).is_multiple_of(2) {
                return Ok(Some(EvenPower { occurrence: Occurrence::new(i, i + len - 1), period: q }));
            }
        }
    }
    Ok(None)
}

/// A maximal repetition: `period` is the smallest period of the factor and
/// the factor cannot be extended either way keeping that period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct Repetition {
    pub start: usize,
    pub end: usize,
    pub period: usize,
}

impl Repetition {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn exponent(&self) -> Rational {
        Rational::ratio(self.len(), self.period)
    }
}

/// All maximal repetitions of `w` with period at most `max_period` whose
/// exponent the threshold forbids (at least `alpha`, or above it when
/// strict). Sorted by start, then period.
pub fn maximal_repetitions(w: &[u8], t: &Threshold, max_period: usize, mode: Parallelism) -> Vec<Repetition> {
    let n = w.len();
    let max_p = max_period.min(n / 2);
    let periods: Vec<usize> = (1..=max_p).collect();
    let mut out: Vec<Repetition> = map_collect(mode, periods, |p| runs_with_period(w, p, t))
        .into_iter()
        .flatten()
        .collect();
    out.sort();
    out
}

fn runs_with_period(w: &[u8], p: usize, t: &Threshold) -> Vec<Repetition> {
    let n = w.len();
    let mut out = Vec::new();
    if p >= n {
        return out;
    }
    let report = |s: usize, e: usize, out: &mut Vec<Repetition>| {
        // s..=e is a maximal run of matches w[k] == w[k+p].
        let len = e + 1 - s + p;
        if t.forbids(len, p) {
            let f = &w[s..s + len];
            if smallest_period(f).ok() == Some(p) {
                out.push(Repetition { start: s, end: s + len - 1, period: p });
            }
        }
    };
    if t.exponent >= Rational::integer(2) {
        // A qualifying run has at least p matches, so it covers a multiple
        // of p; probing those anchors is enough.
        let mut a = 0;
        while a + p < n {
            if w[a] == w[a + p] {
                let mut s = a;
                while s > 0 && w[s - 1] == w[s - 1 + p] {
                    s -= 1;
                }
                let mut e = a;
                while e + 1 + p < n && w[e + 1] == w[e + 1 + p] {
                    e += 1;
                }
                report(s, e, &mut out);
                a = (e / p + 1) * p;
            } else {
                a += p;
            }
        }
    } else {
        let mut k = 0;
        while k + p < n {
            if w[k] == w[k + p] {
                let s = k;
                while k + 1 + p < n && w[k + 1] == w[k + 1 + p] {
                    k += 1;
                }
                report(s, k, &mut out);
            }
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_digits;

    fn d(s: &str) -> Vec<u8> {
        parse_digits(s).unwrap()
    }

    fn q(n: i64, m: i64) -> Rational {
        Rational::new(n, m).unwrap()
    }

    #[test]
    fn periods_and_exponents() {
        assert_eq!(smallest_period(&d("0010010")).unwrap(), 3);
        assert_eq!(smallest_period(&d("0")).unwrap(), 1);
        assert_eq!(smallest_period(&d("01010")).unwrap(), 2);
        assert!(smallest_period(&[]).is_err());
        assert_eq!(exponent(&d("0010010")).unwrap(), q(7, 3));
        assert_eq!(exponent(&d("111")).unwrap(), q(3, 1));
        let base = d("0200101101001011010");
        let w: Vec<u8> = base.iter().cycle().take(41).copied().collect();
        assert_eq!(exponent(&w).unwrap(), q(41, 19));
    }

    #[test]
    fn max_exponent_examples() {
        let (e, occ) = max_exponent_factor(&d("00100200")).unwrap();
        assert_eq!(e, q(2, 1));
        assert_eq!(occ, Occurrence::new(0, 1));
        assert_eq!(max_exponent_factor(&d("012")).unwrap().0, q(1, 1));
    }

    #[test]
    fn power_free_thresholds() {
        let t = |s: &str| s.parse::<Threshold>().unwrap();
        assert!(!is_power_free(&d("0010010"), &t("7/3")).unwrap());
        assert!(is_power_free(&d("0010010"), &t("7/3+")).unwrap());
        assert!(is_power_free(&d("0010010"), &t("5/2")).unwrap());
        assert!(is_power_free(&d("0102"), &t("1")).is_err());
    }

    #[test]
    fn incremental_matches_suffix_definition() {
        let t: Threshold = "7/3".parse().unwrap();
        let mut st = IncrementalPowerFree::new(t).unwrap();
        for &a in &d("001001") {
            assert!(st.push(a));
        }
        assert!(!st.push(0));
        st.pop();
        assert!(st.push(2));
    }

    #[test]
    fn even_power_examples() {
        let w = d("210122101221012");
        let ep = find_even_power(&w, q(3, 1)).unwrap().unwrap();
        assert_eq!(ep.period_word(&w), &d("21012")[..]);
        let w = d("0220220");
        let ep = find_even_power(&w, q(7, 3)).unwrap().unwrap();
        assert_eq!(ep.period_word(&w), &d("022")[..]);
        assert_eq!(find_even_power(&d("01010"), q(3, 1)).unwrap(), None);
    }

    #[test]
    fn runs_in_short_word() {
        let w = d("0010010");
        let above = |s: &str| s.parse::<Threshold>().unwrap();
        let reps = maximal_repetitions(&w, &above("2+"), 10, Parallelism::Sequential);
        assert_eq!(reps, vec![Repetition { start: 0, end: 6, period: 3 }]);
        let reps = maximal_repetitions(&w, &above("2"), 10, Parallelism::Sequential);
        assert_eq!(reps.len(), 3);
        let reps = maximal_repetitions(&w, &above("3/2+"), 10, Parallelism::Sequential);
        assert!(reps.contains(&Repetition { start: 0, end: 1, period: 1 }));
        assert!(reps.contains(&Repetition { start: 3, end: 4, period: 1 }));
    }
}
