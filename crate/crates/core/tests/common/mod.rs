//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use richrt::Rational;

pub fn is_palindrome(w: &[u8]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// Distinct palindromic factors, counting the empty word.
pub fn palindrome_count(w: &[u8]) -> usize {
    let mut seen: HashSet<&[u8]> = HashSet::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            if is_palindrome(&w[i..j]) {
                seen.insert(&w[i..j]);
            }
        }
    }
    seen.len() + 1
}

pub fn has_period(w: &[u8], p: usize) -> bool {
    (p..w.len()).all(|i| w[i] == w[i - p])
}

pub fn smallest_period(w: &[u8]) -> usize {
    (1..=w.len()).find(|&p| has_period(w, p)).unwrap_or(0)
}

/// Largest exponent over all nonempty factors.
pub fn max_exponent(w: &[u8]) -> Rational {
    let mut best = Rational::integer(0);
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            let e = Rational::ratio(j - i, smallest_period(&w[i..j]));
            if e > best {
                best = e;
            }
        }
    }
    best
}

/// No factor has exponent at least `e` (or above `e` when `strict`).
pub fn power_free(w: &[u8], e: Rational, strict: bool) -> bool {
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            let f = Rational::ratio(j - i, smallest_period(&w[i..j]));
            if f > e || (!strict && f == e) {
                return false;
            }
        }
    }
    true
}

/// Every word over `letters` of length at most `max_len`, shortest first,
/// lexicographic within a length.
pub fn all_words(letters: &[u8], max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &a in letters {
                let mut v: Vec<u8> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Occurrences of `w` as a factor at positions p whose prefix h[..p]
/// satisfies `keep`.
pub fn occurrences_where(host: &[u8], w: &[u8], keep: impl Fn(&[u8]) -> bool) -> Vec<usize> {
    (0..=host.len().saturating_sub(w.len()))
        .filter(|&p| host[p..].starts_with(w) && keep(&host[..p]))
        .collect()
}

pub fn twos(w: &[u8]) -> usize {
    w.iter().filter(|&&a| a == 2).count()
}

/// Poor by the definition: every palindromic prefix with an even number
/// of 2s occurs again at some later position preceded by an even number of 2s.
pub fn poor(w: &[u8]) -> bool {
    (0..=w.len()).all(|k| {
        let p = &w[..k];
        if !is_palindrome(p) || twos(p) % 2 == 1 {
            return true;
        }
        !occurrences_where(w, p, |pre| !pre.is_empty() && twos(pre).is_multiple_of(2)).is_empty()
    })
}

/// Middle class: starts with 2, and every odd palindromic prefix occurs
/// again at an even index of at least 2.
pub fn middle_class(w: &[u8]) -> bool {
    if w.first() != Some(&2) {
        return false;
    }
    (1..=w.len()).all(|k| {
        let p = &w[..k];
        if !is_palindrome(p) || k % 2 == 0 {
            return true;
        }
        !occurrences_where(w, p, |pre| pre.len() >= 2 && pre.len() % 2 == 0).is_empty()
    })
}

/// Calls `f` on every nonempty word over `letters` of length at most `max_len`.
pub fn for_each_word(letters: &[u8], max_len: usize, mut f: impl FnMut(&[u8])) {
    let mut w: Vec<u8> = Vec::with_capacity(max_len);
    let mut next = vec![0usize];
    while let Some(top) = next.last_mut() {
        if *top == letters.len() || w.len() == max_len {
            next.pop();
            w.pop();
            continue;
        }
        w.push(letters[*top]);
        *top += 1;
        f(&w);
        next.push(0);
    }
}

/// First factor of exponent at least `r` whose period word holds an even
/// number of 2s, by period then start, as (start, end, period).
pub fn even_power(w: &[u8], r: Rational) -> Option<(usize, usize, usize)> {
    for q in 1..w.len() {
        for i in 0..w.len() {
            let mut len = 0;
            while i + len < w.len() && (len < q || w[i + len] == w[i + len - q]) {
                len += 1;
            }
            if len >= q && Rational::ratio(len, q) >= r && twos(&w[i..i + q]).is_multiple_of(2) {
                return Some((i, i + len - 1, q));
            }
        }
    }
    None
}
