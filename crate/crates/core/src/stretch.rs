//! Periodic stretching of occurrences, the inner and outer stretch
//! sequences, their closed forms, and the limit they approach.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{domain, Error, Result, Side};
use crate::morphic::{image_lengths_big, outer_length_big, z_prefix, Tower};
use crate::parallel::{map_collect, Parallelism};
use crate::rational::{Rational, Threshold};
use crate::repetition::{maximal_repetitions, Repetition};
use crate::word::{occurrences, parikh_letters, parse_digits, to_digits, Occurrence};

/// The seeds every outer stretch sequence in z starts from.
pub const SEEDS: [&str; 10] = ["0", "1", "22", "202", "1022", "0220", "2201", "10202", "02020", "20201"];

fn has_period(host: &[u8], occ: Occurrence, q: usize) -> bool {
    q >= 1 && (occ.start..=occ.end).all(|k| k + q > occ.end || host[k] == host[k + q])
}

fn check_period(host: &[u8], occ: Occurrence, q: usize) -> Result<()> {
    if occ.end >= host.len() {
        return Err(Error::Range { index: occ.end, len: host.len() });
    }
    if !has_period(host, occ, q) {
        return domain(format!("occurrence {}..={} does not have period {q}", occ.start, occ.end));
    }
    Ok(())
}

/// Longest λ such that λ followed by the occurrence still has period `q`.
pub fn left_stretch(host: &[u8], occ: Occurrence, q: usize) -> Result<Vec<u8>> {
    check_period(host, occ, q)?;
    let mut k = 0;
    loop {
        if k == occ.start {
            return Err(Error::Boundary(Side::Left));
        }
        let pos = occ.start - k - 1;
        if host[pos] != host[pos + q] {
            return Ok(host[pos + 1..occ.start].to_vec());
        }
        k += 1;
    }
}

/// Longest ρ such that the occurrence followed by ρ still has period `q`.
pub fn right_stretch(host: &[u8], occ: Occurrence, q: usize) -> Result<Vec<u8>> {
    check_period(host, occ, q)?;
    let mut pos = occ.end + 1;
    loop {
        if pos >= host.len() {
            return Err(Error::Boundary(Side::Right));
        }
        if host[pos] != host[pos - q] {
            return Ok(host[occ.end + 1..pos].to_vec());
        }
        pos += 1;
    }
}

pub fn is_unstretchable(host: &[u8], occ: Occurrence, q: usize) -> Result<bool> {
    check_period(host, occ, q)?;
    if occ.start == 0 {
        return Err(Error::Boundary(Side::Left));
    }
    if occ.end + 1 >= host.len() {
        return Err(Error::Boundary(Side::Right));
    }
    Ok(host[occ.start - 1] != host[occ.start - 1 + q] && host[occ.end + 1] != host[occ.end + 1 - q])
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StretchItem {
    pub occurrence: Occurrence,
    #[serde(serialize_with = "ser_digits")]
    pub word: Vec<u8>,
    pub period: usize,
    pub exponent: Rational,
    #[serde(serialize_with = "ser_digits")]
    pub left: Vec<u8>,
    #[serde(serialize_with = "ser_digits")]
    pub right: Vec<u8>,
}

fn ser_digits<S: serde::Serializer>(w: &[u8], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_digits(w))
}

fn stretched(host: &[u8], core: Occurrence, q: usize) -> Result<StretchItem> {
    let left = left_stretch(host, core, q)?;
    let right = right_stretch(host, core, q)?;
    let occ = Occurrence::new(core.start - left.len(), core.end + right.len());
    Ok(StretchItem {
        occurrence: occ,
        word: occ.slice(host).to_vec(),
        period: q,
        exponent: Rational::ratio(occ.len(), q),
        left,
        right,
    })
}

/// Inner sequence in x: w_n = λ_n f(w_{n-1}) ρ_n with period |f(v_{n-1})|.
pub fn inner_sequence(tower: &Tower, seed: Occurrence, q: usize, m: usize) -> Result<Vec<StretchItem>> {
    let x = &tower.x;
    if !is_unstretchable(x, seed, q)? {
        return domain("the seed occurrence is stretchable");
    }
    let mut items = vec![StretchItem {
        occurrence: seed,
        word: seed.slice(x).to_vec(),
        period: q,
        exponent: Rational::ratio(seed.len(), q),
        left: Vec::new(),
        right: Vec::new(),
    }];
    for _ in 0..m {
        let prev = items.last().unwrap();
        let core = tower.f_image(prev.occurrence)?;
        let qn = tower.f_len(prev.occurrence.start, prev.period)?;
        items.push(stretched(x, core, qn)?);
    }
    Ok(items)
}

/// Outer sequence in z: W_n = λ*_n τ̃(g(w_n)) ρ*_n.
pub fn outer_sequence(tower: &Tower, seed: Occurrence, q: usize, m: usize) -> Result<Vec<StretchItem>> {
    let period_word = &tower.x[seed.start..seed.start + q];
    if period_word.iter().filter(|&&a| a == 2).count() % 2 != 0 {
        return domain("the seed's period word must hold an even number of 2s");
    }
    let inner = inner_sequence(tower, seed, q, m)?;
    inner
        .iter()
        .map(|w| {
            let y_occ = tower.g_image(w.occurrence)?;
            let y_period = tower.g_len(w.occurrence.start, w.period)?;
            let z_core = tower.tilde_tau(y_occ)?;
            let z_period = tower.tau_len(y_occ.start, y_period)?;
            stretched(&tower.z, z_core, z_period)
        })
        .collect()
}

/// Retries `f` on larger towers while it runs off the generated prefix.
pub fn with_tower<T>(min_z_len: usize, f: impl Fn(&Tower) -> Result<T>) -> Result<T> {
    let mut z_len = min_z_len.max(1024);
    loop {
        let tower = Tower::with_z_len(z_len);
        match f(&tower) {
            Err(Error::Range { .. } | Error::Boundary(Side::Right)) if z_len < 1 << 26 => z_len *= 2,
            other => return other,
        }
    }
}

/// First occurrence of `w` in x at a positive index that is unstretchable
/// with respect to |w|.
pub fn seed_occurrence(tower: &Tower, w: &[u8]) -> Result<Occurrence> {
    for start in occurrences(&tower.x, w) {
        if start == 0 || start + w.len() >= tower.x.len() {
            continue;
        }
        let occ = Occurrence::new(start, start + w.len() - 1);
        if is_unstretchable(&tower.x, occ, w.len())? {
            return Ok(occ);
        }
    }
    Err(Error::Range { index: tower.x.len(), len: tower.x.len() })
}

/// Outer sequence of a seed word, generating as much of z as needed.
pub fn outer_sequence_for_seed(w: &[u8], m: usize) -> Result<Vec<StretchItem>> {
    let a_m = image_lengths_big(m)[m].to_usize().unwrap_or(usize::MAX / 16);
    with_tower(8 * a_m, |t| {
        let seed = seed_occurrence(t, w)?;
        outer_sequence(t, seed, w.len(), m)
    })
}

pub fn inner_sequence_for_seed(w: &[u8], m: usize) -> Result<Vec<StretchItem>> {
    let a_m = image_lengths_big(m)[m].to_usize().unwrap_or(usize::MAX / 16);
    with_tower(4 * a_m, |t| {
        let seed = seed_occurrence(t, w)?;
        inner_sequence(t, seed, w.len(), m)
    })
}

fn big_ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// |tau(g(f^n(w)))|.
pub fn outer_period(w: &[u8], n: usize) -> BigUint {
    outer_length_big(&parikh_letters(w, 3), n)
}

/// R_n(w) from the closed form: one plus (sum of a_k over k ≡ n mod 2,
/// k ≤ n, plus 3 for even n or 10 for odd n) over |tau(g(f^n(w)))|.
pub fn outer_power_closed_form(w: &[u8], n: usize) -> Result<BigRational> {
    if !SEEDS.iter().any(|s| parse_digits(s).unwrap() == w) {
        return domain(format!("{} is not one of the seeds", to_digits(w)));
    }
    let a = image_lengths_big(n);
    let extra = if n.is_multiple_of(2) { 3u32 } else { 10 };
    let sum: BigUint = a.iter().skip(n % 2).step_by(2).sum::<BigUint>() + extra;
    Ok(BigRational::one() + big_ratio(sum, outer_period(w, n)))
}

pub fn format_big(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_big(r: Rational) -> BigRational {
    BigRational::new(BigInt::from(r.numer()), BigInt::from(r.denom()))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SpectralData {
    pub mu1: f64,
    pub mu2: (f64, f64),
    pub mu3: (f64, f64),
    pub kappa1: f64,
    pub kappa2: (f64, f64),
    pub kappa3: (f64, f64),
    pub max_residual: f64,
    pub max_fit_error: f64,
}

fn char_poly(x: Complex64) -> Complex64 {
    x * x * x - 2.0 * x * x - 1.0
}

/// The real root of x^3 - 2x^2 - 1 by bisection on [2, 3].
pub fn dominant_root() -> f64 {
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * mid * mid - 2.0 * mid * mid - 1.0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn spectral_data() -> SpectralData {
    let m1 = dominant_root();
    // x^3 - 2x^2 - 1 = (x - m1)(x^2 + bx + c) with b = m1 - 2, c = 1/m1.
    let b = m1 - 2.0;
    let c = 1.0 / m1;
    let im = (4.0 * c - b * b).sqrt() / 2.0;
    let mu2 = Complex64::new(-b / 2.0, im);
    let mu3 = mu2.conj();
    let mu1 = Complex64::new(m1, 0.0);
    // Solve sum_i kappa_i mu_i^k = a_k for k = 0, 1, 2.
    let a = [19.0, 43.0, 94.0].map(|v| Complex64::new(v, 0.0));
    let det3 = |c0: [Complex64; 3], c1: [Complex64; 3], c2: [Complex64; 3]| {
        c0[0] * (c1[1] * c2[2] - c2[1] * c1[2]) - c1[0] * (c0[1] * c2[2] - c2[1] * c0[2])
            + c2[0] * (c0[1] * c1[2] - c1[1] * c0[2])
    };
    let col = |m: Complex64| [Complex64::new(1.0, 0.0), m, m * m];
    let d = det3(col(mu1), col(mu2), col(mu3));
    let k1 = det3(a, col(mu2), col(mu3)) / d;
    let k2 = det3(col(mu1), a, col(mu3)) / d;
    let k3 = det3(col(mu1), col(mu2), a) / d;
    let max_residual = [mu1, mu2, mu3].iter().map(|&m| char_poly(m).norm()).fold(0.0, f64::max);
    let max_fit_error = (0..3)
        .map(|k| {
            let v = k1 * mu1.powu(k) + k2 * mu2.powu(k) + k3 * mu3.powu(k);
            (v - a[k as usize]).norm()
        })
        .fold(0.0, f64::max);
    SpectralData {
        mu1: m1,
        mu2: (mu2.re, mu2.im),
        mu3: (mu3.re, mu3.im),
        kappa1: k1.re,
        kappa2: (k2.re, k2.im),
        kappa3: (k3.re, k3.im),
        max_residual,
        max_fit_error,
    }
}

/// 1 + 1/(3 - mu1), the critical exponent of z.
pub fn ce_limit() -> (f64, SpectralData) {
    let s = spectral_data();
    (1.0 + 1.0 / (3.0 - s.mu1), s)
}

fn poly_exact(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    x * x * x - two * x * x - BigRational::one()
}

/// Rational enclosure [lo, hi] of the dominant root of width 2^-bits.
pub fn root_enclosure(bits: u32) -> (BigRational, BigRational) {
    let mut lo = BigRational::from_integer(BigInt::from(2));
    let mut hi = BigRational::from_integer(BigInt::from(3));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..bits {
        let mid = (&lo + &hi) * &half;
        if poly_exact(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn limit_at(mu: &BigRational) -> BigRational {
    let three = BigRational::from_integer(BigInt::from(3));
    BigRational::one() + (three - mu).recip()
}

/// R < 1 + 1/(3 - mu1) exactly: with t = 3 - 1/(R - 1) this is t < mu1,
/// and x^3 - 2x^2 - 1 is negative exactly on (-inf, mu1).
pub fn below_limit_exact(r: &BigRational) -> bool {
    let one = BigRational::one();
    if *r <= one {
        return true;
    }
    let t = BigRational::from_integer(BigInt::from(3)) - (r - &one).recip();
    poly_exact(&t).is_negative()
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct BoundReport {
    pub n_max: usize,
    /// Width of the initial root enclosure, as a power of two.
    pub initial_bits: u32,
    /// Finest enclosure needed to separate every term from the limit.
    pub final_bits: u32,
    pub all_below_limit: bool,
    pub exact_check_agrees: bool,
    pub even_terms_increasing: bool,
    pub odd_terms_increasing: bool,
    /// First few terms as exact rationals.
    pub leading_terms: Vec<String>,
    pub largest_term_n: usize,
    pub largest_term_f64: f64,
}

const INITIAL_BITS: u32 = 40;
const MAX_BITS: u32 = 8192;

/// Confirms R_n(0) < 1 + 1/(3 - mu1) for n ≤ n_max. Each term is compared
/// with the lower end of an enclosure of the limit; the enclosure starts at
/// width about 1e-12 and is refined when a term is closer than that.
pub fn verify_bound(n_max: usize) -> BoundReport {
    let terms: Vec<BigRational> = (0..=n_max).map(|n| outer_power_closed_form(&[0], n).expect("0 is a seed")).collect();
    let mut bits = INITIAL_BITS;
    let mut all_below = true;
    let mut enclosure = root_enclosure(bits);
    for r in &terms {
        loop {
            let lo_limit = limit_at(&enclosure.0);
            let hi_limit = limit_at(&enclosure.1);
            if *r < lo_limit {
                break;
            }
            if *r >= hi_limit || bits >= MAX_BITS {
                all_below = false;
                break;
            }
            bits *= 2;
            enclosure = root_enclosure(bits);
        }
    }
    let exact = terms.iter().all(below_limit_exact);
    let increasing = |start: usize| {
        let sub: Vec<&BigRational> = terms.iter().skip(start).step_by(2).collect();
        sub.windows(2).all(|p| p[0] < p[1])
    };
    let (largest_n, largest) =
        terms.iter().enumerate().max_by(|a, b| a.1.cmp(b.1)).map(|(n, r)| (n, r.to_f64().unwrap_or(f64::NAN))).unwrap();
    BoundReport {
        n_max,
        initial_bits: INITIAL_BITS,
        final_bits: bits,
        all_below_limit: all_below,
        exact_check_agrees: exact == all_below,
        even_terms_increasing: increasing(0),
        odd_terms_increasing: increasing(1),
        leading_terms: terms.iter().take(8).map(format_big).collect(),
        largest_term_n: largest_n,
        largest_term_f64: largest,
    }
}

pub const DEFAULT_SCAN_PERIOD: usize = 500;

/// Maximal repetitions in z_prefix(len) that the threshold forbids, with
/// period at most `max_period`.
pub fn scan_prefix_repetitions(len: usize, t: &Threshold, max_period: usize, mode: Parallelism) -> Vec<Repetition> {
    let z = z_prefix(len);
    maximal_repetitions(&z, t, max_period, mode)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SeedTerm {
    pub seed: String,
    pub n: usize,
    pub period: usize,
    pub exponent: Rational,
}

/// Outer sequence terms (period, exponent) for every seed, n ≤ m.
pub fn seed_terms(m: usize, mode: Parallelism) -> Result<Vec<SeedTerm>> {
    let per_seed = map_collect(mode, SEEDS.to_vec(), |s| -> Result<Vec<SeedTerm>> {
        let seq = outer_sequence_for_seed(&parse_digits(s).unwrap(), m)?;
        Ok(seq
            .iter()
            .enumerate()
            .map(|(n, it)| SeedTerm { seed: s.to_string(), n, period: it.period, exponent: it.exponent })
            .collect())
    });
    Ok(per_seed.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
}

/// Repetitions that touch either end of the scanned prefix may be cut
/// short, so they are not expected to match a sequence term.
pub fn unexplained_repetitions<'a>(reps: &'a [Repetition], len: usize, terms: &[SeedTerm]) -> Vec<&'a Repetition> {
    reps.iter()
        .filter(|r| r.start > 0 && r.end + 1 < len)
        .filter(|r| !terms.iter().any(|t| t.period == r.period && t.exponent == r.exponent()))
        .collect()
}

/// True if `r` sits strictly below 1 + 1/(3 - mu1).
pub fn rational_below_limit(r: Rational) -> bool {
    below_limit_exact(&to_big(r))
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn seed_zero_inner_sequence() {
        let t = Tower::with_x_len(2000);
        let seed = Occurrence::new(2, 2);
        assert!(is_unstretchable(&t.x, seed, 1).unwrap());
        let items = inner_sequence(&t, seed, 1, 3).unwrap();
        let pq: Vec<(usize, Rational)> = items.iter().map(|i| (i.period, i.exponent)).collect();
        assert_eq!(pq, vec![(1, q(1, 1)), (2, q(3, 2)), (5, q(2, 1)), (11, q(23, 11))]);
        assert_eq!(to_digits(&items[1].word), "010");
        assert_eq!(items[1].occurrence, Occurrence::new(5, 7));
        assert_eq!(to_digits(&items[2].word), "2010220102");
        assert_eq!(to_digits(&items[2].left), "2");
        assert_eq!(to_digits(&items[2].right), "02");
        let w3: Vec<u8> = parse_digits("02010220102").unwrap().into_iter().cycle().take(23).collect();
        assert_eq!(items[3].word, w3);
    }

    #[test]
    fn stretch_boundaries() {
        let t = Tower::with_x_len(100);
        assert!(matches!(is_unstretchable(&t.x, Occurrence::new(0, 0), 1), Err(Error::Boundary(Side::Left))));
        assert!(!is_unstretchable(&t.x, Occurrence::new(5, 6), 2).unwrap());
        assert!(left_stretch(&t.x, Occurrence::new(0, 2), 3).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let r = |n| format_big(&outer_power_closed_form(&[0], n).unwrap());
        assert_eq!(r(0), "41/19");
        assert_eq!(r(1), "96/43");
        assert_eq!(r(2), "105/47");
        assert_eq!(r(3), "467/207");
        assert_eq!(r(4), "1030/457");
        assert!(outer_power_closed_form(&[0, 0], 1).is_err());
    }

    #[test]
    fn spectral_values() {
        let (lim, s) = ce_limit();
        assert!((lim - 2.25876324).abs() < 1e-8);
        assert!((s.mu1 - 2.20557).abs() < 1e-5);
        assert!((s.kappa1 - 19.31167).abs() < 1e-5);
        assert!((s.mu2.0 + 0.10278).abs() < 1e-5 && (s.mu2.1.abs() - 0.66546).abs() < 1e-5);
        assert!(s.max_residual < 1e-12);
        assert!(s.max_fit_error < 1e-9);
        let alt = 1.0 + s.mu1 * s.mu1 / (s.mu1 * s.mu1 - 1.0);
        assert!((alt - lim).abs() < 1e-12);
    }

    #[test]
    fn bound_small() {
        let rep = verify_bound(30);
        assert!(rep.all_below_limit && rep.exact_check_agrees && rep.even_terms_increasing);
        assert!(rational_below_limit(q(467, 207)));
        assert!(rational_below_limit(q(9, 4)));
        assert!(!rational_below_limit(q(16, 7)));
    }
}
