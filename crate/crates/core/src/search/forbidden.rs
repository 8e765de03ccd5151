//! Direct checks that the forbidden factors cannot occur in x: each one,
//! in every listed context and for every listed number of f-steps, yields
//! a 16/7-power under tau(g(.)).

use crate::error::{domain, Result};
use crate::morphic::{F, G, TAU};
use crate::parallel::{map_collect, Parallelism};
use crate::rational::{Rational, Threshold};
use crate::repetition::{is_power_free, max_exponent_factor};
use crate::word::{parse_digits, to_digits, Occurrence};

/// Prefix of `base^inf` of length `num/den * |base|`.
pub fn fractional_power(base: &[u8], num: usize, den: usize) -> Vec<u8> {
    let len = base.len() * num / den;
    base.iter().cycle().take(len).copied().collect()
}

/// Parses `1(20102)^{2}1` style notation: letters, optionally one
/// parenthesised base with a rational exponent `^{p/q}`, then letters.
pub fn parse_power_notation(s: &str) -> Result<Vec<u8>> {
    let Some(open) = s.find('(') else { return parse_digits(s) };
    let close = s.find(')').filter(|&c| c > open).ok_or_else(|| crate::Error::Parse(s.into()))?;
    let after = &s[close + 1..];
    let (exp, tail) = match after.strip_prefix("^{") {
        Some(rest) => rest.split_once('}').ok_or_else(|| crate::Error::Parse(s.into()))?,
        None => ("1", after),
    };
    let r: Rational = exp.parse()?;
    let base = parse_digits(&s[open + 1..close])?;
    let mut w = parse_digits(&s[..open])?;
    w.extend(fractional_power(&base, r.numer() as usize, r.denom() as usize));
    if (base.len() as i64 * r.numer()) % r.denom() != 0 {
        return Err(crate::Error::Parse(format!("{s}: exponent does not give a whole length")));
    }
    w.extend(parse_digits(tail)?);
    Ok(w)
}

#[derive(Clone, Debug)]
pub struct FamilyCase {
    /// 1 to 4.
    pub family: u8,
    pub label: &'static str,
    pub factor: Vec<u8>,
    /// Checked for every n in 0..=max_n.
    pub max_n: usize,
    /// Complete words whose images are checked.
    pub contexts: Vec<Vec<u8>>,
}

fn all_letters() -> Vec<Vec<u8>> {
    vec![vec![0], vec![1], vec![2]]
}

fn around(w: &[u8], left: &[Vec<u8>], right: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for a in left {
        for b in right {
            let mut c = a.clone();
            c.extend_from_slice(w);
            c.extend_from_slice(b);
            out.push(c);
        }
    }
    out
}

fn case(family: u8, label: &'static str, max_n: usize, left: &[Vec<u8>], right: &[Vec<u8>]) -> FamilyCase {
    let factor = parse_power_notation(label).expect("literal factor");
    let contexts = around(&factor, left, right);
    FamilyCase { family, label, factor, max_n, contexts }
}

/// Cases for the first family, each with the contexts it can occur in.
pub fn first_family_cases() -> Vec<FamilyCase> {
    let none = vec![Vec::new()];
    let any = all_letters();
    vec![
        case(1, "00", 0, &none, &any),
        case(1, "11", 0, &none, &any),
        case(1, "212", 2, &none, &any),
        case(1, "2222", 1, &none, &any),
        case(1, "1222", 3, &none, &[vec![0], vec![1]]),
        case(1, "2221", 3, &[vec![0], vec![1]], &any),
        case(1, "1010", 0, &none, &[vec![1], vec![2]]),
        FamilyCase { family: 1, label: "0101", factor: parse_digits("0101").unwrap(), max_n: 0, contexts: vec![parse_digits("201012").unwrap()] },
        case(1, "022022", 1, &any, &any),
        case(1, "220220", 1, &any, &any),
    ]
}

/// Sampled cases for the remaining families: every factor with one letter
/// of context on each side, for up to two f-steps.
pub fn later_family_cases() -> Vec<FamilyCase> {
    let any = all_letters();
    let mut out = Vec::new();
    for (family, labels) in [(2u8, &SECOND[..]), (3, &THIRD[..]), (4, &FOURTH[..])] {
        for &label in labels {
            out.push(case(family, label, 2, &any, &any));
        }
    }
    out
}

pub const SECOND: [&str; 9] = [
    "202202",
    "1022021",
    "1202201",
    "1(20102)^{2}1",
    "(021012)^{13/6}",
    "(012021)^{13/6}",
    "(21012010)^{21/8}",
    "(21012210120)^{27/11}",
    "(2101221012010)^{31/13}",
];
pub const THIRD: [&str; 2] = ["2(2101)^{17/4}2", "(2101210122101)^{31/13}"];
pub const FOURTH: [&str; 6] = [
    "(0222)^{17/4}1",
    "(22010)^{12/5}",
    "(022201)^{29/6}",
    "(0222010222)^{12/5}",
    "(0222022201)^{12/5}",
    "(0222010222010222022201)^{5/2}",
];

pub fn outer_image(w: &[u8], n: usize) -> Vec<u8> {
    let fw = F.power(w, n).expect("ternary");
    TAU.transduce(&G.apply(&fw).expect("ternary")).expect("ternary")
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ContextCheck {
    pub factor: String,
    pub context: String,
    pub n: usize,
    pub image_len: usize,
    pub max_exponent: Rational,
    pub witness: Occurrence,
    pub ok: bool,
}

pub fn sixteen_sevenths() -> Threshold {
    Threshold::new(Rational::from_parts(16, 7), false)
}

fn check_one(label: &str, context: &[u8], n: usize) -> ContextCheck {
    let img = outer_image(context, n);
    let ok = !is_power_free(&img, &sixteen_sevenths()).expect("threshold above 1");
    let (max_exponent, witness) = max_exponent_factor(&img).expect("nonempty image");
    ContextCheck {
        factor: label.to_string(),
        context: to_digits(context),
        n,
        image_len: img.len(),
        max_exponent,
        witness,
        ok,
    }
}

pub fn check_case(c: &FamilyCase, n_max: usize, mode: Parallelism) -> Vec<ContextCheck> {
    let jobs: Vec<(usize, &Vec<u8>)> =
        (0..=n_max).flat_map(|n| c.contexts.iter().map(move |ctx| (n, ctx))).collect();
    map_collect(mode, jobs, |(n, ctx)| check_one(c.label, ctx, n))
}

/// Runs the listed checks for forbidden factor `w`, for n up to `n_max`.
pub fn verify_forbidden_family(w: &[u8], n_max: usize) -> Result<Vec<ContextCheck>> {
    let cases: Vec<FamilyCase> = first_family_cases().into_iter().chain(later_family_cases()).collect();
    let Some(c) = cases.iter().find(|c| c.factor == w) else {
        return domain(format!("{} is not a listed forbidden factor", to_digits(w)));
    };
    Ok(check_case(c, n_max, Parallelism::default()))
}
