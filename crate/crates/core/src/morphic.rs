//! Morphisms, the parity transducer and the infinite words built from them.

use std::sync::LazyLock;

use num_bigint::BigUint;

use crate::error::{domain, Error, Result};
use crate::word::{parikh_letters, parse_digits, to_digits, Occurrence, MAX_ALPHABET};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    source: u8,
    target: u8,
    images: Vec<Vec<u8>>,
}

impl Morphism {
    pub fn new(name: &str, target: u8, images: Vec<Vec<u8>>) -> Result<Self> {
        if images.is_empty() || images.len() > MAX_ALPHABET || target == 0 || target as usize > MAX_ALPHABET {
            return domain("morphism alphabet sizes out of range");
        }
        if images.iter().flatten().any(|&b| b >= target) {
            return domain(format!("morphism {name} maps outside its target alphabet"));
        }
        Ok(Morphism { name: name.to_string(), source: images.len() as u8, target, images })
    }

    fn from_table(name: &str, target: u8, table: &[&str]) -> Self {
        let images = table.iter().map(|s| parse_digits(s).expect("literal image")).collect();
        Morphism::new(name, target, images).expect("literal morphism")
    }

    /// Parses lines `a -> image`, one per source letter, in any order.
    /// `#` comment lines and blank lines are skipped.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (a, img) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("expected `a -> image`, got {line:?}")))?;
            let a = parse_digits(a)?;
            if a.len() != 1 {
                return Err(Error::Parse(format!("source must be a single letter: {line:?}")));
            }
            pairs.push((a[0], parse_digits(img)?));
        }
        pairs.sort();
        if pairs.iter().enumerate().any(|(i, (a, _))| *a as usize != i) {
            return Err(Error::Parse("source letters must be exactly 0..k-1, each once".into()));
        }
        let target = pairs.iter().flat_map(|(_, img)| img.iter()).max().map_or(1, |&m| m + 1);
        Morphism::new(name, target, pairs.into_iter().map(|(_, img)| img).collect())
    }

    pub fn source_alphabet(&self) -> u8 {
        self.source
    }

    pub fn target_alphabet(&self) -> u8 {
        self.target
    }

    pub fn image(&self, a: u8) -> &[u8] {
        &self.images[a as usize]
    }

    pub fn images(&self) -> &[Vec<u8>] {
        &self.images
    }

    fn check_input(&self, w: &[u8]) -> Result<()> {
        match w.iter().find(|&&a| a >= self.source) {
            Some(a) => domain(format!("letter {a} outside the domain of morphism {}", self.name)),
            None => Ok(()),
        }
    }

    pub fn apply(&self, w: &[u8]) -> Result<Vec<u8>> {
        self.check_input(w)?;
        Ok(self.apply_unchecked(w))
    }

    pub(crate) fn apply_unchecked(&self, w: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &a in w {
            out.extend_from_slice(&self.images[a as usize]);
        }
        out
    }

    pub fn power(&self, w: &[u8], n: usize) -> Result<Vec<u8>> {
        let mut cur = w.to_vec();
        for _ in 0..n {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    pub fn is_prolongable(&self, a: u8) -> bool {
        a < self.source && self.source == self.target && {
            let img = &self.images[a as usize];
            img.len() >= 2 && img[0] == a
        }
    }

    /// Prefix of length `len` of the fixed point starting with `a`.
    pub fn fixed_point_prefix(&self, a: u8, len: usize) -> Result<Vec<u8>> {
        if !self.is_prolongable(a) {
            return domain(format!("morphism {} is not prolongable on {a}", self.name));
        }
        let mut out = self.images[a as usize].clone();
        let mut next = 1;
        while out.len() < len {
            if next >= out.len() {
                return domain(format!("fixed point of {} on {a} is finite", self.name));
            }
            let b = out[next];
            out.extend_from_slice(&self.images[b as usize]);
            next += 1;
        }
        out.truncate(len);
        Ok(out)
    }

    /// Column `a` is the Parikh vector of the image of `a`.
    pub fn incidence_matrix(&self) -> Vec<Vec<u64>> {
        let cols: Vec<Vec<u64>> = self.images.iter().map(|img| parikh_letters(img, self.target as usize)).collect();
        (0..self.target as usize)
            .map(|b| cols.iter().map(|c| c[b]).collect())
            .collect()
    }

    pub fn describe(&self) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(a, img)| format!("{a} -> {}", to_digits(img)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Two morphisms applied alternately: `even` at even positions, `odd` at
/// odd positions, counted from a chosen starting parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    pub name: String,
    pub even: Morphism,
    pub odd: Morphism,
}

impl Transducer {
    pub fn block(&self, a: u8, index: usize) -> &[u8] {
        if index.is_multiple_of(2) {
            self.even.image(a)
        } else {
            self.odd.image(a)
        }
    }

    /// Output for `w` whose first letter sits at position `start`.
    pub fn transduce_from(&self, w: &[u8], start: usize) -> Result<Vec<u8>> {
        self.even.check_input(w)?;
        let mut out = Vec::with_capacity(w.len() * 9);
        for (i, &a) in w.iter().enumerate() {
            out.extend_from_slice(self.block(a, start + i));
        }
        Ok(out)
    }

    pub fn transduce(&self, w: &[u8]) -> Result<Vec<u8>> {
        self.transduce_from(w, 0)
    }

    /// Same transducer started in the other state.
    pub fn flipped(&self, name: &str) -> Transducer {
        Transducer { name: name.to_string(), even: self.odd.clone(), odd: self.even.clone() }
    }

    pub fn block_lengths(&self) -> Vec<u64> {
        self.even.images().iter().map(|i| i.len() as u64).collect()
    }
}

pub static F: LazyLock<Morphism> = LazyLock::new(|| Morphism::from_table("f", 3, &["01", "022", "02"]));
pub static G: LazyLock<Morphism> = LazyLock::new(|| Morphism::from_table("g", 3, &["20", "21", "2"]));
pub static FHAT: LazyLock<Morphism> = LazyLock::new(|| {
    Morphism::from_table("fhat", 3, &["01", "022", "02", "0222", "0121", "01221", "012", "021"])
});
pub static PHI: LazyLock<Morphism> = LazyLock::new(|| Morphism::from_table("phi", 8, &["76", "760", "756", "7560"]));
pub static PSI: LazyLock<Morphism> = LazyLock::new(|| Morphism::from_table("psi", 4, &["03", "033", "0333", "01"]));
static T1: LazyLock<Morphism> =
    LazyLock::new(|| Morphism::from_table("t1", 3, &["001", "00101101", "0010110100101101"]));
static T2: LazyLock<Morphism> =
    LazyLock::new(|| Morphism::from_table("t2", 3, &["002", "00202202", "0020220200202202"]));
pub static TAU: LazyLock<Transducer> =
    LazyLock::new(|| Transducer { name: "tau".into(), even: T1.clone(), odd: T2.clone() });
pub static TAU_BAR: LazyLock<Transducer> = LazyLock::new(|| TAU.flipped("taubar"));

pub fn morphism_by_name(name: &str) -> Result<&'static Morphism> {
    match name {
        "f" => Ok(&F),
        "g" => Ok(&G),
        "fhat" => Ok(&FHAT),
        "phi" => Ok(&PHI),
        "psi" => Ok(&PSI),
        _ => Err(Error::Parse(format!("unknown morphism {name:?}; expected f, g, fhat, phi or psi"))),
    }
}

pub fn transducer_by_name(name: &str) -> Result<&'static Transducer> {
    match name {
        "tau" => Ok(&TAU),
        "taubar" => Ok(&TAU_BAR),
        _ => Err(Error::Parse(format!("unknown transducer {name:?}; expected tau or taubar"))),
    }
}

/// `tau(u)` when `u` starts at an even index of its host, `taubar(u)`
/// otherwise.
pub fn tilde_tau(u: &[u8], start_index: usize) -> Result<Vec<u8>> {
    TAU.transduce_from(u, start_index)
}

/// The three named infinite words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InfiniteWord {
    X,
    Y,
    Z,
}

impl std::str::FromStr for InfiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(InfiniteWord::X),
            "y" => Ok(InfiniteWord::Y),
            "z" => Ok(InfiniteWord::Z),
            _ => Err(Error::Parse(format!("unknown word {s:?}; expected x, y or z"))),
        }
    }
}

impl InfiniteWord {
    pub fn prefix(self, len: usize) -> Vec<u8> {
        match self {
            InfiniteWord::X => x_prefix(len),
            InfiniteWord::Y => y_prefix(len),
            InfiniteWord::Z => z_prefix(len),
        }
    }
}

pub fn x_prefix(len: usize) -> Vec<u8> {
    F.fixed_point_prefix(0, len.max(2)).map(|mut v| {
        v.truncate(len);
        v
    })
    .expect("f is prolongable on 0")
}

pub fn y_prefix(len: usize) -> Vec<u8> {
    let mut y = G.apply_unchecked(&x_prefix(len));
    y.truncate(len);
    y
}

/// Every letter of x contributes at least 3 letters to z, so a third of the
/// requested length of x is enough.
pub fn z_prefix(len: usize) -> Vec<u8> {
    let mut z = TAU.transduce(&G.apply_unchecked(&x_prefix(len.div_ceil(3) + 1))).expect("ternary");
    z.truncate(len);
    z
}

/// Prefixes of x, y = g(x) and z = tau(y) with the position maps between
/// them.
#[derive(Clone, Debug)]
pub struct Tower {
    pub x: Vec<u8>,
    pub y: Vec<u8>,
    pub z: Vec<u8>,
    /// `fx[i]` = |f(x[..i])|, the start of f(x_i) inside x.
    fx: Vec<usize>,
    /// `gy[i]` = |g(x[..i])|.
    gy: Vec<usize>,
    /// `yz[i]` = |tau(y[..i])|.
    yz: Vec<usize>,
}

fn cumulative(lengths: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = vec![0usize];
    for l in lengths {
        acc.push(acc.last().unwrap() + l);
    }
    acc
}

impl Tower {
    pub fn with_x_len(x_len: usize) -> Self {
        let x = x_prefix(x_len);
        let y = G.apply_unchecked(&x);
        let z = TAU.transduce(&y).expect("ternary");
        let fx = cumulative(x.iter().map(|&a| F.image(a).len()));
        let gy = cumulative(x.iter().map(|&a| G.image(a).len()));
        let yz = cumulative(y.iter().enumerate().map(|(i, &b)| TAU.block(b, i).len()));
        Tower { x, y, z, fx, gy, yz }
    }

    /// A tower whose z part has length at least `z_len`.
    pub fn with_z_len(z_len: usize) -> Self {
        Tower::with_x_len(z_len.div_ceil(3) + 1)
    }

    fn map(table: &[usize], occ: Occurrence, host_len: usize) -> Result<Occurrence> {
        if occ.end + 1 >= table.len() {
            return Err(Error::Range { index: occ.end, len: table.len() - 1 });
        }
        let (s, e) = (table[occ.start], table[occ.end + 1] - 1);
        if e >= host_len {
            return Err(Error::Range { index: e, len: host_len });
        }
        Ok(Occurrence::new(s, e))
    }

    /// Occurrence in x of f applied to the given occurrence in x.
    pub fn f_image(&self, occ: Occurrence) -> Result<Occurrence> {
        Tower::map(&self.fx, occ, self.x.len())
    }

    pub fn g_image(&self, occ: Occurrence) -> Result<Occurrence> {
        Tower::map(&self.gy, occ, self.y.len())
    }

    /// Occurrence in z of the transducer output of an occurrence in y.
    pub fn tilde_tau(&self, occ: Occurrence) -> Result<Occurrence> {
        Tower::map(&self.yz, occ, self.z.len())
    }

    /// Length of f(x[start..start+len]).
    pub fn f_len(&self, start: usize, len: usize) -> Result<usize> {
        self.fx.get(start + len).map(|e| e - self.fx[start]).ok_or(Error::Range { index: start + len, len: self.x.len() })
    }

    pub fn g_len(&self, start: usize, len: usize) -> Result<usize> {
        self.gy.get(start + len).map(|e| e - self.gy[start]).ok_or(Error::Range { index: start + len, len: self.x.len() })
    }

    pub fn tau_len(&self, start: usize, len: usize) -> Result<usize> {
        self.yz.get(start + len).map(|e| e - self.yz[start]).ok_or(Error::Range { index: start + len, len: self.y.len() })
    }
}

type Matrix = Vec<Vec<u64>>;

fn mat_vec(m: &Matrix, v: &[u64]) -> Result<Vec<u64>> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).try_fold(0u64, |acc, (&a, &b)| {
                a.checked_mul(b).and_then(|p| acc.checked_add(p)).ok_or_else(|| Error::Overflow("matrix product".into()))
            })
        })
        .collect()
}

/// Block lengths of the transducer, used as weights: |tau(u)| depends only
/// on the letter counts of u.
fn tau_weights() -> Vec<u64> {
    TAU.block_lengths()
}

/// |tau(g(f^n(w)))| by the linear model, with overflow detection.
pub fn outer_length(parikh: &[u64], n: usize) -> Result<u64> {
    let mf = F.incidence_matrix();
    let mg = G.incidence_matrix();
    let mut v = parikh.to_vec();
    for _ in 0..n {
        v = mat_vec(&mf, &v)?;
    }
    let v = mat_vec(&mg, &v)?;
    tau_weights().iter().zip(&v).try_fold(0u64, |acc, (&a, &b)| {
        a.checked_mul(b).and_then(|p| acc.checked_add(p)).ok_or_else(|| Error::Overflow("outer length".into()))
    })
}

pub fn outer_length_big(parikh: &[u64], n: usize) -> BigUint {
    let mf = F.incidence_matrix();
    let mg = G.incidence_matrix();
    let mut v: Vec<BigUint> = parikh.iter().map(|&c| BigUint::from(c)).collect();
    let apply = |m: &Matrix, v: &[BigUint]| -> Vec<BigUint> {
        m.iter()
            .map(|row| row.iter().zip(v).map(|(&a, b)| b * a).sum())
            .collect()
    };
    for _ in 0..n {
        v = apply(&mf, &v);
    }
    let v = apply(&mg, &v);
    tau_weights().iter().zip(&v).map(|(&a, b)| b * a).sum()
}

/// `a_n = |tau(g(f^n(0)))|` from the recurrence `a_n = 2 a_{n-1} + a_{n-3}`.
pub fn image_length(n: usize) -> Result<u64> {
    let mut a = [19u64, 43, 94];
    if n < 3 {
        return Ok(a[n]);
    }
    for k in 3..=n {
        let next = a[2]
            .checked_mul(2)
            .and_then(|d| d.checked_add(a[0]))
            .ok_or_else(|| Error::Overflow(format!("a_{k} exceeds 64 bits")))?;
        a = [a[1], a[2], next];
    }
    Ok(a[2])
}

/// The same sequence without a size limit; returns `a_0..=a_n`.
pub fn image_lengths_big(n: usize) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = [19u32, 43, 94].iter().map(|&v| BigUint::from(v)).collect();
    while out.len() <= n {
        let k = out.len();
        let next = &out[k - 1] * 2u32 + &out[k - 3];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

/// `a_n` by actually building tau(g(f^n(0))).
pub fn image_length_direct(n: usize) -> usize {
    let w = F.power(&[0], n).expect("ternary");
    TAU.transduce(&G.apply_unchecked(&w)).expect("ternary").len()
}

/// Coefficients `[c0, c1, c2, c3]` of det(xI - M) for a 3x3 matrix.
pub fn characteristic_polynomial(m: &Matrix) -> Result<[i64; 4]> {
    if m.len() != 3 || m.iter().any(|r| r.len() != 3) {
        return domain("characteristic polynomial is implemented for 3x3 matrices");
    }
    let a = |i: usize, j: usize| m[i][j] as i64;
    let trace = a(0, 0) + a(1, 1) + a(2, 2);
    let minors = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) + a(1, 1) * a(2, 2)
        - a(1, 2) * a(2, 1);
    let det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    Ok([-det, minors, -trace, 1])
}

pub fn format_polynomial(c: &[i64; 4]) -> String {
    let mut parts = Vec::new();
    for (deg, &coef) in c.iter().enumerate().rev() {
        if coef == 0 {
            continue;
        }
        let mag = coef.unsigned_abs();
        let body = match (deg, mag) {
            (0, m) => m.to_string(),
            (1, 1) => "x".into(),
            (1, m) => format!("{m}x"),
            (d, 1) => format!("x^{d}"),
            (d, m) => format!("{m}x^{d}"),
        };
        let sign = if coef < 0 { "-" } else { "+" };
        if parts.is_empty() {
            parts.push(if coef < 0 { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{sign} {body}"));
        }
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Vec<u8> {
        parse_digits(s).unwrap()
    }

    #[test]
    fn morphism_examples() {
        assert_eq!(F.apply(&d("01022")).unwrap(), d("01022010202"));
        assert_eq!(G.apply(&d("01022")).unwrap(), d("20212022"));
        assert_eq!(F.fixed_point_prefix(0, 24).unwrap(), d("010220102020102201020102"));
        assert!(G.fixed_point_prefix(0, 5).is_err());
        assert!(F.apply(&[3]).is_err());
    }

    #[test]
    fn transducer_examples() {
        assert_eq!(TAU.transduce(&d("20")).unwrap().len(), 19);
        assert_eq!(z_prefix(19), d("0010110100101101002"));
        assert_eq!(TAU_BAR.transduce(&d("20")).unwrap(), crate::word::sister_letters(&TAU.transduce(&d("20")).unwrap()));
        assert_eq!(tilde_tau(&d("0"), 1).unwrap(), d("002"));
    }

    #[test]
    fn incidence_matrices() {
        assert_eq!(F.incidence_matrix(), vec![vec![1, 1, 1], vec![1, 0, 0], vec![0, 2, 1]]);
        assert_eq!(G.incidence_matrix(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]);
        assert_eq!(characteristic_polynomial(&F.incidence_matrix()).unwrap(), [-1, 0, -2, 1]);
        assert_eq!(format_polynomial(&[-1, 0, -2, 1]), "x^3 - 2x^2 - 1");
    }

    #[test]
    fn lengths_agree() {
        let firsts: Vec<u64> = (0..5).map(|n| image_length(n).unwrap()).collect();
        assert_eq!(firsts, vec![19, 43, 94, 207, 457]);
        for n in 0..=12 {
            let a = image_length(n).unwrap();
            assert_eq!(outer_length(&[1, 0, 0], n).unwrap(), a);
            assert_eq!(image_length_direct(n) as u64, a);
            assert_eq!(image_lengths_big(n)[n], BigUint::from(a));
        }
        assert!(matches!(image_length(200), Err(Error::Overflow(_))));
    }

    #[test]
    fn parse_text_format() {
        let m = Morphism::parse("f", "# f\n0 -> 01\n2 -> 02\n1 -> 022\n").unwrap();
        assert_eq!(m, Morphism { name: "f".into(), ..F.clone() });
        assert!(Morphism::parse("bad", "0 -> 1\n2 -> 0").is_err());
    }

    #[test]
    fn tower_maps() {
        let t = Tower::with_x_len(40);
        let w1 = Occurrence::new(5, 7);
        assert_eq!(&t.x[5..=7], &d("010")[..]);
        let g = t.g_image(w1).unwrap();
        assert_eq!(g.start, 8);
        assert_eq!(t.tau_len(8, 6).unwrap(), 62);
        let z = t.tilde_tau(Occurrence::new(8, 13)).unwrap();
        assert_eq!(z.len(), 62);
    }
}
