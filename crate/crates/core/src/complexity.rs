//! Factor statistics of x, y and z measured on finite prefixes.
//!
//! Every count is taken on a prefix and again on a prefix twice as long; a
//! disagreement means the prefix was too short and the query fails as
//! inconclusive rather than guessing.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{domain, Error, Result};
use crate::morphic::InfiniteWord;
use crate::palindromic::is_palindrome;
use crate::parallel::{map_collect, Parallelism};
use crate::word::{contains_factor, to_digits};

pub struct PrefixOracle {
    pub word: InfiniteWord,
    /// Length of the shorter of the two prefixes compared.
    pub base_len: usize,
    long: Vec<u8>,
}

/// Default prefix length for factors of length up to `n`.
pub fn default_prefix_len(n: usize) -> usize {
    10_000usize.max(200 * n)
}

impl PrefixOracle {
    pub fn new(word: InfiniteWord, base_len: usize) -> Self {
        PrefixOracle { word, base_len, long: word.prefix(2 * base_len) }
    }

    pub fn for_max_n(word: InfiniteWord, n: usize) -> Self {
        Self::new(word, default_prefix_len(n))
    }

    fn short(&self) -> &[u8] {
        &self.long[..self.base_len]
    }

    fn stable<T: PartialEq + std::fmt::Debug>(&self, what: &str, f: impl Fn(&[u8]) -> T) -> Result<T> {
        let a = f(self.short());
        let b = f(&self.long);
        if a == b {
            Ok(b)
        } else {
            Err(Error::Inconclusive(format!(
                "{what} changed between prefixes of length {} and {}; use a longer prefix",
                self.base_len,
                self.long.len()
            )))
        }
    }

    pub fn factor_complexity(&self, n: usize) -> Result<usize> {
        self.stable(&format!("factor complexity at {n}"), |w| distinct_windows(w, n).len())
    }

    pub fn palindromic_complexity(&self, n: usize) -> Result<usize> {
        self.stable(&format!("palindromic complexity at {n}"), |w| {
            distinct_windows(w, n).into_iter().filter(|f| is_palindrome(f)).count()
        })
    }

    /// Right-special factors of length `n` with their right extensions.
    pub fn right_special(&self, n: usize) -> Result<BTreeMap<String, Vec<u8>>> {
        self.stable(&format!("right-special factors at {n}"), |w| {
            let mut ext: BTreeMap<&[u8], BTreeSet<u8>> = BTreeMap::new();
            for win in w.windows(n + 1) {
                ext.entry(&win[..n]).or_default().insert(win[n]);
            }
            ext.into_iter()
                .filter(|(_, e)| e.len() >= 2)
                .map(|(f, e)| (to_digits(f), e.into_iter().collect()))
                .collect()
        })
    }

    /// Pairs (a, b) with `a p b` a factor. `p` must itself be a factor.
    pub fn palindromic_extensions(&self, p: &[u8]) -> Result<Extensions> {
        if !contains_factor(&self.long, p) {
            return domain(format!("{} is not a factor of the prefix", to_digits(p)));
        }
        let all: BTreeSet<(u8, u8)> = self.stable(&format!("extensions of {}", to_digits(p)), |w| {
            w.windows(p.len() + 2)
                .filter(|win| &win[1..=p.len()] == p)
                .map(|win| (win[0], win[p.len() + 1]))
                .collect()
        })?;
        let palindromic = all.iter().copied().filter(|(a, b)| a == b).collect();
        Ok(Extensions { all, palindromic })
    }

    /// Distinct palindromic factors of the prefix with length at most `max_len`.
    pub fn palindromes_up_to(&self, max_len: usize) -> Vec<Vec<u8>> {
        let mut out: BTreeSet<&[u8]> = BTreeSet::new();
        for n in 1..=max_len {
            out.extend(distinct_windows(&self.long, n).into_iter().filter(|f| is_palindrome(f)));
        }
        out.into_iter().map(<[u8]>::to_vec).collect()
    }

    /// P(n) + P(n+1) - (C(n+1) - C(n) + 2); zero for all n in a rich word.
    pub fn richness_defect(&self, n: usize) -> Result<i64> {
        let p0 = self.palindromic_complexity(n)? as i64;
        let p1 = self.palindromic_complexity(n + 1)? as i64;
        let c0 = self.factor_complexity(n)? as i64;
        let c1 = self.factor_complexity(n + 1)? as i64;
        Ok(p0 + p1 - (c1 - c0 + 2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Extensions {
    pub all: BTreeSet<(u8, u8)>,
    /// The pairs (a, a).
    pub palindromic: BTreeSet<(u8, u8)>,
}

fn distinct_windows(w: &[u8], n: usize) -> HashSet<&[u8]> {
    if n == 0 {
        return std::iter::once(&w[..0]).collect();
    }
    w.windows(n).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Factor,
    Palindromic,
    Special,
    Defect,
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "factor" => Ok(Kind::Factor),
            "palindromic" => Ok(Kind::Palindromic),
            "special" => Ok(Kind::Special),
            "defect" => Ok(Kind::Defect),
            _ => Err(Error::Parse(format!("unknown complexity kind {s:?}"))),
        }
    }
}

/// Known closed forms; `None` where none is claimed.
pub fn closed_form(word: InfiniteWord, kind: Kind, n: usize) -> Option<i64> {
    let n = n as i64;
    match (word, kind) {
        (_, Kind::Defect) => Some(0),
        (InfiniteWord::X | InfiniteWord::Y, Kind::Factor) => Some(2 * n + 1),
        (InfiniteWord::Z, Kind::Factor) => Some(match n {
            0 => 1,
            1 => 3,
            2 => 7,
            3 => 12,
            _ => 4 * n + 2,
        }),
        (InfiniteWord::Z, Kind::Palindromic) => Some(match n {
            0 => 1,
            1 | 2 => 3,
            3 => 4,
            n if n % 2 == 0 => 4,
            _ => 2,
        }),
        (InfiniteWord::Z, Kind::Special) if n >= 4 => Some(4),
        _ => None,
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Row {
    pub n: usize,
    pub value: i64,
    pub expected: Option<i64>,
}

/// Values for n = 0..=max_n, one query per n.
pub fn table(word: InfiniteWord, kind: Kind, max_n: usize, mode: Parallelism) -> Result<Vec<Row>> {
    let oracle = PrefixOracle::for_max_n(word, max_n + 1);
    let rows = map_collect(mode, (0..=max_n).collect(), |n| -> Result<Row> {
        let value = match kind {
            Kind::Factor => oracle.factor_complexity(n)? as i64,
            Kind::Palindromic => oracle.palindromic_complexity(n)? as i64,
            Kind::Special => oracle.right_special(n)?.len() as i64,
            Kind::Defect => oracle.richness_defect(n)?,
        };
        Ok(Row { n, value, expected: closed_form(word, kind, n) })
    });
    rows.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_digits;

    #[test]
    fn z_small_values() {
        let o = PrefixOracle::new(InfiniteWord::Z, 10_000);
        let c: Vec<usize> = (0..6).map(|n| o.factor_complexity(n).unwrap()).collect();
        assert_eq!(c, vec![1, 3, 7, 12, 18, 22]);
        assert_eq!(o.right_special(5).unwrap().len(), 4);
    }

    #[test]
    fn extensions_of_short_palindromes() {
        let x = PrefixOracle::new(InfiniteWord::X, 10_000);
        let e = x.palindromic_extensions(&[1]).unwrap();
        assert_eq!(e.palindromic.into_iter().collect::<Vec<_>>(), vec![(0, 0)]);
        assert_eq!(e.all.len(), 1);
        let y = PrefixOracle::new(InfiniteWord::Y, 10_000);
        let e = y.palindromic_extensions(&[2]).unwrap();
        assert_eq!(e.palindromic.into_iter().collect::<Vec<_>>(), vec![(2, 2)]);
        assert!(x.palindromic_extensions(&parse_digits("111").unwrap()).is_err());
    }

    #[test]
    fn short_prefix_is_inconclusive() {
        let o = PrefixOracle::new(InfiniteWord::Z, 30);
        assert!(matches!(o.factor_complexity(20), Err(Error::Inconclusive(_))));
    }
}
