//! Finite words over small alphabets `{0, ..., k-1}`.
//!
//! Letters are stored as `u8`. The text form writes each letter as one ASCII
//! digit; word files hold one word per line and `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{domain, Error, Result};

/// Largest alphabet any routine in this crate works with.
pub const MAX_ALPHABET: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: u8,
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet: u8) -> Result<Self> {
        if alphabet == 0 || alphabet as usize > MAX_ALPHABET {
            return domain(format!("alphabet size {alphabet} not in 1..={MAX_ALPHABET}"));
        }
        if let Some(&bad) = letters.iter().find(|&&a| a >= alphabet) {
            return domain(format!("letter {bad} outside alphabet of size {alphabet}"));
        }
        Ok(Word { letters, alphabet })
    }

    pub fn empty(alphabet: u8) -> Self {
        Word { letters: Vec::new(), alphabet }
    }

    /// Parses a digit string such as `"01022"`.
    pub fn parse(text: &str, alphabet: u8) -> Result<Self> {
        let letters = parse_digits(text)?;
        Word::new(letters, alphabet)
    }

    /// Ternary shorthand used all over the tests; panics on bad input.
    pub fn ternary(text: &str) -> Self {
        Word::parse(text, 3).expect("valid ternary word")
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn factor(&self, start: usize, end_inclusive: usize) -> Word {
        Word {
            letters: self.letters[start..=end_inclusive].to_vec(),
            alphabet: self.alphabet,
        }
    }

    pub fn count(&self, letter: u8) -> usize {
        count_letter(&self.letters, letter)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_digits(&self.letters))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({}|{})", to_digits(&self.letters), self.alphabet)
    }
}

impl AsRef<[u8]> for Word {
    fn as_ref(&self) -> &[u8] {
        &self.letters
    }
}

pub fn parse_digits(text: &str) -> Result<Vec<u8>> {
    text.trim()
        .bytes()
        .map(|b| {
            if b.is_ascii_digit() {
                Ok(b - b'0')
            } else {
                Err(Error::Parse(format!("unexpected character {:?} in word", b as char)))
            }
        })
        .collect()
}

pub fn to_digits(letters: &[u8]) -> String {
    letters.iter().map(|&a| (b'0' + a) as char).collect()
}

/// Reads the word-list text format: one word per line, blank lines and
/// `#` comment lines ignored.
pub fn parse_word_list(text: &str, alphabet: u8) -> Result<Vec<Word>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| Word::parse(l, alphabet))
        .collect()
}

pub fn count_letter(w: &[u8], letter: u8) -> usize {
    w.iter().filter(|&&a| a == letter).count()
}

/// An occurrence `host[start..=end]` of a factor. Only the indices are kept;
/// callers pass the host alongside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Occurrence {
    pub start: usize,
    pub end: usize,
}

impl Occurrence {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Occurrence { start, end }
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn slice<'a>(&self, host: &'a [u8]) -> &'a [u8] {
        &host[self.start..=self.end]
    }
}

/// Exchanges letters 1 and 2. Defined on ternary words only.
pub fn sister(w: &Word) -> Result<Word> {
    if w.alphabet() != 3 {
        return domain(format!("sister is defined over a ternary alphabet, got size {}", w.alphabet()));
    }
    Ok(Word { letters: sister_letters(w.letters()), alphabet: 3 })
}

pub fn sister_letters(w: &[u8]) -> Vec<u8> {
    w.iter()
        .map(|&a| match a {
            1 => 2,
            2 => 1,
            other => other,
        })
        .collect()
}

/// Letter counts, indexed by letter.
pub fn parikh(w: &Word) -> Vec<u64> {
    parikh_letters(w.letters(), w.alphabet() as usize)
}

pub fn parikh_letters(w: &[u8], alphabet: usize) -> Vec<u64> {
    let mut v = vec![0u64; alphabet];
    for &a in w {
        v[a as usize] += 1;
    }
    v
}

/// Starting positions of all (possibly overlapping) occurrences of `pattern`.
pub fn occurrences(host: &[u8], pattern: &[u8]) -> Vec<usize> {
    if pattern.is_empty() || pattern.len() > host.len() {
        return Vec::new();
    }
    host.windows(pattern.len())
        .enumerate()
        .filter(|(_, win)| *win == pattern)
        .map(|(i, _)| i)
        .collect()
}

pub fn contains_factor(host: &[u8], pattern: &[u8]) -> bool {
    pattern.is_empty() || host.windows(pattern.len()).any(|win| win == pattern)
}

/// Distinct complete returns to `w` inside `host`: factors spanning two
/// consecutive occurrences of `w`.
pub fn complete_returns(host: &Word, w: &Word) -> Result<BTreeSet<Word>> {
    if w.is_empty() {
        return domain("complete returns to the empty word are not defined");
    }
    let occ = occurrences(host.letters(), w.letters());
    Ok(occ
        .windows(2)
        .map(|p| host.factor(p[0], p[1] + w.len() - 1))
        .collect())
}
