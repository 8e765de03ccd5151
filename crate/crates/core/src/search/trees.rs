//! Trees of candidate complete returns. Each tree is grown letter by letter
//! from a root; a node becomes a leaf as soon as a rule classifies it. The
//! derived leaves are compared with the reference trees and with the
//! returns actually observed in long prefixes.

use std::collections::BTreeSet;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::morphic::{x_prefix, y_prefix, z_prefix, TAU, TAU_BAR};
use crate::palindromic::is_poor;
use crate::rational::{Rational, Threshold};
use crate::repetition::suffix_ok;
use crate::word::{occurrences, parse_digits, to_digits};

use super::presets::F1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum TreeKind {
    /// Complete returns to 00 in z that start with 001.
    Returns00InZ,
    /// Complete returns to 2 in y.
    Returns2InY,
    /// Complete returns to 0 in x.
    Returns0InX,
}

impl FromStr for TreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" | "z00" => Ok(TreeKind::Returns00InZ),
            "fig3" | "y2" => Ok(TreeKind::Returns2InY),
            "fig4" | "x0" => Ok(TreeKind::Returns0InX),
            _ => Err(Error::Parse(format!("unknown return tree {s:?}; expected fig2, fig3 or fig4"))),
        }
    }
}

impl TreeKind {
    pub const ALL: [TreeKind; 3] = [TreeKind::Returns00InZ, TreeKind::Returns2InY, TreeKind::Returns0InX];

    pub fn name(&self) -> &'static str {
        match self {
            TreeKind::Returns00InZ => "fig2",
            TreeKind::Returns2InY => "fig3",
            TreeKind::Returns0InX => "fig4",
        }
    }

    fn root(&self) -> &'static str {
        match self {
            TreeKind::Returns00InZ => "001",
            TreeKind::Returns2InY => "2",
            TreeKind::Returns0InX => "0",
        }
    }

    fn target(&self) -> &'static str {
        match self {
            TreeKind::Returns00InZ => "00",
            TreeKind::Returns2InY => "2",
            TreeKind::Returns0InX => "0",
        }
    }

    /// Leaf sets of the reference trees: (green, red, yellow).
    fn reference(&self) -> (&'static [&'static str], &'static [&'static str], &'static [&'static str]) {
        match self {
            TreeKind::Returns00InZ => (
                &["00100", "0010110100"],
                &["001010", "00101100", "0010110101", "0010110102", "001011011", "00101102", "0010111", "00102", "0011"],
                &[],
            ),
            TreeKind::Returns2InY => (&["202", "212", "22"], &["200", "201", "210", "211"], &[]),
            TreeKind::Returns0InX => (
                &["010", "0120", "01210", "012210", "020", "0210", "0220", "02220"],
                &[
                    "00", "011", "01211", "01212", "012211", "012212", "01222", "0211", "0212", "02211", "02212",
                    "02221", "02222",
                ],
                &["01220", "02210"],
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafColor {
    Green,
    Red,
    Yellow,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Leaf {
    pub word: String,
    pub color: LeafColor,
    pub reason: String,
}

const TABLE1_WORDS: [&str; 3] = ["102", "0011", "00100200"];
const TABLE2_WORDS: [&str; 3] = ["201", "210", "211"];

fn letter_permutations(w: &[u8]) -> Vec<Vec<u8>> {
    const PERMS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out: Vec<Vec<u8>> = PERMS.iter().map(|p| w.iter().map(|&a| p[a as usize]).collect()).collect();
    out.sort();
    out.dedup();
    out
}

fn classify(kind: TreeKind, w: &[u8]) -> Option<(LeafColor, String)> {
    let target = parse_digits(kind.target()).unwrap();
    let ends_in_target = w.len() > target.len() && w.ends_with(&target);
    match kind {
        TreeKind::Returns00InZ => {
            let seven_thirds = Threshold::new(Rational::from_parts(7, 3), false);
            if !suffix_ok(w, &seven_thirds) {
                return Some((LeafColor::Red, "has a suffix of exponent at least 7/3".into()));
            }
            for t in TABLE1_WORDS {
                let t = parse_digits(t).unwrap();
                if letter_permutations(&t).iter().any(|p| w.ends_with(p)) {
                    return Some((LeafColor::Red, format!("has a letter permutation of {} as a suffix", to_digits(&t))));
                }
            }
            ends_in_target.then(|| (LeafColor::Green, "complete return".into()))
        }
        TreeKind::Returns2InY => {
            if w.ends_with(&[0, 0]) {
                return Some((LeafColor::Red, zero_zero_reason()));
            }
            for t in TABLE2_WORDS {
                if w.ends_with(&parse_digits(t).unwrap()) {
                    return Some((LeafColor::Red, format!("has the word {t} as a suffix")));
                }
            }
            ends_in_target.then(|| (LeafColor::Green, "complete return".into()))
        }
        TreeKind::Returns0InX => {
            for f in F1 {
                if w.ends_with(&parse_digits(f).unwrap()) {
                    return Some((LeafColor::Red, format!("has the forbidden factor {f} as a suffix")));
                }
            }
            if ends_in_target && is_poor(w) {
                return Some((LeafColor::Yellow, "poor".into()));
            }
            ends_in_target.then(|| (LeafColor::Green, "complete return".into()))
        }
    }
}

/// 00 in y would put tau(00)00 or its sister into z.
fn zero_zero_reason() -> String {
    let mut a = TAU.transduce(&[0, 0]).unwrap();
    a.extend([0, 0]);
    let mut b = TAU_BAR.transduce(&[0, 0]).unwrap();
    b.extend([0, 0]);
    format!("has suffix 00, and tau(00)00 = {} or its sister {} would appear in z", to_digits(&a), to_digits(&b))
}

/// Whether the image of 00 really lands on a letter permutation of the
/// longest prefix word of the rich 7/3 table, in both transducer states.
pub fn zero_zero_image_is_excluded() -> bool {
    let t = parse_digits("00100200").unwrap();
    let perms = letter_permutations(&t);
    [&*TAU, &*TAU_BAR].iter().all(|tr| {
        let mut v = tr.transduce(&[0, 0]).unwrap();
        v.extend([0, 0]);
        perms.contains(&v)
    })
}

fn suppressed(kind: TreeKind, w: &[u8]) -> bool {
    // In z the letters 1 and 2 are never adjacent.
    kind == TreeKind::Returns00InZ && (w.ends_with(&[1, 2]) || w.ends_with(&[2, 1]))
}

const MAX_TREE_DEPTH: usize = 32;

pub fn build_return_tree(kind: TreeKind) -> Result<Vec<Leaf>> {
    let mut leaves = Vec::new();
    let mut stack = vec![parse_digits(kind.root()).unwrap()];
    while let Some(w) = stack.pop() {
        if w.len() > MAX_TREE_DEPTH {
            return Err(Error::Inconclusive(format!("return tree {} does not close by depth {MAX_TREE_DEPTH}", kind.name())));
        }
        if let Some((color, reason)) = classify(kind, &w) {
            leaves.push(Leaf { word: to_digits(&w), color, reason });
            continue;
        }
        for a in (0..3u8).rev() {
            let mut child = w.clone();
            child.push(a);
            if !suppressed(kind, &child) {
                stack.push(child);
            }
        }
    }
    leaves.sort_by(|a, b| a.word.cmp(&b.word));
    Ok(leaves)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TreeVerification {
    pub tree: &'static str,
    pub leaves: Vec<Leaf>,
    /// Derived leaf colours agree with the reference tree.
    pub matches_reference: bool,
    /// Complete returns seen in a long prefix of the host word.
    pub observed_returns: Vec<String>,
    /// Every observed return is a green leaf.
    pub observed_are_green: bool,
    pub ok: bool,
}

const HOST_LEN: usize = 20_000;

pub fn verify_return_tree(kind: TreeKind) -> Result<TreeVerification> {
    let leaves = build_return_tree(kind)?;
    let (green, red, yellow) = kind.reference();
    let same = |color: LeafColor, expected: &[&str]| {
        let got: BTreeSet<&str> = leaves.iter().filter(|l| l.color == color).map(|l| l.word.as_str()).collect();
        got == expected.iter().copied().collect()
    };
    let matches_reference = same(LeafColor::Green, green) && same(LeafColor::Red, red) && same(LeafColor::Yellow, yellow);

    let (host, root) = match kind {
        TreeKind::Returns00InZ => (z_prefix(HOST_LEN), "001"),
        TreeKind::Returns2InY => (y_prefix(HOST_LEN), "2"),
        TreeKind::Returns0InX => (x_prefix(HOST_LEN), "0"),
    };
    let target = parse_digits(kind.target()).unwrap();
    let root = parse_digits(root).unwrap();
    let occ = occurrences(&host, &target);
    let observed: BTreeSet<String> = occ
        .windows(2)
        .map(|p| &host[p[0]..p[1] + target.len()])
        .filter(|r| r.starts_with(&root))
        .map(to_digits)
        .collect();
    let greens: BTreeSet<&str> = green.iter().copied().collect();
    let observed_are_green = !observed.is_empty() && observed.iter().all(|r| greens.contains(r.as_str()));
    let extra_ok = kind != TreeKind::Returns2InY || zero_zero_image_is_excluded();
    Ok(TreeVerification {
        tree: kind.name(),
        leaves,
        matches_reference,
        observed_returns: observed.into_iter().collect(),
        observed_are_green,
        ok: matches_reference && observed_are_green && extra_ok,
    })
}
