//! Palindromes, richness and the poor / middle-class predicates.

use crate::error::{domain, Result};
use crate::word::MAX_ALPHABET;

const NONE: u32 = u32::MAX;
const IMAGINARY: u32 = 0;
const EMPTY: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    len: i32,
    link: u32,
    next: [u32; MAX_ALPHABET],
}

impl Node {
    fn new(len: i32, link: u32) -> Self {
        Node { len, link, next: [NONE; MAX_ALPHABET] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct JournalEntry {
    prev_last: u32,
    /// Parent of the node created by this push, if one was.
    created_under: Option<u32>,
}

/// Palindromic tree with rollback. Every node is a distinct nonempty
/// palindrome factor; the two roots stand for length -1 and the empty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eertree {
    word: Vec<u8>,
    nodes: Vec<Node>,
    last: u32,
    journal: Vec<JournalEntry>,
}

impl Default for Eertree {
    fn default() -> Self {
        Self::new()
    }
}

impl Eertree {
    pub fn new() -> Self {
        Eertree {
            word: Vec::new(),
            nodes: vec![Node::new(-1, IMAGINARY), Node::new(0, IMAGINARY)],
            last: EMPTY,
            journal: Vec::new(),
        }
    }

    pub fn from_word(w: &[u8]) -> Self {
        let mut t = Eertree::new();
        for &a in w {
            t.push(a);
        }
        t
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Distinct palindromic factors, the empty word included.
    pub fn distinct_palindromes(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn longest_palindromic_suffix_len(&self) -> usize {
        self.nodes[self.last as usize].len.max(0) as usize
    }

    fn fits(&self, node: u32, pos: usize, a: u8) -> bool {
        let len = self.nodes[node as usize].len;
        let before = pos as i64 - len as i64 - 1;
        before >= 0 && self.word[before as usize] == a
    }

    fn find(&self, mut node: u32, pos: usize, a: u8) -> u32 {
        loop {
            if self.nodes[node as usize].len == -1 || self.fits(node, pos, a) {
                return node;
            }
            node = self.nodes[node as usize].link;
        }
    }

    /// Appends `a`. Returns true if the longest palindromic suffix of the
    /// new word is a new palindrome (occurs only once).
    pub fn push(&mut self, a: u8) -> bool {
        let pos = self.word.len();
        self.word.push(a);
        let prev_last = self.last;
        let parent = self.find(self.last, pos, a);
        let existing = self.nodes[parent as usize].next[a as usize];
        if existing != NONE {
            self.last = existing;
            self.journal.push(JournalEntry { prev_last, created_under: None });
            return false;
        }
        let len = self.nodes[parent as usize].len + 2;
        let link = if len == 1 {
            EMPTY
        } else {
            let l = self.find(self.nodes[parent as usize].link, pos, a);
            self.nodes[l as usize].next[a as usize]
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(Node::new(len, link));
        self.nodes[parent as usize].next[a as usize] = id;
        self.last = id;
        self.journal.push(JournalEntry { prev_last, created_under: Some(parent) });
        true
    }

    /// Undoes the most recent `push`. Panics on an empty word.
    pub fn pop(&mut self) {
        let entry = self.journal.pop().expect("pop on empty eertree");
        let a = self.word.pop().expect("journal and word agree");
        if let Some(parent) = entry.created_under {
            self.nodes.pop();
            self.nodes[parent as usize].next[a as usize] = NONE;
        }
        self.last = entry.prev_last;
    }
}

pub fn count_distinct_palindromes(w: &[u8]) -> usize {
    Eertree::from_word(w).distinct_palindromes()
}

/// A word of length n is rich when it has n + 1 distinct palindromic
/// factors, the empty word included.
pub fn is_rich(w: &[u8]) -> bool {
    let mut t = Eertree::new();
    w.iter().all(|&a| t.push(a))
}

pub fn has_unioccurrent_palindromic_suffix(w: &[u8]) -> Result<bool> {
    let Some((&a, rest)) = w.split_last() else {
        return domain("the empty word has no nonempty palindromic suffix");
    };
    let mut t = Eertree::from_word(rest);
    Ok(t.push(a))
}

/// Richness tracked letter by letter. Only meaningful while every accepted
/// prefix was rich, which is how the searches use it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RichnessState {
    tree: Eertree,
}

impl RichnessState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, a: u8) -> bool {
        self.tree.push(a)
    }

    pub fn pop(&mut self) {
        self.tree.pop()
    }

    pub fn tree(&self) -> &Eertree {
        &self.tree
    }
}

pub fn is_palindrome(w: &[u8]) -> bool {
    w.iter().eq(w.iter().rev())
}

fn even_twos_prefix(w: &[u8]) -> Vec<bool> {
    let mut even = Vec::with_capacity(w.len() + 1);
    let mut parity = false;
    even.push(true);
    for &a in w {
        parity ^= a == 2;
        even.push(!parity);
    }
    even
}

/// Every palindromic prefix holding an even number of 2s, the empty one
/// included, occurs again at some later start index with an even number of
/// 2s before it. The empty word occurs at every index up to |w|.
pub fn is_poor(w: &[u8]) -> bool {
    let even = even_twos_prefix(w);
    let n = w.len();
    for len in 0..=n {
        let u = &w[..len];
        if !even[len] || !is_palindrome(u) {
            continue;
        }
        let recurs = (1..=n - len).any(|p| even[p] && &w[p..p + len] == u);
        if !recurs {
            return false;
        }
    }
    true
}

/// Starts with 2 and every odd-length palindromic prefix occurs again at a
/// nonzero even start index.
pub fn is_middle_class(w: &[u8]) -> bool {
    if w.first() != Some(&2) {
        return false;
    }
    let n = w.len();
    (1..=n).step_by(2).all(|len| {
        let u = &w[..len];
        !is_palindrome(u) || (2..=n - len).step_by(2).any(|p| &w[p..p + len] == u)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_digits;

    fn d(s: &str) -> Vec<u8> {
        parse_digits(s).unwrap()
    }

    #[test]
    fn palindrome_counts() {
        assert_eq!(count_distinct_palindromes(&d("001002")), 7);
        assert_eq!(count_distinct_palindromes(&[]), 1);
        assert_eq!(count_distinct_palindromes(&d("0120")), 4);
        assert!(!is_rich(&d("0120")));
        assert!(is_rich(&d("001002")));
    }

    #[test]
    fn unioccurrent_suffix() {
        assert!(has_unioccurrent_palindromic_suffix(&d("0012")).unwrap());
        assert!(!has_unioccurrent_palindromic_suffix(&d("0120")).unwrap());
        assert!(has_unioccurrent_palindromic_suffix(&d("0")).unwrap());
        assert!(has_unioccurrent_palindromic_suffix(&[]).is_err());
    }

    #[test]
    fn push_pop_restores_state() {
        let mut t = Eertree::from_word(&d("0102201"));
        let before = t.clone();
        t.push(0);
        t.push(2);
        t.pop();
        t.pop();
        assert_eq!(t, before);
    }

    #[test]
    fn poor_examples() {
        assert!(is_poor(&d("2012")));
        assert!(is_poor(&d("01220")));
        assert!(is_poor(&d("0220102020220")));
        assert!(!is_poor(&d("0120")));
    }

    #[test]
    fn middle_class_examples() {
        assert!(is_middle_class(&d("2202122")));
        assert!(is_middle_class(&d("202122202")));
        assert!(!is_middle_class(&d("2012")));
    }
}
