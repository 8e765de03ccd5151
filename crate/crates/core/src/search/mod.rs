//! Depth-first search for longest words satisfying incremental predicates.
//!
//! Letters are tried in ascending order, so the first longest word found is
//! the lexicographically least one. The parallel mode expands the tree
//! sequentially to a fixed depth and then searches the frontier subtrees
//! independently; merging by (length desc, witness asc) gives the same
//! result as the sequential run whenever the search is exhausted.

pub mod forbidden;
pub mod predicate;
pub mod presets;
pub mod trees;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::error::{domain, Result};
use crate::parallel::{map_collect, Parallelism};
use crate::word::Word;

pub use predicate::{satisfies_all, CheckerSet, Pipeline, Predicate, Stage};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Alphabet size of the reported witness.
    pub alphabet: u8,
    /// Letters tried at each step, in this order. Kept sorted.
    pub letters: Vec<u8>,
    pub prefix: Vec<u8>,
    pub predicates: Vec<Predicate>,
    /// Stop extending at this length; reaching it makes the result
    /// non-exhaustive.
    pub max_length: Option<usize>,
    /// Maximum number of accepted nodes.
    pub budget: Option<u64>,
    pub parallelism: Parallelism,
    /// Depth below the prefix at which the tree is split for parallel work.
    pub split_depth: usize,
}

impl SearchConfig {
    pub fn new(alphabet: u8, predicates: Vec<Predicate>) -> Self {
        SearchConfig {
            alphabet,
            letters: (0..alphabet).collect(),
            prefix: Vec::new(),
            predicates,
            max_length: None,
            budget: None,
            parallelism: Parallelism::default(),
            split_depth: 8,
        }
    }

    pub fn with_letters(mut self, letters: &[u8]) -> Self {
        let mut l = letters.to_vec();
        l.sort_unstable();
        l.dedup();
        self.letters = l;
        self
    }

    pub fn with_prefix(mut self, prefix: &[u8]) -> Self {
        self.prefix = prefix.to_vec();
        self
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_parallelism(mut self, p: Parallelism) -> Self {
        self.parallelism = p;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SearchResult {
    pub length: usize,
    #[serde(serialize_with = "crate::search::ser_word")]
    pub witness: Word,
    /// True when the whole tree was explored.
    pub exhausted: bool,
    pub nodes: u64,
}

pub(crate) fn ser_word<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(w)
}

struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
    hit: AtomicBool,
}

impl Budget {
    const FLUSH: u64 = 1024;

    /// Adds locally counted nodes; false once the limit is exceeded.
    fn charge(&self, n: u64) -> bool {
        let Some(limit) = self.limit else { return true };
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if total > limit {
            self.hit.store(true, Ordering::Relaxed);
        }
        !self.hit.load(Ordering::Relaxed)
    }
}

struct Outcome {
    best: Vec<u8>,
    nodes: u64,
    exhausted: bool,
}

fn better(cand: &[u8], best: &[u8]) -> bool {
    cand.len() > best.len() || (cand.len() == best.len() && cand < best)
}

/// Explores everything below `word`. Children at length `stop_at` are
/// handed to `on_frontier` instead of being expanded.
fn explore(
    set: &mut CheckerSet,
    word: &mut Vec<u8>,
    letters: &[u8],
    max_length: Option<usize>,
    stop_at: Option<usize>,
    budget: &Budget,
    on_frontier: &mut dyn FnMut(&[u8], &CheckerSet),
) -> Outcome {
    let base = word.len();
    let mut best = word.clone();
    let mut nodes = 0u64;
    let mut unflushed = 0u64;
    let mut exhausted = true;
    // next[d] = index of the next letter to try below depth base + d.
    let mut next: Vec<usize> = vec![0];
    while let Some(top) = next.last_mut() {
        if *top == letters.len() || max_length.is_some_and(|m| word.len() >= m) {
            if *top < letters.len() {
                exhausted = false;
            }
            next.pop();
            if word.len() > base {
                word.pop();
                set.pop();
            }
            continue;
        }
        let a = letters[*top];
        *top += 1;
        let ok = set.push(a);
        if !ok {
            set.pop();
            continue;
        }
        word.push(a);
        nodes += 1;
        unflushed += 1;
        if unflushed == Budget::FLUSH {
            unflushed = 0;
            if !budget.charge(Budget::FLUSH) {
                exhausted = false;
                while word.len() > base {
                    word.pop();
                    set.pop();
                }
                break;
            }
        }
        if better(word, &best) {
            best.clone_from(word);
        }
        if stop_at == Some(word.len()) {
            on_frontier(word, set);
            word.pop();
            set.pop();
        } else {
            next.push(0);
        }
    }
    if unflushed > 0 && !budget.charge(unflushed) {
        exhausted = false;
    }
    Outcome { best, nodes, exhausted }
}

pub fn longest_word(cfg: &SearchConfig) -> Result<SearchResult> {
    if cfg.letters.iter().any(|&a| a >= cfg.alphabet) {
        return domain("search letters must lie in the alphabet");
    }
    if cfg.prefix.iter().any(|&a| a >= cfg.alphabet) {
        return domain("prefix letters must lie in the alphabet");
    }
    let mut set = CheckerSet::new(&cfg.predicates)?;
    for &a in &cfg.prefix {
        if !set.push(a) {
            return domain(format!("the prefix {} already fails the predicates", crate::word::to_digits(&cfg.prefix)));
        }
    }
    let budget = Budget { limit: cfg.budget, used: AtomicU64::new(0), hit: AtomicBool::new(false) };
    let mut word = cfg.prefix.clone();

    let outcome = if cfg.parallelism.is_parallel() && cfg.split_depth > 0 {
        let stop = cfg.prefix.len() + cfg.split_depth;
        let mut frontier: Vec<(Vec<u8>, CheckerSet)> = Vec::new();
        let shallow = explore(&mut set, &mut word, &cfg.letters, cfg.max_length, Some(stop), &budget, &mut |w, s| {
            frontier.push((w.to_vec(), s.clone()))
        });
        let parts = map_collect(cfg.parallelism, frontier, |(mut w, mut s)| {
            explore(&mut s, &mut w, &cfg.letters, cfg.max_length, None, &budget, &mut |_, _| {})
        });
        parts.into_iter().fold(shallow, |mut acc, o| {
            if better(&o.best, &acc.best) {
                acc.best = o.best;
            }
            acc.nodes += o.nodes;
            acc.exhausted &= o.exhausted;
            acc
        })
    } else {
        explore(&mut set, &mut word, &cfg.letters, cfg.max_length, None, &budget, &mut |_, _| {})
    };

    Ok(SearchResult {
        length: outcome.best.len(),
        witness: Word::new(outcome.best, cfg.alphabet)?,
        exhausted: outcome.exhausted && !budget.hit.load(Ordering::Relaxed),
        nodes: outcome.nodes,
    })
}
