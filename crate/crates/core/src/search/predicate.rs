//! Incremental predicates. Every checker follows one protocol: `push`
//! always records the letter and answers whether the longer word still
//! satisfies the predicate; `pop` undoes the last `push` exactly.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::morphic::{Morphism, Transducer};
use crate::palindromic::{is_poor, RichnessState};
use crate::repetition::{IncrementalPowerFree, Threshold};
use crate::word::to_digits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    Morphism(Morphism),
    /// Position parity is counted from the start of this stage's input.
    Transducer(Transducer),
}

impl Stage {
    fn name(&self) -> &str {
        match self {
            Stage::Morphism(m) => &m.name,
            Stage::Transducer(t) => &t.name,
        }
    }

    fn block(&self, a: u8, index: usize) -> &[u8] {
        match self {
            Stage::Morphism(m) => m.image(a),
            Stage::Transducer(t) => t.block(a, index),
        }
    }
}

/// Maps applied left to right: `[phi, fhat]` means `fhat(phi(u))`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Pipeline {
    pub stages: Vec<Stage>,
}

impl Pipeline {
    pub fn new(stages: Vec<Stage>) -> Self {
        Pipeline { stages }
    }

    pub fn apply(&self, w: &[u8]) -> Vec<u8> {
        let mut st = PipelineState::new(self.clone());
        let mut out = Vec::new();
        for &a in w {
            out.extend(st.push(a));
        }
        out
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.stages.iter().rev().map(Stage::name).collect();
        write!(f, "{}", names.join("∘"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    PowerFree(Threshold),
    Rich,
    NoFactorFrom(Vec<Vec<u8>>),
    /// The inner predicates hold for the image of the word.
    Image { pipeline: Pipeline, inner: Vec<Predicate> },
    /// No factor of the image, of length at most `window`, is poor.
    NoPoorFactor { pipeline: Pipeline, window: usize },
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::PowerFree(t) => write!(f, "{t}-power-free"),
            Predicate::Rich => f.write_str("rich"),
            Predicate::NoFactorFrom(set) => {
                let words: Vec<String> = set.iter().map(|w| to_digits(w)).collect();
                write!(f, "avoids {{{}}}", words.join(","))
            }
            Predicate::Image { pipeline, inner } => {
                let inner: Vec<String> = inner.iter().map(|p| p.to_string()).collect();
                write!(f, "{pipeline}(u) is {}", inner.join(" and "))
            }
            Predicate::NoPoorFactor { pipeline, window } => {
                write!(f, "{pipeline}(u) has no poor factor (window {window})")
            }
        }
    }
}

#[derive(Clone, Debug)]
struct PipelineState {
    pipeline: Pipeline,
    /// Letters fed into each stage so far.
    fed: Vec<usize>,
    history: Vec<Vec<usize>>,
}

impl PipelineState {
    fn new(pipeline: Pipeline) -> Self {
        let n = pipeline.stages.len();
        PipelineState { pipeline, fed: vec![0; n], history: Vec::new() }
    }

    fn push(&mut self, a: u8) -> Vec<u8> {
        self.history.push(self.fed.clone());
        let mut buf = vec![a];
        for (k, stage) in self.pipeline.stages.iter().enumerate() {
            let mut out = Vec::with_capacity(buf.len() * 4);
            for &b in &buf {
                out.extend_from_slice(stage.block(b, self.fed[k]));
                self.fed[k] += 1;
            }
            buf = out;
        }
        buf
    }

    fn pop(&mut self) {
        self.fed = self.history.pop().expect("pipeline pop without push");
    }
}

#[derive(Clone, Debug)]
enum Checker {
    PowerFree(IncrementalPowerFree),
    Rich(RichnessState),
    NoFactor { word: Vec<u8>, set: Arc<Vec<Vec<u8>>> },
    Image { pipe: PipelineState, inner: Box<CheckerSet>, pushed: Vec<usize> },
    NoPoor { pipe: PipelineState, image: Vec<u8>, lens: Vec<usize>, window: usize },
}

impl Checker {
    fn build(p: &Predicate) -> Result<Self> {
        Ok(match p {
            Predicate::PowerFree(t) => Checker::PowerFree(IncrementalPowerFree::new(*t)?),
            Predicate::Rich => Checker::Rich(RichnessState::new()),
            Predicate::NoFactorFrom(set) => Checker::NoFactor { word: Vec::new(), set: Arc::new(set.clone()) },
            Predicate::Image { pipeline, inner } => Checker::Image {
                pipe: PipelineState::new(pipeline.clone()),
                inner: Box::new(CheckerSet::new(inner)?),
                pushed: Vec::new(),
            },
            Predicate::NoPoorFactor { pipeline, window } => Checker::NoPoor {
                pipe: PipelineState::new(pipeline.clone()),
                image: Vec::new(),
                lens: Vec::new(),
                window: *window,
            },
        })
    }

    fn push(&mut self, a: u8) -> bool {
        match self {
            Checker::PowerFree(st) => st.push(a),
            Checker::Rich(st) => st.push(a),
            Checker::NoFactor { word, set } => {
                word.push(a);
                !set.iter().any(|f| word.ends_with(f))
            }
            Checker::Image { pipe, inner, pushed } => {
                let block = pipe.push(a);
                let mut count = 0;
                let mut ok = true;
                for &b in &block {
                    count += 1;
                    if !inner.push(b) {
                        ok = false;
                        break;
                    }
                }
                pushed.push(count);
                ok
            }
            Checker::NoPoor { pipe, image, lens, window } => {
                let block = pipe.push(a);
                let from = image.len();
                image.extend_from_slice(&block);
                lens.push(block.len());
                (from..image.len()).all(|e| {
                    let lo = (e + 1).saturating_sub(*window);
                    (lo..=e).all(|s| !is_poor(&image[s..=e]))
                })
            }
        }
    }

    fn pop(&mut self) {
        match self {
            Checker::PowerFree(st) => st.pop(),
            Checker::Rich(st) => st.pop(),
            Checker::NoFactor { word, .. } => {
                word.pop();
            }
            Checker::Image { pipe, inner, pushed } => {
                for _ in 0..pushed.pop().expect("image pop without push") {
                    inner.pop();
                }
                pipe.pop();
            }
            Checker::NoPoor { pipe, image, lens, .. } => {
                let l = lens.pop().expect("poor-factor pop without push");
                image.truncate(image.len() - l);
                pipe.pop();
            }
        }
    }
}

/// A conjunction of predicates, evaluated in order and short-circuited.
#[derive(Clone, Debug)]
pub struct CheckerSet {
    checkers: Vec<Checker>,
    /// How many checkers saw each push.
    journal: Vec<usize>,
}

impl CheckerSet {
    pub fn new(predicates: &[Predicate]) -> Result<Self> {
        Ok(CheckerSet {
            checkers: predicates.iter().map(Checker::build).collect::<Result<_>>()?,
            journal: Vec::new(),
        })
    }

    pub fn push(&mut self, a: u8) -> bool {
        let mut seen = 0;
        let mut ok = true;
        for c in self.checkers.iter_mut() {
            seen += 1;
            if !c.push(a) {
                ok = false;
                break;
            }
        }
        self.journal.push(seen);
        ok
    }

    pub fn pop(&mut self) {
        let seen = self.journal.pop().expect("pop without push");
        for c in self.checkers[..seen].iter_mut().rev() {
            c.pop();
        }
    }

    /// Length of the word pushed so far.
    pub fn depth(&self) -> usize {
        self.journal.len()
    }
}

/// Checks all predicates on a finished word, letter by letter.
pub fn satisfies_all(predicates: &[Predicate], w: &[u8]) -> Result<bool> {
    let mut set = CheckerSet::new(predicates)?;
    Ok(w.iter().all(|&a| set.push(a)))
}
