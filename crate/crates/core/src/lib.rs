//! Rich words, repetition thresholds, and the morphic words used to pin
//! down the ternary rich repetition threshold.

pub mod complexity;
pub mod error;
pub mod morphic;
pub mod palindromic;
pub mod parallel;
pub mod rational;
pub mod repetition;
pub mod search;
pub mod stretch;
pub mod word;

pub use error::{Error, Result};
pub use parallel::Parallelism;
pub use rational::{Rational, Threshold};
pub use word::{Occurrence, Word};
