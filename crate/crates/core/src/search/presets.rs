//! Named searches with their known answers.

use crate::error::{Error, Result};
use crate::morphic::{FHAT, PHI, PSI, TAU};
use crate::rational::Threshold;
use crate::word::parse_digits;

use super::{Pipeline, Predicate, SearchConfig, Stage};

#[derive(Clone, Copy, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    /// Length of the longest word, when known.
    pub expected: Option<usize>,
    /// Too slow for routine runs; needs a budget or a lot of time.
    pub extended: bool,
    build: fn() -> SearchConfig,
}

impl Preset {
    pub fn config(&self) -> SearchConfig {
        (self.build)()
    }
}

fn t(s: &str) -> Threshold {
    s.parse().expect("literal threshold")
}

fn words(list: &[&str]) -> Vec<Vec<u8>> {
    list.iter().map(|s| parse_digits(s).expect("literal word")).collect()
}

/// 7/3-power-free rich ternary words with a given prefix.
fn rich_ternary(prefix: &str) -> SearchConfig {
    SearchConfig::new(3, vec![Predicate::Rich, Predicate::PowerFree(t("7/3"))]).with_prefix(&parse_digits(prefix).unwrap())
}

fn tau_image_rich() -> Predicate {
    Predicate::Image {
        pipeline: Pipeline::new(vec![Stage::Transducer(TAU.clone())]),
        inner: vec![Predicate::Rich, Predicate::PowerFree(t("16/7"))],
    }
}

/// Words y whose transducer image is 16/7-power-free and rich.
fn tau_preimage(prefix: &str) -> SearchConfig {
    SearchConfig::new(3, vec![tau_image_rich()]).with_prefix(&parse_digits(prefix).unwrap())
}

pub const POOR_WINDOW: usize = 64;

fn no_poor(stages: Vec<Stage>) -> Predicate {
    Predicate::NoPoorFactor { pipeline: Pipeline::new(stages), window: POOR_WINDOW }
}

pub const F1: [&str; 10] = ["00", "11", "212", "0101", "1010", "2222", "1222", "2221", "022022", "220220"];

pub fn f1_words() -> Vec<Vec<u8>> {
    words(&F1)
}

pub const START_FACTORS: [&str; 3] = ["001002", "112110", "220221"];
pub const F_PHI: [&str; 7] = ["00", "11", "22", "33", "01", "20", "31"];
pub const F_PRIME: [&str; 3] = ["55", "444", "5445"];
pub const F_PSI: [&str; 3] = ["11", "000", "1001"];

const PRESETS: &[Preset] = &[
    Preset {
        name: "table1_102",
        description: "7/3-power-free rich ternary words with prefix 102",
        expected: Some(152),
        extended: false,
        build: || rich_ternary("102"),
    },
    Preset {
        name: "table1_0011",
        description: "7/3-power-free rich ternary words with prefix 0011",
        expected: Some(498),
        extended: false,
        build: || rich_ternary("0011"),
    },
    Preset {
        name: "table1_00100200",
        description: "7/3-power-free rich ternary words with prefix 00100200",
        expected: Some(502),
        extended: false,
        build: || rich_ternary("00100200"),
    },
    Preset {
        name: "table2_201",
        description: "ternary y with prefix 201 and tau(y) 16/7-power-free and rich",
        expected: Some(141),
        extended: false,
        build: || tau_preimage("201"),
    },
    Preset {
        name: "table2_210",
        description: "ternary y with prefix 210 and tau(y) 16/7-power-free and rich",
        expected: Some(144),
        extended: false,
        build: || tau_preimage("210"),
    },
    Preset {
        name: "table2_211",
        description: "ternary y with prefix 211 and tau(y) 16/7-power-free and rich",
        expected: Some(101),
        extended: false,
        build: || tau_preimage("211"),
    },
    Preset {
        name: "no_start_factors",
        description: "7/3-power-free rich ternary words avoiding 001002, 112110 and 220221",
        expected: Some(388),
        extended: false,
        build: || {
            SearchConfig::new(
                3,
                vec![Predicate::NoFactorFrom(words(&START_FACTORS)), Predicate::Rich, Predicate::PowerFree(t("7/3"))],
            )
        },
    },
    Preset {
        name: "no_00",
        description: "7/3-power-free rich ternary words avoiding 00",
        expected: Some(57),
        extended: false,
        build: || {
            SearchConfig::new(
                3,
                vec![Predicate::NoFactorFrom(words(&["00"])), Predicate::Rich, Predicate::PowerFree(t("7/3"))],
            )
        },
    },
    Preset {
        name: "y_binary",
        description: "binary y with tau(y) 16/7-power-free and rich",
        expected: Some(18),
        extended: false,
        build: || SearchConfig::new(3, vec![tau_image_rich()]).with_letters(&[0, 1]),
    },
    Preset {
        name: "sigma4_phi",
        description: "3-power-free u over 0..3 avoiding F_phi with no poor factor in fhat(phi(u))",
        expected: Some(8),
        extended: false,
        build: || {
            SearchConfig::new(
                4,
                vec![
                    Predicate::NoFactorFrom(words(&F_PHI)),
                    Predicate::PowerFree(t("3")),
                    no_poor(vec![Stage::Morphism(PHI.clone()), Stage::Morphism(FHAT.clone())]),
                ],
            )
        },
    },
    Preset {
        name: "fourfive_fprime",
        description: "5-power-free u over {4,5} avoiding 55, 444, 5445 with no poor factor in fhat(u)",
        expected: Some(11),
        extended: false,
        build: || {
            SearchConfig::new(
                8,
                vec![
                    Predicate::NoFactorFrom(words(&F_PRIME)),
                    Predicate::PowerFree(t("5")),
                    no_poor(vec![Stage::Morphism(FHAT.clone())]),
                ],
            )
            .with_letters(&[4, 5])
        },
    },
    Preset {
        name: "sigma2_psi",
        description: "5-power-free binary u avoiding 11, 000, 1001 with no poor factor in fhat(psi(u))",
        expected: Some(11),
        extended: false,
        build: || {
            SearchConfig::new(
                4,
                vec![
                    Predicate::NoFactorFrom(words(&F_PSI)),
                    Predicate::PowerFree(t("5")),
                    no_poor(vec![Stage::Morphism(PSI.clone()), Stage::Morphism(FHAT.clone())]),
                ],
            )
            .with_letters(&[0, 1])
        },
    },
    Preset {
        name: "f1_over_12",
        description: "words over {1,2} with no factor from the first forbidden family",
        expected: Some(4),
        extended: false,
        build: || SearchConfig::new(3, vec![Predicate::NoFactorFrom(f1_words())]).with_letters(&[1, 2]),
    },
    Preset {
        name: "rt4_frontier",
        description: "2.117-power-free rich words over four letters",
        expected: Some(46628),
        extended: true,
        build: || SearchConfig::new(4, vec![Predicate::Rich, Predicate::PowerFree(t("2117/1000"))]),
    },
];

pub fn all() -> &'static [Preset] {
    PRESETS
}

pub fn by_name(name: &str) -> Result<Preset> {
    PRESETS.iter().find(|p| p.name == name).copied().ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        Error::Parse(format!("unknown preset {name:?}; known presets: {}", names.join(", ")))
    })
}
