use std::collections::BTreeMap;

use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct Expectations {
    pub version: u32,
    pub searches: BTreeMap<String, usize>,
    pub table1: Vec<String>,
    pub table2: Vec<String>,
    pub proof_searches: Vec<String>,
    pub z_prefix_19: String,
    pub image_lengths: Vec<u64>,
    pub characteristic_polynomial: String,
    pub characteristic_polynomial_alternative: String,
    pub outer_powers: BTreeMap<usize, String>,
    pub outer_power_1_candidates: BTreeMap<String, String>,
    pub ce_limit: f64,
    pub ce_limit_tolerance: f64,
    pub mu1: f64,
    pub mu1_tolerance: f64,
}

const EMBEDDED: &str = include_str!("../expectations.json");

pub fn load() -> Expectations {
    serde_json::from_str(EMBEDDED).expect("embedded expectations parse")
}
