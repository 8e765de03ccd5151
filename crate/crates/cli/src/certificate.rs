use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct Provenance {
    pub tool_version: &'static str,
    pub expectations_version: u32,
    pub wall_time_ms: u128,
    pub threads: usize,
    pub nodes: u64,
}

/// Everything under `results` is a pure function of `config`.
#[derive(Serialize)]
pub struct Certificate {
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub provenance: Provenance,
    pub discrepancies: Vec<String>,
    pub mismatches: Vec<String>,
    pub status: &'static str,
}

/// What a subcommand hands back before timing is attached.
#[derive(Default)]
pub struct Outcome {
    pub results: Value,
    pub nodes: u64,
    pub discrepancies: Vec<String>,
    pub mismatches: Vec<String>,
}

impl Outcome {
    pub fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.mismatches.push(what.into());
        }
    }
}

pub fn finish(command: &str, config: Value, started: Instant, threads: usize, expectations_version: u32, o: Outcome) -> Certificate {
    Certificate {
        command: command.to_string(),
        config,
        results: o.results,
        provenance: Provenance {
            tool_version: env!("CARGO_PKG_VERSION"),
            expectations_version,
            wall_time_ms: started.elapsed().as_millis(),
            threads,
            nodes: o.nodes,
        },
        discrepancies: o.discrepancies,
        status: if o.mismatches.is_empty() { "ok" } else { "mismatch" },
        mismatches: o.mismatches,
    }
}
