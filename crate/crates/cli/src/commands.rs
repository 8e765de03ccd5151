use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde_json::{json, Value};

use richrt::complexity::{self, Kind, PrefixOracle};
use richrt::morphic::{self, InfiniteWord, F, TAU};
use richrt::palindromic::{count_distinct_palindromes, is_rich};
use richrt::search::forbidden::{self, check_case, ContextCheck, FamilyCase};
use richrt::search::presets::{self, Preset};
use richrt::search::trees::{verify_return_tree, TreeKind};
use richrt::search::{longest_word, Pipeline, Predicate, SearchConfig, SearchResult, Stage};
use richrt::stretch::{self, format_big, outer_power_closed_form, to_big};
use richrt::word::{parse_digits, parse_word_list, to_digits};
use richrt::{Parallelism, Rational, Threshold};

use crate::certificate::Outcome;
use crate::expectations::Expectations;

type Run = Result<(Value, Outcome)>;

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, default_value = "z")]
    pub word: InfiniteWord,
    #[arg(long, default_value_t = 100)]
    pub length: usize,
    /// Print only the word, one line, instead of a certificate.
    #[arg(long)]
    pub text: bool,
}

pub fn generate(a: &GenerateArgs, exp: &Expectations) -> Run {
    let w = a.word.prefix(a.length);
    let mut o = Outcome { results: json!({ "word": to_digits(&w), "length": w.len() }), ..Default::default() };
    if a.word == InfiniteWord::Z {
        let n = a.length.min(exp.z_prefix_19.len());
        o.check(to_digits(&w[..n]) == exp.z_prefix_19[..n], "z prefix differs from the expected first letters");
    }
    Ok((json!({ "word": a.word, "length": a.length }), o))
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Named search; see --list.
    #[arg(long)]
    pub preset: Option<String>,
    /// List the presets and exit.
    #[arg(long)]
    pub list: bool,
    #[arg(long, default_value_t = 3)]
    pub alphabet: u8,
    /// Letters to try, as digits (default: the whole alphabet).
    #[arg(long)]
    pub letters: Option<String>,
    #[arg(long, default_value = "")]
    pub prefix: String,
    /// Threshold such as 7/3, or 7/3+ to allow exponent exactly 7/3.
    #[arg(long)]
    pub power_free: Option<Threshold>,
    #[arg(long)]
    pub rich: bool,
    /// File of forbidden factors, one per line.
    #[arg(long)]
    pub forbid: Option<PathBuf>,
    /// Apply --power-free and --rich to the image under this transducer.
    #[arg(long)]
    pub image: Option<String>,
    /// Maximum accepted nodes; 0 means unlimited.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub max_length: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub split_depth: usize,
}

/// Budget used for extended presets unless one is given.
const EXTENDED_BUDGET: u64 = 5_000_000;

fn custom_config(a: &SearchArgs) -> Result<SearchConfig> {
    let mut inner = Vec::new();
    if a.rich {
        inner.push(Predicate::Rich);
    }
    if let Some(t) = a.power_free {
        inner.push(Predicate::PowerFree(t));
    }
    let mut preds = Vec::new();
    if let Some(path) = &a.forbid {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let words = parse_word_list(&text, a.alphabet)?;
        preds.push(Predicate::NoFactorFrom(words.into_iter().map(|w| w.into_letters()).collect()));
    }
    match &a.image {
        Some(name) => {
            let t = morphic::transducer_by_name(name)?;
            preds.push(Predicate::Image { pipeline: Pipeline::new(vec![Stage::Transducer(t.clone())]), inner });
        }
        None => preds.extend(inner),
    }
    let mut cfg = SearchConfig::new(a.alphabet, preds).with_prefix(&parse_digits(&a.prefix)?);
    if let Some(l) = &a.letters {
        cfg = cfg.with_letters(&parse_digits(l)?);
    }
    Ok(cfg)
}

fn result_json(r: &SearchResult) -> Value {
    json!({ "length": r.length, "witness": r.witness.to_string(), "exhausted": r.exhausted, "nodes": r.nodes })
}

fn run_preset(p: &Preset, budget: Option<u64>, mode: Parallelism, exp: &Expectations, o: &mut Outcome) -> Result<Value> {
    let mut cfg = p.config().with_parallelism(mode);
    cfg.budget = match budget {
        Some(0) => None,
        Some(b) => Some(b),
        None if p.extended => Some(EXTENDED_BUDGET),
        None => None,
    };
    let r = longest_word(&cfg)?;
    o.nodes += r.nodes;
    let expected = exp.searches.get(p.name).copied();
    if r.exhausted {
        if let Some(e) = expected {
            o.check(r.length == e, format!("{}: found length {}, expected {e}", p.name, r.length));
        }
    } else {
        o.discrepancies.push(format!("{}: stopped by budget; {} is only a lower bound", p.name, r.length));
    }
    let mut v = result_json(&r);
    v["preset"] = json!(p.name);
    v["expected"] = json!(expected);
    Ok(v)
}

pub fn search(a: &SearchArgs, mode: Parallelism, exp: &Expectations) -> Run {
    if a.list {
        let list: Vec<Value> = presets::all()
            .iter()
            .map(|p| json!({ "name": p.name, "description": p.description, "expected": p.expected, "extended": p.extended }))
            .collect();
        return Ok((json!({ "list": true }), Outcome { results: json!({ "presets": list }), ..Default::default() }));
    }
    let mut o = Outcome::default();
    let config = json!({
        "preset": a.preset, "alphabet": a.alphabet, "letters": a.letters, "prefix": a.prefix,
        "power_free": a.power_free.map(|t| t.to_string()), "rich": a.rich,
        "forbid": a.forbid.as_ref().map(|p| p.display().to_string()), "image": a.image,
        "budget": a.budget, "max_length": a.max_length,
    });
    if let Some(name) = &a.preset {
        let p = presets::by_name(name)?;
        o.results = run_preset(&p, a.budget, mode, exp, &mut o)?;
        return Ok((config, o));
    }
    if a.power_free.is_none() && !a.rich && a.forbid.is_none() {
        bail!("give --preset, or at least one of --power-free, --rich, --forbid");
    }
    let mut cfg = custom_config(a)?.with_parallelism(mode).with_budget(a.budget.filter(|&b| b > 0));
    cfg.max_length = a.max_length;
    cfg.split_depth = a.split_depth;
    let r = longest_word(&cfg)?;
    o.nodes = r.nodes;
    o.results = result_json(&r);
    Ok((config, o))
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// Node budget per search; 0 means unlimited.
    #[arg(long, default_value_t = 0)]
    pub budget: u64,
}

fn run_list(names: &[String], budget: u64, mode: Parallelism, exp: &Expectations, o: &mut Outcome) -> Result<Vec<Value>> {
    names.iter().map(|n| run_preset(&presets::by_name(n)?, Some(budget), mode, exp, o)).collect()
}

pub fn verify_tables(a: &TablesArgs, mode: Parallelism, exp: &Expectations) -> Run {
    let mut o = Outcome::default();
    let t1 = run_list(&exp.table1, a.budget, mode, exp, &mut o)?;
    let t2 = run_list(&exp.table2, a.budget, mode, exp, &mut o)?;
    o.results = json!({ "table1": t1, "table2": t2 });
    Ok((json!({ "budget": a.budget }), o))
}

#[derive(Args, Debug)]
pub struct ForbiddenArgs {
    /// 1, 2, 3, 4 or all.
    #[arg(long, default_value = "all")]
    pub family: String,
    /// Override the number of f-steps checked for every case.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Skip the return trees.
    #[arg(long)]
    pub no_trees: bool,
}

fn summarize_case(c: &FamilyCase, checks: &[ContextCheck]) -> Value {
    let failures: Vec<&ContextCheck> = checks.iter().filter(|c| !c.ok).collect();
    json!({
        "family": c.family,
        "factor": c.label,
        "max_n": checks.iter().map(|c| c.n).max(),
        "checks": checks.len(),
        "failures": failures,
    })
}

pub fn verify_forbidden(a: &ForbiddenArgs, mode: Parallelism) -> Run {
    let families: Vec<u8> = match a.family.as_str() {
        "all" => vec![1, 2, 3, 4],
        f => vec![f.parse().context("family must be 1, 2, 3, 4 or all")?],
    };
    let mut o = Outcome::default();
    let cases: Vec<FamilyCase> = forbidden::first_family_cases()
        .into_iter()
        .chain(forbidden::later_family_cases())
        .filter(|c| families.contains(&c.family))
        .collect();
    let mut summaries = Vec::new();
    for c in &cases {
        let checks = check_case(c, a.n_max.unwrap_or(c.max_n), mode);
        o.check(checks.iter().all(|k| k.ok), format!("forbidden factor {} has a context without a 16/7-power", c.label));
        summaries.push(summarize_case(c, &checks));
    }
    let mut trees = Vec::new();
    if !a.no_trees {
        for kind in TreeKind::ALL {
            let v = verify_return_tree(kind)?;
            o.check(v.ok, format!("return tree {} does not match", v.tree));
            trees.push(serde_json::to_value(&v)?);
        }
    }
    o.results = json!({ "families": summaries, "return_trees": trees });
    Ok((json!({ "family": a.family, "n_max": a.n_max, "trees": !a.no_trees }), o))
}

#[derive(Args, Debug)]
pub struct ComplexityArgs {
    #[arg(long, default_value = "z")]
    pub word: InfiniteWord,
    #[arg(long, default_value = "factor")]
    pub kind: Kind,
    #[arg(long, default_value_t = 40)]
    pub max_n: usize,
    /// Also write `n<TAB>value` lines to this file.
    #[arg(long)]
    pub tsv: Option<PathBuf>,
}

fn complexity_table(word: InfiniteWord, kind: Kind, max_n: usize, mode: Parallelism, o: &mut Outcome) -> Result<Vec<complexity::Row>> {
    let rows = complexity::table(word, kind, max_n, mode)?;
    for r in &rows {
        if let Some(e) = r.expected {
            o.check(r.value == e, format!("{word:?} {kind:?} at n={}: {} but expected {e}", r.n, r.value));
        }
    }
    Ok(rows)
}

pub fn complexity(a: &ComplexityArgs, mode: Parallelism) -> Run {
    let mut o = Outcome::default();
    let rows = complexity_table(a.word, a.kind, a.max_n, mode, &mut o)?;
    if let Some(path) = &a.tsv {
        let mut text = String::from("n\tvalue\n");
        for r in &rows {
            text.push_str(&format!("{}\t{}\n", r.n, r.value));
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let matches = rows.iter().all(|r| r.expected.is_none_or(|e| e == r.value));
    o.results = json!({ "rows": rows, "closed_form_holds": matches });
    Ok((json!({ "word": a.word, "kind": a.kind, "max_n": a.max_n }), o))
}

#[derive(Args, Debug)]
pub struct PalindromesArgs {
    #[arg(long, default_value = "z")]
    pub word: InfiniteWord,
    #[arg(long, default_value_t = 100_000)]
    pub length: usize,
    /// Check the words in this file instead of a generated prefix.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub alphabet: u8,
}

fn richness_json(w: &[u8]) -> Value {
    json!({ "length": w.len(), "distinct_palindromes": count_distinct_palindromes(w), "rich": is_rich(w) })
}

pub fn palindromes(a: &PalindromesArgs) -> Run {
    let mut o = Outcome::default();
    if let Some(path) = &a.input {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let words = parse_word_list(&text, a.alphabet)?;
        let list: Vec<Value> = words
            .iter()
            .map(|w| {
                let mut v = richness_json(w.letters());
                v["word"] = json!(w.to_string());
                v
            })
            .collect();
        o.results = json!({ "words": list });
        return Ok((json!({ "input": path.display().to_string() }), o));
    }
    let w = a.word.prefix(a.length);
    o.results = richness_json(&w);
    o.check(is_rich(&w), format!("prefix of {:?} of length {} is not rich", a.word, a.length));
    Ok((json!({ "word": a.word, "length": a.length }), o))
}

#[derive(Args, Debug)]
pub struct CeArgs {
    /// `all` for every seed, or one seed word such as 0.
    #[arg(long, default_value = "0")]
    pub seeds: String,
    #[arg(long, default_value_t = 4)]
    pub steps: usize,
    #[arg(long, default_value_t = 100_000)]
    pub scan_length: usize,
    #[arg(long, default_value_t = stretch::DEFAULT_SCAN_PERIOD)]
    pub scan_period: usize,
    /// Check the closed-form terms against the limit up to this index.
    #[arg(long, default_value_t = 200)]
    pub bound_n: usize,
}

fn lengths_report(exp: &Expectations, o: &mut Outcome) -> Result<Value> {
    let mut rows = Vec::new();
    for n in 0..=12 {
        let rec = morphic::image_length(n)?;
        let mat = morphic::outer_length(&[1, 0, 0], n)?;
        let direct = morphic::image_length_direct(n) as u64;
        o.check(rec == mat && mat == direct, format!("a_{n}: recurrence {rec}, matrix {mat}, direct {direct}"));
        rows.push(json!({ "n": n, "recurrence": rec, "matrix": mat, "direct": direct }));
    }
    for (n, &e) in exp.image_lengths.iter().enumerate() {
        o.check(morphic::image_length(n)? == e, format!("a_{n} differs from {e}"));
    }
    let poly = morphic::characteristic_polynomial(&F.incidence_matrix())?;
    let text = morphic::format_polynomial(&poly);
    o.check(text == exp.characteristic_polynomial, format!("characteristic polynomial {text}"));
    if text != exp.characteristic_polynomial_alternative {
        o.discrepancies.push(format!(
            "the incidence matrix of f has characteristic polynomial {text}, not {}",
            exp.characteristic_polynomial_alternative
        ));
    }
    Ok(json!({ "a": rows, "characteristic_polynomial": text, "tau_block_lengths": TAU.block_lengths() }))
}

fn seeds_from(arg: &str) -> Result<Vec<String>> {
    if arg == "all" {
        return Ok(stretch::SEEDS.iter().map(|s| s.to_string()).collect());
    }
    arg.split(',').map(|s| {
        if stretch::SEEDS.contains(&s) {
            Ok(s.to_string())
        } else {
            bail!("{s} is not a seed; seeds are {}", stretch::SEEDS.join(", "))
        }
    }).collect()
}

fn r1_note(measured: &Rational, exp: &Expectations) -> String {
    let alternative = &exp.outer_power_1_candidates["alternative"];
    let closed = &exp.outer_power_1_candidates["closed_form"];
    let which = if measured.to_string() == *closed {
        "agrees with the closed form"
    } else if measured.to_string() == *alternative {
        "agrees with the alternative value"
    } else {
        "agrees with neither"
    };
    format!("R_1 for seed 0 measured in z is {measured}; candidates are {alternative} and the closed form {closed}; the measurement {which}")
}

pub fn ce(a: &CeArgs, mode: Parallelism, exp: &Expectations) -> Run {
    let mut o = Outcome::default();
    let (limit, spectral) = stretch::ce_limit();
    o.check((limit - exp.ce_limit).abs() <= exp.ce_limit_tolerance, format!("limit {limit} differs from {}", exp.ce_limit));
    o.check((spectral.mu1 - exp.mu1).abs() <= exp.mu1_tolerance, format!("mu1 {} differs from {}", spectral.mu1, exp.mu1));
    let lengths = lengths_report(exp, &mut o)?;

    let seeds = seeds_from(&a.seeds)?;
    let mut sequences = Vec::new();
    for s in &seeds {
        let w = parse_digits(s)?;
        let outer = stretch::outer_sequence_for_seed(&w, a.steps)?;
        let mut items = Vec::new();
        for (n, it) in outer.iter().enumerate() {
            let closed = outer_power_closed_form(&w, n)?;
            let agree = to_big(it.exponent) == closed;
            o.check(agree, format!("seed {s}, n={n}: direct {} but closed form {}", it.exponent, format_big(&closed)));
            items.push(json!({
                "n": n, "period": it.period, "direct": it.exponent, "closed_form": format_big(&closed),
                "stretch_left": it.left.len(), "stretch_right": it.right.len(), "start": it.occurrence.start,
            }));
        }
        if s == "0" {
            for (n, e) in &exp.outer_powers {
                if let Some(it) = outer.get(*n) {
                    let want: Rational = e.parse()?;
                    o.check(it.exponent == want, format!("R_{n} for seed 0 is {}, expected {e}", it.exponent));
                }
            }
            if let Some(it) = outer.get(1) {
                o.discrepancies.push(r1_note(&it.exponent, exp));
            }
        }
        sequences.push(json!({ "seed": s, "terms": items }));
    }

    let bound = stretch::verify_bound(a.bound_n);
    o.check(bound.all_below_limit && bound.exact_check_agrees, "a closed-form term is not below the limit");
    o.check(bound.even_terms_increasing, "even closed-form terms are not increasing");

    let at_least = Threshold::new(Rational::from_parts(16, 7), false);
    let above = Threshold::new(Rational::from_parts(9, 4), true);
    let high = stretch::scan_prefix_repetitions(a.scan_length, &at_least, a.scan_period, mode);
    let reps = stretch::scan_prefix_repetitions(a.scan_length, &above, a.scan_period, mode);
    o.check(high.is_empty(), format!("found {} repetitions of exponent at least 16/7", high.len()));
    let small: Vec<_> = reps.iter().filter(|r| r.period <= 136).collect();
    o.check(small.is_empty(), "found an exponent above 9/4 with period at most 136");
    let largest = reps.iter().max_by_key(|r| r.exponent()).copied();
    let terms = stretch::seed_terms(a.steps.max(8), mode)?;
    let unexplained = stretch::unexplained_repetitions(&reps, a.scan_length, &terms);
    o.check(unexplained.is_empty(), format!("{} repetitions above 9/4 match no seed term", unexplained.len()));

    o.results = json!({
        "limit": limit,
        "spectral": spectral,
        "lengths": lengths,
        "sequences": sequences,
        "bound": bound,
        "scan": {
            "at_least_16_7": high.len(),
            "above_9_4": reps.len(),
            "above_9_4_period_at_most_136": small.len(),
            "largest": largest.map(|r| json!({ "start": r.start, "period": r.period, "exponent": r.exponent() })),
            "unexplained": unexplained.len(),
        },
    });
    let config = json!({
        "seeds": a.seeds, "steps": a.steps, "scan_length": a.scan_length,
        "scan_period": a.scan_period, "bound_n": a.bound_n,
    });
    Ok((config, o))
}

fn merge(into: &mut Outcome, section: &str, part: Outcome) -> Value {
    into.nodes += part.nodes;
    into.discrepancies.extend(part.discrepancies.into_iter().map(|d| format!("{section}: {d}")));
    into.mismatches.extend(part.mismatches.into_iter().map(|m| format!("{section}: {m}")));
    part.results
}

pub fn certify_all(a: &TablesArgs, mode: Parallelism, exp: &Expectations) -> Run {
    let mut o = Outcome::default();
    let mut results = serde_json::Map::new();

    let (_, part) = generate(&GenerateArgs { word: InfiniteWord::Z, length: 19, text: false }, exp)?;
    results.insert("generate".into(), merge(&mut o, "generate", part));
    let (_, part) = verify_tables(a, mode, exp)?;
    results.insert("tables".into(), merge(&mut o, "tables", part));
    let mut part = Outcome::default();
    let proofs = run_list(&exp.proof_searches, a.budget, mode, exp, &mut part)?;
    part.results = json!(proofs);
    results.insert("proof_searches".into(), merge(&mut o, "proof searches", part));
    let (_, part) = verify_forbidden(&ForbiddenArgs { family: "all".into(), n_max: None, no_trees: false }, mode)?;
    results.insert("forbidden".into(), merge(&mut o, "forbidden", part));

    let mut cx = Vec::new();
    for word in [InfiniteWord::X, InfiniteWord::Y, InfiniteWord::Z] {
        for kind in [Kind::Factor, Kind::Palindromic, Kind::Special, Kind::Defect] {
            let mut part = Outcome::default();
            let rows = complexity_table(word, kind, 40, mode, &mut part)?;
            part.results = json!({ "word": word, "kind": kind, "values": rows.iter().map(|r| r.value).collect::<Vec<_>>() });
            cx.push(merge(&mut o, "complexity", part));
        }
    }
    for word in [InfiniteWord::X, InfiniteWord::Y, InfiniteWord::Z] {
        let oracle = PrefixOracle::for_max_n(word, 41);
        for n in 0..=40 {
            let rs = oracle.right_special(n)?;
            let excess: usize = rs.values().map(|e| e.len() - 1).sum();
            let growth = oracle.factor_complexity(n + 1)? - oracle.factor_complexity(n)?;
            o.check(growth == excess, format!("{word:?}: complexity growth at n={n} is {growth}, special excess {excess}"));
            if word == InfiniteWord::Z && n >= 4 {
                o.check(rs.values().all(|e| e.len() == 2), format!("a right-special factor of z of length {n} has more than two extensions"));
            }
        }
    }
    results.insert("complexity".into(), json!(cx));

    let mut rich = Vec::new();
    for word in [InfiniteWord::X, InfiniteWord::Y, InfiniteWord::Z] {
        let (_, part) = palindromes(&PalindromesArgs { word, length: 100_000, input: None, alphabet: 3 })?;
        let mut v = merge(&mut o, "palindromes", part);
        v["word"] = json!(word);
        rich.push(v);
    }
    results.insert("richness".into(), json!(rich));

    let ce_args = CeArgs { seeds: "all".into(), steps: 6, scan_length: 100_000, scan_period: 50_000, bound_n: 200 };
    let (_, part) = ce(&ce_args, mode, exp)?;
    results.insert("ce".into(), merge(&mut o, "ce", part));
    o.results = Value::Object(results);
    Ok((json!({ "budget": a.budget }), o))
}
