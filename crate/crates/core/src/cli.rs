//! The `billiards` command line.
//!
//! Exit codes: 0 success, 1 failed check (`table`, `validate`) or runtime
//! error, 2 usage or parse error, 3 inadmissible type (including `plot`
//! with rank ≠ 2), 4 budget exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{limit_denominator, parse_q, q, q_to_f64, q_to_string, Q};
use crate::montecarlo::{
    estimate_first_passage, estimate_length_scaling, simulate_trials, walk_stats_from_records,
};
use crate::render::{trajectory_csv, trajectory_svg, SvgStyle};
use crate::rootsys::{admissible_types, build_root_system, Family, RootSystem};
use crate::sigma::{
    length_limit, length_limit_matches, markov_transition_matrix, sigma_auto, sigma_general,
    sigma_general_with, sigma_single_s0, table_closed_form, SigmaResult, SubsetEngine,
};
use crate::subwords::{
    run_periods, sample_subword_element, trial_rng, KeepRule, LetterWord, GENERATOR_NAME,
};
use crate::weylgroup::{AffineElement, ElementJson, FastGroup};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_DECIMAL_DENOMINATOR: u64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "billiards", version, about = "Random billiard walks in affine Weyl groups")]
pub struct Cli {
    /// Worker threads for Monte Carlo commands.
    #[arg(long, env = "BILLIARDS_THREADS", global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact σ² for a word.
    Sigma(SigmaArgs),
    /// Engine values against the closed forms for Coxeter words.
    Table(TableArgs),
    /// Monte Carlo covariance and length statistics.
    Simulate(SimulateArgs),
    /// First-passage statistics of the finite-part chain.
    Firstpassage(FirstPassageArgs),
    /// Rank-2 trajectory as SVG or CSV.
    Plot(PlotArgs),
    /// Element and Coxeter length of a word power or a sampled subword.
    Length(LengthArgs),
    /// Cross-checks of all engines at reduced sizes.
    Validate(ValidateArgs),
    /// Root system data as JSON.
    Roots(RootsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Args, Debug, Clone)]
pub struct WordArgs {
    /// Comma-separated letters in written order; `2,1,0` is s2 s1 s0 and
    /// applies s0 first. Defaults to the Coxeter word r,…,1,0.
    #[arg(long)]
    pub word: Option<String>,
    /// Print the order in which letters are applied to stderr.
    #[arg(long)]
    pub echo_processing_order: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodArg {
    Auto,
    General,
    SingleS0,
    ClosedForm,
}

#[derive(Args, Debug)]
pub struct SigmaArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub word: WordArgs,
    /// Probability as `a/b` or a decimal.
    #[arg(long)]
    pub p: String,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, default_value = "1/2")]
    pub p: String,
    /// Restrict to these families.
    #[arg(long, value_delimiter = ',')]
    pub family: Vec<Family>,
    /// Restrict to this rank.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Largest rank for the A family (B, C, D use max-rank − 1).
    #[arg(long, default_value_t = 6)]
    pub max_rank: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: TableFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub word: WordArgs,
    #[arg(long)]
    pub p: String,
    /// Periods per trial.
    #[arg(long = "K", alias = "periods", default_value_t = 10_000)]
    pub k: u64,
    #[arg(long, alias = "N", default_value_t = 1_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Per-trial CSV (trial, length, returns, coordinates).
    #[arg(long)]
    pub trials_csv: Option<PathBuf>,
    /// JSON `{P, xi}` of trial 0's final element.
    #[arg(long)]
    pub dump_final: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct FirstPassageArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub word: WordArgs,
    #[arg(long)]
    pub p: String,
    /// Number of completed excursions.
    #[arg(long, alias = "N", default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotFormat {
    Svg,
    Csv,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub word: WordArgs,
    #[arg(long)]
    pub p: String,
    #[arg(long = "K", alias = "periods", default_value_t = 200)]
    pub k: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "svg")]
    pub format: PlotFormat,
    #[arg(long, default_value_t = 800.0)]
    pub width: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct LengthArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub word: WordArgs,
    /// Number of repetitions of the word.
    #[arg(long, default_value_t = 1)]
    pub word_power: u64,
    /// Keep probability; omitted means every letter is kept.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Read an element `{P, xi}` from this JSON file instead of a word.
    #[arg(long, conflicts_with_all = ["word", "p"])]
    pub element: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Trials for the Monte Carlo checks.
    #[arg(long, default_value_t = 2_000)]
    pub trials: u64,
    /// Periods for the Monte Carlo checks.
    #[arg(long = "K", default_value_t = 2_000)]
    pub k: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// A probability parsed from user input.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityInput {
    pub value: Q,
    pub input: String,
    pub approximated: bool,
}

/// `a/b` is exact. Decimals are read exactly and, if the reduced
/// denominator exceeds 10⁶, replaced by the nearest fraction with
/// denominator at most 10⁶.
pub fn parse_probability(s: &str) -> Result<ProbabilityInput> {
    let t = s.trim();
    let exact = if t.contains('/') {
        parse_q(t)
    } else {
        parse_decimal(t)
    }
    .ok_or_else(|| Error::Parse(format!("cannot read probability {s:?}")))?;
    if exact < Q::zero() || exact > Q::one() {
        return Err(Error::ProbabilityOutOfRange(t.to_string()));
    }
    let (value, approximated) = if !t.contains('/') && *exact.denom() > BigInt::from(MAX_DECIMAL_DENOMINATOR) {
        (limit_denominator(&exact, &BigInt::from(MAX_DECIMAL_DENOMINATOR)), true)
    } else {
        (exact, false)
    };
    Ok(ProbabilityInput {
        value,
        input: t.to_string(),
        approximated,
    })
}

fn parse_decimal(s: &str) -> Option<Q> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let v = Q::new(n, d);
    Some(if neg { -v } else { v })
}

fn resolve_word(rs: &RootSystem, args: &WordArgs) -> Result<LetterWord> {
    let word = match &args.word {
        Some(s) => LetterWord::for_system(rs, s.parse::<LetterWord>()?.letters().to_vec())?,
        None => LetterWord::coxeter(rs),
    };
    if args.echo_processing_order {
        let order: Vec<String> = word.processing_order().iter().map(|i| format!("s{i}")).collect();
        eprintln!("processing order: {}", order.join(" -> "));
    }
    Ok(word)
}

fn system(args: &SystemArgs) -> Result<RootSystem> {
    build_root_system(args.family, args.rank)
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            let res = out.write_all(contents.as_bytes()).and_then(|_| {
                if contents.ends_with('\n') {
                    Ok(())
                } else {
                    out.write_all(b"\n")
                }
            });
            match res {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
        Some(path) => write_atomic(path, contents),
    }
}

pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn metadata(seed: Option<u64>) -> Value {
    let mut m = json!({
        "version": env!("CARGO_PKG_VERSION"),
    });
    if let Some(s) = seed {
        m["seed"] = json!(s);
        m["generator"] = json!(GENERATOR_NAME);
    }
    m
}

fn p_json(p: &ProbabilityInput) -> Value {
    json!({
        "p": q_to_string(&p.value),
        "p_input": p.input,
        "p_approximated": p.approximated,
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

fn to_json_string<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn is_coxeter_word(rs: &RootSystem, word: &LetterWord) -> bool {
    word.len() == rs.num_letters() && word.contains_all(rs.num_letters())
}

pub fn cmd_sigma(args: &SigmaArgs) -> Result<i32> {
    let rs = system(&args.system)?;
    let word = resolve_word(&rs, &args.word)?;
    let p = parse_probability(&args.p)?;
    let result: SigmaResult = match args.method {
        MethodArg::Auto => sigma_auto(&rs, &word, &p.value)?,
        MethodArg::General => sigma_general(&rs, &word, &p.value)?,
        MethodArg::SingleS0 => sigma_single_s0(&rs, &word, &p.value)?,
        MethodArg::ClosedForm => {
            if !is_coxeter_word(&rs, &word) {
                return Err(Error::InvalidArgument(
                    "closed forms apply to Coxeter words (each letter exactly once)".into(),
                ));
            }
            let cf = table_closed_form(rs.family(), rs.rank(), &p.value)?;
            SigmaResult {
                value: cf.sigma2,
                method: crate::sigma::Method::ClosedForm,
                word: word.clone(),
                p: p.value.clone(),
            }
        }
    };
    let out = merge(
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": "sigma",
            "family": rs.family().to_string(),
            "rank": rs.rank(),
            "word": word.to_csv(),
            "processing_order": word.processing_order(),
            "sigma2_rational": q_to_string(&result.value),
            "sigma2_float": result.to_f64(),
            "method": result.method.to_string(),
            "length_limit_float": length_limit(&rs, &result.value)?,
            "metadata": metadata(None),
        }),
        p_json(&p),
    );
    write_output(args.out.output.as_deref(), &to_json_string(&out)?)?;
    Ok(0)
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub family: String,
    pub rank: usize,
    pub word: String,
    pub engine_sigma2: String,
    pub closed_form_sigma2: String,
    pub engine_method: String,
    pub length_limit: String,
    pub length_limit_float: f64,
    pub status: String,
}

/// Rows of the closed-form comparison. Default ranks: A up to `max_rank`,
/// B, C, D up to `max_rank − 1`, and E6–E8, F4, G2.
pub fn table_rows(p: &Q, families: &[Family], rank: Option<usize>, max_rank: usize) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (f, r) in admissible_types(max_rank.max(8)) {
        let cap = match f {
            Family::A => max_rank,
            Family::B | Family::C | Family::D => max_rank.saturating_sub(1),
            _ => usize::MAX,
        };
        if r > cap || (!families.is_empty() && !families.contains(&f)) || rank.is_some_and(|k| k != r) {
            continue;
        }
        let rs = build_root_system(f, r)?;
        let word = LetterWord::coxeter(&rs);
        let engine = sigma_auto(&rs, &word, p)?;
        let cf = table_closed_form(f, r, p)?;
        let ok = engine.value == cf.sigma2 && length_limit_matches(&rs, &cf.sigma2, &cf.length_limit);
        rows.push(TableRow {
            family: f.to_string(),
            rank: r,
            word: word.to_csv(),
            engine_sigma2: q_to_string(&engine.value),
            closed_form_sigma2: q_to_string(&cf.sigma2),
            engine_method: engine.method.to_string(),
            length_limit: cf.length_limit.to_string(),
            length_limit_float: cf.length_limit.to_f64(),
            status: if ok { "MATCH" } else { "FAIL" }.to_string(),
        });
    }
    Ok(rows)
}

pub fn cmd_table(args: &TableArgs) -> Result<i32> {
    let p = parse_probability(&args.p)?;
    crate::sigma::check_open_p(&p.value)?;
    let rows = table_rows(&p.value, &args.family, args.rank, args.max_rank)?;
    let failed = rows.iter().any(|r| r.status != "MATCH");
    let text = match args.format {
        TableFormat::Json => to_json_string(&merge(
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": "table",
                "rows": rows,
                "all_match": !failed,
                "metadata": metadata(None),
            }),
            p_json(&p),
        ))?,
        TableFormat::Text => {
            let mut s = format!(
                "p = {}\n{:<5} {:<18} {:<18} {:<10} {:<28} {:>10}  {}\n",
                q_to_string(&p.value),
                "type",
                "engine σ²",
                "closed form σ²",
                "method",
                "E[ℓ]/√K limit",
                "≈",
                "status"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:<5} {:<18} {:<18} {:<10} {:<28} {:>10.6}  {}\n",
                    format!("{}{}", r.family, r.rank),
                    r.engine_sigma2,
                    r.closed_form_sigma2,
                    r.engine_method,
                    r.length_limit,
                    r.length_limit_float,
                    r.status
                ));
            }
            s
        }
    };
    write_output(args.out.output.as_deref(), &text)?;
    Ok(i32::from(failed))
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<i32> {
    let rs = system(&args.system)?;
    let word = resolve_word(&rs, &args.word)?;
    let p = parse_probability(&args.p)?;
    if args.k < 1 || args.trials < 2 {
        return Err(Error::InvalidArgument("simulate needs K ≥ 1 and trials ≥ 2".into()));
    }
    let records = simulate_trials(&rs, &word, &p.value, args.k, args.trials, args.seed)?;
    let stats = walk_stats_from_records(&rs, &records, args.k);
    let exact = match sigma_general(&rs, &word, &p.value) {
        Ok(s) => Some(s),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(path) = &args.trials_csv {
        let mut csv = String::from("trial,length,returns");
        for i in 0..rs.rank() {
            csv.push_str(&format!(",c{i}"));
        }
        csv.push('\n');
        for t in &records {
            csv.push_str(&format!("{},{},{}", t.trial, t.length, t.returns));
            for c in &t.centroid {
                csv.push_str(&format!(",{c}"));
            }
            csv.push('\n');
        }
        write_atomic(path, &csv)?;
    }
    if let Some(path) = &args.dump_final {
        let group = FastGroup::new(&rs);
        let mut rng = trial_rng(args.seed, 0);
        let mut u = group.identity();
        let keep = KeepRule::new(&p.value)?;
        run_periods(&group, word.letters(), keep, args.k, &mut rng, &mut u, None);
        write_atomic(path, &to_json_string(&group.to_exact(&u).to_json())?)?;
    }
    let mut out = merge(
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": "simulate",
            "family": rs.family().to_string(),
            "rank": rs.rank(),
            "word": word.to_csv(),
            "stats": stats,
            "metadata": metadata(Some(args.seed)),
        }),
        p_json(&p),
    );
    if let Some(s) = exact {
        out["sigma2_exact"] = json!(q_to_string(&s.value));
        out["sigma2_exact_float"] = json!(s.to_f64());
        out["length_limit_float"] = json!(length_limit(&rs, &s.value)?);
    }
    write_output(args.out.output.as_deref(), &to_json_string(&out)?)?;
    Ok(0)
}

pub fn cmd_firstpassage(args: &FirstPassageArgs) -> Result<i32> {
    let rs = system(&args.system)?;
    let word = resolve_word(&rs, &args.word)?;
    let p = parse_probability(&args.p)?;
    let stats = estimate_first_passage(&rs, &word, &p.value, args.trials, args.seed)?;
    let out = merge(
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": "firstpassage",
            "family": rs.family().to_string(),
            "rank": rs.rank(),
            "word": word.to_csv(),
            "stats": stats,
            "metadata": metadata(Some(args.seed)),
        }),
        p_json(&p),
    );
    write_output(args.out.output.as_deref(), &to_json_string(&out)?)?;
    Ok(0)
}

pub fn cmd_plot(args: &PlotArgs) -> Result<i32> {
    let rs = system(&args.system)?;
    if rs.rank() != 2 && args.format == PlotFormat::Svg {
        return Err(Error::InadmissibleType {
            family: rs.family().letter(),
            rank: rs.rank(),
            reason: "plotting is available for rank 2 only",
        });
    }
    let word = resolve_word(&rs, &args.word)?;
    let p = parse_probability(&args.p)?;
    let (_, log) = sample_subword_element(&rs, &word, &p.value, args.k, args.seed, true)?;
    let log = log.expect("log requested");
    let text = match args.format {
        PlotFormat::Svg => trajectory_svg(
            &rs,
            &log,
            &SvgStyle {
                width: args.width,
                ..SvgStyle::default()
            },
        )?,
        PlotFormat::Csv => trajectory_csv(&rs, &log),
    };
    write_output(args.out.output.as_deref(), &text)?;
    Ok(0)
}

pub fn cmd_length(args: &LengthArgs) -> Result<i32> {
    let rs = system(&args.system)?;
    let (element, word_desc) = match &args.element {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let json: ElementJson = serde_json::from_str(&text)?;
            (AffineElement::from_json(&rs, &json)?, Value::Null)
        }
        None => {
            let word = resolve_word(&rs, &args.word)?;
            let element = match &args.p {
                None => AffineElement::from_word(&rs, word.power(args.word_power as usize).letters())?,
                Some(s) => {
                    let p = parse_probability(s)?;
                    sample_subword_element(&rs, &word, &p.value, args.word_power, args.seed, false)?.0
                }
            };
            (element, json!(word.to_csv()))
        }
    };
    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "length",
        "family": rs.family().to_string(),
        "rank": rs.rank(),
        "word": word_desc,
        "word_power": args.word_power,
        "p": args.p.as_deref().unwrap_or("1"),
        "seed": args.seed,
        "element": element.to_json(),
        "centroid": element.centroid(&rs).to_strings(),
        "length": element.coxeter_length(&rs),
        "metadata": metadata(None),
    });
    write_output(args.out.output.as_deref(), &to_json_string(&out)?)?;
    Ok(0)
}

pub fn cmd_roots(args: &RootsArgs) -> Result<i32> {
    let rs = system(&args.system)?;
    write_output(args.out.output.as_deref(), &to_json_string(&rs.to_json())?)?;
    Ok(0)
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Engines against closed forms, engines against each other, Markov
/// stationarity, and small Monte Carlo runs against exact values.
pub fn validation_checks(trials: u64, periods: u64, seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for p in [q(1, 3), q(1, 2), q(4, 5)] {
        let rows = table_rows(&p, &[], None, 6)?;
        let bad: Vec<String> = rows
            .iter()
            .filter(|r| r.status != "MATCH")
            .map(|r| format!("{}{}", r.family, r.rank))
            .collect();
        out.push(check(
            format!("closed forms at p = {}", q_to_string(&p)),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} rows match", rows.len())
            } else {
                format!("mismatch: {}", bad.join(", "))
            },
        ));
    }

    let cases = [
        (Family::A, 2, "1,2,1,0"),
        (Family::A, 2, "2,1,1,0"),
        (Family::C, 2, "1,2,1,0,2"),
        (Family::G, 2, "2,1,2,1,0"),
        (Family::B, 3, "3,2,3,1,0"),
    ];
    for (f, r, w) in cases {
        let rs = build_root_system(f, r)?;
        let word: LetterWord = w.parse()?;
        let p = q(2, 5);
        let a = sigma_general_with(&rs, &word, &p, SubsetEngine::PrefixTree, 22)?;
        let b = sigma_general_with(&rs, &word, &p, SubsetEngine::Naive, 22)?;
        let c = sigma_single_s0(&rs, &word, &p)?;
        let ok = a.value == b.value && a.value == c.value;
        out.push(check(
            format!("engines agree on {}{} {}", f, r, word),
            ok,
            format!("σ² = {}", q_to_string(&a.value)),
        ));
    }

    for (f, r) in [(Family::A, 1), (Family::A, 2), (Family::C, 2), (Family::G, 2)] {
        let rs = build_root_system(f, r)?;
        let t = markov_transition_matrix(&rs, &LetterWord::coxeter(&rs), &q(2, 7), 2000, 22)?;
        let n = t.len();
        let u = vec![Q::new(BigInt::one(), BigInt::from(n)); n];
        let ok = t.row_sums().iter().all(|s| s.is_one()) && t.left_apply(&u) == u;
        out.push(check(format!("uniform stationary on {}{}", f, r), ok, format!("{n} states")));
    }

    for (f, r) in [(Family::A, 2), (Family::C, 2)] {
        let rs = build_root_system(f, r)?;
        let word = LetterWord::coxeter(&rs);
        let p = q(4, 5);
        let exact_q = sigma_auto(&rs, &word, &p)?.value;
        let exact = q_to_f64(&exact_q);
        let records = simulate_trials(&rs, &word, &p, periods, trials, seed)?;
        let s = walk_stats_from_records(&rs, &records, periods);
        let tol = 0.05 * exact + 4.0 * s.sigma2_se;
        out.push(check(
            format!("Monte Carlo σ² on {}{}", f, r),
            (s.sigma2_hat - exact).abs() <= tol,
            format!("{:.4} vs {:.4} (tolerance {:.4})", s.sigma2_hat, exact, tol),
        ));
        let lim = length_limit(&rs, &exact_q)?;
        let rows = estimate_length_scaling(&rs, &word, &p, &[periods], trials, seed)?;
        let got = rows[0].scaled_mean;
        let tol = 0.05 * lim + 4.0 * rows[0].se;
        out.push(check(
            format!("length scaling on {}{}", f, r),
            (got - lim).abs() <= tol,
            format!("{got:.4} vs {lim:.4} (tolerance {tol:.4})"),
        ));
    }
    Ok(out)
}

pub fn cmd_validate(args: &ValidateArgs) -> Result<i32> {
    let checks = validation_checks(args.trials, args.k, args.seed)?;
    let mut failed = false;
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        failed |= !c.passed;
    }
    Ok(i32::from(failed))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InadmissibleType { .. } => 3,
        Error::BudgetExceeded { .. } => 4,
        Error::Parse(_)
        | Error::InvalidArgument(_)
        | Error::ProbabilityOutOfRange(_)
        | Error::LetterOutOfRange { .. }
        | Error::EmptyWord
        | Error::S0Count(_) => 2,
        _ => 1,
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    if let Some(n) = cli.threads {
        // Ignored if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cli.command {
        Command::Sigma(a) => cmd_sigma(a),
        Command::Table(a) => cmd_table(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Firstpassage(a) => cmd_firstpassage(a),
        Command::Plot(a) => cmd_plot(a),
        Command::Length(a) => cmd_length(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Roots(a) => cmd_roots(a),
    }
}

/// Parses `std::env::args`, runs, reports errors on stderr and returns the
/// process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
