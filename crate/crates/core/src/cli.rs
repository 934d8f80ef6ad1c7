//! The `skewsort` command line.
//!
//! Every command builds one JSON record `{command, inputs, results}` and
//! renders it as plain text, JSON (`--json`) or CSV (`--csv`). Exact values
//! are always strings; float fields carry the suffix `_approx`. Exit codes:
//! 0 success, 1 a failed suite or a method disagreement, 2 usage errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Map, Value};

use crate::arith;
use crate::count::{balance_phi, f_determinant, f_frobenius, f_hlf, f_paths, f_product};
use crate::error::Error;
use crate::excited::{excited_count, f_nhlf, f_nhlf_flagged};
use crate::oracle;
use crate::schur::{interval_upper_bound, k_value, schur_ratio_bound, IntervalDecomposition};
use crate::serde_exact::format_rational;
use crate::shapes::{Cell, Partition, SkewShape};
use crate::sorting::{delta_pair, delta_poset, phi_of_a, prob_before};
use crate::verify::{self, Family, SuiteParams, Verdict};
use crate::walks::{self, chi_square_uniform, classify_triplet, estimate_prob_c, mc_prob_before, Sampler};

#[derive(Debug, Parser)]
#[command(name = "skewsort", version, about = "Exact skew tableau counts and sorting probabilities")]
struct Cli {
    /// Emit the full record as JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for sampling commands and sampled suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Corpus bound passed to `verify`, or the last `m` of `scan`.
    #[arg(long = "n-max", global = true)]
    n_max: Option<usize>,
    /// Include wall-clock timings (output is then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count standard fillings of a skew shape.
    Count {
        shape: String,
        #[arg(long, value_enum, default_value_t = Method::Paths)]
        method: Method,
    },
    /// Sorting probability of the shape, of one pair, or the phi(a) bound.
    Delta {
        shape: String,
        /// Two cells, e.g. `--pair 2,1 1,2`.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        pair: Option<Vec<String>>,
        #[arg(long)]
        phi: Option<usize>,
    },
    /// Exact P[L(x) < L(y)].
    Pairprob { shape: String, x: String, y: String },
    /// Hook-product, Schur and interval upper bounds for f.
    Bound {
        shape: String,
        /// Block ends of an interval decomposition, e.g. `1,3`; singletons by default.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Draw uniform fillings and tabulate them.
    Sample {
        shape: String,
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
    /// Monte Carlo estimate of P[L(x) < L(y)], or of the walk event C.
    Mc {
        shape: String,
        #[arg(long, num_args = 2, value_names = ["X", "Y"], required_unless_present = "event_c")]
        pair: Option<Vec<String>>,
        /// Estimate the probability that the biased lattice walk stays ordered.
        #[arg(long)]
        event_c: bool,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Admissibility, separation, progress and solidity of a triplet.
    Classify {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value = "[]")]
        mu: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value = "1/4")]
        eps: String,
    },
    /// Run a named verification suite (`verify list` shows the names).
    Verify {
        suite: String,
        /// Extra suite parameters as `key=value`.
        params: Vec<String>,
        #[arg(long = "d-max")]
        d_max: Option<usize>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Exact delta along a shape family, one CSV row per member.
    Scan {
        /// two_chain | n2 | catalan | rect(k:1) | staircase3 | tvk(a1,a2,..)
        family: String,
        /// Inclusive range `a..b`.
        #[arg(long, default_value = "2..20")]
        m: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Hlf,
    Frobenius,
    Det,
    Paths,
    Nhlf,
    Flagged,
    Brute,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Hlf => "hlf",
            Method::Frobenius => "frobenius",
            Method::Det => "det",
            Method::Paths => "paths",
            Method::Nhlf => "nhlf",
            Method::Flagged => "flagged",
            Method::Brute => "brute",
            Method::All => "all",
        }
    }
}

/// What a command produced: the exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command,
/// printing its output. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let out = execute(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

/// Like [`run`] but captures the output instead of printing it.
pub fn execute<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Some(t) = cli.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match dispatch(&cli) {
        Ok(rendered) => rendered,
        Err(e) => CliOutput { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

type CmdResult = std::result::Result<CliOutput, Error>;

enum Format {
    Text,
    Json,
    Csv,
}

fn format_of(cli: &Cli) -> Format {
    if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    }
}

fn exact(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

fn count_str(n: &BigUint) -> Value {
    Value::String(n.to_string())
}

fn cell_json(c: Cell) -> Value {
    json!([c.row, c.col])
}

fn parse_shape(s: &str) -> std::result::Result<SkewShape, Error> {
    s.parse()
}

fn parse_cell(s: &str) -> std::result::Result<Cell, Error> {
    s.parse()
}

fn parse_pair(v: &[String]) -> std::result::Result<(Cell, Cell), Error> {
    Ok((parse_cell(&v[0])?, parse_cell(&v[1])?))
}

fn record(command: &str, inputs: Value, results: Value) -> Value {
    json!({ "command": command, "inputs": inputs, "results": results })
}

fn ok(text: String) -> CliOutput {
    CliOutput { code: 0, stdout: text, stderr: String::new() }
}

/// Renders a record in the requested format; `table` supplies CSV rows for
/// commands with a natural tabular form.
fn render(cli: &Cli, rec: &Value, table: Option<(Vec<&str>, Vec<Vec<String>>)>) -> String {
    match format_of(cli) {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(rec).expect("json")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match table {
                Some((header, rows)) => {
                    let _ = w.write_record(&header);
                    for r in rows {
                        let _ = w.write_record(&r);
                    }
                }
                None => {
                    let _ = w.write_record(["field", "value"]);
                    flatten("", &rec["results"], &mut |k, v| {
                        let _ = w.write_record([k, v]);
                    });
                }
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf8")
        }
        Format::Text => {
            let mut out = String::new();
            flatten("", &rec["results"], &mut |k, v| {
                let _ = writeln!(out, "{k}: {v}");
            });
            out
        }
    }
}

/// Walks nested objects with dotted keys; arrays and scalars are leaves.
fn flatten(prefix: &str, v: &Value, emit: &mut dyn FnMut(&str, &str)) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, emit);
            }
        }
        Value::String(s) => emit(prefix, s),
        other => emit(prefix, &other.to_string()),
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Count { shape, method } => cmd_count(cli, shape, *method),
        Command::Delta { shape, pair, phi } => cmd_delta(cli, shape, pair.as_deref(), *phi),
        Command::Pairprob { shape, x, y } => cmd_pairprob(cli, shape, x, y),
        Command::Bound { shape, blocks } => cmd_bound(cli, shape, blocks.as_deref()),
        Command::Sample { shape, trials } => cmd_sample(cli, shape, *trials),
        Command::Mc { shape, pair, event_c, trials } => cmd_mc(cli, shape, pair.as_deref(), *event_c, *trials),
        Command::Classify { lambda, gamma, mu, d, eps } => cmd_classify(cli, lambda, gamma, mu, *d, eps),
        Command::Verify { suite, params, d_max, eps } => cmd_verify(cli, suite, params, *d_max, eps.as_deref()),
        Command::Scan { family, m } => cmd_scan(cli, family, m),
    }
}

fn count_with(method: Method, s: &SkewShape) -> std::result::Result<BigUint, Error> {
    match method {
        Method::Hlf | Method::Frobenius if !s.is_straight() => {
            Err(Error::OutOfRange(format!("method {} needs a straight shape", method.name())))
        }
        Method::Hlf => f_hlf(s.outer()),
        Method::Frobenius => f_frobenius(s.outer(), s.d()),
        Method::Det => f_determinant(s),
        Method::Paths | Method::All => Ok(f_paths(s)),
        Method::Nhlf => f_nhlf(s),
        Method::Flagged => f_nhlf_flagged(s),
        Method::Brute => oracle::count_linear_extensions(s),
    }
}

fn cmd_count(cli: &Cli, shape: &str, method: Method) -> CmdResult {
    let s = parse_shape(shape)?;
    let inputs = json!({ "shape": s.to_string(), "method": method.name() });
    if method != Method::All {
        let start = Instant::now();
        let v = count_with(method, &s)?;
        let mut results = json!({ "value": count_str(&v) });
        if cli.timing {
            results["timing_ms_approx"] = json!(start.elapsed().as_secs_f64() * 1e3);
        }
        return Ok(ok(render(cli, &record("count", inputs, results), None)));
    }

    let mut methods = vec![Method::Paths, Method::Det, Method::Nhlf, Method::Flagged];
    if s.is_straight() {
        methods.splice(0..0, [Method::Hlf, Method::Frobenius]);
    }
    if s.size() <= oracle::MAX_CELLS {
        methods.push(Method::Brute);
    }
    let mut values = Map::new();
    let mut timing = Map::new();
    let mut distinct: Vec<BigUint> = Vec::new();
    for m in methods {
        let start = Instant::now();
        let v = count_with(m, &s)?;
        timing.insert(m.name().into(), json!(start.elapsed().as_secs_f64() * 1e3));
        values.insert(m.name().into(), count_str(&v));
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    let agree = distinct.len() == 1;
    let mut results = json!({ "value": count_str(&distinct[0]), "agree": agree, "methods": values });
    if cli.timing {
        results["timing_ms_approx"] = Value::Object(timing);
    }
    let mut out = ok(render(cli, &record("count", inputs, results), None));
    if !agree {
        out.code = 1;
        out.stderr = "error: counting methods disagree\n".into();
    }
    Ok(out)
}

fn cmd_delta(cli: &Cli, shape: &str, pair: Option<&[String]>, phi: Option<usize>) -> CmdResult {
    let s = parse_shape(shape)?;
    let mut inputs = json!({ "shape": s.to_string() });
    let results = if let Some(p) = pair {
        let (x, y) = parse_pair(p)?;
        inputs["pair"] = json!([cell_json(x), cell_json(y)]);
        let d = delta_pair(&s, x, y)?;
        json!({ "delta": exact(&d), "delta_approx": arith::to_f64(&d) })
    } else if let Some(a) = phi {
        inputs["a"] = json!(a);
        let phi = phi_of_a(&s, a)?;
        let rep = delta_poset(&s)?;
        let bound = &phi * arith::int(2);
        json!({
            "phi": exact(&phi),
            "bound": exact(&bound),
            "delta": exact(&rep.delta),
            "delta_within_bound": rep.delta <= bound,
        })
    } else {
        let rep = delta_poset(&s)?;
        let witnesses: Vec<Value> = rep.witnesses.iter().map(|&(x, y)| json!([cell_json(x), cell_json(y)])).collect();
        json!({
            "delta": exact(&rep.delta),
            "delta_approx": arith::to_f64(&rep.delta),
            "witnesses": witnesses,
            "pair_count": rep.pair_count,
        })
    };
    Ok(ok(render(cli, &record("delta", inputs, results), None)))
}

fn cmd_pairprob(cli: &Cli, shape: &str, x: &str, y: &str) -> CmdResult {
    let s = parse_shape(shape)?;
    let (x, y) = (parse_cell(x)?, parse_cell(y)?);
    let p = prob_before(&s, x, y)?;
    let inputs = json!({ "shape": s.to_string(), "x": cell_json(x), "y": cell_json(y) });
    let results = json!({
        "prob_before": exact(&p),
        "prob_before_approx": arith::to_f64(&p),
        "delta": exact(&(&p * arith::int(2) - arith::int(1)).abs()),
    });
    Ok(ok(render(cli, &record("pairprob", inputs, results), None)))
}

fn cmd_bound(cli: &Cli, shape: &str, blocks: Option<&str>) -> CmdResult {
    let s = parse_shape(shape)?;
    let d = s.d();
    let b = match blocks {
        None => IntervalDecomposition::singletons(d),
        Some(t) => {
            let ends = t
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::BadIntervals(format!("cannot parse '{t}'")))?;
            IntervalDecomposition::new(ends, d)?
        }
    };
    let f = f_paths(&s);
    let big_f = f_product(&s);
    let ratio = arith::from_biguint(&f) / &big_f;
    let schur = schur_ratio_bound(&s);
    let ib = interval_upper_bound(&s, &b);
    let k = k_value(&s, &b);
    let inputs = json!({ "shape": s.to_string(), "blocks": b.ends() });
    let results = json!({
        "f": count_str(&f),
        "F": exact(&big_f),
        "f_over_F": exact(&ratio),
        "f_over_F_approx": arith::to_f64(&ratio),
        "excited_diagrams": count_str(&excited_count(&s)),
        "schur_ratio_bound": exact(&schur),
        "interval_bound": {
            "bound": exact(&ib.bound),
            "constant": exact(&ib.constant),
            "same_block_factor": exact(&ib.same_block_factor),
            "cross_block_factor": exact(&ib.cross_block_factor),
        },
        "k_value": exact(&k),
        "phi": exact(&balance_phi(&s)),
        "within_schur_bound": ratio <= schur,
        "within_interval_bound": ratio <= ib.bound,
    });
    Ok(ok(render(cli, &record("bound", inputs, results), None)))
}

/// Row-major list of labels, e.g. `1 2 4/3 5`.
fn tableau_string(s: &SkewShape, path: &walks::TableauPath) -> String {
    let cells = s.cells();
    let mut rows: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for c in cells {
        rows.entry(c.row).or_default().push(path.label(c).map(|l| l.to_string()).unwrap_or_default());
    }
    rows.values().map(|r| r.join(" ")).collect::<Vec<_>>().join("/")
}

/// Largest `f` for which the chi-square test over all outcomes is reported.
const CHI_SQUARE_MAX_OUTCOMES: u64 = 10_000;

fn cmd_sample(cli: &Cli, shape: &str, trials: u64) -> CmdResult {
    let s = parse_shape(shape)?;
    if trials == 0 {
        return Err(Error::OutOfRange("trials must be positive".into()));
    }
    let sampler = Sampler::new(&s);
    let mut freq: BTreeMap<String, u64> = BTreeMap::new();
    for t in 0..trials {
        let path = sampler.sample(&mut walks::trial_rng(cli.seed, t));
        *freq.entry(tableau_string(&s, &path)).or_default() += 1;
    }
    let f = sampler.lattice().total().clone();
    let inputs = json!({ "shape": s.to_string(), "trials": trials, "seed": cli.seed });
    let rows: Vec<Vec<String>> = freq
        .iter()
        .map(|(k, &c)| vec![k.clone(), c.to_string(), (c as f64 / trials as f64).to_string()])
        .collect();
    let table: Vec<Value> = freq.iter().map(|(k, &c)| json!({ "tableau": k, "count": c })).collect();
    let mut results = json!({ "f": count_str(&f), "distinct": freq.len(), "frequencies": table });
    if let Some(outcomes) = f.to_string().parse::<u64>().ok().filter(|&n| n <= CHI_SQUARE_MAX_OUTCOMES && trials > 1) {
        let mut counts: Vec<u64> = freq.values().copied().collect();
        counts.resize(outcomes as usize, 0);
        let (stat, p) = chi_square_uniform(&counts);
        results["chi_square_approx"] = json!(stat);
        results["p_value_approx"] = json!(p);
    }
    let rec = record("sample", inputs, results);
    let text = match format_of(cli) {
        Format::Text => {
            let mut out = format!("f: {f}\n");
            for (k, c) in &freq {
                let _ = writeln!(out, "{c:>10}  {k}");
            }
            if let Some(p) = rec["results"].get("p_value_approx") {
                let _ = writeln!(out, "chi-square p-value: {p}");
            }
            out
        }
        _ => render(cli, &rec, Some((vec!["tableau", "count", "frequency_approx"], rows))),
    };
    Ok(ok(text))
}

fn cmd_mc(cli: &Cli, shape: &str, pair: Option<&[String]>, event_c: bool, trials: u64) -> CmdResult {
    let s = parse_shape(shape)?;
    let mut inputs = json!({ "shape": s.to_string(), "trials": trials, "seed": cli.seed });
    let results = if event_c {
        inputs["event"] = json!("C");
        let e = estimate_prob_c(&s, trials, cli.seed)?;
        let covered = (arith::to_f64(&e.exact) - e.estimate_approx).abs() <= e.hoeffding_halfwidth_approx;
        json!({
            "hits": e.hits,
            "estimate": exact(&e.estimate),
            "estimate_approx": e.estimate_approx,
            "exact": exact(&e.exact),
            "hoeffding_halfwidth_approx": e.hoeffding_halfwidth_approx,
            "covers_exact": covered,
            "lemma_floor_approx": e.lemma_floor_approx,
        })
    } else {
        let (x, y) = parse_pair(pair.expect("clap requires --pair"))?;
        inputs["pair"] = json!([cell_json(x), cell_json(y)]);
        let e = mc_prob_before(&s, x, y, trials, cli.seed)?;
        let ex = prob_before(&s, x, y)?;
        json!({
            "hits": e.hits,
            "estimate": exact(&e.estimate),
            "estimate_approx": e.estimate_approx,
            "hoeffding_halfwidth_approx": e.hoeffding_halfwidth_approx,
            "exact": exact(&ex),
            "covers_exact": e.covers(&ex),
        })
    };
    Ok(ok(render(cli, &record("mc", inputs, results), None)))
}

fn cmd_classify(cli: &Cli, lambda: &str, gamma: &str, mu: &str, d: Option<usize>, eps: &str) -> CmdResult {
    let lam: Partition = lambda.parse()?;
    let gam: Partition = gamma.parse()?;
    let mu: Partition = mu.parse()?;
    let d = d.unwrap_or(lam.len());
    let eps = verify::parse_number(eps).ok_or_else(|| Error::BadParams(format!("eps={eps}")))?;
    let c = classify_triplet(&lam, &gam, &mu, d, &eps)?;
    let inputs = json!({ "lambda": lam.to_string(), "gamma": gam.to_string(), "mu": mu.to_string(), "d": d, "eps": exact(&eps) });
    let results = json!({
        "pair_admissible": c.pair_admissible,
        "separated": c.separated,
        "progressive": c.progressive,
        "admissible": c.pair_admissible && c.separated && c.progressive,
        "p": exact(&c.p),
        "offsets": c.y.offsets.iter().map(exact).collect::<Vec<_>>(),
        "y_approx": c.y.approx(),
        "solid_ratios": c.solid_ratios.iter().map(exact).collect::<Vec<_>>(),
        "min_solid_constant": exact(&c.min_solid_constant),
    });
    Ok(ok(render(cli, &record("classify", inputs, results), None)))
}

fn cmd_verify(cli: &Cli, suite: &str, params: &[String], d_max: Option<usize>, eps: Option<&str>) -> CmdResult {
    if suite == "list" {
        return Ok(ok(verify::SUITES.iter().map(|s| format!("{s}\n")).collect()));
    }
    let mut map = BTreeMap::new();
    for p in params {
        let (k, v) = p.split_once('=').ok_or_else(|| Error::BadParams(format!("expected key=value, got '{p}'")))?;
        map.insert(k.to_string(), v.to_string());
    }
    if let Some(n) = cli.n_max {
        map.insert("n_max".into(), n.to_string());
    }
    if let Some(d) = d_max {
        map.insert("d_max".into(), d.to_string());
    }
    if let Some(e) = eps {
        map.insert("eps".into(), e.to_string());
    }
    map.entry("seed".into()).or_insert_with(|| cli.seed.to_string());
    let params = SuiteParams::from_map(&map)?;
    let start = Instant::now();
    let report = verify::run_suite(suite, &params)?;
    let elapsed = start.elapsed();
    let mut text = match format_of(cli) {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("report serializes");
            if cli.timing {
                v["timing_ms_approx"] = json!(elapsed.as_secs_f64() * 1e3);
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => report.to_csv(),
        Format::Text => suite_text(&report),
    };
    if cli.timing && !cli.json {
        let _ = writeln!(text, "elapsed: {:.3}s", elapsed.as_secs_f64());
    }
    let code = if report.verdict == Verdict::Fail { 1 } else { 0 };
    Ok(CliOutput { code, stdout: text, stderr: String::new() })
}

fn suite_text(r: &verify::SuiteReport) -> String {
    let mut out = format!("{}: {} ({} instances)\n  {}\n", r.suite, r.verdict, r.instances, r.header);
    for c in &r.checks {
        let kind = if c.assertive { "" } else { " [report only]" };
        let _ = writeln!(out, "  {:<32} {:>8} instances {:>6} violations{kind}", c.check, c.instances, c.violations);
    }
    for e in &r.extrema {
        let v = e.value.clone().unwrap_or_else(|| format!("{:.6}", e.value_approx));
        let _ = writeln!(out, "  {} = {v} at {}", e.name, e.at);
    }
    for v in r.violations.iter().take(20) {
        let _ = writeln!(out, "  VIOLATION {} at {}: {}", v.check, v.shape, v.detail);
    }
    if r.violations.len() > 20 {
        let _ = writeln!(out, "  ... {} more violations", r.violations.len() - 20);
    }
    out
}

fn parse_range(t: &str) -> std::result::Result<(usize, usize), Error> {
    let bad = || Error::BadParams(format!("expected a range a..b, got '{t}'"));
    let (a, b) = t.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn cmd_scan(cli: &Cli, family: &str, m: &str) -> CmdResult {
    let fam: Family = family.parse()?;
    let (lo, mut hi) = parse_range(m)?;
    if let Some(n) = cli.n_max {
        hi = hi.min(n);
    }
    let points = verify::family_scan(&fam, lo..=hi)?;
    let header = vec!["n", "delta_num", "delta_den", "sqrt_n_delta_approx", "m", "shape"];
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|p| {
            vec![
                p.n.to_string(),
                p.delta.numer().to_string(),
                p.delta.denom().to_string(),
                p.sqrt_n_delta_approx.to_string(),
                p.m.to_string(),
                p.shape.clone(),
            ]
        })
        .collect();
    let text = if cli.json {
        let pts: Vec<Value> = points
            .iter()
            .map(|p| {
                json!({
                    "m": p.m,
                    "shape": p.shape,
                    "n": p.n,
                    "delta": exact(&p.delta),
                    "witness": [cell_json(p.witness.0), cell_json(p.witness.1)],
                    "sqrt_n_delta_approx": p.sqrt_n_delta_approx,
                })
            })
            .collect();
        let rec = record("scan", json!({ "family": fam.to_string(), "m": [lo, hi] }), json!({ "points": pts }));
        format!("{}\n", serde_json::to_string_pretty(&rec).expect("json"))
    } else {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record(&header);
        for r in rows {
            let _ = w.write_record(&r);
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf8")
    };
    Ok(ok(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> CliOutput {
        execute(std::iter::once("skewsort").chain(args.iter().copied()))
    }

    #[test]
    fn count_all_agrees_on_catalan_shape() {
        let out = exec(&["count", "[3,3]", "--method", "all", "--json"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["results"]["value"], "5");
        assert_eq!(v["results"]["agree"], true);
    }

    #[test]
    fn malformed_containment_is_a_usage_error() {
        assert_eq!(exec(&["count", "[2,1]/[3]"]).code, 2);
        assert_eq!(exec(&["frobnicate"]).code, 2);
        assert_eq!(exec(&["count", "[3]", "--method", "hlf", "--json"]).code, 0);
    }

    #[test]
    fn delta_examples() {
        let v: Value = serde_json::from_str(&exec(&["delta", "[3,3]", "--json"]).stdout).unwrap();
        assert_eq!(v["results"]["delta"], "1/5");
        assert_eq!(v["results"]["witnesses"][0], json!([[1, 2], [2, 1]]));
        let v: Value = serde_json::from_str(&exec(&["delta", "[3,1]/[1]", "--pair", "2,1", "1,2", "--json"]).stdout).unwrap();
        assert_eq!(v["results"]["delta"], "1/3");
        let out = exec(&["delta", "[4,1]/[1]"]);
        assert!(out.stdout.starts_with("delta: 0\n"), "{}", out.stdout);
        assert_eq!(exec(&["delta", "[3,3]", "--pair", "4,1", "1,2"]).code, 2);
    }

    #[test]
    fn scan_rows() {
        let out = exec(&["scan", "catalan", "--m", "2..4"]);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], "n,delta_num,delta_den,sqrt_n_delta_approx,m,shape");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("6,1,5,"));
    }

    #[test]
    fn sample_is_reproducible() {
        let a = exec(&["sample", "[3,3]", "--trials", "2000", "--seed", "7", "--json"]);
        let b = exec(&["sample", "[3,3]", "--trials", "2000", "--seed", "7", "--json"]);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["results"]["distinct"], 5);
    }

    #[test]
    fn verify_exit_codes() {
        assert_eq!(exec(&["verify", "one_third", "--n-max", "6"]).code, 0);
        assert_eq!(exec(&["verify", "no_such_suite"]).code, 2);
        assert_eq!(exec(&["verify", "one_third", "bogus=1"]).code, 2);
    }

    #[test]
    fn parse_ranges() {
        assert_eq!(parse_range("2..30").unwrap(), (2, 30));
        assert_eq!(parse_range("2..=30").unwrap(), (2, 30));
        assert!(parse_range("5..2").is_err());
    }
}
