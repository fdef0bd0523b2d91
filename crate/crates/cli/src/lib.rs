//! Command dispatch for the `dgrid` binary.
//!
//! `run` is the whole interface: it parses argv, executes one verb against
//! the library, and returns the exit code together with the complete output
//! text. Keeping the binary a one-line wrapper around `run` lets every code
//! path, including error formatting and exit codes, be tested in-process.
//!
//! Exit codes: 0 for success (a negative mathematical answer is still
//! success), 2 for validation problems (unparseable or oversized input), 1
//! for domain errors (well-formed input the operation cannot serve, such as
//! asking for an adversarial witness against a far shift).

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use dyadic_grids::{
    adversarial_witness, bounded_tie_analysis, canonicalize, certificate, cover,
    cover_constant_estimate, expand, format_rational, is_adjacent, parse_rational,
    AdjacencyReport, Base, BaseNExpansion, CoverResult, DigitSequence, DigitStream,
    EstimateSummary, FailingCondition, FarnessCertificate, GridRep, GridSource, Interval, Query,
    Rational, StreamReport, StreamVerdict, WitnessReport,
};

/// Default bound on accepted denominators; override with DG_MAX_DENOM.
/// Period detection for p/q costs O(q) in the worst case, so unbounded
/// denominators would let a one-line command run for minutes.
const DEFAULT_MAX_DENOM: u64 = 1_000_000_000;

#[derive(Parser)]
#[command(
    name = "dgrid",
    about = "Exact arithmetic for shifted base-n grids: far numbers, adjacency, covers",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Base n used for every expansion, digit sequence, and grid in the command.
    #[arg(long, global = true, default_value_t = 2)]
    base: u32,
    /// Emit one line of JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Classify a shift as n-far, with its tie length and both constants
    Far(FarArgs),
    /// Print the canonical base-n expansion of a rational in [0, 1)
    Expand(ExpandArgs),
    /// Decide whether two grid representations are adjacent
    Adjacent(AdjacentArgs),
    /// Find the shortest cell of either grid that covers a query interval
    Cover(CoverArgs),
    /// Sample seeded cover queries and report the worst ratio seen
    Estimate(EstimateArgs),
    /// Build a query whose best cover ratio exceeds base^N
    Witness(WitnessArgs),
    /// Rewrite a grid representation so its shift lands in [0, 1)
    Canonicalize(CanonicalizeArgs),
}

#[derive(Args)]
struct FarArgs {
    /// Rational "p/q"; with --stream, a digit-sequence literal "pre:per"
    #[arg(allow_hyphen_values = true)]
    value: String,
    /// Treat VALUE as a digit sequence and scan a finite window of it
    #[arg(long)]
    stream: bool,
    /// Number of leading digits to scan in --stream mode
    #[arg(long, default_value_t = 64, requires = "stream",
          value_parser = clap::value_parser!(u64).range(1..))]
    depth: u64,
}

#[derive(Args)]
struct ExpandArgs {
    /// Rational "p/q" in [0, 1)
    #[arg(allow_hyphen_values = true)]
    x: String,
}

#[derive(Args)]
struct AdjacentArgs {
    /// First grid, written "shift|pre:per" (location digits index from 0)
    #[arg(allow_hyphen_values = true)]
    g1: String,
    /// Second grid, same form
    #[arg(allow_hyphen_values = true)]
    g2: String,
}

#[derive(Args)]
struct CoverArgs {
    /// Half-open query interval "l..r"
    #[arg(allow_hyphen_values = true)]
    query: String,
    /// First grid, "shift|pre:per"; ties break to this one
    #[arg(allow_hyphen_values = true)]
    g1: String,
    /// Second grid, same form
    #[arg(allow_hyphen_values = true)]
    g2: String,
}

#[derive(Args)]
struct EstimateArgs {
    /// First grid, "shift|pre:per"
    #[arg(allow_hyphen_values = true)]
    g1: String,
    /// Second grid, same form
    #[arg(allow_hyphen_values = true)]
    g2: String,
    /// Number of sampled queries
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Seed for the query stream; same seed, same queries
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generation range "a..b", both ends included; generation m cells have length n^-m
    #[arg(long, default_value = "-5..15", allow_hyphen_values = true)]
    scales: String,
}

#[derive(Args)]
struct WitnessArgs {
    /// Shift of the translated grid; must not be n-far
    #[arg(allow_hyphen_values = true)]
    delta: String,
    /// Threshold exponent: the query's best cover ratio will exceed base^N
    #[arg(short = 'N', value_name = "N")]
    strength: u32,
}

#[derive(Args)]
struct CanonicalizeArgs {
    /// Grid to rewrite, "shift|pre:per"
    #[arg(allow_hyphen_values = true)]
    g: String,
}

enum Failure {
    Validation(String),
    Domain(String),
}

type CliResult<T> = Result<T, Failure>;

fn invalid(what: &str, token: &str) -> Failure {
    Failure::Validation(format!("error: cannot parse {what}: '{token}'\n"))
}

/// Library errors after the parse phase are mathematical domain errors,
/// except the library's own parse rejections, which stay validation.
fn operation_error(e: dyadic_grids::Error) -> Failure {
    if e.is_validation() {
        Failure::Validation(format!("error: {e}\n"))
    } else {
        Failure::Domain(format!("error: {e}\n"))
    }
}

/// Parses argv (without the program name) and runs one command.
/// Returns (exit_code, output); the caller decides where the text goes.
pub fn run(args: &[String]) -> (i32, String) {
    let mut argv = Vec::with_capacity(args.len() + 1);
    argv.push("dgrid".to_string());
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, e.to_string());
        }
    };
    match execute(cli) {
        Ok(text) => (0, text),
        Err(Failure::Validation(text)) => (2, text),
        Err(Failure::Domain(text)) => (1, text),
    }
}

fn execute(cli: Cli) -> CliResult<String> {
    let max_denom = read_max_denom()?;
    let base = Base::new(cli.base)
        .map_err(|_| Failure::Validation(format!("error: invalid base '{}'\n", cli.base)))?;
    let json = cli.json;
    match cli.verb {
        Verb::Far(a) => run_far(max_denom, base, json, &a),
        Verb::Expand(a) => {
            let x = parse_ratio(max_denom, "rational", &a.x)?;
            let e = expand(&x, base).map_err(operation_error)?;
            Ok(render_expansion(&x, &e, json))
        }
        Verb::Adjacent(a) => {
            let g1 = parse_grid(max_denom, base, &a.g1)?;
            let g2 = parse_grid(max_denom, base, &a.g2)?;
            let report = is_adjacent(&g1, &g2).map_err(operation_error)?;
            Ok(render_adjacency(&report, json))
        }
        Verb::Cover(a) => {
            let q = parse_query(max_denom, &a.query)?;
            let g1 = parse_grid(max_denom, base, &a.g1)?;
            let g2 = parse_grid(max_denom, base, &a.g2)?;
            let res = cover(&q, &g1, &g2).map_err(operation_error)?;
            Ok(render_cover(&res, json))
        }
        Verb::Estimate(a) => {
            let g1 = parse_grid(max_denom, base, &a.g1)?;
            let g2 = parse_grid(max_denom, base, &a.g2)?;
            let scales = parse_scales(&a.scales)?;
            let summary =
                cover_constant_estimate(&g1, &g2, a.trials, a.seed, scales).map_err(operation_error)?;
            Ok(render_estimate(&summary, json))
        }
        Verb::Witness(a) => {
            let delta = parse_ratio(max_denom, "rational", &a.delta)?;
            let report = adversarial_witness(&delta, base, a.strength).map_err(operation_error)?;
            Ok(render_witness(&report, json))
        }
        Verb::Canonicalize(a) => {
            let g = parse_grid(max_denom, base, &a.g)?;
            Ok(render_grid(&canonicalize(&g), json))
        }
    }
}

fn run_far(max_denom: u64, base: Base, json: bool, a: &FarArgs) -> CliResult<String> {
    if a.stream {
        let digits = parse_digits(base, &a.value)?;
        let stream =
            DigitStream::eventually_periodic(base, digits.preperiod().to_vec(), digits.period().to_vec())
                .map_err(operation_error)?;
        let report = bounded_tie_analysis(&stream, a.depth).map_err(operation_error)?;
        return Ok(render_stream(&digits, a.depth, &report, json));
    }
    let delta = parse_ratio(max_denom, "rational", &a.value)?;
    Ok(render_certificate(&certificate(&delta, base), json))
}

fn read_max_denom() -> CliResult<u64> {
    match std::env::var("DG_MAX_DENOM") {
        Ok(s) => s.trim().parse::<u64>().map_err(|_| invalid("DG_MAX_DENOM", &s)),
        Err(_) => Ok(DEFAULT_MAX_DENOM),
    }
}

fn parse_ratio(max_denom: u64, what: &str, token: &str) -> CliResult<Rational> {
    let x = parse_rational(token).map_err(|_| invalid(what, token))?;
    match u64::try_from(x.denom()) {
        Ok(d) if d <= max_denom => Ok(x),
        _ => Err(Failure::Validation(format!(
            "error: denominator of '{token}' exceeds DG_MAX_DENOM ({max_denom})\n"
        ))),
    }
}

fn parse_digits(base: Base, token: &str) -> CliResult<DigitSequence> {
    DigitSequence::parse(base, token).map_err(|_| invalid("digit sequence", token))
}

fn parse_grid(max_denom: u64, base: Base, token: &str) -> CliResult<GridRep> {
    let (shift, location) = token
        .split_once('|')
        .ok_or_else(|| invalid("grid (expected \"shift|pre:per\")", token))?;
    let shift = parse_ratio(max_denom, "grid shift", shift)?;
    let location = parse_digits(base, location)?;
    Ok(GridRep::new(shift, location))
}

fn parse_query(max_denom: u64, token: &str) -> CliResult<Query> {
    let (l, r) = token
        .split_once("..")
        .ok_or_else(|| invalid("query (expected \"l..r\")", token))?;
    let left = parse_ratio(max_denom, "query endpoint", l)?;
    let right = parse_ratio(max_denom, "query endpoint", r)?;
    Query::new(left, right).map_err(|_| invalid("query (need l < r)", token))
}

fn parse_scales(token: &str) -> CliResult<std::ops::RangeInclusive<i64>> {
    token
        .split_once("..")
        .and_then(|(a, b)| {
            let a = a.trim().parse::<i64>().ok()?;
            let b = b.trim().parse::<i64>().ok()?;
            (a <= b).then_some(a..=b)
        })
        .ok_or_else(|| invalid("scales (expected \"a..b\" with a <= b)", token))
}

macro_rules! json_line {
    ($v:expr) => {
        format!("{}\n", serde_json::to_string($v).expect("reports always serialize"))
    };
}

/// Aligned key/value text: keys padded to a shared column, one row per line.
fn rows(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (key, value) in pairs {
        out.push_str(&format!("{key:<width$}  {value}\n"));
    }
    out
}

fn opt_rational(x: &Option<Rational>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), format_rational)
}

fn rational_list(xs: &[Rational]) -> String {
    if xs.is_empty() {
        return "-".to_string();
    }
    xs.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn digit_list(ds: &[u32]) -> String {
    if ds.is_empty() {
        return "-".to_string();
    }
    ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn interval_text(i: &Interval) -> String {
    format!("[{}, {})", format_rational(i.left()), format_rational(&i.right()))
}

fn query_text(q: &Query) -> String {
    format!("[{}, {})", format_rational(q.left()), format_rational(q.right()))
}

fn source_name(s: GridSource) -> &'static str {
    match s {
        GridSource::First => "FIRST_GRID",
        GridSource::Second => "SECOND_GRID",
    }
}

fn condition_name(c: FailingCondition) -> &'static str {
    match c {
        FailingCondition::None => "NONE",
        FailingCondition::ShiftNotFar => "SHIFT_NOT_FAR",
        FailingCondition::LiminfZero => "LIMINF_ZERO",
        FailingCondition::LimsupOne => "LIMSUP_ONE",
    }
}

fn verdict_name(v: StreamVerdict) -> &'static str {
    match v {
        StreamVerdict::FarAtDepth => "FAR_AT_DEPTH",
        StreamVerdict::NotFarSuspected => "NOT_FAR_SUSPECTED",
        StreamVerdict::Undecided => "UNDECIDED",
    }
}

fn render_certificate(c: &FarnessCertificate, json: bool) -> String {
    if json {
        return json_line!(c);
    }
    let witness = match &c.tie.witness {
        Some(w) => format!("digits {}..{} repeat {}", w.start, w.end, w.digit),
        None => "-".to_string(),
    };
    rows(&[
        ("delta", format_rational(&c.delta)),
        ("base", c.base.get().to_string()),
        ("is_far", c.is_far.to_string()),
        ("T", c.tie.t_value.to_string()),
        ("d", opt_rational(&c.d_value)),
        ("C", opt_rational(&c.c_value)),
        ("witness", witness),
    ])
}

fn render_stream(digits: &DigitSequence, depth: u64, r: &StreamReport, json: bool) -> String {
    if json {
        let v = serde_json::json!({
            "stream": digits.literal(),
            "base": digits.base().get(),
            "depth": depth,
            "t_lower_bound": r.t_lower_bound,
            "verdict": r.verdict,
        });
        return json_line!(&v);
    }
    rows(&[
        ("stream", digits.literal()),
        ("base", digits.base().get().to_string()),
        ("depth", depth.to_string()),
        ("t_lower_bound", r.t_lower_bound.to_string()),
        ("verdict", verdict_name(r.verdict).to_string()),
    ])
}

fn render_expansion(x: &Rational, e: &BaseNExpansion, json: bool) -> String {
    if json {
        let v = serde_json::json!({
            "x": format_rational(x),
            "base": e.base().get(),
            "preperiod": e.preperiod(),
            "period": e.period(),
            "terminating": e.is_terminating(),
        });
        return json_line!(&v);
    }
    rows(&[
        ("x", format_rational(x)),
        ("base", e.base().get().to_string()),
        ("preperiod", digit_list(e.preperiod())),
        ("period", digit_list(e.period())),
        ("terminating", e.is_terminating().to_string()),
    ])
}

fn render_adjacency(r: &AdjacencyReport, json: bool) -> String {
    if json {
        return json_line!(r);
    }
    rows(&[
        ("adjacent", r.adjacent.to_string()),
        ("shift_gap", format_rational(&r.shift_gap)),
        ("shift_gap_far", r.shift_gap_far.to_string()),
        ("c1", format_rational(&r.c1)),
        ("c2", format_rational(&r.c2)),
        ("limit_points", rational_list(&r.limit_points)),
        ("failing_condition", condition_name(r.failing_condition).to_string()),
    ])
}

fn render_cover(r: &CoverResult, json: bool) -> String {
    if json {
        return json_line!(r);
    }
    rows(&[
        ("interval", interval_text(&r.interval)),
        ("generation", r.interval.generation().to_string()),
        ("source", source_name(r.source).to_string()),
        ("ratio", format_rational(&r.ratio)),
    ])
}

fn render_estimate(s: &EstimateSummary, json: bool) -> String {
    if json {
        return json_line!(s);
    }
    let argmax = s.argmax_query.as_ref().map_or_else(|| "-".to_string(), query_text);
    rows(&[
        ("trials", s.trials.to_string()),
        ("covered", s.covered.to_string()),
        ("skipped", s.skipped.to_string()),
        ("max_ratio", opt_rational(&s.max_ratio)),
        ("argmax_query", argmax),
    ])
}

fn render_witness(w: &WitnessReport, json: bool) -> String {
    if json {
        return json_line!(w);
    }
    rows(&[
        ("query", query_text(&w.query)),
        ("m0", w.m0.to_string()),
        ("k0", w.k0.to_string()),
        ("target", format_rational(&w.target)),
        ("cover_interval", interval_text(&w.cover.interval)),
        ("cover_generation", w.cover.interval.generation().to_string()),
        ("cover_source", source_name(w.cover.source).to_string()),
        ("cover_ratio", format_rational(&w.cover.ratio)),
    ])
}

fn render_grid(g: &GridRep, json: bool) -> String {
    if json {
        return json_line!(g);
    }
    rows(&[
        ("base", g.base().get().to_string()),
        ("shift", format_rational(g.shift())),
        ("location", g.location().literal()),
    ])
}
