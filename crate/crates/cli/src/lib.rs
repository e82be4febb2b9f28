//! Argument parsing and report rendering for the `pathram` binary.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use pathram::asymptotics::{
    at_least_half_power, bootstrap_rate, bootstrap_walk, delta_family, delta_family_lengths, delta_family_limit,
    period_analysis, sig9, symmetric_lb_side, symmetric_lb_walk, BootstrapParams,
};
use pathram::game::{check_strategy_invariant, run_game, Outcome, Painter};
use pathram::solver::{DEFAULT_NODE_CAP, DEFAULT_WITNESS_CAP};
use pathram::{
    beta_of_walk, delta_of_walk, evaluate, greedy_walk, kstar_branch_and_bound_with, kstar_exhaustive_with_cap,
    mstar_of_kstar, verify_table_range, Error, GrowthRate, SearchConfig, SearchReport, StrategyWalk,
};

/// Exact computations for the online vertex-coloring game avoiding
/// monochromatic paths.
#[derive(Parser, Debug)]
#[command(name = "pathram", version)]
struct Cli {
    /// Output format. CSV column orders are listed in each subcommand's help.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Online vertex-Ramsey threshold k*(P_l1, P_l2): the maximum of the
    /// recursion value k(alpha) over all strategy walks in W(l1, l2).
    ///
    /// CSV columns: l1,l2,method,kstar,mstar,witness_count,witnesses_capped,witnesses
    Kstar(KstarArgs),
    /// Recursion along one strategy walk: k(alpha), and for two colors the
    /// offset beta(alpha) and growth rate delta(alpha).
    ///
    /// CSV columns: walk,targets,steps,k,beta,delta
    EvalWalk(EvalArgs),
    /// Recomputes k*(P_l, P_l) and compares it with the published table
    /// (l = 2..=45). Exits with status 2 if any row differs.
    ///
    /// CSV columns: l,kstar,table_value,diff,status
    VerifyTable(TableArgs),
    /// Growth rate delta of the explicit walk family with c = 4, 5 or 6
    /// rows, against its limit (5+√13)/2, 3+√6 or (7+√37)/2.
    ///
    /// CSV columns: c,t,lengths,delta,delta_decimal,limit,gap
    DeltaFamily(FamilyArgs),
    /// Self-similar bootstrap walk of generation t with parameters q and s,
    /// its growth rate, the rate bound f(q, s) and the target (17/4)^t.
    ///
    /// CSV columns: q,s,t,l1,l2,c,steps,rate_bound,target,delta,delta_at_least_target
    Bootstrap(BootstrapArgs),
    /// Symmetric lower-bound walk in W(L, L) with L = 10 * 416^t and the
    /// exact check k >= 0.5 * L^2.01.
    ///
    /// CSV columns: t,side,steps,k,bound_decimal,holds
    SymmetricLb(SymmetricArgs),
    /// Simulates Builder's list strategy against the walk strategy A_alpha or
    /// the greedy Painter, and checks the strategy invariant on the board.
    ///
    /// CSV columns: step,vertex,color,component_size (one row per game step)
    Simulate(SimulateArgs),
    /// Period, increment and onset of the fixed-offset recurrence
    /// x_n = beta + min_{j1+j2=n-1} (x_j1 + x_j2) from a given prefix.
    ///
    /// CSV columns: prefix_len,beta,p,period,increment,delta,onset
    Period(PeriodArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Branch-and-bound over walk prefixes.
    Bb,
    /// Evaluates every walk; refused above the node cap.
    Exhaustive,
}

#[derive(Args, Debug)]
struct KstarArgs {
    #[arg(long)]
    l1: usize,
    #[arg(long)]
    l2: usize,
    #[arg(long, value_enum, default_value_t = Method::Bb)]
    method: Method,
    /// Worker threads (branch-and-bound only).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Maximizing walks to list (branch-and-bound only; exhaustive lists all).
    #[arg(long)]
    witness_cap: Option<usize>,
    /// Prune prefixes dominated by an already searched prefix.
    #[arg(long)]
    dominance: bool,
    /// Largest number of walks the exhaustive method accepts.
    #[arg(long, env = "PATHRAM_NODE_CAP", default_value_t = DEFAULT_NODE_CAP)]
    node_cap: u128,
    /// Report wall-clock time; the output is then not reproducible.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Run-length walk text such as "1^6,2^2,1^7,2,1^14,2^24".
    #[arg(long)]
    walk: String,
    /// Number of colors; defaults to the largest color used, at least 2.
    #[arg(long)]
    colors: Option<usize>,
    /// Include the full k and x sequences.
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, default_value_t = 2)]
    from: usize,
    #[arg(long, default_value_t = 27)]
    to: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    dominance: bool,
    /// Report seconds per row; the output is then not reproducible.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Number of rows: 4, 5 or 6.
    #[arg(long)]
    c: u32,
    /// Family index.
    #[arg(long)]
    t: u32,
}

#[derive(Args, Debug)]
struct BootstrapArgs {
    /// Ratio l2/l1 within a generation, e.g. 13/10.
    #[arg(long)]
    q: String,
    /// Ratio l1 of one generation to l2 of the previous one.
    #[arg(long)]
    s: u64,
    #[arg(long)]
    t: u32,
    /// Do not evaluate the walk (its length grows about 416-fold per
    /// generation).
    #[arg(long)]
    skip_delta: bool,
}

#[derive(Args, Debug)]
struct SymmetricArgs {
    #[arg(long)]
    t: u32,
    /// Do not evaluate the walk.
    #[arg(long)]
    skip_eval: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PainterKind {
    /// A_alpha for the walk given with --walk.
    Walk,
    /// Highest color that does not complete its target path.
    Greedy,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    l1: usize,
    #[arg(long)]
    l2: usize,
    #[arg(long, value_enum, default_value_t = PainterKind::Walk)]
    painter: PainterKind,
    /// Strategy walk in W(l1, l2) for the walk Painter.
    #[arg(long)]
    walk: Option<String>,
    /// Tree size restriction.
    #[arg(long)]
    cap: Option<usize>,
    /// Include every vertex addition, copies included.
    #[arg(long)]
    transcript: bool,
}

#[derive(Args, Debug)]
struct PeriodArgs {
    /// Comma-separated prefix x_0, x_1, ...
    #[arg(long)]
    prefix: String,
    #[arg(long)]
    beta: i128,
}

/// Process exit status and captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Status for a validation error (bad arguments or input).
pub const EXIT_INVALID: u8 = 1;
/// Status for an internal invariant breach or a failed verification.
pub const EXIT_INTERNAL: u8 = 2;

struct Report {
    json: Value,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
    text: String,
    failed: bool,
}

/// Parses `args` (program name first), runs the command and renders its
/// report.
pub fn run_cli<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => match render(&report, cli.format) {
            Ok(stdout) => CliOutput {
                code: if report.failed { EXIT_INTERNAL } else { 0 },
                stdout,
                stderr: String::new(),
            },
            Err(e) => CliOutput {
                code: EXIT_INTERNAL,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        },
        Err(e) => CliOutput {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn execute(cmd: &Command) -> pathram::Result<Report> {
    match cmd {
        Command::Kstar(a) => kstar(a),
        Command::EvalWalk(a) => eval_walk(a),
        Command::VerifyTable(a) => verify(a),
        Command::DeltaFamily(a) => family(a),
        Command::Bootstrap(a) => bootstrap(a),
        Command::SymmetricLb(a) => symmetric(a),
        Command::Simulate(a) => simulate(a),
        Command::Period(a) => period(a),
    }
}

/// Replaces every JSON number by its decimal string.
fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

fn render(report: &Report, format: Format) -> Result<String, String> {
    match format {
        Format::Json => {
            let v = stringify_numbers(report.json.clone());
            let mut s = serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.csv_header).map_err(|e| e.to_string())?;
            for row in &report.csv_rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
        Format::Text => Ok(report.text.clone()),
    }
}

fn rate(r: &GrowthRate) -> String {
    r.to_string()
}

fn kstar(a: &KstarArgs) -> pathram::Result<Report> {
    if a.workers == 0 {
        return Err(invalid("--workers must be at least 1"));
    }
    let report: SearchReport = match a.method {
        Method::Bb => {
            let config = SearchConfig {
                workers: a.workers,
                witness_cap: a.witness_cap.unwrap_or(DEFAULT_WITNESS_CAP),
                dominance: a.dominance,
                ..SearchConfig::default()
            };
            kstar_branch_and_bound_with((a.l1, a.l2), &config)?
        }
        Method::Exhaustive => {
            if a.workers != 1 || a.dominance || a.witness_cap.is_some() {
                return Err(invalid(
                    "--workers, --dominance and --witness-cap apply to --method bb only",
                ));
            }
            kstar_exhaustive_with_cap((a.l1, a.l2), a.node_cap)?
        }
    };
    let method = match a.method {
        Method::Bb => "bb",
        Method::Exhaustive => "exhaustive",
    };
    let mstar = mstar_of_kstar(report.kstar)?;
    let witnesses: Vec<String> = report.witnesses.iter().map(|w| w.to_string()).collect();
    let mut json = report.to_json();
    let obj = json.as_object_mut().expect("report is an object");
    obj.insert("method".into(), json!(method));
    obj.insert("mstar".into(), json!(rate(&mstar)));
    if !a.timing {
        obj.remove("wall_time_s");
    }
    let mut text = format!(
        "k*(P_{}, P_{}) = {}\nm* = {} ≈ {}\nwitnesses ({}{}):\n",
        a.l1,
        a.l2,
        report.kstar,
        mstar,
        sig9(mstar.to_f64()),
        witnesses.len(),
        if report.witnesses_capped { ", capped" } else { "" }
    );
    for w in &witnesses {
        let _ = writeln!(text, "  {w}");
    }
    let n = report.nodes;
    let _ = writeln!(
        text,
        "nodes: expanded {}, bound-pruned {}, dominance-pruned {}, leaves {}",
        n.expanded, n.pruned_bound, n.pruned_dominance, n.leaves
    );
    if a.timing {
        let _ = writeln!(text, "time: {:.3} s", report.wall_time.as_secs_f64());
    }
    Ok(Report {
        json,
        csv_header: vec!["l1", "l2", "method", "kstar", "mstar", "witness_count", "witnesses_capped", "witnesses"],
        csv_rows: vec![vec![
            a.l1.to_string(),
            a.l2.to_string(),
            method.into(),
            report.kstar.to_string(),
            rate(&mstar),
            witnesses.len().to_string(),
            report.witnesses_capped.to_string(),
            witnesses.join(";"),
        ]],
        text,
        failed: false,
    })
}

fn parse_walk(text: &str, colors: Option<usize>) -> pathram::Result<StrategyWalk> {
    match colors {
        Some(c) => StrategyWalk::parse_with_colors(text, c),
        None => text.parse(),
    }
}

fn eval_walk(a: &EvalArgs) -> pathram::Result<Report> {
    let walk = parse_walk(&a.walk, a.colors)?;
    let trace = evaluate(&walk)?;
    let two = walk.colors() == 2;
    let beta = if two { Some(beta_of_walk(&walk)?) } else { None };
    let delta = if two { Some(delta_of_walk(&walk)?) } else { None };
    let targets: Vec<String> = walk.targets().iter().map(|t| t.to_string()).collect();

    let mut obj = Map::new();
    obj.insert("walk".into(), json!(walk.to_string()));
    obj.insert("targets".into(), json!(targets));
    obj.insert("steps".into(), json!(walk.len()));
    obj.insert("k".into(), json!(trace.k().to_string()));
    if let (Some(b), Some(d)) = (beta, &delta) {
        obj.insert("beta".into(), json!(b.to_string()));
        obj.insert("delta".into(), json!(rate(d)));
        obj.insert("delta_decimal".into(), json!(sig9(d.to_f64())));
    }
    if a.trace {
        let full = trace.to_json();
        for (key, v) in full.as_object().expect("trace is an object") {
            if key == "k" {
                obj.insert("k_values".into(), v.clone());
            } else if key.starts_with('x') {
                obj.insert(key.clone(), v.clone());
            }
        }
    }

    let mut text = format!(
        "walk: {walk}\ntargets: ({})\nsteps: {}\nk = {}\n",
        targets.join(", "),
        walk.len(),
        trace.k()
    );
    if let (Some(b), Some(d)) = (beta, &delta) {
        let _ = writeln!(text, "beta = {b}\ndelta = {d} ≈ {}", sig9(d.to_f64()));
    }
    if a.trace {
        let join = |v: &[i128]| v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(text, "k_i: {}", join(trace.k_values()));
        for s in 1..=walk.colors() {
            let _ = writeln!(text, "x_{s}: {}", join(trace.x(s)));
        }
    }
    Ok(Report {
        json: Value::Object(obj),
        csv_header: vec!["walk", "targets", "steps", "k", "beta", "delta"],
        csv_rows: vec![vec![
            walk.to_string(),
            targets.join(" "),
            walk.len().to_string(),
            trace.k().to_string(),
            beta.map(|b| b.to_string()).unwrap_or_default(),
            delta.as_ref().map(rate).unwrap_or_default(),
        ]],
        text,
        failed: false,
    })
}

fn verify(a: &TableArgs) -> pathram::Result<Report> {
    if a.from < 2 || a.to > pathram::solver::TABLE_MAX_L || a.from > a.to {
        return Err(invalid(format!(
            "need 2 <= --from <= --to <= {}",
            pathram::solver::TABLE_MAX_L
        )));
    }
    if a.workers == 0 {
        return Err(invalid("--workers must be at least 1"));
    }
    let config = SearchConfig {
        workers: a.workers,
        dominance: a.dominance,
        ..SearchConfig::default()
    };
    let table = verify_table_range(a.from, a.to, &config);
    let opt = |v: Option<String>| v.unwrap_or_default();
    let mut rows_json = Vec::new();
    let mut csv_rows = Vec::new();
    let mut text = String::from("l    k*      table   diff  status\n");
    for r in &table.rows {
        let status = if r.pass { "pass" } else { "fail" };
        let mut row = json!({
            "l": r.l,
            "kstar": r.kstar,
            "table_value": r.table_value,
            "diff": r.diff,
            "status": status,
        });
        if a.timing {
            row["seconds"] = json!(format!("{:.3}", r.seconds));
        }
        rows_json.push(row);
        csv_rows.push(vec![
            r.l.to_string(),
            opt(r.kstar.map(|k| k.to_string())),
            r.table_value.to_string(),
            opt(r.diff.map(|d| d.to_string())),
            status.into(),
        ]);
        let _ = write!(
            text,
            "{:<4} {:<7} {:<7} {:<5} {}",
            r.l,
            opt(r.kstar.map(|k| k.to_string())),
            r.table_value,
            opt(r.diff.map(|d| d.to_string())),
            status
        );
        if a.timing {
            let _ = write!(text, "  {:.3} s", r.seconds);
        }
        text.push('\n');
    }
    Ok(Report {
        json: json!({ "rows": rows_json, "all_pass": table.all_pass() }),
        csv_header: vec!["l", "kstar", "table_value", "diff", "status"],
        csv_rows,
        text,
        failed: !table.all_pass(),
    })
}

fn family(a: &FamilyArgs) -> pathram::Result<Report> {
    let limit = delta_family_limit(a.c)?;
    let lengths = delta_family_lengths(a.c, a.t)?;
    let walk = delta_family(a.c, a.t)?;
    let delta = delta_of_walk(&walk)?;
    let gap = limit.to_f64() - delta.to_f64();
    let lengths_s: Vec<String> = lengths.iter().map(|l| l.to_string()).collect();
    let json = json!({
        "c": a.c,
        "t": a.t,
        "lengths": lengths_s,
        "walk": walk.to_string(),
        "steps": walk.len(),
        "delta": rate(&delta),
        "delta_decimal": sig9(delta.to_f64()),
        "limit": limit.algebraic(),
        "limit_decimal": sig9(limit.to_f64()),
        "gap": sig9(gap),
    });
    let text = format!(
        "c = {}, t = {}\nlengths: {}\nwalk: {walk}\ndelta = {delta} ≈ {}\nlimit = {limit}\ngap ≈ {}\n",
        a.c,
        a.t,
        lengths_s.join(", "),
        sig9(delta.to_f64()),
        sig9(gap)
    );
    Ok(Report {
        json,
        csv_header: vec!["c", "t", "lengths", "delta", "delta_decimal", "limit", "gap"],
        csv_rows: vec![vec![
            a.c.to_string(),
            a.t.to_string(),
            lengths_s.join(" "),
            rate(&delta),
            sig9(delta.to_f64()),
            limit.algebraic(),
            sig9(gap),
        ]],
        text,
        failed: false,
    })
}

fn bootstrap(a: &BootstrapArgs) -> pathram::Result<Report> {
    let q: GrowthRate = a.q.parse()?;
    let params = BootstrapParams::new(q, a.s, a.t)?;
    let walk = bootstrap_walk(&params)?;
    let bound = bootstrap_rate(q, a.s)?;
    let target = GrowthRate::new(17, 4)?
        .checked_pow(a.t)
        .ok_or(Error::Overflow { step: 0 })?;
    let mut generations = Vec::new();
    for g in 0..=a.t {
        let (l1, l2, c) = params.generation(g)?;
        generations.push(json!({ "g": g, "l1": l1.to_string(), "l2": l2.to_string(), "c": c.to_string() }));
    }
    let (l1, l2, c) = params.generation(a.t)?;
    let delta = if a.skip_delta { None } else { Some(delta_of_walk(&walk)?) };
    let holds = delta.as_ref().map(|d| *d >= target);

    let mut json = json!({
        "q": rate(&q),
        "s": a.s,
        "t": a.t,
        "generations": generations,
        "walk": walk.to_string(),
        "steps": walk.len(),
        "rate_bound": rate(&bound),
        "rate_bound_decimal": sig9(bound.to_f64()),
        "target": rate(&target),
        "target_decimal": sig9(target.to_f64()),
    });
    if let (Some(d), Some(h)) = (&delta, holds) {
        json["delta"] = json!(rate(d));
        json["delta_decimal"] = json!(sig9(d.to_f64()));
        json["delta_at_least_target"] = json!(h);
    }
    let mut text = format!("q = {q}, s = {}, t = {}\n", a.s, a.t);
    for g in 0..=a.t {
        let (l1, l2, c) = params.generation(g)?;
        let _ = writeln!(text, "generation {g}: l1 = {l1}, l2 = {l2}, c = {c}");
    }
    let _ = writeln!(
        text,
        "steps: {}\nf(q, s) = {bound} ≈ {}\n(17/4)^t = {target} ≈ {}",
        walk.len(),
        sig9(bound.to_f64()),
        sig9(target.to_f64())
    );
    if let (Some(d), Some(h)) = (&delta, holds) {
        let _ = writeln!(text, "delta = {d} ≈ {}\ndelta >= (17/4)^t: {h}", sig9(d.to_f64()));
    }
    Ok(Report {
        json,
        csv_header: vec![
            "q", "s", "t", "l1", "l2", "c", "steps", "rate_bound", "target", "delta", "delta_at_least_target",
        ],
        csv_rows: vec![vec![
            rate(&q),
            a.s.to_string(),
            a.t.to_string(),
            l1.to_string(),
            l2.to_string(),
            c.to_string(),
            walk.len().to_string(),
            rate(&bound),
            rate(&target),
            delta.as_ref().map(rate).unwrap_or_default(),
            holds.map(|h| h.to_string()).unwrap_or_default(),
        ]],
        text,
        failed: false,
    })
}

fn symmetric(a: &SymmetricArgs) -> pathram::Result<Report> {
    let side = symmetric_lb_side(a.t)?;
    let walk = symmetric_lb_walk(a.t)?;
    let exponent = GrowthRate::new(201, 100)?;
    let bound = 0.5 * (side as f64).powf(2.01);
    let k = if a.skip_eval { None } else { Some(evaluate(&walk)?.k()) };
    let holds = match k {
        Some(k) => Some(at_least_half_power(k as u128, side, &exponent)?),
        None => None,
    };
    let mut json = json!({
        "t": a.t,
        "side": side.to_string(),
        "walk": walk.to_string(),
        "steps": walk.len(),
        "bound": "0.5 * side^(201/100)",
        "bound_decimal": sig9(bound),
    });
    if let (Some(k), Some(h)) = (k, holds) {
        json["k"] = json!(k.to_string());
        json["holds"] = json!(h);
    }
    let mut text = format!(
        "t = {}, side L = {side}\nsteps: {}\n0.5 * L^2.01 ≈ {}\n",
        a.t,
        walk.len(),
        sig9(bound)
    );
    if let (Some(k), Some(h)) = (k, holds) {
        let _ = writeln!(text, "k = {k}\nk >= 0.5 * L^2.01: {h}");
    }
    Ok(Report {
        json,
        csv_header: vec!["t", "side", "steps", "k", "bound_decimal", "holds"],
        csv_rows: vec![vec![
            a.t.to_string(),
            side.to_string(),
            walk.len().to_string(),
            k.map(|k| k.to_string()).unwrap_or_default(),
            sig9(bound),
            holds.map(|h| h.to_string()).unwrap_or_default(),
        ]],
        text,
        failed: false,
    })
}

fn simulate(a: &SimulateArgs) -> pathram::Result<Report> {
    let targets = [a.l1, a.l2];
    let (painter, reference) = match (a.painter, &a.walk) {
        (PainterKind::Walk, Some(text)) => {
            let w = StrategyWalk::parse_with_colors(text, 2)?;
            if !w.is_in(&targets) {
                return Err(invalid(format!("walk {w} is not in W({}, {})", a.l1, a.l2)));
            }
            (Painter::Walk(w.clone()), w)
        }
        (PainterKind::Walk, None) => return Err(invalid("--painter walk needs --walk")),
        (PainterKind::Greedy, None) => (Painter::Greedy, greedy_walk(&targets)?),
        (PainterKind::Greedy, Some(_)) => return Err(invalid("--walk applies to --painter walk only")),
    };
    let game = run_game(&targets, &painter, a.cap)?;
    game.board.check_structure()?;
    let trace = evaluate(&reference)?;
    let violation = check_strategy_invariant(2, &game.transcript, trace.x_sequences())?;

    let alpha: String = make_text(&game.alpha_prime)?;
    let outcome = match game.outcome {
        Outcome::BuilderWins { color, length } => json!({ "kind": "builder_wins", "color": color, "length": length }),
        Outcome::PainterSurvives { next_size } => json!({ "kind": "painter_survives", "next_size": next_size }),
    };
    let invariant = match &violation {
        None => json!("pass"),
        Some(v) => serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))?,
    };
    let mut json = json!({
        "targets": [a.l1, a.l2],
        "painter": match a.painter { PainterKind::Walk => "walk", PainterKind::Greedy => "greedy" },
        "reference_walk": reference.to_string(),
        "alpha_prime": alpha,
        "tree_sizes": game.tree_sizes,
        "outcome": outcome,
        "largest_component": game.largest_component,
        "steps": game.steps,
        "board_vertices": game.board.vertex_count(),
        "invariant": invariant,
    });
    if a.transcript {
        json["transcript"] = game.transcript_json();
    }
    let steps: Vec<_> = game.transcript.iter().filter(|e| !e.copy).collect();
    let csv_rows = steps
        .iter()
        .enumerate()
        .map(|(i, e)| {
            vec![
                i.to_string(),
                e.new_vertex.to_string(),
                e.color.to_string(),
                e.component_size.to_string(),
            ]
        })
        .collect();
    let mut text = format!(
        "targets: ({}, {})\npainter: {}\nalpha': {}\ntree sizes: {}\n",
        a.l1,
        a.l2,
        match &painter {
            Painter::Walk(w) => format!("A_alpha for {w}"),
            Painter::Greedy => "greedy".into(),
        },
        if alpha.is_empty() { "(empty)" } else { &alpha },
        game.tree_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
    );
    match game.outcome {
        Outcome::BuilderWins { color, length } => {
            let _ = writeln!(text, "Builder wins: monochromatic path on {length} vertices in color {color}");
        }
        Outcome::PainterSurvives { next_size } => {
            let _ = writeln!(text, "Painter survives: the next tree would have {next_size} vertices");
        }
    }
    let _ = writeln!(
        text,
        "largest component: {}\nsteps: {}\ninvariant: {}",
        game.largest_component,
        game.steps,
        match &violation {
            None => "pass".to_string(),
            Some(v) => format!(
                "violated after step {}: color {} P_{} in a component of {} < {}",
                v.step, v.color, v.t, v.component_size, v.required
            ),
        }
    );
    Ok(Report {
        json,
        csv_header: vec!["step", "vertex", "color", "component_size"],
        csv_rows,
        text,
        failed: violation.is_some(),
    })
}

fn make_text(entries: &[usize]) -> pathram::Result<String> {
    Ok(pathram::make_walk(2, entries.to_vec())?.to_string())
}

fn period(a: &PeriodArgs) -> pathram::Result<Report> {
    let prefix = a
        .prefix
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i128>()
                .map_err(|_| invalid(format!("prefix entry {s:?} is not an integer")))
        })
        .collect::<pathram::Result<Vec<i128>>>()?;
    let p = period_analysis(&prefix, a.beta)?;
    let mut json = p.to_json();
    json["prefix_len"] = json!(prefix.len());
    json["beta"] = json!(a.beta.to_string());
    json["delta_decimal"] = json!(sig9(p.delta.to_f64()));
    let text = format!(
        "prefix length {}, beta = {}\np = {}, period {}, increment {}\ndelta = {} ≈ {}\nperiodic from index {}\n",
        prefix.len(),
        a.beta,
        p.p,
        p.period_length,
        p.increment,
        p.delta,
        sig9(p.delta.to_f64()),
        p.onset
    );
    Ok(Report {
        json,
        csv_header: vec!["prefix_len", "beta", "p", "period", "increment", "delta", "onset"],
        csv_rows: vec![vec![
            prefix.len().to_string(),
            a.beta.to_string(),
            p.p.to_string(),
            p.period_length.to_string(),
            p.increment.to_string(),
            rate(&p.delta),
            p.onset.to_string(),
        ]],
        text,
        failed: false,
    })
}
