//! `shiftlab` command-line front end.
//!
//! Exit status: 0 when the command's expectations hold, 2 when they do not
//! (or an audit fails), 1 on usage and I/O errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use shiftlab_core::convergence::{convergence_profile, sigma_discontinuity_demo, SigmaDemo};
use shiftlab_core::counterexamples::{
    obstruction_report, xi_family, zero_step_report, ObstructionReport, ZeroStepReport,
};
use shiftlab_core::{
    in_fin, length_spectrum, membership, periodic_points, ConvergenceProfile, Membership, Point,
    RowOutcome, SearchBudget, ShiftSpec, SpectrumEntry, Symbol, Word,
};

pub const SCHEMA: &str = "shiftlab/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "shiftlab", version, about = "Shift spaces over infinite alphabets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Symbols searched are 0..truncation.
    #[arg(long, global = true, default_value_t = 16)]
    pub truncation: u32,
    /// Witness count that stands in for "infinitely many".
    #[arg(long, global = true, default_value_t = 8)]
    pub threshold: usize,
    /// Longest period tried for infinite continuations.
    #[arg(long = "period-bound", global = true, default_value_t = 8)]
    pub period_bound: usize,
    /// Unrolling depth for prefix cross-checks.
    #[arg(long, global = true, default_value_t = 64)]
    pub depth: usize,
    /// Also write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Re-parse the JSON report and re-verify every embedded witness.
    #[arg(long, global = true)]
    pub audit: bool,
}

impl GlobalOpts {
    pub fn budget(&self) -> SearchBudget {
        SearchBudget {
            truncation: self.truncation,
            threshold: self.threshold,
            period_bound: self.period_bound,
            depth: self.depth,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Non-conjugacy report for the (M+1)-step first-equals-last shift.
    #[command(name = "verify-prop1")]
    VerifyProp1 {
        #[arg(long = "m", value_name = "INT")]
        m: usize,
    },
    /// The 1-step shift that is not conjugate to any 0-step shift.
    ZeroStep {
        #[arg(long, value_name = "INT")]
        x0: u32,
    },
    /// Least verified finite element of every length up to --max-len.
    Spectrum {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        #[arg(long = "max-len", value_name = "INT")]
        max_len: usize,
    },
    /// Points fixed by the q-th power of the shift map.
    Periodic {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        #[arg(long, value_name = "INT")]
        period: usize,
    },
    /// Membership of a point given as JSON.
    Member {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        #[arg(long, value_name = "JSON")]
        point: String,
    },
    /// Convergence certificate for the ξ-family of the M-step construction.
    ConvergeDemo {
        #[arg(long = "m", value_name = "INT")]
        m: usize,
    },
    /// The shift map is not continuous at the empty sequence.
    SigmaDemo,
}

/// Text rendering, JSON payload, and whether expectations held.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let msg = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{msg}");
                    EXIT_OK
                }
                _ => {
                    let first = msg.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{first}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok((outcome, audit)) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if let Some(path) = &cli.global.json {
                let body = serde_json::to_string_pretty(&outcome.json).expect("values serialize");
                if let Err(e) = std::fs::write(path, body + "\n") {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            let audit_ok = match audit {
                None => true,
                Some(Ok(())) => {
                    let _ = writeln!(out, "audit: ok");
                    true
                }
                Some(Err(msg)) => {
                    let _ = writeln!(out, "audit: FAILED: {msg}");
                    false
                }
            };
            if outcome.ok && audit_ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

type AuditResult = Option<Result<(), String>>;

fn execute(cli: &Cli) -> Result<(Outcome, AuditResult), UsageError> {
    let budget = cli.global.budget();
    budget.validate()?;
    let outcome = match &cli.command {
        Command::VerifyProp1 { m } => {
            if *m < 1 {
                return Err(UsageError("--m must be at least 1".into()));
            }
            let report = obstruction_report(*m, &budget)?;
            Outcome {
                text: render_obstruction(&report),
                ok: report.passes(),
                json: envelope("verify-prop1", &report),
            }
        }
        Command::ZeroStep { x0 } => {
            let report = zero_step_report(Symbol(*x0), &budget)?;
            Outcome {
                text: render_zero_step(&report),
                ok: report.passes(),
                json: envelope("zero-step", &report),
            }
        }
        Command::Spectrum { spec, max_len } => {
            let spec = read_spec(spec)?;
            let entries = length_spectrum(&spec, *max_len, &budget)?;
            let payload = SpectrumPayload { spec, budget, spectrum: entries };
            Outcome {
                text: render_spectrum(&payload.spectrum),
                ok: true,
                json: envelope("spectrum", &payload),
            }
        }
        Command::Periodic { spec, period } => {
            if *period < 1 {
                return Err(UsageError("--period must be at least 1".into()));
            }
            let spec = read_spec(spec)?;
            let points = periodic_points(&spec, *period, &budget)?;
            let mut text = format!("{} points with period {period}\n", points.len());
            for p in &points {
                let _ = writeln!(text, "  {p}");
            }
            let payload = PeriodicPayload { spec, budget, period: *period, points };
            Outcome { text, ok: true, json: envelope("periodic", &payload) }
        }
        Command::Member { spec, point } => {
            let spec = read_spec(spec)?;
            let point: Point = serde_json::from_str(point)
                .map_err(|e| UsageError(format!("malformed --point: {e}")))?;
            let result = membership(&spec, &point, &budget)?;
            let text = render_membership(&point, &result);
            let ok = result.is_member();
            let payload = MemberPayload { spec, budget, point, membership: result };
            Outcome { text, ok, json: envelope("member", &payload) }
        }
        Command::ConvergeDemo { m } => {
            if *m < 1 {
                return Err(UsageError("--m must be at least 1".into()));
            }
            let base = Word::from_indices(vec![0; *m]);
            let family = xi_family(*m, &base, budget.truncation as usize)?;
            let profile =
                convergence_profile(&family, &Point::from_word(base), budget.threshold as u32);
            let text = render_profile("ξ^j → x_1…x_M", &profile);
            let payload = ConvergePayload { m: *m, family, profile };
            Outcome {
                text,
                ok: payload.profile.passes(),
                json: envelope("converge-demo", &payload),
            }
        }
        Command::SigmaDemo => {
            let demo = sigma_discontinuity_demo(16, 8);
            let mut text = render_profile("x_n = n·0^∞ → Ø", &demo.profile);
            text += &render_profile("σ(x_n) = 0^∞ → σ(Ø) = Ø", &demo.shifted_profile);
            text += if demo.demonstrates_discontinuity() {
                "σ is not continuous at Ø\n"
            } else {
                "discontinuity NOT demonstrated\n"
            };
            Outcome {
                text,
                ok: demo.demonstrates_discontinuity(),
                json: envelope("sigma-demo", &demo),
            }
        }
    };
    let audit = cli.global.audit.then(|| audit(&cli.command, &outcome.json, &budget));
    Ok((outcome, audit))
}

#[derive(Serialize, serde::Deserialize)]
struct SpectrumPayload {
    spec: ShiftSpec,
    budget: SearchBudget,
    spectrum: Vec<SpectrumEntry>,
}

#[derive(Serialize, serde::Deserialize)]
struct PeriodicPayload {
    spec: ShiftSpec,
    budget: SearchBudget,
    period: usize,
    points: Vec<Point>,
}

#[derive(Serialize, serde::Deserialize)]
struct MemberPayload {
    spec: ShiftSpec,
    budget: SearchBudget,
    point: Point,
    membership: Membership,
}

#[derive(Serialize, serde::Deserialize)]
struct ConvergePayload {
    #[serde(rename = "M")]
    m: usize,
    family: Vec<Point>,
    profile: ConvergenceProfile,
}

fn envelope<T: Serialize>(command: &str, payload: &T) -> Value {
    let mut v = serde_json::to_value(payload).expect("reports serialize");
    let obj = v.as_object_mut().expect("reports are JSON objects");
    obj.insert("schema".into(), Value::from(SCHEMA));
    obj.insert("command".into(), Value::from(command));
    v
}

fn read_spec(path: &Path) -> Result<ShiftSpec, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| UsageError(format!("malformed spec {}: {e}", path.display())))
}

// Round-trips the report through its JSON text.
fn reparse<T: DeserializeOwned>(json: &Value) -> Result<T, String> {
    let text = serde_json::to_string(json).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| format!("report does not re-parse: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn recheck_word(spec: &ShiftSpec, word: &Word, budget: &SearchBudget) -> Result<(), String> {
    let v = in_fin(spec, word, budget).map_err(|e| e.to_string())?;
    ensure(v.is_verified(), || format!("witness {word} no longer verifies"))?;
    ensure(v.recheck(spec, word), || format!("continuations of {word} fail in_inf"))
}

// An infinite point must agree with the prefix check at the audit depth.
fn cross_check_depth(spec: &ShiftSpec, p: &Point, budget: &SearchBudget) -> Result<(), String> {
    let exact = spec.in_inf(p).map_err(|e| e.to_string())?;
    let by_prefix = spec.allowed(&p.prefix(budget.depth));
    ensure(!exact || by_prefix, || format!("{p} is in X^inf but its depth-{} prefix is not allowed", budget.depth))
}

fn audit(command: &Command, json: &Value, budget: &SearchBudget) -> Result<(), String> {
    ensure(json.get("schema") == Some(&Value::from(SCHEMA)), || "schema tag missing".into())?;
    match command {
        Command::VerifyProp1 { .. } => {
            let r: ObstructionReport = reparse(json)?;
            if let Some(c1) = &r.condition1 {
                for &s in &c1.witnesses {
                    let p = Point::periodic(c1.base.concat(&[s])).map_err(|e| e.to_string())?;
                    ensure(r.spec.in_inf(&p) == Ok(true), || format!("({p}) not in X^inf"))?;
                    cross_check_depth(&r.spec, &p, budget)?;
                }
            }
            for e in &r.spectrum {
                if let Some(word) = &e.witness {
                    recheck_word(&r.spec, word, &r.budget)?;
                }
            }
            let again = obstruction_report(r.m, &r.budget).map_err(|e| e.to_string())?;
            ensure(again == r, || "recomputed report differs".into())
        }
        Command::ZeroStep { .. } => {
            let r: ZeroStepReport = reparse(json)?;
            for &x in &r.verified_length_one {
                recheck_word(&r.spec, &Word::new(vec![x]), &r.budget)?;
            }
            let again = zero_step_report(r.x0, &r.budget).map_err(|e| e.to_string())?;
            ensure(again == r, || "recomputed report differs".into())
        }
        Command::Spectrum { .. } => {
            let p: SpectrumPayload = reparse(json)?;
            for e in &p.spectrum {
                if let Some(word) = &e.witness {
                    ensure(word.len() == e.length, || format!("witness {word} has wrong length"))?;
                    recheck_word(&p.spec, word, &p.budget)?;
                }
            }
            Ok(())
        }
        Command::Periodic { .. } => {
            let p: PeriodicPayload = reparse(json)?;
            for pt in &p.points {
                ensure(p.spec.in_inf(pt) == Ok(true), || format!("{pt} not in X^inf"))?;
                ensure(pt.shift_by(p.period) == *pt, || format!("{pt} not {}-periodic", p.period))?;
                cross_check_depth(&p.spec, pt, &p.budget)?;
            }
            Ok(())
        }
        Command::Member { .. } => {
            let p: MemberPayload = reparse(json)?;
            let again = membership(&p.spec, &p.point, &p.budget).map_err(|e| e.to_string())?;
            ensure(again == p.membership, || "recomputed membership differs".into())?;
            match &p.membership {
                Membership::Exact { member } => {
                    let by_prefix = p.spec.allowed(&p.point.prefix(p.budget.depth));
                    ensure(!member || by_prefix, || "depth cross-check failed".into())
                }
                Membership::Budgeted { verdict } => {
                    let word = p.point.as_word().expect("finite point");
                    ensure(verdict.recheck(&p.spec, &word), || "witness continuation fails".into())
                }
            }
        }
        Command::ConvergeDemo { .. } => {
            let p: ConvergePayload = reparse(json)?;
            let again = convergence_profile(&p.family, &p.profile.limit, p.profile.rows.len() as u32);
            ensure(again == p.profile, || "recomputed profile differs".into())
        }
        Command::SigmaDemo => {
            let d: SigmaDemo = reparse(json)?;
            let m_max = d.profile.rows.len() as u32;
            let again = convergence_profile(&d.family, &Point::Empty, m_max);
            ensure(again == d.profile, || "recomputed profile differs".into())?;
            let shifted: Vec<Point> = d.family.iter().map(Point::shift).collect();
            ensure(shifted == d.shifted, || "shifted family differs".into())
        }
    }
}

fn render_profile(title: &str, p: &ConvergenceProfile) -> String {
    let mut s = format!("convergence {title} (family size {}, limit {})\n", p.family_size, p.limit);
    for row in &p.rows {
        let _ = match row.outcome {
            RowOutcome::Settled(n0) => writeln!(s, "  m={:<3} n0={n0}", row.m),
            RowOutcome::Fail(j) => writeln!(s, "  m={:<3} FAIL (index {j} escapes)", row.m),
        };
    }
    s
}

fn render_spectrum(entries: &[SpectrumEntry]) -> String {
    let mut s = String::from("length spectrum\n");
    for e in entries {
        let _ = match &e.witness {
            Some(word) => writeln!(s, "  {:<3} verified  {word}", e.length),
            None => writeln!(s, "  {:<3} absent up to budget", e.length),
        };
    }
    s
}

fn render_obstruction(r: &ObstructionReport) -> String {
    let mut s = format!(
        "M = {}: first-equals-last predicate on windows of length {}\n",
        r.m,
        r.m + 2
    );
    match &r.condition1 {
        Some(c) => {
            let _ = writeln!(
                s,
                "condition (1): base {} with {} witnesses ({} cyclic windows each)",
                c.base,
                c.witnesses.len(),
                c.checked_equalities
            );
        }
        None => s.push_str("condition (1): NOT FOUND within budget\n"),
    }
    s.push_str("condition (2):\n");
    for c in &r.condition2 {
        let counts: Vec<String> = c.counts_at.iter().map(|(n, k)| format!("{n}:{k}")).collect();
        let _ = writeln!(s, "  {:<12} counts {{{}}} {:?} ({:?})", c.word.to_string(), counts.join(", "), c.growth, c.basis);
    }
    s += &render_spectrum(&r.spectrum);
    s += &render_profile("ξ^j → x_1…x_M", &r.xi_convergence);
    let _ = writeln!(s, "{}", r.conclusion);
    s
}

fn render_zero_step(r: &ZeroStepReport) -> String {
    let mut s = format!("x0 = {}: 1-step shift with window predicate on pairs\n", r.x0);
    let _ = writeln!(
        s,
        "condition (i): {} for all {} symbols",
        if r.condition_i_ok { "verified" } else { "FAILED" },
        r.condition_i.len()
    );
    let members: Vec<String> = r.condition_ii.iter().map(|(x, _)| x.to_string()).collect();
    let _ = writeln!(s, "condition (ii): symbols with many followers = {{{}}}", members.join(","));
    s.push_str("length-1 elements:\n");
    for row in &r.length_one {
        let _ = writeln!(
            s,
            "  {:<3} witnesses {:<3} {}",
            row.symbol.to_string(),
            row.count,
            if row.verified { "verified" } else { "not verified" }
        );
    }
    let _ = writeln!(
        s,
        "verified length-1 elements: {}; full shift: {}",
        r.verified_length_one.len(),
        r.full_shift_verified_length_one
    );
    let _ = writeln!(s, "{}", r.conclusion);
    s
}

fn render_membership(p: &Point, m: &Membership) -> String {
    match m {
        Membership::Exact { member } => {
            format!("{p}: {} (exact)\n", if *member { "IN" } else { "OUT" })
        }
        Membership::Budgeted { verdict } => {
            let symbols: Vec<String> = verdict.symbols().iter().map(|s| s.to_string()).collect();
            let counts: Vec<String> = verdict.counts_at.iter().map(|(n, k)| format!("{n}:{k}")).collect();
            format!(
                "{p}: {:?}; extension symbols {{{}}}; counts {{{}}}\n",
                verdict.status,
                symbols.join(","),
                counts.join(", ")
            )
        }
    }
}
