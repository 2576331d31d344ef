//! Command-line surface: pattern listings, representation and characteristic
//! matrix exports, invariant tables, and the verification battery.

use crate::characteristic::{build_char_matrix, char_identity_residual, char_roots_exact, char_roots_f64, CharKind};
use crate::invariants::{invariant_table, InvariantTable};
use crate::patterns::{enumerate_patterns, HighestWeight};
use crate::representations::{build_irrep, Operators, DEFAULT_DIM_CAP};
use crate::scalars::QRat;
use crate::verification::{run_battery, run_suite, SuiteParams, SuiteReport};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or argument combinations: exit code 2.
    Usage(String),
    /// A computation could not be carried out: exit code 1.
    Computation(String),
    /// Suites ran but at least one case failed: exit code 1.
    SuiteFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("usage error: {m}"),
            CliError::Computation(m) => format!("error: {m}"),
            CliError::SuiteFailed => "verification failed".to_string(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qgln",
    about = "Uq(gl(n)) Gelfand-Tsetlin representations, characteristic matrices and invariants",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Pretty,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Backend {
    Exact,
    Numeric,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Rank n of gl(n); inferred from --hw when omitted
    #[arg(long)]
    n: Option<usize>,
    /// Highest weight, comma separated non-increasing integers
    #[arg(long, allow_hyphen_values = true)]
    hw: String,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the Gelfand-Tsetlin patterns of V(hw) with their weights
    Patterns {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Export the generator matrices of V(hw) at numeric q
    Rep {
        #[command(flatten)]
        common: CommonArgs,
        /// Numeric deformation parameter ("3/2" or a decimal), q > 0, q != 1
        #[arg(long, default_value = "3/2")]
        q: String,
    },
    /// Build a characteristic matrix, its roots and identity residual
    Charmat {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value = "3/2")]
        q: String,
        /// Which characteristic matrix: atilde, a, or abar
        #[arg(long)]
        which: String,
        /// Pass/fail threshold for the reported identity residual
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Closed-form invariant table for an admissible pair (hw, hw0)
    Invariants {
        #[command(flatten)]
        common: CommonArgs,
        /// Subalgebra highest weight, length n-1
        #[arg(long, allow_hyphen_values = true)]
        hw0: String,
        /// exact: symbolic in q (or exact rationals with a rational --q);
        /// numeric: decimals at --q
        #[arg(long, value_enum, default_value = "exact")]
        backend: Backend,
        #[arg(long)]
        q: Option<String>,
    },
    /// Run a named verification suite or the whole battery
    Verify {
        /// Suite name or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        /// Highest weight for module-bound suites (default grid when omitted with "all")
        #[arg(long, allow_hyphen_values = true)]
        hw: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "3/2")]
        q: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict kind-parameterised suites to one matrix kind
        #[arg(long)]
        which: Option<String>,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn parse_hw(s: &str, n: Option<usize>) -> Result<HighestWeight, CliError> {
    let entries: Result<Vec<i64>, _> = s.split(',').map(|t| i64::from_str(t.trim())).collect();
    let entries = entries.map_err(|e| CliError::Usage(format!("bad --hw '{s}': {e}")))?;
    if let Some(n) = n {
        if entries.len() != n {
            return Err(CliError::Usage(format!(
                "--n {n} does not match --hw of length {}",
                entries.len()
            )));
        }
    }
    HighestWeight::new(entries).map_err(|e| CliError::Usage(e.to_string()))
}

/// Parse "3/2" or "1.5"; returns the numeric value and the exact rational
/// when the input was written as a ratio.
fn parse_q(s: &str) -> Result<(f64, Option<BigRational>), CliError> {
    if let Some((a, b)) = s.split_once('/') {
        let num =
            i64::from_str(a.trim()).map_err(|e| CliError::Usage(format!("bad q '{s}': {e}")))?;
        let den =
            i64::from_str(b.trim()).map_err(|e| CliError::Usage(format!("bad q '{s}': {e}")))?;
        if den == 0 {
            return Err(CliError::Usage(format!("bad q '{s}': zero denominator")));
        }
        let r = BigRational::new(num.into(), den.into());
        Ok((num as f64 / den as f64, Some(r)))
    } else {
        let v = f64::from_str(s.trim()).map_err(|e| CliError::Usage(format!("bad q '{s}': {e}")))?;
        Ok((v, None))
    }
}

fn check_numeric_q(q: f64) -> Result<(), CliError> {
    if q <= 0.0 || q == 1.0 {
        return Err(CliError::Usage(format!("numeric q must be > 0 and != 1, got {q}")));
    }
    Ok(())
}

pub fn dim_cap() -> u64 {
    std::env::var("QGLN_DIM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

fn emit(out: &Option<std::path::PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::Computation(format!("cannot write {}: {e}", path.display()))),
    }
}

fn render_json(v: &Value, format: Format) -> String {
    match format {
        Format::Pretty => serde_json::to_string_pretty(v).expect("json"),
        _ => serde_json::to_string(v).expect("json"),
    }
}

fn cmd_patterns(common: &CommonArgs) -> Result<String, CliError> {
    let hw = parse_hw(&common.hw, common.n)?;
    let pats = enumerate_patterns(&hw);
    match common.format {
        Format::Csv => {
            let mut s = String::from("index,pattern,weight\n");
            for (i, p) in pats.iter().enumerate() {
                let w: Vec<String> = p.weight().iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "{i},{p},({})", w.join(" "));
            }
            Ok(s.trim_end().to_string())
        }
        f => {
            let v = json!({
                "hw": hw.entries(),
                "n": hw.n(),
                "dim": pats.len(),
                "patterns": pats.iter().map(|p| json!({
                    "rows": p,
                    "weight": p.weight(),
                })).collect::<Vec<_>>(),
            });
            Ok(render_json(&v, f))
        }
    }
}

fn matrix_flat(m: &crate::matrix::Matrix<f64>) -> Vec<f64> {
    let mut v = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            v.push(*m.get(i, j));
        }
    }
    v
}

fn cmd_rep(common: &CommonArgs, q_str: &str) -> Result<String, CliError> {
    if common.format == Format::Csv {
        return Err(CliError::Usage("rep export is JSON only".into()));
    }
    let hw = parse_hw(&common.hw, common.n)?;
    let (q, _) = parse_q(q_str)?;
    check_numeric_q(q)?;
    let rep = build_irrep(&hw, q, dim_cap()).map_err(|e| CliError::Computation(e.to_string()))?;
    let n = rep.n;
    let v = json!({
        "hw": hw.entries(),
        "q": q,
        "dim": rep.dim,
        "basis": rep.basis,
        "e": (1..n).map(|m| matrix_flat(rep.e(m))).collect::<Vec<_>>(),
        "f": (1..n).map(|m| matrix_flat(rep.f(m))).collect::<Vec<_>>(),
        "k": (1..=n).map(|i| matrix_flat(&rep.kdiag(i))).collect::<Vec<_>>(),
    });
    Ok(render_json(&v, common.format))
}

fn cmd_charmat(common: &CommonArgs, q_str: &str, which: &str, tol: Option<f64>) -> Result<String, CliError> {
    if common.format == Format::Csv {
        return Err(CliError::Usage("charmat export is JSON only".into()));
    }
    let hw = parse_hw(&common.hw, common.n)?;
    let (q, _) = parse_q(q_str)?;
    check_numeric_q(q)?;
    let kind = CharKind::parse(which)
        .ok_or_else(|| CliError::Usage(format!("unknown matrix kind '{which}' (atilde|a|abar)")))?;
    let rep = build_irrep(&hw, q, dim_cap()).map_err(|e| CliError::Computation(e.to_string()))?;
    let ops = Operators::new(&rep);
    let n = rep.n;
    let m = build_char_matrix(&ops, kind, n);
    let roots = char_roots_f64(kind, hw.entries(), q);
    let roots_exact: Vec<String> =
        char_roots_exact(kind, hw.entries()).iter().map(|r| r.to_string()).collect();
    let residual = char_identity_residual(&m, &roots);
    let threshold = tol.unwrap_or(1e-8 * (n * rep.dim) as f64 * (1.0 + m.max_abs()));
    let v = json!({
        "hw": hw.entries(),
        "q": q,
        "which": kind.name(),
        "level": n,
        "dim": rep.dim,
        "roots": roots,
        "roots_exact": roots_exact,
        "blocks": (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| matrix_flat(m.block(i, j)))
            .collect::<Vec<_>>(),
        "identity_residual": residual,
        "identity_tol": threshold,
        "identity_pass": residual < threshold,
    });
    if residual >= threshold {
        // still emit the payload, but signal failure through the exit code
        emit(&common.out, &render_json(&v, common.format))?;
        return Err(CliError::SuiteFailed);
    }
    Ok(render_json(&v, common.format))
}

fn qrat_value(x: &QRat, backend: Backend, q: &Option<(f64, Option<BigRational>)>) -> Result<Value, CliError> {
    match backend {
        Backend::Exact => match q {
            None => Ok(Value::String(x.to_string())),
            Some((_, Some(qr))) => {
                let v = x
                    .eval_rational(qr)
                    .map_err(|e| CliError::Computation(format!("exact evaluation: {e}")))?;
                Ok(Value::String(v.to_string()))
            }
            Some((_, None)) => unreachable!("checked in cmd_invariants"),
        },
        Backend::Numeric => {
            let (qv, _) = q.as_ref().expect("numeric backend requires q");
            let v = x.eval_at(*qv).map_err(|e| CliError::Computation(e.to_string()))?;
            Ok(json!(v))
        }
    }
}

fn table_json(
    t: &InvariantTable,
    backend: Backend,
    q: &Option<(f64, Option<BigRational>)>,
) -> Result<Value, CliError> {
    let list = |xs: &[QRat]| -> Result<Vec<Value>, CliError> {
        xs.iter().map(|x| qrat_value(x, backend, q)).collect()
    };
    let nested = |xss: &[Vec<QRat>]| -> Result<Vec<Vec<Value>>, CliError> {
        xss.iter().map(|xs| list(xs)).collect()
    };
    Ok(json!({
        "hw": t.hw,
        "hw0": t.hw0,
        "theta": t.theta,
        "alpha": t.alpha,
        "alphabar": t.alphabar,
        "alpha0": t.alpha0,
        "alphabar0": t.alphabar0,
        "xi": t.xi,
        "xitilde": t.xitilde,
        "eta": t.eta,
        "etatilde": t.etatilde,
        "roots_a": list(&t.roots_a)?,
        "roots_atilde": list(&t.roots_atilde)?,
        "roots_a0": list(&t.roots_a0)?,
        "roots_atilde0": list(&t.roots_atilde0)?,
        "omega": list(&t.omega)?,
        "omegatilde": list(&t.omegatilde)?,
        "gamma": list(&t.gamma)?,
        "gammatilde": list(&t.gammatilde)?,
        "mu": list(&t.mu)?,
        "mutilde": list(&t.mutilde)?,
        "omega_kr": nested(&t.omega_kr)?,
        "omegatilde_kr": nested(&t.omegatilde_kr)?,
        "qdim": qrat_value(&t.qdim, backend, q)?,
        "chi_v": qrat_value(&t.chi_v, backend, q)?,
        "chi_c1": qrat_value(&t.chi_c1, backend, q)?,
    }))
}

fn cmd_invariants(
    common: &CommonArgs,
    hw0_str: &str,
    backend: Backend,
    q_str: &Option<String>,
) -> Result<String, CliError> {
    let hw = parse_hw(&common.hw, common.n)?;
    let hw0 = parse_hw(hw0_str, common.n.map(|n| n - 1))?;
    if hw0.n() + 1 != hw.n() {
        return Err(CliError::Usage(format!(
            "--hw0 must have length n-1 = {}, got {}",
            hw.n() - 1,
            hw0.n()
        )));
    }
    let q = match q_str {
        None => {
            if backend == Backend::Numeric {
                return Err(CliError::Usage("numeric backend requires --q".into()));
            }
            None
        }
        Some(s) => {
            let (v, r) = parse_q(s)?;
            if backend == Backend::Exact && r.is_none() {
                return Err(CliError::Usage(
                    "exact backend accepts only an exact rational --q (like 3/2); \
                     use --backend numeric for decimals"
                        .into(),
                ));
            }
            if backend == Backend::Numeric {
                check_numeric_q(v)?;
            }
            Some((v, r))
        }
    };
    let t = invariant_table(&hw, &hw0).map_err(|e| CliError::Computation(e.to_string()))?;
    match common.format {
        Format::Csv => {
            let (qv, _) = q
                .as_ref()
                .ok_or_else(|| CliError::Usage("CSV output requires a numeric --q".into()))?;
            let mut s = String::from("name,index,value\n");
            let mut row = |name: &str, idx: String, x: &QRat| -> Result<(), CliError> {
                let v = x.eval_at(*qv).map_err(|e| CliError::Computation(e.to_string()))?;
                let _ = writeln!(s, "{name},{idx},{v}");
                Ok(())
            };
            for (i, x) in t.omega.iter().enumerate() {
                row("omega", (i + 1).to_string(), x)?;
            }
            for (i, x) in t.omegatilde.iter().enumerate() {
                row("omegatilde", (i + 1).to_string(), x)?;
            }
            for (i, x) in t.gamma.iter().enumerate() {
                row("gamma", (i + 1).to_string(), x)?;
            }
            for (i, x) in t.gammatilde.iter().enumerate() {
                row("gammatilde", (i + 1).to_string(), x)?;
            }
            for (i, x) in t.mu.iter().enumerate() {
                row("mu", (i + 1).to_string(), x)?;
            }
            for (i, x) in t.mutilde.iter().enumerate() {
                row("mutilde", (i + 1).to_string(), x)?;
            }
            for (k, xs) in t.omega_kr.iter().enumerate() {
                for (r, x) in xs.iter().enumerate() {
                    row("omega_kr", format!("{} {}", k + 1, r + 1), x)?;
                }
            }
            for (k, xs) in t.omegatilde_kr.iter().enumerate() {
                for (r, x) in xs.iter().enumerate() {
                    row("omegatilde_kr", format!("{} {}", k + 1, r + 1), x)?;
                }
            }
            row("qdim", String::new(), &t.qdim)?;
            row("chi_v", String::new(), &t.chi_v)?;
            row("chi_c1", String::new(), &t.chi_c1)?;
            Ok(s.trim_end().to_string())
        }
        f => Ok(render_json(&table_json(&t, backend, &q)?, f)),
    }
}

fn report_pretty(r: &SuiteReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "suite {} ({:.3}s): {}", r.suite, r.seconds, if r.pass { "PASS" } else { "FAIL" });
    for c in &r.cases {
        let status = if c.pass { "pass" } else { "FAIL" };
        match c.residual {
            Some(res) => {
                let _ = writeln!(s, "  [{status}] {} (residual {res:.3e}, tol {:.3e})", c.desc, c.tol);
            }
            None => {
                let _ = writeln!(s, "  [{status}] {} (exact)", c.desc);
            }
        }
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    hw_str: &Option<String>,
    n: Option<usize>,
    q_str: &str,
    seed: u64,
    which: &Option<String>,
    out: &Option<std::path::PathBuf>,
    format: Format,
) -> Result<String, CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage("verify output is JSON or pretty".into()));
    }
    let (q, _) = parse_q(q_str)?;
    check_numeric_q(q)?;
    let which_kind = match which {
        None => None,
        Some(w) => Some(
            CharKind::parse(w)
                .ok_or_else(|| CliError::Usage(format!("unknown matrix kind '{w}'")))?,
        ),
    };
    let cap = dim_cap();
    let reports: Vec<SuiteReport> = if suite == "all" && hw_str.is_none() {
        run_battery(q, seed, cap).map_err(|e| CliError::Computation(e.to_string()))?
    } else if suite == "appendixD" {
        // weight-independent suite
        vec![crate::verification::suite_appendix_d(seed, 100)]
    } else {
        let hw = parse_hw(
            hw_str
                .as_ref()
                .ok_or_else(|| CliError::Usage("--hw is required for a single suite".into()))?,
            n,
        )?;
        let params = SuiteParams { hw, q, seed, dim_cap: cap, which: which_kind };
        if suite == "all" {
            let mut rs = Vec::new();
            for name in crate::verification::SUITE_NAMES {
                rs.push(
                    run_suite(name, &params).map_err(|e| CliError::Computation(e.to_string()))?,
                );
            }
            rs
        } else {
            vec![run_suite(suite, &params).map_err(|e| match e {
                crate::verification::VerifyError::UnknownSuite(_) => CliError::Usage(e.to_string()),
                other => CliError::Computation(other.to_string()),
            })?]
        }
    };
    let pass = reports.iter().all(|r| r.pass);
    let text = match format {
        Format::Pretty => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&report_pretty(r));
            }
            let _ = writeln!(s, "overall: {}", if pass { "PASS" } else { "FAIL" });
            s.trim_end().to_string()
        }
        Format::Csv => unreachable!("rejected above"),
        Format::Json => {
            if reports.len() == 1 {
                serde_json::to_string(&reports[0]).expect("json")
            } else {
                serde_json::to_string(&json!({ "reports": reports, "pass": pass })).expect("json")
            }
        }
    };
    emit(out, &text)?;
    if pass {
        Ok(String::new())
    } else {
        Err(CliError::SuiteFailed)
    }
}

/// Parse argv and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version through errors as well
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Patterns { common } => cmd_patterns(common).and_then(|t| emit(&common.out, &t)),
        Command::Rep { common, q } => cmd_rep(common, q).and_then(|t| emit(&common.out, &t)),
        Command::Charmat { common, q, which, tol } => {
            cmd_charmat(common, q, which, *tol).and_then(|t| emit(&common.out, &t))
        }
        Command::Invariants { common, hw0, backend, q } => {
            cmd_invariants(common, hw0, *backend, q).and_then(|t| emit(&common.out, &t))
        }
        Command::Verify { suite, hw, n, q, seed, which, out, format } => {
            cmd_verify(suite, hw, *n, q, *seed, which, out, *format).map(|_| ())
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.message());
            e.exit_code()
        }
    }
}
