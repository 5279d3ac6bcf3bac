//! `kred`: complete reductions, series, formulas and period scans from the
//! command line.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use kred_core::exact_arith::OddPrime;
use kred_core::formulas::{bernoulli_from_k, bernoulli_oracle, formula};
use kred_core::periodicity::{
    advance_state, scan_prime, scan_with, Detection, PeriodReport, ScanConfig,
};
use kred_core::reduction::{realification_check, RealificationOutcome, SubstitutionMode, Theory};
use kred_core::reference::{run_reference_checks, CheckStatus};
use kred_core::Error;
use serde_json::{json, Value};

use output::{coefficient_csv, csv_field, int, ints, joined, Envelope, Format};

#[derive(Parser)]
#[command(
    name = "kred",
    version,
    about = "Exact complete reductions in K(BZ_p) and KO(BZ_p)"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// K_{p,n} for n = 0..N-1
    Kseries(SeriesArgs),
    /// M_{p,n} for n = 0..N-1
    Mseries(SeriesArgs),
    /// Balanced coefficients of the complete reduction
    Reduce(ReduceArgs),
    /// K_n(p) or M_n(p) as a polynomial in p
    Formula(FormulaArgs),
    /// B_n from the leading coefficient of K_n(p)
    Bernoulli(BernoulliArgs),
    /// Look for an eventual period and try to certify it
    Period(PeriodArgs),
    /// Recompute the published small-prime values and tables
    VerifyPaper,
    /// Check w·f_p(w) at w = x + 1/x - 2 against its closed form
    Realification(PrimeArg),
}

fn parse_prime(s: &str) -> Result<OddPrime, String> {
    s.trim()
        .parse::<u64>()
        .ok()
        .and_then(|v| OddPrime::new(v).ok())
        .ok_or_else(|| "p must be an odd prime".into())
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err("expected a positive integer".into()),
    }
}

#[derive(Args)]
struct PrimeArg {
    #[arg(short, value_parser = parse_prime)]
    p: OddPrime,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(short, value_parser = parse_prime)]
    p: OddPrime,
    /// Number of terms
    #[arg(short, value_parser = parse_positive)]
    n: usize,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long, default_value = "complex")]
    theory: Theory,
    #[arg(short, value_parser = parse_prime)]
    p: OddPrime,
    #[arg(short, value_parser = parse_positive)]
    n: usize,
    #[arg(long, default_value = "self")]
    mode: SubstitutionMode,
    /// Checkpoint file; resumed when it exists
    #[arg(long)]
    state: Option<PathBuf>,
}

#[derive(Args)]
struct FormulaArgs {
    #[arg(long, default_value = "complex")]
    theory: Theory,
    #[arg(short)]
    n: usize,
}

#[derive(Args)]
struct BernoulliArgs {
    #[arg(short, value_parser = parse_positive)]
    n: usize,
    /// Compare with the standard recurrence
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct PeriodArgs {
    #[arg(long, default_value = "complex")]
    theory: Theory,
    /// One or more primes, comma separated
    #[arg(short, value_parser = parse_prime, value_delimiter = ',', num_args = 1.., required = true)]
    p: Vec<OddPrime>,
    /// Window length
    #[arg(long, value_parser = parse_positive, default_value = "1000")]
    max_terms: usize,
    #[arg(long, default_value = "self")]
    mode: SubstitutionMode,
    /// Checkpoint file (single prime only)
    #[arg(long, conflicts_with = "state_dir")]
    state: Option<PathBuf>,
    /// Directory for per-prime checkpoints and reports
    #[arg(long, env = "KRED_STATE_DIR")]
    state_dir: Option<PathBuf>,
    #[arg(long)]
    max_period: Option<usize>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::StateCorruption(_) => 3,
            Error::StateMismatch(_) | Error::NotAnOddPrime(_) | Error::EmptyOrder => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// What a command produced: its rendering per format, and the exit code.
struct Outcome {
    theory: Option<Theory>,
    p: Value,
    offset: Option<usize>,
    payload: Value,
    text: String,
    csv: String,
    code: u8,
}

impl Outcome {
    fn ok(
        theory: Option<Theory>,
        p: Value,
        offset: Option<usize>,
        payload: Value,
        text: String,
        csv: String,
    ) -> Self {
        Outcome {
            theory,
            p,
            offset,
            payload,
            text,
            csv,
            code: 0,
        }
    }
}

fn series(theory: Theory, a: &SeriesArgs) -> Result<Outcome, Failure> {
    let s = theory.base_series(a.p, a.n)?;
    let letter = if theory == Theory::Complex { "K" } else { "M" };
    let text = format!(
        "{letter}_{{{},n}} for n = 0..{}\n{}\n",
        a.p,
        a.n - 1,
        joined(s.coeffs())
    );
    let payload = json!({ "coefficients": ints(s.coeffs()), "generator": theory.generator() });
    Ok(Outcome::ok(
        Some(theory),
        int(a.p),
        Some(0),
        payload,
        text,
        coefficient_csv(s.coeffs(), 0),
    ))
}

fn reduce(a: &ReduceArgs) -> Result<Outcome, Failure> {
    let reducer = advance_state(a.theory, a.p, a.n, a.mode, a.state.as_deref(), 1000, None)?;
    let s = reducer.into_series();
    let e = s.base_exponent;
    let text = format!(
        "{} p={} mode={}: {}·{} = Σ a_n {}^({}+n), n = 0..{}\n{}\n",
        a.theory,
        a.p,
        a.mode,
        a.p,
        a.theory.generator(),
        a.theory.generator(),
        e,
        a.n - 1,
        joined(s.balanced())
    );
    let payload = json!({
        "coefficients": ints(s.balanced()),
        "generator": a.theory.generator(),
        "mode": a.mode.name(),
    });
    Ok(Outcome::ok(
        Some(a.theory),
        int(a.p),
        Some(e),
        payload,
        text,
        coefficient_csv(s.balanced(), e),
    ))
}

fn formula_cmd(a: &FormulaArgs) -> Result<Outcome, Failure> {
    let entry = formula(a.theory, a.n);
    let letter = if a.theory == Theory::Complex {
        "K"
    } else {
        "M"
    };
    let display = entry.formula.factored_display();
    let expanded = entry.formula.as_poly().display_in("p");
    let coeffs = entry.formula.as_poly().coeffs();
    let text = format!(
        "{letter}_{}(p) = {display}\nexpanded: {expanded}\nvalid for p >= {}\n",
        a.n, entry.min_valid_p
    );
    let mut csv = String::from("index,exponent,coefficient\n");
    for (k, c) in coeffs.iter().enumerate() {
        csv.push_str(&format!("{k},{k},{c}\n"));
    }
    let payload = json!({
        "n": int(a.n),
        "display": display,
        "expanded": expanded,
        "coefficients": coeffs.iter().map(|c| Value::String(c.to_string())).collect::<Vec<_>>(),
        "min_valid_p": int(entry.min_valid_p),
    });
    Ok(Outcome::ok(
        Some(a.theory),
        Value::Null,
        None,
        payload,
        text,
        csv,
    ))
}

fn bernoulli_cmd(a: &BernoulliArgs) -> Result<Outcome, Failure> {
    let b = bernoulli_from_k(a.n);
    let mut text = format!("B_{} = {}\n", a.n, b.value);
    let mut payload = json!({ "n": int(a.n), "value": b.value.to_string() });
    let mut csv = format!("n,value,oracle,match\n{},{},", a.n, b.value);
    let mut code = 0;
    if a.check {
        let oracle = bernoulli_oracle(a.n).value;
        let matches = oracle == b.value;
        text.push_str(&format!(
            "oracle {oracle} {}\n",
            if matches { "MATCH" } else { "MISMATCH" }
        ));
        payload["oracle"] = Value::String(oracle.to_string());
        payload["match"] = Value::Bool(matches);
        csv.push_str(&format!("{oracle},{matches}\n"));
        code = u8::from(!matches);
    } else {
        csv.push_str(",\n");
    }
    Ok(Outcome {
        code,
        ..Outcome::ok(Some(Theory::Complex), Value::Null, None, payload, text, csv)
    })
}

fn report_json(r: &PeriodReport) -> Value {
    let (outcome, pre, per, conf) = match r.outcome {
        Detection::Found {
            preperiod,
            period,
            confirmed_length,
        } => ("FOUND", int(preperiod), int(period), int(confirmed_length)),
        Detection::NotFound => ("NOT_FOUND", Value::Null, Value::Null, Value::Null),
    };
    json!({
        "p": int(r.p),
        "window": int(r.window),
        "outcome": outcome,
        "preperiod": pre,
        "period": per,
        "confirmed_length": conf,
        "certificate": r.certificate.name(),
        "preperiod_digits": ints(&r.preperiod_digits),
        "cycle_digits": ints(&r.cycle_digits),
    })
}

fn period(a: &PeriodArgs) -> Result<Outcome, Failure> {
    let config = ScanConfig {
        mode: a.mode,
        max_period: a.max_period,
        ..ScanConfig::default()
    };
    let reports = if let Some(dir) = &a.state_dir {
        scan_with(a.theory, &a.p, a.max_terms, dir, &config)?
    } else {
        if a.state.is_some() && a.p.len() != 1 {
            return Err(usage(
                "--state takes a single prime; use --state-dir for several",
            ));
        }
        a.p.iter()
            .map(|&p| scan_prime(a.theory, p, a.max_terms, a.state.as_deref(), &config))
            .collect::<Result<Vec<_>, _>>()?
    };

    let text: String = reports
        .iter()
        .map(|r| r.render())
        .collect::<Vec<_>>()
        .join("\n");
    let mut csv = String::from(
        "p,window,outcome,preperiod,period,confirmed_length,certificate,cycle_digits\n",
    );
    for r in &reports {
        let (outcome, s, t, c) = match r.outcome {
            Detection::Found {
                preperiod,
                period,
                confirmed_length,
            } => (
                "FOUND",
                preperiod.to_string(),
                period.to_string(),
                confirmed_length.to_string(),
            ),
            Detection::NotFound => ("NOT_FOUND", String::new(), String::new(), String::new()),
        };
        let cycle: Vec<String> = r.cycle_digits.iter().map(|d| d.to_string()).collect();
        csv.push_str(&format!(
            "{},{},{outcome},{s},{t},{c},{},{}\n",
            r.p,
            r.window,
            r.certificate,
            csv_field(&cycle.join(" "))
        ));
    }
    let payload = json!({ "mode": a.mode.name(), "reports": reports.iter().map(report_json).collect::<Vec<_>>() });
    let ps = Value::Array(a.p.iter().map(|&p| int(p)).collect());
    Ok(Outcome::ok(Some(a.theory), ps, None, payload, text, csv))
}

fn verify_paper() -> Result<Outcome, Failure> {
    let checks = run_reference_checks()?;
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    let mut csv = String::from("status,check,detail\n");
    for c in &checks {
        text.push_str(&format!(
            "{:<20} {:<width$}  {}\n",
            c.status.label(),
            c.name,
            c.detail
        ));
        csv.push_str(&format!(
            "{},{},{}\n",
            c.status,
            csv_field(&c.name),
            csv_field(&c.detail)
        ));
    }
    let count = |s: CheckStatus| checks.iter().filter(|c| c.status == s).count();
    let (pass, fail, typo) = (
        count(CheckStatus::Pass),
        count(CheckStatus::Fail),
        count(CheckStatus::SuspectedTypo),
    );
    text.push_str(&format!(
        "\n{pass} passed, {fail} failed, {typo} suspected typos\n"
    ));
    let payload = json!({
        "checks": checks.iter().map(|c| json!({ "name": c.name, "status": c.status.label(), "detail": c.detail })).collect::<Vec<_>>(),
        "all_passed": fail == 0,
    });
    Ok(Outcome {
        code: u8::from(fail > 0),
        ..Outcome::ok(None, Value::Null, None, payload, text, csv)
    })
}

fn realification(a: &PrimeArg) -> Result<Outcome, Failure> {
    let outcome = realification_check(a.p)?;
    let name = match outcome {
        RealificationOutcome::ClosedForm => "CLOSED_FORM",
        RealificationOutcome::DivisibleOnly => "DIVISIBLE_ONLY",
        RealificationOutcome::Failed => "FAILED",
    };
    let p = a.p.get();
    let text = format!(
        "p={p}: w·f_p(w) at w = x + 1/x - 2 {} x^-{}(x-1)(x^{p}-1)\n",
        if outcome.holds() {
            "equals"
        } else {
            "does not equal"
        },
        p.div_ceil(2)
    );
    let csv = format!("p,outcome\n{p},{name}\n");
    let code = u8::from(!outcome.holds());
    Ok(Outcome {
        code,
        ..Outcome::ok(
            Some(Theory::Real),
            int(p),
            None,
            json!({ "outcome": name }),
            text,
            csv,
        )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Kseries(a) => series(Theory::Complex, a),
        Command::Mseries(a) => series(Theory::Real, a),
        Command::Reduce(a) => reduce(a),
        Command::Formula(a) => formula_cmd(a),
        Command::Bernoulli(a) => bernoulli_cmd(a),
        Command::Period(a) => period(a),
        Command::VerifyPaper => verify_paper(),
        Command::Realification(a) => realification(a),
    };
    match result {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Text => out.text,
                Format::Csv => out.csv,
                Format::Json => Envelope {
                    command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
                    theory: out.theory.map(|t| t.name().to_string()),
                    p: out.p,
                    offset: out.offset,
                    payload: out.payload,
                    elapsed: start.elapsed(),
                }
                .render(),
            };
            print!("{rendered}");
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
