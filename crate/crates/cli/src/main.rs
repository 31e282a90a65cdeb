use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use haarint::closedforms::{self, ClosedExpr};
use haarint::integrals::{self, canonicalize, class_counts, Canonical};
use haarint::verify::{check_suite, SuiteEntry, DEFAULT_THRESHOLD};
use haarint::{Error, IntegralSpec, Limits, RationalFunction};

mod tables;

#[derive(Parser)]
#[command(
    name = "haarint",
    version,
    about = "Exact monomial integrals over U(n) with Haar measure"
)]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an integral given as `conj: i,j[,m]; ...; plain: k,l[,m]; ...` or JSON
    Eval {
        input: String,
        #[command(flatten)]
        out: Output,
        /// Also print the exact value at this dimension
        #[arg(long)]
        n: Option<u64>,
    },
    /// Print primitive, stack, special double-fan and character tables
    Tables {
        #[arg(long, default_value_t = 3)]
        pmax: usize,
        #[arg(long)]
        json: bool,
    },
    /// Show the canonical form, symmetry groups, class counts and orderliness
    Classify {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Monte-Carlo check of exact values (JSON lines)
    McCheck {
        /// Integral to check; omit when using --suite
        input: Option<String>,
        /// Built-in suite: `standard` (primitive p <= 3, Sigma, Z(2,1,1), two double-fans, vanishing cases)
        #[arg(long)]
        suite: Option<String>,
        /// Dimensions to test; repeat or separate with commas
        #[arg(long, value_delimiter = ',', default_value = "3")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
    },
    /// Evaluate a closed form: `fan m`, `z m1 m2 m3`, `stack p1 p2 ...`, `[Aa+2Ab][Aa]`
    Closed {
        expr: String,
        #[command(flatten)]
        out: Output,
        /// Re-derive the value with the class-counting engine and compare
        #[arg(long)]
        cross_check: bool,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    latex: bool,
}

/// Process exit statuses.
mod status {
    pub const PARSE: u8 = 2;
    pub const BUDGET: u8 = 3;
    pub const MISMATCH: u8 = 4;
    pub const STATISTICAL: u8 = 5;
    pub const OTHER: u8 = 1;
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidClosedGraph { .. }
            | Error::InvalidPermutation(_)
            | Error::InvalidArgument(_) => status::PARSE,
            e if e.is_budget() => status::BUDGET,
            _ => status::OTHER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn with_input(input: &str) -> impl FnOnce(Error) -> Failure + '_ {
    move |e| {
        let mut f = Failure::from(e.clone());
        if let Error::Parse { column, .. } = e {
            f.message = format!(
                "{}\n  {input}\n  {:>width$}",
                f.message,
                "^",
                width = column
            );
        }
        f
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(status::OTHER);
        }
    }
    let limits = Limits::default();
    let result = match cli.command {
        Command::Eval { input, out, n } => run_eval(&input, &out, n, &limits),
        Command::Tables { pmax, json } => tables::run(pmax, json),
        Command::Classify { input, json } => run_classify(&input, json, &limits),
        Command::McCheck {
            input,
            suite,
            n,
            samples,
            seed,
            threshold,
        } => run_mc_check(
            input.as_deref(),
            suite.as_deref(),
            &n,
            samples,
            seed,
            threshold,
            &limits,
        ),
        Command::Closed {
            expr,
            out,
            cross_check,
        } => run_closed(&expr, &out, cross_check, &limits),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn print_value(value: &RationalFunction, out: &Output, extra: serde_json::Value) {
    if out.json {
        let mut obj = json!({
            "value": value,
            "text": value.to_string(),
            "latex": value.to_latex(),
        });
        if let (Some(o), serde_json::Value::Object(e)) = (obj.as_object_mut(), extra) {
            o.extend(e);
        }
        println!("{obj}");
    } else if out.latex {
        println!("{}", value.to_latex());
    } else {
        println!("{value}");
    }
}

fn run_eval(input: &str, out: &Output, n: Option<u64>, limits: &Limits) -> Outcome {
    let spec = IntegralSpec::parse_any(input).map_err(with_input(input))?;
    let (value, zero) = match canonicalize(&spec, limits)? {
        Canonical::Zero(reason) => (RationalFunction::zero(), Some(reason.to_string())),
        Canonical::Integral(ci) => (integrals::evaluate_gtm(&ci, limits)?, None),
    };
    let at = match n {
        Some(n0) => Some(value.evaluate(&n0.into())?.to_string()),
        None => None,
    };
    print_value(
        &value,
        out,
        json!({ "integral": spec.to_string(), "zero_reason": zero, "n": n, "value_at_n": at }),
    );
    if let (Some(n0), Some(v), false) = (n, &at, out.json) {
        println!("n = {n0}: {v}");
    }
    Ok(())
}

fn run_classify(input: &str, json_out: bool, limits: &Limits) -> Outcome {
    let spec = IntegralSpec::parse_any(input).map_err(with_input(input))?;
    let ci = match canonicalize(&spec, limits)? {
        Canonical::Zero(reason) => {
            if json_out {
                println!("{}", json!({ "zero": reason.to_string() }));
            } else {
                println!("vanishes: {reason}");
            }
            return Ok(());
        }
        Canonical::Integral(ci) => ci,
    };
    let counts = class_counts(&ci, limits)?;
    let group = |g: &[haarint::Permutation]| g.iter().map(ToString::to_string).collect::<Vec<_>>();
    if json_out {
        println!(
            "{}",
            json!({
                "canonical": ci,
                "G_I": group(&ci.g_i),
                "G_J": group(&ci.g_j),
                "G_JQ": group(&ci.g_jq),
                "orderliness": ci.classify_orderly().to_string(),
                "counts": counts,
            })
        );
        return Ok(());
    }
    print!("{}", ci.index_table());
    println!("Q     {}", ci.q);
    println!("G_I   {{{}}}", group(&ci.g_i).join(", "));
    println!("G_JQ  {{{}}}", group(&ci.g_jq).join(", "));
    println!("class {}", ci.classify_orderly());
    let terms: Vec<String> = counts
        .nonzero()
        .map(|(c, k)| format!("{k} xi[{}]", c.representative_label()))
        .collect();
    println!("N     {}", terms.join(" + "));
    Ok(())
}

fn standard_suite() -> Vec<(String, IntegralSpec)> {
    let mut out = Vec::new();
    for p in 1..=3 {
        for c in haarint::symgroup::partitions_of(p).into_iter().rev() {
            out.push((
                format!("xi{}", c.representative_label()),
                integrals::primitive_spec(&c),
            ));
        }
    }
    out.push(("sigma".into(), closedforms::sigma_spec()));
    out.push(("z 2 1 1".into(), closedforms::z_spec(2, 1, 1)));
    for e in ["[Aa+2Ab][Aa]", "[Aa+Ab+Ba][Aa+Ab]"] {
        let expr: ClosedExpr = e.parse().expect("built-in expression");
        out.push((e.into(), expr.spec()));
    }
    for s in [
        "plain: 1,1",
        "conj: 1,1; 1,1; plain: 1,2; 1,1",
        "conj: 1,1; 2,2; plain: 1,1; 1,2",
    ] {
        out.push((s.into(), s.parse().expect("built-in spec")));
    }
    out
}

fn run_mc_check(
    input: Option<&str>,
    suite: Option<&str>,
    n_values: &[usize],
    samples: u64,
    seed: u64,
    threshold: f64,
    limits: &Limits,
) -> Outcome {
    let named: Vec<(String, IntegralSpec)> = match (input, suite) {
        (Some(text), None) => vec![(
            text.to_string(),
            IntegralSpec::parse_any(text).map_err(with_input(text))?,
        )],
        (None, Some("standard")) => standard_suite(),
        (None, Some(other)) => {
            return Err(Failure {
                code: status::PARSE,
                message: format!("unknown suite {other:?}; available: standard"),
            })
        }
        _ => {
            return Err(Failure {
                code: status::PARSE,
                message: "give either an integral or --suite".into(),
            })
        }
    };
    let entries: Vec<SuiteEntry> = named
        .iter()
        .map(|(_, s)| SuiteEntry::from(s.clone()))
        .collect();
    let reports = check_suite(&entries, n_values, samples, seed, threshold, limits);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let mut failed = 0;
    let mut first_error = None;
    for (k, r) in reports.into_iter().enumerate() {
        let name = &named[k % named.len()].0;
        match r {
            Ok(rep) => {
                if !rep.pass {
                    failed += 1;
                }
                let mut v = serde_json::to_value(&rep).expect("report serializes");
                v["name"] = json!(name);
                writeln!(lock, "{v}").ok();
            }
            Err(e) => {
                writeln!(lock, "{}", json!({ "name": name, "error": e.to_string() })).ok();
                first_error.get_or_insert(e);
            }
        }
    }
    if let Some(e) = first_error {
        return Err(e.into());
    }
    if failed > 0 {
        return Err(Failure {
            code: status::STATISTICAL,
            message: format!("{failed} check(s) exceeded |z| > {threshold}"),
        });
    }
    Ok(())
}

fn run_closed(text: &str, out: &Output, cross_check: bool, limits: &Limits) -> Outcome {
    let expr: ClosedExpr = text.parse().map_err(with_input(text))?;
    let value = expr.value()?;
    let mut extra = json!({ "expression": expr.to_string() });
    let mut mismatch = None;
    if cross_check {
        let direct = integrals::evaluate(&expr.spec(), limits)?;
        extra["cross_check"] = json!({ "agrees": direct == value, "direct": direct.to_string() });
        if direct != value {
            mismatch = Some(direct);
        } else if !out.json {
            eprintln!("cross-check: agrees");
        }
    }
    print_value(&value, out, extra);
    if let Some(direct) = mismatch {
        return Err(Failure {
            code: status::MISMATCH,
            message: format!("cross-check mismatch: closed form {value}, direct {direct}"),
        });
    }
    Ok(())
}
