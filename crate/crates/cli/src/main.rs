use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monadica::calculus::{gen_eval, parse, taylor, Expr, GenFn};
use monadica::seq::{self, convergence_witness, Witness};
use monadica::sets::{self, TopoOp};
use monadica::verify::{self, SuiteReport};
use monadica::{Catalog, Error, GeneralizedReal, GeneralizedSet, RealSet};
use serde_json::json;

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Generalized reals with nilpotent infinitesimals, and limit-free calculus on them.
#[derive(Parser, Debug)]
#[command(name = "monadica", version)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the extension of an expression at a generalized real.
    Eval {
        expr: String,
        #[arg(long)]
        at: String,
    },
    /// Derivative (or m-th derivative) of the extension at a point.
    Diff {
        expr: String,
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = 1)]
        order: u32,
        #[command(flatten)]
        domain: DomainArg,
    },
    /// Taylor polynomial with Lagrange point and remainder bound.
    Taylor {
        expr: String,
        #[arg(long)]
        center: f64,
        #[arg(long)]
        order: u32,
        #[arg(long)]
        at: String,
        #[command(flatten)]
        domain: DomainArg,
    },
    /// Inspect the sequences behind generalized reals.
    Seq {
        #[command(subcommand)]
        action: SeqAction,
    },
    /// Set algebra, topology and suprema on generalized sets.
    Sets {
        op: SetOp,
        /// One set, or two for union, intersect and difference.
        #[arg(num_args = 1..=2, required = true)]
        sets: Vec<String>,
    },
    /// Run the property suites.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Read commands line by line.
    Repl,
}

#[derive(Args, Debug)]
struct DomainArg {
    /// Open domain interval as `lo,hi`; defaults to the whole line.
    #[arg(long, value_parser = parse_domain)]
    domain: Option<(f64, f64)>,
}

#[derive(Subcommand, Debug)]
enum SeqAction {
    /// First terms of the representing sequence.
    Print {
        value: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Index from which the sequence stays within eps of its shadow.
    Witness {
        value: String,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1_000_000)]
        nmax: u64,
    },
    /// Generator ids known to the parser.
    Catalog,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SetOp {
    Union,
    Intersect,
    Difference,
    Monad,
    Shadow,
    Interior,
    Closure,
    Boundary,
    Exterior,
    IsOpen,
    IsClosed,
    IsCompact,
    IsConnected,
    Sup,
    Inf,
    Max,
    Min,
    Length,
}

impl SetOp {
    fn arity(self) -> usize {
        match self {
            SetOp::Union | SetOp::Intersect | SetOp::Difference => 2,
            _ => 1,
        }
    }
}

fn parse_domain(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `lo,hi`")?;
    let bound = |t: &str| match t.trim() {
        "-inf" => Ok(f64::NEG_INFINITY),
        "inf" | "+inf" => Ok(f64::INFINITY),
        t => t.parse::<f64>().map_err(|e| format!("bad bound `{t}`: {e}")),
    };
    Ok((bound(a)?, bound(b)?))
}

enum Failure {
    Usage(String),
    Domain(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownGenerator(_) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

type Outcome = Result<(), Failure>;

fn emit(s: impl std::fmt::Display) {
    // A closed pipe is not worth a panic.
    let _ = writeln!(io::stdout(), "{s}");
}

fn value_arg(text: &str) -> Result<GeneralizedReal, Failure> {
    Ok(GeneralizedReal::from_json(text)?)
}

fn gen_fn(expr: Expr, domain: Option<(f64, f64)>) -> Result<GenFn, Failure> {
    let (lo, hi) = domain.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
    let text = expr.to_string();
    GenFn::new(expr, lo, hi).map_err(|e| match e {
        Error::OutOfDomain(t) => Failure::Domain(Error::Domain(format!(
            "{text} is undefined at {t}, inside the domain ]{lo}, {hi}[; narrow it with --domain"
        ))),
        e => e.into(),
    })
}

fn show_value(v: &GeneralizedReal, pretty: bool) {
    if pretty {
        emit(v);
    } else {
        emit(v.to_json());
    }
}

fn show_set(g: &GeneralizedSet, pretty: bool) {
    if pretty {
        emit(g);
    } else {
        emit(g.to_json());
    }
}

fn set_arg(text: &str) -> Result<GeneralizedSet, Failure> {
    Ok(GeneralizedSet::from_json(text)?)
}

fn run_sets(op: SetOp, args: &[String], pretty: bool) -> Outcome {
    if args.len() != op.arity() {
        return Err(Failure::Usage(format!(
            "`{}` takes {} set argument(s), got {}",
            op.to_possible_value().expect("no skipped variants").get_name(),
            op.arity(),
            args.len()
        )));
    }
    if let SetOp::Monad = op {
        let s = RealSet::from_json(&args[0])?;
        show_set(&sets::monad(&s), pretty);
        return Ok(());
    }
    let g = set_arg(&args[0])?;
    let topo = |t| -> Outcome {
        show_set(&sets::topo(t, &g)?, pretty);
        Ok(())
    };
    match op {
        SetOp::Union | SetOp::Intersect | SetOp::Difference => {
            let h = set_arg(&args[1])?;
            let out = match op {
                SetOp::Union => g.union(&h),
                SetOp::Intersect => g.intersect(&h),
                _ => g.difference(&h),
            };
            show_set(&out, pretty);
        }
        SetOp::Shadow => {
            let s = sets::shadow(&g);
            if pretty {
                emit(&s);
            } else {
                emit(s.to_json());
            }
        }
        SetOp::Interior => topo(TopoOp::Interior)?,
        SetOp::Closure => topo(TopoOp::Closure)?,
        SetOp::Boundary => topo(TopoOp::Boundary)?,
        SetOp::Exterior => topo(TopoOp::Exterior)?,
        SetOp::IsOpen => emit(sets::is_open(&g)?),
        SetOp::IsClosed => emit(sets::is_closed(&g)?),
        SetOp::IsCompact => emit(sets::is_compact(&g)?),
        SetOp::IsConnected => emit(sets::is_connected(&g)?),
        SetOp::Sup => emit(sets::sup_r(&g)?),
        SetOp::Inf => emit(sets::inf_r(&g)?),
        SetOp::Max => emit(sets::max_r(&g)?),
        SetOp::Min => emit(sets::min_r(&g)?),
        SetOp::Length => emit(sets::length(&g)?),
        SetOp::Monad => unreachable!(),
    }
    Ok(())
}

fn run_seq(action: SeqAction, pretty: bool) -> Outcome {
    match action {
        SeqAction::Print { value, terms } => {
            let x = value_arg(&value)?;
            let p = seq::prefix(&x, terms);
            if pretty {
                for (n, t) in p.iter().enumerate() {
                    emit(format!("{:>6}  {t}", n + 1));
                }
            } else {
                emit(json!(p));
            }
        }
        SeqAction::Witness { value, eps, nmax } => {
            if eps.is_nan() || eps <= 0.0 {
                return Err(Failure::Usage("--eps must be positive".into()));
            }
            let x = value_arg(&value)?;
            let out = match convergence_witness(&x, eps, nmax) {
                Witness::Converged(n) => json!({ "converged": true, "n": n }),
                Witness::Failure => json!({ "converged": false }),
            };
            emit(out);
        }
        SeqAction::Catalog => {
            let ids: Vec<String> = Catalog::default().members().iter().map(|g| g.id()).collect();
            if pretty {
                emit(ids.join("\n"));
            } else {
                emit(json!(ids));
            }
        }
    }
    Ok(())
}

fn print_table(reports: &[SuiteReport]) {
    for r in reports {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        emit(format!("{verdict}  {} (seed {}, {:.1} ms)", r.suite, r.seed, r.elapsed_ms));
        for c in &r.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            emit(format!("    {mark} {:<40} {:>6} cases  {}", c.name, c.cases, c.detail));
        }
    }
}

fn default_seed() -> Result<u64, Failure> {
    match std::env::var("MONADICA_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("MONADICA_SEED must be an unsigned integer, got `{s}`"))),
        Err(_) => Ok(0),
    }
}

fn run_verify(suite: Option<String>, seed: Option<u64>, pretty: bool) -> Outcome {
    let seed = match seed {
        Some(s) => s,
        None => default_seed()?,
    };
    let reports = match suite {
        Some(name) => {
            if !verify::SUITES.contains(&name.as_str()) {
                return Err(Failure::Usage(format!(
                    "unknown suite `{name}`; known suites: {}",
                    verify::SUITES.join(", ")
                )));
            }
            vec![verify::run_suite(&name, seed)?]
        }
        None => verify::run_all(seed),
    };
    if pretty {
        print_table(&reports);
    } else if reports.len() == 1 {
        emit(serde_json::to_string(&reports[0]).expect("reports serialize"));
    } else {
        emit(serde_json::to_string(&reports).expect("reports serialize"));
    }
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn run_repl(pretty: bool) -> Outcome {
    let stdin = io::stdin();
    loop {
        print!("> ");
        io::stdout().flush().ok();
        let mut line = String::new();
        if stdin.lock().read_line(&mut line).map_err(|e| Failure::Usage(e.to_string()))? == 0 {
            break;
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == "quit" || line == "exit" {
            break;
        }
        let Some(words) = shlex::split(line) else {
            eprintln!("unbalanced quotes");
            continue;
        };
        let argv = std::iter::once("monadica".to_string()).chain(words);
        match Cli::try_parse_from(argv) {
            Ok(Cli { command: Command::Repl, .. }) => eprintln!("already in the repl"),
            Ok(cli) => {
                report(dispatch(cli.command, pretty || cli.pretty));
            }
            Err(e) => {
                e.print().ok();
            }
        }
    }
    Ok(())
}

fn dispatch(command: Command, pretty: bool) -> Outcome {
    match command {
        Command::Eval { expr, at } => {
            let e = parse(&expr)?;
            let x = value_arg(&at)?;
            show_value(&gen_eval(&e, &x)?, pretty);
        }
        Command::Diff { expr, at, order, domain } => {
            if order == 0 {
                return Err(Failure::Usage("--order must be at least 1".into()));
            }
            let f = gen_fn(parse(&expr)?, domain.domain)?;
            let x = value_arg(&at)?;
            emit(f.mth_derivative(order, &x)?);
        }
        Command::Taylor { expr, center, order, at, domain } => {
            let f = gen_fn(parse(&expr)?, domain.domain)?;
            let x = value_arg(&at)?;
            let r = taylor(&f, center, order, &x)?;
            if pretty {
                emit(format!("partial sum      {}", r.partial_sum));
                emit(format!("remainder bound  {}", r.remainder_bound));
                match r.theta {
                    Some(t) => emit(format!("theta            {t}")),
                    None => emit("theta            not found"),
                }
            } else {
                emit(serde_json::to_string(&r).expect("taylor results serialize"));
            }
        }
        Command::Seq { action } => run_seq(action, pretty)?,
        Command::Sets { op, sets } => run_sets(op, &sets, pretty)?,
        Command::Verify { suite, seed } => run_verify(suite, seed, pretty)?,
        Command::Repl => run_repl(pretty)?,
    }
    Ok(())
}

fn report(outcome: Outcome) -> u8 {
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            emit(json!({ "error": e.to_string() }));
            EXIT_DOMAIN
        }
        Err(Failure::Verify) => EXIT_VERIFY,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(report(dispatch(cli.command, cli.pretty)))
}
