use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use su21_cli::config::{parse_pair, ConfigLayer, Format, RunConfig, Suite};
use su21_cli::expr::{parse_element_expr, Parsed};
use su21_cli::report::emit_report;
use su21_cli::serialize::{cohomology_json, TransitionTableDoc};
use su21_cli::suite::{build_module, run_suite};
use su21_cli::CliError;
use su21_core::cohomology::{compute_scalar_actions, w_dim};
use su21_core::induction::{InductionError, Phi, Reducer};
use su21_core::rational::format_fraction;

#[derive(Parser)]
#[command(name = "su21", version, about = "Exact verification of Dirac induction for the nonholomorphic discrete series of SU(2,1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the selected suites and print a report.
    Verify(Common),
    /// Solve the transition scalars and print them as JSON.
    BuildModule(Common),
    /// Print the W basis, the kernel dimension of D and the scalar action table.
    Cohomology(Common),
    /// Reduce one element of A (x) W modulo Z and certify the result.
    Reduce {
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run every suite; markdown unless --format is given.
    Report(Common),
}

#[derive(Args, Default)]
struct Common {
    #[arg(long, allow_hyphen_values = true)]
    p1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p2: Option<String>,
    /// Window bounds N,M.
    #[arg(long)]
    window: Option<String>,
    /// Maximal U-degree of raw words.
    #[arg(long)]
    deg: Option<u32>,
    /// Basis bounds K,L.
    #[arg(long)]
    basis: Option<String>,
    /// Comma-separated suite names.
    #[arg(long)]
    suites: Option<String>,
    /// json or md.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    fail_fast: bool,
    /// JSON config file; flags take precedence.
    #[arg(long)]
    config: Option<String>,
}

impl Common {
    fn resolve(&self, default_format: Option<Format>, fixed_suites: Option<&[Suite]>) -> Result<RunConfig, CliError> {
        let suites = match (fixed_suites, &self.suites) {
            (Some(f), _) => Some(f.to_vec()),
            (None, Some(s)) => Some(s.split(',').map(str::parse).collect::<Result<Vec<Suite>, _>>()?),
            (None, None) => None,
        };
        let format = match &self.format {
            Some(f) => Some(f.parse()?),
            None => default_format,
        };
        let layer = ConfigLayer {
            p1: self.p1.clone(),
            p2: self.p2.clone(),
            window: self.window.as_deref().map(parse_pair).transpose()?,
            deg: self.deg,
            basis: self.basis.as_deref().map(parse_pair).transpose()?,
            suites,
            threads: self.threads,
            format,
            fail_fast: self.fail_fast.then_some(true),
        };
        RunConfig::resolve(self.config.as_deref(), &layer)
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print_json(v: &serde_json::Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("value serializes")));
}

fn reduce(expr: &str, cfg: &RunConfig) -> Result<i32, CliError> {
    let module = build_module(cfg)?;
    let top = w_dim(module.p());
    let parsed = parse_element_expr(expr, Some(top)).map_err(|e| CliError::Config(e.to_string()))?;
    let Parsed::Tensor(t) = parsed else {
        return Err(CliError::Config("reduce needs an element of A (x) W; end each term with (x) w<s>".into()));
    };
    let mut phi = Phi::new(&module)?;
    let mut reducer = Reducer::new(module.p().clone(), cfg.max_deg);
    let (status, witness, combo) = match phi.certify(&mut reducer, &t) {
        Ok(r) => ("pass", None, r.combo),
        Err(e @ (InductionError::Certificate(_) | InductionError::MeasureIncrease(_))) => ("fail", Some(e.to_string()), Default::default()),
        Err(e) => return Err(e.into()),
    };
    let combo: Vec<serde_json::Value> = combo
        .iter()
        .map(|(g, c)| serde_json::json!({"generator": g.to_string(), "coefficient": format_fraction(c)}))
        .collect();
    print_json(&serde_json::json!({
        "input": t.to_string(),
        "p": [format_fraction(&cfg.p1), format_fraction(&cfg.p2)],
        "combo": combo,
        "certificate": {"status": status, "witness": witness, "rewrite_steps": reducer.steps},
    }));
    Ok(if status == "pass" { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify(c) => {
            let cfg = c.resolve(None, None)?;
            let r = run_suite(&cfg)?;
            emit(&emit_report(&r, cfg.format));
            Ok(r.exit_code())
        }
        Command::Report(c) => {
            let cfg = c.resolve(Some(Format::Markdown), Some(&Suite::ALL))?;
            let r = run_suite(&cfg)?;
            emit(&emit_report(&r, cfg.format));
            Ok(r.exit_code())
        }
        Command::BuildModule(c) => {
            let cfg = c.resolve(None, Some(&[Suite::Module]))?;
            let m = build_module(&cfg)?;
            let doc = TransitionTableDoc::from_table(&m.table);
            emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("table serializes")));
            Ok(0)
        }
        Command::Cohomology(c) => {
            let cfg = c.resolve(None, Some(&[Suite::Module]))?;
            let m = build_module(&cfg)?;
            match compute_scalar_actions(&m) {
                Ok(t) => {
                    print_json(&cohomology_json(&m, &t)?);
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("scalar action check failed: {e}");
                    Ok(1)
                }
            }
        }
        Command::Reduce { expr, common } => {
            let cfg = common.resolve(None, Some(&[Suite::Module]))?;
            reduce(&expr, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("su21: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
