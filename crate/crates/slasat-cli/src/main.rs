//! `slasat` — SLA compliance and satisfiability from the command line.
//!
//! Exit codes are script-friendly: 0 compliant/satisfiable/success,
//! 1 violated/unsatisfiable, 2 usage or input error, 3 solver gave up at
//! the decision limit.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use slasat::bridge::{abstract_sla, lift};
use slasat::dsl::{export_dimacs, parse_dimacs, parse_sla, parse_trace, serialize_sla};
use slasat::model::{aggregate, Sla};
use slasat::solver::{formula_from_cnf, solve_slas, to_cnf_named, SolveConfig, SolveResult};
use slasat::verify::{bind, verify_at, verify_window, MetricTrace};

#[derive(Parser)]
#[command(name = "slasat", version, about = "Machine-checkable service level agreements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Parse SLA files and report structural issues
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Check an SLA against a metric trace, at an instant or over a window
    Verify {
        file: PathBuf,
        /// Metric trace CSV (header `t,indicator,value`)
        #[arg(long)]
        trace: PathBuf,
        /// Verify at this single instant
        #[arg(long, conflicts_with_all = ["window", "step"])]
        at: Option<u64>,
        /// Verify every step of this window (defaults to the trace extent)
        #[arg(long, value_name = "T0:T1", value_parser = parse_window_arg)]
        window: Option<(u64, u64)>,
        /// Step width for window verification
        #[arg(long, default_value_t = 1)]
        step: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Decide whether the conjunction of the given SLAs is satisfiable
    Solve {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Abort the search after this many branching decisions
        #[arg(long, default_value_t = SolveConfig::default().decision_limit)]
        decision_limit: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Merge SLA files into a single namespaced SLA
    Aggregate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Name of the combined SLA
        #[arg(long)]
        name: String,
        /// Where to write the combined SLA
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Export an SLA's boolean structure as a DIMACS CNF file
    ToSat {
        file: PathBuf,
        /// Where to write the DIMACS output
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rebuild a symbolic SLA from a DIMACS CNF file
    FromSat {
        file: PathBuf,
        /// Where to write the reconstructed SLA
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn parse_window_arg(raw: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = raw
        .split_once(':')
        .ok_or_else(|| format!("expected T0:T1, got `{raw}`"))?;
    let t0 = a.parse().map_err(|_| format!("bad window start `{a}`"))?;
    let t1 = b.parse().map_err(|_| format!("bad window end `{b}`"))?;
    Ok((t0, t1))
}

fn read_sla(path: &Path) -> Result<Sla> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_sla(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn read_slas(paths: &[PathBuf]) -> Result<Vec<Sla>> {
    paths.iter().map(|p| read_sla(p)).collect()
}

fn read_trace(path: &Path) -> Result<MetricTrace> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_trace(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn cmd_validate(files: &[PathBuf]) -> Result<ExitCode> {
    let mut failures = 0;
    for path in files {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        match parse_sla(&text) {
            Ok(sla) => {
                let issues = sla.validate();
                if issues.is_empty() {
                    println!("{}: ok", path.display());
                } else {
                    println!("{}: ok, {} warning(s)", path.display(), issues.len());
                    for issue in issues {
                        println!("  {issue}");
                    }
                }
            }
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                failures += 1;
            }
        }
    }
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_verify(
    file: &Path,
    trace_path: &Path,
    at: Option<u64>,
    window: Option<(u64, u64)>,
    step: u64,
    format: OutputFormat,
) -> Result<ExitCode> {
    let sla = read_sla(file)?;
    let trace = read_trace(trace_path)?;

    if let Some(t) = at {
        let binding = bind(&trace, t);
        let report = verify_at(&sla, &binding)?;
        match format {
            OutputFormat::Text => print!("{}", render::compliance_text(&report)),
            OutputFormat::Structured => println!("{}", serde_json::to_string_pretty(&report)?),
        }
        return Ok(if report.overall {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }

    let (t0, t1) = match window {
        Some(range) => range,
        None => trace
            .extent()
            .ok_or_else(|| anyhow!("{}: trace has no samples", trace_path.display()))?,
    };
    let report = verify_window(&sla, &trace, t0, t1, step)?;
    let compliant = report.steps.iter().all(|s| s.overall);
    match format {
        OutputFormat::Text => print!("{}", render::window_text(&report)),
        OutputFormat::Structured => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(if compliant {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_solve(files: &[PathBuf], decision_limit: u64, format: OutputFormat) -> Result<ExitCode> {
    let slas = read_slas(files)?;
    let config = SolveConfig { decision_limit };
    let report = solve_slas(&slas, &config)?;
    match format {
        OutputFormat::Text => print!("{}", render::solve_text(&report)),
        OutputFormat::Structured => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(match report.result {
        SolveResult::Sat(_) => ExitCode::SUCCESS,
        SolveResult::Unsat => ExitCode::from(1),
        SolveResult::Aborted(_) => ExitCode::from(3),
    })
}

fn cmd_aggregate(files: &[PathBuf], name: &str, output: &Path) -> Result<ExitCode> {
    let slas = read_slas(files)?;
    let combined = aggregate(&slas, name)?;
    fs::write(output, serialize_sla(&combined))
        .with_context(|| format!("writing {}", output.display()))?;
    println!(
        "wrote {} ({} clauses from {} files)",
        output.display(),
        combined.clauses.len(),
        files.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_to_sat(file: &Path, output: &Path) -> Result<ExitCode> {
    let sla = read_sla(file)?;
    let (formula, map) = abstract_sla(&sla);
    let cnf = to_cnf_named(&formula, &map)?;
    fs::write(output, export_dimacs(&cnf))
        .with_context(|| format!("writing {}", output.display()))?;
    println!(
        "wrote {} ({} variables, {} clauses)",
        output.display(),
        cnf.num_vars,
        cnf.clauses.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_from_sat(file: &Path, output: &Path) -> Result<ExitCode> {
    let text =
        fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let cnf = parse_dimacs(&text).map_err(|e| anyhow!("{}: {e}", file.display()))?;
    if cnf.clauses.iter().any(Vec::is_empty) {
        bail!(
            "{}: contains an empty clause; no SLA expression can encode it",
            file.display()
        );
    }
    let formula = formula_from_cnf(&cnf)?;
    let (sla, _) = lift(&formula)?;
    fs::write(output, serialize_sla(&sla))
        .with_context(|| format!("writing {}", output.display()))?;
    println!("wrote {} ({} clauses)", output.display(), sla.clauses.len());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { files } => cmd_validate(&files),
        Command::Verify {
            file,
            trace,
            at,
            window,
            step,
            format,
        } => cmd_verify(&file, &trace, at, window, step, format),
        Command::Solve {
            files,
            decision_limit,
            format,
        } => cmd_solve(&files, decision_limit, format),
        Command::Aggregate {
            files,
            name,
            output,
        } => cmd_aggregate(&files, &name, &output),
        Command::ToSat { file, output } => cmd_to_sat(&file, &output),
        Command::FromSat { file, output } => cmd_from_sat(&file, &output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
