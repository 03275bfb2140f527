use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use lim1::abelian::{smith_normal_form, IntMatrix, SmithForm};
use lim1::ordinal::OrdinalCNF;
use lim1::scenario::{run_scenarios, run_suite, Analysis, Input, Report, Scenario, WalkerInput, SCHEMA_VERSION};
use lim1::tower::{Tower, DEFAULT_HORIZON};
use lim1::{random, Error};

#[derive(Parser)]
#[command(
    name = "lim1",
    version,
    about = "Derived limits of towers of f.g. abelian groups and Walker normal forms"
)]
struct Cli {
    /// Print the JSON report to standard output instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Filtration stages to try before answering unknown.
    #[arg(long, global = true, default_value_t = DEFAULT_HORIZON)]
    horizon: usize,
    /// Seed for randomized suites and samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every tower analysis on a tower JSON file.
    Analyze { tower: PathBuf },
    /// Walker-group normal forms and heights.
    Walker {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: OrdinalCNF,
        #[command(subcommand)]
        op: WalkerOp,
    },
    /// Smith normal form of an integer matrix given as a JSON list of rows.
    Snf { matrix: PathBuf },
    /// Run a fixed suite: paper-examples or property-suite.
    Suite { name: String },
    /// Run the scenarios in a JSON file (one scenario or a list).
    Run { scenarios: PathBuf },
}

#[derive(Subcommand)]
enum WalkerOp {
    /// Normal form of each element.
    Normalize { elements: Vec<String> },
    /// p-height of each element.
    Height { elements: Vec<String> },
    /// Heights of e[(beta)] for sampled beta below alpha.
    UlmProbe {
        /// Ordinals to probe; six seeded samples when omitted.
        #[arg(long, num_args = 1..)]
        sample: Vec<OrdinalCNF>,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn read(path: &Path) -> lim1::Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn emit<T: Serialize>(cli: &Cli, value: &T, summary: impl FnOnce() -> String) -> lim1::Result<()> {
    let json = serde_json::to_string_pretty(value)?;
    if let Some(path) = &cli.output {
        std::fs::write(path, format!("{json}\n"))?;
    }
    let text = if cli.json { json } else { summary() };
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit_report(cli: &Cli, report: &Report, started: Instant) -> lim1::Result<Outcome> {
    emit(cli, report, || format!("{report}\nelapsed {:.2?}", started.elapsed()))?;
    Ok(if report.passed { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Serialize)]
struct SnfReport<'a> {
    schema_version: u32,
    matrix: &'a IntMatrix,
    #[serde(flatten)]
    form: &'a SmithForm,
    diagonal: Vec<String>,
    certificate_ok: bool,
}

fn snf(cli: &Cli, path: &Path) -> lim1::Result<Outcome> {
    let m: IntMatrix = serde_json::from_str(&read(path)?)?;
    let form = smith_normal_form(&m);
    let certificate_ok = form.u.mul(&m).mul(&form.v) == form.d;
    let report = SnfReport {
        schema_version: SCHEMA_VERSION,
        matrix: &m,
        form: &form,
        diagonal: form.diagonal().iter().map(ToString::to_string).collect(),
        certificate_ok,
    };
    emit(cli, &report, || {
        format!(
            "diagonal [{}]\nU = {:?}\nV = {:?}\ncertificate U*M*V = D: {}",
            report.diagonal.join(", "),
            form.u,
            form.v,
            if certificate_ok { "ok" } else { "FAILED" }
        )
    })?;
    Ok(if certificate_ok { Outcome::Pass } else { Outcome::Fail })
}

fn walker(cli: &Cli, p: u64, alpha: &OrdinalCNF, op: &WalkerOp, started: Instant) -> lim1::Result<Outcome> {
    let (elements, sample, analysis) = match op {
        WalkerOp::Normalize { elements } | WalkerOp::Height { elements } => {
            (elements.clone(), Vec::new(), Analysis::NormalForm)
        }
        WalkerOp::UlmProbe { sample } if sample.is_empty() => {
            let mut rng = random::rng(cli.seed);
            let mut s: Vec<OrdinalCNF> = (0..6).map(|_| random::ordinal_below(&mut rng, alpha)).collect();
            s.sort();
            s.dedup();
            (Vec::new(), s, Analysis::UlmProbe)
        }
        WalkerOp::UlmProbe { sample } => (Vec::new(), sample.clone(), Analysis::UlmProbe),
    };
    let scenario = Scenario {
        name: "walker".into(),
        input: Input::Walker(WalkerInput {
            p,
            alpha: alpha.clone(),
            elements,
            sample,
        }),
        analyses: vec![analysis],
        options: Default::default(),
        expect: Default::default(),
    };
    let report = run_scenarios(&[scenario])?;
    let w = report.scenarios[0].walker.as_ref().expect("walker results");
    let probe_ok = w.ulm_probe.as_ref().is_none_or(|u| u.heights_exact());
    emit(cli, &report, || {
        let mut lines = Vec::new();
        for e in &w.normal_forms {
            lines.push(match op {
                WalkerOp::Height { .. } => format!("{}: height {}", e.input, e.height),
                _ => format!("{} -> {}", e.input, e.normal_form),
            });
        }
        if let Some(u) = &w.ulm_probe {
            for s in &u.samples {
                let chain: Vec<String> = s.p_chain.iter().map(ToString::to_string).collect();
                lines.push(format!(
                    "beta {}: height {}, p-chain [{}]",
                    s.beta,
                    s.height,
                    chain.join(", ")
                ));
            }
            lines.push(format!("heights exact: {}", u.heights_exact()));
        }
        lines.push(format!("elapsed {:.2?}", started.elapsed()));
        lines.join("\n")
    })?;
    Ok(if probe_ok { Outcome::Pass } else { Outcome::Fail })
}

fn run(cli: &Cli) -> lim1::Result<Outcome> {
    let started = Instant::now();
    match &cli.command {
        Command::Analyze { tower } => {
            let s = Tower::from_json(&read(tower)?)?;
            let name = tower
                .file_stem()
                .map_or("tower".into(), |n| n.to_string_lossy().into_owned());
            let mut scenario = Scenario::tower(&name, s);
            scenario.options.horizon = cli.horizon;
            emit_report(cli, &run_scenarios(&[scenario])?, started)
        }
        Command::Walker { p, alpha, op } => walker(cli, *p, alpha, op, started),
        Command::Snf { matrix } => snf(cli, matrix),
        Command::Suite { name } => emit_report(cli, &run_suite(name, cli.seed)?, started),
        Command::Run { scenarios } => {
            let list = Scenario::parse_many(&read(scenarios)?)?;
            emit_report(cli, &run_scenarios(&list)?, started)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::UnknownSuite(_) = e {
                eprintln!("known suites: {}", lim1::scenario::SUITES.join(", "));
            }
            ExitCode::from(2)
        }
    }
}
