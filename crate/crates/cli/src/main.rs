use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use quadwiener::construct::{build_qn, fixture, FIXTURE_NAMES};
use quadwiener::embed::{canonical_code, read_planar_code, write_planar_code};
use quadwiener::enumerate::{enumerate_up_to, EnumerateOptions, EnumerationRun, DEFAULT_LIMIT};
use quadwiener::metrics::wiener_index;
use quadwiener::par;
use quadwiener::report::{audit_levels, AuditOptions, VerificationReport};
use quadwiener::Quadrangulation;
use serde_json::json;

/// Plane quadrangulations: Wiener index, enumeration and bound audits.
#[derive(Parser)]
#[command(name = "quadwiener", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build Q_n or a named fixture.
    #[command(group(ArgGroup::new("source").required(true).args(["qn", "fixture"])))]
    Construct {
        #[arg(long)]
        qn: Option<usize>,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(FIXTURE_NAMES))]
        fixture: Option<String>,
        #[arg(long, value_enum, default_value_t = Emit::Pc)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Wiener index of every graph in a planar_code stream.
    Wiener {
        /// Read from this file instead of standard input.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Emit all quadrangulations on n vertices as planar_code.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Check the extremal bound, edge counts, minimum degree and
    /// 3-connectivity on every instance up to n-max.
    Verify(RunArgs),
    /// Level-size status bounds and/or surgery certificates up to n-max.
    #[command(group(ArgGroup::new("kind").required(true).multiple(true).args(["lemmas", "surgery"])))]
    Audit {
        #[arg(long)]
        lemmas: bool,
        #[arg(long)]
        surgery: bool,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    n_max: usize,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    limit: usize,
    /// Test hook: report the first instance above the bound.
    #[arg(long, hide = true)]
    inflate_one: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Pc,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn write_out(path: Option<&PathBuf>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn construct(qn: Option<usize>, name: Option<String>, emit: Emit, out: Option<PathBuf>) -> Result<()> {
    let q: Quadrangulation = match (qn, name) {
        (Some(n), _) => build_qn(n)?,
        (None, Some(name)) => fixture(&name)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let bytes = match emit {
        Emit::Pc => write_planar_code([q.embedded()])?,
        Emit::Json => {
            let value = json!({
                "n": q.n(),
                "rotation": q.rotation(),
                "faces": q.faces(),
                "code": canonical_code(&q),
                "wiener": wiener_index(&q),
            });
            let mut s = serde_json::to_string_pretty(&value)?;
            s.push('\n');
            s.into_bytes()
        }
    };
    write_out(out.as_ref(), &bytes)
}

fn wiener(input: Option<PathBuf>) -> Result<()> {
    let bytes = match &input {
        Some(p) => fs::read(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut buf = Vec::new();
            io::stdin().lock().read_to_end(&mut buf)?;
            buf
        }
    };
    let graphs = read_planar_code(&bytes)?;
    let mut out = io::stdout().lock();
    for g in &graphs {
        writeln!(out, "{}", wiener_index(g))?;
    }
    Ok(())
}

fn levels(n_max: usize, limit: usize) -> Result<Vec<EnumerationRun>> {
    let runs = enumerate_up_to(n_max, &EnumerateOptions { limit, ..EnumerateOptions::default() })?;
    for r in &runs {
        eprintln!("n = {:>3}: {:>6} quadrangulations in {:.3?}", r.n, r.count(), r.elapsed);
    }
    Ok(runs)
}

fn enumerate(n: usize, out: Option<PathBuf>, limit: usize) -> Result<()> {
    let runs = levels(n, limit)?;
    let last = runs.last().expect("at least one level");
    let bytes = write_planar_code(last.instances.iter().map(Quadrangulation::embedded))?;
    write_out(out.as_ref(), &bytes)
}

fn audit(run: RunArgs, lemmas: bool, surgery: bool) -> Result<bool> {
    if run.n_max < 4 {
        bail!("--n-max must be at least 4, got {}", run.n_max);
    }
    let runs = levels(run.n_max, run.limit)?;
    let start = Instant::now();
    let opts = AuditOptions {
        lemmas,
        surgery,
        require_extremal: true,
        inflate_first: run.inflate_one,
        ..AuditOptions::default()
    };
    let report = audit_levels(&runs, &opts);
    eprintln!("audited {} instances in {:.3?}", report.instances.len(), start.elapsed());
    print_summary(&report);
    if let Some(path) = &run.report {
        let bytes = match run.format {
            Format::Json => {
                let mut s = report.to_json()?;
                s.push('\n');
                s.into_bytes()
            }
            Format::Csv => {
                let mut buf = Vec::new();
                report.write_csv(&mut buf)?;
                buf
            }
        };
        write_out(Some(path), &bytes)?;
    }
    Ok(report.is_clean())
}

fn print_summary(report: &VerificationReport) {
    let s = &report.summary;
    println!("n\tcount\tmax W\tbound\tattainers\tQ_n attains");
    for z in &s.sizes {
        println!("{}\t{}\t{}\t{}\t{}\t{}", z.n, z.count, z.max_wiener, z.conjectured_max, z.attainers.len(), z.qn_attains);
    }
    if let Some(l) = &s.lemmas {
        println!(
            "status bounds: {} source sets, {}/{} + {}/{} + {}/{} pass",
            l.source_sets, l.two.passed, l.two.checked, l.second_three.passed, l.second_three.checked, l.three.passed,
            l.three.checked
        );
    }
    if s.certificates.checked > 0 {
        println!("certificates: {}/{} pass", s.certificates.passed, s.certificates.checked);
    }
    for f in &s.falsifications {
        println!("FALSIFIED {} at n = {} ({}): {}", f.check, f.n, f.code, f.detail);
    }
    println!("{}", if report.is_clean() { "ok" } else { "falsified" });
}

fn threads_from_env() -> Result<()> {
    if let Ok(v) = std::env::var("QUADWIENER_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("QUADWIENER_THREADS={v:?} is not a count"))?;
        if n == 0 {
            bail!("QUADWIENER_THREADS must be positive");
        }
        par::configure_threads(n).map_err(anyhow::Error::msg)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    threads_from_env()?;
    match cli.command {
        Command::Construct { qn, fixture, emit, out } => construct(qn, fixture, emit, out).map(|_| true),
        Command::Wiener { input } => wiener(input).map(|_| true),
        Command::Enumerate { n, out, limit } => enumerate(n, out, limit).map(|_| true),
        Command::Verify(args) => audit(args, false, false),
        Command::Audit { lemmas, surgery, run } => audit(run, lemmas, surgery),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
