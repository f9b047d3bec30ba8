use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use prethermal_harness::plot::{emit_plot, PlotSpec};
use prethermal_harness::{cache_root, run, CachePolicy, Command, HarnessError, JtauGrid, SweepConfig};

#[derive(Parser)]
#[command(name = "prethermal", version, about = "Floquet spin-chain sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Stroboscopic correlation series.
    Dynamics(Overrides),
    /// Λ eigenvalue sweeps and eigen-observable dumps.
    Spectrum(Overrides),
    /// Magnus and rotated-frame series: norms, infidelities, fidelities.
    Expansions(Overrides),
    /// Critical Trotter steps versus L.
    Jc(Overrides),
    /// SVG line plot from CSV files.
    Plot(PlotArgs),
}

#[derive(Args)]
struct Overrides {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    /// Comma-separated chain lengths.
    #[arg(long = "L", value_delimiter = ',')]
    lengths: Option<Vec<usize>>,
    /// `start:stop:step` or a comma-separated list.
    #[arg(long)]
    jtau: Option<String>,
    #[arg(long)]
    rc: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cache: Option<String>,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long = "input", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, default_value = "n")]
    x: String,
    #[arg(long, default_value = "value")]
    y: String,
    #[arg(long)]
    log_y: bool,
    #[arg(long, default_value = "")]
    title: String,
    #[arg(long)]
    out: PathBuf,
}

fn configure(command: Command, o: Overrides) -> Result<SweepConfig, HarnessError> {
    let mut cfg = SweepConfig::load(command, o.config.as_deref())?;
    if let Some(m) = o.model {
        cfg.model = m;
    }
    if let Some(l) = o.lengths {
        cfg.lengths = l;
    }
    if let Some(j) = o.jtau {
        cfg.jtau = j.parse::<JtauGrid>()?;
    }
    if let Some(r) = o.rc {
        cfg.r_c = r;
    }
    if let Some(order) = o.order {
        cfg.orders = order;
    }
    if let Some(out) = o.out {
        cfg.out = out;
    }
    if let Some(c) = o.cache {
        cfg.cache = c.parse::<CachePolicy>()?;
    }
    Ok(cfg)
}

fn dispatch(sub: Sub) -> Result<(), HarnessError> {
    let (command, o) = match sub {
        Sub::Dynamics(o) => (Command::Dynamics, o),
        Sub::Spectrum(o) => (Command::Spectrum, o),
        Sub::Expansions(o) => (Command::Expansions, o),
        Sub::Jc(o) => (Command::Jc, o),
        Sub::Plot(p) => {
            let spec = PlotSpec { x: p.x, y: p.y, log_y: p.log_y, title: p.title };
            emit_plot(&p.inputs, &spec, &p.out)?;
            println!("{}", p.out.display());
            return Ok(());
        }
    };
    let cfg = configure(command, o)?;
    let done = run(command, &cfg, &cache_root())?;
    let status = if done.reused { "reused" } else { "computed" };
    println!(
        "{command} {status} digest={} files={} out={}",
        done.record.digest,
        done.record.files.len(),
        done.out_dir.display()
    );
    Ok(())
}

fn error_line(kind: &str, message: &str) -> String {
    serde_json::json!({ "error": kind, "message": message }).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", error_line("usage", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_line(e.kind(), &e.to_string()));
            ExitCode::FAILURE
        }
    }
}
