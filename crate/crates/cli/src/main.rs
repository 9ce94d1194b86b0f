mod commands;
mod job;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::{Format, Outcome};
use job::Job;

#[derive(Parser)]
#[command(name = "repknit", version, about = "Repetitive algebras of Dynkin quivers: AR windows, Hom tables, orbits and strata")]
struct Cli {
    /// Job config (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Level window `n_min:n_max`, overriding the config.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write artifacts to this directory instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Quiver, Γ̂ window and repetitive presentation.
    Describe,
    /// The knitted AR window.
    Knit,
    /// Module classes of the configured dimension vector with their pairs.
    Orbits,
    /// V-values of every class, rows by slot.
    BijectionTable,
    /// Degeneration order on the classes.
    Poset,
    /// Class to monomial and back.
    Monomial,
    /// Graded basis and presentation of the corner algebra at `sigma`.
    SigmaAlgebra,
    /// Hom dimensions between interior window vertices.
    Hom,
    /// Engine against oracle, plus invariant checks.
    Selfcheck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Describe => "describe",
            Command::Knit => "knit",
            Command::Orbits => "orbits",
            Command::BijectionTable => "bijection-table",
            Command::Poset => "poset",
            Command::Monomial => "monomial",
            Command::SigmaAlgebra => "sigma-algebra",
            Command::Hom => "hom",
            Command::Selfcheck => "selfcheck",
        }
    }

    fn default_format(self) -> Format {
        match self {
            Command::Poset => Format::Dot,
            Command::Monomial => Format::Json,
            _ => Format::Tsv,
        }
    }
}

fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected n_min:n_max")?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("bad n_min `{a}`"))?;
    let hi: i64 = b.trim().parse().map_err(|_| format!("bad n_max `{b}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let path = cli.config.as_ref().context("--config is required")?;
    let mut job = Job::load(path)?;
    if let Some(w) = cli.window {
        job.config.window = Some(w);
    }
    let seed = cli.seed.or(job.config.seed).unwrap_or(0);
    let format = cli.format.unwrap_or(cli.command.default_format());
    log::info!("{} on {} ({:?})", cli.command.name(), job.q.dynkin_type(), format);
    match cli.command {
        Command::Describe => commands::describe(&job, format),
        Command::SigmaAlgebra => commands::sigma_algebra(&job, format),
        Command::Selfcheck => commands::run_selfcheck(&job, seed, format),
        cmd => {
            let w = job.ar_window()?;
            log::debug!("window levels {:?}, {} vertices", w.range(), w.vertices().len());
            match cmd {
                Command::Knit => commands::knit(&w, format),
                Command::Orbits => commands::orbits(&job, &w, format),
                Command::BijectionTable => commands::bijection(&job, &w, format),
                Command::Poset => commands::poset(&job, &w, format),
                Command::Monomial => commands::monomial(&job, &w, format),
                Command::Hom => commands::hom(&w, format),
                _ => unreachable!("handled above"),
            }
        }
    }
    .map(|o| rename(o, cli.command.name(), &job))
}

/// Applies file names from the config's `outputs`, looked up by artifact
/// stem and, for the first artifact, by subcommand.
fn rename(mut o: Outcome, cmd: &str, job: &Job) -> Outcome {
    for (k, a) in o.artifacts.iter_mut().enumerate() {
        let stem = a.name.rsplit_once('.').map_or(a.name.as_str(), |(s, _)| s).to_string();
        let named = job.config.outputs.get(&stem).or_else(|| if k == 0 { job.config.outputs.get(cmd) } else { None });
        if let Some(n) = named {
            a.name = n.clone();
        }
    }
    o
}

fn emit(cli: &Cli, o: &Outcome) -> Result<()> {
    match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for a in &o.artifacts {
                let p = dir.join(&a.name);
                std::fs::write(&p, &a.content).with_context(|| format!("writing {}", p.display()))?;
                log::info!("wrote {}", p.display());
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for a in &o.artifacts {
                stdout.write_all(a.content.as_bytes())?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("REPKNIT_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli, &o).map(|()| o.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
