use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use depthlab::corpus::run_corpus;
use depthlab::run::{self, Outcome, EXIT_USAGE};
use depthlab::session::{Built, Session};
use depthlab_core::invariants::SearchOptions;

#[derive(Parser)]
#[command(
    name = "depthlab",
    version,
    about = "Resolutions, Tor/Ext, depth and depth-formula checks"
)]
struct Cli {
    /// Write the JSON report to this path (`-` for stdout).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Seed for randomized instances.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingChoice {
    Quotient,
    Ambient,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Classic,
    Derived,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal free resolution and Betti numbers of a module.
    Resolve {
        file: PathBuf,
        module: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, value_enum, default_value = "quotient")]
        ring: RingChoice,
    },
    /// Tor_i(M, N) for i up to the bound.
    Tor {
        file: PathBuf,
        left: String,
        right: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Ext^i(M, N) for i up to the bound.
    Ext {
        file: PathBuf,
        left: String,
        right: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Depth of a module.
    Depth { file: PathBuf, module: String },
    /// Run a named instance of a session file.
    Check {
        file: PathBuf,
        instance: String,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Search for a reducing pd-sequence.
    SearchRedpd {
        file: PathBuf,
        module: String,
        #[arg(long, default_value_t = 1)]
        max_r: usize,
        #[arg(long, default_value_t = 1)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_ab: usize,
        #[arg(long, default_value_t = 0)]
        pd_bound: usize,
        #[arg(long, default_value_t = 256)]
        class_budget: usize,
    },
    /// Run the shipped corpus.
    Corpus {
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Glob over instance names, e.g. `veronese*`.
        #[arg(long)]
        name: Option<String>,
    },
}

fn load(file: &PathBuf) -> Result<Built, Outcome> {
    let text =
        std::fs::read_to_string(file).map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", file.display())))?;
    let session = Session::parse(&text).map_err(|e| Outcome::error(EXIT_USAGE, format!("{}:{e}", file.display())))?;
    session.build().map_err(Outcome::from)
}

fn dispatch(cli: &Cli) -> Result<Outcome, Outcome> {
    Ok(match &cli.command {
        Command::Resolve {
            file,
            module,
            bound,
            ring,
        } => run::cmd_resolve(&load(file)?, module, *bound, matches!(ring, RingChoice::Ambient))?,
        Command::Tor {
            file,
            left,
            right,
            bound,
        } => run::cmd_tor(&load(file)?, left, right, *bound, false)?,
        Command::Ext {
            file,
            left,
            right,
            bound,
        } => run::cmd_tor(&load(file)?, left, right, *bound, true)?,
        Command::Depth { file, module } => run::cmd_depth(&load(file)?, module)?,
        Command::Check {
            file,
            instance,
            bound,
            mode,
        } => {
            let built = load(file)?;
            let mut inst = built
                .session
                .instance(instance)
                .cloned()
                .ok_or_else(|| Outcome::error(EXIT_USAGE, format!("no instance named `{instance}`")))?;
            if let Some(b) = bound {
                inst.options.insert("bound".into(), b.to_string());
            }
            if let Some(m) = mode {
                let m = match m {
                    Mode::Classic => "classic",
                    Mode::Derived => "derived",
                };
                inst.options.insert("mode".into(), m.into());
            }
            run::run_instance(&built, &inst)
        }
        Command::SearchRedpd {
            file,
            module,
            max_r,
            max_n,
            max_ab,
            pd_bound,
            class_budget,
        } => {
            let mut opts = SearchOptions::new(*max_r, *max_n, *max_ab, *pd_bound);
            opts.class_budget = *class_budget;
            run::cmd_search(&load(file)?, module, &opts)?
        }
        Command::Corpus { all, name } => {
            let pattern = if *all { None } else { name.as_deref() };
            run_corpus(pattern, cli.seed)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = dispatch(&cli).unwrap_or_else(|e| e);
    let rendered = serde_json::to_string_pretty(&out.json).expect("reports serialize");
    match cli.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => println!("{rendered}"),
        Some(p) => {
            println!("{}", out.text);
            if let Err(e) = std::fs::write(p, rendered + "\n") {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        None if out.code == EXIT_USAGE => eprintln!("{}", out.text),
        None => println!("{}", out.text),
    }
    ExitCode::from(out.code as u8)
}
