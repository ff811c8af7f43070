use clap::{Parser, Subcommand};
use equisolid::report::{self, Options};
use equisolid::spec_format::parse_spec;
use std::process::ExitCode;
use std::time::Instant;

/// Exact solidity classification of rational surfaces under finite group
/// actions, with machine-checkable certificates.
#[derive(Parser)]
#[command(name = "equisolid", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Skip the on-disk result cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide solidity and print the verdict with its certificate.
    Classify {
        #[command(flatten)]
        input: InputArgs,
    },
    /// All orbits up to a length bound, with witnesses and annotations.
    Orbits {
        #[command(flatten)]
        input: InputArgs,
        /// Largest orbit length to report.
        #[arg(long, default_value_t = 8)]
        max_length: usize,
    },
    /// Pointwise-fixed locus of the group.
    FixedPoints {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Sarkisov link inventory (tetrahedral/octahedral plane actions).
    Links {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Order, named identification, and fingerprint.
    Identify {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Goursat decomposition of the ruling-preserving part (quadric inputs).
    Goursat {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Classify every built-in catalog entry.
    Catalog,
}

#[derive(clap::Args)]
struct InputArgs {
    /// Path to a group-spec file.
    #[arg(conflicts_with = "entry", required_unless_present = "entry")]
    spec: Option<std::path::PathBuf>,
    /// Use a built-in catalog entry instead of a file.
    #[arg(long)]
    entry: Option<String>,
}

impl InputArgs {
    fn load(&self) -> Result<equisolid::spec_format::GroupSpec, equisolid::error::Error> {
        if let Some(name) = &self.entry {
            return equisolid::catalog::parse_entry(name);
        }
        let path = self.spec.as_ref().expect("clap enforces spec xor entry");
        let text = std::fs::read_to_string(path)?;
        parse_spec(&text)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let options = Options { no_cache: cli.no_cache, ..Default::default() };
    let outcome = match &cli.command {
        Command::Classify { input } => run_on(input, "classify", options),
        Command::Orbits { input, max_length } => {
            let options = Options { max_length: Some(*max_length), ..options };
            run_on(input, "orbits", options)
        }
        Command::FixedPoints { input } => run_on(input, "fixed-points", options),
        Command::Links { input } => run_on(input, "links", options),
        Command::Identify { input } => run_on(input, "identify", options),
        Command::Goursat { input } => run_on(input, "goursat", options),
        Command::Catalog => report::catalog_report(&options).map(|r| {
            print!("{}", report::render_report(&r));
            0
        }),
    };
    // timing goes to stderr so stdout stays byte-identical across runs
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run_on(
    input: &InputArgs,
    command: &str,
    options: Options,
) -> Result<i32, equisolid::error::Error> {
    let spec = input.load()?;
    let report = report::run_command(command, &spec, &options)?;
    print!("{}", report::render_report(&report));
    Ok(report::exit_code_for(&report))
}
