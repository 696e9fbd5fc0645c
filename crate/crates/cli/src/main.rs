//! `recovery`: runs the library's computations and emits JSON or text reports.
//!
//! Exit codes: 0 on success, 1 when `selftest` (or `--strict`) sees a failed
//! check, 2 when a module refuses the computation, 3 on malformed input.

mod commands;
mod parse;
mod report;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use report::{CliError, Report, EXIT_BAD_INPUT, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "recovery", version, about = "Recover representations from derived representations, exactly")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "RECOVERY_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report a wall time of zero so that repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Exit with status 1 when any check fails.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum Command {
    /// Recover W from the weights of Sym^k W.
    RecoverSym(commands::RecoverArgs),
    /// Recover W from the weights of the k-th tensor power of W.
    RecoverTensor(commands::RecoverArgs),
    /// All small modules sharing the k-th exterior power of the input.
    ExtSearch(commands::ExtSearchArgs),
    /// Sweep tensor products of irreducibles for factorization collisions.
    Factorize(commands::FactorizeArgs),
    /// Irreducibles with the same adjoint weights as the given one.
    AdjointFibre(commands::AdjointArgs),
    /// Search for a linear character twisting one representation into another.
    TwistSearch(commands::TwistArgs),
    /// The Heisenberg pair: equal k-th powers without a twist.
    Heisenberg(commands::HeisenbergArgs),
    /// Restriction to a normal subgroup and the action on components.
    Clifford(commands::CliffordArgs),
    /// Twisted tensor product over coset lifts, computed for two lift systems.
    Asai(commands::AsaiArgs),
    /// The cocycle of two representations agreeing on a subgroup.
    Cocycle(commands::CocycleArgs),
    /// Component density, agreement density, sampling and the mean-square audit.
    Density(commands::DensityArgs),
    /// Saturation of a sublattice of Z^n.
    LatticeSaturate(commands::SaturateArgs),
    /// Lift a map of character lattices through an extension.
    LatticeLift(commands::LiftArgs),
    /// Run the acceptance criteria.
    Selftest(commands::SelftestArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::RecoverSym(_) => "recover-sym",
            Command::RecoverTensor(_) => "recover-tensor",
            Command::ExtSearch(_) => "ext-search",
            Command::Factorize(_) => "factorize",
            Command::AdjointFibre(_) => "adjoint-fibre",
            Command::TwistSearch(_) => "twist-search",
            Command::Heisenberg(_) => "heisenberg",
            Command::Clifford(_) => "clifford",
            Command::Asai(_) => "asai",
            Command::Cocycle(_) => "cocycle",
            Command::Density(_) => "density",
            Command::LatticeSaturate(_) => "lattice-saturate",
            Command::LatticeLift(_) => "lattice-lift",
            Command::Selftest(_) => "selftest",
        }
    }

    fn run(&self, common: &Common) -> Result<report::Outcome, CliError> {
        match self {
            Command::RecoverSym(a) => commands::recover(a, commands::Power::Sym),
            Command::RecoverTensor(a) => commands::recover(a, commands::Power::Tensor),
            Command::ExtSearch(a) => commands::ext_search(a),
            Command::Factorize(a) => commands::factorize(a),
            Command::AdjointFibre(a) => commands::adjoint_fibre(a),
            Command::TwistSearch(a) => commands::twist_search(a),
            Command::Heisenberg(a) => commands::heisenberg(a),
            Command::Clifford(a) => commands::clifford(a),
            Command::Asai(a) => commands::asai(a, common.seed),
            Command::Cocycle(a) => commands::cocycle(a),
            Command::Density(a) => commands::density(a, common.seed),
            Command::LatticeSaturate(a) => commands::lattice_saturate(a),
            Command::LatticeLift(a) => commands::lattice_lift(a),
            Command::Selftest(a) => commands::selftest(a, common.seed),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                std::process::exit(EXIT_OK);
            }
            let msg = e.to_string();
            let first = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            std::process::exit(EXIT_BAD_INPUT);
        }
    };
    std::process::exit(run(&cli));
}

fn run(cli: &Cli) -> i32 {
    let start = Instant::now();
    let outcome = match cli.command.run(&cli.common) {
        Ok(o) => Ok(o),
        Err(CliError::BadInput(msg)) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            return EXIT_BAD_INPUT;
        }
        Err(CliError::Domain { name, message }) => Err((name, message)),
    };
    let wall_time_ms = if cli.common.deterministic { 0 } else { start.elapsed().as_millis() };
    let config = json!({
        "command": cli.command.name(),
        "params": serde_json::to_value(&cli.command).expect("serializable arguments"),
        "seed": cli.common.seed,
        "format": cli.common.format,
        "output": cli.common.output,
        "deterministic": cli.common.deterministic,
        "strict": cli.common.strict,
    });
    let report = Report { command: cli.command.name().to_string(), config, outcome, wall_time_ms };
    let strict = cli.common.strict || matches!(cli.command, Command::Selftest(_));
    let code = report.exit_code(strict);
    let text = match cli.common.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.to_json()).expect("json")),
        Format::Text => report.to_text(),
    };
    let written = match &cli.common.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("writing {path}: {e}")),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_BAD_INPUT;
    }
    code
}
