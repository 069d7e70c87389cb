//! Thin command-line front end: parses arguments, hands the typed config
//! to the library, prints the result, and maps errors to exit code 2.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qgame::protocol::{TableMode, DEFAULT_SWEEP_GRID};
use qgame::report::{
    parse_state, parse_strategy, report_tolerance, resolve_weights, run, GameJson, GameSource,
    MatrixSource, OutputFormat, ProtocolConfig, RunConfig, SampledConfig, SpecChoice,
};

#[derive(Parser)]
#[command(
    name = "qgame",
    about = "Two-qubit quantum game engine and equilibrium analyzer",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpecKind {
    Ewl,
    Shared,
    Custom,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatKind {
    Table,
    Json,
    Csv,
}

impl From<FormatKind> for OutputFormat {
    fn from(f: FormatKind) -> Self {
        match f {
            FormatKind::Table => OutputFormat::Table,
            FormatKind::Json => OutputFormat::Json,
            FormatKind::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeKind {
    AsPublished,
    Committed,
}

#[derive(Args)]
struct ProtocolArgs {
    /// Which protocol to play on
    #[arg(long, value_enum, default_value = "ewl")]
    spec: SpecKind,
    /// Dilemma reward for mutual cooperation
    #[arg(long, default_value_t = 3.0)]
    a: f64,
    /// Dilemma temptation payoff
    #[arg(long, default_value_t = 5.0)]
    b: f64,
    /// Dilemma punishment payoff
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Explicit payoff weights wA00,wA01,wA10,wA11,wB00,wB01,wB10,wB11
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    weights: Option<Vec<f64>>,
    /// Custom initial state as re,im pairs per amplitude (for --spec custom)
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    state: Option<Vec<f64>>,
    /// Apply the disentangling gate before measurement (for --spec custom)
    #[arg(long)]
    disentangle: bool,
}

impl ProtocolArgs {
    fn build(&self) -> qgame::Result<ProtocolConfig> {
        let weights = resolve_weights(self.a, self.b, self.c, self.weights.as_deref())?;
        let spec = match self.spec {
            SpecKind::Ewl => {
                self.reject_custom_flags("ewl")?;
                SpecChoice::Ewl
            }
            SpecKind::Shared => {
                self.reject_custom_flags("shared")?;
                SpecChoice::Shared
            }
            SpecKind::Custom => {
                let values = self.state.as_deref().ok_or_else(|| {
                    qgame::Error::InvalidConfig(
                        "--spec custom requires --state with 8 comma-separated values".into(),
                    )
                })?;
                SpecChoice::Custom {
                    state: parse_state(values)?,
                    disentangle: self.disentangle,
                }
            }
        };
        Ok(ProtocolConfig { spec, weights })
    }

    fn reject_custom_flags(&self, name: &str) -> qgame::Result<()> {
        if self.state.is_some() || self.disentangle {
            return Err(qgame::Error::InvalidConfig(format!(
                "--state/--disentangle only apply to --spec custom, not --spec {name}"
            )));
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Play one strategy pair and print the exact expected payoffs
    Play {
        #[command(flatten)]
        protocol: ProtocolArgs,
        /// Alice's strategy: C, D, Q, or R:p
        #[arg(long)]
        alice: String,
        /// Bob's strategy: C, D, Q, or R:p
        #[arg(long)]
        bob: String,
        /// Also print a Monte Carlo estimate (demonstration only)
        #[arg(long, requires = "seed")]
        sampled: bool,
        /// Sample count for --sampled
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Random seed, required by and only valid with --sampled
        #[arg(long, requires = "sampled")]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatKind,
        /// Also write the output to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the induced payoff matrix over {C,D,Q}, or a combined 4x4 table
    Matrix {
        #[command(flatten)]
        protocol: ProtocolArgs,
        /// Build the combined table bordered by strategy R instead
        #[arg(long, value_enum)]
        mode: Option<ModeKind>,
        /// Alice's committed mixing probability (committed mode)
        #[arg(long)]
        p: Option<f64>,
        /// Bob's committed mixing probability (committed mode)
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pure/mixed equilibria and dominance of a game
    Equilibria {
        #[command(flatten)]
        protocol: ProtocolArgs,
        /// Analyze a game from a JSON file (as emitted by `matrix --format json`)
        #[arg(long)]
        game: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<ModeKind>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        /// Largest support size for mixed enumeration (default: min(rows, cols))
        #[arg(long)]
        max_support: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the closed-form payoff of R(p) vs R(q) over the unit square
    Vbsweep {
        /// Points per axis
        #[arg(long, default_value_t = DEFAULT_SWEEP_GRID)]
        grid: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full claim audit; exits 1 if any non-flagged claim mismatches
    Reproduce {
        /// Points per axis for the payoff-identity sweep
        #[arg(long, default_value_t = DEFAULT_SWEEP_GRID)]
        grid: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn matrix_source(
    protocol: &ProtocolArgs,
    mode: Option<ModeKind>,
    p: Option<f64>,
    q: Option<f64>,
) -> qgame::Result<MatrixSource> {
    match mode {
        None => {
            if p.is_some() || q.is_some() {
                return Err(qgame::Error::InvalidConfig(
                    "--p/--q only apply to --mode committed".into(),
                ));
            }
            Ok(MatrixSource::Induced(protocol.build()?))
        }
        Some(ModeKind::AsPublished) => {
            if p.is_some() || q.is_some() {
                return Err(qgame::Error::InvalidConfig(
                    "--p/--q only apply to --mode committed".into(),
                ));
            }
            Ok(MatrixSource::Combined {
                mode: TableMode::AsPublished,
                r_params: None,
            })
        }
        Some(ModeKind::Committed) => {
            let (p, q) = match (p, q) {
                (Some(p), Some(q)) => (p, q),
                _ => {
                    return Err(qgame::Error::InvalidConfig(
                        "--mode committed requires both --p and --q".into(),
                    ))
                }
            };
            Ok(MatrixSource::Combined {
                mode: TableMode::Committed,
                r_params: Some((p, q)),
            })
        }
    }
}

fn build_config(command: &Command) -> qgame::Result<(RunConfig, Option<PathBuf>)> {
    match command {
        Command::Play {
            protocol,
            alice,
            bob,
            sampled,
            samples,
            seed,
            format,
            out,
        } => Ok((
            RunConfig::Play {
                protocol: protocol.build()?,
                alice: parse_strategy(alice)?,
                bob: parse_strategy(bob)?,
                sampled: sampled.then(|| SampledConfig {
                    samples: *samples,
                    seed: seed.expect("clap enforces --seed with --sampled"),
                }),
                format: (*format).into(),
            },
            out.clone(),
        )),
        Command::Matrix {
            protocol,
            mode,
            p,
            q,
            format,
            out,
        } => Ok((
            RunConfig::Matrix {
                source: matrix_source(protocol, *mode, *p, *q)?,
                format: (*format).into(),
            },
            out.clone(),
        )),
        Command::Equilibria {
            protocol,
            game,
            mode,
            p,
            q,
            max_support,
            format,
            out,
        } => {
            let source = match game {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        qgame::Error::InvalidConfig(format!("cannot read {}: {e}", path.display()))
                    })?;
                    GameSource::Json(GameJson::parse(&text)?)
                }
                None => GameSource::Matrix(matrix_source(protocol, *mode, *p, *q)?),
            };
            Ok((
                RunConfig::Equilibria {
                    source,
                    max_support: *max_support,
                    format: (*format).into(),
                },
                out.clone(),
            ))
        }
        Command::Vbsweep { grid, format, out } => Ok((
            RunConfig::VbSweep {
                grid: *grid,
                format: (*format).into(),
            },
            out.clone(),
        )),
        Command::Reproduce { grid, format, out } => Ok((
            RunConfig::Reproduce {
                grid: *grid,
                tolerance: report_tolerance()?,
                format: (*format).into(),
            },
            out.clone(),
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (config, out_path) = match build_config(&cli.command) {
        Ok(built) => built,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&config) {
        Ok(result) => {
            print!("{}", result.output);
            if let Some(path) = out_path {
                let payload = result.file_output.as_ref().unwrap_or(&result.output);
                if let Err(e) = std::fs::write(&path, payload) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(result.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
