use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use barychi::{
    parse_components, parse_fraction, parse_fraction_list, parse_instance_document, render_text,
    run, selftest, CliError, MethodChoice, PlacementChoice, Request, TwoComponents, EXIT_INPUT,
    EXIT_MISMATCH, EXIT_OK,
};
use barychi_core::{ProblemInstance, SpaceKind};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "barychi",
    version,
    about = "Exact Euler characteristics and degrees of weighted barycenter spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute chi_c and the degree with one or all methods.
    Compute {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// Include per-subset terms.
        #[arg(long)]
        breakdown: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dump the truncated generating series.
    Series {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Truncation bound; defaults to rho.
        #[arg(long)]
        bound: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the engines with face enumeration on a finite space.
    Oracle {
        #[arg(long)]
        vertices: usize,
        /// Weights of the first vertices; the rest weigh 1.
        #[arg(long, default_value = "")]
        weights: String,
        #[arg(long)]
        rho: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Homotopy type for at most two singular points.
    Classify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, requires_all = ["chi_a", "chi_b"])]
        placement: Option<PlacementArg>,
        #[arg(long, allow_negative_numbers = true, requires = "placement")]
        chi_a: Option<i64>,
        #[arg(long, allow_negative_numbers = true, requires = "placement")]
        chi_b: Option<i64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the randomized cross-check corpora.
    Selftest {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        /// Defaults to a clock-derived seed, which is printed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, allow_negative_numbers = true, conflicts_with = "input")]
    chi_c: Option<i64>,
    /// Comma-separated fractions such as `3/10,0.4`.
    #[arg(long, default_value = "", conflicts_with = "input")]
    weights: String,
    #[arg(long, conflicts_with = "input")]
    rho: Option<String>,
    #[arg(long, value_enum, conflicts_with = "input")]
    space: Option<SpaceArg>,
    /// `chi:compact|open[:i,j]` per component, separated by `;`.
    #[arg(long, conflicts_with = "input")]
    components: Option<String>,
    /// JSON instance document; `-` reads stdin.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    All,
    Direct,
    Strata,
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Compact,
    Lc,
    EvenInterior,
    Union,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlacementArg {
    OneEach,
    BothFirst,
}

impl InstanceArgs {
    fn resolve(&self) -> Result<ProblemInstance, CliError> {
        if let Some(path) = &self.input {
            let text = if path == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| document_error(path, e))?;
                buf
            } else {
                fs::read_to_string(path).map_err(|e| document_error(path, e))?
            };
            return parse_instance_document(path, &text);
        }
        let chi_c = self.chi_c.ok_or_else(|| missing("--chi-c"))?;
        let rho = parse_fraction(
            "--rho",
            self.rho.as_deref().ok_or_else(|| missing("--rho"))?,
        )?;
        let weights = parse_fraction_list("--weights", &self.weights)?;
        let mut instance = ProblemInstance::new(chi_c, weights, rho);
        if let Some(spec) = &self.components {
            instance = instance
                .with_kind(SpaceKind::UnionOfBasic)
                .with_components(parse_components(spec)?);
        }
        if let Some(space) = self.space {
            instance = instance.with_kind(match space {
                SpaceArg::Compact => SpaceKind::Compact,
                SpaceArg::Lc => SpaceKind::LocallyClosedBasic,
                SpaceArg::EvenInterior => SpaceKind::InteriorEvenDimManifold,
                SpaceArg::Union => SpaceKind::UnionOfBasic,
            });
        }
        Ok(instance)
    }
}

fn missing(flag: &str) -> CliError {
    CliError::Flag {
        flag: flag.into(),
        message: "required unless --input is given".into(),
    }
}

fn document_error(path: &str, e: std::io::Error) -> CliError {
    CliError::Document {
        path: path.into(),
        message: e.to_string(),
    }
}

fn build_request(command: &Command) -> Result<(Request, bool), CliError> {
    Ok(match command {
        Command::Compute {
            instance,
            method,
            breakdown,
            output,
        } => (
            Request::Compute {
                instance: instance.resolve()?,
                method: match method {
                    MethodArg::All => MethodChoice::All,
                    MethodArg::Direct => MethodChoice::Direct,
                    MethodArg::Strata => MethodChoice::Strata,
                    MethodArg::Series => MethodChoice::Series,
                },
                breakdown: *breakdown,
            },
            output.json,
        ),
        Command::Series {
            instance,
            bound,
            output,
        } => (
            Request::Series {
                instance: instance.resolve()?,
                bound: bound
                    .as_deref()
                    .map(|b| parse_fraction("--bound", b))
                    .transpose()?,
            },
            output.json,
        ),
        Command::Oracle {
            vertices,
            weights,
            rho,
            output,
        } => (
            Request::Oracle {
                vertices: *vertices,
                weights: parse_fraction_list("--weights", weights)?,
                rho: parse_fraction("--rho", rho)?,
            },
            output.json,
        ),
        Command::Classify {
            instance,
            placement,
            chi_a,
            chi_b,
            output,
        } => {
            let two_components = match (placement, chi_a, chi_b) {
                (Some(p), Some(a), Some(b)) => Some(TwoComponents {
                    placement: match p {
                        PlacementArg::OneEach => PlacementChoice::OneEach,
                        PlacementArg::BothFirst => PlacementChoice::BothFirst,
                    },
                    chi_a: *a,
                    chi_b: *b,
                }),
                _ => None,
            };
            (
                Request::Classify {
                    instance: instance.resolve()?,
                    two_components,
                },
                output.json,
            )
        }
        Command::Selftest { .. } => unreachable!("selftest has no report"),
    })
}

fn clock_seed() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; 2 is reserved for mismatches
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    if let Command::Selftest { cases, seed } = cli.command {
        let seed = seed.unwrap_or_else(clock_seed);
        println!("seed {seed}");
        let summary = selftest(cases, seed);
        println!(
            "engine corpus: {} instances, oracle corpus: {} finite spaces",
            summary.engine_cases, summary.oracle_cases
        );
        for f in &summary.failures {
            println!("MISMATCH {f}");
        }
        return if summary.passed() {
            println!("selftest: PASS");
            ExitCode::from(EXIT_OK)
        } else {
            println!("selftest: FAIL ({} mismatches)", summary.failures.len());
            ExitCode::from(EXIT_MISMATCH)
        };
    }

    let outcome = build_request(&cli.command).and_then(|(request, json)| {
        let report = run(&request)?;
        Ok((report, json))
    });
    match outcome {
        Ok((report, json)) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", render_text(&report));
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
