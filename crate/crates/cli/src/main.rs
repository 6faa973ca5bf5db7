use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rupert_cli::commands::{self, AllowableSource};
use rupert_cli::{check, report, CliError, Exit, SurveyOptions, Theorem};
use rupert_core::passage::{default_d_grid, SearchConfig};
use rupert_core::sections::DEFAULT_ORIENTATION_CAP;

/// Local Rupert and reverse-Rupert certificates for convex polyhedra.
#[derive(Parser)]
#[command(name = "rupert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    Auto,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::A => Theorem::A,
            TheoremArg::B => Theorem::B,
            TheoremArg::Auto => Theorem::Auto,
        }
    }
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// First rotation angle tried (radians).
    #[arg(long, default_value_t = 1e-2)]
    delta0: f64,
    /// Factor applied to the angle after each failed round.
    #[arg(long, default_value_t = 0.5)]
    shrink: f64,
    /// Number of shrink rounds after the first.
    #[arg(long, default_value_t = 40)]
    max_retries: u32,
    /// Margin a certificate must exceed.
    #[arg(long, default_value_t = rupert_core::EPS_GEOM)]
    tolerance: f64,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            delta0: self.delta0,
            shrink: self.shrink,
            max_retries: self.max_retries,
            d_grid: default_d_grid(),
            tolerance: self.tolerance,
            orientation_cap: DEFAULT_ORIENTATION_CAP,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Certify a catalog solid or OFF file; exit 0 certified, 2 not certified, 1 bad input.
    Certify {
        /// Catalog name (e.g. cube, prism-6) or path to an OFF file.
        input: String,
        #[arg(long, value_enum, default_value = "auto")]
        theorem: TheoremArg,
        #[command(flatten)]
        search: SearchArgs,
        /// Certificate JSON path (stdout if omitted).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run every catalog solid and compare with the expected outcomes.
    Survey {
        /// Directory for survey.txt, survey.json and certificates/.
        #[arg(long, short)]
        output: PathBuf,
        #[arg(long)]
        include_gyrobicupola: bool,
        /// Record per-solid times (outputs then differ between runs).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Draw the shadow before and after a rotation as SVG.
    Shadow {
        input: String,
        /// Rotation axis as x,y,z.
        #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
        axis: String,
        /// Rotation angle (radians).
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        angle: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Draw the polygonal or prism section used by the certifier as SVG.
    Section {
        input: String,
        #[arg(long, value_enum, default_value = "auto")]
        theorem: TheoremArg,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Draw the allowable axes of one polygon vertex as SVG.
    Allowable {
        /// Solid whose polygonal section supplies the polygon.
        input: Option<String>,
        /// Flat polygon instead of a solid, as "x,y x,y ...".
        #[arg(long, conflicts_with = "input", allow_hyphen_values = true)]
        polygon: Option<String>,
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        #[arg(long, default_value_t = 0.2)]
        delta: f64,
        /// Grid cells per side (at least 16).
        #[arg(long, default_value_t = 128)]
        resolution: usize,
        /// Use the solid's shadow when it has no polygonal section.
        #[arg(long)]
        experimental: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write a catalog solid (or re-write an OFF file) as OFF with its faces.
    Export {
        input: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List catalog names.
    List,
    /// Seeded spot checks of the spherical formulas and the verifier.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn emit(output: Option<&PathBuf>, body: &str) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(p, body).map_err(|e| CliError::io(p, e)),
        None => io::stdout().write_all(body.as_bytes()).map_err(|e| CliError::io("<stdout>".as_ref(), e)),
    }
}

fn run(cmd: Command) -> Result<Exit, CliError> {
    let mut stdout = io::stdout();
    let mut stderr = io::stderr();
    match cmd {
        Command::Certify { input, theorem, search, output } => {
            commands::certify(&input, theorem.into(), &search.config(), output.as_deref(), &mut stdout, &mut stderr)
        }
        Command::Survey { output, include_gyrobicupola, timings, search } => {
            let cfg = search.config();
            cfg.validate()?;
            let opts = SurveyOptions { config: cfg, include_gyrobicupola, timings };
            let start = Instant::now();
            let rep = report::write_survey(&opts, &output)?;
            let _ = stdout.write_all(report::format_table(&rep.solids).as_bytes());
            eprintln!("survey of {} solids took {:.2} s", rep.solids.len(), start.elapsed().as_secs_f64());
            Ok(if rep.mismatches == 0 { Exit::Success } else { Exit::NotCertified })
        }
        Command::Shadow { input, axis, angle, output } => {
            let (name, q) = commands::load_solid(&input)?;
            let doc = commands::shadow_document(&name, &q, commands::parse_vector(&axis)?, angle)?;
            emit(output.as_ref(), &doc)?;
            Ok(Exit::Success)
        }
        Command::Section { input, theorem, output } => {
            let (name, q) = commands::load_solid(&input)?;
            match commands::section_document(&name, &q, theorem.into(), &SearchConfig::default())? {
                Some(doc) => {
                    emit(output.as_ref(), &doc)?;
                    Ok(Exit::Success)
                }
                None => {
                    eprintln!("{name}: no section found");
                    Ok(Exit::NotCertified)
                }
            }
        }
        Command::Allowable { input, polygon, vertex, delta, resolution, experimental, output } => {
            let source = match (&input, polygon) {
                (_, Some(p)) => AllowableSource::Polygon(commands::parse_polygon(&p)?),
                (Some(i), None) => AllowableSource::Solid { input: i, shadow_fallback: experimental },
                (None, None) => return Err(CliError::Usage("give a solid or --polygon".into())),
            };
            match commands::allowable_document(source, vertex, delta, resolution, &SearchConfig::default())? {
                Some(doc) => {
                    emit(output.as_ref(), &doc)?;
                    Ok(Exit::Success)
                }
                None => {
                    eprintln!("no polygonal section; pass --experimental to use the shadow");
                    Ok(Exit::NotCertified)
                }
            }
        }
        Command::Export { input, output } => {
            let (_, q) = commands::load_solid(&input)?;
            emit(output.as_ref(), &commands::export_off(&q))?;
            Ok(Exit::Success)
        }
        Command::List => {
            for name in rupert_core::catalog::known_names() {
                let _ = writeln!(stdout, "{name}");
            }
            Ok(Exit::Success)
        }
        Command::Check { seed, samples } => {
            let ok = check::report(&check::run(seed, samples), &mut stdout);
            Ok(if ok { Exit::Success } else { Exit::NotCertified })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // help and version are not errors; usage errors are bad input
            return ExitCode::from(if e.use_stderr() { Exit::InputError.code() as u8 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(exit) => ExitCode::from(exit.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Exit::InputError.code() as u8)
        }
    }
}
