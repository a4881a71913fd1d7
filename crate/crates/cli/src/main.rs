//! `voa`: command-line front end to the modular data, extension and orbifold
//! computations.

mod commands;
mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use table::Format;

#[derive(Parser)]
#[command(
    name = "voa",
    version,
    about = "Affine VOA modular data, extensions and orbifold bookkeeping"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "tsv")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kac-Peterson S-matrix of an algebra.
    Smatrix {
        #[arg(long)]
        spec: String,
    },
    /// Fusion product of two modules.
    Fusion {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Quantum dimension of a module.
    Qdim {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        label: String,
    },
    /// Integrable modules with conformal weights, dimensions and quantum dimensions.
    Modules {
        #[arg(long)]
        spec: String,
        /// Only modules of integral conformal weight at least 2.
        #[arg(long)]
        integral: bool,
    },
    /// Simple current extensions.
    #[command(subcommand)]
    Ext(ExtCommand),
    /// Inner automorphisms exp(2πi u(0)).
    #[command(subcommand)]
    Twist(TwistCommand),
    /// Order-two orbifold bookkeeping.
    #[command(subcommand)]
    Orbifold(OrbifoldCommand),
    /// Regenerate the reference tables.
    Golden {
        /// Write every table.
        #[arg(long, required = true)]
        all: bool,
        #[arg(long, default_value = "golden")]
        dir: std::path::PathBuf,
    },
}

#[derive(Subcommand)]
enum ExtCommand {
    /// Irreducible modules of the extension generated by a simple current.
    Classify {
        #[arg(long)]
        base: String,
        #[arg(long = "gen")]
        generator: String,
        #[arg(long)]
        untwisted_only: bool,
    },
}

#[derive(Args)]
struct TwistArgs {
    #[arg(long)]
    spec: String,
    /// Twist vector in Dynkin labels, e.g. "[0,1/2,0,0,0]x[1/2,0]".
    #[arg(long)]
    u: String,
}

#[derive(Subcommand)]
enum TwistCommand {
    /// Conformal weights, pairings and twisted conformal weights.
    Report {
        #[command(flatten)]
        twist: TwistArgs,
        /// Modules to report; defaults to the integral-weight census.
        #[arg(long)]
        label: Vec<String>,
    },
    /// Norm, order and fixed-point subalgebra.
    Fixed {
        #[command(flatten)]
        twist: TwistArgs,
    },
}

#[derive(Subcommand)]
enum OrbifoldCommand {
    /// Dimension bookkeeping for the six bundled cases.
    Table6,
    /// Integral-weight census with twisted conformal weights.
    Census {
        #[arg(long)]
        spec: String,
        /// Twist vector; defaults to the bundled one for the algebra.
        #[arg(long)]
        u: Option<String>,
        /// Add the published values and a match column.
        #[arg(long)]
        compare: bool,
    },
    /// Non-negative integer solutions of the weight-two multiplicity system.
    Multiplicities {
        #[arg(long, default_value = "C5_3+G2_2+A1_1")]
        spec: String,
    },
    /// Quantum dimension, conformal weight and weight-one checks on mirror pairs.
    MirrorCheck,
    /// Squared quantum dimensions of extension modules and the balanced-partition test.
    Partition {
        #[arg(long, default_value = "A4_5")]
        base: String,
        #[arg(long = "gen", default_value = "[5,0,0,0]")]
        generator: String,
        /// Radicand of the quadratic field.
        #[arg(long, default_value_t = 5)]
        field: i64,
    },
}

fn progress(name: &str, row: usize, rows: usize) {
    if rows < 200 {
        return;
    }
    let step = (rows / 10).max(1);
    if row.is_multiple_of(step) || row == rows {
        eprintln!("{name}: S-matrix row {row}/{rows}");
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    voa_core::modular::set_progress_reporter(progress);
    let t = match cli.command {
        Command::Smatrix { spec } => commands::smatrix(&spec)?,
        Command::Fusion { spec, a, b } => commands::fusion(&spec, &a, &b)?,
        Command::Qdim { spec, label } => {
            let x = commands::qdim(&spec, &label)?;
            match cli.format {
                Format::Tsv => println!("{x}"),
                Format::Json => println!("{}", serde_json::json!({ "qdim": x })),
            }
            return Ok(());
        }
        Command::Modules { spec, integral } => commands::modules(&spec, integral)?,
        Command::Ext(ExtCommand::Classify {
            base,
            generator,
            untwisted_only,
        }) => commands::ext_classify(&base, &generator, untwisted_only)?,
        Command::Twist(TwistCommand::Report { twist, label }) => {
            commands::twist_report(&twist.spec, &twist.u, &label)?
        }
        Command::Twist(TwistCommand::Fixed { twist }) => {
            commands::twist_fixed(&twist.spec, &twist.u)?
        }
        Command::Orbifold(o) => match o {
            OrbifoldCommand::Table6 => commands::table6()?,
            OrbifoldCommand::Census { spec, u, compare } => {
                commands::census(&spec, u.as_deref(), compare)?
            }
            OrbifoldCommand::Multiplicities { spec } => commands::multiplicities(&spec)?,
            OrbifoldCommand::MirrorCheck => {
                let (t, ok) = commands::mirror_check()?;
                emit(&t, cli.format)?;
                anyhow::ensure!(ok, "mirror check failed");
                return Ok(());
            }
            OrbifoldCommand::Partition {
                base,
                generator,
                field,
            } => commands::partition(&base, &generator, field)?,
        },
        Command::Golden { dir, .. } => {
            for name in commands::write_golden(&dir, cli.format)? {
                eprintln!("wrote {}", name.display());
            }
            return Ok(());
        }
    };
    emit(&t, cli.format)
}

fn emit(t: &table::Table, format: Format) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(t.render(format).as_bytes())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
