use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mixbgk::discrepancy::l1_relative_fields;
use mixbgk::io::{write_report, FieldCsv};
use mixbgk::kinetic::Stepper;
use mixbgk::scenarios::{self, Overrides, ScenarioConfig, Summary};
use mixbgk::Model;

#[derive(Parser)]
#[command(name = "mixbgk", version, about = "BGK gas-mixture scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in scenario or a scenario file.
    Run {
        scenario: String,
        /// Comma-separated Knudsen numbers.
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        #[arg(long)]
        kappa: Option<f64>,
        /// Kinetic model; repeat or comma-separate for several.
        #[arg(long, value_delimiter = ',')]
        model: Option<Vec<Model>>,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        nv: Option<usize>,
        #[arg(long)]
        t_end: Option<f64>,
        /// Cells of the fluid reference runs.
        #[arg(long)]
        fluid_nx: Option<usize>,
        #[arg(long)]
        stepper: Option<Stepper>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads; 1 gives bitwise reproducible runs.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List the built-in scenarios.
    ListScenarios,
    /// Check a scenario without running it; prints the resolved config.
    Validate { scenario: String },
    /// Relative L1 distance between two field CSV files.
    Compare { reference: PathBuf, other: PathBuf },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), Box<dyn std::error::Error>> {
    match cmd {
        Command::ListScenarios => {
            for name in scenarios::builtin_names() {
                let cfg = scenarios::load_builtin(name)?;
                println!("{name:<24} {:?}", cfg.kind);
            }
        }
        Command::Validate { scenario } => {
            let cfg = scenarios::load(&scenario)?;
            cfg.validate()?;
            print!("{}", cfg.to_toml_string()?);
        }
        Command::Compare { reference, other } => {
            let a = FieldCsv::read(&reference)?;
            let b = FieldCsv::read(&other)?;
            if a.x != b.x {
                return Err("the two files are sampled on different grids".into());
            }
            println!("{:.6e}", l1_relative_fields(&a.values, &b.values)?);
        }
        Command::Run { scenario, eps, kappa, model, nx, nv, t_end, fluid_nx, stepper, out, threads } => {
            let mut cfg = scenarios::load(&scenario)?;
            let o = Overrides { eps, kappa, models: model, nx, nv, t_end, fluid_nx, stepper };
            cfg.apply_overrides(&o)?;
            if let Some(n) = threads {
                rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
            }
            run(&cfg, &out)?;
        }
    }
    Ok(())
}

fn run(cfg: &ScenarioConfig, out: &Path) -> Result<(), Box<dyn std::error::Error>> {
    let report = scenarios::run_scenario(cfg)?;
    let files = write_report(cfg, &report, out)?;
    match &report.summary {
        Summary::Discrepancy { eps, pairs } => {
            for p in pairs {
                println!("{}-{}: slope {:.3}", p.reference, p.other, p.slope);
                for (e, d) in eps.iter().zip(&p.distances) {
                    println!("  eps {e:.0e}  distance {d:.3e}");
                }
            }
        }
        Summary::FluidComparison { comparisons } => print_comparisons(comparisons),
        Summary::Riemann { deviations, comparisons } => {
            for d in deviations {
                println!(
                    "eps {:.0e} species {}: velocity deviation {:.3e}, temperature deviation {:.3e}",
                    d.eps, d.species, d.velocity, d.temperature
                );
            }
            print_comparisons(comparisons);
        }
        Summary::StationaryShock { plateau_errors, comparisons, profiles } => {
            for (k, v) in plateau_errors {
                println!("plateau {k}: {v:.3e}");
            }
            print_comparisons(comparisons);
            print_comparisons(profiles);
        }
    }
    println!("wrote {} files to {} in {:.1} s", files.len(), out.display(), report.wall_time);
    Ok(())
}

fn print_comparisons(c: &[mixbgk::scenarios::FieldComparison]) {
    for f in c {
        let errs: Vec<String> = f.errors.iter().map(|(k, v)| format!("{k} {v:.3e}")).collect();
        println!("{:?} eps {:.0e} kappa {:.0e}: {}", f.system, f.eps, f.kappa, errs.join(", "));
    }
}
