use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use xpforecast::config::load_config;
use xpforecast::fixtures::CaseStudy;
use xpforecast::project::{evaluate_project, simulate_project, ProjectPlan};
use xpforecast::report;

#[derive(Parser)]
#[command(
    name = "xpforecast",
    about = "Monte-Carlo forecasting of finish time and defect output for XP projects",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunFlags {
    /// Number of Monte-Carlo draws.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Random seed; identical seeds give byte-identical output.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Evaluate every distribution at its mean instead of sampling.
    #[arg(long)]
    deterministic: bool,
    /// Directory for report and CSV artifacts (report is always printed).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a project described by a JSON config and report the forecast.
    Simulate {
        config: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Emit only the project status curve (day, completed story points).
    Curve {
        config: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Run a built-in case study and compare against its published figures.
    Validate {
        /// Case study name: repo | abrahamsson.
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> xpforecast::Result<()> {
    match cli.command {
        Command::Simulate { config, flags } => {
            let plan = load_config(&config)?;
            simulate(&plan, &flags, false)
        }
        Command::Curve { config, flags } => {
            let plan = load_config(&config)?;
            simulate(&plan, &flags, true)
        }
        Command::Validate { case, samples, seed } => {
            let case: CaseStudy = case.parse()?;
            let plan = case.plan();
            let result = simulate_project(&plan, samples, seed)?;
            let comparison = report::comparison(case.name(), &result, case.reference());
            print!("{}", report::render_comparison(&comparison));
            Ok(())
        }
    }
}

fn simulate(plan: &ProjectPlan, flags: &RunFlags, curve_only: bool) -> xpforecast::Result<()> {
    if flags.deterministic {
        let result = evaluate_project(plan)?;
        let curve = report::curve_csv(&result.curve);
        if curve_only {
            print!("{curve}");
        } else {
            let rep = report::deterministic_report(plan, &result);
            print!("{}", report::render_deterministic_report(&rep));
            if let Some(dir) = &flags.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("report.txt"), report::render_deterministic_report(&rep))?;
                std::fs::write(
                    dir.join("report.json"),
                    serde_json::to_string_pretty(&rep).expect("report serializes"),
                )?;
                std::fs::write(dir.join("curve.csv"), &curve)?;
            }
        }
        if curve_only {
            if let Some(dir) = &flags.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("curve.csv"), &curve)?;
            }
        }
        return Ok(());
    }

    let result = simulate_project(plan, flags.samples, flags.seed)?;
    let curve = report::curve_csv(&result.curve);
    if curve_only {
        print!("{curve}");
        if let Some(dir) = &flags.out {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join("curve.csv"), &curve)?;
        }
        return Ok(());
    }

    let rep = report::run_report(plan, &result, flags.samples, flags.seed);
    print!("{}", report::render_report(&rep));
    if let Some(dir) = &flags.out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.txt"), report::render_report(&rep))?;
        std::fs::write(
            dir.join("report.json"),
            serde_json::to_string_pretty(&rep).expect("report serializes"),
        )?;
        std::fs::write(dir.join("samples.csv"), report::samples_csv(&result))?;
        std::fs::write(dir.join("curve.csv"), &curve)?;
    }
    Ok(())
}
