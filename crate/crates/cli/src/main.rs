//! `daf`: BER sweeps, envelope histograms and error floors from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use daf_core::analysis::{ber_from_pep, error_floor, GammaBarSet};
use daf_core::harness::{
    analyze_curve, db_grid, emit_curve_csv, load_config, render_curve_csv, run_ber_sweep_with, run_pdf_experiment,
    write_gnuplot_script, SweepOptions,
};
use daf_core::phylink::{ber_montecarlo_schemes, db_to_linear, MonteCarloOptions, PowerAllocation, WeightScheme};
use daf_core::{Error, ScenarioConfig};

#[derive(Parser)]
#[command(name = "daf", version, about = "Differential amplify-and-forward relay simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulated and analytical BER versus total power.
    Sweep(SweepArgs),
    /// Analytical curve only.
    Analyze(SweepArgs),
    /// Envelope histograms of the cascaded channel.
    Pdf {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// High-SNR error floor of a scenario.
    Floor {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file of `key = value` lines.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// scenario_I, scenario_II or scenario_III.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    relays: Option<usize>,
    /// Constellation size.
    #[arg(long = "mod", value_parser = ["2", "4"])]
    modulation: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Tvd,
    Cdd,
    Optimum,
    All,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, default_value_t = 0.0)]
    pmin: f64,
    #[arg(long, default_value_t = 40.0)]
    pmax: f64,
    #[arg(long, default_value_t = 5.0)]
    pstep: f64,
    /// Bit budget per SNR point.
    #[arg(long, default_value_t = 2_000_000)]
    bits: u64,
    /// Stop a point early once every scheme has this many errors.
    #[arg(long, default_value_t = 2000)]
    target_errors: u64,
    #[arg(long, value_enum, default_value_t = SchemeArg::All)]
    scheme: SchemeArg,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long, requires = "out")]
    gnuplot: bool,
}

enum Failure {
    Config(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Argument(_) | Error::Precondition(_) | Error::Io { .. } => {
                Failure::Config(e.to_string())
            }
            Error::Domain { .. } | Error::Numeric(_) => Failure::Numeric(e.to_string()),
        }
    }
}

fn scenario(args: &ScenarioArgs) -> Result<ScenarioConfig, Failure> {
    let modulation = args
        .modulation
        .as_deref()
        .map(|m| m.parse::<usize>().expect("validated by clap"));
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), _) => load_config(path).map_err(|e| Failure::Config(e.to_string()))?,
        (None, preset) => {
            let name = preset.as_deref().unwrap_or("scenario_I");
            ScenarioConfig::preset(name, args.relays.unwrap_or(2), modulation.unwrap_or(2))
                .ok_or_else(|| Failure::Config(format!("unknown preset `{name}`")))?
        }
    };
    if args.config.is_some() {
        if let Some(r) = args.relays {
            if r != cfg.relays {
                return Err(Failure::Config(
                    "--relays cannot change the relay count of a config file".into(),
                ));
            }
        }
        if let Some(m) = modulation {
            cfg.modulation = m;
        }
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    let v = cfg.violations();
    if !v.is_empty() {
        return Err(Failure::Config(v.join("; ")));
    }
    Ok(cfg)
}

fn write_or_print(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sweep(args: &SweepArgs, simulate: bool) -> Result<(), Failure> {
    let cfg = scenario(&args.scenario)?;
    let grid = db_grid(args.pmin, args.pmax, args.pstep)?;
    if !simulate {
        let curve = analyze_curve(&cfg, &grid)?;
        return write_or_print(&render_curve_csv(&curve), args.out.as_ref());
    }
    match args.scheme {
        SchemeArg::All | SchemeArg::Tvd | SchemeArg::Cdd => {
            let opts = SweepOptions {
                bits_per_point: args.bits,
                target_errors: args.target_errors,
                ..Default::default()
            };
            let curve = run_ber_sweep_with(&cfg, &grid, &opts, cfg.seed)?;
            match &args.out {
                Some(path) => {
                    emit_curve_csv(&curve, path)?;
                    if args.gnuplot {
                        let script = path.with_extension("gp");
                        write_gnuplot_script(path, &script, &cfg.name)?;
                    }
                    Ok(())
                }
                None => write_or_print(&render_curve_csv(&curve), None),
            }
        }
        SchemeArg::Optimum => {
            let mut text = String::from("p_db,ber_sim_optimum,n_bits,n_errors\n");
            for (idx, &p_db) in grid.iter().enumerate() {
                let alloc = PowerAllocation::even_split(db_to_linear(p_db), cfg.relays)?;
                let opts = MonteCarloOptions {
                    max_bits: args.bits,
                    target_errors: args.target_errors,
                    stream_offset: (idx as u64) << 40,
                    ..Default::default()
                };
                let c = ber_montecarlo_schemes(&cfg, &alloc, &[WeightScheme::Optimum], opts, cfg.seed)?[0];
                text.push_str(&format!("{:.8e},{:.8e},{},{}\n", p_db, c.ber(), c.bits, c.errors));
            }
            write_or_print(&text, args.out.as_ref())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sweep(args) => sweep(&args, true),
        Command::Analyze(args) => sweep(&args, false),
        Command::Pdf {
            scenario: s,
            samples,
            out,
        } => {
            let cfg = scenario(&s)?;
            let table = run_pdf_experiment(&cfg, samples)?;
            write_or_print(&table.to_csv(), out.as_ref())
        }
        Command::Floor { scenario: s } => {
            let cfg = scenario(&s)?;
            let gbars = GammaBarSet::from_alphas(cfg.alpha0(), &cfg.alpha_cascaded())?;
            let floor = error_floor(&gbars, cfg.dmin2())?;
            println!("scenario: {} (R = {}, M = {})", cfg.name, cfg.relays, cfg.modulation);
            println!("gamma_bar_0: {:.8e}", gbars.gbar0);
            for (i, g) in gbars.gbari.iter().enumerate() {
                println!("gamma_bar_{}: {:.8e}", i + 1, g);
            }
            println!("case: {:?}", floor.case);
            println!("pep_floor: {:.8e}", floor.value);
            println!("ber_floor: {:.8e}", ber_from_pep(floor.value, cfg.modulation)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(3)
        }
    }
}
