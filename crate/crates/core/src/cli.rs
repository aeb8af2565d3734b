//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 invalid scenario or input table,
//! 4 infeasible result under `--strict`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::budget::{evaluate, BudgetReport, EvalOptions};
use crate::channel::{GasAttenuationProvider, GasTable, PathLossBreakdown};
use crate::error::{Error, Result};
use crate::figures::{run_figure, FigureId, FigureOptions};
use crate::metrics::{outage_monte_carlo, Feasibility, MIN_MONTE_CARLO_SAMPLES};
use crate::scenario::{load_scenario_file, ChannelModel, Placement, Scenario};
use crate::sweep::{emit_sweep_csv, run_sweep, Scale, SweepSpec, SweepVariable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "rss-lb",
    version,
    about = "Link budgets for smart-surface relays on buildings, UAVs, HAPS and LEO satellites"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one scenario and print a key/value report.
    Budget(BudgetArgs),
    /// Sweep one variable of a scenario and write CSV.
    Sweep(SweepArgs),
    /// Regenerate a canned comparison plot as CSV.
    Figure(FigureArgs),
    /// Check scenario files without evaluating them.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Output file (default: stdout).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Override the scenario seed.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Apply the noise figure twice in the SNR, as the rate expression is
    /// literally written.
    #[arg(long)]
    pub strict_paper: bool,
    /// Gas attenuation grid (CSV); overrides the scenario's `gas` field.
    #[arg(long, value_name = "PATH")]
    pub gas_table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Scenario file (JSON).
    #[arg(long, value_name = "PATH")]
    pub scenario: PathBuf,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Exit with status 4 when the specular paradigm is infeasible.
    #[arg(long)]
    pub strict: bool,
    /// Also write the result as a one-row sweep CSV (x = placement offset).
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Cross-check the analytic outage with this many Monte Carlo draws.
    #[arg(long, value_name = "N")]
    pub mc_samples: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Scenario file (JSON).
    #[arg(long, value_name = "PATH")]
    pub scenario: PathBuf,
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub variable: SweepVariable,
    #[arg(long, allow_negative_numbers = true)]
    pub start: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    pub scale: Scale,
    /// Exit with status 4 when any grid point is infeasible.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub id: FigureId,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Scenario files to check.
    #[arg(long = "scenario", value_name = "PATH")]
    pub scenarios: Vec<PathBuf>,
    /// More scenario files.
    #[arg(value_name = "FILE")]
    pub files: Vec<PathBuf>,
}

/// Exit status for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Io(_) => EXIT_USAGE,
        Error::Domain(_)
        | Error::Validation { .. }
        | Error::Schema(_)
        | Error::GasTable(_)
        | Error::Csv(_) => EXIT_VALIDATION,
    }
}

/// Runs a parsed command and returns the process exit status.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Budget(args) => cmd_budget(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Validate(args) => cmd_validate(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("rss-lb: {err}");
            exit_code(&err)
        }
    }
}

fn read_scenario(path: &Path, seed: Option<u64>) -> Result<Scenario> {
    let mut s = load_scenario_file(path).map_err(|e| match e {
        Error::Io(io) => Error::Usage(format!("cannot read scenario {}: {io}", path.display())),
        other => other,
    })?;
    if let Some(seed) = seed {
        s.seed = seed;
    }
    Ok(s)
}

fn gas_provider(
    s: Option<&Scenario>,
    scenario_path: Option<&Path>,
    common: &CommonArgs,
) -> Result<GasAttenuationProvider> {
    if let Some(path) = &common.gas_table {
        let table = GasTable::from_path(path).map_err(|e| match e {
            Error::Io(io) => {
                Error::Usage(format!("cannot read gas table {}: {io}", path.display()))
            }
            other => other,
        })?;
        return Ok(GasAttenuationProvider::Table(table));
    }
    match s {
        Some(s) => s.gas.provider(scenario_path.and_then(Path::parent)),
        None => Ok(GasAttenuationProvider::Zero),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn cmd_budget(args: BudgetArgs) -> Result<i32> {
    let s = read_scenario(&args.scenario, args.common.seed)?;
    let gas = gas_provider(Some(&s), Some(&args.scenario), &args.common)?;
    let opts = EvalOptions {
        strict_paper: args.common.strict_paper,
    };
    let report = evaluate(&s, &gas, opts)?;
    let mc = match args.mc_samples {
        Some(n) if n < MIN_MONTE_CARLO_SAMPLES => {
            return Err(Error::Usage(format!(
                "--mc-samples must be at least {MIN_MONTE_CARLO_SAMPLES}"
            )));
        }
        Some(n) => Some((
            n,
            outage_monte_carlo(
                report.result.pr_mean_dbm,
                report.result.sigma_s_db,
                s.threshold_dbm,
                n,
                s.seed,
            )?,
        )),
        None => None,
    };
    write_output(
        args.common.out.as_deref(),
        &format_report(&s, &report, opts, mc),
    )?;
    if let Some(path) = &args.csv {
        std::fs::write(path, emit_sweep_csv(&[(report.placement_m, report.result)]))?;
    }
    if args.strict && report.result.feasibility != Feasibility::Feasible {
        eprintln!("rss-lb: infeasible: specular operation needs more reflectors than the surface can host");
        return Ok(EXIT_INFEASIBLE);
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(args: SweepArgs) -> Result<i32> {
    let s = read_scenario(&args.scenario, args.common.seed)?;
    let gas = gas_provider(Some(&s), Some(&args.scenario), &args.common)?;
    let spec = SweepSpec::new(
        args.variable,
        args.start,
        args.stop,
        args.points,
        args.scale,
    )?;
    let rows = run_sweep(
        &s,
        &spec,
        &gas,
        EvalOptions {
            strict_paper: args.common.strict_paper,
        },
    )?;
    write_output(args.common.out.as_deref(), &emit_sweep_csv(&rows))?;
    if args.strict && rows.iter().any(|(_, r)| !r.feasibility.is_feasible()) {
        eprintln!("rss-lb: infeasible: at least one grid point cannot operate specularly");
        return Ok(EXIT_INFEASIBLE);
    }
    Ok(EXIT_OK)
}

fn cmd_figure(args: FigureArgs) -> Result<i32> {
    let opts = FigureOptions {
        eval: EvalOptions {
            strict_paper: args.common.strict_paper,
        },
        gas: gas_provider(None, None, &args.common)?,
        seed: args.common.seed,
    };
    write_output(args.common.out.as_deref(), &run_figure(args.id, &opts)?)?;
    Ok(EXIT_OK)
}

fn cmd_validate(args: ValidateArgs) -> Result<i32> {
    let paths: Vec<PathBuf> = args.scenarios.into_iter().chain(args.files).collect();
    if paths.is_empty() {
        return Err(Error::Usage(
            "validate needs at least one scenario file".into(),
        ));
    }
    let mut worst = EXIT_OK;
    for path in &paths {
        match read_scenario(path, None) {
            Ok(_) => println!("ok      {}", path.display()),
            Err(err) => {
                println!("invalid {}: {err}", path.display());
                worst = worst.max(exit_code(&err));
            }
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// Report

const KEY_WIDTH: usize = 24;

fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<KEY_WIDTH$}{value}");
}

fn link_lines(out: &mut String, name: &str, b: &PathLossBreakdown) {
    let _ = writeln!(out, "[{name}]");
    line(out, "  distance_m", format!("{:.2}", b.distance_m));
    if b.elevation_deg.is_finite() {
        line(out, "  elevation_deg", format!("{:.2}", b.elevation_deg));
    }
    line(out, "  p_los", format!("{:.4}", b.p_los));
    line(
        out,
        "  basic_pl_los_db",
        format!("{:.2}", b.basic_pl_los_db),
    );
    line(
        out,
        "  basic_pl_nlos_db",
        format!("{:.2}", b.basic_pl_nlos_db),
    );
    line(out, "  clutter_db", format!("{:.2}", b.clutter_db));
    let gas = if b.gas_clamped {
        format!("{:.2} (clamped to table edge)", b.gas_db)
    } else {
        format!("{:.2}", b.gas_db)
    };
    line(out, "  gas_db", gas);
    line(
        out,
        "  scintillation_db",
        format!("{:.2}", b.scintillation_db),
    );
    line(
        out,
        "  shadow_sigma_db",
        format!("{:.2}", b.shadow_sigma_db),
    );
    line(out, "  mean_pl_db", format!("{:.2}", b.mean_pl_db));
}

/// Aligned key/value report for one evaluated scenario.
pub fn format_report(
    s: &Scenario,
    rep: &BudgetReport,
    opts: EvalOptions,
    mc: Option<(u64, f64)>,
) -> String {
    let mut out = String::new();
    let r = &rep.result;
    line(&mut out, "platform", s.platform.class);
    line(&mut out, "altitude_m", s.platform.altitude_m);
    line(&mut out, "coverage_radius_m", s.platform.coverage_radius_m);
    line(&mut out, "rss_area_m2", s.platform.rss_area_m2);
    line(
        &mut out,
        "environment",
        format!("{} (latitude {} deg)", s.env.kind, s.env.latitude_deg),
    );
    line(&mut out, "paradigm", s.paradigm.label());
    let channel = match s.channel {
        ChannelModel::Standards => "standards".to_string(),
        ChannelModel::LogDistance {
            alpha,
            ref_distance_m,
        } => {
            format!("log_distance (alpha {alpha}, d0 {ref_distance_m} m)")
        }
    };
    line(&mut out, "channel", channel);
    line(&mut out, "frequency_ghz", s.radio.f_ghz);
    line(&mut out, "wavelength_m", rep.wavelength_m);
    line(
        &mut out,
        "unit_size",
        format!("{} x {} wavelengths", s.radio.c1, s.radio.c2),
    );
    let how = match s.placement {
        Placement::Optimal => "optimal",
        Placement::Fixed(_) => "fixed",
    };
    line(
        &mut out,
        "placement_m",
        format!(
            "{:.2} ({how}, nu = {:.4})",
            rep.placement_m, rep.normalized_placement
        ),
    );
    line(
        &mut out,
        "tx_distance_m",
        format!("{:.2}", rep.tx_distance_m),
    );
    line(
        &mut out,
        "rx_distance_m",
        format!("{:.2}", rep.rx_distance_m),
    );
    line(&mut out, "n_max", rep.n_max);
    if let Some(n_min) = rep.n_min {
        line(&mut out, "n_min", n_min);
    }
    if let Some(limit) = rep.specular_limit_m {
        line(&mut out, "specular_limit_m", format!("{limit:.2}"));
    }
    line(&mut out, "n_used", r.n_used);
    let verdict = match r.feasibility {
        Feasibility::Feasible => "feasible",
        Feasibility::NminExceedsNmax => "infeasible (n_min exceeds n_max)",
    };
    line(&mut out, "feasibility", verdict);
    if let Some(tx) = &rep.tx_link {
        link_lines(&mut out, "tx link", tx);
    }
    if let Some(rx) = &rep.rx_link {
        link_lines(&mut out, "rx link", rx);
    }
    line(&mut out, "pt_dbm", s.radio.pt_dbm);
    line(&mut out, "gt_dbi", s.radio.gt_dbi);
    line(&mut out, "gr_dbi", s.radio.gr_dbi);
    line(&mut out, "pr_mean_dbm", format!("{:.2}", r.pr_mean_dbm));
    line(&mut out, "sigma_s_db", format!("{:.2}", r.sigma_s_db));
    line(&mut out, "noise_dbm", format!("{:.2}", rep.noise_dbm));
    let snr_note = if opts.strict_paper {
        " (noise figure applied twice)"
    } else {
        ""
    };
    line(&mut out, "snr_db", format!("{:.2}{snr_note}", r.snr_db));
    line(&mut out, "rate_bps", format!("{:.6e}", r.rate_bps));
    line(&mut out, "threshold_dbm", s.threshold_dbm);
    line(&mut out, "outage", format!("{:.6}", r.outage));
    if let Some((n, p)) = mc {
        line(
            &mut out,
            "outage_monte_carlo",
            format!("{p:.6} ({n} draws, seed {})", s.seed),
        );
    }
    out
}
