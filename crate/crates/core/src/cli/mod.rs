//! The `gcp` command-line front end.
//!
//! Exit codes: 0 success, 2 bad flags or parameters, 3 numerical failure,
//! 4 file errors.

pub mod figures;
pub mod output;
pub mod record;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::Error;
use crate::force::{find_crossover, CrossoverQuantity, CrossoverQuery, NumericsConfig};
use crate::kinematics::{GrapheneParams, Scenario};
use crate::materials::{load_permittivity_table, SubstrateModel};

pub use figures::Figure;
pub use output::{CsvTable, Metadata};
pub use record::{RunPoint, RunRecord};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_FILE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "gcp",
    version,
    about = "Casimir-Polder force on a particle above graphene-coated substrates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one configuration and print a single record.
    Compute {
        #[command(flatten)]
        physics: PhysicsArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a configuration along one parameter axis.
    Sweep {
        #[command(flatten)]
        physics: PhysicsArgs,
        #[arg(long, value_enum)]
        axis: Axis,
        #[arg(long)]
        start: f64,
        #[arg(long)]
        stop: f64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Spacing::Linear)]
        spacing: Spacing,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the data behind one of the preset figures.
    Figure {
        #[arg(value_enum)]
        name: Figure,
        /// Points per curve.
        #[arg(long, default_value_t = 60)]
        count: usize,
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find where a relative difference falls through a threshold.
    Crossover {
        #[command(flatten)]
        physics: PhysicsArgs,
        #[arg(long, value_enum, default_value_t = QuantityArg::DeltaVsIdeal)]
        quantity: QuantityArg,
        #[arg(long, default_value_t = 0.01)]
        threshold: f64,
        /// Energy gaps to scan, comma separated.
        #[arg(long = "deltas-ev", value_delimiter = ',', default_value = "0.2")]
        deltas: Vec<f64>,
        /// Chemical potentials to scan, comma separated.
        #[arg(long = "mus-ev", value_delimiter = ',', default_value = "0")]
        mus: Vec<f64>,
        #[arg(long, default_value_t = 5.6)]
        a_low_um: f64,
        #[arg(long, default_value_t = 2000.0)]
        a_high_um: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PhysicsArgs {
    /// Particle-surface separation in micrometres.
    #[arg(long, default_value_t = 6.0)]
    pub a_um: f64,
    #[arg(long, default_value_t = 300.0)]
    pub temp_k: f64,
    /// Energy gap of the graphene sheet.
    #[arg(long, default_value_t = 0.0)]
    pub delta_ev: f64,
    /// Chemical potential of the graphene sheet.
    #[arg(long, default_value_t = 0.0)]
    pub mu_ev: f64,
    /// Fermi velocity over the speed of light.
    #[arg(long, default_value_t = crate::constants::DEFAULT_VF_RATIO)]
    pub vf_ratio: f64,
    /// sio2, vacuum, ideal-metal or table:PATH
    #[arg(long, default_value = "sio2", value_parser = parse_substrate)]
    pub substrate: SubstrateArg,
    #[arg(long, default_value_t = 1.0)]
    pub alpha0_cm3: f64,
    #[arg(long, value_enum, default_value_t = Mode::L0)]
    pub mode: Mode,
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
    /// Uncoated substrate (no graphene sheet).
    #[arg(long)]
    pub bare: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubstrateArg {
    Sio2,
    Vacuum,
    IdealMetal,
    Table(PathBuf),
}

impl SubstrateArg {
    pub fn label(&self) -> String {
        match self {
            SubstrateArg::Sio2 => "sio2".into(),
            SubstrateArg::Vacuum => "vacuum".into(),
            SubstrateArg::IdealMetal => "ideal-metal".into(),
            SubstrateArg::Table(p) => format!("table:{}", p.display()),
        }
    }

    pub fn load(&self) -> crate::Result<SubstrateModel> {
        Ok(match self {
            SubstrateArg::Sio2 => SubstrateModel::sio2(),
            SubstrateArg::Vacuum => SubstrateModel::Vacuum,
            SubstrateArg::IdealMetal => SubstrateModel::IdealMetal,
            SubstrateArg::Table(p) => load_permittivity_table(p)?,
        })
    }
}

/// Parse a `--substrate` value.
pub fn parse_substrate(s: &str) -> Result<SubstrateArg, String> {
    match s {
        "sio2" => Ok(SubstrateArg::Sio2),
        "vacuum" => Ok(SubstrateArg::Vacuum),
        "ideal-metal" => Ok(SubstrateArg::IdealMetal),
        _ => match s.strip_prefix("table:") {
            Some(p) if !p.is_empty() => Ok(SubstrateArg::Table(PathBuf::from(p))),
            _ => Err(format!(
                "unknown substrate '{s}' (expected sio2, vacuum, ideal-metal or table:PATH)"
            )),
        },
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    L0,
    Asymptotic,
    Classical,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::L0 => "l0",
            Mode::Asymptotic => "asymptotic",
            Mode::Classical => "classical",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Separation,
    Delta,
    Mu,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantityArg {
    DeltaVsIdeal,
    AsymVsNumeric,
    L0VsFull,
}

impl From<QuantityArg> for CrossoverQuantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::DeltaVsIdeal => CrossoverQuantity::DeltaVsIdeal,
            QuantityArg::AsymVsNumeric => CrossoverQuantity::AsymptoticVsNumeric,
            QuantityArg::L0VsFull => CrossoverQuantity::L0VsFull,
        }
    }
}

/// Points of a sweep axis, endpoints included exactly.
pub fn axis_points(
    start: f64,
    stop: f64,
    count: usize,
    spacing: Spacing,
) -> crate::Result<Vec<f64>> {
    if !(start < stop) || count < 2 || !start.is_finite() || !stop.is_finite() {
        return Err(Error::invalid(format!(
            "sweep needs start < stop and count >= 2, got start = {start}, stop = {stop}, count = {count}"
        )));
    }
    if spacing == Spacing::Log && !(start > 0.0) {
        return Err(Error::invalid("log spacing requires start > 0"));
    }
    let n = (count - 1) as f64;
    Ok((0..count)
        .map(|k| match k {
            0 => start,
            k if k == count - 1 => stop,
            k => match spacing {
                Spacing::Linear => start + (stop - start) * k as f64 / n,
                Spacing::Log => start * ((stop / start).ln() * k as f64 / n).exp(),
            },
        })
        .collect())
}

impl PhysicsArgs {
    pub fn point(&self) -> RunPoint {
        RunPoint {
            a_um: self.a_um,
            temp_k: self.temp_k,
            delta_ev: self.delta_ev,
            mu_ev: self.mu_ev,
            vf_ratio: self.vf_ratio,
            alpha0_cm3: self.alpha0_cm3,
            bare: self.bare,
            mode: self.mode,
        }
    }

    pub fn numerics(&self) -> crate::Result<NumericsConfig> {
        numerics(self.rel_tol)
    }
}

fn numerics(rel_tol: f64) -> crate::Result<NumericsConfig> {
    let cfg = NumericsConfig {
        rel_tol,
        ..NumericsConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Map a library error to the process exit code.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_file() {
        EXIT_FILE
    } else if err.is_numerical() || matches!(err, Error::OutsideDomain { .. }) {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let command_line: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match run(cli, &command_line.join(" ")) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Execute a parsed command line; `command_line` is echoed into the output metadata.
pub fn run(cli: Cli, command_line: &str) -> crate::Result<()> {
    let meta = Metadata::new(command_line);
    match cli.command {
        Command::Compute { physics, out } => {
            let substrate = physics.substrate.load()?;
            let cfg = physics.numerics()?;
            let rec = RunRecord::evaluate(
                &physics.point(),
                &physics.substrate.label(),
                &substrate,
                &cfg,
            )?;
            RunRecord::table(&meta, &[rec], cfg.rel_tol).emit(out.as_deref())
        }
        Command::Sweep {
            physics,
            axis,
            start,
            stop,
            count,
            spacing,
            out,
        } => {
            let xs = axis_points(start, stop, count, spacing)?;
            let substrate = physics.substrate.load()?;
            let cfg = physics.numerics()?;
            let base = physics.point();
            let label = physics.substrate.label();
            let records = xs
                .par_iter()
                .map(|&x| {
                    let mut p = base;
                    match axis {
                        Axis::Separation => p.a_um = x,
                        Axis::Delta => p.delta_ev = x,
                        Axis::Mu => p.mu_ev = x,
                    }
                    RunRecord::evaluate(&p, &label, &substrate, &cfg)
                })
                .collect::<crate::Result<Vec<_>>>()?;
            RunRecord::table(&meta, &records, cfg.rel_tol).emit(out.as_deref())
        }
        Command::Figure {
            name,
            count,
            rel_tol,
            out,
        } => {
            let cfg = numerics(rel_tol)?;
            name.table(&meta, count, &cfg)?.emit(out.as_deref())
        }
        Command::Crossover {
            physics,
            quantity,
            threshold,
            deltas,
            mus,
            a_low_um,
            a_high_um,
            out,
        } => {
            let substrate = physics.substrate.load()?;
            let cfg = physics.numerics()?;
            let query = CrossoverQuery::new(
                quantity.into(),
                threshold,
                (
                    crate::constants::um_to_m(a_low_um),
                    crate::constants::um_to_m(a_high_um),
                ),
            )?;
            let template = Scenario::from_um(a_low_um, physics.temp_k, physics.alpha0_cm3)?;
            let pairs: Vec<(f64, f64)> = deltas
                .iter()
                .flat_map(|&d| mus.iter().map(move |&m| (d, m)))
                .collect();
            let rows = pairs
                .par_iter()
                .map(|&(d, m)| {
                    crossover_row(
                        &query,
                        (a_low_um, a_high_um),
                        &template,
                        d,
                        m,
                        &physics,
                        &substrate,
                        &cfg,
                    )
                })
                .collect::<crate::Result<Vec<_>>>()?;
            let mut table = CsvTable::new(
                meta,
                &[
                    "quantity",
                    "threshold",
                    "delta_ev",
                    "mu_ev",
                    "substrate",
                    "a_low_um",
                    "a_high_um",
                    "status",
                    "crossover_um",
                    "value_at_low",
                    "value_at_high",
                ],
            );
            table.push_meta(format!("rel_tol={:e}", cfg.rel_tol));
            for r in rows {
                table.push_row(r);
            }
            table.emit(out.as_deref())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn crossover_row(
    query: &CrossoverQuery,
    bracket_um: (f64, f64),
    template: &Scenario,
    delta: f64,
    mu: f64,
    physics: &PhysicsArgs,
    substrate: &SubstrateModel,
    cfg: &NumericsConfig,
) -> crate::Result<Vec<String>> {
    let graphene = if physics.bare {
        None
    } else {
        Some(GrapheneParams::with_vf_ratio(delta, mu, physics.vf_ratio)?)
    };
    let mut row = vec![
        query.quantity.as_str().to_string(),
        format!("{:e}", query.threshold),
        format!("{delta:e}"),
        format!("{mu:e}"),
        physics.substrate.label(),
        format!("{:e}", bracket_um.0),
        format!("{:e}", bracket_um.1),
    ];
    match find_crossover(query, template, graphene.as_ref(), substrate, cfg) {
        Ok(a) => row.extend([
            "ok".into(),
            output::num(crate::constants::m_to_um(a)),
            String::new(),
            String::new(),
        ]),
        Err(Error::NoStraddle {
            value_low,
            value_high,
            ..
        }) => {
            let below = value_low <= query.threshold && value_high <= query.threshold;
            let (status, at) = if below {
                ("already-below", output::num(bracket_um.0))
            } else {
                ("no-straddle", String::new())
            };
            row.extend([
                status.into(),
                at,
                output::num(value_low),
                output::num(value_high),
            ]);
        }
        Err(e) if e.is_numerical() => {
            log::warn!("crossover for delta = {delta} eV, mu = {mu} eV failed: {e}");
            row.extend(["error".into(), String::new(), String::new(), String::new()]);
        }
        Err(e) => return Err(e),
    }
    Ok(row)
}
