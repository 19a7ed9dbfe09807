//! Substrate dielectric permittivity at imaginary frequencies.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::constants::{self, HBAR};
use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;
use crate::kinematics::{matsubara_zeta, Scenario};

/// One Lorentz-type oscillator term C ω²/(ω² + ξ²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    pub strength: f64,
    /// rad/s
    pub resonance: f64,
}

impl Oscillator {
    pub fn new(strength: f64, resonance: f64) -> Result<Self> {
        if !(strength > 0.0 && strength.is_finite()) || !(resonance > 0.0 && resonance.is_finite())
        {
            return Err(Error::invalid(format!(
                "oscillator needs C > 0 and omega > 0, got C = {strength}, omega = {resonance}"
            )));
        }
        Ok(Self {
            strength,
            resonance,
        })
    }

    fn at(&self, xi: f64) -> f64 {
        let w2 = self.resonance * self.resonance;
        self.strength * w2 / (w2 + xi * xi)
    }
}

/// SiO₂ infrared (ionic) oscillator strength. Chosen so that ε(0) = 3.81.
pub const SIO2_C_IR: f64 = 1.712;
pub const SIO2_OMEGA_IR: f64 = 1.88e14;
/// SiO₂ ultraviolet (electronic) oscillator strength.
pub const SIO2_C_UV: f64 = 1.098;
pub const SIO2_OMEGA_UV: f64 = 2.033e16;

/// ε(iξ) tabulated against the photon energy ħξ.
#[derive(Debug, Clone, PartialEq)]
pub struct PermittivityTable {
    rows: Vec<(f64, f64)>,
    interp: MonotoneCubic,
}

impl PermittivityTable {
    /// Rows of (ħξ in eV, ε). Energies positive and strictly increasing,
    /// ε ≥ 1 and nonincreasing.
    pub fn new(rows: Vec<(f64, f64)>) -> Result<Self> {
        Self::validate(&rows).map_err(|(idx, message)| Error::Table {
            path: None,
            line: idx + 1,
            message,
        })?;
        Ok(Self::from_valid(rows))
    }

    fn from_valid(rows: Vec<(f64, f64)>) -> Self {
        let xs = rows.iter().map(|r| r.0.ln()).collect();
        let ys = rows.iter().map(|r| r.1).collect();
        let interp = MonotoneCubic::new(xs, ys).expect("validated table");
        Self { rows, interp }
    }

    /// Returns the index of the offending row with a message.
    fn validate(rows: &[(f64, f64)]) -> std::result::Result<(), (usize, String)> {
        if rows.len() < 2 {
            return Err((
                rows.len().saturating_sub(1),
                "permittivity table needs at least 2 records".into(),
            ));
        }
        for (i, &(e, eps)) in rows.iter().enumerate() {
            if !(e > 0.0 && e.is_finite()) {
                return Err((i, format!("photon energy must be > 0 eV, got {e}")));
            }
            if !(eps >= 1.0 && eps.is_finite()) {
                return Err((i, format!("permittivity must be >= 1, got {eps}")));
            }
            if i > 0 {
                let (e_prev, eps_prev) = rows[i - 1];
                if !(e > e_prev) {
                    return Err((
                        i,
                        format!("photon energies must be strictly increasing ({e} after {e_prev})"),
                    ));
                }
                if eps > eps_prev {
                    return Err((
                        i,
                        format!(
                            "permittivity must not increase with energy ({eps} after {eps_prev})"
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }

    /// ε at photon energy ħξ in eV, clamped to the end values outside the table.
    pub fn at_energy(&self, energy_ev: f64) -> f64 {
        if energy_ev <= 0.0 {
            return self.rows[0].1;
        }
        self.interp.eval(energy_ev.ln())
    }
}

/// How ε(iξ) of the substrate is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum SubstrateModel {
    IdealMetal,
    Vacuum,
    Oscillator(Vec<Oscillator>),
    Tabulated(PermittivityTable),
}

impl SubstrateModel {
    /// Two-oscillator SiO₂ model with ε(0) = 3.81.
    pub fn sio2() -> Self {
        SubstrateModel::Oscillator(vec![
            Oscillator {
                strength: SIO2_C_IR,
                resonance: SIO2_OMEGA_IR,
            },
            Oscillator {
                strength: SIO2_C_UV,
                resonance: SIO2_OMEGA_UV,
            },
        ])
    }

    pub fn oscillators(terms: &[(f64, f64)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("oscillator model needs at least one term"));
        }
        let terms = terms
            .iter()
            .map(|&(c, w)| Oscillator::new(c, w))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubstrateModel::Oscillator(terms))
    }

    /// ε at angular frequency ξ (rad/s) on the imaginary axis.
    pub fn at_frequency(&self, xi: f64) -> Permittivity {
        match self {
            SubstrateModel::IdealMetal => Permittivity::IdealMetal,
            SubstrateModel::Vacuum => Permittivity::Finite(1.0),
            SubstrateModel::Oscillator(terms) => {
                Permittivity::Finite(1.0 + terms.iter().map(|o| o.at(xi)).sum::<f64>())
            }
            SubstrateModel::Tabulated(t) => {
                Permittivity::Finite(t.at_energy(constants::rad_per_s_to_ev(xi)))
            }
        }
    }

    pub fn is_ideal_metal(&self) -> bool {
        matches!(self, SubstrateModel::IdealMetal)
    }
}

impl fmt::Display for SubstrateModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstrateModel::IdealMetal => f.write_str("ideal-metal"),
            SubstrateModel::Vacuum => f.write_str("vacuum"),
            SubstrateModel::Oscillator(t) if *t == sio2_terms() => f.write_str("sio2"),
            SubstrateModel::Oscillator(t) => write!(f, "oscillator[{}]", t.len()),
            SubstrateModel::Tabulated(t) => write!(f, "table[{}]", t.rows().len()),
        }
    }
}

fn sio2_terms() -> Vec<Oscillator> {
    match SubstrateModel::sio2() {
        SubstrateModel::Oscillator(t) => t,
        _ => unreachable!(),
    }
}

/// ε(iξₗ): a finite value ≥ 1, or the ideal-metal limit ε → ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Permittivity {
    Finite(f64),
    IdealMetal,
}

impl Permittivity {
    pub fn finite(self) -> Option<f64> {
        match self {
            Permittivity::Finite(e) => Some(e),
            Permittivity::IdealMetal => None,
        }
    }
}

/// Matsubara frequency ξₗ = ζₗ c/(2a) in rad/s.
pub fn matsubara_frequency(l: usize, scenario: &Scenario) -> f64 {
    matsubara_zeta(l, scenario) * constants::SPEED_OF_LIGHT / (2.0 * scenario.separation_m)
}

/// ε(iξₗ) of `model`.
pub fn permittivity(model: &SubstrateModel, l: usize, scenario: &Scenario) -> Permittivity {
    model.at_frequency(matsubara_frequency(l, scenario))
}

/// ε(0). Fails for the ideal metal.
pub fn static_permittivity(model: &SubstrateModel) -> Result<f64> {
    model
        .at_frequency(0.0)
        .finite()
        .ok_or_else(|| Error::invalid("an ideal metal has no finite static permittivity"))
}

/// Parse a permittivity table: two whitespace-separated numbers per line
/// (ħξ in eV, ε), '#' starts a comment, blank lines are skipped.
pub fn parse_permittivity_table(text: &str, path: Option<&Path>) -> Result<PermittivityTable> {
    let table_err = |line: usize, message: String| Error::Table {
        path: path.map(Path::to_path_buf),
        line,
        message,
    };
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(table_err(
                line_no,
                format!("expected 2 fields, found {}", fields.len()),
            ));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| table_err(line_no, format!("not a number: '{s}'")))
        };
        rows.push((parse(fields[0])?, parse(fields[1])?));
        lines.push(line_no);
    }
    if let Err((idx, message)) = PermittivityTable::validate(&rows) {
        let line = lines
            .get(idx)
            .copied()
            .unwrap_or(lines.last().copied().unwrap_or(0));
        return Err(table_err(line, message));
    }
    Ok(PermittivityTable::from_valid(rows))
}

/// Read a permittivity table file into a tabulated substrate.
pub fn load_permittivity_table(path: impl AsRef<Path>) -> Result<SubstrateModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(SubstrateModel::Tabulated(parse_permittivity_table(
        &text,
        Some(path),
    )?))
}

/// Write `rows` in the format read by [`load_permittivity_table`].
pub fn write_permittivity_table(
    path: impl AsRef<Path>,
    rows: &[(f64, f64)],
    comment: &str,
) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: PathBuf::from(path),
        source,
    };
    let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
    for line in comment.lines() {
        writeln!(out, "# {line}").map_err(io_err)?;
    }
    for &(e, eps) in rows {
        writeln!(out, "{e:.17e} {eps:.17e}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

/// Sample a finite model on `count` log-spaced photon energies in [lo, hi] eV.
pub fn sample_model(
    model: &SubstrateModel,
    lo_ev: f64,
    hi_ev: f64,
    count: usize,
) -> Result<Vec<(f64, f64)>> {
    if !(lo_ev > 0.0 && hi_ev > lo_ev) || count < 2 {
        return Err(Error::invalid(
            "sampling needs 0 < lo < hi and at least 2 points",
        ));
    }
    let step = (hi_ev / lo_ev).ln() / (count - 1) as f64;
    (0..count)
        .map(|k| {
            let e = if k == count - 1 {
                hi_ev
            } else {
                lo_ev * (step * k as f64).exp()
            };
            let xi = e * constants::CONSTANTS.electronvolt / HBAR;
            model
                .at_frequency(xi)
                .finite()
                .map(|eps| (e, eps))
                .ok_or_else(|| Error::invalid("cannot sample an ideal metal"))
        })
        .collect()
}
