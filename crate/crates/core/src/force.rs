//! Casimir–Polder force on a particle above a graphene-coated substrate.
//!
//! F = −(k_BT/8a⁴) Σ'ₗ αₗ ∫_{ζₗ}^∞ y e^{−y} [(2y² − ζₗ²) R_TM − ζₗ² R_TE] dy,
//!
//! with the l = 0 term halved. Internally everything is measured in units of
//! k_BTα₀/a⁴ and converted to newtons at the end, so ratios of forces are
//! α₀-independent by construction.
//!
//! The l = 0 term is evaluated through the TM deficit 1 − R_TM, which keeps
//! small relative differences from the ideal-metal force (a few 1e-4 at
//! large separations) free of cancellation.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphene::{pi00_asymptotic, GrapheneResponse};
use crate::kinematics::{GrapheneParams, Scenario};
use crate::materials::{permittivity, Permittivity, SubstrateModel};
use crate::quadrature::{integrate, Estimate, QuadConfig};
use crate::reflection::{r_tm_zero_deficit, reflection_coeffs};

/// ∫₀^∞ y³e^{−y} dy
const GAMMA_4: f64 = 6.0;

/// Tolerances and limits for one force evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericsConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// A Matsubara term counts as negligible below this fraction of the running sum.
    pub matsubara_rel_cutoff: f64,
    pub max_l: usize,
    /// Width of the y window above ζₗ, in e-folds of e^{−y}.
    pub y_tail_efolds: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            matsubara_rel_cutoff: 1e-10,
            max_l: 2000,
            y_tail_efolds: 40.0,
        }
    }
}

impl NumericsConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.rel_tol)
            || !positive(self.abs_tol)
            || !positive(self.matsubara_rel_cutoff)
        {
            return Err(Error::invalid("tolerances must be positive and finite"));
        }
        if self.max_l < 1 {
            return Err(Error::invalid("max_l must be at least 1"));
        }
        if !positive(self.y_tail_efolds) {
            return Err(Error::invalid("y_tail_efolds must be positive"));
        }
        Ok(())
    }

    /// Same configuration with every tolerance scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            matsubara_rel_cutoff: self.matsubara_rel_cutoff * factor,
            ..*self
        }
    }

    pub fn quad(&self) -> QuadConfig {
        QuadConfig {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            ..QuadConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForceMode {
    Full,
    L0Only,
    Asymptotic,
    IdealMetal,
}

impl ForceMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ForceMode::Full => "full",
            ForceMode::L0Only => "l0",
            ForceMode::Asymptotic => "asymptotic",
            ForceMode::IdealMetal => "classical",
        }
    }
}

impl fmt::Display for ForceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A force with its breakdown; all forces in newtons, negative = attraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    pub total: f64,
    pub l0_term: f64,
    pub tail_l_ge_1: f64,
    /// Highest Matsubara index that entered the sum.
    pub l_max_used: usize,
    pub quad_error_estimate: f64,
    pub mode: ForceMode,
}

/// k_BTα₀/a⁴ in newtons.
pub fn force_unit(scenario: &Scenario) -> f64 {
    scenario.thermal_energy() * scenario.particle.alpha0_m3() / scenario.separation_m.powi(4)
}

/// Classical ideal-metal force −(3/4)k_BTα₀/a⁴.
pub fn force_ideal_metal_classical(scenario: &Scenario) -> f64 {
    -0.75 * force_unit(scenario)
}

/// ∫_z^∞ y³e^{−y} dy = e^{−z}(z³ + 3z² + 6z + 6)
fn upper_gamma4(z: f64) -> f64 {
    (-z).exp() * (((z + 3.0) * z + 6.0) * z + 6.0)
}

/// The zero-frequency pieces shared by every l = 0 quantity.
struct StaticTerm {
    /// ∫₀^∞ y³e^{−y}(1 − R_TM,0) dy
    deficit: Estimate,
}

impl StaticTerm {
    /// ∫₀^∞ y³e^{−y} R_TM,0 dy
    fn integral(&self) -> f64 {
        GAMMA_4 - self.deficit.value
    }

    /// F_sub,0 / F₀^IM − 1
    fn relative_to_ideal(&self) -> f64 {
        -self.deficit.value / GAMMA_4
    }
}

fn static_term(
    scenario: &Scenario,
    graphene: Option<&GrapheneParams>,
    substrate: &SubstrateModel,
    cfg: &NumericsConfig,
) -> Result<StaticTerm> {
    cfg.validate()?;
    let eps0 = match permittivity(substrate, 0, scenario) {
        Permittivity::IdealMetal => {
            return Ok(StaticTerm {
                deficit: Estimate::default(),
            })
        }
        Permittivity::Finite(e) => e,
    };
    let tail = upper_gamma4(cfg.y_tail_efolds);
    let mut deficit = match graphene {
        None => {
            // Constant reflection; the quadrature still runs so that the
            // window truncation is treated exactly as in the coated case.
            integrate(
                |y: f64| Ok::<f64, Error>(y.powi(3) * (-y).exp() * r_tm_zero_deficit(y, eps0, 0.0)),
                0.0,
                cfg.y_tail_efolds,
                &cfg.quad(),
            )?
        }
        Some(g) => {
            let resp = GrapheneResponse::new(scenario, g, cfg.quad());
            integrate(
                |y: f64| {
                    let pi = resp.pi00(0, y)?;
                    Ok::<f64, Error>(y.powi(3) * (-y).exp() * r_tm_zero_deficit(y, eps0, pi))
                },
                0.0,
                cfg.y_tail_efolds,
                &cfg.quad(),
            )?
        }
    };
    // Beyond the window 0 ≤ 1 − R ≤ 1.
    deficit.error += tail;
    Ok(StaticTerm { deficit })
}

/// The l = 0 (classical) force −(k_BTα₀/8a⁴)∫₀^∞ y³e^{−y} R_TM,0(y) dy.
///
/// `graphene = None` gives the bare substrate.
pub fn force_l0(
    scenario: &Scenario,
    graphene: Option<&GrapheneParams>,
    substrate: &SubstrateModel,
    cfg: &NumericsConfig,
) -> Result<ForceResult> {
    let unit = force_unit(scenario);
    let term = static_term(scenario, graphene, substrate, cfg)?;
    let total = -unit * term.integral() / 8.0;
    Ok(ForceResult {
        total,
        l0_term: total,
        tail_l_ge_1: 0.0,
        l_max_used: 0,
        quad_error_estimate: unit * term.deficit.error / 8.0,
        mode: ForceMode::L0Only,
    })
}

/// Relative difference (F_sub,0 − F₀^IM)/F₀^IM of the classical forces.
pub fn delta_vs_ideal(
    scenario: &Scenario,
    graphene: Option<&GrapheneParams>,
    substrate: &SubstrateModel,
    cfg: &NumericsConfig,
) -> Result<f64> {
    Ok(static_term(scenario, graphene, substrate, cfg)?.relative_to_ideal())
}

/// Large-separation force F₀^IM [1 − 8/Π̃₀₀,₀(1)].
///
/// Identical for a coated substrate and a freestanding sheet.
pub fn force_asymptotic(scenario: &Scenario, graphene: &GrapheneParams) -> ForceResult {
    let total =
        force_ideal_metal_classical(scenario) * (1.0 - 8.0 / pi00_asymptotic(scenario, graphene));
    ForceResult {
        total,
        l0_term: total,
        tail_l_ge_1: 0.0,
        l_max_used: 0,
        quad_error_estimate: 0.0,
        mode: ForceMode::Asymptotic,
    }
}

/// force_l0 / force_asymptotic − 1, evaluated from the two deficits.
pub fn asymptotic_deviation(
    scenario: &Scenario,
    graphene: &GrapheneParams,
    substrate: &SubstrateModel,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let numeric = static_term(scenario, Some(graphene), substrate, cfg)?.relative_to_ideal();
    let asym = -8.0 / pi00_asymptotic(scenario, graphene);
    Ok((numeric - asym) / (1.0 + asym))
}

/// Integral of the l-th Matsubara term, ∫ y e^{−y}[(2y² − ζ²)R_TM − ζ²R_TE] dy,
/// taken over t = y − ζ with the e^{−ζ} factored out.
fn matsubara_term(
    l: usize,
    resp: Option<&GrapheneResponse>,
    eps: Permittivity,
    zeta: f64,
    cfg: &NumericsConfig,
) -> Result<Estimate> {
    let scale = (-zeta).exp();
    let inner = integrate(
        |t: f64| {
            let y = zeta + t;
            let (pi00, pi_te) = match resp {
                Some(r) => (r.pi00_at(zeta, y)?, r.pi_te_at(zeta, y)?),
                None => (0.0, 0.0),
            };
            let r = reflection_coeffs(l, zeta, y, eps, pi00, pi_te)?;
            let bracket = (2.0 * y * y - zeta * zeta) * r.r_tm - zeta * zeta * r.r_te;
            Ok::<f64, Error>(y * (-t).exp() * bracket)
        },
        0.0,
        cfg.y_tail_efolds,
        &cfg.quad(),
    )?;
    // |bracket| ≤ 2y², so the dropped window tail is below 2∫ y³e^{−y} beyond it.
    let tail = 2.0 * upper_gamma4(zeta + cfg.y_tail_efolds);
    Ok(Estimate {
        value: scale * inner.value,
        error: scale * inner.error + tail,
    })
}

/// Full Lifshitz force with the Matsubara sum truncated adaptively.
///
/// Terms are computed in parallel chunks but always added in ascending l,
/// so the result does not depend on the thread count. A term is skipped
/// (and its bound added to the error estimate) once the a priori bound
/// 2αₗ/α₀ ∫_{ζₗ}^∞ y³e^{−y} dy is already below the cutoff; the sum stops
/// after two consecutive negligible terms.
pub fn force_full(
    scenario: &Scenario,
    graphene: Option<&GrapheneParams>,
    substrate: &SubstrateModel,
    cfg: &NumericsConfig,
) -> Result<ForceResult> {
    let unit = force_unit(scenario);
    let l0 = static_term(scenario, graphene, substrate, cfg)?;
    let resp = graphene.map(|g| GrapheneResponse::new(scenario, g, cfg.quad()));
    let zeta1 = crate::kinematics::matsubara_zeta(1, scenario);

    let bound = |l: usize| {
        2.0 * scenario
            .particle
            .relative_polarizability(l, scenario.temperature_k)
            * upper_gamma4(zeta1 * l as f64)
    };

    // Dimensionless Σ'; l = 0 enters with its factor 1/2 (2y² R_TM → y³ R_TM).
    let s0 = l0.integral();
    let mut sum_tail = 0.0;
    let mut error = l0.deficit.error;
    let mut quiet = 0usize;
    let mut l_used = 0usize;
    let mut next = 1usize;
    let chunk = rayon::current_num_threads().clamp(2, 16);

    'outer: loop {
        if next > cfg.max_l {
            return Err(Error::Truncation { max_l: cfg.max_l });
        }
        let hi = (next + chunk).min(cfg.max_l + 1);
        let before = (s0 + sum_tail).abs();
        let compute = |l: usize| {
            let eps = permittivity(substrate, l, scenario);
            let rel = scenario
                .particle
                .relative_polarizability(l, scenario.temperature_k);
            matsubara_term(l, resp.as_ref(), eps, zeta1 * l as f64, cfg).map(|e| Estimate {
                value: rel * e.value,
                error: rel * e.error,
            })
        };
        let terms: Vec<Option<Result<Estimate>>> = (next..hi)
            .into_par_iter()
            .map(|l| (bound(l) >= cfg.matsubara_rel_cutoff * before).then(|| compute(l)))
            .collect();

        for (offset, term) in terms.into_iter().enumerate() {
            let l = next + offset;
            let running = (s0 + sum_tail).abs();
            let b = bound(l);
            if b < cfg.matsubara_rel_cutoff * running {
                error += b;
                quiet += 1;
            } else {
                let est = term.unwrap_or_else(|| compute(l))?;
                sum_tail += est.value;
                error += est.error;
                l_used = l;
                if est.value.abs() < cfg.matsubara_rel_cutoff * running {
                    quiet += 1;
                } else {
                    quiet = 0;
                }
            }
            if quiet >= 2 {
                // Remaining terms: their bounds decrease faster than geometrically.
                let mut k = l + 1;
                loop {
                    let b = bound(k);
                    error += b;
                    if b < 1e-3 * cfg.matsubara_rel_cutoff * running || k >= l + cfg.max_l {
                        break;
                    }
                    k += 1;
                }
                break 'outer;
            }
        }
        next = hi;
    }

    let l0_term = -unit * s0 / 8.0;
    let tail = -unit * sum_tail / 8.0;
    Ok(ForceResult {
        total: l0_term + tail,
        l0_term,
        tail_l_ge_1: tail,
        l_max_used: l_used,
        quad_error_estimate: unit * error / 8.0,
        mode: ForceMode::Full,
    })
}

/// What a crossover search tracks as a function of separation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossoverQuantity {
    /// |F_sub,0 − F₀^IM| / |F₀^IM|
    DeltaVsIdeal,
    /// |F_sub,0 / F_as − 1|
    AsymptoticVsNumeric,
    /// |F_full − F_l0| / |F_full|
    L0VsFull,
}

impl CrossoverQuantity {
    pub fn as_str(self) -> &'static str {
        match self {
            CrossoverQuantity::DeltaVsIdeal => "delta-vs-ideal",
            CrossoverQuantity::AsymptoticVsNumeric => "asym-vs-numeric",
            CrossoverQuantity::L0VsFull => "l0-vs-full",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverQuery {
    pub quantity: CrossoverQuantity,
    pub threshold: f64,
    /// (a_low, a_high) in m.
    pub bracket: (f64, f64),
}

impl CrossoverQuery {
    pub fn new(quantity: CrossoverQuantity, threshold: f64, bracket_m: (f64, f64)) -> Result<Self> {
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(Error::invalid(format!(
                "threshold must lie in (0, 1), got {threshold}"
            )));
        }
        if !(bracket_m.0 > 0.0 && bracket_m.1 > bracket_m.0 && bracket_m.1.is_finite()) {
            return Err(Error::invalid(format!(
                "bracket must satisfy 0 < a_low < a_high, got [{}, {}] m",
                bracket_m.0, bracket_m.1
            )));
        }
        Ok(Self {
            quantity,
            threshold,
            bracket: bracket_m,
        })
    }
}

/// Relative separation accuracy of [`find_crossover`].
pub const CROSSOVER_REL_ACCURACY: f64 = 1e-3;

/// The tracked quantity (always ≥ 0) at one scenario.
pub fn crossover_quantity(
    quantity: CrossoverQuantity,
    scenario: &Scenario,
    graphene: Option<&GrapheneParams>,
    substrate: &SubstrateModel,
    cfg: &NumericsConfig,
) -> Result<f64> {
    match quantity {
        CrossoverQuantity::DeltaVsIdeal => {
            Ok(delta_vs_ideal(scenario, graphene, substrate, cfg)?.abs())
        }
        CrossoverQuantity::AsymptoticVsNumeric => {
            let g = graphene
                .ok_or_else(|| Error::invalid("the asymptotic force needs a graphene sheet"))?;
            Ok(asymptotic_deviation(scenario, g, substrate, cfg)?.abs())
        }
        CrossoverQuantity::L0VsFull => {
            let f = force_full(scenario, graphene, substrate, cfg)?;
            Ok((f.tail_l_ge_1 / f.total).abs())
        }
    }
}

/// Separation at which the tracked quantity falls through `threshold`,
/// by bisection in ln a to [`CROSSOVER_REL_ACCURACY`].
///
/// The quantity must cross the threshold exactly once inside the bracket.
pub fn find_crossover(
    query: &CrossoverQuery,
    scenario_template: &Scenario,
    graphene: Option<&GrapheneParams>,
    substrate: &SubstrateModel,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let eval = |a: f64| -> Result<f64> {
        let s = scenario_template.with_separation(a)?;
        crossover_quantity(query.quantity, &s, graphene, substrate, cfg)
    };
    let (mut lo, mut hi) = query.bracket;
    let v_lo = eval(lo)?;
    let v_hi = eval(hi)?;
    let side_lo = v_lo > query.threshold;
    if side_lo == (v_hi > query.threshold) {
        return Err(Error::NoStraddle {
            threshold: query.threshold,
            low_m: lo,
            high_m: hi,
            value_low: v_lo,
            value_high: v_hi,
        });
    }
    while hi / lo - 1.0 > CROSSOVER_REL_ACCURACY {
        let mid = (lo * hi).sqrt();
        if (eval(mid)? > query.threshold) == side_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo * hi).sqrt())
}
