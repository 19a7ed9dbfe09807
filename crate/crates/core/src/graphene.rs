//! Polarization tensor of gapped, doped graphene at imaginary Matsubara
//! frequencies, in the Dirac model.
//!
//! Two dimensionless quantities enter the reflection coefficients: the 00
//! component Π̃₀₀,ₗ(y) and the combination Π̃ₗ(y) that couples to TE waves.
//! Each is a closed-form part plus an integral over the Fermi weight wₗ(u, y).
//!
//! For l ≥ 1 the thermal log term is folded into that integral using
//! ∫_{Dₗ}^∞ wₗ du = ln[(e^{-Δ/2kT}+e^{μ/kT})(e^{-Δ/2kT}+e^{-μ/kT})]/Bₗ
//! (which holds because BₗDₗ = Δ/2k_BT), so the two large contributions
//! cancel inside the integrand instead of after it. At l = 0 the integral
//! runs over the finite window [D₀, √(1+D₀²)] and is evaluated after the
//! substitution u = √(1+D₀²)·cos φ, which removes the inverse-square-root
//! endpoint singularity.
//!
//! The Dirac description holds for photon energies below ~3 eV, which at
//! separations above ~100 nm covers every frequency the force samples.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::constants::CONSTANTS;
use crate::error::{Error, Result};
use crate::kinematics::{GrapheneParams, KinematicFactors, ReducedParams, Scenario};
use crate::quadrature::{integrate, Estimate, QuadConfig};

/// Default number of e-folds of the Fermi weight kept in the u-integral.
pub const DEFAULT_FERMI_EFOLDS: f64 = 40.0;

/// Ψ(D) = 2[D + (1 − D²) arctan(1/D)], with Ψ(0) = π.
pub fn psi(d: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(Error::invalid(format!("Psi(D) needs D >= 0, got {d}")));
    }
    Ok(psi_unchecked(d))
}

pub(crate) fn psi_unchecked(d: f64) -> f64 {
    if d == 0.0 {
        PI
    } else if d < 8.0 {
        2.0 * (d + (1.0 - d * d) * (1.0 / d).atan())
    } else {
        // Large-D series; the direct form cancels like D³.
        // Ψ = 2 Σ (−1)^k (4k+4)/((2k+1)(2k+3)) D^{−(2k+1)}
        let inv = 1.0 / d;
        let inv2 = inv * inv;
        let mut power = inv;
        let mut sum = 0.0;
        for k in 0..30 {
            let kf = k as f64;
            let c = (4.0 * kf + 4.0) / ((2.0 * kf + 1.0) * (2.0 * kf + 3.0));
            let term = if k % 2 == 0 { c * power } else { -c * power };
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            power *= inv2;
        }
        2.0 * sum
    }
}

/// 1/(eᶻ + 1) without overflow.
#[inline]
fn fermi(z: f64) -> f64 {
    if z > 0.0 {
        let e = (-z).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + z.exp())
    }
}

/// wₗ in reduced form: `x` = Bₗu, `m` = μ/k_BT.
#[inline]
pub(crate) fn fermi_weight_reduced(x: f64, m: f64) -> f64 {
    fermi(x + m) + fermi(x - m)
}

/// 1 − wₗ = sinh x / (cosh x + cosh m) for x ≥ 0, evaluated with the
/// largest exponent factored out.
#[inline]
pub(crate) fn one_minus_fermi_weight(x: f64, m: f64) -> f64 {
    let m = m.abs();
    let top = x.max(m);
    let num = if x < 1.0 {
        2.0 * x.sinh() * (-top).exp()
    } else {
        (x - top).exp() - (-x - top).exp()
    };
    let den = (x - top).exp() + (-x - top).exp() + (m - top).exp() + (-m - top).exp();
    num / den
}

/// The Fermi weight wₗ(u, y) = 1/(e^{Bₗu+μ/kT}+1) + 1/(e^{Bₗu−μ/kT}+1).
pub fn fermi_weight(u: f64, b_l: f64, mu_ev: f64, temperature_k: f64) -> f64 {
    let m = mu_ev * CONSTANTS.electronvolt / CONSTANTS.thermal_energy(temperature_k);
    fermi_weight_reduced(b_l * u, m)
}

/// Both tensor components at one (l, y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationPoint {
    pub pi00: f64,
    pub pi_te: f64,
    pub l: usize,
    pub y: f64,
}

/// Integration window of the u-integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPhaseSpace {
    /// Dₗ
    pub u_lower: f64,
    /// √(1 + D₀²), the end of the l = 0 window.
    pub u_upper_l0: f64,
}

impl GapPhaseSpace {
    pub fn at(k: &KinematicFactors) -> Self {
        Self {
            u_lower: k.d_l,
            u_upper_l0: k.d_l.hypot(1.0),
        }
    }
}

/// Polarization tensor of one graphene sheet in one scenario.
#[derive(Debug, Clone, Copy)]
pub struct GrapheneResponse {
    reduced: ReducedParams,
    quad: QuadConfig,
    fermi_efolds: f64,
}

impl GrapheneResponse {
    pub fn new(scenario: &Scenario, graphene: &GrapheneParams, quad: QuadConfig) -> Self {
        Self {
            reduced: ReducedParams::new(scenario, graphene),
            quad,
            fermi_efolds: DEFAULT_FERMI_EFOLDS,
        }
    }

    pub fn with_fermi_efolds(mut self, efolds: f64) -> Self {
        self.fermi_efolds = efolds;
        self
    }

    pub fn reduced(&self) -> &ReducedParams {
        &self.reduced
    }

    fn check(&self, zeta: f64, y: f64) -> Result<KinematicFactors> {
        if !(zeta >= 0.0) || !(y >= zeta) || !(y > 0.0) {
            return Err(Error::OutsideDomain { y, zeta });
        }
        Ok(self.reduced.factors_at(zeta, y))
    }

    pub fn pi00(&self, l: usize, y: f64) -> Result<f64> {
        self.pi00_at(self.reduced.zeta(l), y)
    }

    pub fn pi_te(&self, l: usize, y: f64) -> Result<f64> {
        self.pi_te_at(self.reduced.zeta(l), y)
    }

    pub fn point(&self, l: usize, y: f64) -> Result<PolarizationPoint> {
        Ok(PolarizationPoint {
            pi00: self.pi00(l, y)?,
            pi_te: self.pi_te(l, y)?,
            l,
            y,
        })
    }

    /// Π̃₀₀ at an arbitrary dimensionless frequency ζ ≥ 0 (not necessarily
    /// a Matsubara one). ζ = 0 takes the zero-frequency path.
    pub fn pi00_at(&self, zeta: f64, y: f64) -> Result<f64> {
        let k = self.check(zeta, y)?;
        if zeta == 0.0 {
            self.pi00_static(&k)
        } else {
            self.pi00_dynamic(&k)
        }
    }

    pub fn pi_te_at(&self, zeta: f64, y: f64) -> Result<f64> {
        let k = self.check(zeta, y)?;
        if zeta == 0.0 {
            self.pi_te_static(&k)
        } else {
            self.pi_te_dynamic(&k)
        }
    }

    fn pi00_static(&self, k: &KinematicFactors) -> Result<f64> {
        let alpha = CONSTANTS.fine_structure_alpha;
        let r = &self.reduced;
        let d0 = k.d_l;
        let s2 = 1.0 + d0 * d0;
        let s = s2.sqrt();
        let first = alpha * k.y * psi_unchecked(d0) / r.vf;
        let log_term = r.log_prefactor * r.thermal_log();
        let window = self.static_window(
            |phi| {
                let sin = phi.sin();
                fermi_weight_reduced(k.b_l * s * phi.cos(), r.mu_ratio) * (s2 * sin * sin - d0 * d0)
            },
            d0,
        )?;
        Ok(first + log_term - 4.0 * alpha * k.y / r.vf * window.value)
    }

    fn pi_te_static(&self, k: &KinematicFactors) -> Result<f64> {
        let alpha = CONSTANTS.fine_structure_alpha;
        let r = &self.reduced;
        let d0 = k.d_l;
        let s2 = 1.0 + d0 * d0;
        let s = s2.sqrt();
        // Ψ(D₀)/4 = ∫(1 − s² sin²φ)dφ over the same window, so the closed-form
        // term and the integral combine into a single non-negative integrand.
        let window = self.static_window(
            |phi| {
                let sin = phi.sin();
                one_minus_fermi_weight(k.b_l * s * phi.cos(), r.mu_ratio)
                    * (1.0 - s2 * sin * sin).max(0.0)
            },
            d0,
        )?;
        Ok(4.0 * alpha * r.vf * k.y.powi(3) * window.value)
    }

    /// ∫₀^{arctan(1/D₀)} g(φ) dφ
    fn static_window<F: FnMut(f64) -> f64>(&self, mut g: F, d0: f64) -> Result<Estimate> {
        let upper = if d0 == 0.0 {
            FRAC_PI_2
        } else {
            (1.0 / d0).atan()
        };
        integrate(|phi| Ok::<f64, Error>(g(phi)), 0.0, upper, &self.quad)
    }

    fn pi00_dynamic(&self, k: &KinematicFactors) -> Result<f64> {
        let alpha = CONSTANTS.fine_structure_alpha;
        let r = &self.reduced;
        let KinematicFactors {
            zeta_l: zeta,
            y,
            p_l: p,
            d_l: d,
            ..
        } = *k;
        let q = (y - zeta) * (y + zeta);
        let c = r.vf * r.vf * q * d * d;
        let first = alpha * q / p * psi_unchecked(d);
        let integral = self.u_integral(k, c, |s: Complex64, w: f64| {
            // Re[(p − pu² + 2iζu)/S] = Re S (1 − c/|S|²)/p
            w * (s.re * (1.0 - c / s.norm_sqr()) / p - 1.0)
        })?;
        Ok(first - 4.0 * alpha * p / (r.vf * r.vf) * integral.value)
    }

    fn pi_te_dynamic(&self, k: &KinematicFactors) -> Result<f64> {
        let alpha = CONSTANTS.fine_structure_alpha;
        let r = &self.reduced;
        let KinematicFactors {
            zeta_l: zeta,
            y,
            p_l: p,
            d_l: d,
            ..
        } = *k;
        let v2q = r.vf * r.vf * (y - zeta) * (y + zeta);
        let c = v2q * d * d;
        let first = alpha * (y - zeta) * (y + zeta) * p * psi_unchecked(d);
        let integral = self.u_integral(k, c, |s: Complex64, w: f64| {
            // p Re[(ζ² − p²u² + c + 2iζpu)/S] − ζ², with the numerator = S² − ṽ²(y² − ζ²)
            w * (p * s.re * (1.0 - v2q / s.norm_sqr()) - zeta * zeta)
        })?;
        Ok(first + 4.0 * alpha * p / (r.vf * r.vf) * integral.value)
    }

    /// ∫_{Dₗ}^{u_max} h(S(u), wₗ(u)) du with S = [p² − p²u² + c + 2iζpu]^{1/2}
    /// on the principal branch.
    ///
    /// Breakpoints go at the Fermi edge u = μ/(k_BT Bₗ) and at the zero of
    /// Re S², where the integrand develops a 1/√ spike as ζ → 0; segments
    /// touching the latter are integrated in τ with u = u* ± τ².
    fn u_integral<H>(&self, k: &KinematicFactors, c: f64, h: H) -> Result<Estimate>
    where
        H: Fn(Complex64, f64) -> f64,
    {
        let r = &self.reduced;
        let KinematicFactors {
            zeta_l: zeta,
            p_l: p,
            d_l: d,
            b_l: b,
            ..
        } = *k;
        let m = r.mu_ratio.abs();
        let lower = d;
        let upper = d.max(m / b) + self.fermi_efolds / b;

        let eval = |u: f64| -> f64 {
            let re = p * p * (1.0 - u) * (1.0 + u) + c;
            let s = Complex64::new(re, 2.0 * zeta * p * u).sqrt();
            h(s, fermi_weight_reduced(b * u, r.mu_ratio))
        };

        let spike = (1.0 + c / (p * p)).sqrt();
        let spike = (spike > lower && spike < upper).then_some(spike);
        let mut cuts = vec![lower, upper];
        let edge = m / b;
        if edge > lower && edge < upper {
            cuts.push(edge);
        }
        if let Some(u) = spike {
            cuts.push(u);
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let mut total = Estimate::default();
        for seg in cuts.windows(2) {
            let (lo, hi) = (seg[0], seg[1]);
            let part = match spike {
                Some(us) if hi == us => integrate(
                    |t: f64| Ok::<f64, Error>(2.0 * t * eval(us - t * t)),
                    0.0,
                    (us - lo).sqrt(),
                    &self.quad,
                )?,
                Some(us) if lo == us => integrate(
                    |t: f64| Ok::<f64, Error>(2.0 * t * eval(us + t * t)),
                    0.0,
                    (hi - us).sqrt(),
                    &self.quad,
                )?,
                _ => integrate(|u| Ok::<f64, Error>(eval(u)), lo, hi, &self.quad)?,
            };
            total = total + part;
        }
        Ok(total)
    }
}

/// Π̃₀₀,ₗ(y).
pub fn pi00(
    l: usize,
    y: f64,
    scenario: &Scenario,
    graphene: &GrapheneParams,
    quad: &QuadConfig,
) -> Result<f64> {
    GrapheneResponse::new(scenario, graphene, *quad).pi00(l, y)
}

/// Π̃ₗ(y), the TE combination.
pub fn pi_te(
    l: usize,
    y: f64,
    scenario: &Scenario,
    graphene: &GrapheneParams,
    quad: &QuadConfig,
) -> Result<f64> {
    GrapheneResponse::new(scenario, graphene, *quad).pi_te(l, y)
}

/// Threshold on 2ak_BT/(ṽ_Fħc) below which the large-separation closed
/// forms are flagged.
pub const LARGE_SEPARATION_MIN: f64 = 10.0;

/// Large-separation closed form of Π̃₀₀,₀(1):
///
/// 16αak_BT/(ṽ²ħc) · [ln(4 cosh A cosh B) − (Δ/4k_BT)(tanh A + tanh B)],
/// A = (Δ+2μ)/4k_BT, B = (Δ−2μ)/4k_BT.
pub fn pi00_asymptotic(scenario: &Scenario, graphene: &GrapheneParams) -> f64 {
    let r = ReducedParams::new(scenario, graphene);
    let ratio = r.large_separation_parameter();
    if ratio < LARGE_SEPARATION_MIN {
        log::warn!("large-separation parameter 2ak_BT/(v_F hbar c) = {ratio:.3} is not >> 1");
    }
    r.log_prefactor * asymptotic_bracket(r.gap_ratio, r.mu_ratio)
}

/// The bracket of the closed form in reduced variables g = Δ/2kT, m = μ/kT.
///
/// ln(2cosh x) = |x| + ln(1+e^{−2|x|}) and tanh x = sgn x (1 − 2/(e^{2|x|}+1)):
/// the |x| pieces cancel against the tanh pieces exactly, leaving only
/// exponentially small remainders (plus |A|+|B| when A, B differ in sign).
pub(crate) fn asymptotic_bracket(g: f64, m: f64) -> f64 {
    let a = 0.5 * g + 0.5 * m;
    let b = 0.5 * g - 0.5 * m;
    let lead = if a * b < 0.0 { a.abs() + b.abs() } else { 0.0 };
    let tail = |x: f64| (-2.0 * x.abs()).exp().ln_1p();
    let weight = |x: f64| x.signum() * fermi(2.0 * x.abs());
    lead + tail(a) + tail(b) + (a + b) * (weight(a) + weight(b))
}
