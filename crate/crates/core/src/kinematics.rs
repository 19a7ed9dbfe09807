//! Inputs of every force evaluation and the dimensionless variables built
//! from them.
//!
//! User-facing quantities carry physical units (eV, K, m, cm³). Everything
//! downstream works with the dimensionless Matsubara frequency ζₗ, the
//! integration variable y ≥ ζₗ and the derived pₗ, Dₗ, Bₗ.

use std::f64::consts::PI;

use crate::constants::{self, CONSTANTS, DEFAULT_VF_RATIO};
use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;

/// Energy gap, chemical potential and reduced Fermi velocity of a graphene sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrapheneParams {
    pub delta_ev: f64,
    pub mu_ev: f64,
    pub vf_ratio: f64,
}

impl GrapheneParams {
    pub fn new(delta_ev: f64, mu_ev: f64) -> Result<Self> {
        Self::with_vf_ratio(delta_ev, mu_ev, DEFAULT_VF_RATIO)
    }

    pub fn with_vf_ratio(delta_ev: f64, mu_ev: f64, vf_ratio: f64) -> Result<Self> {
        if !(delta_ev >= 0.0 && delta_ev.is_finite()) {
            return Err(Error::invalid(format!(
                "energy gap must be >= 0 eV, got {delta_ev}"
            )));
        }
        if !(mu_ev >= 0.0 && mu_ev.is_finite()) {
            return Err(Error::invalid(format!(
                "chemical potential must be >= 0 eV, got {mu_ev}"
            )));
        }
        if !(vf_ratio > 0.0 && vf_ratio < 1.0) {
            return Err(Error::invalid(format!(
                "Fermi velocity ratio must lie in (0, 1), got {vf_ratio}"
            )));
        }
        Ok(Self {
            delta_ev,
            mu_ev,
            vf_ratio,
        })
    }

    /// Same sheet with a different chemical potential. The sign is
    /// not checked, which lets tests probe the μ → −μ symmetry.
    pub fn with_mu_unchecked(self, mu_ev: f64) -> Self {
        Self { mu_ev, ..self }
    }
}

/// Polarizability at imaginary frequencies, tabulated against ħξ in eV.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizabilityTable {
    interp: MonotoneCubic,
}

impl PolarizabilityTable {
    /// Rows of (ħξ in eV, α in cm³). Energies must be positive and strictly increasing.
    pub fn new(rows: &[(f64, f64)]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::invalid(
                "polarizability table needs at least two rows",
            ));
        }
        if rows
            .iter()
            .any(|&(e, a)| !(e > 0.0) || !(a > 0.0) || !e.is_finite() || !a.is_finite())
        {
            return Err(Error::invalid(
                "polarizability table energies and values must be positive",
            ));
        }
        let xs: Vec<f64> = rows.iter().map(|r| r.0.ln()).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.1).collect();
        let interp = MonotoneCubic::new(xs, ys).ok_or_else(|| {
            Error::invalid("polarizability table energies must be strictly increasing")
        })?;
        Ok(Self { interp })
    }

    pub fn first_value(&self) -> f64 {
        self.interp.nodes().1[0]
    }

    /// α(iξ) in cm³; below the first node the first value is returned.
    pub fn at_energy(&self, energy_ev: f64) -> f64 {
        if energy_ev <= 0.0 {
            return self.first_value();
        }
        self.interp.eval(energy_ev.ln())
    }
}

/// The polarizable particle: static polarizability plus an optional dynamic table.
#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub alpha0_cm3: f64,
    pub dynamic_table: Option<PolarizabilityTable>,
}

impl Particle {
    pub fn new(alpha0_cm3: f64) -> Result<Self> {
        if !(alpha0_cm3 > 0.0 && alpha0_cm3.is_finite()) {
            return Err(Error::invalid(format!(
                "static polarizability must be > 0, got {alpha0_cm3}"
            )));
        }
        Ok(Self {
            alpha0_cm3,
            dynamic_table: None,
        })
    }

    pub fn with_dynamic_table(alpha0_cm3: f64, table: PolarizabilityTable) -> Result<Self> {
        let mut p = Self::new(alpha0_cm3)?;
        let first = table.first_value();
        if ((first - alpha0_cm3) / alpha0_cm3).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "first tabulated polarizability {first} must equal alpha0 = {alpha0_cm3}"
            )));
        }
        p.dynamic_table = Some(table);
        Ok(p)
    }

    pub fn alpha0_m3(&self) -> f64 {
        self.alpha0_cm3 * constants::CUBIC_METERS_PER_CUBIC_CM
    }

    /// αₗ/α₀ at the l-th Matsubara frequency; 1 without a dynamic table.
    pub fn relative_polarizability(&self, l: usize, temperature_k: f64) -> f64 {
        match (&self.dynamic_table, l) {
            (_, 0) | (None, _) => 1.0,
            (Some(table), _) => {
                let energy_ev = 2.0 * PI * CONSTANTS.thermal_energy(temperature_k) * l as f64
                    / CONSTANTS.electronvolt;
                table.at_energy(energy_ev) / self.alpha0_cm3
            }
        }
    }
}

/// Where and at what temperature the force is evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub separation_m: f64,
    pub temperature_k: f64,
    pub particle: Particle,
}

impl Scenario {
    pub fn new(separation_m: f64, temperature_k: f64, particle: Particle) -> Result<Self> {
        if !(separation_m > 0.0 && separation_m.is_finite()) {
            return Err(Error::invalid(format!(
                "separation must be > 0, got {separation_m} m"
            )));
        }
        if !(temperature_k > 0.0 && temperature_k.is_finite()) {
            return Err(Error::invalid(format!(
                "temperature must be > 0, got {temperature_k} K"
            )));
        }
        Ok(Self {
            separation_m,
            temperature_k,
            particle,
        })
    }

    /// Separation in μm, temperature in K, α₀ in cm³.
    pub fn from_um(a_um: f64, temperature_k: f64, alpha0_cm3: f64) -> Result<Self> {
        Self::new(
            constants::um_to_m(a_um),
            temperature_k,
            Particle::new(alpha0_cm3)?,
        )
    }

    pub fn with_separation(&self, separation_m: f64) -> Result<Self> {
        Self::new(separation_m, self.temperature_k, self.particle.clone())
    }

    pub fn separation_um(&self) -> f64 {
        constants::m_to_um(self.separation_m)
    }

    pub fn thermal_energy(&self) -> f64 {
        CONSTANTS.thermal_energy(self.temperature_k)
    }

    /// a k_B T / (ħc), the ratio every thermal prefactor is built from.
    pub fn thermal_length_ratio(&self) -> f64 {
        self.separation_m * self.thermal_energy() / CONSTANTS.hbar_c
    }
}

/// ζₗ = 4π a k_B T l / (ħc).
pub fn matsubara_zeta(l: usize, scenario: &Scenario) -> f64 {
    4.0 * PI * scenario.thermal_length_ratio() * l as f64
}

/// {ζₗ, y, pₗ, Dₗ, Bₗ} at one point of the y-integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicFactors {
    pub zeta_l: f64,
    pub y: f64,
    pub p_l: f64,
    pub d_l: f64,
    pub b_l: f64,
}

/// Scenario and sheet parameters reduced to the dimensionless combinations
/// the polarization tensor needs. Built once per (scenario, sheet).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams {
    /// ζ₁; ζₗ = l ζ₁.
    pub zeta1: f64,
    pub vf: f64,
    /// 2aΔ/(ħc), so that Dₗ = gap_length / pₗ.
    pub gap_length: f64,
    /// ħc/(4ak_BT), so that Bₗ = b_per_p · pₗ.
    pub b_per_p: f64,
    /// Δ/(2k_BT) = Dₗ Bₗ.
    pub gap_ratio: f64,
    /// μ/(k_BT).
    pub mu_ratio: f64,
    /// 16 α a k_B T / (ṽ_F² ħc).
    pub log_prefactor: f64,
    /// a k_B T/(ħc).
    pub thermal_ratio: f64,
}

impl ReducedParams {
    pub fn new(scenario: &Scenario, graphene: &GrapheneParams) -> Self {
        let kt = scenario.thermal_energy();
        let a = scenario.separation_m;
        let hc = CONSTANTS.hbar_c;
        let delta = constants::ev_to_joule(graphene.delta_ev);
        let mu = constants::ev_to_joule(graphene.mu_ev);
        let thermal_ratio = scenario.thermal_length_ratio();
        let vf = graphene.vf_ratio;
        Self {
            zeta1: 4.0 * PI * thermal_ratio,
            vf,
            gap_length: 2.0 * a * delta / hc,
            b_per_p: hc / (4.0 * a * kt),
            gap_ratio: delta / (2.0 * kt),
            mu_ratio: mu / kt,
            log_prefactor: 16.0 * CONSTANTS.fine_structure_alpha * thermal_ratio / (vf * vf),
            thermal_ratio,
        }
    }

    pub fn zeta(&self, l: usize) -> f64 {
        self.zeta1 * l as f64
    }

    /// pₗ, Dₗ, Bₗ at an arbitrary (ζ, y); `y >= zeta` is the caller's job.
    #[inline]
    pub fn factors_at(&self, zeta: f64, y: f64) -> KinematicFactors {
        let p = if zeta == 0.0 {
            self.vf * y
        } else {
            let v2 = self.vf * self.vf;
            (v2 * y * y + (1.0 - v2) * zeta * zeta).sqrt()
        };
        let d = if self.gap_length == 0.0 {
            0.0
        } else {
            self.gap_length / p
        };
        KinematicFactors {
            zeta_l: zeta,
            y,
            p_l: p,
            d_l: d,
            b_l: self.b_per_p * p,
        }
    }

    /// Thermal log term ln[(e^{-Δ/2kT}+e^{μ/kT})(e^{-Δ/2kT}+e^{-μ/kT})],
    /// evaluated without forming large exponentials.
    pub fn thermal_log(&self) -> f64 {
        log_add_exp(-self.gap_ratio, self.mu_ratio) + log_add_exp(-self.gap_ratio, -self.mu_ratio)
    }

    /// 2a k_B T/(ṽ_F ħc); the large-separation expansion needs this ≫ 1.
    pub fn large_separation_parameter(&self) -> f64 {
        2.0 * self.thermal_ratio / self.vf
    }
}

/// ln(eˣ + eʸ)
#[inline]
pub(crate) fn log_add_exp(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    hi + (lo - hi).exp().ln_1p()
}

/// Kinematic factors at Matsubara index `l` and integration variable `y`.
pub fn kinematic_factors(
    l: usize,
    y: f64,
    scenario: &Scenario,
    graphene: &GrapheneParams,
) -> Result<KinematicFactors> {
    let reduced = ReducedParams::new(scenario, graphene);
    let zeta = reduced.zeta(l);
    if !(y >= zeta) {
        return Err(Error::OutsideDomain { y, zeta });
    }
    Ok(reduced.factors_at(zeta, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn room(a_um: f64) -> Scenario {
        Scenario::from_um(a_um, 300.0, 1.0).unwrap()
    }

    #[test]
    fn zeta_is_zero_at_l0_and_linear() {
        let s = room(5.6);
        assert_eq!(matsubara_zeta(0, &s), 0.0);
        let z1 = matsubara_zeta(1, &s);
        assert_eq!(matsubara_zeta(2, &s), 2.0 * z1);
    }

    #[test]
    fn zeta1_at_5_6_um() {
        // 4π a k_B T/(ħc), evaluated by hand with CODATA 2018 values.
        let oracle =
            4.0 * PI * 5.6e-6 * 1.380_649e-23 * 300.0 / (1.054_571_817e-34 * 299_792_458.0);
        let z1 = matsubara_zeta(1, &room(5.6));
        assert_relative_eq!(z1, oracle, max_relative = 1e-14);
        assert!((z1 - 9.22).abs() < 0.01, "{z1}");
    }

    #[test]
    fn b0_at_unit_y() {
        let g = GrapheneParams::new(0.0, 0.0).unwrap();
        let k = kinematic_factors(0, 1.0, &room(5.6), &g).unwrap();
        let oracle = (1.0 / 300.0) * 1.054_571_817e-34 * 299_792_458.0
            / (4.0 * 5.6e-6 * 1.380_649e-23 * 300.0);
        assert_relative_eq!(k.b_l, oracle, max_relative = 1e-13);
        assert!((k.b_l - 1.136e-3).abs() < 1e-6);
        assert_eq!(k.d_l, 0.0);
        assert_eq!(k.p_l, 1.0 / 300.0);
    }

    #[test]
    fn p_equals_zeta_at_lower_limit() {
        let g = GrapheneParams::new(0.2, 0.1).unwrap();
        let s = room(6.0);
        for l in 1..5 {
            let z = matsubara_zeta(l, &s);
            let k = kinematic_factors(l, z, &s, &g).unwrap();
            assert_relative_eq!(k.p_l, z, max_relative = 1e-15);
        }
    }

    #[test]
    fn rejects_y_below_zeta() {
        let g = GrapheneParams::new(0.2, 0.1).unwrap();
        let s = room(6.0);
        let z = matsubara_zeta(1, &s);
        assert!(matches!(
            kinematic_factors(1, 0.5 * z, &s, &g),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn parameter_validation() {
        assert!(GrapheneParams::new(-0.1, 0.0).is_err());
        assert!(GrapheneParams::new(0.1, -0.1).is_err());
        assert!(GrapheneParams::with_vf_ratio(0.1, 0.0, 1.0).is_err());
        assert!(Scenario::from_um(0.0, 300.0, 1.0).is_err());
        assert!(Scenario::from_um(1.0, -3.0, 1.0).is_err());
        assert!(Particle::new(0.0).is_err());
    }

    #[test]
    fn dynamic_table_must_start_at_alpha0() {
        let t = PolarizabilityTable::new(&[(0.01, 2.0), (1.0, 1.5), (10.0, 0.2)]).unwrap();
        assert!(Particle::with_dynamic_table(1.0, t.clone()).is_err());
        let p = Particle::with_dynamic_table(2.0, t).unwrap();
        assert_eq!(p.relative_polarizability(0, 300.0), 1.0);
        let r1 = p.relative_polarizability(1, 300.0);
        assert!(r1 < 1.0 && r1 > 0.75);
        assert!(PolarizabilityTable::new(&[(0.0, 2.0), (1.0, 1.0)]).is_err());
    }

    #[test]
    fn thermal_log_survives_huge_gaps() {
        let g = GrapheneParams::new(5.0, 3.0).unwrap();
        let r = ReducedParams::new(&room(10.0), &g);
        let v = r.thermal_log();
        assert!(v.is_finite() && v > 0.0);
        let g0 = GrapheneParams::new(0.0, 0.0).unwrap();
        assert_relative_eq!(
            ReducedParams::new(&room(10.0), &g0).thermal_log(),
            4f64.ln(),
            max_relative = 1e-15
        );
    }

    proptest! {
        #[test]
        fn gap_and_thermal_parameters_multiply_to_delta_over_2kt(
            l in 0usize..12, extra in 0.0f64..40.0, y0 in 1e-3f64..5.0,
            a_um in 0.5f64..300.0, t in 10.0f64..1000.0, delta in 0.0f64..1.0,
        ) {
            let s = Scenario::from_um(a_um, t, 1.0).unwrap();
            let g = GrapheneParams::new(delta, 0.05).unwrap();
            let z = matsubara_zeta(l, &s);
            let y = if l == 0 { y0 } else { z + extra };
            let k = kinematic_factors(l, y, &s, &g).unwrap();
            let target = constants::ev_to_joule(delta) / (2.0 * s.thermal_energy());
            prop_assert!((k.d_l * k.b_l - target).abs() <= 1e-12 * target.max(1e-300));
        }

        #[test]
        fn factors_are_monotone_in_y(l in 0usize..8, y_lo in 0.0f64..20.0, dy in 0.0f64..20.0, a_um in 1.0f64..100.0) {
            let s = Scenario::from_um(a_um, 300.0, 1.0).unwrap();
            let g = GrapheneParams::new(0.2, 0.05).unwrap();
            let z = matsubara_zeta(l, &s);
            let y1 = z + y_lo + 1e-6;
            let y2 = y1 + dy;
            let k1 = kinematic_factors(l, y1, &s, &g).unwrap();
            let k2 = kinematic_factors(l, y2, &s, &g).unwrap();
            prop_assert!(k2.p_l >= k1.p_l);
            prop_assert!(k2.d_l <= k1.d_l);
            prop_assert!(k2.b_l >= k1.b_l);
            prop_assert!(k1.p_l >= g.vf_ratio * y1 * (1.0 - 1e-15));
            prop_assert!(k1.b_l > 0.0);
        }

        #[test]
        fn zeta_over_l_is_constant(l in 1usize..500, a_um in 0.1f64..1000.0) {
            let s = Scenario::from_um(a_um, 300.0, 1.0).unwrap();
            let r = matsubara_zeta(l, &s) / l as f64;
            prop_assert!((r - matsubara_zeta(1, &s)).abs() <= 1e-15 * r);
        }
    }
}
