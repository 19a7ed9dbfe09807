//! Physical constants (CODATA 2018) and unit conversions.

/// Fundamental constants used throughout the crate, in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// J/K
    pub boltzmann_constant: f64,
    /// J·m
    pub hbar_c: f64,
    pub fine_structure_alpha: f64,
    /// J per eV
    pub electronvolt: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: Self = Self {
        boltzmann_constant: 1.380_649e-23,
        hbar_c: HBAR * SPEED_OF_LIGHT,
        fine_structure_alpha: 1.0 / 137.035_999,
        electronvolt: 1.602_176_634e-19,
    };

    /// k_B T in joules.
    #[inline]
    pub fn thermal_energy(&self, temperature_k: f64) -> f64 {
        self.boltzmann_constant * temperature_k
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// m/s
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Constants every computation in this crate uses.
pub const CONSTANTS: PhysicalConstants = PhysicalConstants::CODATA_2018;

/// Default reduced Fermi velocity v_F / c.
pub const DEFAULT_VF_RATIO: f64 = 1.0 / 300.0;

pub const METERS_PER_MICRON: f64 = 1e-6;
pub const CUBIC_METERS_PER_CUBIC_CM: f64 = 1e-6;

#[inline]
pub fn um_to_m(a_um: f64) -> f64 {
    a_um * METERS_PER_MICRON
}

#[inline]
pub fn m_to_um(a_m: f64) -> f64 {
    a_m / METERS_PER_MICRON
}

#[inline]
pub fn ev_to_joule(e_ev: f64) -> f64 {
    e_ev * CONSTANTS.electronvolt
}

/// Photon energy ħξ in eV for an angular frequency ξ in rad/s.
#[inline]
pub fn rad_per_s_to_ev(xi: f64) -> f64 {
    HBAR * xi / CONSTANTS.electronvolt
}
