//! TM and TE reflection coefficients of a graphene-coated (or bare) substrate
//! at imaginary frequencies.

use crate::error::{Error, Result};
use crate::materials::Permittivity;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub r_tm: f64,
    pub r_te: f64,
    pub l: usize,
    pub y: f64,
}

/// R_TM and R_TE at (ζₗ, y) for permittivity εₗ and tensor values Π̃₀₀,ₗ(y), Π̃ₗ(y).
///
/// With q = y² − ζ² and r = √(y² + (ε−1)ζ²):
///
///   R_TM = [εyq + r(yΠ̃₀₀ − q)] / [εyq + r(yΠ̃₀₀ + q)]
///   R_TE = [q(y − r) − Π̃] / [q(y + r) + Π̃]
///
/// At ζ = 0 these reduce to (εy + Π̃₀₀ − y)/(εy + Π̃₀₀ + y) and −Π̃/(2y³ + Π̃).
/// On the light cone y = ζ (q = 0) with a vanishing sheet response both are
/// 0/0; the value returned there is the limit for Π̃₀₀/q → 0, i.e. that of
/// the bare substrate.
pub fn reflection_coeffs(
    l: usize,
    zeta: f64,
    y: f64,
    epsilon: Permittivity,
    pi00: f64,
    pi_te: f64,
) -> Result<ReflectionPair> {
    if !(zeta >= 0.0) || !(y >= zeta) || !(y > 0.0) {
        return Err(Error::OutsideDomain { y, zeta });
    }
    let eps = match epsilon {
        Permittivity::IdealMetal => {
            return Ok(ReflectionPair {
                r_tm: 1.0,
                r_te: -1.0,
                l,
                y,
            })
        }
        Permittivity::Finite(e) if e >= 1.0 => e,
        Permittivity::Finite(e) => {
            return Err(Error::invalid(format!(
                "permittivity must be >= 1, got {e}"
            )))
        }
    };
    let q = (y - zeta) * (y + zeta);
    let r = (y * y + (eps - 1.0) * zeta * zeta).sqrt();

    let tm_num = eps * y * q + r * (y * pi00 - q);
    let tm_den = eps * y * q + r * (y * pi00 + q);
    let te_num = q * (y - r) - pi_te;
    let te_den = q * (y + r) + pi_te;

    let (r_tm, r_te) = if tm_den == 0.0 || te_den == 0.0 {
        let n = eps.sqrt();
        ((n - 1.0) / (n + 1.0), (1.0 - n) / (1.0 + n))
    } else {
        (tm_num / tm_den, te_num / te_den)
    };
    Ok(ReflectionPair { r_tm, r_te, l, y })
}

/// 1 − R_TM from the same expression, without the cancellation in 1 − R.
pub fn tm_deficit(zeta: f64, y: f64, epsilon: Permittivity, pi00: f64) -> f64 {
    match epsilon {
        Permittivity::IdealMetal => 0.0,
        Permittivity::Finite(eps) => {
            let q = (y - zeta) * (y + zeta);
            let r = (y * y + (eps - 1.0) * zeta * zeta).sqrt();
            2.0 * r * q / (eps * y * q + r * (y * pi00 + q))
        }
    }
}

/// Zero-frequency TM coefficient (ε₀y + Π̃₀₀,₀ − y)/(ε₀y + Π̃₀₀,₀ + y).
pub fn r_tm_zero(y: f64, epsilon0: f64, pi00_zero: f64) -> f64 {
    (epsilon0 * y + pi00_zero - y) / (epsilon0 * y + pi00_zero + y)
}

/// 1 − R_TM at zero frequency, 2y/(Π̃₀₀,₀ + (ε₀+1)y).
pub fn r_tm_zero_deficit(y: f64, epsilon0: f64, pi00_zero: f64) -> f64 {
    2.0 * y / (pi00_zero + (epsilon0 + 1.0) * y)
}

/// Large-separation form 1 − 2y/Π̃₀₀,₀(1).
pub fn r_tm_zero_approx(y: f64, pi00_at_one: f64) -> f64 {
    1.0 - 2.0 * y / pi00_at_one
}

/// True (and logged) when Π̃₀₀,₀(1) is not large against ε₀ + 1, so that
/// [`r_tm_zero_approx`] should not be trusted.
pub fn approximation_is_weak(pi00_at_one: f64, epsilon0: f64) -> bool {
    let weak = pi00_at_one < 10.0 * (epsilon0 + 1.0);
    if weak {
        log::warn!(
            "Pi00(1) = {pi00_at_one:.4e} is not >> eps0 + 1 = {:.3}; large-separation reflection is unreliable",
            epsilon0 + 1.0
        );
    }
    weak
}
