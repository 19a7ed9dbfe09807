//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The integrator keeps a list of subintervals and repeatedly bisects the one
//! with the largest error estimate until the summed error falls below
//! `max(abs_tol, rel_tol * |I|)`. When the subdivision budget runs out, the
//! budget is doubled (twice) before a [`QuadratureError`] is reported.
//!
//! Integrands are fallible so that errors from nested integrals propagate
//! out of the outer one.

use crate::error::QuadratureError;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and subdivision budget for one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Subdivision budget of the first rung of the retry ladder.
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            max_subdivisions: 200,
        }
    }
}

impl QuadConfig {
    /// Number of times the subdivision budget is doubled before giving up.
    pub const RETRY_DOUBLINGS: u32 = 2;

    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Integral value with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lower: f64,
    upper: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<E, F>(f: &mut F, lower: f64, upper: f64) -> Result<Segment, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let center = 0.5 * (lower + upper);
    let half = 0.5 * (upper - lower);
    let f_center = f(center)?;

    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();
    let mut f1 = [0.0; 7];
    let mut f2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let a = f(center - dx)?;
        let b = f(center + dx)?;
        f1[j] = a;
        f2[j] = b;
        res_kronrod += WGK[j] * (a + b);
        res_abs += WGK[j] * (a.abs() + b.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (a + b);
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }

    let value = res_kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }

    Ok(Segment {
        lower,
        upper,
        value,
        error,
    })
}

/// Integrate `f` over `[lower, upper]`.
///
/// A zero-width interval integrates to zero; `lower > upper` flips the sign.
pub fn integrate<E, F>(mut f: F, lower: f64, upper: f64, cfg: &QuadConfig) -> Result<Estimate, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    if lower == upper {
        return Ok(Estimate::default());
    }
    if lower > upper {
        let e = integrate(f, upper, lower, cfg)?;
        return Ok(Estimate {
            value: -e.value,
            error: e.error,
        });
    }

    let first = gauss_kronrod(&mut f, lower, upper)?;
    let mut segments = vec![first];
    let mut total = first.value;
    let mut total_err = first.error;
    let mut budget = cfg.max_subdivisions.max(1);
    let mut doublings = 0;

    loop {
        if total_err <= cfg.tolerance(total) {
            return Ok(Estimate {
                value: total,
                error: total_err,
            });
        }
        if segments.len() >= budget {
            if doublings == QuadConfig::RETRY_DOUBLINGS {
                return Err(QuadratureError {
                    lower,
                    upper,
                    value: total,
                    error: total_err,
                    tolerance: cfg.tolerance(total),
                    subdivisions: segments.len(),
                }
                .into());
            }
            doublings += 1;
            budget *= 2;
            log::debug!("quadrature on [{lower}, {upper}]: raising subdivision budget to {budget}");
        }

        let (idx, worst) = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, s)| (i, *s))
            .expect("at least one segment");

        let mid = 0.5 * (worst.lower + worst.upper);
        if mid <= worst.lower || mid >= worst.upper {
            // Interval at floating-point resolution; nothing left to refine.
            return Err(QuadratureError {
                lower,
                upper,
                value: total,
                error: total_err,
                tolerance: cfg.tolerance(total),
                subdivisions: segments.len(),
            }
            .into());
        }
        let left = gauss_kronrod(&mut f, worst.lower, mid)?;
        let right = gauss_kronrod(&mut f, mid, worst.upper)?;

        segments[idx] = left;
        segments.push(right);
        // Re-summing keeps the running totals free of accumulated cancellation.
        total = segments.iter().map(|s| s.value).sum();
        total_err = segments.iter().map(|s| s.error).sum();
    }
}

/// Infallible convenience wrapper around [`integrate`].
pub fn integrate_plain<F>(
    mut f: F,
    lower: f64,
    upper: f64,
    cfg: &QuadConfig,
) -> Result<Estimate, QuadratureError>
where
    F: FnMut(f64) -> f64,
{
    integrate(|x| Ok::<f64, QuadratureError>(f(x)), lower, upper, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let cfg = QuadConfig::default();
        let est = integrate_plain(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, &cfg).unwrap();
        assert_relative_eq!(est.value, 64.0 / 6.0 - 1.0 / 6.0 - 9.0, epsilon = 1e-13);
    }

    #[test]
    fn exponential_weight_moment() {
        let cfg = QuadConfig {
            rel_tol: 1e-12,
            ..Default::default()
        };
        let est = integrate_plain(|y| y.powi(3) * (-y).exp(), 0.0, 60.0, &cfg).unwrap();
        assert_relative_eq!(est.value, 6.0, max_relative = 1e-12);
    }

    #[test]
    fn log_endpoint_singularity_converges() {
        let cfg = QuadConfig {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            max_subdivisions: 500,
        };
        let est = integrate_plain(|x| (1.0 - x).ln(), 0.0, 1.0, &cfg).unwrap();
        assert_relative_eq!(est.value, -1.0, max_relative = 1e-7);
    }

    #[test]
    fn reversed_and_empty_intervals() {
        let cfg = QuadConfig::default();
        let e = integrate_plain(|x| x, 1.0, 0.0, &cfg).unwrap();
        assert_relative_eq!(e.value, -0.5, epsilon = 1e-14);
        assert_eq!(integrate_plain(|x| x, 2.0, 2.0, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn exhausted_budget_reports_nonconvergence() {
        let cfg = QuadConfig {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            max_subdivisions: 2,
        };
        let err = integrate_plain(|x| (50.0 * x).sin().abs(), 0.0, 10.0, &cfg).unwrap_err();
        assert!(err.subdivisions >= 8);
        assert!(err.error > err.tolerance);
    }

    #[test]
    fn integrand_errors_propagate() {
        #[derive(Debug, PartialEq)]
        enum E {
            Q,
            Boom,
        }
        impl From<QuadratureError> for E {
            fn from(_: QuadratureError) -> Self {
                E::Q
            }
        }
        let r = integrate(
            |x| if x > 0.5 { Err(E::Boom) } else { Ok(x) },
            0.0,
            1.0,
            &QuadConfig::default(),
        );
        assert_eq!(r.unwrap_err(), E::Boom);
    }
}
