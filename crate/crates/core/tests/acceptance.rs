//! Acceptance report: one PASS/FAIL line per criterion, then a nonzero exit
//! status if any criterion failed.

use std::process::Command;

use graphene_casimir::force::{
    asymptotic_deviation, crossover_quantity, find_crossover, force_full,
    force_ideal_metal_classical, force_l0, CrossoverQuantity, CrossoverQuery, NumericsConfig,
};
use graphene_casimir::graphene::{pi00, pi00_asymptotic, pi_te, GrapheneResponse};
use graphene_casimir::kinematics::ReducedParams;
use graphene_casimir::materials::{permittivity, static_permittivity, Permittivity};
use graphene_casimir::quadrature::QuadConfig;
use graphene_casimir::reflection::reflection_coeffs;
use graphene_casimir::{constants, Error, GrapheneParams, Scenario, SubstrateModel};

/// Relative half-width of the band around separations read off plots.
const PLOT_READ: f64 = 0.05;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn room(a_um: f64) -> Scenario {
    Scenario::from_um(a_um, 300.0, 1.0).unwrap()
}

fn sheet(delta: f64, mu: f64) -> GrapheneParams {
    GrapheneParams::new(delta, mu).unwrap()
}

fn cfg() -> NumericsConfig {
    NumericsConfig::default()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64))
        .collect()
}

/// Crossing of `quantity` through 1% on [lo, hi] μm, or a description of why none was found.
fn crossing_um(
    quantity: CrossoverQuantity,
    g: &GrapheneParams,
    lo: f64,
    hi: f64,
) -> Result<f64, String> {
    let q = CrossoverQuery::new(
        quantity,
        0.01,
        (constants::um_to_m(lo), constants::um_to_m(hi)),
    )
    .unwrap();
    match find_crossover(&q, &room(lo), Some(g), &SubstrateModel::sio2(), &cfg()) {
        Ok(a) => Ok(constants::m_to_um(a)),
        Err(Error::NoStraddle {
            value_low,
            value_high,
            ..
        }) => Err(format!(
            "no 1% crossing in [{lo}, {hi}] um ({value_low:.3e} .. {value_high:.3e})"
        )),
        Err(e) => Err(e.to_string()),
    }
}

fn crossover_table(quantity: CrossoverQuantity, delta: f64, cases: &[(f64, f64)]) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for &(mu, expected) in cases {
        match crossing_um(quantity, &sheet(delta, mu), 0.1, 5000.0) {
            Ok(a) => {
                let ok = (a / expected - 1.0).abs() <= PLOT_READ;
                pass &= ok;
                parts.push(format!("mu={mu}: {a:.3} um (want {expected})"));
            }
            Err(msg) => {
                pass = false;
                parts.push(format!("mu={mu}: {msg} (want {expected})"));
            }
        }
    }
    Verdict::new(pass, parts.join("; "))
}

fn classical_identity() -> Verdict {
    let mut worst = 0.0f64;
    for a_um in [0.5, 5.6, 6.0, 37.0, 600.0] {
        for t in [4.0, 77.0, 300.0, 1000.0] {
            let s = Scenario::from_um(a_um, t, 1.0).unwrap();
            let f = force_l0(&s, None, &SubstrateModel::IdealMetal, &cfg())
                .unwrap()
                .total;
            let want = force_ideal_metal_classical(&s);
            worst = worst.max((f / want - 1.0).abs());
        }
    }
    Verdict::new(
        worst <= 1e-10,
        format!("max rel dev {worst:.2e} (tol 1e-10)"),
    )
}

fn bare_substrate() -> Verdict {
    let eps0 = static_permittivity(&SubstrateModel::sio2()).unwrap();
    let coef = (eps0 - 1.0) / (eps0 + 1.0);
    let mut worst = 0.0f64;
    for a_um in [5.6, 20.0, 200.0] {
        let s = room(a_um);
        let f = force_l0(&s, None, &SubstrateModel::sio2(), &cfg())
            .unwrap()
            .total;
        worst = worst.max((f / (coef * force_ideal_metal_classical(&s)) - 1.0).abs());
    }
    let rounds = (coef - 0.58420).abs() < 5e-6;
    Verdict::new(
        worst <= 1e-8 && rounds,
        format!("coefficient {coef:.6}, max rel dev {worst:.2e} (tol 1e-8)"),
    )
}

fn asymptotic_accuracy() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    let thresholds = [
        (0.15, 0.0, 14.5),
        (0.2, 0.0, 25.0),
        (0.2, 0.025, 41.0),
        (0.2, 0.05, 13.5),
        (0.3, 0.075, 60.0),
        (0.3, 0.1, 24.0),
    ];
    for (delta, mu, expected) in thresholds {
        match crossing_um(
            CrossoverQuantity::AsymptoticVsNumeric,
            &sheet(delta, mu),
            0.2,
            5000.0,
        ) {
            Ok(a) => {
                let ok = (a / expected - 1.0).abs() <= PLOT_READ;
                pass &= ok;
                parts.push(format!("{delta}/{mu}: {a:.3} um (want {expected})"));
            }
            Err(msg) => {
                pass = false;
                parts.push(format!("{delta}/{mu}: {msg} (want {expected})"));
            }
        }
    }
    for (delta, mu) in [(0.2, 0.075), (0.3, 0.15), (0.3, 0.2), (0.3, 0.25)] {
        let g = sheet(delta, mu);
        let worst = log_grid(5.6, 2000.0, 25)
            .into_iter()
            .map(|a| {
                asymptotic_deviation(&room(a), &g, &SubstrateModel::sio2(), &cfg())
                    .unwrap()
                    .abs()
            })
            .fold(0.0, f64::max);
        let ok = worst < 0.01;
        pass &= ok;
        parts.push(format!(
            "{delta}/{mu}: max |ratio-1| {worst:.2e} for a >= 5.6 um"
        ));
    }
    Verdict::new(pass, parts.join("; "))
}

fn l0_dominance() -> Verdict {
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut bounds = Vec::new();
    for delta in [0.2, 0.3] {
        for mu in [0.0, 0.1, 0.25] {
            let g = sheet(delta, mu);
            for a in log_grid(5.6, 200.0, 10) {
                let v = crossover_quantity(
                    CrossoverQuantity::L0VsFull,
                    &room(a),
                    Some(&g),
                    &SubstrateModel::sio2(),
                    &cfg(),
                )
                .unwrap();
                worst = worst.max(v);
            }
            match crossing_um(CrossoverQuantity::L0VsFull, &g, 2.0, 20.0) {
                Ok(a) => {
                    pass &= (4.5..=7.0).contains(&a);
                    bounds.push(a);
                }
                Err(_) => {
                    pass = false;
                    bounds.push(f64::NAN);
                }
            }
        }
    }
    pass &= worst < 0.01;
    let lo = bounds.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = bounds.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Verdict::new(
        pass,
        format!("max |F-F0|/|F| at a >= 5.6 um {worst:.3e} (tol 1e-2); 1% boundary in [{lo:.3}, {hi:.3}] um (want [4.5, 7])"),
    )
}

fn near_ideal_coating() -> Verdict {
    let s = room(6.0);
    let bare = force_l0(&s, None, &SubstrateModel::sio2(), &cfg())
        .unwrap()
        .total;
    let coated = force_l0(&s, Some(&sheet(0.1, 0.25)), &SubstrateModel::sio2(), &cfg())
        .unwrap()
        .total;
    let ideal = force_ideal_metal_classical(&s) / bare;
    let ratio = coated / bare;
    let dev = (ratio / 1.7117 - 1.0).abs();
    Verdict::new(
        dev <= 0.03 && (ideal / 1.7117 - 1.0).abs() < 1e-4,
        format!(
            "F_sub0/F0_SiO2 = {ratio:.5}, F0_IM/F0_SiO2 = {ideal:.5}, dev {dev:.2e} (tol 3e-2)"
        ),
    )
}

fn property_suites() -> Verdict {
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    let quad = QuadConfig::default();
    let sio2 = SubstrateModel::sio2();

    // Reflection bounds.
    let mut bounded = true;
    for (a, delta, mu) in [
        (5.6, 0.0, 0.0),
        (6.0, 0.2, 0.1),
        (10.0, 0.3, 0.25),
        (40.0, 0.1, 0.05),
    ] {
        let s = room(a);
        let resp = GrapheneResponse::new(&s, &sheet(delta, mu), quad);
        for l in 0..=4 {
            let zeta = resp.reduced().zeta(l);
            for y in [zeta.max(1e-3), zeta + 0.5, zeta + 3.0, zeta + 20.0] {
                let p = resp.point(l, y).unwrap();
                let r = reflection_coeffs(l, zeta, y, permittivity(&sio2, l, &s), p.pi00, p.pi_te)
                    .unwrap();
                bounded &= (0.0..=1.0).contains(&r.r_tm) && (-1.0..=0.0).contains(&r.r_te);
            }
        }
    }
    check("reflection bounds", bounded);

    // Evenness in μ.
    let s = room(6.0);
    let g = sheet(0.2, 0.1);
    let even = [(0, 1.0f64), (1, 2.5), (3, 12.0)].iter().all(|&(l, y)| {
        let y = y.max(ReducedParams::new(&s, &g).zeta(l));
        pi00(l, y, &s, &g, &quad).unwrap()
            == pi00(l, y, &s, &g.with_mu_unchecked(-0.1), &quad).unwrap()
            && pi_te(l, y, &s, &g, &quad).unwrap()
                == pi_te(l, y, &s, &g.with_mu_unchecked(-0.1), &quad).unwrap()
    });
    check("mu evenness", even);

    // Closed form nonincreasing in Δ, nondecreasing in μ.
    let mut mono = true;
    for a in [5.6, 30.0] {
        let s = room(a);
        for k in 0..30 {
            let (d0, d1) = (0.02 * k as f64, 0.02 * (k + 1) as f64);
            for mu in [0.0, 0.05, 0.1, 0.25] {
                mono &= pi00_asymptotic(&s, &sheet(d1, mu)) <= pi00_asymptotic(&s, &sheet(d0, mu));
                mono &= pi00_asymptotic(&s, &sheet(d0, mu + 0.01))
                    >= pi00_asymptotic(&s, &sheet(d0, mu));
            }
        }
    }
    check("closed-form monotonicity", mono);

    // D·B = Δ/2k_BT.
    let r = ReducedParams::new(&room(6.0), &sheet(0.3, 0.1));
    let kt = room(6.0).thermal_energy();
    let want = constants::ev_to_joule(0.3) / (2.0 * kt);
    let identity = (0..=5).all(|l| {
        let zeta = r.zeta(l);
        [zeta.max(0.1), zeta + 1.0, zeta + 30.0].iter().all(|&y| {
            let k = r.factors_at(zeta, y);
            (k.d_l * k.b_l / want - 1.0).abs() < 1e-14
        })
    });
    check("D*B identity", identity);

    // ε = 1 reduces to the freestanding closed forms.
    let vacuum = [
        (0.0, 0.5, 300.0, 1.0),
        (2.0, 3.0, 40.0, 5.0),
        (5.0, 5.0, 10.0, 2.0),
    ]
    .iter()
    .all(|&(zeta, y, p00, pte): &(f64, f64, f64, f64)| {
        let r = reflection_coeffs(1, zeta, y, Permittivity::Finite(1.0), p00, pte).unwrap();
        let q = y * y - zeta * zeta;
        let tm = y * p00 / (y * p00 + 2.0 * q);
        let te = -pte / (2.0 * y * q + pte);
        (r.r_tm - tm).abs() <= 4.0 * f64::EPSILON * tm.abs().max(f64::MIN_POSITIVE)
            && (r.r_te - te).abs() <= 4.0 * f64::EPSILON * te.abs().max(f64::MIN_POSITIVE)
    });
    check("vacuum reduction", vacuum);

    // Halving the inner tolerance moves Π by less than the prior tolerance.
    let half = QuadConfig {
        rel_tol: quad.rel_tol / 2.0,
        abs_tol: quad.abs_tol / 2.0,
        ..quad
    };
    let halving = [(0, 1.0f64), (1, 2.0), (2, 8.0)].iter().all(|&(l, y)| {
        let y = y.max(ReducedParams::new(&s, &g).zeta(l) * 1.5);
        let a = pi00(l, y, &s, &g, &quad).unwrap();
        let b = pi00(l, y, &s, &g, &half).unwrap();
        let c = pi_te(l, y, &s, &g, &quad).unwrap();
        let d = pi_te(l, y, &s, &g, &half).unwrap();
        (a - b).abs() <= quad.tolerance(a) && (c - d).abs() <= quad.tolerance(c)
    });
    check("tolerance halving", halving);

    // Full force moves by less than rel_tol when every tolerance is tightened tenfold.
    let tight = cfg().scaled(0.1);
    let forces = [(5.6, 0.2, 0.1), (10.0, 0.3, 0.0)]
        .iter()
        .all(|&(a, d, m)| {
            let x = force_full(&room(a), Some(&sheet(d, m)), &sio2, &cfg())
                .unwrap()
                .total;
            let y = force_full(&room(a), Some(&sheet(d, m)), &sio2, &tight)
                .unwrap()
                .total;
            ((x - y) / y).abs() < cfg().rel_tol
        });
    check("force convergence", forces);

    // Byte-identical CSV for identical flags.
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gcp"))
            .args(["figure", "fig5", "--count", "6"])
            .output()
            .unwrap()
    };
    let (x, y) = (run(), run());
    check(
        "deterministic CSV",
        x.status.success() && !x.stdout.is_empty() && x.stdout == y.stdout,
    );

    let detail = if failures.is_empty() {
        "reflection bounds, mu evenness, closed-form monotonicity, D*B identity, vacuum reduction, \
         tolerance halving, force convergence, deterministic CSV"
            .to_string()
    } else {
        format!("failed: {}", failures.join(", "))
    };
    Verdict::new(failures.is_empty(), detail)
}

fn main() {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 8] = [
        (
            "ideal-metal l=0 force equals the classical form",
            classical_identity,
        ),
        ("bare SiO2 force equals 0.58420 F_IM", bare_substrate),
        ("1% crossovers vs ideal metal, gap 0.2 eV", || {
            crossover_table(
                CrossoverQuantity::DeltaVsIdeal,
                0.2,
                &[(0.075, 6.5), (0.05, 15.5), (0.025, 35.5), (0.0, 53.0)],
            )
        }),
        ("1% crossovers vs ideal metal, gap 0.3 eV", || {
            crossover_table(
                CrossoverQuantity::DeltaVsIdeal,
                0.3,
                &[
                    (0.1, 24.5),
                    (0.075, 63.0),
                    (0.05, 157.0),
                    (0.025, 363.0),
                    (0.0, 550.0),
                ],
            )
        }),
        (
            "1% agreement with the asymptotic force",
            asymptotic_accuracy,
        ),
        ("zero-frequency dominance above 5.6 um", l0_dominance),
        ("near-ideal-metal coating at 6 um", near_ideal_coating),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let v = check();
        println!(
            "criterion {}: {} | {} | {}",
            k + 1,
            if v.pass { "PASS" } else { "FAIL" },
            title,
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
