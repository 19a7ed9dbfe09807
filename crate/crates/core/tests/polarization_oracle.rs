//! Polarization tensor against reference values computed independently with
//! 45-digit tanh-sinh quadrature of the unrearranged integrals (thermal log
//! term kept separate, u-integral taken to infinity).

#![allow(clippy::excessive_precision, clippy::type_complexity)]

use graphene_casimir::graphene::GrapheneResponse;
use graphene_casimir::kinematics::{GrapheneParams, Scenario};
use graphene_casimir::quadrature::QuadConfig;

fn response(a_um: f64, delta: f64, mu: f64) -> GrapheneResponse {
    let s = Scenario::from_um(a_um, 300.0, 1.0).unwrap();
    let g = GrapheneParams::new(delta, mu).unwrap();
    GrapheneResponse::new(&s, &g, QuadConfig::default())
}

fn close(got: f64, want: f64, rel: f64, what: &str) {
    let err = ((got - want) / want).abs();
    assert!(
        err < rel,
        "{what}: got {got:.15e}, want {want:.15e}, rel err {err:.2e}"
    );
}

// (a μm, Δ eV, μ eV, y, Π̃₀₀,₀, Π̃₀)
const STATIC: [(f64, f64, f64, f64, f64, f64); 5] = [
    (5.6, 0.0, 0.0, 1.0, 10687.571831730604, 3.683882992193928e-8),
    (
        6.0,
        0.2,
        0.1,
        1.0,
        21718.835895021854,
        8.8809109540865833e-9,
    ),
    (
        10.0,
        0.3,
        0.0,
        2.5,
        564.18169293894736,
        2.7609784678497854e-7,
    ),
    (
        6.0,
        0.1,
        0.25,
        0.5,
        79875.852706804464,
        9.4964156712884911e-13,
    ),
    (
        20.0,
        0.2,
        0.05,
        4.0,
        17572.845921804318,
        1.1887519710291519e-6,
    ),
];

// (a μm, Δ eV, μ eV, l, y = factor·ζₗ + shift, Π̃₀₀,ₗ, Π̃ₗ)
const DYNAMIC: [(f64, f64, f64, usize, f64, f64, f64, f64); 5] = [
    (
        6.0,
        0.2,
        0.1,
        1,
        2.0,
        0.0,
        0.49021794832599099,
        47.834194406860798,
    ),
    (
        6.0,
        0.2,
        0.1,
        1,
        1.0,
        3.0,
        0.11432752314805911,
        11.155552770690452,
    ),
    (
        5.6,
        0.3,
        0.0,
        2,
        1.0,
        3.0,
        0.099032286320461868,
        33.670504432428244,
    ),
    (
        10.0,
        0.0,
        0.0,
        1,
        1.0,
        1.0,
        0.049178126459004266,
        13.32930843244144,
    ),
    (
        8.0,
        0.1,
        0.25,
        3,
        1.0,
        5.0,
        0.27539814070025872,
        429.95161262697973,
    ),
];

#[test]
fn zero_frequency_tensor_matches_reference() {
    for &(a, delta, mu, y, p00, pte) in &STATIC {
        let r = response(a, delta, mu);
        close(r.pi00(0, y).unwrap(), p00, 1e-8, "pi00 l=0");
        close(r.pi_te(0, y).unwrap(), pte, 1e-8, "pi_te l=0");
    }
}

#[test]
fn matsubara_tensor_matches_reference() {
    for &(a, delta, mu, l, factor, shift, p00, pte) in &DYNAMIC {
        let r = response(a, delta, mu);
        let y = factor * r.reduced().zeta(l) + shift;
        close(r.pi00(l, y).unwrap(), p00, 1e-8, "pi00");
        close(r.pi_te(l, y).unwrap(), pte, 1e-6, "pi_te");
    }
}
