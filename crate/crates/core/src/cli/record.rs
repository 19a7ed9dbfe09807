use crate::error::{Error, Result};
use crate::force::{
    asymptotic_deviation, delta_vs_ideal, force_asymptotic, force_full,
    force_ideal_metal_classical, force_l0, ForceMode, ForceResult, NumericsConfig,
};
use crate::kinematics::{GrapheneParams, Scenario};
use crate::materials::SubstrateModel;

use super::output::{exact, num, opt, CsvTable, Metadata};
use super::Mode;

/// All inputs of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunPoint {
    pub a_um: f64,
    pub temp_k: f64,
    pub delta_ev: f64,
    pub mu_ev: f64,
    pub vf_ratio: f64,
    pub alpha0_cm3: f64,
    pub bare: bool,
    pub mode: Mode,
}

/// One self-contained CSV row: inputs plus every derived output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub point: RunPoint,
    pub substrate: String,
    pub rel_tol: f64,
    pub force: ForceResult,
    pub ideal_metal_classical_n: f64,
    pub bare_force_n: f64,
    pub delta_f: f64,
    pub asymptotic_n: Option<f64>,
    pub l0_to_asymptotic: Option<f64>,
}

pub const HEADER: [&str; 22] = [
    "a_um",
    "temp_k",
    "delta_ev",
    "mu_ev",
    "vf_ratio",
    "substrate",
    "coating",
    "alpha0_cm3",
    "mode",
    "rel_tol",
    "force_n",
    "l0_term_n",
    "tail_n",
    "l_max_used",
    "quad_error_n",
    "ideal_metal_classical_n",
    "bare_force_n",
    "ratio_to_bare",
    "ratio_to_ideal",
    "delta_f",
    "asymptotic_n",
    "ratio_l0_to_asymptotic",
];

impl RunRecord {
    pub fn evaluate(
        p: &RunPoint,
        substrate_label: &str,
        substrate: &SubstrateModel,
        cfg: &NumericsConfig,
    ) -> Result<Self> {
        let s = Scenario::from_um(p.a_um, p.temp_k, p.alpha0_cm3)?;
        let graphene = if p.bare {
            None
        } else {
            Some(GrapheneParams::with_vf_ratio(
                p.delta_ev, p.mu_ev, p.vf_ratio,
            )?)
        };
        let g = graphene.as_ref();
        let classical = force_ideal_metal_classical(&s);
        let force = match p.mode {
            Mode::Full => force_full(&s, g, substrate, cfg)?,
            Mode::L0 => force_l0(&s, g, substrate, cfg)?,
            Mode::Asymptotic => force_asymptotic(
                &s,
                g.ok_or_else(|| {
                    Error::invalid("asymptotic mode needs a graphene sheet (drop --bare)")
                })?,
            ),
            Mode::Classical => ForceResult {
                total: classical,
                l0_term: classical,
                tail_l_ge_1: 0.0,
                l_max_used: 0,
                quad_error_estimate: 0.0,
                mode: ForceMode::IdealMetal,
            },
        };
        let bare_force_n = match p.mode {
            Mode::Full => force_full(&s, None, substrate, cfg)?.total,
            _ => force_l0(&s, None, substrate, cfg)?.total,
        };
        let delta_f = delta_vs_ideal(&s, g, substrate, cfg)?;
        let (asymptotic_n, l0_to_asymptotic) = match g {
            Some(g) => (
                Some(force_asymptotic(&s, g).total),
                Some(1.0 + asymptotic_deviation(&s, g, substrate, cfg)?),
            ),
            None => (None, None),
        };
        Ok(Self {
            point: *p,
            substrate: substrate_label.to_string(),
            rel_tol: cfg.rel_tol,
            force,
            ideal_metal_classical_n: classical,
            bare_force_n,
            delta_f,
            asymptotic_n,
            l0_to_asymptotic,
        })
    }

    pub fn to_row(&self) -> Vec<String> {
        let p = &self.point;
        let f = &self.force;
        vec![
            exact(p.a_um),
            exact(p.temp_k),
            exact(p.delta_ev),
            exact(p.mu_ev),
            exact(p.vf_ratio),
            self.substrate.clone(),
            if p.bare { "none" } else { "graphene" }.into(),
            exact(p.alpha0_cm3),
            p.mode.as_str().into(),
            exact(self.rel_tol),
            num(f.total),
            num(f.l0_term),
            num(f.tail_l_ge_1),
            f.l_max_used.to_string(),
            num(f.quad_error_estimate),
            num(self.ideal_metal_classical_n),
            num(self.bare_force_n),
            num(f.total / self.bare_force_n),
            num(f.total / self.ideal_metal_classical_n),
            num(self.delta_f),
            opt(self.asymptotic_n),
            opt(self.l0_to_asymptotic),
        ]
    }

    pub fn table(meta: &Metadata, records: &[RunRecord], rel_tol: f64) -> CsvTable {
        let mut t = CsvTable::new(meta.clone(), &HEADER);
        t.push_meta(format!(
            "numerics: rel_tol={}, abs_tol={}, matsubara_rel_cutoff={}, max_l={}, y_tail_efolds={}",
            exact(rel_tol),
            exact(NumericsConfig::default().abs_tol),
            exact(NumericsConfig::default().matsubara_rel_cutoff),
            NumericsConfig::default().max_l,
            NumericsConfig::default().y_tail_efolds
        ));
        for r in records {
            t.push_row(r.to_row());
        }
        t
    }
}
