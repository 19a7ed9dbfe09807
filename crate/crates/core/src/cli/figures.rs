//! Parameter sets of the preset figures.

use clap::ValueEnum;
use rayon::prelude::*;

use crate::error::Result;
use crate::force::{asymptotic_deviation, delta_vs_ideal, force_l0, NumericsConfig};
use crate::kinematics::{GrapheneParams, Scenario};
use crate::materials::SubstrateModel;

use super::output::{exact, num, CsvTable, Metadata};
use super::{axis_points, Spacing};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Coated/uncoated SiO₂ force ratio vs gap at 6 μm, μ = 0 … 0.15 eV.
    Fig1a,
    /// Same for μ = 0.15 … 0.25 eV.
    Fig1b,
    /// Relative difference from the ideal metal, Δ = 0.2 eV, 5.6–60 μm.
    Fig2,
    /// Relative difference from the ideal metal, Δ = 0.3 eV, 5.6–60 μm.
    Fig3a,
    /// Same, 60–200 μm.
    Fig3b,
    /// Ratio to the asymptotic force, μ = 0, Δ = 0.15 and 0.2 eV.
    Fig4,
    /// Ratio to the asymptotic force, Δ = 0.2 eV, μ = 0.025 … 0.075 eV.
    Fig5,
    /// Ratio to the asymptotic force, Δ = 0.3 eV, μ = 0 … 0.1 eV.
    Fig6a,
    /// Same for μ = 0.15 … 0.25 eV, 5.6–30 μm.
    Fig6b,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quantity {
    /// F_sub,0 / F₀ of the uncoated substrate
    RatioToBare,
    /// (F_sub,0 − F₀^IM)/F₀^IM
    DeltaVsIdeal,
    /// F_sub,0 / F_as
    RatioToAsymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Axis {
    Delta,
    Separation,
}

#[derive(Debug, Clone)]
struct Curve {
    label: String,
    delta: f64,
    mu: f64,
    substrate: SubstrateModel,
}

struct Layout {
    axis: Axis,
    range: (f64, f64),
    quantity: Quantity,
    /// Fixed separation for the gap axis, μm.
    a_um: f64,
    curves: Vec<Curve>,
}

fn coated(delta: f64, mu: f64) -> Curve {
    Curve {
        label: format!("coated[delta={delta}eV;mu={mu}eV]"),
        delta,
        mu,
        substrate: SubstrateModel::sio2(),
    }
}

fn freestanding(delta: f64, mu: f64) -> Curve {
    Curve {
        label: format!("freestanding[delta={delta}eV;mu={mu}eV]"),
        delta,
        mu,
        substrate: SubstrateModel::Vacuum,
    }
}

impl Figure {
    fn layout(self) -> Layout {
        let sep = |range, quantity, curves| Layout {
            axis: Axis::Separation,
            range,
            quantity,
            a_um: 0.0,
            curves,
        };
        let gap = |mus: &[f64]| Layout {
            axis: Axis::Delta,
            range: (0.0, 0.5),
            quantity: Quantity::RatioToBare,
            a_um: 6.0,
            curves: mus.iter().map(|&m| coated(f64::NAN, m)).collect(),
        };
        let both = |pairs: &[(f64, f64)]| {
            pairs
                .iter()
                .flat_map(|&(d, m)| [coated(d, m), freestanding(d, m)])
                .collect::<Vec<_>>()
        };
        let at = |d: f64, mus: &[f64]| mus.iter().map(|&m| coated(d, m)).collect::<Vec<_>>();
        match self {
            Figure::Fig1a => gap(&[0.0, 0.05, 0.1, 0.15]),
            Figure::Fig1b => gap(&[0.15, 0.2, 0.25]),
            Figure::Fig2 => sep(
                (5.6, 60.0),
                Quantity::DeltaVsIdeal,
                at(0.2, &[0.0, 0.025, 0.05, 0.075, 0.1]),
            ),
            Figure::Fig3a => sep(
                (5.6, 60.0),
                Quantity::DeltaVsIdeal,
                at(0.3, &[0.0, 0.025, 0.05, 0.075, 0.1]),
            ),
            Figure::Fig3b => sep(
                (60.0, 200.0),
                Quantity::DeltaVsIdeal,
                at(0.3, &[0.0, 0.025, 0.05, 0.075]),
            ),
            Figure::Fig4 => sep(
                (5.6, 60.0),
                Quantity::RatioToAsymptotic,
                both(&[(0.15, 0.0), (0.2, 0.0)]),
            ),
            Figure::Fig5 => sep(
                (5.6, 60.0),
                Quantity::RatioToAsymptotic,
                both(&[(0.2, 0.025), (0.2, 0.05), (0.2, 0.075)]),
            ),
            Figure::Fig6a => sep(
                (5.6, 60.0),
                Quantity::RatioToAsymptotic,
                at(0.3, &[0.0, 0.025, 0.05, 0.075, 0.1]),
            ),
            Figure::Fig6b => sep(
                (5.6, 30.0),
                Quantity::RatioToAsymptotic,
                at(0.3, &[0.15, 0.2, 0.25]),
            ),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1a => "fig1a",
            Figure::Fig1b => "fig1b",
            Figure::Fig2 => "fig2",
            Figure::Fig3a => "fig3a",
            Figure::Fig3b => "fig3b",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6a => "fig6a",
            Figure::Fig6b => "fig6b",
        }
    }

    /// Number of curves (data columns after the axis).
    pub fn curve_count(self) -> usize {
        let l = self.layout();
        l.curves.len() + usize::from(l.axis == Axis::Delta)
    }

    pub fn table(self, meta: &Metadata, count: usize, cfg: &NumericsConfig) -> Result<CsvTable> {
        let layout = self.layout();
        let spacing = match layout.axis {
            Axis::Delta => Spacing::Linear,
            Axis::Separation => Spacing::Log,
        };
        let xs = axis_points(layout.range.0, layout.range.1, count, spacing)?;
        let quantity_name = match layout.quantity {
            Quantity::RatioToBare => "F_sub0/F0_SiO2",
            Quantity::DeltaVsIdeal => "(F_sub0-F0_IM)/F0_IM",
            Quantity::RatioToAsymptotic => "F_sub0/F_as",
        };

        let mut header = vec![match layout.axis {
            Axis::Delta => "delta_ev".to_string(),
            Axis::Separation => "a_um".to_string(),
        }];
        header.extend(layout.curves.iter().map(|c| match layout.axis {
            Axis::Delta => format!("coated[mu={}eV]", c.mu),
            Axis::Separation => c.label.clone(),
        }));
        if layout.axis == Axis::Delta {
            header.push("ideal_metal".into());
        }

        let rows = xs
            .par_iter()
            .map(|&x| -> Result<Vec<String>> {
                let (a_um, delta_axis) = match layout.axis {
                    Axis::Delta => (layout.a_um, Some(x)),
                    Axis::Separation => (x, None),
                };
                let s = Scenario::from_um(a_um, 300.0, 1.0)?;
                let mut row = vec![exact(x)];
                let bare = force_l0(&s, None, &SubstrateModel::sio2(), cfg)?.total;
                for c in &layout.curves {
                    let g = GrapheneParams::new(delta_axis.unwrap_or(c.delta), c.mu)?;
                    let v = match layout.quantity {
                        Quantity::RatioToBare => {
                            force_l0(&s, Some(&g), &c.substrate, cfg)?.total / bare
                        }
                        Quantity::DeltaVsIdeal => delta_vs_ideal(&s, Some(&g), &c.substrate, cfg)?,
                        Quantity::RatioToAsymptotic => {
                            1.0 + asymptotic_deviation(&s, &g, &c.substrate, cfg)?
                        }
                    };
                    row.push(num(v));
                }
                if layout.axis == Axis::Delta {
                    row.push(num(force_l0(&s, None, &SubstrateModel::IdealMetal, cfg)?
                        .total
                        / bare));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;

        let mut table = CsvTable::new(meta.clone(), &header);
        table.push_meta(format!("figure: {}", self.name()));
        table.push_meta(format!("quantity: {quantity_name}; T = 300 K"));
        if layout.axis == Axis::Delta {
            table.push_meta(format!("separation: {} um", layout.a_um));
        }
        for r in rows {
            table.push_row(r);
        }
        Ok(table)
    }
}
