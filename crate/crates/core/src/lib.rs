//! Casimir–Polder force between a polarizable particle and a gapped, doped
//! graphene sheet on a dielectric substrate, from the Lifshitz formula at
//! finite temperature.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod constants;
pub mod error;
pub mod force;
pub mod graphene;
pub mod interp;
pub mod kinematics;
pub mod materials;
pub mod quadrature;
pub mod reflection;

pub use error::{Error, Result};
pub use force::{ForceMode, ForceResult, NumericsConfig};
pub use graphene::GrapheneResponse;
pub use kinematics::{GrapheneParams, Scenario};
pub use materials::SubstrateModel;
