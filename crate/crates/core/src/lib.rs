//! Capacity and outage analysis for fading channels corrupted by symmetric
//! alpha-stable noise, plus the lunar link budget that feeds them.
//!
//! The crate is layered bottom-up:
//!
//! - [`special`], [`quad`]: gamma-family functions and quadrature rules.
//! - [`alpha_stable`]: SαS densities, sampling and the complex isotropic noise model.
//! - [`fading`], [`snr_model`]: Nakagami-m amplitudes and the induced SNR law.
//! - [`capacity_bounds`]: closed-form capacity and outage bounds, Meijer-G evaluation.
//! - [`blahut_arimoto`]: amplitude-constrained capacity of the discretized channel.
//! - [`link_budget`]: Friis budget and receiver noise temperature.
//! - [`mc_oracle`]: Monte-Carlo counterparts of every analytical quantity.
//! - [`scenario`]: parameter sweeps, CSV and SVG output.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod alpha_stable;
pub mod blahut_arimoto;
pub mod capacity_bounds;
pub mod error;
pub mod fading;
pub mod link_budget;
pub mod mc_oracle;
pub mod quad;
pub mod rng;
pub mod scenario;
pub mod snr_model;
pub mod special;

pub use error::{Error, Result};
