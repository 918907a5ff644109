//! Exact spectral bookkeeping for standard pseudo-Riemannian locally
//! symmetric spaces `Γ\G/H` with `Γ` inside a subgroup `L` acting properly.
//!
//! The discrete spectrum of `Γ\G/H` is read off from Riemannian data on
//! `Γ\L/L_K` through transfer maps between Harish-Chandra parameters of
//! `G` and infinitesimal characters of `L`. All arithmetic is exact over
//! the Gaussian rationals.
//!
//! - [`qarith`]: `Q(i)` scalars and parameter vectors
//! - [`weyl`]: classical Weyl groups, orbit canonicalization, `ρ`
//! - [`hcparam`]: eigenvalue parameters, infinitesimal characters, `t_λ`
//! - [`catalog`]: the cataloged triples `(G, H, L)` and fiber types
//! - [`transfer`]: the maps `ν(·, τ)`, `λ(·, τ)` and the scalar relation
//! - [`ads3`]: the `AdS³` case in full
//! - [`spectra`]: spectrum assembly and the JSON formats

pub mod ads3;
pub mod catalog;
pub mod error;
pub mod hcparam;
pub mod qarith;
pub mod spectra;
pub mod transfer;
pub mod weyl;

pub use error::{Error, Result};
pub use qarith::{GaussianRational, ParamVector};
