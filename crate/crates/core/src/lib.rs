#![allow(clippy::needless_range_loop, clippy::type_complexity)]
//! Tame/wild classification of irreducible representations with chopping
//! certificates, exact rank functions for the tame families, Chevalley and
//! Jordan algebra witnesses, and finite-field rank oracles.

pub mod cache;
pub mod chevalley;
pub mod chopping;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod jordan;
pub mod linalg;
pub mod oracle;
pub mod ranks;
pub mod rootsys;
pub mod scalar;

pub use error::{Error, Result};
