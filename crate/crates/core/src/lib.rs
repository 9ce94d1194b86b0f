//! Knitting, Hom tables and orbit/stratum combinatorics for the repetitive
//! algebra of a Dynkin quiver.

pub mod ar_knit;
pub mod config;
pub mod error;
pub mod gamma_hat;
pub mod hom;
pub mod linalg;
pub mod module_class;
pub mod oracle;
pub mod orbits;
pub mod projectivization;
pub mod qchar;
pub mod quiver;
pub mod repetitive;
pub mod selfcheck;

pub use error::{Error, Result};
