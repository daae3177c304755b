//! Finite DRC-semigroups, projection algebras, chained projection categories
//! and the constructions between them.

pub mod biordered;
pub mod chain;
pub mod corpus;
pub mod cpc;
pub mod error;
pub mod free;
pub mod functors;
pub mod io;
pub mod projection_algebra;
pub mod report;
pub mod search;
pub mod semigroup;
pub mod star;
pub mod unionfind;

pub use error::{DrcError, Result};
pub use projection_algebra::ProjectionAlgebra;
pub use report::{AxiomCheck, AxiomReport};
pub use semigroup::FiniteSemigroup;
