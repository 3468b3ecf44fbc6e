//! Exact intersection numbers of twisted cycles and forms on Terada-n
//! polytopes, the q-series identities behind their closed forms, and a
//! numeric check of the Selberg reciprocity relation.

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod homology;
pub mod qseries;
pub mod ratfun;
pub mod selberg;
pub mod terada;

pub use error::{Error, Result};
