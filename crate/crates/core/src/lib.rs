//! Representations, R-matrices and transfer operators of U_q(osp(2|1)) and
//! its twisted affinization U_q(C⁽²⁾(2)), with exact and numeric verifiers.

pub mod error;
pub mod scalar;
pub mod superlinalg;
pub mod check;
pub mod repr_osp;
pub mod repr_affine;
pub mod prefund;
pub mod lattice;
pub mod pit;
pub mod gold;
pub mod suite;

pub use error::{Error, Result};
