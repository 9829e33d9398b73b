//! Exact symbolic calculus for binary and ternary forms.

pub mod acceptance;
pub mod angular;
pub mod binary;
pub mod characters;
pub mod covariants;
pub mod emap;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod sample;
pub mod ternary;
pub mod transvectant;

pub use binary::{BinForm, BinaryForm, Coeff, SymbolicForm};
pub use error::{Error, Result};
pub use poly::{MultiPoly, VarSet};
pub use rational::Rational;
