//! Generalized reals: convergent sequences with nilpotent infinitesimals,
//! their monad/shadow set calculus, and a limit-free derivative engine.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

pub mod calculus;
pub mod error;
pub mod real;
pub mod seq;
pub mod sets;
pub mod verify;

pub use error::{Error, Result};
pub use real::{Cmp3, GeneralizedReal};
pub use seq::{Catalog, Generator};
pub use sets::{GeneralizedSet, RealSet};
