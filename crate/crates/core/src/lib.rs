// `!(a < b)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cesaro;
pub mod classify;
pub mod cli;
pub mod error;
mod float_json;
pub mod norms;
pub mod sequence;
pub mod space;
pub mod verify;
pub mod witness;
pub mod sum;

pub use error::{Error, Result};
