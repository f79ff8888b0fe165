//! Exact classification and evaluation of Boolean Holant problems with
//! non-negative real algebraic weights.
//!
//! Values are [`TowerScalar`]s: exact elements of towers of real quadratic
//! extensions of the rationals. Signatures are dense tables indexed with the
//! first input as the most significant bit; positions are 0-based.
//!
//! ```
//! use holant::classify::classify;
//! use holant::evaluate::{cycle, eval_auto};
//! use holant::{Method, Signature};
//!
//! # fn main() -> holant::Result<()> {
//! let f = Signature::symmetric_ints(&[15, 10, 0, 10])?;
//! let verdict = classify(&[f])?;
//! assert_eq!(verdict.memberships(), ["holographic-product"]);
//!
//! let (value, method) = eval_auto(&cycle(&Signature::symmetric_ints(&[1, 0, 2])?, 10)?)?;
//! assert_eq!(value.get(0).to_string(), "1025");
//! assert_eq!(method, Method::Product);
//! # Ok(())
//! # }
//! ```

pub mod classes;
pub mod classify;
pub mod cli;
pub mod error;
pub mod evaluate;
pub mod gadgets;
mod gf2;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod signature;
pub mod transform;

pub use classify::{classify, Outcome, Verdict};
pub use error::{Error, Result};
pub use evaluate::{Method, SignatureGrid};
pub use matrix::Matrix;
pub use scalar::TowerScalar;
pub use signature::{Factor, Factorization, MatrixView, Signature};
