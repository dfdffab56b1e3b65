//! Invariant tensors of su(n) and a numerical verifier for the identities
//! they satisfy.
//!
//! The crate builds the generalized Gell-Mann basis, the structure constants
//! `f` and `d`, the symmetric `d`-family, the totally antisymmetric cocycle
//! tensors of orders 3, 5, 7, 9 through several independent routes, the
//! symmetric `t`-tensors obtained by pairing cocycle indices with `f`, and
//! antisymmetrized products of the generators themselves. On top of that it
//! ships a data-driven catalogue of identity checks with residual reporting,
//! exposed both as a library ([`verify`]) and through the `omtk` binary.
//!
//! # Quick start
//!
//! ```
//! use omtk::invariants::InvariantSet;
//!
//! let inv = InvariantSet::build(3, 3).unwrap();
//! let f = inv.f();
//! assert_eq!(f.get(&[0, 1, 2]), 1.0); // f_123 = 1
//! let omega5 = inv.omega(3).unwrap();
//! let square = omtk::tensor::full_contract(omega5, omega5);
//! assert!((square - 40.0).abs() < 1e-9);
//! ```

pub mod basis;
pub mod error;
pub mod invariants;
pub mod lambda;
pub mod matrix;
pub mod par;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
