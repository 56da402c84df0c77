//! Exact computations with noncommutative Grassmannian Z-algebras.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is computed over an
//! exact [`field::Field`]; the rationals are the default.

#![no_std]

extern crate alloc;

pub mod error;
pub mod exactla;
pub mod field;
pub mod helix;
pub mod multilinear;
pub mod ngrass;
pub mod points;
pub mod zalg;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
