//! Epsilon coherent states of the symmetric Pöschl–Teller oscillator.
//!
//! The crate is layered bottom-up: [`specfun`] and [`quad`] are
//! self-contained numerical kernels, [`spt`] is the oscillator eigenbasis,
//! [`epscs`] builds the coherent states on top of it, and [`identity`] and
//! [`laghankel`] hold the identity-resolution and Laguerre-function
//! machinery. [`verify`] runs the oracle suites used by the CLI.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod epscs;
pub mod error;
pub mod grid;
pub mod identity;
pub mod laghankel;
pub mod quad;
pub mod specfun;
pub mod spt;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{GridSpec, WavefunctionGrid};
