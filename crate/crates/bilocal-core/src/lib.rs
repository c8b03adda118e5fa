//! Analysis toolkit for three-party entanglement-swapping networks.
//!
//! Two independent sources each distribute a two-qubit state with X-shaped
//! density matrix; the middle party performs a Bell-state measurement and the
//! end parties test the bilocal inequality `sqrt|I| + sqrt|J| <= 1`.  The
//! crate builds the states, simulates the swap from first principles, and
//! evaluates locality, nonbilocality, steering, filtering, and sufficiency
//! criteria, together with grid scanners for the associated parameter regions.
//!
//! The crate is `no_std` (with `alloc`); file formats and the command line
//! front end live in the companion `bilocal-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod criteria;
pub mod linalg;
pub mod network;
pub mod scan;
pub mod states;

pub use linalg::{ComplexMatrix, RealSym3, C64};
