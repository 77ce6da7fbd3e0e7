//! Resource accounting and fault-tolerance verification for concatenated
//! `[7,1,3]` Steane encoding on linear nearest-neighbour qubit stripes.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation; file formats, the command line and multi-threaded Monte Carlo
//! live in the `nnft` companion crate.
//!
//! Module map:
//!
//! * [`pauli`] / [`steane`]: Pauli operators as X/Z bit masks, the Steane
//!   code, syndrome arithmetic and the lookup decoder.
//! * [`circuit`] / [`classical`]: the circuit IR and the classical-bit
//!   references used by indicator blocks and measurements.
//! * [`layout`]: protection-block geometry and qubit counts.
//! * [`cost`]: gate-count accounting for the three communication models.
//! * [`threshold`]: threshold, logical error, computation length, depth.
//! * [`expand`]: explicit level-1 circuits for the building blocks.
//! * [`frame`] / [`sim`]: Pauli-frame propagation, single-fault scans and
//!   Monte Carlo estimation of the level-1 logical error rate.
//! * [`tableau`]: a small CHP stabilizer tableau used as an independent
//!   reference for the expander's circuits.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod circuit;
pub mod classical;
pub mod cost;
pub mod expand;
pub mod frame;
pub mod layout;
pub mod pauli;
pub mod sim;
pub mod steane;
pub mod tableau;
pub mod threshold;

pub use circuit::{Circuit, Gate, GateKind, Site};
pub use cost::{CommModel, CountBreakdown};
pub use layout::BlockVariant;
pub use pauli::PauliOperator;
