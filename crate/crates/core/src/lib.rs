//! Hamiltonian cycles in Cayley graphs on finite groups whose commutator
//! subgroup has order twice an odd prime.
//!
//! The crate has three layers:
//!
//! * concrete finite-group arithmetic over multiplication tables
//!   ([`group`], [`subgrp`], [`quotient`], [`comm`]);
//! * generator words, quotient cycles, voltages, and the independent
//!   hamiltonicity verifier ([`words`], [`cycles`], [`oracle`]);
//! * the constructive machinery: reusable cycle-surgery lemmas
//!   ([`toolbox`]), the case dispatcher that assembles certificates
//!   ([`engine`]), and a catalog of test groups ([`catalog`]).
//!
//! Every constructive path re-verifies its output before returning it, so a
//! certificate marked `verified` has always been checked against the raw
//! multiplication table.

pub mod catalog;
pub mod comm;
pub mod cycles;
pub mod dot;
pub mod engine;
pub mod error;
pub mod group;
pub mod oracle;
pub mod quotient;
pub mod subgrp;
pub mod sweep;
pub mod toolbox;
pub mod view;
pub mod words;

#[doc(hidden)]
pub mod testutil;

pub use error::{Error, Result};
pub use group::{Elem, GroupTable, MAX_ORDER};
