//! Possibility semantics on finite structures.
//!
//! Possibilities are partial states ordered by refinement; propositions are
//! the regular open sets of that order. This crate builds those algebras,
//! the frames that realize Boolean algebras and their operators, forcing
//! evaluators for propositional, modal, quantified, inquisitive and
//! first-order languages, and nuclei on downset Heyting algebras.
//!
//! The runnable programs under `examples/` walk through each capability.

#![allow(clippy::needless_range_loop)]

pub mod balg;
pub mod cli;
pub mod error;
pub mod fomodel;
pub mod format;
pub mod frames;
pub mod heyting;
pub mod modal;
pub mod poset;
pub mod syntax;

pub use error::{Error, Result, Verdict, Violation};
pub use poset::{ElementSet, Poset};
