//! Linear structure in CNF formulas.
//!
//! A mixed ordering of variables and clauses has width `k` when every clause
//! needs at most `k` extra variables to make the incidence graph an interval
//! bigraph along that ordering. This crate checks such orderings, merges a
//! variable order and a clause order into a minimum-width one, expands
//! k-interval formulas into interval ones, and counts models or maximizes
//! satisfied weight by sweeping an ordering. Brute-force oracles and instance
//! generators back the tests.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod bitset;
mod error;

pub mod expansion;
pub mod formula;
pub mod hardness;
pub mod merge;
pub mod oracle;
pub mod ordering;
pub mod ps;

pub use bitset::ClauseSet;
pub use error::{Error, Result};
pub use formula::{Assignment, Bigraph, Clause, ClauseId, Element, Formula, Literal, MixedOrdering, SideOrders, VarId};
