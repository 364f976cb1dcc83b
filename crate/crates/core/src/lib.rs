//! Analysis toolkit for synchronizing automata and the groups/semigroups
//! generated by invertible Mealy colorings.
//!
//! The crate is organized around a few value types: [`dfa::Dfa`] for plain
//! deterministic automata and their structural classifications,
//! [`lang::LangAcceptor`] for the regular languages attached to them
//! (reset words, ideals), [`mealy::MealyMachine`] for colored automata with
//! exact element arithmetic via canonical minimized transducers, and the
//! higher-level analyses in [`reset`], [`group`] and [`families`].
//!
//! Everything is immutable after construction and safe to share across
//! threads; with the default `parallel` feature some sweeps run on rayon,
//! with identical results.

pub mod alphabet;
pub mod dfa;
pub mod error;
mod exec;
pub mod families;
pub mod group;
pub mod lang;
pub mod mealy;
pub mod reset;
pub mod text;

pub use error::{Error, Result};
