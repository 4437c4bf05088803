//! Steiner 2-designs, their block intersection graphs, and silver colorings.
//!
//! The pipeline: build a design ([`designs`]), form its `i`-BIG ([`big`]),
//! find the maximum independent sets ([`independence`]), then screen
//! ([`silver::screen`]) or decide ([`decider`]) whether some proper
//! `(r+1)`-coloring makes every vertex of an α-set rainbow.

pub mod big;
pub mod decider;
pub mod designs;
mod error;
pub mod format;
pub mod graph;
pub mod independence;
pub mod par;
pub mod silver;

pub use error::{Error, Result};
pub use graph::Graph;
pub use par::Exec;
