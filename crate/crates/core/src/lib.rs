//! Certified lower and upper bounds for the band index `B(L)` and the flat
//! band index `FB(L)` of links.
//!
//! Links come in as braid words ([`braid`]), pretzel parameter lists
//! ([`pretzel`]) or signed Seifert graphs ([`seifert_graph`]). Upper bounds
//! come from spanning-tree constructions on the Seifert graph ([`bands`]);
//! lower bounds come from boundary parity and the Conway polynomial
//! ([`conway`]). [`report`] puts everything together.

pub mod bands;
pub mod braid;
pub mod conway;
pub mod error;
pub mod poly;
pub mod pretzel;
pub mod report;
pub mod seifert_graph;

pub use error::{Error, Result};
