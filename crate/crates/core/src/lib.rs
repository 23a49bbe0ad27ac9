//! Finite self-distributive magmas: axiom checks and enumeration, free associative
//! shelves and their unital relatives, Laver tables, f-block spindles, and exact
//! one-term and two-term (rack) homology over the integers.

pub mod blockspindle;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod free;
pub mod homology;
pub mod laver;
pub mod magma;
pub mod reference;
pub mod verify;

pub use error::{Error, Result};
pub use magma::{check_axioms, AxiomReport, FiniteMagma};
