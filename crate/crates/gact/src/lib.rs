//! Finite-scale workbench for first-order structures with a finite group
//! action: generic-model approximations, quantifier elimination and sentence
//! decision for the graph and empty model companions, an independence
//! relation with its axiom suite, Galois-correspondence machinery, and
//! G-transformal Boolean rings.

pub mod boolring;
pub mod config;
pub mod error;
pub mod galois;
pub mod generic;
pub mod group;
pub mod independence;
pub mod logic;
pub mod qecheck;
pub mod structure;

pub use group::FiniteGroup;
pub use structure::GStructure;
