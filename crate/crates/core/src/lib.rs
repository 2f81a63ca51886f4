//! Exact arithmetic for double filtrations of free groups: bigraded free Lie
//! algebras, Magnus expansions, and double Johnson homomorphisms of
//! free-group automorphisms and surface mapping classes.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod filtration;
pub mod freelie;
pub mod grading;
pub mod johnson;
pub(crate) mod int;
pub mod magnus;
pub mod snf;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
