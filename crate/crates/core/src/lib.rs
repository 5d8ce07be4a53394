//! Exact character-degree invariants of finite groups.
//!
//! Groups are stored as validated Cayley tables. Irreducible character
//! degrees and values come from a modular Dixon computation and are lifted
//! to exact integers and cyclotomic integers; all derived invariants are
//! exact rationals.

pub mod arith;
pub mod chartab;
pub mod classes;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod families;
pub mod group;
pub mod invariants;
pub mod modp;
pub mod perm;
pub mod rational;

pub use error::{Error, Result};
