//! Workbench for dimension quotients and boundary limits.
//!
//! The crate computes dimension quotients D_n(G)/γ_n(G) of finitely
//! presented groups through integral group-ring lattices, evaluates the
//! functor F/R'γ_n(F) on presentations, computes its limit via the
//! coproduct equalizer, its colimit G/γ_n(G), and the boundary limit (the
//! image of the limit in the colimit), and cross-checks the two dimension
//! quotient computations against each other. A separate module implements
//! derived limits of abelian functors and non-abelian Lim¹ on finite
//! categories through the nerve cochain complex and cocycle enumeration.

pub mod catcoh;
pub mod cli;
pub mod config;
pub mod error;
pub mod fingroup;
pub mod groupring;
pub mod intlin;
pub mod limits;
pub mod nilpotent;
pub mod words;

pub use error::{Error, Result};
