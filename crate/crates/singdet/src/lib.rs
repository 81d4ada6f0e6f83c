//! Exact singular determinants, linking forms and special values of knot
//! polynomials, with a diagram-level oracle for end-to-end checks.
//!
//! The crate is organised bottom-up:
//!
//! * [`numtheory`]: Legendre symbols, p-adic valuations, residues.
//! * [`exactlinalg`]: determinants, Smith forms, mod-p and p-adic normal forms.
//! * [`linkform`]: linking forms presented by symmetric matrices, Wall invariants.
//! * [`seifert`]: Seifert data, singular determinants, classical invariants.
//! * [`evaluate`]: exact special values of the Jones, Q and Alexander polynomials.
//! * [`obstruct`]: unknotting-number obstructions.
//! * [`diagrams`]: PD codes, Kauffman bracket, Q skein recursion, Seifert and
//!   Goeritz matrices straight from a diagram.

pub mod diagrams;
pub mod error;
pub mod evaluate;
pub mod exactlinalg;
pub mod linkform;
pub mod numtheory;
pub mod obstruct;
pub mod seifert;

pub use error::{Error, Result};
