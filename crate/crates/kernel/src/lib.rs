//! A verification kernel for finite double-categorical structures.
//!
//! The kernel implements, at desk scale and with exact arithmetic:
//!
//! * finite sets with canonical products, pullbacks and coequalizers;
//! * the cartesian equipment of spans of finite sets;
//! * finite categories and profunctors with composition by coequalizer;
//! * finitely presented double theories with a typed pasting language;
//! * lax models of theories, maps of models, and their 2-cells, with
//!   exhaustive law checkers;
//! * the three-level correspondence between span-valued models and unitary
//!   profunctor-valued models;
//! * modules between models, multimodulations, and their virtual
//!   double-category operations.
//!
//! Everything is pure and immutable; all chosen (co)limits are canonical so
//! law checks are bit-exact.

pub mod catprof;
pub mod error;
pub mod finset;
pub mod fixtures;
pub mod report;
pub mod span;
mod stack;
pub mod theory;
pub mod model;
pub mod unitalize;
pub mod vdc;
pub mod universe;

pub use error::KernelError;
pub use report::{Report, ReportEntry};
