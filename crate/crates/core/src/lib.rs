//! Co-induced group actions, independence sets and maximal pattern entropy
//! at desk scale.
//!
//! Groups are a closed family with exact arithmetic ([`group`]), coset
//! spaces carry a section and its cocycle ([`coset`]), and every dynamical
//! system is presented through regions plus an exact emptiness oracle
//! ([`system`]). The engines in [`independence`] and [`entropy`] only ever
//! talk to that oracle.

mod bigstr;

pub mod coinduce;
pub mod coset;
pub mod dsl;
pub mod entropy;
pub mod error;
pub mod exec;
pub mod group;
pub mod independence;
pub mod system;
pub mod x1;

pub use error::{Error, Result};
pub use exec::Exec;
