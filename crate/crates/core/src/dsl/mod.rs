//! A small line-oriented language for experiments: declarations of groups,
//! subgroups, systems, region tuples, covers and pools, then one verb.
//!
//! ```text
//! group G = semidirect_Z_Z2
//! subgroup H = Z_factor of G
//! system X = x1(3)
//! system Y = dihedral_pair(X)
//! tuple T = [coords((0, 0): nb(1, 0), (0, x): nb(1, inf))]
//! pool P = [(0, 0), (901, 0)]
//! maxindep pool=P system=Y tuple=T
//! ```

mod ast;
mod parser;
mod run;

pub use ast::*;
pub use parser::{parse_spec, ParseError, ParseErrorKind};
pub use run::{run_experiment, run_text, DslError, Report, RunOptions, SCHEMA};
