//! Exact arithmetic model of the `X₁` example: a `ℤ`-system built from the
//! points `a_i`, the fixed point `a_∞` and one orbit `X_s` per binary word
//! `s`, all described through a jump table and a neighborhood calculus.

mod point;
mod system;
mod table;
mod verify;

pub use point::{word_string, Address, PointRef};
pub use system::X1System;
pub use table::{bit, words, JumpRow, JumpTable, JumpTableExport, MAX_LEVEL};
pub use verify::{
    similar_positions_verify, slice_probe, slice_scan, slots_hit_word, SimilarPositionsReport,
    SliceReport,
};
