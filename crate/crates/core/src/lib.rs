//! Analysis of LCTR, the impartial game where a move deletes either the left
//! column or the top row of a Young diagram and the last player to move wins.
//!
//! * [`partition`]: partitions, the two moves, conjugation, text format.
//! * [`engine`]: Sprague-Grundy evaluators, outcomes, optimal moves,
//!   reachability and play counts.
//! * [`families`]: closed-form values for known partition families and a
//!   sweep that checks them against the grid evaluator.
//! * [`bench`]: scaling measurements for the evaluators.

pub mod bench;
pub mod engine;
pub mod error;
pub mod families;
pub mod partition;
pub mod sample;

pub use engine::{
    best_move, count_plays, follower_values, grid_table, mex, outcome, reachable_positions,
    sg_grid, sg_memo, sg_naive, Engine, Follower, Followers, GridTable, GrundyValue, MemoTable,
    Outcome,
};
pub use error::{Error, Result};
pub use families::{classify, closed_form_sg, FamilyClass, FamilyKind};
pub use partition::{partitions_of, MoveKind, Partition, Style};
