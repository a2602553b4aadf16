//! Sprague-Grundy evaluation of LCTR positions.
//!
//! Three evaluators compute the same function:
//!
//! * [`sg_naive`] recurses over the game tree with no caching. Exponential,
//!   size-guarded, and only meant as an oracle.
//! * [`sg_memo`] is the dictionary-memoized recursion keyed by partitions.
//! * [`sg_grid`] fills one value per diagram cell, bottom row first, each
//!   cell being the mex of its right and lower neighbours. This is the
//!   production evaluator: linear time, two row buffers.
//!
//! On top of those sit outcome classification, optimal move selection,
//! reachability and play counting.

mod grid;
mod memo;
mod naive;
mod reach;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{MoveKind, Partition};

pub use grid::{grid_table, sg_grid, GridTable};
pub use memo::{sg_memo, MemoTable};
pub use naive::{sg_naive, NAIVE_LIMIT};
pub use reach::{count_plays, reachable_positions};

/// A Sprague-Grundy value. Every LCTR position has value 0, 1 or 2.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct GrundyValue(u8);

impl GrundyValue {
    pub const ZERO: GrundyValue = GrundyValue(0);
    pub const ONE: GrundyValue = GrundyValue(1);
    pub const TWO: GrundyValue = GrundyValue(2);

    pub fn new(value: u8) -> Self {
        GrundyValue(value)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// mex over a collection of values.
    pub fn mex_of(values: impl IntoIterator<Item = GrundyValue>) -> GrundyValue {
        let m = mex(values.into_iter().map(|v| u64::from(v.0)));
        GrundyValue(u8::try_from(m).expect("mex of LCTR followers fits in u8"))
    }
}

impl fmt::Display for GrundyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<GrundyValue> for u8 {
    fn from(v: GrundyValue) -> u8 {
        v.0
    }
}

/// Least natural number not in `values`.
pub fn mex(values: impl IntoIterator<Item = u64>) -> u64 {
    let mut seen: Vec<u64> = values.into_iter().collect();
    seen.sort_unstable();
    seen.dedup();
    let mut candidate = 0;
    for v in seen {
        if v == candidate {
            candidate += 1;
        } else if v > candidate {
            break;
        }
    }
    candidate
}

/// Which player wins with perfect play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "N")]
    NextPlayerWins,
    #[serde(rename = "P")]
    PreviousPlayerWins,
}

impl Outcome {
    pub fn from_value(sg: GrundyValue) -> Outcome {
        if sg.is_zero() {
            Outcome::PreviousPlayerWins
        } else {
            Outcome::NextPlayerWins
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::NextPlayerWins => "N",
            Outcome::PreviousPlayerWins => "P",
        })
    }
}

pub fn outcome(p: &Partition) -> Outcome {
    Outcome::from_value(sg_grid(p))
}

/// Evaluator selector used by the CLI and the benchmark.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Grid,
    Memo,
    Naive,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Grid, Engine::Memo, Engine::Naive];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Grid => "grid",
            Engine::Memo => "memo",
            Engine::Naive => "naive",
        }
    }

    /// Only the naive engine can fail, on inputs above its size guard.
    pub fn evaluate(self, p: &Partition) -> Result<GrundyValue> {
        match self {
            Engine::Grid => Ok(sg_grid(p)),
            Engine::Memo => Ok(sg_memo(p, &mut MemoTable::new())),
            Engine::Naive => sg_naive(p),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "grid" => Ok(Engine::Grid),
            "memo" => Ok(Engine::Memo),
            "naive" => Ok(Engine::Naive),
            other => Err(format!("unknown engine `{other}` (grid, memo, naive)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Follower {
    pub partition: Partition,
    pub sg: GrundyValue,
}

/// Both followers of a nonempty position together with their values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Followers {
    #[serde(rename = "L")]
    pub left: Follower,
    #[serde(rename = "T")]
    pub top: Follower,
}

impl Followers {
    pub fn get(&self, kind: MoveKind) -> &Follower {
        match kind {
            MoveKind::LeftColumn => &self.left,
            MoveKind::TopRow => &self.top,
        }
    }

    /// The value of the position these follow from.
    pub fn parent_value(&self) -> GrundyValue {
        GrundyValue::mex_of([self.left.sg, self.top.sg])
    }
}

pub fn follower_values(p: &Partition) -> Result<Followers> {
    let follower = |kind| -> Result<Follower> {
        let partition = p.apply(kind)?;
        let sg = sg_grid(&partition);
        Ok(Follower { partition, sg })
    };
    Ok(Followers {
        left: follower(MoveKind::LeftColumn)?,
        top: follower(MoveKind::TopRow)?,
    })
}

/// A move to a P-position when one exists, TopRow preferred.
///
/// From a P-position there is no winning move and the engine falls back to
/// TopRow.
pub fn best_move(p: &Partition) -> Result<(MoveKind, Partition)> {
    if p.is_empty() {
        return Err(Error::Terminal);
    }
    let followers = follower_values(p)?;
    let kind = [MoveKind::TopRow, MoveKind::LeftColumn]
        .into_iter()
        .find(|&k| followers.get(k).sg.is_zero())
        .unwrap_or(MoveKind::TopRow);
    let chosen = followers.get(kind).partition.clone();
    Ok((kind, chosen))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Partition {
        text.parse().unwrap()
    }

    #[test]
    fn mex_examples() {
        assert_eq!(mex([0, 1, 3]), 2);
        assert_eq!(mex([]), 0);
        assert_eq!(mex([1, 2]), 0);
        assert_eq!(mex([0]), 1);
        assert_eq!(mex([0, 1]), 2);
        assert_eq!(mex([2, 0, 0, 1, 5]), 3);
    }

    #[test]
    fn outcomes() {
        assert_eq!(outcome(&Partition::empty()), Outcome::PreviousPlayerWins);
        assert_eq!(outcome(&p("7")), Outcome::NextPlayerWins);
        assert_eq!(outcome(&p("6,1^4")), Outcome::PreviousPlayerWins);
        assert_eq!(Outcome::NextPlayerWins.to_string(), "N");
    }

    #[test]
    fn follower_examples() {
        // oracle: sg_naive((4,2,2,1)) = 2, sg_naive((3,3,2,1,1)) = 0
        let f = follower_values(&p("5,3^2,2,1^2")).unwrap();
        assert_eq!(f.left.partition, p("4,2,2,1"));
        assert_eq!(f.left.sg, GrundyValue::TWO);
        assert_eq!(f.top.partition, p("3,3,2,1,1"));
        assert_eq!(f.top.sg, GrundyValue::ZERO);
        assert_eq!(f.parent_value(), GrundyValue::ONE);

        let f = follower_values(&p("1")).unwrap();
        assert_eq!(
            f.left,
            Follower {
                partition: Partition::empty(),
                sg: GrundyValue::ZERO
            }
        );
        assert_eq!(
            f.top,
            Follower {
                partition: Partition::empty(),
                sg: GrundyValue::ZERO
            }
        );

        let f = follower_values(&p("4,4")).unwrap();
        assert_eq!(
            (f.left.partition.clone(), f.left.sg),
            (p("3,3"), GrundyValue::TWO)
        );
        assert_eq!(
            (f.top.partition.clone(), f.top.sg),
            (p("4"), GrundyValue::TWO)
        );

        assert_eq!(follower_values(&Partition::empty()), Err(Error::Terminal));
    }

    #[test]
    fn follower_json_shape() {
        let f = follower_values(&p("2,1")).unwrap();
        let json = serde_json::to_value(&f).unwrap();
        assert_eq!(json["L"]["partition"], serde_json::json!([1]));
        assert_eq!(json["T"]["sg"], serde_json::json!(1));
    }

    #[test]
    fn best_move_examples() {
        assert_eq!(
            best_move(&p("5,3^2,2,1^2")).unwrap(),
            (MoveKind::TopRow, p("3,3,2,1,1"))
        );
        assert_eq!(
            best_move(&p("2,2,1")).unwrap(),
            (MoveKind::TopRow, p("2,1"))
        );
        // P-position fallback
        assert_eq!(best_move(&p("2,1")).unwrap(), (MoveKind::TopRow, p("1")));
        // only the left column wins from (1,1,1)? L -> () wins outright
        assert_eq!(
            best_move(&p("1,1,1")).unwrap(),
            (MoveKind::LeftColumn, Partition::empty())
        );
        assert_eq!(best_move(&Partition::empty()), Err(Error::Terminal));
    }

    #[test]
    fn engines_parse_and_agree_on_small_input() {
        let fer = p("5,3^2,2,1^2");
        for engine in Engine::ALL {
            assert_eq!(engine.evaluate(&fer).unwrap(), GrundyValue::ONE);
            assert_eq!(engine.name().parse::<Engine>().unwrap(), engine);
        }
        assert!("fast".parse::<Engine>().is_err());
    }
}
