//! Integer partitions viewed as Young diagrams, and the two LCTR moves.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two legal moves: strip the left column or the top row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "L")]
    LeftColumn,
    #[serde(rename = "T")]
    TopRow,
}

impl MoveKind {
    pub const ALL: [MoveKind; 2] = [MoveKind::LeftColumn, MoveKind::TopRow];

    pub fn symbol(self) -> &'static str {
        match self {
            MoveKind::LeftColumn => "L",
            MoveKind::TopRow => "T",
        }
    }

    pub fn opposite(self) -> MoveKind {
        match self {
            MoveKind::LeftColumn => MoveKind::TopRow,
            MoveKind::TopRow => MoveKind::LeftColumn,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "L" | "l" | "left" | "left-column" | "LeftColumn" => Ok(MoveKind::LeftColumn),
            "T" | "t" | "top" | "top-row" | "TopRow" => Ok(MoveKind::TopRow),
            other => Err(Error::InvalidMove(other.to_string())),
        }
    }
}

/// How [`Partition::format`] renders repeated parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    /// Every part listed: `4,4,4`.
    Expanded,
    /// Runs collapsed: `4^3`.
    #[default]
    Exponent,
}

/// A partition stored as its weakly decreasing list of positive parts.
///
/// The empty partition is a valid value; it is the only terminal position of
/// the game. The JSON form is a plain array of integers, validated on input.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates and wraps a part list.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::NonPositivePart(0));
        }
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing {
                prev: w[0],
                next: w[1],
            });
        }
        Ok(Partition { parts })
    }

    /// Caller guarantees the parts are positive and weakly decreasing.
    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    /// Builds a partition from `(value, multiplicity)` runs in decreasing value order.
    pub fn from_runs(runs: &[(u32, u32)]) -> Result<Self> {
        let mut parts = Vec::new();
        for &(value, count) in runs {
            parts.extend(std::iter::repeat_n(value, count as usize));
        }
        Partition::new(parts)
    }

    /// The rectangle `(width^height)`.
    pub fn rectangle(width: u32, height: u32) -> Self {
        if width == 0 {
            return Partition::empty();
        }
        Partition::from_sorted_unchecked(vec![width; height as usize])
    }

    /// The staircase `(n, n-1, ..., 1)`.
    pub fn staircase(n: u32) -> Self {
        Partition::from_sorted_unchecked((1..=n).rev().collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// Number of parts (rows of the diagram).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of cells.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Length of the top row, zero when empty.
    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Run-length form: `(value, multiplicity)` pairs, largest value first.
    pub fn runs(&self) -> Vec<(u32, u32)> {
        let mut runs: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match runs.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => runs.push((p, 1)),
            }
        }
        runs
    }

    pub fn is_rectangle(&self) -> bool {
        !self.is_empty() && self.parts.first() == self.parts.last()
    }

    /// T: drop the first part.
    pub fn remove_top_row(&self) -> Result<Partition> {
        if self.is_empty() {
            return Err(Error::Terminal);
        }
        Ok(Partition::from_sorted_unchecked(self.parts[1..].to_vec()))
    }

    /// L: decrement every part, dropping the ones that reach zero.
    pub fn remove_left_column(&self) -> Result<Partition> {
        if self.is_empty() {
            return Err(Error::Terminal);
        }
        Ok(self.subdiagram(1, 0))
    }

    pub fn apply(&self, kind: MoveKind) -> Result<Partition> {
        match kind {
            MoveKind::LeftColumn => self.remove_left_column(),
            MoveKind::TopRow => self.remove_top_row(),
        }
    }

    /// Exchanges rows and columns.
    pub fn conjugate(&self) -> Partition {
        let width = self.largest() as usize;
        let mut out = vec![0u32; width];
        // parts are decreasing, so part p contributes to columns 0..p
        for (row, &p) in self.parts.iter().enumerate() {
            for col in out.iter_mut().take(p as usize) {
                *col = row as u32 + 1;
            }
        }
        Partition::from_sorted_unchecked(out)
    }

    /// The position left after `cols_removed` left-column moves and
    /// `rows_removed` top-row moves, in any order. Saturates to `()`.
    pub fn subdiagram(&self, cols_removed: u32, rows_removed: usize) -> Partition {
        let parts = self
            .parts
            .iter()
            .skip(rows_removed)
            .take_while(|&&p| p > cols_removed)
            .map(|&p| p - cols_removed)
            .collect();
        Partition::from_sorted_unchecked(parts)
    }

    pub fn format(&self, style: Style) -> String {
        if self.is_empty() {
            return "()".to_string();
        }
        match style {
            Style::Expanded => join(self.parts.iter().map(u32::to_string)),
            Style::Exponent => join(self.runs().into_iter().map(|(v, c)| {
                if c == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{c}")
                }
            })),
        }
    }
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(",")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Style::Exponent))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `5,3^2,2,1^2`, optionally wrapped in parentheses, with any
    /// whitespace. `""` and `"()"` are the empty partition.
    fn from_str(text: &str) -> Result<Self> {
        let mut body = text.trim();
        if let Some(inner) = body.strip_prefix('(') {
            body = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Syntax(text.to_string()))?;
        }
        let body = body.trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for token in body.split(',') {
            let token = token.trim();
            let (value, exponent) = match token.split_once('^') {
                Some((v, e)) => (parse_int(v)?, parse_int(e)?),
                None => (parse_int(token)?, 1),
            };
            if value <= 0 {
                return Err(Error::NonPositivePart(value));
            }
            if exponent <= 0 {
                return Err(Error::NonPositiveExponent(exponent));
            }
            let value = u32::try_from(value).map_err(|_| Error::Syntax(token.to_string()))?;
            parts.extend(std::iter::repeat_n(value, exponent as usize));
        }
        Partition::new(parts)
    }
}

fn parse_int(token: &str) -> Result<i64> {
    token
        .trim()
        .parse::<i64>()
        .map_err(|_| Error::Syntax(token.trim().to_string()))
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

/// Every partition of `n`, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(remaining: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted_unchecked(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(cap)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
