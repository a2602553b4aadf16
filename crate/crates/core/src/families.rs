//! Closed-form values for the partition families with known Sprague-Grundy
//! values, plus a harness that checks each formula against [`sg_grid`].
//!
//! Family evaluators take shape parameters rather than partitions so they
//! can be swept over parameter grids; [`classify`] extracts the parameters
//! from a concrete partition and [`closed_form_sg`] dispatches.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{sg_grid, GrundyValue};
use crate::error::{Error, Result};
use crate::partition::{MoveKind, Partition};

/// One `((2 * half_width)^(2 * half_height))` block of a quadrated partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadBlock {
    pub half_width: u32,
    pub half_height: u32,
}

impl QuadBlock {
    pub fn new(half_width: u32, half_height: u32) -> Self {
        QuadBlock {
            half_width,
            half_height,
        }
    }
}

/// The most specific family a partition belongs to.
///
/// `ThickGamma` is `(width^height, tail_width^tail_height)` with
/// `width > tail_width`; `height` may be on either side of `tail_width`
/// (equality is reported as `Diagonal`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyClass {
    Empty,
    Rectangle {
        width: u32,
        height: u32,
    },
    Staircase {
        rows: u32,
    },
    /// `(top, 1^tail)`
    Gamma {
        top: u32,
        tail: u32,
    },
    /// `(width^tail_width, tail_width^tail_height)`
    Diagonal {
        width: u32,
        tail_width: u32,
        tail_height: u32,
    },
    ThickGamma {
        width: u32,
        height: u32,
        tail_width: u32,
        tail_height: u32,
    },
    Quadrated {
        blocks: Vec<QuadBlock>,
    },
    General,
}

impl FamilyClass {
    pub fn kind(&self) -> Option<FamilyKind> {
        Some(match self {
            FamilyClass::Rectangle { .. } => FamilyKind::Rectangle,
            FamilyClass::Staircase { .. } => FamilyKind::Staircase,
            FamilyClass::Gamma { .. } => FamilyKind::Gamma,
            FamilyClass::Diagonal { .. } => FamilyKind::Diagonal,
            FamilyClass::ThickGamma { .. } => FamilyKind::ThickGamma,
            FamilyClass::Quadrated { .. } => FamilyKind::Quadrated,
            FamilyClass::Empty | FamilyClass::General => return None,
        })
    }

    /// Rebuilds the partition described by the parameters. `None` for `General`.
    pub fn partition(&self) -> Option<Partition> {
        let runs = match self {
            FamilyClass::Empty => vec![],
            FamilyClass::Rectangle { width, height } => vec![(*width, *height)],
            FamilyClass::Staircase { rows } => return Some(Partition::staircase(*rows)),
            FamilyClass::Gamma { top, tail } => vec![(*top, 1), (1, *tail)],
            FamilyClass::Diagonal {
                width,
                tail_width,
                tail_height,
            } => vec![(*width, *tail_width), (*tail_width, *tail_height)],
            FamilyClass::ThickGamma {
                width,
                height,
                tail_width,
                tail_height,
            } => vec![(*width, *height), (*tail_width, *tail_height)],
            FamilyClass::Quadrated { blocks } => quadrated_runs(blocks),
            FamilyClass::General => return None,
        };
        Partition::from_runs(&runs).ok()
    }
}

impl fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyClass::Empty => write!(f, "empty"),
            FamilyClass::Rectangle { width, height } => {
                write!(f, "rectangle width={width} height={height}")
            }
            FamilyClass::Staircase { rows } => write!(f, "staircase rows={rows}"),
            FamilyClass::Gamma { top, tail } => write!(f, "gamma top={top} tail={tail}"),
            FamilyClass::Diagonal {
                width,
                tail_width,
                tail_height,
            } => write!(
                f,
                "diagonal width={width} tail_width={tail_width} tail_height={tail_height}"
            ),
            FamilyClass::ThickGamma {
                width,
                height,
                tail_width,
                tail_height,
            } => write!(
                f,
                "thick-gamma width={width} height={height} tail_width={tail_width} tail_height={tail_height}"
            ),
            FamilyClass::Quadrated { blocks } => {
                write!(f, "quadrated blocks=")?;
                for (i, b) in blocks.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "({},{})", b.half_width, b.half_height)?;
                }
                Ok(())
            }
            FamilyClass::General => write!(f, "general"),
        }
    }
}

fn quadrated_runs(blocks: &[QuadBlock]) -> Vec<(u32, u32)> {
    blocks
        .iter()
        .map(|b| (2 * b.half_width, 2 * b.half_height))
        .collect()
}

/// Classifies with precedence Empty, Rectangle, Staircase, Gamma, Diagonal,
/// ThickGamma, Quadrated, General.
pub fn classify(p: &Partition) -> FamilyClass {
    let runs = p.runs();
    let parts = p.parts();
    let rows = parts.len();
    match runs.as_slice() {
        [] => FamilyClass::Empty,
        &[(width, height)] => FamilyClass::Rectangle { width, height },
        _ if parts
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == rows - i) =>
        {
            FamilyClass::Staircase { rows: rows as u32 }
        }
        &[(top, 1), (1, tail)] => FamilyClass::Gamma { top, tail },
        &[(width, height), (tail_width, tail_height)] if height == tail_width => {
            FamilyClass::Diagonal {
                width,
                tail_width,
                tail_height,
            }
        }
        &[(width, height), (tail_width, tail_height)] => FamilyClass::ThickGamma {
            width,
            height,
            tail_width,
            tail_height,
        },
        _ if runs.iter().all(|&(v, e)| v % 2 == 0 && e % 2 == 0) => FamilyClass::Quadrated {
            blocks: runs
                .iter()
                .map(|&(v, e)| QuadBlock::new(v / 2, e / 2))
                .collect(),
        },
        _ => FamilyClass::General,
    }
}

fn parity(value: u32, even: u8, odd: u8) -> GrundyValue {
    GrundyValue::new(if value.is_multiple_of(2) { even } else { odd })
}

fn family_err(msg: impl Into<String>) -> Error {
    Error::Family(msg.into())
}

/// `(width^height)`.
pub fn sg_rectangle(width: u32, height: u32) -> Result<GrundyValue> {
    if width < 1 || height < 1 {
        return Err(family_err(format!(
            "rectangle needs width, height >= 1, got {width}x{height}"
        )));
    }
    let short = width.min(height);
    let long = width.max(height);
    Ok(match short {
        1 => parity(long, 2, 1),
        2 => parity(long, 0, 2),
        3 => parity(long, 1, 0),
        _ => parity(width + height, 0, 1),
    })
}

/// `(rows, rows-1, ..., 1)`.
pub fn sg_staircase(rows: u32) -> Result<GrundyValue> {
    if rows < 1 {
        return Err(family_err("staircase needs at least one row"));
    }
    Ok(parity(rows, 0, 1))
}

/// `(top, 1^tail)`: always a P-position.
pub fn sg_gamma(top: u32, tail: u32) -> Result<GrundyValue> {
    if top <= 1 || tail == 0 {
        return Err(family_err(format!(
            "gamma needs top > 1 and tail > 0, got top={top} tail={tail}"
        )));
    }
    Ok(GrundyValue::ZERO)
}

/// `(width^tail_width, tail_width^tail_height)`: always a P-position.
pub fn sg_diagonal(width: u32, tail_width: u32, tail_height: u32) -> Result<GrundyValue> {
    if tail_width < 1 || width <= tail_width || tail_height < 1 {
        return Err(family_err(format!(
            "diagonal needs width > tail_width >= 1 and tail_height >= 1, \
             got width={width} tail_width={tail_width} tail_height={tail_height}"
        )));
    }
    Ok(GrundyValue::ZERO)
}

/// `(width^height, tail_width^tail_height)` with `height > tail_width`.
///
/// The value depends on the width gap `width - tail_width` and the height
/// excess `height - tail_width`, never on `tail_height`.
pub fn sg_thick_gamma(
    width: u32,
    height: u32,
    tail_width: u32,
    tail_height: u32,
) -> Result<GrundyValue> {
    if tail_width < 1 || width <= tail_width || height <= tail_width || tail_height < 1 {
        return Err(family_err(format!(
            "thick gamma needs width > tail_width >= 1, height > tail_width, tail_height >= 1, \
             got width={width} height={height} tail_width={tail_width} tail_height={tail_height}"
        )));
    }
    let gap = width - tail_width;
    let excess = height - tail_width;
    if gap <= 2 || gap.is_multiple_of(2) {
        return Ok(parity(tail_width + height, 0, 1));
    }
    Ok(GrundyValue::new(match excess {
        1 => 1,
        2 => 2,
        e if e % 2 == 1 => 0,
        _ => 1,
    }))
}

fn check_quadrated(blocks: &[QuadBlock]) -> Result<()> {
    if blocks.is_empty() {
        return Err(family_err("quadrated partition needs at least one block"));
    }
    if blocks.iter().any(|b| b.half_width < 1 || b.half_height < 1) {
        return Err(family_err("quadrated block sizes must be >= 1"));
    }
    if blocks
        .windows(2)
        .any(|w| w[0].half_width <= w[1].half_width)
    {
        return Err(family_err("quadrated block widths must strictly decrease"));
    }
    Ok(())
}

/// Every quadrated partition is a P-position.
pub fn sg_quadrated(blocks: &[QuadBlock]) -> Result<GrundyValue> {
    check_quadrated(blocks)?;
    Ok(GrundyValue::ZERO)
}

/// Value of the position one move away from a quadrated partition.
///
/// With a first block wider than 2 and either taller than 2 or followed by
/// more blocks, both followers are worth 1. Otherwise the partition is a
/// single rectangle and so is each follower.
pub fn sg_quadrated_follower(blocks: &[QuadBlock], kind: MoveKind) -> Result<GrundyValue> {
    check_quadrated(blocks)?;
    let first = blocks[0];
    if first.half_width > 1 && (first.half_height > 1 || blocks.len() > 1) {
        return Ok(GrundyValue::ONE);
    }
    let (width, height) = (2 * first.half_width, 2 * first.half_height);
    match kind {
        MoveKind::LeftColumn => sg_rectangle(width - 1, height),
        MoveKind::TopRow => sg_rectangle(width, height - 1),
    }
}

/// The closed-form value when `p` falls in a known family, else `None`.
///
/// Thick-gamma shapes whose block is shorter than the tail is wide are
/// evaluated through their conjugate, which has the block taller instead.
pub fn closed_form_sg(p: &Partition) -> Option<GrundyValue> {
    let value = match classify(p) {
        FamilyClass::Empty => Ok(GrundyValue::ZERO),
        FamilyClass::Rectangle { width, height } => sg_rectangle(width, height),
        FamilyClass::Staircase { rows } => sg_staircase(rows),
        FamilyClass::Gamma { top, tail } => sg_gamma(top, tail),
        FamilyClass::Diagonal {
            width,
            tail_width,
            tail_height,
        } => sg_diagonal(width, tail_width, tail_height),
        FamilyClass::ThickGamma {
            width,
            height,
            tail_width,
            tail_height,
        } => {
            if height > tail_width {
                sg_thick_gamma(width, height, tail_width, tail_height)
            } else {
                // conjugate of (w^h, t^s) is ((h+s)^t, h^(w-t))
                sg_thick_gamma(height + tail_height, tail_width, height, width - tail_width)
            }
        }
        FamilyClass::Quadrated { blocks } => sg_quadrated(&blocks),
        FamilyClass::General => return None,
    };
    Some(value.expect("classify only yields in-range parameters"))
}

/// Family selector for [`verify_family_range`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Rectangle,
    Staircase,
    Gamma,
    Diagonal,
    ThickGamma,
    Quadrated,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::Rectangle,
        FamilyKind::Staircase,
        FamilyKind::Gamma,
        FamilyKind::Diagonal,
        FamilyKind::ThickGamma,
        FamilyKind::Quadrated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Rectangle => "rectangle",
            FamilyKind::Staircase => "staircase",
            FamilyKind::Gamma => "gamma",
            FamilyKind::Diagonal => "diagonal",
            FamilyKind::ThickGamma => "thick-gamma",
            FamilyKind::Quadrated => "quadrated",
        }
    }

    /// Default sweep bounds for each family.
    pub fn default_bounds(self) -> VerifyBounds {
        let b = |max_width, max_height, max_tail, max_blocks| VerifyBounds {
            max_width,
            max_height,
            max_tail,
            max_blocks,
        };
        match self {
            FamilyKind::Rectangle => b(40, 40, 0, 0),
            FamilyKind::Staircase => b(40, 0, 0, 0),
            FamilyKind::Gamma => b(40, 0, 40, 0),
            FamilyKind::Diagonal => b(30, 0, 10, 0),
            FamilyKind::ThickGamma => b(25, 25, 5, 0),
            FamilyKind::Quadrated => b(8, 4, 0, 3),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s || (s == "thick_gamma" && *k == FamilyKind::ThickGamma))
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// Parameter sweep limits. Which fields matter depends on the family:
///
/// | family      | swept parameters                                                      |
/// |-------------|-----------------------------------------------------------------------|
/// | rectangle   | width in 1..=max_width, height in 1..=max_height                      |
/// | staircase   | rows in 1..=max_width                                                 |
/// | gamma       | top in 2..=max_width, tail in 1..=max_tail                            |
/// | diagonal    | width in 2..=max_width, tail_width < width, tail_height in 1..=max_tail |
/// | thick-gamma | width in 2..=max_width, height in 2..=max_height, tail_width < min(width, height), tail_height in 1..=max_tail |
/// | quadrated   | up to max_blocks blocks, half widths <= max_width, half heights <= max_height |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyBounds {
    pub max_width: u32,
    pub max_height: u32,
    pub max_tail: u32,
    pub max_blocks: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub params: String,
    pub check: String,
    pub partition: String,
    pub closed_form: Option<GrundyValue>,
    pub grid: GrundyValue,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let closed = self
            .closed_form
            .map_or_else(|| "none".to_string(), |v| v.to_string());
        write!(
            f,
            "{} [{}] partition ({}): closed form {} vs grid {}",
            self.params, self.check, self.partition, closed, self.grid
        )
    }
}

/// Result of a parameter sweep. Mismatches beyond the first
/// [`MAX_REPORTED_MISMATCHES`] are counted but not kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub family: FamilyKind,
    pub bounds: VerifyBounds,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub mismatches: Vec<Mismatch>,
}

pub const MAX_REPORTED_MISMATCHES: usize = 20;

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} cases, {} passed, {} failed",
            self.family, self.total, self.passed, self.failed
        )?;
        for m in &self.mismatches {
            writeln!(f, "  mismatch: {m}")?;
        }
        Ok(())
    }
}

struct Sweep {
    report: VerifyReport,
}

impl Sweep {
    /// Checks one parameter tuple. Every `(label, closed form, partition)`
    /// entry must agree with the grid evaluator on that partition; the
    /// family's own partition is also run through the dispatcher, directly
    /// and conjugated.
    fn case(
        &mut self,
        class: &FamilyClass,
        formula: GrundyValue,
        extra: Vec<(&'static str, GrundyValue, Partition)>,
    ) {
        let p = class
            .partition()
            .expect("family parameters build a partition");
        let grid = sg_grid(&p);
        let conj = p.conjugate();
        let mut checks: Vec<(&str, Option<GrundyValue>, GrundyValue, &Partition)> = vec![
            ("formula", Some(formula), grid, &p),
            ("dispatch", closed_form_sg(&p), grid, &p),
            ("dispatch-conjugate", closed_form_sg(&conj), grid, &conj),
        ];
        let extra_grid: Vec<GrundyValue> = extra.iter().map(|(_, _, q)| sg_grid(q)).collect();
        for ((label, value, q), g) in extra.iter().zip(&extra_grid) {
            checks.push((label, Some(*value), *g, q));
        }

        self.report.total += 1;
        let mut failed = false;
        for (label, closed, grid, q) in checks {
            if closed != Some(grid) {
                failed = true;
                if self.report.mismatches.len() < MAX_REPORTED_MISMATCHES {
                    self.report.mismatches.push(Mismatch {
                        params: class.to_string(),
                        check: label.to_string(),
                        partition: q.to_string(),
                        closed_form: closed,
                        grid,
                    });
                }
            }
        }
        if failed {
            self.report.failed += 1;
        } else {
            self.report.passed += 1;
        }
    }
}

/// Sweeps a family's parameter grid comparing closed forms with [`sg_grid`].
pub fn verify_family_range(family: FamilyKind, bounds: VerifyBounds) -> VerifyReport {
    let mut sweep = Sweep {
        report: VerifyReport {
            family,
            bounds,
            total: 0,
            passed: 0,
            failed: 0,
            mismatches: Vec::new(),
        },
    };
    let ok = |r: Result<GrundyValue>| r.expect("swept parameters satisfy preconditions");
    match family {
        FamilyKind::Rectangle => {
            for width in 1..=bounds.max_width {
                for height in 1..=bounds.max_height {
                    let class = FamilyClass::Rectangle { width, height };
                    sweep.case(&class, ok(sg_rectangle(width, height)), vec![]);
                }
            }
        }
        FamilyKind::Staircase => {
            for rows in 1..=bounds.max_width {
                sweep.case(
                    &FamilyClass::Staircase { rows },
                    ok(sg_staircase(rows)),
                    vec![],
                );
            }
        }
        FamilyKind::Gamma => {
            for top in 2..=bounds.max_width {
                for tail in 1..=bounds.max_tail {
                    let class = FamilyClass::Gamma { top, tail };
                    sweep.case(&class, ok(sg_gamma(top, tail)), vec![]);
                }
            }
        }
        FamilyKind::Diagonal => {
            for width in 2..=bounds.max_width {
                for tail_width in 1..width {
                    for tail_height in 1..=bounds.max_tail {
                        let class = FamilyClass::Diagonal {
                            width,
                            tail_width,
                            tail_height,
                        };
                        let v = ok(sg_diagonal(width, tail_width, tail_height));
                        sweep.case(&class, v, vec![]);
                    }
                }
            }
        }
        FamilyKind::ThickGamma => {
            for width in 2..=bounds.max_width {
                for height in 2..=bounds.max_height {
                    for tail_width in 1..width.min(height) {
                        for tail_height in 1..=bounds.max_tail {
                            let class = FamilyClass::ThickGamma {
                                width,
                                height,
                                tail_width,
                                tail_height,
                            };
                            let v = ok(sg_thick_gamma(width, height, tail_width, tail_height));
                            sweep.case(&class, v, vec![]);
                        }
                    }
                }
            }
        }
        FamilyKind::Quadrated => {
            for count in 1..=bounds.max_blocks as usize {
                for widths in decreasing_tuples(bounds.max_width, count) {
                    for heights in all_tuples(bounds.max_height, count) {
                        let blocks: Vec<QuadBlock> = widths
                            .iter()
                            .zip(&heights)
                            .map(|(&w, &h)| QuadBlock::new(w, h))
                            .collect();
                        let class = FamilyClass::Quadrated {
                            blocks: blocks.clone(),
                        };
                        let p = class.partition().expect("valid blocks");
                        let followers = MoveKind::ALL
                            .iter()
                            .map(|&kind| {
                                let label = match kind {
                                    MoveKind::LeftColumn => "follower-L",
                                    MoveKind::TopRow => "follower-T",
                                };
                                let q = p.apply(kind).expect("nonempty");
                                (label, ok(sg_quadrated_follower(&blocks, kind)), q)
                            })
                            .collect();
                        sweep.case(&class, ok(sg_quadrated(&blocks)), followers);
                    }
                }
            }
        }
    }
    sweep.report
}

/// Strictly decreasing `len`-tuples with entries in `1..=max`.
fn decreasing_tuples(max: u32, len: usize) -> Vec<Vec<u32>> {
    fn go(cap: u32, len: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in (1..=cap).rev() {
            prefix.push(v);
            go(v - 1, len, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(max, len, &mut Vec::new(), &mut out);
    out
}

/// All `len`-tuples with entries in `1..=max`.
fn all_tuples(max: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=max).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}
