//! Wall-clock scaling of the evaluators over growing inputs.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{Engine, GrundyValue, NAIVE_LIMIT};
use crate::partition::Partition;
use crate::sample::random_partition;

/// Number of parts in a random benchmark partition.
pub const RANDOM_PARTS: usize = 8;

/// Relative distance from the requested size a random shape may have.
pub const RANDOM_TOLERANCE: f64 = 0.1;
const MAX_REDRAWS: usize = 1_000;

/// Measurements shorter than this are repeated and averaged.
const MIN_SAMPLE: Duration = Duration::from_millis(20);
const BATCHES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Staircase,
    Rectangle,
    Random,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Staircase => "staircase",
            Shape::Rectangle => "rectangle",
            Shape::Random => "random",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "staircase" => Ok(Shape::Staircase),
            "rectangle" => Ok(Shape::Rectangle),
            "random" => Ok(Shape::Random),
            other => Err(format!(
                "unknown shape `{other}` (staircase, rectangle, random)"
            )),
        }
    }
}

/// A partition of the given shape with roughly `size` cells.
///
/// Staircases take the most rows that fit in `size`; rectangles are as close
/// to square as possible. Random shapes use [`random_partition`] with
/// [`RANDOM_PARTS`] parts and a generator seeded from `seed` and `size`;
/// draws are repeated until the size is within [`RANDOM_TOLERANCE`] of
/// `size`, so timings at different sizes are comparable.
pub fn shape_partition(shape: Shape, size: u64, seed: u64) -> Partition {
    let size = size.max(1);
    match shape {
        Shape::Staircase => {
            let mut rows = ((2.0 * size as f64).sqrt()) as u64;
            while rows * (rows + 1) / 2 > size {
                rows -= 1;
            }
            while (rows + 1) * (rows + 2) / 2 <= size {
                rows += 1;
            }
            Partition::staircase(rows.max(1) as u32)
        }
        Shape::Rectangle => {
            let side = ((size as f64).sqrt() as u64).max(1);
            Partition::rectangle(side as u32, (size / side) as u32)
        }
        Shape::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ size.rotate_left(17));
            let slack = size as f64 * RANDOM_TOLERANCE;
            let mut p = random_partition(&mut rng, size, RANDOM_PARTS);
            for _ in 0..MAX_REDRAWS {
                if (p.size() as f64 - size as f64).abs() <= slack {
                    break;
                }
                p = random_partition(&mut rng, size, RANDOM_PARTS);
            }
            p
        }
    }
}

/// Runs `engine` on `p` and returns its value with the time per call.
///
/// Fast calls are repeated until a batch takes at least 20 ms; the best
/// per-call time over the first call and three batches is reported.
pub fn time_engine(engine: Engine, p: &Partition) -> crate::Result<(GrundyValue, Duration)> {
    let start = Instant::now();
    let value = engine.evaluate(p)?;
    let first = start.elapsed();
    let reps = (MIN_SAMPLE.as_nanos() / first.as_nanos().max(100)).max(1) as u32;
    let mut best = first;
    for _ in 0..BATCHES {
        let start = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(engine.evaluate(std::hint::black_box(p))?);
        }
        best = best.min(start.elapsed() / reps);
    }
    Ok((value, best))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub engine: Engine,
    pub shape: Shape,
    /// Requested size.
    pub size: u64,
    /// Actual number of cells in the generated partition.
    pub cells: u64,
    /// `None` when the engine cannot run on an input this large.
    pub millis: Option<f64>,
    pub value: Option<GrundyValue>,
}

/// One timing per (size, engine) pair. Engines run serially.
pub fn run_bench(
    sizes: &[u64],
    shape: Shape,
    engines: &[Engine],
    seed: u64,
) -> crate::Result<Vec<Timing>> {
    let mut out = Vec::new();
    for &size in sizes {
        let p = shape_partition(shape, size, seed);
        for &engine in engines {
            let (millis, value) = if engine == Engine::Naive && p.size() > NAIVE_LIMIT {
                (None, None)
            } else {
                let (value, elapsed) = time_engine(engine, &p)?;
                (Some(elapsed.as_secs_f64() * 1e3), Some(value))
            };
            out.push(Timing {
                engine,
                shape,
                size,
                cells: p.size(),
                millis,
                value,
            });
        }
    }
    Ok(out)
}
