use std::io::{self, Write};
use std::net::{Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lctr_core::bench::{run_bench, Shape, Timing};
use lctr_core::families::{verify_family_range, FamilyKind, VerifyReport};
use lctr_core::{
    best_move, classify, closed_form_sg, count_plays, follower_values, outcome,
    reachable_positions, Engine, Outcome, Partition,
};
use serde_json::json;
use tracing_subscriber::EnvFilter;

#[derive(Parser)]
#[command(name = "lctr")]
#[command(about = "Sprague-Grundy analysis and play for the Left-Column/Top-Row partition game")]
#[command(version)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    /// CSV table; only `bench` differs from plain
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShapeArg {
    Staircase,
    Rectangle,
    Random,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Shape {
        match s {
            ShapeArg::Staircase => Shape::Staircase,
            ShapeArg::Rectangle => Shape::Rectangle,
            ShapeArg::Random => Shape::Random,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the Sprague-Grundy value of a partition
    Eval {
        /// Partition such as "5,3^2,2,1^2"
        partition: Partition,
        /// Evaluator: grid | memo | naive
        #[arg(long, default_value = "grid")]
        engine: Engine,
    },
    /// Print N or P
    Outcome { partition: Partition },
    /// Print the engine's move and the resulting position
    BestMove { partition: Partition },
    /// Print both followers with their values
    Followers { partition: Partition },
    /// Count or list the positions reachable in one or more moves
    Reachable {
        partition: Partition,
        #[arg(long, conflicts_with = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
    },
    /// Count the distinct labelled plays down to the empty partition
    Plays { partition: Partition },
    /// Report the partition family and its closed-form value
    Classify { partition: Partition },
    /// Check closed-form family values against the grid evaluator
    Verify {
        /// rectangle | staircase | gamma | diagonal | thick-gamma | quadrated | all
        #[arg(long)]
        family: String,
        #[arg(long)]
        max_width: Option<u32>,
        #[arg(long)]
        max_height: Option<u32>,
        #[arg(long)]
        max_tail: Option<u32>,
        #[arg(long)]
        max_blocks: Option<u32>,
    },
    /// Time the evaluators on growing inputs
    Bench {
        /// Comma-separated target sizes in cells
        #[arg(long, value_delimiter = ',', default_value = "10000,100000,1000000",
              value_parser = clap::value_parser!(u64).range(1..))]
        sizes: Vec<u64>,
        #[arg(long, value_enum, default_value_t = ShapeArg::Staircase)]
        shape: ShapeArg,
        #[arg(long, value_delimiter = ',', default_value = "grid,memo")]
        engines: Vec<Engine>,
        /// Seed for random shapes
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the HTTP game service
    Serve {
        #[arg(long, default_value_t = 8080, value_parser = clap::value_parser!(u16).range(1..))]
        port: u16,
        /// Append accepted moves to this JSON-lines file
        #[arg(long, env = "LCTR_LOG")]
        log: Option<PathBuf>,
    },
}

/// Exit status 2: bad input. Status 1 is reserved for failed verification.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<u8, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> CmdResult {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Eval { partition, engine } => {
            let sg = engine.evaluate(&partition)?;
            if json {
                emit(
                    out,
                    &json!({"partition": partition, "engine": engine, "sg": sg}),
                )?;
            } else {
                writeln!(out, "{sg}")?;
            }
        }
        Command::Outcome { partition } => {
            let o = outcome(&partition);
            if json {
                emit(out, &json!({"partition": partition, "outcome": o}))?;
            } else {
                writeln!(out, "{o}")?;
            }
        }
        Command::BestMove { partition } => {
            let (kind, next) = best_move(&partition)?;
            let winning = outcome(&partition) == Outcome::NextPlayerWins;
            if json {
                emit(
                    out,
                    &json!({"partition": partition, "move": kind, "resulting": next, "winning": winning}),
                )?;
            } else if winning {
                writeln!(out, "{kind} -> {next}")?;
            } else {
                writeln!(out, "{kind} -> {next} (P-position, no winning move)")?;
            }
        }
        Command::Followers { partition } => {
            let f = follower_values(&partition)?;
            if json {
                emit(out, &json!({"partition": partition, "followers": f}))?;
            } else {
                writeln!(out, "L -> {} sg={}", f.left.partition, f.left.sg)?;
                writeln!(out, "T -> {} sg={}", f.top.partition, f.top.sg)?;
            }
        }
        Command::Reachable {
            partition, list, ..
        } => {
            let positions = reachable_positions(&partition);
            if json {
                let mut doc = json!({"partition": partition, "count": positions.len()});
                if list {
                    doc["positions"] = json!(positions);
                }
                emit(out, &doc)?;
            } else if list {
                for p in &positions {
                    writeln!(out, "{p}")?;
                }
            } else {
                writeln!(out, "{}", positions.len())?;
            }
        }
        Command::Plays { partition } => {
            let plays = count_plays(&partition);
            if json {
                emit(
                    out,
                    &json!({"partition": partition, "plays": plays.to_string()}),
                )?;
            } else {
                writeln!(out, "{plays}")?;
            }
        }
        Command::Classify { partition } => {
            let class = classify(&partition);
            let value = closed_form_sg(&partition);
            if json {
                emit(
                    out,
                    &json!({"partition": partition, "class": class, "closed_form": value}),
                )?;
            } else {
                match value {
                    Some(v) => writeln!(out, "{class} sg={v}")?,
                    None => writeln!(out, "{class}")?,
                }
            }
        }
        Command::Verify {
            family,
            max_width,
            max_height,
            max_tail,
            max_blocks,
        } => {
            let kinds = if family == "all" {
                FamilyKind::ALL.to_vec()
            } else {
                vec![family.parse::<FamilyKind>()?]
            };
            let reports: Vec<VerifyReport> = kinds
                .into_iter()
                .map(|kind| {
                    let mut bounds = kind.default_bounds();
                    bounds.max_width = max_width.unwrap_or(bounds.max_width);
                    bounds.max_height = max_height.unwrap_or(bounds.max_height);
                    bounds.max_tail = max_tail.unwrap_or(bounds.max_tail);
                    bounds.max_blocks = max_blocks.unwrap_or(bounds.max_blocks);
                    verify_family_range(kind, bounds)
                })
                .collect();
            if json {
                emit(out, &json!(reports))?;
            } else {
                for r in &reports {
                    write!(out, "{r}")?;
                }
            }
            if reports.iter().any(|r| !r.ok()) {
                return Ok(1);
            }
        }
        Command::Bench {
            sizes,
            shape,
            engines,
            seed,
        } => {
            let rows = run_bench(&sizes, shape.into(), &engines, seed)?;
            match cli.format {
                Format::Json => emit(out, &json!(rows))?,
                Format::Csv => write_csv(out, &rows)?,
                Format::Plain => write_table(out, &rows)?,
            }
        }
        Command::Serve { port, log } => {
            tracing_subscriber::fmt()
                .with_env_filter(
                    EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")),
                )
                .init();
            let addr = SocketAddr::from((Ipv4Addr::UNSPECIFIED, port));
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(lctr_service::serve(addr, log))?;
        }
    }
    Ok(0)
}

fn emit(out: &mut impl Write, value: &serde_json::Value) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

fn millis(t: &Timing) -> String {
    t.millis
        .map_or_else(|| "n/a".to_string(), |m| format!("{m:.3}"))
}

fn write_csv(out: &mut impl Write, rows: &[Timing]) -> io::Result<()> {
    writeln!(out, "engine,shape,size,millis")?;
    for t in rows {
        writeln!(out, "{},{},{},{}", t.engine, t.shape, t.cells, millis(t))?;
    }
    Ok(())
}

fn write_table(out: &mut impl Write, rows: &[Timing]) -> io::Result<()> {
    writeln!(
        out,
        "{:<6} {:<10} {:>10} {:>12} {:>3}",
        "engine", "shape", "cells", "millis", "sg"
    )?;
    for t in rows {
        let sg = t.value.map_or_else(|| "-".to_string(), |v| v.to_string());
        writeln!(
            out,
            "{:<6} {:<10} {:>10} {:>12} {:>3}",
            t.engine,
            t.shape,
            t.cells,
            millis(t),
            sg
        )?;
    }
    Ok(())
}
