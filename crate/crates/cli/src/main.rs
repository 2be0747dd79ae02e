//! `vpart`: count nonnegative integer solutions of two-row systems `M x = b`.
//!
//! Matrices are JSON, `{"columns": [[x1, y1], ...]}` or `{"rows": [[...], [...]]}`,
//! given inline, as a file path, or as `-` for stdin.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use vpart_core::formula;
use vpart_core::frobenius::{frobenius_exact, DEFAULT_HORIZON};
use vpart_core::lattice::{build_matrix, Column, ColumnMatrix};
use vpart_core::oracle::{brute_count, grid_points, grid_verify};
use vpart_core::quasipoly::{build_formula, evaluate_count, popoviciu_pair, render_text, QuasiPolynomial};
use vpart_core::Error;

#[derive(Parser)]
#[command(name = "vpart", version, about = "Vector partition functions of 2 x n integer matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List the chambers and the minors of every column pair.
    Chambers { matrix: String },
    /// Count the solutions of M x = b.
    #[command(allow_negative_numbers = true)]
    Count {
        matrix: String,
        b1: i64,
        b2: i64,
        #[arg(long, value_enum, default_value = "closed")]
        method: Method,
        /// Read MATRIX as a formula document produced by `formula --format json`.
        #[arg(long)]
        from_formula: bool,
    },
    /// Emit the closed-form quasi-polynomial.
    Formula {
        matrix: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare the closed form with enumeration on a grid.
    Verify {
        matrix: String,
        /// Read MATRIX as a formula document and check that formula.
        #[arg(long)]
        from_formula: bool,
        #[arg(long, default_value_t = 20)]
        radius: i64,
        /// Worker threads (0 lets the pool decide).
        #[arg(long, env = "VPART_JOBS", default_value_t = 0)]
        jobs: usize,
    },
    /// Largest unsolvable multiple of a direction, with the closed-form bound.
    Frobenius {
        matrix: String,
        /// Direction as `n1,n2`.
        #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
        direction: Column,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
    },
    /// Number of (x, y) >= 0 with a x + b y = n.
    #[command(allow_negative_numbers = true)]
    Popoviciu { a: i64, b: i64, n: i64 },
}

fn parse_direction(s: &str) -> Result<Column, String> {
    let (a, b) = s.split_once(',').ok_or("expected n1,n2")?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok([parse(a)?, parse(b)?])
}

enum Failure {
    Input(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn read_source(source: &str) -> Result<String, Error> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(source.to_string());
    }
    if source == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(source).map_err(|e| Error::Parse(format!("{source}: {e}")))
}

fn parse_columns(text: &str) -> Result<Vec<Column>, Error> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let entries = |v: &serde_json::Value| -> Result<Vec<Vec<i64>>, Error> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
    };
    if let Some(cols) = value.get("columns") {
        return entries(cols)?
            .into_iter()
            .map(|c| match c[..] {
                [x, y] => Ok([x, y]),
                _ => Err(Error::Parse("each column needs two entries".into())),
            })
            .collect();
    }
    if let Some(rows) = value.get("rows") {
        let rows = entries(rows)?;
        if rows.len() != 2 || rows[0].len() != rows[1].len() {
            return Err(Error::Parse("rows must be two lists of equal length".into()));
        }
        return Ok(rows[0].iter().zip(&rows[1]).map(|(&x, &y)| [x, y]).collect());
    }
    Err(Error::Parse("expected a \"columns\" or \"rows\" field".into()))
}

fn load_matrix(source: &str) -> Result<ColumnMatrix, Error> {
    build_matrix(&parse_columns(&read_source(source)?)?)
}

fn closed_form_unavailable(e: &Error) -> bool {
    matches!(e, Error::NotOnePrime(_) | Error::ParallelColumns)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Chambers { matrix } => {
            let m = load_matrix(&matrix)?;
            let chambers = m.chambers()?;
            let pairs: Vec<_> = (0..m.len())
                .flat_map(|i| (i + 1..m.len()).map(move |j| (i, j)))
                .map(|(i, j)| json!({"pair": [i, j], "minor": m.det(i, j)}))
                .collect();
            let out = json!({
                "columns": m.columns(),
                "one_prime": m.is_one_prime(),
                "chambers": chambers,
                "pairs": pairs,
            });
            println!("{out}");
        }
        Command::Count { matrix, b1, b2, method, from_formula } => {
            let b = [b1, b2];
            let (m, closed): (ColumnMatrix, Option<QuasiPolynomial>) = if from_formula {
                let q = formula::from_json(&read_source(&matrix)?)?;
                (q.matrix.clone(), Some(q))
            } else {
                let m = load_matrix(&matrix)?;
                let q = match method {
                    Method::Oracle => None,
                    _ => match build_formula(&m) {
                        Ok(q) => Some(q),
                        Err(e) if closed_form_unavailable(&e) => {
                            eprintln!("warning: no closed form for this matrix ({e}); counting by enumeration");
                            None
                        }
                        Err(e) => return Err(e.into()),
                    },
                };
                (m, q)
            };
            match (method, closed) {
                (Method::Oracle, _) | (_, None) => println!("{}", brute_count(&m, b, false).count),
                (Method::Closed, Some(q)) => println!("{}", evaluate_count(&q, b)?),
                (Method::Both, Some(q)) => {
                    let c = evaluate_count(&q, b)?;
                    let o = brute_count(&m, b, false).count;
                    println!("closed={c} oracle={o} match={}", c == o.into());
                }
            }
        }
        Command::Formula { matrix, format } => {
            let q = build_formula(&load_matrix(&matrix)?)?;
            match format {
                Format::Json => println!("{}", formula::to_json(&q)),
                Format::Text => print!("{}", render_text(&q)),
            }
        }
        Command::Verify { matrix, from_formula, radius, jobs } => {
            let q = if from_formula {
                formula::from_json(&read_source(&matrix)?)?
            } else {
                build_formula(&load_matrix(&matrix)?)?
            };
            let m = &q.matrix;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::PreconditionFailed(e.to_string()))?;
            let mismatches = pool.install(|| grid_verify(m, &q, radius));
            for mm in &mismatches {
                let closed = match &mm.closed {
                    Ok(v) => v.to_string(),
                    Err(e) => e.to_string(),
                };
                println!("mismatch at ({}, {}): closed={closed} oracle={}", mm.point[0], mm.point[1], mm.oracle);
            }
            println!("checked={} mismatches={}", grid_points(m, radius).len(), mismatches.len());
            if !mismatches.is_empty() {
                return Err(Failure::Mismatch);
            }
        }
        Command::Frobenius { matrix, direction, horizon } => {
            let m = load_matrix(&matrix)?;
            let r = frobenius_exact(&m, direction, horizon)?;
            let out = json!({
                "bound": r.bound.map(|v| v.to_string()),
                "exact": r.exact,
                "checks": r.checks,
            });
            println!("{out}");
        }
        Command::Popoviciu { a, b, n } => println!("{}", popoviciu_pair(a, b, n)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            ExitCode::from(2)
        }
    }
}
