//! Validated 2×n integer matrices and their chamber decomposition.
//!
//! Columns are stored counterclockwise. For a matrix without parallel columns
//! this makes every minor `det(c_i, c_j)` with `i < j` strictly positive, and
//! chamber `k` (0-based) is the open cone strictly between `c_k` and `c_{k+1}`.

use std::cmp::Ordering;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer column `(x, y)`.
pub type Column = [i64; 2];

/// A right-hand side `b = (b1, b2)`.
pub type LatticePoint = [i64; 2];

/// Entries are bounded so that products of a few minors fit comfortably in
/// `i64`; closed forms promote to big integers before multiplying further.
pub const MAX_ENTRY: i64 = 1 << 20;

pub fn det(a: Column, b: Column) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn dot(a: Column, b: Column) -> i64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Same direction (positive multiples of each other).
fn same_direction(a: Column, b: Column) -> bool {
    det(a, b) == 0 && dot(a, b) > 0
}

/// A validated 2×n matrix with columns in one open half-plane, sorted
/// counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnMatrix {
    columns: Vec<Column>,
    /// `original[k]` is the input position of sorted column `k`.
    original: Vec<usize>,
    /// Full table `minors[i][j] = det(c_i, c_j)`.
    minors: Vec<Vec<i64>>,
    separator: [i64; 2],
    has_parallel_columns: bool,
    one_prime: bool,
}

/// JSON input format `{"columns": [[x1, y1], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixSpec {
    pub columns: Vec<Column>,
}

impl MatrixSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<ColumnMatrix> {
        build_matrix(&self.columns)
    }
}

/// Validates `raw` and returns it sorted counterclockwise with cached minors.
pub fn build_matrix(raw: &[Column]) -> Result<ColumnMatrix> {
    if raw.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    for (i, c) in raw.iter().enumerate() {
        if *c == [0, 0] {
            return Err(Error::ZeroColumn(i));
        }
        if c.iter().any(|v| v.abs() > MAX_ENTRY) {
            return Err(Error::PreconditionFailed(format!(
                "column {i} has an entry larger than {MAX_ENTRY} in magnitude"
            )));
        }
    }
    if raw.len() < 2 {
        return Err(Error::TooFewColumns { needed: 2, got: raw.len() });
    }

    let (first, last) = extreme_columns(raw).ok_or(Error::OriginInHull)?;
    // For all columns between `first` and `last`: u·c > 0.
    let separator = if same_direction(first, last) {
        first
    } else {
        [last[1] - first[1], first[0] - last[0]]
    };
    debug_assert!(raw.iter().all(|&c| dot(separator, c) > 0));

    let mut order: Vec<usize> = (0..raw.len()).collect();
    // Within an open half-plane the cross product is a consistent angle order;
    // the stable sort keeps parallel columns in input order.
    order.sort_by(|&a, &b| match det(raw[a], raw[b]) {
        d if d > 0 => Ordering::Less,
        d if d < 0 => Ordering::Greater,
        _ => Ordering::Equal,
    });
    let columns: Vec<Column> = order.iter().map(|&k| raw[k]).collect();
    let n = columns.len();
    let minors: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| det(columns[i], columns[j])).collect())
        .collect();
    let has_parallel_columns = (0..n).any(|i| (i + 1..n).any(|j| minors[i][j] == 0));
    let one_prime = compute_one_prime(&minors);

    Ok(ColumnMatrix {
        columns,
        original: order,
        minors,
        separator,
        has_parallel_columns,
        one_prime,
    })
}

/// Finds the clockwise-most and counterclockwise-most columns, or `None` when
/// no open half-plane holds them all.
///
/// Distinct directions are arranged around the circle; the columns fit in an
/// open half-plane exactly when some circular gap between consecutive
/// directions exceeds a half turn, i.e. has a negative cross product.
fn extreme_columns(raw: &[Column]) -> Option<(Column, Column)> {
    let half = |c: &Column| c[1] < 0 || (c[1] == 0 && c[0] < 0);
    let mut dirs: Vec<Column> = raw.to_vec();
    dirs.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| match det(*a, *b) {
            d if d > 0 => Ordering::Less,
            d if d < 0 => Ordering::Greater,
            _ => Ordering::Equal,
        })
    });
    dirs.dedup_by(|a, b| same_direction(*a, *b));
    if dirs.len() == 1 {
        return Some((dirs[0], dirs[0]));
    }
    let m = dirs.len();
    (0..m).find_map(|k| {
        let (a, b) = (dirs[k], dirs[(k + 1) % m]);
        // gap from a to b counterclockwise is more than a half turn
        (det(a, b) < 0).then_some((b, a))
    })
}

fn compute_one_prime(minors: &[Vec<i64>]) -> bool {
    let n = minors.len();
    if n == 2 {
        // No 3-column subsets; the closed form only covers the unimodular case.
        return minors[0][1].abs() == 1;
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let g = [minors[a][b], minors[a][c], minors[b][c]]
                    .iter()
                    .fold(0i64, |g, m| g.gcd(m));
                // g == 0: the triple does not span, so it imposes nothing
                if g > 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Where a point sits relative to the chamber decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChamberLocation {
    /// Strictly inside chamber `k`.
    Interior(usize),
    /// On the ray of column `k` (the origin reports `Boundary(0)`).
    Boundary(usize),
    Outside,
}

impl ChamberLocation {
    /// Chamber used for closed-form evaluation: interior points use their own
    /// chamber; a point on the ray of column `k` uses chamber `max(k - 1, 0)`,
    /// whose closure contains it.
    pub fn resolve(self, n_chambers: usize) -> Option<usize> {
        match self {
            ChamberLocation::Interior(k) => Some(k),
            ChamberLocation::Boundary(k) => Some(k.saturating_sub(1).min(n_chambers - 1)),
            ChamberLocation::Outside => None,
        }
    }
}

/// One fundamental cone: the open cone between two consecutive columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub index: usize,
    pub lower_ray: Column,
    pub upper_ray: Column,
}

impl ColumnMatrix {
    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, k: usize) -> Column {
        self.columns[k]
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Input position of sorted column `k`.
    pub fn original_index(&self, k: usize) -> usize {
        self.original[k]
    }

    /// An integer direction `u` with `u·c > 0` for every column.
    pub fn separator(&self) -> [i64; 2] {
        self.separator
    }

    pub fn has_parallel_columns(&self) -> bool {
        self.has_parallel_columns
    }

    pub fn is_one_prime(&self) -> bool {
        self.one_prime
    }

    /// `det(c_i, c_j)` for any pair of sorted indices.
    pub fn det(&self, i: usize, j: usize) -> i64 {
        self.minors[i][j]
    }

    /// The minor `Y_ij = det(c_i, c_j)` for `i < j`.
    pub fn minor(&self, i: usize, j: usize) -> Result<i64> {
        let n = self.len();
        if i >= j || j >= n {
            return Err(Error::IndexOutOfRange(format!(
                "minor ({i}, {j}) needs i < j < {n}"
            )));
        }
        Ok(self.minors[i][j])
    }

    /// Closed cone membership.
    pub fn contains(&self, b: LatticePoint) -> bool {
        let first = self.columns[0];
        let last = self.columns[self.len() - 1];
        det(first, b) >= 0 && det(b, last) >= 0 && dot(self.separator, b) >= 0
    }

    pub fn chambers(&self) -> Result<Vec<Chamber>> {
        if self.has_parallel_columns {
            return Err(Error::ParallelColumns);
        }
        Ok((0..self.len() - 1)
            .map(|k| Chamber {
                index: k,
                lower_ray: self.columns[k],
                upper_ray: self.columns[k + 1],
            })
            .collect())
    }

    pub fn n_chambers(&self) -> usize {
        self.len() - 1
    }

    /// Locates `b` by determinant signs.
    pub fn chamber_of(&self, b: LatticePoint) -> ChamberLocation {
        if !self.contains(b) {
            return ChamberLocation::Outside;
        }
        if b == [0, 0] {
            return ChamberLocation::Boundary(0);
        }
        for (k, &c) in self.columns.iter().enumerate() {
            if same_direction(c, b) {
                return ChamberLocation::Boundary(k);
            }
        }
        for k in 0..self.len() - 1 {
            if det(self.columns[k], b) > 0 && det(b, self.columns[k + 1]) > 0 {
                return ChamberLocation::Interior(k);
            }
        }
        unreachable!("point in the cone but in no chamber or ray")
    }

    /// The raw column list as JSON input.
    pub fn to_spec(&self) -> MatrixSpec {
        MatrixSpec { columns: self.columns.clone() }
    }
}

/// Free-function forms matching the operation names used elsewhere.
pub fn minor(m: &ColumnMatrix, i: usize, j: usize) -> Result<i64> {
    m.minor(i, j)
}

pub fn is_one_prime(m: &ColumnMatrix) -> bool {
    m.is_one_prime()
}

pub fn chambers(m: &ColumnMatrix) -> Result<Vec<Chamber>> {
    m.chambers()
}

pub fn chamber_of(m: &ColumnMatrix, b: LatticePoint) -> ChamberLocation {
    m.chamber_of(b)
}
