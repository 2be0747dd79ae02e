//! Frobenius numbers: the classic two-coin value and its analogue along a ray
//! `N n` for a 2×3 system.

use num_integer::Integer;

use crate::arith::{ratio, Rational};
use crate::error::{Error, Result};
use crate::lattice::{det, ColumnMatrix, LatticePoint};
use crate::oracle::brute_count;

/// Default cap on `N` for [`frobenius_exact`].
pub const DEFAULT_HORIZON: u64 = 10_000;

/// `ab - a - b`, the largest `N` with no `x, y >= 0` such that `ax + by = N`
/// (`-1` when every `N >= 0` is representable).
pub fn frobenius_pair(a: i64, b: i64) -> Result<i64> {
    if a < 1 || b < 1 {
        return Err(Error::PreconditionFailed(format!("need a, b >= 1, got ({a}, {b})")));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, n: b });
    }
    Ok(a * b - a - b)
}

/// Strict upper bound on the largest unsolvable `N` along direction `n`.
///
/// Needs the three minors pairwise coprime. On the closure of chamber 0 it is
/// `(Y01 Y02 - Y01 - Y02 + 1) / det(c_0, n)`; on chamber 1,
/// `(Y12 Y02 - Y12 - Y02 + 1) / det(n, c_2)`. A point on the middle ray uses
/// chamber 0.
pub fn frobenius_bound(m: &ColumnMatrix, n: LatticePoint) -> Result<Rational> {
    if m.len() != 3 {
        return Err(Error::PreconditionFailed(format!("need 3 columns, got {}", m.len())));
    }
    if m.has_parallel_columns() {
        return Err(Error::ParallelColumns);
    }
    let (y01, y02, y12) = (m.det(0, 1), m.det(0, 2), m.det(1, 2));
    if y01.gcd(&y02) != 1 || y01.gcd(&y12) != 1 || y02.gcd(&y12) != 1 {
        return Err(Error::NotPairwiseCoprime([y01, y02, y12]));
    }
    let degenerate = || Error::DegenerateDirection(n[0], n[1]);
    let k = m.chamber_of(n).resolve(2).ok_or_else(degenerate)?;
    let (a, b, denom) = if k == 0 {
        (y01, y02, det(m.column(0), n))
    } else {
        (y12, y02, det(n, m.column(2)))
    };
    if denom <= 0 {
        return Err(degenerate());
    }
    Ok(ratio(a * b - a - b + 1, denom))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusResult {
    /// From [`frobenius_bound`], when it applies.
    pub bound: Option<Rational>,
    /// Largest `N >= 1` with `t(N n|M) = 0`, or 0 when every `N >= 1` is
    /// solvable.
    pub exact: i64,
    /// The unsolvable `N` itself; absent when `exact` is the 0 sentinel.
    pub witness: Option<u64>,
    /// Number of `N` counted by the oracle.
    pub checks: u64,
}

/// Searches `N = 1, 2, ...` with the oracle.
///
/// Solvable `N` are closed under addition. So once the smallest solvable `s`
/// is known, a run of `s` consecutive solvable values proves every later `N`
/// solvable, and the search stops there.
pub fn frobenius_exact(m: &ColumnMatrix, n: LatticePoint, horizon: u64) -> Result<FrobeniusResult> {
    if n == [0, 0] || !m.contains(n) {
        return Err(Error::PreconditionFailed(format!(
            "direction ({}, {}) is not a nonzero point of the cone",
            n[0], n[1]
        )));
    }
    let bound = frobenius_bound(m, n).ok();
    let mut smallest = None;
    let mut run = 0u64;
    let mut witness = None;
    for big_n in 1..=horizon {
        let point = [n[0] * big_n as i64, n[1] * big_n as i64];
        if brute_count(m, point, false).count > 0 {
            let s = *smallest.get_or_insert(big_n);
            run += 1;
            if run >= s {
                return Ok(FrobeniusResult {
                    bound,
                    exact: witness.map_or(0, |w| w as i64),
                    witness,
                    checks: big_n,
                });
            }
        } else {
            run = 0;
            witness = Some(big_n);
        }
    }
    Err(Error::HorizonExceeded(horizon))
}
