#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vpart_core::lattice::{build_matrix, Column, ColumnMatrix};

pub const A: [Column; 4] = [[1, 0], [2, 1], [1, 1], [0, 1]];
pub const M0: [Column; 3] = [[1, 0], [1, 1], [1, 2]];
pub const M0_PRIME: [Column; 3] = [[1, 0], [1, 2], [1, 3]];

pub fn matrix(cols: &[Column]) -> ColumnMatrix {
    build_matrix(cols).expect("valid test matrix")
}

/// `count` random 1-prime matrices with 3..=`max_cols` pairwise non-parallel
/// columns and entries in `[-bound, bound]`. Every matrix has at least one
/// pair with minor >= 2, so periodic terms are exercised.
pub fn random_one_prime(seed: u64, count: usize, max_cols: usize, bound: i64) -> Vec<ColumnMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=max_cols);
        let cols: Vec<Column> = (0..n)
            .map(|_| [rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)])
            .collect();
        let Ok(m) = build_matrix(&cols) else { continue };
        let periodic = (0..n).any(|i| (i + 1..n).any(|j| m.det(i, j) >= 2));
        if !m.has_parallel_columns() && m.is_one_prime() && periodic {
            out.push(m);
        }
    }
    out
}

/// Strategy over 1-prime matrices with 3 or 4 pairwise non-parallel columns.
pub fn one_prime_matrix() -> impl Strategy<Value = ColumnMatrix> {
    prop::collection::vec((-4i64..=4, -4i64..=4), 3..=4).prop_filter_map("1-prime", |cols| {
        let cols: Vec<Column> = cols.into_iter().map(|(a, b)| [a, b]).collect();
        build_matrix(&cols).ok().filter(|m| !m.has_parallel_columns() && m.is_one_prime())
    })
}

/// Strategy over matrices with pairwise non-parallel columns.
pub fn distinct_direction_matrix() -> impl Strategy<Value = ColumnMatrix> {
    prop::collection::vec((-5i64..=5, -5i64..=5), 3..=5).prop_filter_map("distinct", |cols| {
        let cols: Vec<Column> = cols.into_iter().map(|(a, b)| [a, b]).collect();
        build_matrix(&cols).ok().filter(|m| !m.has_parallel_columns())
    })
}

/// Largest `N` in `[0, a*b]` with no `x, y >= 0` such that `a x + b y = N`,
/// by direct search; `-1` if there is none.
pub fn largest_gap(a: i64, b: i64) -> i64 {
    (0..=a * b)
        .rev()
        .find(|&n| !(0..=n / a).any(|x| (n - a * x) % b == 0))
        .unwrap_or(-1)
}

/// Solutions of `a x + b y = n` with `x, y >= 0`, by direct search.
pub fn pair_count(a: i64, b: i64, n: i64) -> u64 {
    if n < 0 {
        return 0;
    }
    (0..=n / a).filter(|x| (n - a * x) % b == 0).count() as u64
}
