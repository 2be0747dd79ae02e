//! Ground truth by enumeration: `t(b|M) = #{x in Z_+^n : M x = b}`.
//!
//! Columns are taken in their sorted (counterclockwise) order. Each level
//! fixes one `x_i` and keeps only values whose residual stays in the closed
//! cone of the columns not yet used; the last two columns are solved exactly.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::Error;
use crate::lattice::{Column, ColumnMatrix, LatticePoint};
use crate::quasipoly::{evaluate_count, QuasiPolynomial};

/// Most solutions kept when collecting.
pub const MAX_SOLUTIONS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub count: u64,
    /// Solution vectors in the input column order, when requested; at most
    /// [`MAX_SOLUTIONS`] of them.
    pub solutions: Option<Vec<Vec<u64>>>,
}

type Vec2 = [i128; 2];

fn wide(c: Column) -> Vec2 {
    [c[0] as i128, c[1] as i128]
}

fn det(a: Vec2, b: Vec2) -> i128 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: Vec2, b: Vec2) -> i128 {
    a[0] * b[0] + a[1] * b[1]
}

fn sub_scaled(r: Vec2, x: i128, c: Vec2) -> Vec2 {
    [r[0] - x * c[0], r[1] - x * c[1]]
}

struct Search<'a> {
    cols: Vec<Vec2>,
    u: Vec2,
    original: Vec<usize>,
    count: u64,
    collect: Option<&'a mut Vec<Vec<u64>>>,
    stack: Vec<u64>,
}

impl Search<'_> {
    fn record(&mut self, tail: &[u64]) {
        self.count += 1;
        let Some(out) = self.collect.as_deref_mut() else { return };
        if out.len() >= MAX_SOLUTIONS {
            return;
        }
        let mut x = vec![0u64; self.cols.len()];
        for (k, v) in self.stack.iter().chain(tail).enumerate() {
            x[self.original[k]] = *v;
        }
        out.push(x);
    }

    fn run(&mut self, i: usize, r: Vec2) {
        let n = self.cols.len();
        if i + 2 == n {
            self.solve_last_two(r);
            return;
        }
        let (c, next, last) = (self.cols[i], self.cols[i + 1], self.cols[n - 1]);
        // x_i must keep the residual in cone(c_{i+1}, ..., c_{n-1}).
        let mut hi = dot(self.u, r).div_euclid(dot(self.u, c));
        let mut lo = 0;
        let (a, y) = (det(next, r), det(c, next));
        if y > 0 {
            lo = lo.max(-(a.div_euclid(y)));
        } else if a < 0 {
            return;
        }
        let (b, z) = (det(r, last), det(c, last));
        if z > 0 {
            hi = hi.min(b.div_euclid(z));
        } else if b < 0 {
            return;
        }
        for x in lo..=hi {
            self.stack.push(x as u64);
            self.run(i + 1, sub_scaled(r, x, c));
            self.stack.pop();
        }
    }

    fn solve_last_two(&mut self, r: Vec2) {
        let (p, q) = (self.cols[self.cols.len() - 2], self.cols[self.cols.len() - 1]);
        let d = det(p, q);
        if d != 0 {
            let (a, b) = (det(r, q), det(p, r));
            if a % d == 0 && b % d == 0 && a / d >= 0 && b / d >= 0 {
                self.record(&[(a / d) as u64, (b / d) as u64]);
            }
            return;
        }
        // parallel pair: step through multiples of p
        let hi = dot(self.u, r).div_euclid(dot(self.u, p));
        for a in 0..=hi {
            let rest = sub_scaled(r, a, p);
            if det(rest, q) != 0 {
                continue;
            }
            let (num, den) = (dot(rest, q), dot(q, q));
            if num >= 0 && num % den == 0 {
                self.record(&[a as u64, (num / den) as u64]);
            }
        }
    }
}

/// Counts the nonnegative integer solutions of `M x = b`.
pub fn brute_count(m: &ColumnMatrix, b: LatticePoint, collect: bool) -> CountResult {
    let mut solutions = collect.then(Vec::new);
    let count = if m.contains(b) {
        let mut search = Search {
            cols: m.columns().iter().map(|&c| wide(c)).collect(),
            u: wide(m.separator()),
            original: (0..m.len()).map(|k| m.original_index(k)).collect(),
            count: 0,
            collect: solutions.as_mut(),
            stack: Vec::new(),
        };
        search.run(0, wide(b));
        search.count
    } else {
        0
    };
    CountResult { count, solutions }
}

/// One disagreement found by [`grid_verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub point: LatticePoint,
    pub closed: Result<BigUint, Error>,
    pub oracle: u64,
}

/// All integer `b` with `||b||_inf <= radius` on the nonnegative side of the
/// separator, in row-major order.
pub fn grid_points(m: &ColumnMatrix, radius: i64) -> Vec<LatticePoint> {
    let u = m.separator();
    (-radius..=radius)
        .flat_map(|x| (-radius..=radius).map(move |y| [x, y]))
        .filter(|b| u[0] * b[0] + u[1] * b[1] >= 0)
        .collect()
}

/// Compares the closed form with [`brute_count`] over [`grid_points`].
///
/// Runs on the current rayon pool; the mismatch list is in grid order
/// regardless of scheduling.
pub fn grid_verify(m: &ColumnMatrix, q: &QuasiPolynomial, radius: i64) -> Vec<Mismatch> {
    grid_points(m, radius)
        .into_par_iter()
        .filter_map(|b| {
            let oracle = brute_count(m, b, false).count;
            let closed = evaluate_count(q, b);
            match &closed {
                Ok(v) if *v == BigUint::from(oracle) => None,
                _ => Some(Mismatch { point: b, closed, oracle }),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_matrix;
    use proptest::prelude::*;

    fn example_a() -> ColumnMatrix {
        build_matrix(&[[1, 0], [2, 1], [1, 1], [0, 1]]).unwrap()
    }

    /// Plain nested loops up to the separator bound; only usable for tiny inputs.
    fn naive(m: &ColumnMatrix, b: LatticePoint) -> u64 {
        let cols = m.columns();
        let u = m.separator();
        let ub = u[0] * b[0] + u[1] * b[1];
        if ub < 0 {
            return 0;
        }
        let bound = cols.iter().map(|c| ub / (u[0] * c[0] + u[1] * c[1])).max().unwrap() as u64;
        let n = cols.len();
        let mut x = vec![0u64; n];
        let mut count = 0;
        loop {
            let s = cols.iter().zip(&x).fold([0i64, 0], |acc, (c, &k)| {
                [acc[0] + c[0] * k as i64, acc[1] + c[1] * k as i64]
            });
            if s == b {
                count += 1;
            }
            let mut k = 0;
            while k < n {
                x[k] += 1;
                if x[k] <= bound {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
            if k == n {
                return count;
            }
        }
    }

    #[test]
    fn example_counts() {
        let a = example_a();
        assert_eq!(brute_count(&a, [3, 2], false).count, 5);
        assert_eq!(brute_count(&a, [3, 1], false).count, 3);
        assert_eq!(brute_count(&a, [0, 0], false).count, 1);
        assert_eq!(brute_count(&a, [-1, 5], false).count, 0);
    }

    #[test]
    fn collected_solutions_solve_the_system() {
        let raw = [[0, 1], [1, 1], [1, 0], [2, 1]];
        let m = build_matrix(&raw).unwrap();
        let res = brute_count(&m, [3, 2], true);
        let sols = res.solutions.unwrap();
        assert_eq!(sols.len() as u64, res.count);
        for x in &sols {
            let s = raw.iter().zip(x).fold([0i64, 0], |acc, (c, &k)| {
                [acc[0] + c[0] * k as i64, acc[1] + c[1] * k as i64]
            });
            assert_eq!(s, [3, 2]);
        }
        let mut dedup = sols.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), sols.len());
    }

    #[test]
    fn parallel_and_two_column_inputs() {
        let m = build_matrix(&[[2, 2], [3, 3], [1, 2]]).unwrap();
        assert_eq!(brute_count(&m, [2, 3], false).count, 0);
        assert_eq!(brute_count(&m, [3, 4], false).count, 1);
        let ray = build_matrix(&[[1, 1], [2, 2]]).unwrap();
        assert_eq!(brute_count(&ray, [4, 4], false).count, 3);
        assert_eq!(brute_count(&ray, [4, 5], false).count, 0);
        let id = build_matrix(&[[1, 0], [0, 1]]).unwrap();
        assert_eq!(brute_count(&id, [4, 5], false).count, 1);
        assert_eq!(brute_count(&id, [4, -5], false).count, 0);
    }

    #[test]
    fn grid_points_respect_separator() {
        let a = example_a();
        let pts = grid_points(&a, 2);
        assert!(pts.iter().all(|b| a.separator()[0] * b[0] + a.separator()[1] * b[1] >= 0));
        assert!(pts.contains(&[2, 2]));
    }

    fn small_matrix() -> impl Strategy<Value = ColumnMatrix> {
        prop::collection::vec((-2i64..=2, -2i64..=2), 2..5).prop_filter_map("valid", |cols| {
            let cols: Vec<Column> = cols.into_iter().map(|(a, b)| [a, b]).collect();
            build_matrix(&cols).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn agrees_with_naive_loops(m in small_matrix(), b1 in -4i64..=4, b2 in -4i64..=4) {
            prop_assert_eq!(brute_count(&m, [b1, b2], false).count, naive(&m, [b1, b2]));
        }

        #[test]
        fn column_order_does_not_matter(m in small_matrix(), b1 in -8i64..=8, b2 in -8i64..=8, rot in 0usize..5) {
            let mut cols = m.columns().to_vec();
            cols.reverse();
            let k = rot % cols.len();
            cols.rotate_left(k);
            let shuffled = build_matrix(&cols).unwrap();
            prop_assert_eq!(brute_count(&m, [b1, b2], false).count, brute_count(&shuffled, [b1, b2], false).count);
        }

        #[test]
        fn adding_a_column_never_decreases(m in small_matrix(), b1 in -8i64..=8, b2 in -8i64..=8, j in 0usize..5) {
            let c = m.column(j % m.len());
            let b = [b1, b2];
            prop_assert!(brute_count(&m, [b1 + c[0], b2 + c[1]], false).count >= brute_count(&m, b, false).count);
        }
    }
}
