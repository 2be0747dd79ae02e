//! The multivariate truncated power `T(x|M)` of a 2×n matrix.
//!
//! On the closed cone, `T` is the plus-function sum
//!
//! ```text
//! T(x, y) = 1/(n-2)! * sum_i (y_i x - x_i y)_+^(n-2) / prod_{j != i} (y_i x_j - y_j x_i)
//! ```
//!
//! and on chamber `k` only the columns counterclockwise of the chamber
//! (`i > k`) have a positive linear form, which gives the piece polynomials.
//! [`truncated_power_recurrence`] evaluates `T` independently by peeling off
//! the two columns that bound the query point.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{factorial, rat, BivarPoly, Rational};
use crate::error::{Error, Result};
use crate::lattice::{Column, ColumnMatrix};

pub type RationalPoint = [Rational; 2];

pub fn point(x: i64, y: i64) -> RationalPoint {
    [rat(x), rat(y)]
}

fn det_rc(c: Column, b: &RationalPoint) -> Rational {
    // det(c, b)
    &b[1] * rat(c[0]) - &b[0] * rat(c[1])
}

fn det_br(b: &RationalPoint, c: Column) -> Rational {
    -det_rc(c, b)
}

fn dot_r(u: [i64; 2], b: &RationalPoint) -> Rational {
    &b[0] * rat(u[0]) + &b[1] * rat(u[1])
}

/// Closed-cone membership of a rational point for a counterclockwise-sorted
/// column list whose columns all have positive dot product with `sep`.
fn in_closed_cone(cols: &[Column], sep: [i64; 2], b: &RationalPoint) -> bool {
    let zero = Rational::zero();
    det_rc(cols[0], b) >= zero && det_br(b, cols[cols.len() - 1]) >= zero && dot_r(sep, b) >= zero
}

/// `y_i x - x_i y` as a polynomial.
fn column_form(c: Column) -> BivarPoly {
    BivarPoly::linear(rat(c[1]), rat(-c[0]))
}

/// `prod_{j != i} (y_i x_j - y_j x_i) = prod_{j != i} det(c_j, c_i)`.
fn column_denominator(m: &ColumnMatrix, i: usize) -> Rational {
    let prod = (0..m.len())
        .filter(|&j| j != i)
        .fold(BigInt::from(1), |acc, j| acc * BigInt::from(m.det(j, i)));
    Rational::from_integer(prod)
}

fn require_distinct_directions(m: &ColumnMatrix) -> Result<()> {
    if m.has_parallel_columns() {
        Err(Error::ParallelColumns)
    } else {
        Ok(())
    }
}

/// `T(b|M)` by the explicit plus-function formula.
///
/// Points outside the closed cone return 0 without consulting the formula:
/// the raw plus-function sum does not vanish on the reflected cone `-cone(M)`.
pub fn truncated_power_explicit(m: &ColumnMatrix, b: &RationalPoint) -> Result<Rational> {
    let n = m.len();
    if n < 3 {
        return Err(Error::TooFewColumns { needed: 3, got: n });
    }
    require_distinct_directions(m)?;
    if !in_closed_cone(m.columns(), m.separator(), b) {
        return Ok(Rational::zero());
    }
    Ok(plus_function_sum(m, b))
}

/// The plus-function sum itself, with no support check.
pub(crate) fn plus_function_sum(m: &ColumnMatrix, b: &RationalPoint) -> Rational {
    let n = m.len();
    let d = (n - 2) as u32;
    let mut sum = Rational::zero();
    for (i, &c) in m.columns().iter().enumerate() {
        let form = det_br(b, c);
        if form.is_positive() {
            sum += num_traits::pow(form, d as usize) / column_denominator(m, i);
        }
    }
    sum / Rational::from_integer(factorial(d))
}

/// The polynomial `D^v T(·|M)` on chamber `k`:
///
/// ```text
/// 1/(n-2-|v|)! * sum_{i > k} (y_i x - x_i y)^(n-2-|v|) * y_i^v1 * (-x_i)^v2 / prod_{j != i} det(c_j, c_i)
/// ```
pub fn truncated_power_derivative(
    m: &ColumnMatrix,
    v: (u32, u32),
    k: usize,
) -> Result<BivarPoly> {
    require_distinct_directions(m)?;
    let n = m.len();
    if k + 1 >= n {
        return Err(Error::IndexOutOfRange(format!(
            "chamber {k} of a matrix with {} chambers",
            n - 1
        )));
    }
    let max = (n - 2) as u32;
    let order = v.0 + v.1;
    if order > max {
        return Err(Error::OrderTooHigh { order, max });
    }
    let d = max - order;
    let scale = Rational::from_integer(factorial(d)).recip();
    let mut out = BivarPoly::zero();
    for i in k + 1..n {
        let c = m.column(i);
        let factor = num_traits::pow(rat(c[1]), v.0 as usize)
            * num_traits::pow(rat(-c[0]), v.1 as usize)
            / column_denominator(m, i);
        out = &out + &column_form(c).pow(d).scale(&(factor * &scale));
    }
    Ok(out)
}

/// The piece of `T(·|M)` on chamber `k`, homogeneous of degree `n - 2`.
pub fn truncated_power_piece(m: &ColumnMatrix, k: usize) -> Result<BivarPoly> {
    truncated_power_derivative(m, (0, 0), k)
}

/// `T(b|M)` by the column-removal recurrence
/// `T(x|M) = 1/(n-2) * sum_j lambda_j T(x|M \ m_j)` with `x = sum_j lambda_j m_j`.
///
/// The representation uses only the two consecutive distinct-direction
/// columns whose closed cone contains `b`. The base case is a 2×2 matrix:
/// `1/|det|` on its closed cone and 0 elsewhere. Parallel columns are allowed;
/// a parallel 2×2 base contributes 0 off its ray and fails with
/// [`Error::DegenerateBase`] on it.
pub fn truncated_power_recurrence(m: &ColumnMatrix, b: &RationalPoint) -> Result<Rational> {
    recurse(m.columns(), m.separator(), b)
}

fn recurse(cols: &[Column], sep: [i64; 2], b: &RationalPoint) -> Result<Rational> {
    let n = cols.len();
    let first = cols[0];
    let last = cols[n - 1];
    let on_ray = det_rc(first, b).is_zero() && dot_r(sep, b) >= Rational::zero();

    if crate::lattice::det(first, last) == 0 {
        // all columns share one direction
        return if on_ray { Err(Error::DegenerateBase) } else { Ok(Rational::zero()) };
    }
    if !in_closed_cone(cols, sep, b) {
        return Ok(Rational::zero());
    }
    if n == 2 {
        return Ok(Rational::from_integer(BigInt::from(crate::lattice::det(first, last)))
            .abs()
            .recip());
    }

    let zero = Rational::zero();
    let k = (0..n - 1)
        .find(|&k| {
            crate::lattice::det(cols[k], cols[k + 1]) > 0
                && det_rc(cols[k], b) >= zero
                && det_br(b, cols[k + 1]) >= zero
        })
        .expect("point in the cone lies between two consecutive columns");
    let (lo, hi) = (cols[k], cols[k + 1]);
    let base = rat(crate::lattice::det(lo, hi));
    let lambda_lo = det_br(b, hi) / &base;
    let lambda_hi = det_rc(lo, b) / &base;

    let mut sum = Rational::zero();
    for (idx, lambda) in [(k, lambda_lo), (k + 1, lambda_hi)] {
        if lambda.is_zero() {
            continue;
        }
        let mut rest = cols.to_vec();
        rest.remove(idx);
        sum += lambda * recurse(&rest, sep, b)?;
    }
    Ok(sum / rat((n - 2) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::lattice::build_matrix;
    use proptest::prelude::*;

    fn example_a() -> ColumnMatrix {
        build_matrix(&[[1, 0], [2, 1], [1, 1], [0, 1]]).unwrap()
    }

    #[test]
    fn explicit_golden_values() {
        let a = example_a();
        assert_eq!(truncated_power_explicit(&a, &point(3, 1)), Ok(ratio(1, 2)));
        assert_eq!(truncated_power_explicit(&a, &point(3, 2)), Ok(ratio(7, 4)));
        assert_eq!(truncated_power_explicit(&a, &point(1, 2)), Ok(ratio(1, 4)));
    }

    #[test]
    fn recurrence_golden_values() {
        let a = example_a();
        assert_eq!(truncated_power_recurrence(&a, &point(3, 2)), Ok(ratio(7, 4)));
        assert_eq!(truncated_power_recurrence(&a, &point(3, 1)), Ok(ratio(1, 2)));
        let id = build_matrix(&[[1, 0], [0, 1]]).unwrap();
        assert_eq!(truncated_power_recurrence(&id, &point(1, 1)), Ok(rat(1)));
        assert_eq!(truncated_power_recurrence(&id, &point(-1, 1)), Ok(rat(0)));
    }

    #[test]
    fn recurrence_with_parallel_columns() {
        // columns (2,2), (3,3), (1,2): lambda 1/2 on (2,2) and 1 on (1,2)
        let m = build_matrix(&[[2, 2], [3, 3], [1, 2]]).unwrap();
        assert_eq!(truncated_power_recurrence(&m, &point(2, 3)), Ok(ratio(1, 6)));
        // the positive orientation det(b, c3) / (k l) of the single piece
        for (x, y) in [(2, 3), (5, 7), (1, 1), (4, 5)] {
            let expected = ratio(2 * x - y, 6);
            assert_eq!(truncated_power_recurrence(&m, &point(x, y)), Ok(expected));
        }
        let ray = build_matrix(&[[1, 1], [2, 2]]).unwrap();
        assert_eq!(truncated_power_recurrence(&ray, &point(1, 2)), Ok(rat(0)));
        assert_eq!(
            truncated_power_recurrence(&ray, &point(3, 3)),
            Err(Error::DegenerateBase)
        );
    }

    #[test]
    fn pieces_of_example() {
        let a = example_a();
        let y2_half = BivarPoly::monomial(ratio(1, 2), 0, 2);
        assert_eq!(truncated_power_piece(&a, 0).unwrap(), y2_half);
        let mid = BivarPoly::from_terms([
            ((2, 0), ratio(-1, 4)),
            ((1, 1), rat(1)),
            ((0, 2), ratio(-1, 2)),
        ]);
        assert_eq!(truncated_power_piece(&a, 1).unwrap(), mid);
        assert_eq!(
            truncated_power_piece(&a, 2).unwrap(),
            BivarPoly::monomial(ratio(1, 4), 2, 0)
        );
    }

    #[test]
    fn derivative_examples() {
        let a = example_a();
        assert_eq!(
            truncated_power_derivative(&a, (0, 1), 0).unwrap(),
            BivarPoly::monomial(rat(1), 0, 1)
        );
        assert_eq!(truncated_power_derivative(&a, (0, 2), 0).unwrap(), BivarPoly::one());
        assert_eq!(truncated_power_derivative(&a, (1, 1), 1).unwrap(), BivarPoly::one());
        assert_eq!(
            truncated_power_derivative(&a, (2, 1), 1),
            Err(Error::OrderTooHigh { order: 3, max: 2 })
        );
    }

    #[test]
    fn argument_errors() {
        let id = build_matrix(&[[1, 0], [0, 1]]).unwrap();
        assert!(matches!(
            truncated_power_explicit(&id, &point(1, 1)),
            Err(Error::TooFewColumns { .. })
        ));
        let par = build_matrix(&[[2, 2], [3, 3], [1, 2]]).unwrap();
        assert_eq!(
            truncated_power_explicit(&par, &point(2, 3)),
            Err(Error::ParallelColumns)
        );
        assert!(truncated_power_piece(&example_a(), 3).is_err());
    }

    #[test]
    fn reflected_cone_needs_the_support_check() {
        let a = example_a();
        assert_eq!(plus_function_sum(&a, &point(-3, -1)), ratio(-1, 2));
        assert_eq!(truncated_power_explicit(&a, &point(-3, -1)), Ok(rat(0)));
    }

    fn random_matrix() -> impl Strategy<Value = ColumnMatrix> {
        prop::collection::vec((-6i64..=6, -6i64..=6), 3..=6).prop_filter_map(
            "valid, distinct directions",
            |v| {
                let cols: Vec<Column> = v.into_iter().map(|(a, b)| [a, b]).collect();
                build_matrix(&cols).ok().filter(|m| !m.has_parallel_columns())
            },
        )
    }

    /// A rational point `(p c_lo + q c_hi) / r` inside a random chamber closure.
    fn point_in_cone(m: &ColumnMatrix, k: usize, p: i64, q: i64, r: i64) -> RationalPoint {
        let k = k % (m.len() - 1);
        let (lo, hi) = (m.column(k), m.column(k + 1));
        [
            ratio(p * lo[0] + q * hi[0], r),
            ratio(p * lo[1] + q * hi[1], r),
        ]
    }

    proptest! {
        #[test]
        fn explicit_matches_recurrence(
            m in random_matrix(), k in 0usize..8, p in 0i64..30, q in 0i64..30, r in 1i64..7,
        ) {
            let b = point_in_cone(&m, k, p, q, r);
            prop_assert_eq!(
                truncated_power_explicit(&m, &b).unwrap(),
                truncated_power_recurrence(&m, &b).unwrap()
            );
        }

        #[test]
        fn homogeneous_of_degree_n_minus_2(
            m in random_matrix(), k in 0usize..8, p in 0i64..20, q in 0i64..20,
            lam_num in 1i64..9, lam_den in 1i64..9,
        ) {
            let b = point_in_cone(&m, k, p, q, 1);
            let lam = ratio(lam_num, lam_den);
            let scaled = [&b[0] * &lam, &b[1] * &lam];
            let d = m.len() - 2;
            prop_assert_eq!(
                truncated_power_explicit(&m, &scaled).unwrap(),
                num_traits::pow(lam, d) * truncated_power_explicit(&m, &b).unwrap()
            );
        }

        #[test]
        fn vanishes_outside_cone(m in random_matrix(), x in -20i64..20, y in -20i64..20) {
            let b = point(x, y);
            if !m.contains([x, y]) {
                prop_assert_eq!(truncated_power_explicit(&m, &b).unwrap(), rat(0));
                prop_assert_eq!(truncated_power_recurrence(&m, &b).unwrap(), rat(0));
            }
        }

        #[test]
        fn pieces_agree_with_formula_inside(
            m in random_matrix(), k in 0usize..8, p in 1i64..25, q in 1i64..25,
        ) {
            let k = k % (m.len() - 1);
            let b = point_in_cone(&m, k, p, q, 1);
            let piece = truncated_power_piece(&m, k).unwrap();
            prop_assert!(piece.is_homogeneous(m.len() as u32 - 2));
            prop_assert_eq!(piece.eval(&b[0], &b[1]), truncated_power_explicit(&m, &b).unwrap());
        }

        #[test]
        fn derivative_closed_form_matches_differentiation(
            m in random_matrix(), k in 0usize..8, v1 in 0u32..3, v2 in 0u32..3,
        ) {
            let k = k % (m.len() - 1);
            prop_assume!(v1 + v2 <= m.len() as u32 - 2);
            let piece = truncated_power_piece(&m, k).unwrap();
            prop_assert_eq!(
                truncated_power_derivative(&m, (v1, v2), k).unwrap(),
                piece.diff((v1, v2))
            );
        }
    }
}
