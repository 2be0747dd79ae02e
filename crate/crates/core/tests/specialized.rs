mod common;

use num_integer::Integer;

use common::{largest_gap, matrix, pair_count, M0, M0_PRIME};
use vpart_core::arith::rat;
use vpart_core::frobenius::{frobenius_bound, frobenius_exact, frobenius_pair, DEFAULT_HORIZON};
use vpart_core::oracle::brute_count;
use vpart_core::quasipoly::{popoviciu_2x3, popoviciu_pair, popoviciu_parallel};

#[test]
fn pair_formula_on_large_arguments() {
    for (a, b) in [(97, 89), (1000, 999), (17, 1)] {
        for n in [0, 1, a * b - a - b, a * b, 3 * a * b + 7] {
            assert_eq!(popoviciu_pair(a, b, n), Ok(pair_count(a, b, n)), "({a}, {b}, {n})");
        }
    }
}

#[test]
fn pair_frobenius_agrees_with_closed_form_count() {
    for a in 1..=20i64 {
        for b in 1..=20i64 {
            if a.gcd(&b) != 1 {
                continue;
            }
            let f = frobenius_pair(a, b).unwrap();
            assert_eq!(f, largest_gap(a, b));
            if f >= 0 {
                assert_eq!(popoviciu_pair(a, b, f), Ok(0));
            }
        }
    }
}

#[test]
fn two_by_three_form_with_non_coprime_minors() {
    // minors 3, 3, 1: 1-prime but not pairwise coprime
    let m = matrix(&[[1, 0], [1, 3], [0, 1]]);
    assert!(m.is_one_prime());
    for x in -15..=15 {
        for y in -15..=15 {
            assert_eq!(popoviciu_2x3(&m, [x, y]), Ok(brute_count(&m, [x, y], false).count));
        }
    }
}

#[test]
fn parallel_form_with_swapped_sides() {
    let m = matrix(&[[1, 2], [5, 5], [2, 2]]);
    for x in -20..=20 {
        for y in -20..=20 {
            assert_eq!(popoviciu_parallel(&m, [x, y]), Ok(brute_count(&m, [x, y], false).count));
        }
    }
}

#[test]
fn frobenius_examples() {
    let r = frobenius_exact(&matrix(&M0_PRIME), [1, 1], DEFAULT_HORIZON).unwrap();
    assert_eq!((r.exact, r.bound), (1, Some(rat(2))));
    let r = frobenius_exact(&matrix(&M0), [3, 1], DEFAULT_HORIZON).unwrap();
    assert_eq!((r.exact, r.witness, r.bound), (0, None, Some(rat(0))));
}

#[test]
fn frobenius_bound_holds_on_many_directions() {
    let m = matrix(&[[2, -1], [1, 1], [1, 3]]);
    let mut tested = 0;
    for x in 1..=8 {
        for y in -4..=12 {
            let Ok(bound) = frobenius_bound(&m, [x, y]) else { continue };
            let r = frobenius_exact(&m, [x, y], DEFAULT_HORIZON).unwrap();
            if let Some(w) = r.witness {
                assert!(rat(w as i64) < bound, "({x}, {y}): {w} vs {bound}");
            }
            tested += 1;
        }
    }
    assert!(tested > 20);
}

#[test]
fn scaled_directions_stay_in_band() {
    let m = matrix(&M0_PRIME);
    for n in [[1, 1], [2, 1], [3, 2]] {
        let base = frobenius_exact(&m, n, DEFAULT_HORIZON).unwrap().exact;
        for lambda in [2, 3] {
            let scaled = frobenius_exact(&m, [n[0] * lambda, n[1] * lambda], DEFAULT_HORIZON).unwrap().exact;
            assert!(scaled * lambda <= base + lambda, "{n:?} x {lambda}");
        }
    }
}
