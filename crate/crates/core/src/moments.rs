//! Derivatives of the Box-spline Fourier transform at the origin.
//!
//! `D^(v1,v2) B̂(0|M) = (-i)^(v1+v2) S_v` with the real double multinomial sum
//!
//! ```text
//! S_v = sum_{k_1+..+k_n = v1} sum_{l_1+..+l_n = v2}
//!         v1!/(k_1!..k_n!) * v2!/(l_1!..l_n!) * prod_j x_j^k_j y_j^l_j / (k_j + l_j + 1)
//! ```
//!
//! The polynomial-part recursion only ever needs `(-i)^|v| D^v B̂(0|M)`, which
//! is `(-1)^|v| S_v`; that real value is what this module stores.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{factorial, rat, Rational};
use crate::lattice::{Column, ColumnMatrix};

/// `beta_v = (-i)^|v| D^v B̂(0|M)` for one exponent pair.
pub fn moment(columns: &[Column], v: (u32, u32)) -> Rational {
    let s = multinomial_sum(columns, v);
    if (v.0 + v.1) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `S_v`, enumerating the per-column exponent splits `(k_j, l_j)` directly.
fn multinomial_sum(columns: &[Column], v: (u32, u32)) -> Rational {
    fn go(cols: &[Column], r1: u32, r2: u32) -> Rational {
        let Some((&c, rest)) = cols.split_first() else {
            return if r1 == 0 && r2 == 0 { Rational::one() } else { Rational::zero() };
        };
        let mut total = Rational::zero();
        for k in 0..=r1 {
            for l in 0..=r2 {
                let tail = go(rest, r1 - k, r2 - l);
                if tail.is_zero() {
                    continue;
                }
                let term = num_traits::pow(rat(c[0]), k as usize)
                    * num_traits::pow(rat(c[1]), l as usize)
                    / Rational::from_integer(factorial(k) * factorial(l) * (k + l + 1));
                total += term * tail;
            }
        }
        total
    }
    go(columns, v.0, v.1) * Rational::from_integer(factorial(v.0) * factorial(v.1))
}

/// All `beta_v` with `|v| <= max_order` for one matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    max_order: u32,
    values: BTreeMap<(u32, u32), Rational>,
}

impl MomentTable {
    /// Table up to order `n - 2`, the most the polynomial part uses.
    pub fn for_matrix(m: &ColumnMatrix) -> Self {
        Self::new(m.columns(), m.len().saturating_sub(2) as u32)
    }

    pub fn new(columns: &[Column], max_order: u32) -> Self {
        let mut values = BTreeMap::new();
        for total in 0..=max_order {
            for v1 in 0..=total {
                let v = (v1, total - v1);
                values.insert(v, moment(columns, v));
            }
        }
        Self { max_order, values }
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    /// Panics when `|v|` exceeds the table's order.
    pub fn get(&self, v: (u32, u32)) -> &Rational {
        &self.values[&v]
    }
}
