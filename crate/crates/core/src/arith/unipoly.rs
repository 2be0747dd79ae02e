use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[i]` is the coefficient of `x^i`; the leading coefficient is
/// nonzero, so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Polynomial long division: `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let d_deg = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let Some(self_deg) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if self_deg < d_deg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); self_deg - d_deg + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d_deg] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(d_deg);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Inverse of `self` modulo `m`: the unique `r` with `deg r < deg m` and
    /// `r * self = 1 (mod m)`.
    ///
    /// Fails with [`Error::NotInvertible`] when `gcd(self, m) != 1`.
    pub fn invert_mod(&self, m: &Self) -> Result<Self> {
        if m.degree().unwrap_or(0) == 0 {
            return Err(Error::NotInvertible);
        }
        // Invariant: s_i * self = r_i (mod m).
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r2) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.degree() != Some(0) {
            return Err(Error::NotInvertible);
        }
        let inv_lead = r0.coeffs[0].recip();
        Ok(s0.scale(&inv_lead).rem(m))
    }
}

/// Free-function form of [`UniPoly::invert_mod`].
pub fn poly_invert_mod(p: &UniPoly, m: &UniPoly) -> Result<UniPoly> {
    p.invert_mod(m)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn invert_worked_example() {
        // (x - 2)(x + 3) = x^2 + x - 6 = -7 mod (x^2 + x + 1), so the inverse is -(x + 3)/7
        let p = UniPoly::from_i64(&[-2, 1]);
        let m = UniPoly::from_i64(&[1, 1, 1]);
        let inv = poly_invert_mod(&p, &m).unwrap();
        assert_eq!(inv, UniPoly::from_coeffs(vec![ratio(-3, 7), ratio(-1, 7)]));
    }

    #[test]
    fn invert_constant_is_reciprocal() {
        let m = UniPoly::from_i64(&[1, 1, 1, 1]);
        assert_eq!(poly_invert_mod(&UniPoly::one(), &m).unwrap(), UniPoly::one());
        let half = UniPoly::constant(rat(2));
        assert_eq!(
            poly_invert_mod(&half, &m).unwrap(),
            UniPoly::constant(ratio(1, 2))
        );
    }

    #[test]
    fn invert_fails_on_common_factor() {
        let m = UniPoly::from_i64(&[1, 1]);
        let p = UniPoly::from_i64(&[1, 1]);
        assert_eq!(poly_invert_mod(&p, &m), Err(Error::NotInvertible));
        // x^2 - 1 shares x + 1 with x^2 + 2x + 1
        let p = UniPoly::from_i64(&[-1, 0, 1]);
        let m = UniPoly::from_i64(&[1, 2, 1]);
        assert_eq!(poly_invert_mod(&p, &m), Err(Error::NotInvertible));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = UniPoly::from_i64(&[5, -3, 0, 2, 7]);
        let d = UniPoly::from_i64(&[1, 0, 3]);
        let (q, r) = a.div_rem(&d);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &d) + &r, a);
    }

    #[test]
    fn eval_horner() {
        let p = UniPoly::from_i64(&[1, -2, 3]);
        assert_eq!(p.eval(&rat(2)), rat(9));
        assert_eq!(UniPoly::zero().eval(&rat(5)), rat(0));
    }

    fn small_poly(max_len: usize) -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-9i64..=9, 1..=max_len).prop_map(|c| UniPoly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn inverse_times_p_is_one(p in small_poly(5), m in small_poly(6)) {
            let Some(dm) = m.degree() else { return Ok(()); };
            prop_assume!(dm >= 1);
            let p = p.rem(&m);
            match poly_invert_mod(&p, &m) {
                Ok(inv) => {
                    prop_assert!(inv.degree().map_or(true, |d| d < dm));
                    prop_assert_eq!((&inv * &p).rem(&m), UniPoly::one());
                }
                Err(e) => prop_assert_eq!(e, Error::NotInvertible),
            }
        }
    }
}
