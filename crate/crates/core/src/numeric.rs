//! High-precision floating point for cross-checking the exact paths.
//!
//! Nothing in the counting pipeline depends on this module; it only backs
//! [`crate::dedekind::fourier_dedekind_float`] and test oracles that sum over
//! roots of unity directly.

use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::arith::Rational;

/// Working precision in bits (about 77 significant decimal digits).
pub const PRECISION_BITS: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

/// Holds the constant cache that astro-float needs for `pi` and trig.
pub struct Context {
    consts: Consts,
    pi: BigFloat,
}

impl Context {
    pub fn new() -> Self {
        let mut consts = Consts::new().expect("astro-float constant cache");
        let pi = consts.pi(PRECISION_BITS, RM);
        Self { consts, pi }
    }

    pub fn int(&self, v: i64) -> HpReal {
        HpReal(BigFloat::from_i64(v, PRECISION_BITS))
    }

    pub fn rational(&mut self, r: &Rational) -> HpReal {
        let num = self.parse_int(&r.numer().to_string());
        let den = self.parse_int(&r.denom().to_string());
        HpReal(num.div(&den, PRECISION_BITS, RM))
    }

    fn parse_int(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, PRECISION_BITS, RM, &mut self.consts)
    }

    /// `exp(2 pi i num / den)`.
    pub fn root_of_unity(&mut self, num: i64, den: u64) -> Complex {
        let r = num.rem_euclid(den as i64);
        let angle = self
            .pi
            .mul(&BigFloat::from_i64(2 * r, PRECISION_BITS), PRECISION_BITS, RM)
            .div(&BigFloat::from_u64(den, PRECISION_BITS), PRECISION_BITS, RM);
        Complex {
            re: HpReal(angle.cos(PRECISION_BITS, RM, &mut self.consts)),
            im: HpReal(angle.sin(PRECISION_BITS, RM, &mut self.consts)),
        }
    }
}

impl Default for Context {
    fn default() -> Self {
        Self::new()
    }
}

/// A real number at [`PRECISION_BITS`] bits.
#[derive(Clone, Debug)]
pub struct HpReal(BigFloat);

impl HpReal {
    pub fn add(&self, o: &Self) -> Self {
        Self(self.0.add(&o.0, PRECISION_BITS, RM))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self(self.0.sub(&o.0, PRECISION_BITS, RM))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self(self.0.mul(&o.0, PRECISION_BITS, RM))
    }

    pub fn div(&self, o: &Self) -> Self {
        Self(self.0.div(&o.0, PRECISION_BITS, RM))
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        self.0.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: HpReal,
    pub im: HpReal,
}

impl Complex {
    pub fn real(re: HpReal, ctx: &Context) -> Self {
        Self { re, im: ctx.int(0) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let norm = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        Self {
            re: self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&norm),
            im: self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&norm),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn roots_of_unity() {
        let mut ctx = Context::new();
        let w = ctx.root_of_unity(1, 4);
        assert!(w.re.to_f64().abs() < 1e-60);
        assert!((w.im.to_f64() - 1.0).abs() < 1e-15);
        let w = ctx.root_of_unity(-1, 2);
        assert!((w.re.to_f64() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn rationals_convert() {
        let mut ctx = Context::new();
        let third = ctx.rational(&ratio(1, 3));
        let back = third.mul(&ctx.int(3)).sub(&ctx.int(1));
        assert!(back.abs().to_f64() < 1e-70);
        assert_eq!(ctx.rational(&ratio(-7, 8)).to_f64(), -0.875);
    }
}
