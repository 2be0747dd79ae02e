//! Fourier-Dedekind sums and the reduction of pair character sums to them.
//!
//! `sigma_t(C; n) = 1/n * sum_{lambda^n = 1, lambda != 1} lambda^t / prod_{c in C} (lambda^c - 1)`.
//!
//! The exact path never leaves the rationals. It works in `Q[x] / Psi_n`
//! with `Psi_n = 1 + x + ... + x^(n-1)`, whose roots are exactly the
//! nontrivial n-th roots of unity. Each `x^c - 1` is a unit there when
//! `gcd(c, n) = 1`.
//!
//! For a 1-prime matrix, the sum over the characters that are trivial on the
//! columns `c_i, c_j` (but not on everything) collapses to one
//! `sigma_{t(b)}(C_ij; Y_ij)` whose argument is a linear form in `b`. That is
//! [`reduce_pair`]; [`residue_table`] tabulates the sum over all residues of
//! the form so evaluation is a lookup.

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{mod_inverse, rat, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::lattice::{ColumnMatrix, LatticePoint};
use crate::numeric::{Complex, Context, HpReal};

/// Names one sum `sigma_t(C; n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindSumSpec {
    pub t: i64,
    pub c: Vec<i64>,
    pub n: u64,
}

impl DedekindSumSpec {
    pub fn new(t: i64, c: Vec<i64>, n: u64) -> Self {
        Self { t, c, n }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::PreconditionFailed("modulus must be at least 1".into()));
        }
        let n = self.n as i64;
        match self.c.iter().find(|c| c.gcd(&n) != 1) {
            Some(&a) => Err(Error::NotCoprime { a, n }),
            None => Ok(()),
        }
    }
}

/// `1 + x + ... + x^(n-1)`.
pub fn cyclotomic_quotient(n: u64) -> UniPoly {
    UniPoly::from_coeffs(vec![rat(1); n as usize])
}

/// `x^e mod Psi_n`, using `x^n = 1` first.
fn power_mod(e: i64, n: u64, psi: &UniPoly) -> UniPoly {
    UniPoly::monomial(rat(1), e.rem_euclid(n as i64) as usize).rem(psi)
}

/// `prod_{c in C} (x^c - 1)^(-1)` in `Q[x]/Psi_n`, of degree at most `n - 2`.
fn inverse_denominator(c: &[i64], n: u64, psi: &UniPoly) -> Result<UniPoly> {
    let mut q = UniPoly::one();
    for &ci in c {
        let d = &power_mod(ci, n, psi) - &UniPoly::one();
        let inv = d.invert_mod(psi).map_err(|_| Error::NotCoprime { a: ci, n: n as i64 })?;
        q = (&q * &inv).rem(psi);
    }
    Ok(q)
}

/// Exact `sigma_t(C; n)`.
///
/// With `P = x^t * prod (x^c - 1)^(-1)` reduced mod `Psi_n` to degree at most
/// `n - 2`, summing `P` over all n-th roots of unity gives `n * P_0`; removing
/// the `lambda = 1` term leaves `sigma = P_0 - P(1)/n`.
pub fn fourier_dedekind_exact(spec: &DedekindSumSpec) -> Result<Rational> {
    spec.validate()?;
    let n = spec.n;
    if n == 1 {
        return Ok(Rational::zero());
    }
    let psi = cyclotomic_quotient(n);
    let q = inverse_denominator(&spec.c, n, &psi)?;
    let p = (&power_mod(spec.t, n, &psi) * &q).rem(&psi);
    Ok(p.coeff(0) - p.eval(&rat(1)) / rat(n as i64))
}

/// `sigma_t(C; n)` by direct summation over `lambda = exp(2 pi i k / n)`,
/// at 256 bits.
pub fn fourier_dedekind_float(spec: &DedekindSumSpec) -> Result<HpReal> {
    let mut ctx = Context::new();
    fourier_dedekind_float_with(&mut ctx, spec)
}

/// [`fourier_dedekind_float`] reusing a precision context.
pub fn fourier_dedekind_float_with(ctx: &mut Context, spec: &DedekindSumSpec) -> Result<HpReal> {
    spec.validate()?;
    let n = spec.n;
    let one = Complex::real(ctx.int(1), ctx);
    let mut total = Complex::real(ctx.int(0), ctx);
    for k in 1..n as i64 {
        let num = ctx.root_of_unity(spec.t * k, n);
        let mut den = one.clone();
        for &c in &spec.c {
            den = den.mul(&ctx.root_of_unity(c * k, n).sub(&one));
        }
        total = total.add(&num.div(&den));
    }
    Ok(total.re.div(&ctx.int(n as i64)))
}

/// Reduction of one pair `(i, j)` of a 1-prime matrix to a 1-D sum.
///
/// For `b = (b1, b2)` the pair contributes `sigma_{t(b)}(residues; modulus)`
/// with `t(b) = a1*b1 + a2*b2 + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReduction {
    /// Sorted column indices, `i < j`.
    pub pair: (usize, usize),
    /// The third column used to parametrize the characters.
    pub pivot: usize,
    pub f: i64,
    pub g: i64,
    /// `Y_ij = det(c_i, c_j)`.
    pub modulus: i64,
    /// The multiset `C_ij`, one entry per column outside the pair, in `[0, modulus)`.
    pub residues: Vec<i64>,
    /// `(a1, a2)` in `[0, modulus)`.
    pub linear_form: [i64; 2],
    /// Sum of `residues`.
    pub shift: i64,
}

impl PairReduction {
    /// `a1*b1 + a2*b2 mod modulus`.
    pub fn residue(&self, b: LatticePoint) -> usize {
        let y = self.modulus as i128;
        let v = self.linear_form[0] as i128 * b[0] as i128 + self.linear_form[1] as i128 * b[1] as i128;
        v.rem_euclid(y) as usize
    }

    /// The full argument `t(b)`, reduced mod the modulus.
    pub fn argument(&self, b: LatticePoint) -> i64 {
        (self.residue(b) as i64 + self.shift).rem_euclid(self.modulus)
    }

    pub fn spec_at(&self, b: LatticePoint) -> DedekindSumSpec {
        DedekindSumSpec::new(self.argument(b), self.residues.clone(), self.modulus as u64)
    }
}

fn mulmod(a: i64, b: i64, m: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(m as i128)) as i64
}

/// [`reduce_pair_with_pivot`] with the smallest pivot index outside the pair.
pub fn reduce_pair(m: &ColumnMatrix, i: usize, j: usize) -> Result<PairReduction> {
    let pivot = (0..m.len())
        .find(|&h| h != i && h != j)
        .ok_or_else(|| Error::NotOnePrime("a pair reduction needs a third column".into()))?;
    reduce_pair_with_pivot(m, i, j, pivot)
}

/// Reduces the pair `(i, j)` using column `pivot` to index the characters.
///
/// Searches small `(f, g)` by increasing `|f| + |g|` until
/// `gcd(f*Y_i,pivot + g*Y_j,pivot, Y_ij) = 1`.
pub fn reduce_pair_with_pivot(
    m: &ColumnMatrix,
    i: usize,
    j: usize,
    pivot: usize,
) -> Result<PairReduction> {
    let n = m.len();
    if i >= j || j >= n || pivot >= n || pivot == i || pivot == j {
        return Err(Error::IndexOutOfRange(format!(
            "pair ({i}, {j}) with pivot {pivot} in a matrix with {n} columns"
        )));
    }
    let y = m.det(i, j);
    if y <= 0 {
        return Err(Error::ParallelColumns);
    }
    if y == 1 {
        return Err(Error::TrivialModulus(i, j));
    }
    let (yi, yj) = (m.det(i, pivot), m.det(j, pivot));
    if yi.gcd(&yj).gcd(&y) != 1 {
        return Err(Error::NotOnePrime(format!(
            "gcd of minors over columns {i}, {j}, {pivot} exceeds 1"
        )));
    }
    let (f, g) = search_multipliers(yi, yj, y).ok_or_else(|| {
        Error::NotOnePrime(format!("no unit combination for pair ({i}, {j})"))
    })?;
    let inv = mod_inverse(
        ((f as i128 * yi as i128 + g as i128 * yj as i128).rem_euclid(y as i128)) as i64,
        y,
    )?;
    let (ci, cj) = (m.column(i), m.column(j));
    let fy = (f * ci[1] + g * cj[1]).rem_euclid(y);
    let fx = (f * ci[0] + g * cj[0]).rem_euclid(y);

    let mut residues = Vec::with_capacity(n - 2);
    for h in (0..n).filter(|&h| h != i && h != j) {
        let ch = m.column(h);
        let raw = (-(fy as i128) * ch[0] as i128 + fx as i128 * ch[1] as i128).rem_euclid(y as i128);
        let r = mulmod(inv, raw as i64, y);
        if r.gcd(&y) != 1 {
            return Err(Error::NotOnePrime(format!(
                "residue {r} of column {h} is not a unit mod {y}"
            )));
        }
        residues.push(r);
    }
    let shift = residues.iter().sum();
    Ok(PairReduction {
        pair: (i, j),
        pivot,
        f,
        g,
        modulus: y,
        residues,
        linear_form: [mulmod(inv, -fy, y), mulmod(inv, fx, y)],
        shift,
    })
}

fn search_multipliers(a: i64, b: i64, y: i64) -> Option<(i64, i64)> {
    let unit = |f: i64, g: i64| (f as i128 * a as i128 + g as i128 * b as i128).rem_euclid(y as i128) as i64;
    for s in 1..=2 * y + 2 {
        for f in (-s..=s).rev() {
            let rest = s - f.abs();
            for g in [rest, -rest] {
                if unit(f, g).gcd(&y) == 1 {
                    return Some((f, g));
                }
                if rest == 0 {
                    break;
                }
            }
        }
    }
    None
}

/// `values[r] = sigma_{r + shift}(residues; modulus)` for every residue `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueTable {
    pub modulus: i64,
    pub values: Vec<Rational>,
}

impl ResidueTable {
    pub fn lookup(&self, r: usize) -> &Rational {
        &self.values[r]
    }
}

/// Tabulates all `modulus` values of the pair's sum.
///
/// With `q = prod (x^c - 1)^(-1) mod Psi_n` of degree at most `n - 2`,
/// `sum_{lambda != 1} lambda^(t+k) = n [t + k = 0 mod n] - 1` gives
/// `sigma_t = q_{-t mod n} - q(1)/n`, so one inversion serves every entry.
pub fn residue_table(red: &PairReduction) -> Result<ResidueTable> {
    let n = red.modulus as u64;
    if n < 2 {
        return Ok(ResidueTable { modulus: red.modulus, values: Vec::new() });
    }
    DedekindSumSpec::new(0, red.residues.clone(), n).validate()?;
    let psi = cyclotomic_quotient(n);
    let q = inverse_denominator(&red.residues, n, &psi)?;
    let mean = q.eval(&rat(1)) / rat(n as i64);
    let values = (0..red.modulus)
        .map(|r| {
            let t = r + red.shift;
            q.coeff((-t).rem_euclid(red.modulus) as usize) - &mean
        })
        .collect();
    Ok(ResidueTable { modulus: red.modulus, values })
}
