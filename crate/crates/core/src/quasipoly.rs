//! The closed-form quasi-polynomial `t(b|M)` for 1-prime matrices, and the
//! small closed forms for one-row, 2×3 and parallel-column 2×3 systems.
//!
//! On chamber `k`,
//!
//! ```text
//! t(b|M) = p_k(b) + sum_{i <= k < j, Y_ij >= 2} sigma_{t_ij(b)}(C_ij; Y_ij)
//! ```
//!
//! where `p_k` is the polynomial part. It is built from the truncated-power
//! piece `p_0` by the recursion
//! `p_kappa = -sum_{j < kappa} sum_{|v| = kappa - j} D^v p_j * beta_v / v!`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{
    as_integer, factorial, frac_int, mod_inverse, mod_inverse_or_zero, rat, ratio, BivarPoly,
    Rational,
};
use crate::dedekind::{reduce_pair, residue_table, PairReduction, ResidueTable};
use crate::error::{Error, Result};
use crate::lattice::{det, Chamber, ColumnMatrix, LatticePoint};
use crate::moments::MomentTable;
use crate::truncated_power::truncated_power_piece;

/// The homogeneous components `p_0, ..., p_{n-2}` of the polynomial part on
/// chamber `k`; `p_kappa` has degree `n - 2 - kappa`.
pub fn polynomial_components(m: &ColumnMatrix, k: usize) -> Result<Vec<BivarPoly>> {
    polynomial_components_with(m, k, &MomentTable::for_matrix(m))
}

fn polynomial_components_with(
    m: &ColumnMatrix,
    k: usize,
    moments: &MomentTable,
) -> Result<Vec<BivarPoly>> {
    let top = m.len() as u32 - 2;
    let mut parts = vec![truncated_power_piece(m, k)?];
    for kappa in 1..=top {
        let mut acc = BivarPoly::zero();
        for (j, pj) in parts.iter().enumerate() {
            let order = kappa - j as u32;
            for v1 in 0..=order {
                let v = (v1, order - v1);
                let weight = moments.get(v)
                    / Rational::from_integer(factorial(v.0) * factorial(v.1));
                acc = &acc + &pj.diff(v).scale(&weight);
            }
        }
        parts.push(-&acc);
    }
    Ok(parts)
}

/// `p_{e,Omega_k}`: the full polynomial part on chamber `k`.
pub fn polynomial_part(m: &ColumnMatrix, k: usize) -> Result<BivarPoly> {
    Ok(polynomial_components(m, k)?
        .iter()
        .fold(BivarPoly::zero(), |acc, p| &acc + p))
}

/// One pair's periodic correction, ready for table lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTerm {
    pub reduction: PairReduction,
    pub table: ResidueTable,
}

impl PeriodicTerm {
    pub fn value(&self, b: LatticePoint) -> &Rational {
        self.table.lookup(self.reduction.residue(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberFormula {
    pub chamber: Chamber,
    pub polynomial: BivarPoly,
    pub periodic: Vec<PeriodicTerm>,
}

impl ChamberFormula {
    /// The formula's value at `b`, whether or not `b` lies in the chamber.
    pub fn evaluate(&self, b: LatticePoint) -> Rational {
        let mut v = self.polynomial.eval(&rat(b[0]), &rat(b[1]));
        for term in &self.periodic {
            v += term.value(b);
        }
        v
    }
}

/// `t(·|M)` as one formula per chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub matrix: ColumnMatrix,
    pub chambers: Vec<ChamberFormula>,
}

/// Builds the formula for a 1-prime matrix with pairwise non-parallel columns.
pub fn build_formula(m: &ColumnMatrix) -> Result<QuasiPolynomial> {
    if m.has_parallel_columns() {
        return Err(Error::ParallelColumns);
    }
    if !m.is_one_prime() {
        return Err(Error::NotOnePrime(
            "some column triple has minors with a common factor".into(),
        ));
    }
    let n = m.len();
    let pairs: Vec<((usize, usize), PeriodicTerm)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m.det(i, j) >= 2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| {
            let reduction = reduce_pair(m, i, j)?;
            let table = residue_table(&reduction)?;
            Ok(((i, j), PeriodicTerm { reduction, table }))
        })
        .collect::<Result<_>>()?;

    let moments = MomentTable::for_matrix(m);
    let chambers = m
        .chambers()?
        .into_par_iter()
        .map(|chamber| {
            let k = chamber.index;
            let polynomial = polynomial_components_with(m, k, &moments)?
                .iter()
                .fold(BivarPoly::zero(), |acc, p| &acc + p);
            let periodic = pairs
                .iter()
                .filter(|((i, j), _)| *i <= k && k < *j)
                .map(|(_, t)| t.clone())
                .collect();
            Ok(ChamberFormula { chamber, polynomial, periodic })
        })
        .collect::<Result<_>>()?;
    Ok(QuasiPolynomial { matrix: m.clone(), chambers })
}

/// The formula of chamber `k` at `b`, with no cone or chamber check.
pub fn evaluate_in_chamber(q: &QuasiPolynomial, k: usize, b: LatticePoint) -> Result<Rational> {
    q.chambers
        .get(k)
        .map(|c| c.evaluate(b))
        .ok_or_else(|| Error::IndexOutOfRange(format!("chamber {k}")))
}

/// `t(b|M)` from the formula: 0 outside the cone, otherwise the formula of the
/// chamber whose closure holds `b`.
pub fn evaluate_count(q: &QuasiPolynomial, b: LatticePoint) -> Result<BigUint> {
    let Some(k) = q.matrix.chamber_of(b).resolve(q.chambers.len()) else {
        return Ok(BigUint::zero());
    };
    let v = q.chambers[k].evaluate(b);
    as_integer(&v)
        .and_then(|i| i.to_biguint())
        .ok_or_else(|| Error::NonIntegerResult(format!("{v} at {b:?}")))
}

/// `n/(ab) - {b^-1 n / a} - {a^-1 n / b} + 1`, for coprime `a, b >= 1`.
fn two_term_closed_form(a: i64, b: i64, n: i64) -> Result<Rational> {
    let binv = mod_inverse_or_zero(b, a)?;
    let ainv = mod_inverse_or_zero(a, b)?;
    let n128 = n as i128;
    let first = ((binv as i128 * n128).rem_euclid(a as i128)) as i64;
    let second = ((ainv as i128 * n128).rem_euclid(b as i128)) as i64;
    Ok(Rational::new(BigInt::from(n), BigInt::from(a) * BigInt::from(b))
        - frac_int(first, a)
        - frac_int(second, b)
        + rat(1))
}

fn to_count(v: Rational, what: &str) -> Result<u64> {
    as_integer(&v)
        .and_then(|i| i.to_u64())
        .ok_or_else(|| Error::NonIntegerResult(format!("{v} from {what}")))
}

/// Number of `(x, y) >= 0` with `a x + b y = n`.
pub fn popoviciu_pair(a: i64, b: i64, n: i64) -> Result<u64> {
    if a < 1 || b < 1 {
        return Err(Error::PreconditionFailed(format!("need a, b >= 1, got ({a}, {b})")));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, n: b });
    }
    if n < 0 {
        return Ok(0);
    }
    to_count(two_term_closed_form(a, b, n)?, "the two-term closed form")
}

/// `t(b|M)` for a 1-prime 2×3 matrix by the fractional-part closed form.
///
/// On the closure of chamber 0, with `D = det(c_0, b)`,
/// `t = D/(Y01 Y02) - {m_01/Y01} - {m_02/Y02} + 1`; on chamber 1 the same with
/// `D' = det(b, c_2)`, `Y12`, `Y02`. For pair `(i, j)` with third column `h`,
/// `m_ij = (f Y_ih + g Y_jh)^-1 (f det(c_i, b) + g det(c_j, b)) mod Y_ij`, and
/// `(f, g) = (1, 0)` whenever `Y_ih` is already a unit mod `Y_ij`.
pub fn popoviciu_2x3(m: &ColumnMatrix, b: LatticePoint) -> Result<u64> {
    if m.len() != 3 {
        return Err(Error::PreconditionFailed(format!("need 3 columns, got {}", m.len())));
    }
    if m.has_parallel_columns() {
        return Err(Error::ParallelColumns);
    }
    if !m.is_one_prime() {
        return Err(Error::NotOnePrime("minors of the 2x3 matrix share a factor".into()));
    }
    let Some(k) = m.chamber_of(b).resolve(2) else { return Ok(0) };
    let c = m.columns();
    let (pairs, form, denom) = if k == 0 {
        ([(0, 1, 2), (0, 2, 1)], det(c[0], b), m.det(0, 1) * m.det(0, 2))
    } else {
        ([(1, 2, 0), (0, 2, 1)], det(b, c[2]), m.det(1, 2) * m.det(0, 2))
    };
    let mut v = ratio(form, denom) + rat(1);
    for (i, j, h) in pairs {
        let y = m.det(i, j);
        if y == 1 {
            continue;
        }
        let (yih, yjh) = (m.det(i, h), m.det(j, h));
        let (f, g) = (0..=y)
            .flat_map(|g| (0..y).map(move |f| (f, g)))
            .find(|&(f, g)| (f * yih + g * yjh).gcd(&y) == 1)
            .ok_or_else(|| Error::NotOnePrime(format!("pair ({i}, {j}) has no unit combination")))?;
        let unit = mod_inverse((f * yih + g * yjh).rem_euclid(y), y)?;
        let arg = f as i128 * det(c[i], b) as i128 + g as i128 * det(c[j], b) as i128;
        let mij = (unit as i128 * arg).rem_euclid(y as i128) as i64;
        v -= frac_int(mij, y);
    }
    to_count(v, "the 2x3 closed form")
}

/// `t(b|M)` for a 2×3 matrix with columns `k d`, `l d` and `c`, where `d` is
/// primitive, `gcd(k, l) = 1` and `|det(d, c)| = 1`.
///
/// Writing `b = alpha d + beta c`, the count is 0 unless `beta >= 0`, and then
/// `alpha/(kl) - {l^-1 alpha / k} - {k^-1 alpha / l} + 1` with
/// `alpha = det(b, c)/det(d, c)`.
pub fn popoviciu_parallel(m: &ColumnMatrix, b: LatticePoint) -> Result<u64> {
    if m.len() != 3 {
        return Err(Error::PreconditionFailed(format!("need 3 columns, got {}", m.len())));
    }
    let (p, q, c) = match (m.det(0, 1), m.det(1, 2)) {
        (0, d) if d != 0 => (m.column(0), m.column(1), m.column(2)),
        (d, 0) if d != 0 => (m.column(1), m.column(2), m.column(0)),
        _ => {
            return Err(Error::PreconditionFailed(
                "need exactly one pair of parallel columns".into(),
            ))
        }
    };
    let gp = p[0].gcd(&p[1]);
    let d = [p[0] / gp, p[1] / gp];
    let (k, l) = (gp, q[0].gcd(&q[1]));
    if k.gcd(&l) != 1 {
        return Err(Error::PreconditionFailed(format!("scales {k} and {l} are not coprime")));
    }
    let s = det(d, c);
    if s.abs() != 1 {
        return Err(Error::PreconditionFailed(format!(
            "det of the base direction and the third column is {s}, not +-1"
        )));
    }
    let alpha = det(b, c) * s;
    let beta = det(d, b) * s;
    if alpha < 0 || beta < 0 {
        return Ok(0);
    }
    to_count(two_term_closed_form(k, l, alpha)?, "the parallel-column closed form")
}

fn linear_text(a: [i64; 2], shift: i64) -> String {
    let mut parts = Vec::new();
    for (coef, var) in [(a[0], "n1"), (a[1], "n2")] {
        match coef {
            0 => {}
            1 => parts.push(var.to_string()),
            _ => parts.push(format!("{coef}*{var}")),
        }
    }
    if shift != 0 || parts.is_empty() {
        parts.push(shift.to_string());
    }
    parts.join(" + ")
}

/// One periodic term in readable form.
///
/// A single residue `c` uses `sigma_{m+c}({c}; Y) = -{c^-1 m / Y} + 1/2 - 1/(2Y)`;
/// modulus 2 with opposite entries prints as a sign `(-1)^L`; anything else
/// prints the residue table.
pub fn render_periodic(term: &PeriodicTerm) -> String {
    let red = &term.reduction;
    let y = red.modulus;
    let values = &term.table.values;
    if let [c] = red.residues[..] {
        let cinv = mod_inverse(c, y).expect("residues are units");
        let a = red.linear_form.map(|v| ((cinv as i128 * v as i128).rem_euclid(y as i128)) as i64);
        let constant = ratio(1, 2) - ratio(1, 2 * y);
        return format!("-{{({})/{y}}} + {constant}", linear_text(a, 0));
    }
    if y == 2 && values[1] == -values[0].clone() {
        return format!("(-1)^({})*{}", linear_text(red.linear_form, 0), values[0]);
    }
    let table: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!(
        "[{}][({}) mod {y}]",
        table.join(", "),
        linear_text(red.linear_form, 0)
    )
}

/// The whole formula, one chamber per line.
pub fn render_text(q: &QuasiPolynomial) -> String {
    let mut out = String::new();
    for cf in &q.chambers {
        let ch = &cf.chamber;
        let mut line = format!(
            "chamber {} between {:?} and {:?}: t(n1, n2) = {}",
            ch.index,
            ch.lower_ray,
            ch.upper_ray,
            cf.polynomial.render(("n1", "n2"))
        );
        for term in &cf.periodic {
            let (i, j) = term.reduction.pair;
            line.push_str(&format!(" + [pair ({i}, {j}), modulus {}: {}]", term.reduction.modulus, render_periodic(term)));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}
