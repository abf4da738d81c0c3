//! Sparse Laurent polynomials over the fixed variable set `{t, q, Y0, Y1, Z}`.
//!
//! * coefficients are arbitrary-precision integers ([`BigInt`]);
//! * exponents are signed, so the ring contains `q^-1`, `Z^-3`, …;
//! * terms are kept in a canonical order: ascending by the sum of the
//!   absolute values of the exponents, ties broken lexicographically on the
//!   exponent vector `(t, q, Y0, Y1, Z)`.  Serialisation iterates that
//!   order, so printing is deterministic and `parse ∘ print` is bit-exact.
//!
//! Division is only provided in exact form: [`LaurentPoly::exact_div`]
//! fails with [`PolyError::InexactDivision`] unless the divisor divides the
//! dividend on the nose.  All the q-binomial machinery
//! ([`gauss_multinomial`], [`q_pochhammer`]) is built on exact division, so
//! a bug anywhere upstream surfaces as a hard error instead of a silently
//! wrong coefficient.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Number of variables in the ring.
pub const VAR_COUNT: usize = 5;

/// The variables of the polynomial ring, in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Var {
    T = 0,
    Q = 1,
    Y0 = 2,
    Y1 = 3,
    Z = 4,
}

/// All variables in canonical order.
pub const ALL_VARS: [Var; VAR_COUNT] = [Var::T, Var::Q, Var::Y0, Var::Y1, Var::Z];

impl Var {
    /// Printed name of the variable.
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Q => "q",
            Var::Y0 => "Y0",
            Var::Y1 => "Y1",
            Var::Z => "Z",
        }
    }

    fn from_name(s: &str) -> Option<Var> {
        match s {
            "t" => Some(Var::T),
            "q" => Some(Var::Q),
            "Y0" => Some(Var::Y0),
            "Y1" => Some(Var::Y1),
            "Z" => Some(Var::Z),
            _ => None,
        }
    }
}

/// Exponent vector of a single monomial, indexed by [`Var`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Default)]
pub struct Exponents(pub [i32; VAR_COUNT]);

impl Exponents {
    /// The all-zero exponent vector (the constant monomial).
    pub const ZERO: Exponents = Exponents([0; VAR_COUNT]);

    /// Exponent vector with a single nonzero entry.
    pub fn single(var: Var, exp: i32) -> Exponents {
        let mut e = [0; VAR_COUNT];
        e[var as usize] = exp;
        Exponents(e)
    }

    /// Exponent of one variable.
    pub fn exp(&self, var: Var) -> i32 {
        self.0[var as usize]
    }

    /// Grading used by the canonical term order: sum of |exponent|.
    fn grade(&self) -> i64 {
        self.0.iter().map(|&e| (e as i64).abs()).sum()
    }

    fn checked_add(&self, other: &Exponents) -> Exponents {
        let mut e = [0; VAR_COUNT];
        for i in 0..VAR_COUNT {
            e[i] = self.0[i].checked_add(other.0[i]).expect("exponent overflow");
        }
        Exponents(e)
    }

    fn checked_sub(&self, other: &Exponents) -> Exponents {
        let mut e = [0; VAR_COUNT];
        for i in 0..VAR_COUNT {
            e[i] = self.0[i].checked_sub(other.0[i]).expect("exponent overflow");
        }
        Exponents(e)
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Errors produced by the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    /// An exponent rescaling would have produced a fractional exponent.
    /// Identities that would need `q -> q^(1/2)` must be restated in `q^2`.
    #[error("halving exponents of {var} hits an odd exponent {exp}")]
    HalfIntegerExponent { var: &'static str, exp: i32 },
    /// `exact_div` was asked for a quotient that does not exist in the ring.
    #[error("inexact polynomial division")]
    InexactDivision,
    /// An inverse was requested for an element that is not invertible in
    /// the truncated regime (constant term not a unit, or no truncation cap
    /// to make the geometric expansion finite).
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    /// Substituting a non-unit coefficient into a negative exponent, or
    /// `0` into a negative exponent.
    #[error("substitution undefined: {0}")]
    BadSubstitution(String),
    /// Parse failure for the canonical text form.
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Optional per-variable exponent caps for truncated (`q`-adic / `t`-adic)
/// coefficient arithmetic.  `None` means the variable is kept exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TruncCaps {
    pub q_max: Option<i32>,
    pub t_max: Option<i32>,
}

impl TruncCaps {
    /// No truncation: fully exact arithmetic.
    pub const EXACT: TruncCaps = TruncCaps { q_max: None, t_max: None };

    /// Truncate powers of `q` above `q_max`.
    pub fn q_adic(q_max: i32) -> TruncCaps {
        TruncCaps { q_max: Some(q_max), t_max: None }
    }

    /// Truncate powers of `q` above `q_max` and powers of `t` above `t_max`.
    pub fn qt_adic(q_max: i32, t_max: i32) -> TruncCaps {
        TruncCaps { q_max: Some(q_max), t_max: Some(t_max) }
    }

    fn keeps(&self, e: &Exponents) -> bool {
        if let Some(q) = self.q_max {
            if e.exp(Var::Q) > q {
                return false;
            }
        }
        if let Some(t) = self.t_max {
            if e.exp(Var::T) > t {
                return false;
            }
        }
        true
    }

    /// Upper bound on how many times a series with positive capped
    /// valuation can be multiplied with itself before vanishing.
    fn iteration_budget(&self) -> usize {
        let q = self.q_max.unwrap_or(0).max(0) as usize;
        let t = self.t_max.unwrap_or(0).max(0) as usize;
        q + t + 2
    }
}

/// Replacement target for [`LaurentPoly::substitute`].
#[derive(Clone, Debug)]
pub enum Replacement {
    /// Substitute the variable by zero.
    Zero,
    /// Substitute the variable by `coeff * monomial(exps)`.
    Monomial { coeff: BigInt, exps: Exponents },
}

impl Replacement {
    /// Replacement by the constant one (erases the variable).
    pub fn one() -> Replacement {
        Replacement::Monomial { coeff: BigInt::one(), exps: Exponents::ZERO }
    }

    /// Replacement by a bare power of a variable, e.g. `q -> q^-1`.
    pub fn var_pow(var: Var, exp: i32) -> Replacement {
        Replacement::Monomial { coeff: BigInt::one(), exps: Exponents::single(var, exp) }
    }
}

/// A sparse Laurent polynomial with `BigInt` coefficients.
///
/// The zero polynomial is the empty term map; all stored coefficients are
/// nonzero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    /// The constant polynomial one.
    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(1)
    }

    /// A constant polynomial.
    pub fn constant(c: i64) -> LaurentPoly {
        LaurentPoly::from_big(BigInt::from(c))
    }

    /// A constant polynomial from a `BigInt`.
    pub fn from_big(c: BigInt) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(Exponents::ZERO, c);
        p
    }

    /// The polynomial consisting of a single variable.
    pub fn var(var: Var) -> LaurentPoly {
        LaurentPoly::term(1, Exponents::single(var, 1))
    }

    /// A single power of a variable.
    pub fn var_pow(var: Var, exp: i32) -> LaurentPoly {
        LaurentPoly::term(1, Exponents::single(var, exp))
    }

    /// A single term `coeff * monomial(exps)`.
    pub fn term(coeff: i64, exps: Exponents) -> LaurentPoly {
        LaurentPoly::term_big(BigInt::from(coeff), exps)
    }

    /// A single term with a `BigInt` coefficient.
    pub fn term_big(coeff: BigInt, exps: Exponents) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(exps, coeff);
        p
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the constant polynomial one.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Exponents::ZERO)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Number of (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial; zero if the monomial is absent.
    pub fn coeff(&self, exps: &Exponents) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Constant coefficient.
    pub fn constant_coeff(&self) -> BigInt {
        self.coeff(&Exponents::ZERO)
    }

    /// Iterate terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    /// Largest exponent of `var` over all terms, `None` when zero.
    pub fn max_exp(&self, var: Var) -> Option<i32> {
        self.terms.keys().map(|e| e.exp(var)).max()
    }

    /// Smallest exponent of `var` over all terms, `None` when zero.
    pub fn min_exp(&self, var: Var) -> Option<i32> {
        self.terms.keys().map(|e| e.exp(var)).min()
    }

    fn add_term(&mut self, exps: Exponents, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, a * c);
        }
        out
    }

    /// Multiply by a single monomial `coeff * exps`.
    pub fn mul_term(&self, coeff: &BigInt, exps: &Exponents) -> LaurentPoly {
        if coeff.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (e, a) in &self.terms {
            out.add_term(e.checked_add(exps), a * coeff);
        }
        out
    }

    /// `self^exp` by repeated multiplication (binary powering).
    pub fn pow(&self, exp: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut exp = exp;
        let mut acc = LaurentPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Drop all terms whose capped exponents exceed the caps.
    pub fn truncated(&self, caps: &TruncCaps) -> LaurentPoly {
        if caps.q_max.is_none() && caps.t_max.is_none() {
            return self.clone();
        }
        let mut out = LaurentPoly::zero();
        for (e, a) in &self.terms {
            if caps.keeps(e) {
                out.add_term(*e, a.clone());
            }
        }
        out
    }

    /// Substitute one variable by a replacement monomial (or zero).
    ///
    /// `q -> q^2`, `q -> q^-1`, `t -> 1`, `Z -> 0` are all expressible.
    /// Substituting a coefficient other than `±1` into a negative exponent
    /// (or zero into a negative exponent) is undefined and errors.
    pub fn substitute(&self, var: Var, rep: &Replacement) -> Result<LaurentPoly, PolyError> {
        let mut out = LaurentPoly::zero();
        for (e, a) in &self.terms {
            let k = e.exp(var);
            let mut stripped = *e;
            stripped.0[var as usize] = 0;
            match rep {
                Replacement::Zero => {
                    if k < 0 {
                        return Err(PolyError::BadSubstitution(format!(
                            "{} -> 0 with exponent {}",
                            var.name(),
                            k
                        )));
                    }
                    if k == 0 {
                        out.add_term(stripped, a.clone());
                    }
                    // k > 0: the term vanishes.
                }
                Replacement::Monomial { coeff, exps } => {
                    let scaled = scaled_exps(exps, k);
                    let new_exps = stripped.checked_add(&scaled);
                    let factor = int_pow(coeff, k)?;
                    out.add_term(new_exps, a * factor);
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables
    /// (the extracted terms have their `var` exponent zeroed).
    pub fn coeff_of_var_pow(&self, var: Var, k: i32) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            if e.exp(var) == k {
                let mut e2 = *e;
                e2.0[var as usize] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Exchange two variables in every term.
    pub fn swap_vars(&self, a: Var, b: Var) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2.0.swap(a as usize, b as usize);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Replace `var^(2k)` by `var^k` in every term.
    ///
    /// Errors with [`PolyError::HalfIntegerExponent`] if any term carries an
    /// odd exponent of `var`; callers are expected to restate such
    /// identities in the squared variable instead.
    pub fn halve_exponents(&self, var: Var) -> Result<LaurentPoly, PolyError> {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let k = e.exp(var);
            if k % 2 != 0 {
                return Err(PolyError::HalfIntegerExponent { var: var.name(), exp: k });
            }
            let mut e2 = *e;
            e2.0[var as usize] = k / 2;
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Evaluate at integer values of all five variables.
    ///
    /// Values `±1` may sit under negative exponents; zero under a negative
    /// exponent is an error.
    pub fn eval(&self, values: &[BigInt; VAR_COUNT]) -> Result<BigInt, PolyError> {
        let mut total = BigInt::zero();
        'terms: for (e, a) in &self.terms {
            let mut prod = a.clone();
            for i in 0..VAR_COUNT {
                let k = e.0[i];
                if k == 0 {
                    continue;
                }
                let v = &values[i];
                if v.is_zero() {
                    if k < 0 {
                        return Err(PolyError::BadSubstitution(format!(
                            "0^{} for {}",
                            k,
                            ALL_VARS[i].name()
                        )));
                    }
                    continue 'terms; // the whole term vanishes
                }
                prod *= int_pow(v, k)?;
            }
            total += prod;
        }
        Ok(total)
    }

    /// Exact division: returns `self / divisor` when the remainder is zero,
    /// [`PolyError::InexactDivision`] otherwise.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // Shift both operands into nonnegative exponents so that the
        // graded-lex order is a well-order and long division terminates.
        let f_shift = min_exps(self);
        let g_shift = min_exps(divisor);
        let f = self.mul_term(&BigInt::one(), &neg_exps(&f_shift));
        let g = divisor.mul_term(&BigInt::one(), &neg_exps(&g_shift));

        let (g_lead_e, g_lead_c) = g.terms.iter().next_back().map(|(e, c)| (*e, c.clone())).unwrap();
        let mut rem = f;
        let mut quot = LaurentPoly::zero();
        while let Some((re, rc)) = rem.terms.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let qe = Exponents({
                let mut d = [0; VAR_COUNT];
                for i in 0..VAR_COUNT {
                    d[i] = re.0[i] - g_lead_e.0[i];
                    if d[i] < 0 {
                        return Err(PolyError::InexactDivision);
                    }
                }
                d
            });
            let (qc, r) = div_rem(&rc, &g_lead_c);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            quot.add_term(qe, qc.clone());
            rem -= g.mul_term(&qc, &qe);
        }
        // Undo the shifts: quotient of the shifted problem times the net shift.
        let net = f_shift.checked_sub(&g_shift);
        Ok(quot.mul_term(&BigInt::one(), &net))
    }

    /// Inverse of `1 + r` (or `-1 - r`) in the truncated regime.
    ///
    /// Every non-constant term of the operand must carry a positive power
    /// of a capped variable, so that the geometric expansion
    /// `1 - r + r^2 - …` becomes stationary under the caps.  Errors with
    /// [`PolyError::NotInvertible`] otherwise.
    pub fn inverse_capped(&self, caps: &TruncCaps) -> Result<LaurentPoly, PolyError> {
        let c0 = self.constant_coeff();
        let sign = if c0.is_one() {
            1
        } else if (-&c0).is_one() {
            -1
        } else {
            return Err(PolyError::NotInvertible(format!(
                "constant term {} is not a unit",
                c0
            )));
        };
        let unit = LaurentPoly::constant(sign);
        let r = &self.scale(&BigInt::from(sign)) - &LaurentPoly::one();
        for (e, _) in r.terms() {
            let q_ok = caps.q_max.is_some() && e.exp(Var::Q) > 0;
            let t_ok = caps.t_max.is_some() && e.exp(Var::T) > 0;
            if !(q_ok || t_ok) {
                return Err(PolyError::NotInvertible(format!(
                    "term {} has no positive capped exponent",
                    term_to_string(e, &BigInt::one(), true)
                )));
            }
        }
        let mut acc = LaurentPoly::one();
        let mut pow = LaurentPoly::one();
        let mut neg = false;
        for _ in 0..caps.iteration_budget() {
            pow = (&pow * &r).truncated(caps);
            if pow.is_zero() {
                return Ok((&unit * &acc).truncated(caps));
            }
            neg = !neg;
            if neg {
                acc -= pow.clone();
            } else {
                acc += pow.clone();
            }
        }
        Err(PolyError::NotInvertible(
            "geometric expansion did not become stationary".into(),
        ))
    }

    /// Canonical text form (also produced by `Display`).
    pub fn to_canonical_string(&self) -> String {
        format!("{}", self)
    }
}

fn scaled_exps(e: &Exponents, k: i32) -> Exponents {
    let mut out = [0; VAR_COUNT];
    for i in 0..VAR_COUNT {
        out[i] = (e.0[i] as i64)
            .checked_mul(k as i64)
            .and_then(|v| i32::try_from(v).ok())
            .expect("exponent overflow");
    }
    Exponents(out)
}

/// `base^exp` for integer `exp`; negative exponents require `base = ±1`.
fn int_pow(base: &BigInt, exp: i32) -> Result<BigInt, PolyError> {
    if exp >= 0 {
        Ok(base.pow(exp as u32))
    } else if base.is_one() {
        Ok(BigInt::one())
    } else if (-base).is_one() {
        Ok(if exp % 2 == 0 { BigInt::one() } else { -BigInt::one() })
    } else {
        Err(PolyError::BadSubstitution(format!("{}^{}", base, exp)))
    }
}

fn div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

fn min_exps(p: &LaurentPoly) -> Exponents {
    let mut m = [i32::MAX; VAR_COUNT];
    for (e, _) in p.terms() {
        for i in 0..VAR_COUNT {
            m[i] = m[i].min(e.0[i]);
        }
    }
    // Only shift negative exponents up to zero; nonnegative ones stay.
    for v in m.iter_mut() {
        *v = (*v).min(0);
    }
    Exponents(m)
}

fn neg_exps(e: &Exponents) -> Exponents {
    let mut out = [0; VAR_COUNT];
    for i in 0..VAR_COUNT {
        out[i] = -e.0[i];
    }
    Exponents(out)
}

// ---------------------------------------------------------------------------
// Arithmetic operators
// ---------------------------------------------------------------------------

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.checked_add(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

// ---------------------------------------------------------------------------
// q-builders
// ---------------------------------------------------------------------------

/// Finite q-Pochhammer product `(a; base)_n = Π_{k=0}^{n-1} (1 - a * base^k)`.
///
/// `a` and `base` may be arbitrary polynomials (usually monomials such as
/// `q`, `q^2` or `-q*Z`).
pub fn q_pochhammer(a: &LaurentPoly, base: &LaurentPoly, n: usize) -> LaurentPoly {
    let mut prod = LaurentPoly::one();
    let mut ak = a.clone();
    for _ in 0..n {
        prod = &prod * &(&LaurentPoly::one() - &ak);
        ak = &ak * base;
    }
    prod
}

/// Gaussian multinomial `[n over m_1, …, m_r]` in the given base.
///
/// `parts` must sum to `n`.  Computed as `(b;b)_n / Π (b;b)_{m_i}` with
/// `b = base`; the division is exact by construction, so an arithmetic bug
/// would surface as an error (the function panics on it, since no valid
/// input can fail).
pub fn gauss_multinomial(n: usize, parts: &[usize], base: &LaurentPoly) -> LaurentPoly {
    assert_eq!(parts.iter().sum::<usize>(), n, "multinomial parts must sum to n");
    let num = q_pochhammer(base, base, n);
    let mut den = LaurentPoly::one();
    for &m in parts {
        den = &den * &q_pochhammer(base, base, m);
    }
    num.exact_div(&den)
        .expect("Gaussian multinomial division is exact")
}

/// Gaussian binomial `[n over k]` in the given base.
pub fn gauss_binomial(n: usize, k: usize, base: &LaurentPoly) -> LaurentPoly {
    assert!(k <= n, "binomial index out of range");
    gauss_multinomial(n, &[k, n - k], base)
}

// ---------------------------------------------------------------------------
// Canonical printing and parsing
// ---------------------------------------------------------------------------

fn term_to_string(e: &Exponents, coeff: &BigInt, lead: bool) -> String {
    let mag = coeff.abs();
    let mut factors: Vec<String> = Vec::new();
    if !mag.is_one() || e.is_zero() {
        factors.push(mag.to_str_radix(10));
    }
    for (i, var) in ALL_VARS.iter().enumerate() {
        let k = e.0[i];
        if k == 0 {
            continue;
        }
        if k == 1 {
            factors.push(var.name().to_string());
        } else {
            factors.push(format!("{}^{}", var.name(), k));
        }
    }
    let body = factors.join("*");
    if lead {
        if coeff.is_negative() {
            format!("-{}", body)
        } else {
            body
        }
    } else if coeff.is_negative() {
        format!(" - {}", body)
    } else {
        format!(" + {}", body)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            write!(f, "{}", term_to_string(e, c, i == 0))?;
        }
        Ok(())
    }
}

// `Debug` delegates to `Display` so test failures print readable algebra.
impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { input: s.as_bytes(), pos: 0 };
        let poly = p.parse_poly()?;
        p.skip_ws();
        if p.pos != p.input.len() {
            return Err(PolyError::Parse(format!(
                "trailing input at byte {}: {:?}",
                p.pos,
                s[p.pos..].chars().take(10).collect::<String>()
            )));
        }
        Ok(poly)
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly, PolyError> {
        let mut out = LaurentPoly::zero();
        self.skip_ws();
        let mut sign: i64 = 1;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let (exps, coeff) = self.parse_term()?;
            out.add_term(exps, coeff * BigInt::from(sign));
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => break,
            }
            self.skip_ws();
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<(Exponents, BigInt), PolyError> {
        self.skip_ws();
        let mut coeff: Option<BigInt> = None;
        let mut exps = Exponents::ZERO;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.parse_uint()?;
                    coeff = Some(match coeff {
                        None => n,
                        Some(c) => c * n,
                    });
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let var = self.parse_var()?;
                    let exp = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.parse_int()?
                    } else {
                        1
                    };
                    exps.0[var as usize] = exps.0[var as usize]
                        .checked_add(exp)
                        .ok_or_else(|| PolyError::Parse("exponent overflow".into()))?;
                }
                other => {
                    return Err(PolyError::Parse(format!(
                        "expected term at byte {}, found {:?}",
                        self.pos,
                        other.map(|b| b as char)
                    )));
                }
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                continue;
            }
            break;
        }
        Ok((exps, coeff.unwrap_or_else(BigInt::one)))
    }

    fn parse_uint(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse("expected number".into()));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        s.parse::<BigInt>()
            .map_err(|e| PolyError::Parse(format!("bad integer {:?}: {}", s, e)))
    }

    fn parse_int(&mut self) -> Result<i32, PolyError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.parse_uint()?;
        let v = i32::try_from(&n).map_err(|_| PolyError::Parse("exponent too large".into()))?;
        Ok(if neg { -v } else { v })
    }

    fn parse_var(&mut self) -> Result<Var, PolyError> {
        let start = self.pos;
        while self.pos < self.input.len()
            && (self.input[self.pos].is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        // Variable names may be followed directly by digits only when the
        // digits belong to the name (Y0, Y1); try the longest match first.
        if let Some(v) = Var::from_name(s) {
            return Ok(v);
        }
        // Fall back: a one-letter variable followed by digits (e.g. "q2"
        // is not valid; report it).
        Err(PolyError::Parse(format!("unknown variable {:?}", s)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_display_matches_expected_order() {
        // Ascending by sum of |exponents|, ties broken lexicographically.
        let poly = &(&LaurentPoly::one() + &p("2*q^2*Y0")) - &p("q^-1*Z^3");
        assert_eq!(poly.to_string(), "1 + 2*q^2*Y0 - q^-1*Z^3");
    }

    #[test]
    fn parse_print_round_trip_on_handwritten_cases() {
        for s in [
            "0",
            "1",
            "-1",
            "q",
            "-q + q^3",
            "1 + q + 2*q^2 + q^3 + q^4",
            "1 + 2*q^2*Y0 - q^-1*Z^3",
            "-17 + t^2*q^3*Y0*Y1*Z",
            "Z^-2 + 3*Y1^5",
        ] {
            assert_eq!(p(s).to_string(), s, "round trip for {:?}", s);
        }
    }

    #[test]
    fn gauss_binomial_small_values() {
        let q = LaurentPoly::var(Var::Q);
        assert_eq!(gauss_binomial(3, 1, &q).to_string(), "1 + q + q^2");
        assert_eq!(gauss_binomial(4, 2, &q).to_string(), "1 + q + 2*q^2 + q^3 + q^4");
        assert_eq!(gauss_binomial(5, 0, &q), LaurentPoly::one());
        assert_eq!(gauss_binomial(5, 5, &q), LaurentPoly::one());
    }

    #[test]
    fn gauss_binomial_against_subset_sum_oracle() {
        // q^(N(N+1)/2) * [n over N]_q = Σ_{A ⊆ [n], |A| = N} q^(Σ A).
        let q = LaurentPoly::var(Var::Q);
        for n in 0..=8usize {
            for k in 0..=n {
                let mut rhs = LaurentPoly::zero();
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize != k {
                        continue;
                    }
                    let tot: i32 = (1..=n as i32).filter(|i| mask >> (i - 1) & 1 == 1).sum();
                    rhs += LaurentPoly::var_pow(Var::Q, tot);
                }
                let shift = (k * (k + 1) / 2) as i32;
                let lhs = gauss_binomial(n, k, &q).mul_term(&BigInt::one(), &Exponents::single(Var::Q, shift));
                assert_eq!(lhs, rhs, "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn gauss_multinomial_in_squared_base() {
        let q2 = LaurentPoly::var_pow(Var::Q, 2);
        // [2 over 1,1] in base q^2 is 1 + q^2.
        assert_eq!(gauss_multinomial(2, &[1, 1], &q2).to_string(), "1 + q^2");
    }

    #[test]
    fn exact_div_detects_inexact_cases() {
        let f = p("1 + q");
        let g = p("1 - q");
        assert_eq!(f.exact_div(&g), Err(PolyError::InexactDivision));
        let h = &f * &g; // 1 - q^2
        assert_eq!(h.exact_div(&g).unwrap(), f);
        assert_eq!(h.exact_div(&f).unwrap(), g);
    }

    #[test]
    fn exact_div_handles_laurent_shifts() {
        let f = p("q^-2 - q^2");
        let g = p("q^-1 - q");
        let quotient = f.exact_div(&g).unwrap();
        assert_eq!(quotient, p("q^-1 + q"));
    }

    #[test]
    fn substitution_examples() {
        let poly = p("q^2*Y0 + q*Y1*Z");
        let inv_q = poly.substitute(Var::Q, &Replacement::var_pow(Var::Q, -1)).unwrap();
        assert_eq!(inv_q, p("q^-2*Y0 + q^-1*Y1*Z"));
        let no_z = poly.substitute(Var::Z, &Replacement::Zero).unwrap();
        assert_eq!(no_z, p("q^2*Y0"));
        let t_one = p("t^2*q + t").substitute(Var::T, &Replacement::one()).unwrap();
        assert_eq!(t_one, p("1 + q"));
        let squared = poly.substitute(Var::Q, &Replacement::var_pow(Var::Q, 2)).unwrap();
        assert_eq!(squared, p("q^4*Y0 + q^2*Y1*Z"));
    }

    #[test]
    fn halving_exponents() {
        assert_eq!(p("q^4 + q^2").halve_exponents(Var::Q).unwrap(), p("q^2 + q"));
        assert!(matches!(
            p("q^3").halve_exponents(Var::Q),
            Err(PolyError::HalfIntegerExponent { var: "q", exp: 3 })
        ));
    }

    #[test]
    fn eval_with_negative_exponents() {
        let poly = p("q^-1*Z^3 + 2");
        let mut vals = [
            BigInt::from(1),
            BigInt::from(1),
            BigInt::from(1),
            BigInt::from(1),
            BigInt::from(2),
        ];
        assert_eq!(poly.eval(&vals).unwrap(), BigInt::from(10));
        vals[1] = BigInt::zero();
        assert!(poly.eval(&vals).is_err());
    }

    #[test]
    fn capped_inverse_of_one_minus_q() {
        let caps = TruncCaps::q_adic(5);
        let inv = p("1 - q").inverse_capped(&caps).unwrap();
        assert_eq!(inv, p("1 + q + q^2 + q^3 + q^4 + q^5"));
        // (1 - q) * inv ≡ 1 (mod q^6)
        let prod = (&p("1 - q") * &inv).truncated(&caps);
        assert_eq!(prod, LaurentPoly::one());
    }

    #[test]
    fn capped_inverse_rejects_uncapped_content() {
        let caps = TruncCaps::q_adic(5);
        assert!(p("1 + Z").inverse_capped(&caps).is_err());
        assert!(p("2 + q").inverse_capped(&caps).is_err());
    }
}
