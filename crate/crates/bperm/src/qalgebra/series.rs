//! Truncated power series with Laurent-polynomial coefficients.
//!
//! A [`TruncSeries`] is a series in one distinguished variable (written
//! `u`, `t` or `q`; the variable is *not* one of the polynomial ring
//! variables unless `t` or `q` is chosen) with coefficients kept for
//! powers `0..=order`.  Coefficients may additionally be truncated
//! `q`-adically and/or `t`-adically via [`TruncCaps`]; every arithmetic
//! operation re-applies the caps, so a computation stays inside the stated
//! modulus `(X^(order+1), q^(q_max+1), t^(t_max+1))` throughout.
//!
//! Inversion is geometric: a series with constant coefficient `1` is
//! inverted by expanding `(1 - X)^-1 = 1 + X + X^2 + …`, which becomes
//! stationary because every term of `X` carries a positive power of the
//! series variable or of a capped coefficient variable.  The
//! q-exponentials `e_q` and `E_q` and the truncated infinite Pochhammer
//! products are provided on top.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{LaurentPoly, PolyError, TruncCaps, Var};

/// The distinguished series variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesVar {
    U,
    T,
    Q,
}

impl SeriesVar {
    /// Printed name.
    pub fn name(self) -> &'static str {
        match self {
            SeriesVar::U => "u",
            SeriesVar::T => "t",
            SeriesVar::Q => "q",
        }
    }

    /// The polynomial-ring variable shadowed by this series variable, if
    /// any.  Coefficients must not contain it.
    fn shadowed(self) -> Option<Var> {
        match self {
            SeriesVar::U => None,
            SeriesVar::T => Some(Var::T),
            SeriesVar::Q => Some(Var::Q),
        }
    }
}

/// A power series truncated at `var^order` (inclusive).
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    var: SeriesVar,
    order: usize,
    caps: TruncCaps,
    coeffs: Vec<LaurentPoly>, // length order + 1
}

impl TruncSeries {
    /// The zero series.
    pub fn zero(var: SeriesVar, order: usize, caps: TruncCaps) -> TruncSeries {
        TruncSeries {
            var,
            order,
            caps,
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    /// The constant series one.
    pub fn one(var: SeriesVar, order: usize, caps: TruncCaps) -> TruncSeries {
        let mut s = TruncSeries::zero(var, order, caps);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    /// Build a series from a coefficient function for powers `0..=order`.
    pub fn from_fn(
        var: SeriesVar,
        order: usize,
        caps: TruncCaps,
        mut f: impl FnMut(usize) -> LaurentPoly,
    ) -> TruncSeries {
        let mut s = TruncSeries::zero(var, order, caps);
        for k in 0..=order {
            s.set_coeff(k, f(k));
        }
        s
    }

    /// A single term `poly * var^k`.
    pub fn term(var: SeriesVar, order: usize, caps: TruncCaps, k: usize, poly: LaurentPoly) -> TruncSeries {
        let mut s = TruncSeries::zero(var, order, caps);
        if k <= order {
            s.set_coeff(k, poly);
        }
        s
    }

    /// Series variable.
    pub fn var(&self) -> SeriesVar {
        self.var
    }

    /// Truncation order (coefficients exist for powers `0..=order`).
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient caps applied to every coefficient.
    pub fn caps(&self) -> &TruncCaps {
        &self.caps
    }

    /// Coefficient of `var^k` (zero beyond the order).
    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        static ZERO: std::sync::OnceLock<LaurentPoly> = std::sync::OnceLock::new();
        self.coeffs
            .get(k)
            .unwrap_or_else(|| ZERO.get_or_init(LaurentPoly::zero))
    }

    fn set_coeff(&mut self, k: usize, poly: LaurentPoly) {
        let poly = poly.truncated(&self.caps);
        if let Some(shadow) = self.var.shadowed() {
            debug_assert!(
                poly.max_exp(shadow).unwrap_or(0) == 0 && poly.min_exp(shadow).unwrap_or(0) == 0,
                "coefficient of a {}-series must not contain {}",
                self.var.name(),
                shadow.name()
            );
        }
        self.coeffs[k] = poly;
    }

    fn assert_compatible(&self, other: &TruncSeries) {
        assert!(
            self.var == other.var && self.order == other.order && self.caps == other.caps,
            "series regime mismatch"
        );
    }

    /// Sum of two series in the same regime.
    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        self.assert_compatible(other);
        let mut out = self.clone();
        for k in 0..=self.order {
            out.set_coeff(k, &self.coeffs[k] + &other.coeffs[k]);
        }
        out
    }

    /// Difference of two series in the same regime.
    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        self.assert_compatible(other);
        let mut out = self.clone();
        for k in 0..=self.order {
            out.set_coeff(k, &self.coeffs[k] - &other.coeffs[k]);
        }
        out
    }

    /// Product of two series in the same regime.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        self.assert_compatible(other);
        let mut out = TruncSeries::zero(self.var, self.order, self.caps);
        for i in 0..=self.order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(self.order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &other.coeffs[j];
                out.set_coeff(i + j, &out.coeffs[i + j] + &prod);
            }
        }
        out
    }

    /// Multiply every coefficient by a polynomial.
    pub fn mul_poly(&self, poly: &LaurentPoly) -> TruncSeries {
        let mut out = self.clone();
        for k in 0..=self.order {
            out.set_coeff(k, &self.coeffs[k] * poly);
        }
        out
    }

    /// True if every kept coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Geometric inverse of a series with constant coefficient one.
    ///
    /// Errors with [`PolyError::NotInvertible`] if the constant coefficient
    /// differs from one or the expansion fails to become stationary within
    /// the truncation budget.
    pub fn inverse(&self) -> Result<TruncSeries, PolyError> {
        if !self.coeffs[0].is_one() {
            return Err(PolyError::NotInvertible(format!(
                "series constant coefficient is {}",
                self.coeffs[0]
            )));
        }
        let x = TruncSeries::one(self.var, self.order, self.caps).sub(self);
        let budget = self.order + self.caps_budget() + 1;
        let mut acc = TruncSeries::one(self.var, self.order, self.caps);
        let mut pow = TruncSeries::one(self.var, self.order, self.caps);
        for _ in 0..budget {
            pow = pow.mul(&x);
            if pow.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&pow);
        }
        Err(PolyError::NotInvertible(
            "series expansion did not become stationary".into(),
        ))
    }

    fn caps_budget(&self) -> usize {
        let q = self.caps.q_max.unwrap_or(0).max(0) as usize;
        let t = self.caps.t_max.unwrap_or(0).max(0) as usize;
        q + t + 1
    }

    /// First position where two series in the same regime differ:
    /// `(power, exponent vector, self coefficient, other coefficient)`.
    pub fn first_diff(
        &self,
        other: &TruncSeries,
    ) -> Option<(usize, super::poly::Exponents, BigInt, BigInt)> {
        self.assert_compatible(other);
        for k in 0..=self.order {
            if self.coeffs[k] == other.coeffs[k] {
                continue;
            }
            let mut exps: Vec<super::poly::Exponents> = self.coeffs[k]
                .terms()
                .map(|(e, _)| *e)
                .chain(other.coeffs[k].terms().map(|(e, _)| *e))
                .collect();
            exps.sort();
            exps.dedup();
            for e in exps {
                let a = self.coeffs[k].coeff(&e);
                let b = other.coeffs[k].coeff(&e);
                if a != b {
                    return Some((k, e, a, b));
                }
            }
        }
        None
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*{}", c, self.var.name())?,
                _ => write!(f, "({})*{}^{}", c, self.var.name(), k)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var.name(), self.order + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---------------------------------------------------------------------------
// Stock series
// ---------------------------------------------------------------------------

/// Finite product `Π_{k=0}^{count-1} (1 - prefix * ratio^k * X)` where `X`
/// is the series variable.
pub fn pochhammer_series(
    var: SeriesVar,
    order: usize,
    caps: TruncCaps,
    prefix: &LaurentPoly,
    ratio: &LaurentPoly,
    count: usize,
) -> TruncSeries {
    let mut prod = TruncSeries::one(var, order, caps);
    let mut factor_coeff = prefix.clone();
    for _ in 0..count {
        let mut factor = TruncSeries::one(var, order, caps);
        factor = factor.sub(&TruncSeries::term(var, order, caps, 1, factor_coeff.clone()));
        prod = prod.mul(&factor);
        factor_coeff = &factor_coeff * ratio;
    }
    prod
}

/// Truncated infinite product `Π_{k>=0} (1 - prefix * ratio^k * X)`.
///
/// Factors are multiplied until `prefix * ratio^k` vanishes under the caps,
/// so `ratio` must carry a positive power of a capped variable.
pub fn pochhammer_series_infinite(
    var: SeriesVar,
    order: usize,
    caps: TruncCaps,
    prefix: &LaurentPoly,
    ratio: &LaurentPoly,
) -> Result<TruncSeries, PolyError> {
    let budget = caps.q_max.unwrap_or(-1).max(0) as usize + caps.t_max.unwrap_or(-1).max(0) as usize + 2;
    let mut prod = TruncSeries::one(var, order, caps);
    let mut factor_coeff = prefix.truncated(&caps);
    for _ in 0..=budget {
        if factor_coeff.is_zero() {
            return Ok(prod);
        }
        let mut factor = TruncSeries::one(var, order, caps);
        factor = factor.sub(&TruncSeries::term(var, order, caps, 1, factor_coeff.clone()));
        prod = prod.mul(&factor);
        factor_coeff = (&factor_coeff * ratio).truncated(&caps);
    }
    Err(PolyError::NotInvertible(
        "infinite product does not truncate; ratio has no positive capped exponent".into(),
    ))
}

/// The q-exponential `e_q(X) = Σ_n X^n / (q;q)_n` in `q`-adic mode.
pub fn e_q(var: SeriesVar, order: usize, caps: TruncCaps) -> Result<TruncSeries, PolyError> {
    let q = LaurentPoly::var(Var::Q);
    let mut poch = LaurentPoly::one();
    let mut qk = q.clone();
    let mut out = TruncSeries::zero(var, order, caps);
    for n in 0..=order {
        if n > 0 {
            poch = &poch * &(&LaurentPoly::one() - &qk);
            qk = &qk * &q;
        }
        let inv = poch.inverse_capped(&caps)?;
        out.set_coeff(n, inv);
    }
    Ok(out)
}

/// The q-exponential `E_q(X) = Σ_n q^(n(n-1)/2) X^n / (q;q)_n` in `q`-adic
/// mode.
pub fn big_e_q(var: SeriesVar, order: usize, caps: TruncCaps) -> Result<TruncSeries, PolyError> {
    let base = e_q(var, order, caps)?;
    let mut out = TruncSeries::zero(var, order, caps);
    for n in 0..=order {
        let shift = (n * (n.saturating_sub(1)) / 2) as i32;
        let coeff = base
            .coeff(n)
            .mul_term(&BigInt::one(), &super::poly::Exponents::single(Var::Q, shift));
        out.set_coeff(n, coeff);
    }
    Ok(out)
}
