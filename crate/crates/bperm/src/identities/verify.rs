//! Named identity checkers with a uniform machine-readable report.
//!
//! Each registry entry compares an exhaustively enumerated generating
//! polynomial against a closed form, an equivalent enumeration, or a
//! truncated-series identity.  A check either passes or fails with a
//! witness naming the first differing coefficient.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::perm::{self, SubsetClass};
use crate::qalgebra::poly::{
    gauss_binomial, q_pochhammer, Exponents, LaurentPoly, Replacement, TruncCaps, Var,
};
use crate::qalgebra::series::{
    e_q, pochhammer_series, pochhammer_series_infinite, SeriesVar, TruncSeries,
};
use crate::weighted::{
    enumerate_wsp, fdes_pairing, fdes_pairing_inverse, macmahon_from_word, macmahon_to_word,
    wsp_decompose, wsp_recompose,
};
use crate::words::{enumerate_words, WordFamily};

use super::biject::{phi, phi_inverse};
use super::closed::{
    self, derangement_numbers, derangement_numbers_explicit, enum_polynomial, EnumError,
    GroupFamily, StatBundle,
};

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// Identifier of one verifiable identity.  The tag strings form the
/// external interface of the registry.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[allow(non_camel_case_types)]
pub enum IdentityId {
    I1_2,
    Thm1_1,
    I1_7,
    I1_8,
    I1_9,
    I2_1,
    I2_2,
    I2_4,
    I3_2,
    I3_3,
    I3_5,
    I4_1,
    I5_1,
    I5_2,
    I5_3,
    I5_6,
    I5_7,
    I5_8,
    I6_2_3,
    I6_5,
    I6_6,
    I6_7,
    I6_8,
    I6_9,
    I6_10,
    I6_12,
    I6_14,
    I6_15,
    I6_16,
    I6_17,
    I6_18,
    I6_19,
    I6_22,
    I6_24,
    I6_25,
    I6_26,
    I6_27,
}

const REGISTRY: [IdentityId; 37] = [
    IdentityId::I1_2,
    IdentityId::Thm1_1,
    IdentityId::I1_7,
    IdentityId::I1_8,
    IdentityId::I1_9,
    IdentityId::I2_1,
    IdentityId::I2_2,
    IdentityId::I2_4,
    IdentityId::I3_2,
    IdentityId::I3_3,
    IdentityId::I3_5,
    IdentityId::I4_1,
    IdentityId::I5_1,
    IdentityId::I5_2,
    IdentityId::I5_3,
    IdentityId::I5_6,
    IdentityId::I5_7,
    IdentityId::I5_8,
    IdentityId::I6_2_3,
    IdentityId::I6_5,
    IdentityId::I6_6,
    IdentityId::I6_7,
    IdentityId::I6_8,
    IdentityId::I6_9,
    IdentityId::I6_10,
    IdentityId::I6_12,
    IdentityId::I6_14,
    IdentityId::I6_15,
    IdentityId::I6_16,
    IdentityId::I6_17,
    IdentityId::I6_18,
    IdentityId::I6_19,
    IdentityId::I6_22,
    IdentityId::I6_24,
    IdentityId::I6_25,
    IdentityId::I6_26,
    IdentityId::I6_27,
];

/// All identities in fixed registry order.
pub fn registry() -> &'static [IdentityId] {
    &REGISTRY
}

impl IdentityId {
    /// The registry tag.
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::I1_2 => "1.2",
            IdentityId::Thm1_1 => "thm1.1",
            IdentityId::I1_7 => "1.7",
            IdentityId::I1_8 => "1.8",
            IdentityId::I1_9 => "1.9",
            IdentityId::I2_1 => "2.1",
            IdentityId::I2_2 => "2.2",
            IdentityId::I2_4 => "2.4",
            IdentityId::I3_2 => "3.2",
            IdentityId::I3_3 => "3.3",
            IdentityId::I3_5 => "3.5",
            IdentityId::I4_1 => "4.1",
            IdentityId::I5_1 => "5.1",
            IdentityId::I5_2 => "5.2",
            IdentityId::I5_3 => "5.3",
            IdentityId::I5_6 => "5.6",
            IdentityId::I5_7 => "5.7",
            IdentityId::I5_8 => "5.8",
            IdentityId::I6_2_3 => "6.2-3",
            IdentityId::I6_5 => "6.5",
            IdentityId::I6_6 => "6.6",
            IdentityId::I6_7 => "6.7",
            IdentityId::I6_8 => "6.8",
            IdentityId::I6_9 => "6.9",
            IdentityId::I6_10 => "6.10",
            IdentityId::I6_12 => "6.12",
            IdentityId::I6_14 => "6.14",
            IdentityId::I6_15 => "6.15",
            IdentityId::I6_16 => "6.16",
            IdentityId::I6_17 => "6.17",
            IdentityId::I6_18 => "6.18",
            IdentityId::I6_19 => "6.19",
            IdentityId::I6_22 => "6.22",
            IdentityId::I6_24 => "6.24",
            IdentityId::I6_25 => "6.25",
            IdentityId::I6_26 => "6.26",
            IdentityId::I6_27 => "6.27",
        }
    }

    /// One-line statement of what the checker compares.
    pub fn description(self) -> &'static str {
        match self {
            IdentityId::I1_2 => "fixed-point polynomial equals its exponential closed form",
            IdentityId::Thm1_1 => "fixed-point and pixed-point distributions agree with the four-index sum",
            IdentityId::I1_7 => "length-graded factorial generating function, truncated regime",
            IdentityId::I1_8 => "flag-major factorial generating function, truncated regime",
            IdentityId::I1_9 => "flag-graded factorial generating function, truncated regime",
            IdentityId::I2_1 => "derangement numbers: recurrence versus exhaustive count",
            IdentityId::I2_2 => "four-index closed form for the fixed-point distribution",
            IdentityId::I2_4 => "phi is bijective and transports fixed sets to pixed sets",
            IdentityId::I3_2 => "inversions on desarrangements match major index on derangements",
            IdentityId::I3_3 => "derangement major-index generating function, truncated regime",
            IdentityId::I3_5 => "length-graded polynomial equals the exact four-index q-sum",
            IdentityId::I4_1 => "fixed-point removal/insertion round trip with weight bookkeeping",
            IdentityId::I5_1 => "nonincreasing even words generate the inverse Pochhammer coefficients",
            IdentityId::I5_2 => "decreasing odd words generate the Pochhammer coefficients",
            IdentityId::I5_3 => "weighted fixed-point series factors through Pochhammer ratios",
            IdentityId::I5_6 => "weighted signed permutations generate a geometric series",
            IdentityId::I5_7 => "weight distribution is the n-th power of one column",
            IdentityId::I5_8 => "flag polynomial folded in t matches weighted enumeration slice by slice",
            IdentityId::I6_2_3 => "letter-negation involution: complementary flag-major, negation and fix exchange",
            IdentityId::I6_5 => "flag-major distribution is self-dual up to the q^(n^2) Z^n prefactor",
            IdentityId::I6_6 => "signed derangement generating function, truncated regime",
            IdentityId::I6_7 => "signed derangement polynomials solve the Gaussian triangular system",
            IdentityId::I6_8 => "signed derangement polynomial equals its alternating Gaussian sum",
            IdentityId::I6_9 => "signed derangement polynomials satisfy the first-order recurrence",
            IdentityId::I6_10 => "signed derangement polynomials satisfy the three-term recurrence",
            IdentityId::I6_12 => "signed desarrangement generating function, truncated regime",
            IdentityId::I6_14 => "descent/major/fixed generating function, truncated regime",
            IdentityId::I6_15 => "major/fixed generating function, truncated regime",
            IdentityId::I6_16 => "derangement major polynomials solve the Gaussian triangular system",
            IdentityId::I6_17 => "derangement major series against the q-exponential, truncated regime",
            IdentityId::I6_18 => "derangement major polynomial equals the positive trough expansion",
            IdentityId::I6_19 => "derangement numbers equal the positive trough count expansion",
            IdentityId::I6_22 => "major/fixed distribution equals inversion/pixed distribution",
            IdentityId::I6_24 => "inverse-major/pixed distribution equals major/fixed distribution",
            IdentityId::I6_25 => "desarrangement inversions: full chain and per-trough refinement",
            IdentityId::I6_26 => "inversions and inverse major index agree on desarrangements",
            IdentityId::I6_27 => "descent-set classes of derangements match inverse classes of desarrangements",
        }
    }

    /// Desk-scale default parameters, sized so every entry passes in at
    /// most a few seconds.
    pub fn default_params(self) -> VerifyParams {
        let base = VerifyParams::default();
        match self {
            IdentityId::I1_2 => VerifyParams { n_max: 6, ..base },
            IdentityId::Thm1_1 => VerifyParams { n_max: 6, ..base },
            IdentityId::I1_7 => VerifyParams { u_order: 4, ..base },
            IdentityId::I1_8 => VerifyParams { u_order: 4, ..base },
            IdentityId::I1_9 => VerifyParams { u_order: 4, ..base },
            IdentityId::I2_1 => VerifyParams { n_max: 9, ..base },
            IdentityId::I2_2 => VerifyParams { n_max: 6, ..base },
            IdentityId::I2_4 => VerifyParams { n_max: 5, ..base },
            IdentityId::I3_2 => VerifyParams { n_max: 6, ..base },
            IdentityId::I3_3 => VerifyParams { u_order: 5, ..base },
            IdentityId::I3_5 => VerifyParams { n_max: 6, ..base },
            IdentityId::I4_1 => VerifyParams { n_max: 4, s_max: 4, ..base },
            IdentityId::I5_1 => VerifyParams { n_max: 6, s_max: 6, ..base },
            IdentityId::I5_2 => VerifyParams { n_max: 6, s_max: 6, ..base },
            IdentityId::I5_3 => VerifyParams { n_max: 4, s_max: 4, ..base },
            IdentityId::I5_6 => VerifyParams { n_max: 4, s_max: 4, ..base },
            IdentityId::I5_7 => VerifyParams { n_max: 4, s_max: 5, ..base },
            IdentityId::I5_8 => VerifyParams { n_max: 4, s_max: 6, ..base },
            IdentityId::I6_2_3 => VerifyParams { n_max: 5, ..base },
            IdentityId::I6_5 => VerifyParams { n_max: 5, ..base },
            IdentityId::I6_6 => VerifyParams { u_order: 5, ..base },
            IdentityId::I6_7 => VerifyParams { n_max: 5, ..base },
            IdentityId::I6_8 => VerifyParams { n_max: 5, ..base },
            IdentityId::I6_9 => VerifyParams { n_max: 5, ..base },
            IdentityId::I6_10 => VerifyParams { n_max: 5, ..base },
            IdentityId::I6_12 => VerifyParams { u_order: 5, ..base },
            IdentityId::I6_14 => VerifyParams { u_order: 4, ..base },
            IdentityId::I6_15 => VerifyParams { u_order: 5, ..base },
            IdentityId::I6_16 => VerifyParams { n_max: 6, ..base },
            IdentityId::I6_17 => VerifyParams { u_order: 5, ..base },
            IdentityId::I6_18 => VerifyParams { n_max: 8, ..base },
            IdentityId::I6_19 => VerifyParams { n_max: 9, ..base },
            IdentityId::I6_22 => VerifyParams { n_max: 6, ..base },
            IdentityId::I6_24 => VerifyParams { n_max: 6, ..base },
            IdentityId::I6_25 => VerifyParams { n_max: 6, ..base },
            IdentityId::I6_26 => VerifyParams { n_max: 6, ..base },
            IdentityId::I6_27 => VerifyParams { n_max: 6, ..base },
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<IdentityId, VerifyError> {
        REGISTRY
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| VerifyError::UnknownIdentity(s.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Parameters, reports, errors
// ---------------------------------------------------------------------------

/// Verification parameters.  Checkers read only the fields that apply to
/// them: `n_max` bounds exact enumerations, `u_order`/`t_order`/`q_order`
/// bound the truncated series regimes, `s_max` bounds weight bounds.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct VerifyParams {
    pub n_max: usize,
    pub u_order: usize,
    pub t_order: usize,
    pub q_order: i32,
    pub s_max: u32,
}

impl Default for VerifyParams {
    fn default() -> VerifyParams {
        VerifyParams { n_max: 5, u_order: 5, t_order: 8, q_order: 12, s_max: 4 }
    }
}

/// Outcome of one check.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyStatus {
    Pass,
    Fail,
}

/// First discrepancy found by a failing check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    /// Where the two sides differ (order, coefficient position, member).
    pub location: String,
    pub expected: String,
    pub actual: String,
}

/// Full machine-readable result of one check.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub identity: IdentityId,
    pub params: VerifyParams,
    pub status: VerifyStatus,
    pub witness: Option<Witness>,
    pub elapsed_ms: u128,
}

/// Errors raised before a check can run.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown identity tag `{0}`")]
    UnknownIdentity(String),
    #[error(transparent)]
    Enum(#[from] EnumError),
}

/// Run one identity checker.
pub fn verify(id: IdentityId, params: &VerifyParams) -> Result<VerifyReport, VerifyError> {
    let start = Instant::now();
    let witness = run_checker(id, params)?;
    Ok(VerifyReport {
        identity: id,
        params: *params,
        status: if witness.is_none() { VerifyStatus::Pass } else { VerifyStatus::Fail },
        witness,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn run_checker(id: IdentityId, p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    match id {
        IdentityId::I1_2 => check_1_2(p),
        IdentityId::Thm1_1 => check_thm1_1(p),
        IdentityId::I1_7 => check_1_7(p),
        IdentityId::I1_8 => check_1_8(p),
        IdentityId::I1_9 => check_1_9(p),
        IdentityId::I2_1 => check_2_1(p),
        IdentityId::I2_2 => check_2_2(p),
        IdentityId::I2_4 => check_2_4(p),
        IdentityId::I3_2 => check_3_2(p),
        IdentityId::I3_3 => check_3_3(p),
        IdentityId::I3_5 => check_3_5(p),
        IdentityId::I4_1 => check_4_1(p),
        IdentityId::I5_1 => check_5_1(p),
        IdentityId::I5_2 => check_5_2(p),
        IdentityId::I5_3 => check_5_3(p),
        IdentityId::I5_6 => check_5_6(p),
        IdentityId::I5_7 => check_5_7(p),
        IdentityId::I5_8 => check_5_8(p),
        IdentityId::I6_2_3 => check_6_2_3(p),
        IdentityId::I6_5 => check_6_5(p),
        IdentityId::I6_6 => check_6_6(p),
        IdentityId::I6_7 => check_6_7(p),
        IdentityId::I6_8 => check_6_8(p),
        IdentityId::I6_9 => check_6_9(p),
        IdentityId::I6_10 => check_6_10(p),
        IdentityId::I6_12 => check_6_12(p),
        IdentityId::I6_14 => check_6_14(p),
        IdentityId::I6_15 => check_6_15(p),
        IdentityId::I6_16 => check_6_16(p),
        IdentityId::I6_17 => check_6_17(p),
        IdentityId::I6_18 => check_6_18(p),
        IdentityId::I6_19 => check_6_19(p),
        IdentityId::I6_22 => check_6_22(p),
        IdentityId::I6_24 => check_6_24(p),
        IdentityId::I6_25 => check_6_25(p),
        IdentityId::I6_26 => check_6_26(p),
        IdentityId::I6_27 => check_6_27(p),
    }
}

// ---------------------------------------------------------------------------
// Comparison helpers
// ---------------------------------------------------------------------------

fn poly_eq(location: String, expected: &LaurentPoly, actual: &LaurentPoly) -> Option<Witness> {
    if expected == actual {
        None
    } else {
        Some(Witness { location, expected: expected.to_string(), actual: actual.to_string() })
    }
}

fn count_eq(
    location: String,
    expected: impl ToString,
    actual: impl ToString,
    same: bool,
) -> Option<Witness> {
    if same {
        None
    } else {
        Some(Witness { location, expected: expected.to_string(), actual: actual.to_string() })
    }
}

fn series_eq(location: &str, expected: &TruncSeries, actual: &TruncSeries) -> Option<Witness> {
    expected.first_diff(actual).map(|(k, e, want, got)| Witness {
        location: format!(
            "{location}: coefficient of {}^{k}, monomial {}",
            expected.var().name(),
            LaurentPoly::term(1, e)
        ),
        expected: want.to_string(),
        actual: got.to_string(),
    })
}

/// `(1 - u * coeff)^(-1)` as a truncated series in the given regime.
fn geometric_inverse(
    var: SeriesVar,
    order: usize,
    caps: TruncCaps,
    coeff: &LaurentPoly,
) -> TruncSeries {
    TruncSeries::one(var, order, caps)
        .sub(&TruncSeries::term(var, order, caps, 1, coeff.clone()))
        .inverse()
        .expect("geometric factor has unit constant term")
}

fn neg_qz() -> LaurentPoly {
    let mut e = Exponents::single(Var::Q, 1);
    e.0[Var::Z as usize] = 1;
    LaurentPoly::term(-1, e)
}

fn q_poly() -> LaurentPoly {
    LaurentPoly::var(Var::Q)
}

fn q2_poly() -> LaurentPoly {
    LaurentPoly::var_pow(Var::Q, 2)
}

/// `1/(1-q)` under a q-adic cap.
fn inv_one_minus_q(caps: &TruncCaps, exp: i32) -> LaurentPoly {
    (&LaurentPoly::one() - &LaurentPoly::var_pow(Var::Q, exp))
        .inverse_capped(caps)
        .expect("1 - q^k is invertible q-adically")
}

/// The weighted enumeration `Σ q^(tot c) Y0^(fix+) Y1^(fix-) Z^neg` over
/// all weighted signed permutations of order `n` with weights at most `s`;
/// with `full = false` the fixed-point variables are dropped.
fn wsp_enum_poly(n: usize, s: u32, full: bool) -> LaurentPoly {
    let mut sum = LaurentPoly::zero();
    for pair in enumerate_wsp(n, s, false) {
        let profile = pair.w().stat_profile();
        let mut e = Exponents::single(Var::Q, pair.c().tot() as i32);
        if full {
            e.0[Var::Y0 as usize] = profile.fix_plus as i32;
            e.0[Var::Y1 as usize] = profile.fix_minus as i32;
        }
        e.0[Var::Z as usize] = profile.neg as i32;
        sum += &LaurentPoly::term(1, e);
    }
    sum
}

/// Length of the maximal strictly decreasing prefix.
fn initial_run(letters: &[i32]) -> usize {
    let mut run = if letters.is_empty() { 0 } else { 1 };
    while run < letters.len() && letters[run - 1] > letters[run] {
        run += 1;
    }
    run
}

// ---------------------------------------------------------------------------
// Checkers: section 1 and 2
// ---------------------------------------------------------------------------

fn check_1_2(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let enumerated = enum_polynomial(n, GroupFamily::B, StatBundle::Fix)?;
        let closed = closed::fix_closed_exponential(n);
        if let Some(w) = poly_eq(format!("n={n}"), &closed, &enumerated) {
            return Ok(Some(w));
        }
        let ones = [BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one()];
        let count = enumerated.eval(&ones).expect("positive exponents");
        let order = BigInt::from(2u64).pow(n as u32) * closed::factorial(n);
        if let Some(w) = count_eq(
            format!("n={n}: evaluation at Y0=Y1=Z=1"),
            &order,
            &count,
            count == order,
        ) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_thm1_1(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let by_fix = enum_polynomial(n, GroupFamily::B, StatBundle::Fix)?;
        let by_pix = enum_polynomial(n, GroupFamily::B, StatBundle::Pix)?;
        let closed = closed::fix_closed_four_index(n);
        if let Some(w) = poly_eq(format!("n={n}: fixed side vs four-index sum"), &closed, &by_fix) {
            return Ok(Some(w));
        }
        if let Some(w) = poly_eq(format!("n={n}: pixed side vs four-index sum"), &closed, &by_pix) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_1_7(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::q_adic(p.q_order);
    let order = p.u_order;
    let q = q_poly();
    let mut lhs_coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let ln = enum_polynomial(n, GroupFamily::B, StatBundle::PixLength)?;
        let denom = (&q_pochhammer(&neg_qz(), &q, n) * &q_pochhammer(&q, &q, n))
            .inverse_capped(&caps)
            .expect("Pochhammer blocks are invertible q-adically");
        lhs_coeffs.push((&ln * &denom).truncated(&caps));
    }
    let lhs = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| lhs_coeffs[n].clone());

    let geom = geometric_inverse(SeriesVar::U, order, caps, &inv_one_minus_q(&caps, 1));
    let u_poch = pochhammer_series_infinite(SeriesVar::U, order, caps, &LaurentPoly::one(), &q)
        .expect("ratio q truncates");
    let mut inner_coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let denom = (&q_pochhammer(&neg_qz(), &q, n) * &q_pochhammer(&q, &q, n))
            .inverse_capped(&caps)
            .expect("Pochhammer blocks are invertible q-adically");
        inner_coeffs.push((&closed::signed_fix_rise_product(n) * &denom).truncated(&caps));
    }
    let inner = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| inner_coeffs[n].clone());
    let rhs = geom.mul(&u_poch).mul(&inner);
    Ok(series_eq("length-graded factorial series", &lhs, &rhs))
}

fn check_1_8(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::q_adic(p.q_order);
    let order = p.u_order;
    let q2 = q2_poly();
    let mut lhs_coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let bn = enum_polynomial(n, GroupFamily::B, StatBundle::FmajFix)?;
        let denom = q_pochhammer(&q2, &q2, n)
            .inverse_capped(&caps)
            .expect("(q^2;q^2)_n is invertible q-adically");
        lhs_coeffs.push((&bn * &denom).truncated(&caps));
    }
    let lhs = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| lhs_coeffs[n].clone());

    let geom_coeff = (&closed::one_plus_qz() * &inv_one_minus_q(&caps, 2)).truncated(&caps);
    let geom = geometric_inverse(SeriesVar::U, order, caps, &geom_coeff);
    let y0 = LaurentPoly::var(Var::Y0);
    let mut qy1z = Exponents::single(Var::Q, 1);
    qy1z.0[Var::Y1 as usize] = 1;
    qy1z.0[Var::Z as usize] = 1;
    let num1 = pochhammer_series_infinite(SeriesVar::U, order, caps, &LaurentPoly::one(), &q2)
        .expect("ratio q^2 truncates");
    let den1 = pochhammer_series_infinite(SeriesVar::U, order, caps, &y0, &q2)
        .expect("ratio q^2 truncates")
        .inverse()
        .expect("unit constant term");
    let num2 = pochhammer_series_infinite(
        SeriesVar::U,
        order,
        caps,
        &LaurentPoly::term(-1, qy1z),
        &q2,
    )
    .expect("ratio q^2 truncates");
    let den2 = pochhammer_series_infinite(SeriesVar::U, order, caps, &neg_qz(), &q2)
        .expect("ratio q^2 truncates")
        .inverse()
        .expect("unit constant term");
    let rhs = geom.mul(&num1).mul(&den1).mul(&num2).mul(&den2);
    Ok(series_eq("flag-major factorial series", &lhs, &rhs))
}

fn check_1_9(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::qt_adic(p.q_order, p.t_order as i32);
    let order = p.u_order;
    let one_plus_t = &LaurentPoly::one() + &LaurentPoly::var(Var::T);
    let t2 = LaurentPoly::var_pow(Var::T, 2);
    let q2 = q2_poly();
    let mut lhs_coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let bn = enum_polynomial(n, GroupFamily::B, StatBundle::Flag)?;
        let denom = q_pochhammer(&t2, &q2, n + 1)
            .inverse_capped(&caps)
            .expect("(t^2;q^2)_(n+1) is invertible under joint caps");
        lhs_coeffs.push((&(&bn * &one_plus_t) * &denom).truncated(&caps));
    }
    let lhs = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| lhs_coeffs[n].clone());

    let mut rhs = TruncSeries::zero(SeriesVar::U, order, caps);
    let y0 = LaurentPoly::var(Var::Y0);
    let mut qy1z = Exponents::single(Var::Q, 1);
    qy1z.0[Var::Y1 as usize] = 1;
    qy1z.0[Var::Z as usize] = 1;
    for s in 0..=p.t_order as u32 {
        let even_len = (s / 2) as usize + 1;
        let odd_len = ((s + 1) / 2) as usize;
        let geom = geometric_inverse(SeriesVar::U, order, caps, &closed::wsp_column_poly(s));
        let num1 =
            pochhammer_series(SeriesVar::U, order, caps, &LaurentPoly::one(), &q2, even_len);
        let den1 = pochhammer_series(SeriesVar::U, order, caps, &y0, &q2, even_len)
            .inverse()
            .expect("unit constant term");
        let num2 = pochhammer_series(
            SeriesVar::U,
            order,
            caps,
            &LaurentPoly::term(-1, qy1z),
            &q2,
            odd_len,
        );
        let den2 = pochhammer_series(SeriesVar::U, order, caps, &neg_qz(), &q2, odd_len)
            .inverse()
            .expect("unit constant term");
        let block = geom
            .mul(&num1)
            .mul(&den1)
            .mul(&num2)
            .mul(&den2)
            .mul_poly(&LaurentPoly::var_pow(Var::T, s as i32));
        rhs = rhs.add(&block);
    }
    Ok(series_eq("flag-graded factorial series", &lhs, &rhs))
}

fn check_2_1(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let cap = closed::family_cap(GroupFamily::D);
    if p.n_max > cap {
        return Err(EnumError::CapExceeded { n: p.n_max, cap }.into());
    }
    let d = derangement_numbers(p.n_max);
    for n in 0..=p.n_max {
        let counted = BigInt::from(perm::enumerate(n, SubsetClass::D).count() as u64);
        if let Some(w) = count_eq(
            format!("n={n}: recurrence vs derangement count"),
            &d[n],
            &counted,
            d[n] == counted,
        ) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_2_2(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let enumerated = enum_polynomial(n, GroupFamily::B, StatBundle::Fix)?;
        let closed = closed::fix_closed_four_index(n);
        if let Some(w) = poly_eq(format!("n={n}"), &closed, &enumerated) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_2_4(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let cap = closed::family_cap(GroupFamily::B);
    if p.n_max > cap {
        return Err(EnumError::CapExceeded { n: p.n_max, cap }.into());
    }
    for n in 0..=p.n_max {
        let mut image = BTreeSet::new();
        let mut members = 0usize;
        for w in perm::enumerate(n, SubsetClass::B) {
            members += 1;
            let before = w.stat_profile();
            let y = phi(&w);
            let after = y.stat_profile();
            if before.fix_minus_set != after.pix_minus_set
                || before.fix_plus_set != after.pix_plus_set
                || before.neg_set != after.neg_set
            {
                return Ok(Some(Witness {
                    location: format!("n={n}, w={w}: transported statistics"),
                    expected: format!(
                        "fix-={:?} fix+={:?} neg={:?}",
                        before.fix_minus_set, before.fix_plus_set, before.neg_set
                    ),
                    actual: format!(
                        "pix-={:?} pix+={:?} neg={:?}",
                        after.pix_minus_set, after.pix_plus_set, after.neg_set
                    ),
                }));
            }
            let back = phi_inverse(&y);
            if back != w {
                return Ok(Some(Witness {
                    location: format!("n={n}, w={w}: inverse round trip"),
                    expected: w.to_string(),
                    actual: back.to_string(),
                }));
            }
            image.insert(y);
        }
        if let Some(w) = count_eq(
            format!("n={n}: image size"),
            members,
            image.len(),
            members == image.len(),
        ) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Checkers: section 3
// ---------------------------------------------------------------------------

fn check_3_2(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let by_inv = enum_polynomial(n, GroupFamily::K, StatBundle::Inv)?;
        let by_maj = enum_polynomial(n, GroupFamily::D, StatBundle::Maj)?;
        if let Some(w) = poly_eq(
            format!("n={n}: inversions on desarrangements vs major on derangements"),
            &by_maj,
            &by_inv,
        ) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_3_3(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::q_adic(p.q_order);
    let order = p.u_order;
    let q = q_poly();
    let mut lhs_coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let dn = enum_polynomial(n, GroupFamily::D, StatBundle::Maj)?;
        let denom = q_pochhammer(&q, &q, n)
            .inverse_capped(&caps)
            .expect("(q;q)_n is invertible q-adically");
        lhs_coeffs.push((&dn * &denom).truncated(&caps));
    }
    let lhs = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| lhs_coeffs[n].clone());
    let geom = geometric_inverse(SeriesVar::U, order, caps, &inv_one_minus_q(&caps, 1));
    let rhs = geom.mul(
        &pochhammer_series_infinite(SeriesVar::U, order, caps, &LaurentPoly::one(), &q)
            .expect("ratio q truncates"),
    );
    Ok(series_eq("derangement major factorial series", &lhs, &rhs))
}

fn check_3_5(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let enumerated = enum_polynomial(n, GroupFamily::B, StatBundle::PixLength)?;
        let closed = closed::pix_length_closed(n);
        if let Some(w) = poly_eq(format!("n={n}"), &closed, &enumerated) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Checkers: sections 4 and 5
// ---------------------------------------------------------------------------

fn check_4_1(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max.min(closed::enumeration_cap()) {
        for s in 0..=p.s_max {
            for pair in enumerate_wsp(n, s, false) {
                let d = wsp_decompose(&pair);
                let profile = pair.w().stat_profile();
                let core_profile = d.core.w().stat_profile();
                let ok = profile.fix_plus == d.v_e.lambda()
                    && profile.fix_minus == d.v_o.lambda()
                    && pair.c().tot() == d.core.c().tot() + d.v_e.tot() + d.v_o.tot()
                    && profile.neg == core_profile.neg + d.v_o.lambda()
                    && core_profile.fix_plus + core_profile.fix_minus == 0;
                if !ok {
                    return Ok(Some(Witness {
                        location: format!("n={n}, s={s}, pair {pair}: split bookkeeping"),
                        expected: format!(
                            "fix+={} fix-={} tot={} neg={}",
                            profile.fix_plus,
                            profile.fix_minus,
                            pair.c().tot(),
                            profile.neg
                        ),
                        actual: format!(
                            "|v_e|={} |v_o|={} tot={} core neg={}",
                            d.v_e.lambda(),
                            d.v_o.lambda(),
                            d.core.c().tot() + d.v_e.tot() + d.v_o.tot(),
                            core_profile.neg + d.v_o.lambda()
                        ),
                    }));
                }
                match wsp_recompose(&d) {
                    Ok(back) if back == pair => {}
                    Ok(back) => {
                        return Ok(Some(Witness {
                            location: format!("n={n}, s={s}: insertion round trip"),
                            expected: pair.to_string(),
                            actual: back.to_string(),
                        }));
                    }
                    Err(e) => {
                        return Ok(Some(Witness {
                            location: format!("n={n}, s={s}: insertion round trip"),
                            expected: pair.to_string(),
                            actual: format!("error: {e}"),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_5_1(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::EXACT;
    for s in 0..=p.s_max {
        let len = (s / 2) as usize + 1;
        let inv = pochhammer_series(SeriesVar::U, p.n_max, caps, &LaurentPoly::one(), &q2_poly(), len)
            .inverse()
            .expect("unit constant term");
        for n in 0..=p.n_max {
            let mut sum = LaurentPoly::zero();
            for v in enumerate_words(WordFamily::niw_e(n, s)).expect("bounded family") {
                sum += &LaurentPoly::term(1, Exponents::single(Var::Q, v.tot() as i32));
            }
            if let Some(w) = poly_eq(format!("s={s}, coefficient of u^{n}"), inv.coeff(n), &sum) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn check_5_2(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::EXACT;
    let neg_q = LaurentPoly::term(-1, Exponents::single(Var::Q, 1));
    for s in 0..=p.s_max {
        let len = ((s + 1) / 2) as usize;
        let prod = pochhammer_series(SeriesVar::U, p.n_max, caps, &neg_q, &q2_poly(), len);
        for n in 0..=p.n_max {
            let mut sum = LaurentPoly::zero();
            for v in enumerate_words(WordFamily::dw_o(n, s)).expect("bounded family") {
                sum += &LaurentPoly::term(1, Exponents::single(Var::Q, v.tot() as i32));
            }
            if let Some(w) = poly_eq(format!("s={s}, coefficient of u^{n}"), prod.coeff(n), &sum) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn check_5_3(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::EXACT;
    let order = p.n_max.min(closed::enumeration_cap());
    let q2 = q2_poly();
    let y0 = LaurentPoly::var(Var::Y0);
    let mut qy1z = Exponents::single(Var::Q, 1);
    qy1z.0[Var::Y1 as usize] = 1;
    qy1z.0[Var::Z as usize] = 1;
    for s in 0..=p.s_max {
        let even_len = (s / 2) as usize + 1;
        let odd_len = ((s + 1) / 2) as usize;
        let full = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| wsp_enum_poly(n, s, true));
        let bare = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| wsp_enum_poly(n, s, false));
        let num1 = pochhammer_series(SeriesVar::U, order, caps, &LaurentPoly::one(), &q2, even_len);
        let den1 = pochhammer_series(SeriesVar::U, order, caps, &y0, &q2, even_len)
            .inverse()
            .expect("unit constant term");
        let num2 =
            pochhammer_series(SeriesVar::U, order, caps, &LaurentPoly::term(-1, qy1z), &q2, odd_len);
        let den2 = pochhammer_series(SeriesVar::U, order, caps, &neg_qz(), &q2, odd_len)
            .inverse()
            .expect("unit constant term");
        let rhs = num1.mul(&den1).mul(&num2).mul(&den2).mul(&bare);
        if let Some(w) = series_eq(&format!("s={s}"), &rhs, &full) {
            return Ok(Some(w));
        }

        // the weight-transport bijection behind the factorization
        for n in 0..=order {
            for pair in enumerate_wsp(n, s, false) {
                let d = macmahon_to_word(&pair);
                let profile = pair.w().stat_profile();
                if d.tot() != pair.c().tot()
                    || d.odd() != profile.neg
                    || d.letters().iter().any(|&x| x > s)
                    || macmahon_from_word(&d) != pair
                {
                    return Ok(Some(Witness {
                        location: format!("n={n}, s={s}: weight transport of {pair}"),
                        expected: pair.to_string(),
                        actual: format!("word {d}"),
                    }));
                }
            }
            let mut words = BTreeSet::new();
            for pair in enumerate_wsp(n, s, false) {
                words.insert(macmahon_to_word(&pair).letters().to_vec());
            }
            let expected_count = (s as usize + 1).pow(n as u32);
            if let Some(w) = count_eq(
                format!("n={n}, s={s}: word image size"),
                expected_count,
                words.len(),
                words.len() == expected_count,
            ) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn check_5_6(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::EXACT;
    let order = p.n_max.min(closed::enumeration_cap());
    for s in 0..=p.s_max {
        let lhs = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| wsp_enum_poly(n, s, false));
        let rhs = geometric_inverse(SeriesVar::U, order, caps, &closed::wsp_column_poly(s));
        if let Some(w) = series_eq(&format!("s={s}"), &rhs, &lhs) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_5_7(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max.min(closed::enumeration_cap()) {
        for s in 0..=p.s_max {
            let lhs = wsp_enum_poly(n, s, false);
            let rhs = closed::wsp_column_poly(s).pow(n as u32);
            if let Some(w) = poly_eq(format!("n={n}, s={s}"), &rhs, &lhs) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn check_5_8(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let t_caps = TruncCaps { q_max: None, t_max: Some(p.s_max as i32) };
    let one_plus_t = &LaurentPoly::one() + &LaurentPoly::var(Var::T);
    let q2 = q2_poly();
    for n in 0..=p.n_max.min(closed::enumeration_cap()) {
        let flag = enum_polynomial(n, GroupFamily::B, StatBundle::Flag)?;
        // (t^2;q^2)_(n+1)^(-1) mod t^(s_max+1): Gaussian binomial columns
        let mut inv_poch = LaurentPoly::zero();
        let mut r = 0usize;
        while 2 * r <= p.s_max as usize {
            let col = gauss_binomial(n + r, r, &q2);
            inv_poch += &col.mul_term(&BigInt::one(), &Exponents::single(Var::T, 2 * r as i32));
            r += 1;
        }
        let folded = (&(&flag * &one_plus_t) * &inv_poch).truncated(&t_caps);
        for s in 0..=p.s_max {
            let slice = folded.coeff_of_var_pow(Var::T, s as i32);
            let enumerated = wsp_enum_poly(n, s, true);
            if let Some(w) = poly_eq(
                format!("n={n}: t^{s} slice vs weighted enumeration"),
                &enumerated,
                &slice,
            ) {
                return Ok(Some(w));
            }
        }
    }

    // the descent-weight pairing behind the fold
    for n in 0..=p.n_max.min(3) {
        for s in 0..=p.s_max.min(4) {
            for pair in enumerate_wsp(n, s, false) {
                let (b, w) = fdes_pairing(&pair).expect("pairing is total on valid pairs");
                let profile = w.stat_profile();
                let c1 = pair.c().letters().first().copied().unwrap_or(0);
                let b1 = b.letters().first().copied().unwrap_or(0);
                let head_ok = n == 0 || 2 * b1 + profile.fdes as u32 == c1;
                let tot_ok = 2 * b.tot() + profile.fmaj as u64 == pair.c().tot();
                let back = fdes_pairing_inverse(&b, &w);
                if !head_ok || !tot_ok || back.as_ref() != Ok(&pair) {
                    return Ok(Some(Witness {
                        location: format!("n={n}, s={s}: descent-weight pairing of {pair}"),
                        expected: pair.to_string(),
                        actual: format!("b={b}, fdes={}, fmaj={}", profile.fdes, profile.fmaj),
                    }));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Checkers: section 6
// ---------------------------------------------------------------------------

fn check_6_2_3(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let cap = closed::family_cap(GroupFamily::B);
    if p.n_max > cap {
        return Err(EnumError::CapExceeded { n: p.n_max, cap }.into());
    }
    for n in 0..=p.n_max {
        for w in perm::enumerate(n, SubsetClass::B) {
            let bar = w.bar();
            let a = w.stat_profile();
            let b = bar.stat_profile();
            let involution = bar.bar() == w;
            let fmaj_ok = a.fmaj + b.fmaj == n * n;
            let neg_ok = a.neg + b.neg == n;
            let fix_swap = a.fix_plus == b.fix_minus && a.fix_minus == b.fix_plus;
            if !(involution && fmaj_ok && neg_ok && fix_swap) {
                return Ok(Some(Witness {
                    location: format!("n={n}, w={w}: negation involution"),
                    expected: format!("fmaj sum {}, neg sum {n}, fix exchanged", n * n),
                    actual: format!(
                        "fmaj {}+{}, neg {}+{}, fix+ {}/{} fix- {}/{}",
                        a.fmaj, b.fmaj, a.neg, b.neg, a.fix_plus, b.fix_minus, a.fix_minus,
                        b.fix_plus
                    ),
                }));
            }
        }
    }
    Ok(None)
}

fn check_6_5(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let poly = enum_polynomial(n, GroupFamily::B, StatBundle::FmajFix)?;
        let dual = poly
            .substitute(Var::Q, &Replacement::var_pow(Var::Q, -1))
            .expect("monomial substitution")
            .substitute(Var::Z, &Replacement::var_pow(Var::Z, -1))
            .expect("monomial substitution")
            .swap_vars(Var::Y0, Var::Y1);
        let mut prefactor = Exponents::single(Var::Q, (n * n) as i32);
        prefactor.0[Var::Z as usize] = n as i32;
        let transformed = dual.mul_term(&BigInt::one(), &prefactor);
        if let Some(w) = poly_eq(format!("n={n}"), &poly, &transformed) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_6(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::q_adic(p.q_order);
    let order = p.u_order;
    let q2 = q2_poly();
    let mut lhs_coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let dn = enum_polynomial(n, GroupFamily::DB, StatBundle::FmajNeg)?;
        let denom = q_pochhammer(&q2, &q2, n)
            .inverse_capped(&caps)
            .expect("(q^2;q^2)_n is invertible q-adically");
        lhs_coeffs.push((&dn * &denom).truncated(&caps));
    }
    let lhs = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| lhs_coeffs[n].clone());
    let geom_coeff = (&closed::one_plus_qz() * &inv_one_minus_q(&caps, 2)).truncated(&caps);
    let geom = geometric_inverse(SeriesVar::U, order, caps, &geom_coeff);
    let rhs = geom.mul(
        &pochhammer_series_infinite(SeriesVar::U, order, caps, &LaurentPoly::one(), &q2)
            .expect("ratio q^2 truncates"),
    );
    Ok(series_eq("signed derangement factorial series", &lhs, &rhs))
}

fn check_6_7(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let q2 = q2_poly();
    let mut dnb = Vec::with_capacity(p.n_max + 1);
    for k in 0..=p.n_max {
        dnb.push(enum_polynomial(k, GroupFamily::DB, StatBundle::FmajNeg)?);
    }
    for n in 0..=p.n_max {
        let lhs = &closed::q_power_factorial(2, n) * &closed::one_plus_qz().pow(n as u32);
        let mut rhs = LaurentPoly::zero();
        for (k, dk) in dnb.iter().enumerate().take(n + 1) {
            rhs += &(&gauss_binomial(n, k, &q2) * dk);
        }
        if let Some(w) = poly_eq(format!("n={n}"), &lhs, &rhs) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_8(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let enumerated = enum_polynomial(n, GroupFamily::DB, StatBundle::FmajNeg)?;
        let closed = closed::signed_derangement_poly_explicit(n);
        if let Some(w) = poly_eq(format!("n={n}"), &closed, &enumerated) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_9(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let mut dnb = Vec::with_capacity(p.n_max + 1);
    for k in 0..=p.n_max {
        dnb.push(enum_polynomial(k, GroupFamily::DB, StatBundle::FmajNeg)?);
    }
    if let Some(w) = poly_eq("n=0".into(), &LaurentPoly::one(), &dnb[0]) {
        return Ok(Some(w));
    }
    let opz = closed::one_plus_qz();
    for n in 0..p.n_max {
        let mut rhs = &(&opz * &closed::geometric_sum(&q2_poly(), n + 1)) * &dnb[n];
        rhs += &LaurentPoly::term(
            if n % 2 == 0 { -1 } else { 1 },
            Exponents::single(Var::Q, (n * (n + 1)) as i32),
        );
        if let Some(w) = poly_eq(format!("step n={} -> n={}", n, n + 1), &rhs, &dnb[n + 1]) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_10(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let mut dnb = Vec::with_capacity(p.n_max + 1);
    for k in 0..=p.n_max {
        dnb.push(enum_polynomial(k, GroupFamily::DB, StatBundle::FmajNeg)?);
    }
    if let Some(w) = poly_eq("n=0".into(), &LaurentPoly::one(), &dnb[0]) {
        return Ok(Some(w));
    }
    if p.n_max >= 1 {
        let qz = LaurentPoly::term(1, {
            let mut e = Exponents::single(Var::Q, 1);
            e.0[Var::Z as usize] = 1;
            e
        });
        if let Some(w) = poly_eq("n=1".into(), &qz, &dnb[1]) {
            return Ok(Some(w));
        }
    }
    let opz = closed::one_plus_qz();
    let q2 = q2_poly();
    for n in 1..p.n_max {
        let mut coeff = closed::geometric_sum(&q2, n);
        let mut qz_geom = closed::geometric_sum(&q2, n + 1);
        qz_geom = qz_geom.mul_term(&BigInt::one(), &{
            let mut e = Exponents::single(Var::Q, 1);
            e.0[Var::Z as usize] = 1;
            e
        });
        coeff += &qz_geom;
        let mut rhs = &coeff * &dnb[n];
        let tail = (&opz * &closed::geometric_sum(&q2, n))
            .mul_term(&BigInt::one(), &Exponents::single(Var::Q, 2 * n as i32));
        rhs += &(&tail * &dnb[n - 1]);
        if let Some(w) = poly_eq(format!("step n={} -> n={}", n, n + 1), &rhs, &dnb[n + 1]) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_12(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::q_adic(p.q_order);
    let order = p.u_order;
    let q = q_poly();
    let mut lhs_coeffs = Vec::with_capacity(order + 1);
    let mut rhs_coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let kn = enum_polynomial(n, GroupFamily::KB, StatBundle::LengthPixNeg)?;
        let denom = (&q_pochhammer(&neg_qz(), &q, n) * &q_pochhammer(&q, &q, n))
            .inverse_capped(&caps)
            .expect("Pochhammer blocks are invertible q-adically");
        lhs_coeffs.push((&kn * &denom).truncated(&caps));
        let mut e = Exponents::single(Var::Q, ((n + 1) * n / 2) as i32);
        e.0[Var::Y1 as usize] = n as i32;
        e.0[Var::Z as usize] = n as i32;
        rhs_coeffs.push((&LaurentPoly::term(1, e) * &denom).truncated(&caps));
    }
    let lhs = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| lhs_coeffs[n].clone());
    let inner = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| rhs_coeffs[n].clone());
    let geom = geometric_inverse(SeriesVar::U, order, caps, &inv_one_minus_q(&caps, 1));
    let u_poch = pochhammer_series_infinite(SeriesVar::U, order, caps, &LaurentPoly::one(), &q)
        .expect("ratio q truncates");
    let rhs = geom.mul(&u_poch).mul(&inner);
    Ok(series_eq("signed desarrangement factorial series", &lhs, &rhs))
}

fn check_6_14(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::qt_adic(p.q_order, p.t_order as i32);
    let order = p.u_order;
    let q = q_poly();
    let t = LaurentPoly::var(Var::T);
    let mut lhs_coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let an = enum_polynomial(n, GroupFamily::S, StatBundle::DesMajFix)?;
        let denom = q_pochhammer(&t, &q, n + 1)
            .inverse_capped(&caps)
            .expect("(t;q)_(n+1) is invertible under joint caps");
        lhs_coeffs.push((&an * &denom).truncated(&caps));
    }
    let lhs = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| lhs_coeffs[n].clone());

    let y0 = LaurentPoly::var(Var::Y0);
    let mut rhs = TruncSeries::zero(SeriesVar::U, order, caps);
    for s in 0..=p.t_order {
        let geom = geometric_inverse(SeriesVar::U, order, caps, &closed::q_integer(s + 1));
        let num = pochhammer_series(SeriesVar::U, order, caps, &LaurentPoly::one(), &q, s + 1);
        let den = pochhammer_series(SeriesVar::U, order, caps, &y0, &q, s + 1)
            .inverse()
            .expect("unit constant term");
        let block =
            geom.mul(&num).mul(&den).mul_poly(&LaurentPoly::var_pow(Var::T, s as i32));
        rhs = rhs.add(&block);
    }
    Ok(series_eq("descent/major/fixed factorial series", &lhs, &rhs))
}

fn check_6_15(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::q_adic(p.q_order);
    let order = p.u_order;
    let q = q_poly();
    let mut lhs_coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let an = enum_polynomial(n, GroupFamily::S, StatBundle::MajFix)?;
        let denom = q_pochhammer(&q, &q, n)
            .inverse_capped(&caps)
            .expect("(q;q)_n is invertible q-adically");
        lhs_coeffs.push((&an * &denom).truncated(&caps));
    }
    let lhs = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| lhs_coeffs[n].clone());
    let geom = geometric_inverse(SeriesVar::U, order, caps, &inv_one_minus_q(&caps, 1));
    let num = pochhammer_series_infinite(SeriesVar::U, order, caps, &LaurentPoly::one(), &q)
        .expect("ratio q truncates");
    let den =
        pochhammer_series_infinite(SeriesVar::U, order, caps, &LaurentPoly::var(Var::Y0), &q)
            .expect("ratio q truncates")
            .inverse()
            .expect("unit constant term");
    let rhs = geom.mul(&num).mul(&den);
    Ok(series_eq("major/fixed factorial series", &lhs, &rhs))
}

fn check_6_16(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let q = q_poly();
    let mut dq = Vec::with_capacity(p.n_max + 1);
    for k in 0..=p.n_max {
        dq.push(enum_polynomial(k, GroupFamily::D, StatBundle::Maj)?);
    }
    if let Some(w) = poly_eq("n=0".into(), &LaurentPoly::one(), &dq[0]) {
        return Ok(Some(w));
    }
    for n in 1..=p.n_max {
        let lhs = closed::q_power_factorial(1, n);
        let mut rhs = LaurentPoly::zero();
        for (k, dk) in dq.iter().enumerate().take(n + 1) {
            rhs += &(&gauss_binomial(n, k, &q) * dk);
        }
        if let Some(w) = poly_eq(format!("n={n}"), &lhs, &rhs) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_17(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let caps = TruncCaps::q_adic(p.q_order);
    let order = p.u_order;
    let q = q_poly();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let dn = enum_polynomial(n, GroupFamily::D, StatBundle::Maj)?;
        let denom = q_pochhammer(&q, &q, n)
            .inverse_capped(&caps)
            .expect("(q;q)_n is invertible q-adically");
        coeffs.push((&dn * &denom).truncated(&caps));
    }
    let series = TruncSeries::from_fn(SeriesVar::U, order, caps, |n| coeffs[n].clone());
    let lhs = e_q(SeriesVar::U, order, caps).expect("q-adic caps set").mul(&series);
    let rhs = geometric_inverse(SeriesVar::U, order, caps, &inv_one_minus_q(&caps, 1));
    Ok(series_eq("derangement major series times the q-exponential", &lhs, &rhs))
}

fn check_6_18(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let enumerated = enum_polynomial(n, GroupFamily::D, StatBundle::Maj)?;
        let closed = closed::derangement_maj_explicit(n);
        if let Some(w) = poly_eq(format!("n={n}"), &closed, &enumerated) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_19(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let cap = closed::family_cap(GroupFamily::D);
    if p.n_max > cap {
        return Err(EnumError::CapExceeded { n: p.n_max, cap }.into());
    }
    let by_recurrence = derangement_numbers(p.n_max);
    let by_troughs = derangement_numbers_explicit(p.n_max);
    for n in 0..=p.n_max {
        if let Some(w) = count_eq(
            format!("n={n}: trough expansion vs recurrence"),
            &by_recurrence[n],
            &by_troughs[n],
            by_recurrence[n] == by_troughs[n],
        ) {
            return Ok(Some(w));
        }
        let counted = BigInt::from(perm::enumerate(n, SubsetClass::D).count() as u64);
        if let Some(w) = count_eq(
            format!("n={n}: trough expansion vs derangement count"),
            &by_troughs[n],
            &counted,
            by_troughs[n] == counted,
        ) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_22(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let by_maj = enum_polynomial(n, GroupFamily::S, StatBundle::MajFix)?;
        let by_inv = enum_polynomial(n, GroupFamily::S, StatBundle::InvPix)?;
        if let Some(w) = poly_eq(
            format!("n={n}: major/fixed vs inversion/pixed"),
            &by_maj,
            &by_inv,
        ) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_24(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let by_maj = enum_polynomial(n, GroupFamily::S, StatBundle::MajFix)?;
        let by_imaj = enum_polynomial(n, GroupFamily::S, StatBundle::ImajPix)?;
        if let Some(w) = poly_eq(
            format!("n={n}: inverse-major/pixed vs major/fixed"),
            &by_maj,
            &by_imaj,
        ) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_25(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let kn = enum_polynomial(n, GroupFamily::K, StatBundle::Inv)?;
        let dn = enum_polynomial(n, GroupFamily::D, StatBundle::Maj)?;
        let an0 = enum_polynomial(n, GroupFamily::S, StatBundle::MajFix)?
            .substitute(Var::Y0, &Replacement::Zero)
            .expect("zero substitution");
        let inv_an0 = enum_polynomial(n, GroupFamily::S, StatBundle::InvPix)?
            .substitute(Var::Y0, &Replacement::Zero)
            .expect("zero substitution");
        for (label, other) in
            [("major on derangements", &dn), ("fixed-free major", &an0), ("pixed-free inversions", &inv_an0)]
        {
            if let Some(w) = poly_eq(format!("n={n}: inversions on desarrangements vs {label}"), other, &kn)
            {
                return Ok(Some(w));
            }
        }

        // per-trough refinement: bucket desarrangements by the length of
        // their initial decreasing run
        let mut buckets: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for w in perm::enumerate(n, SubsetClass::K) {
            let run = initial_run(w.letters());
            let inv = w.stat_profile().inv;
            *buckets.entry(run).or_insert_with(LaurentPoly::zero) +=
                &LaurentPoly::term(1, Exponents::single(Var::Q, inv as i32));
        }
        let mut k = 1usize;
        while 2 * k <= n.saturating_sub(1) {
            let bucket = buckets.remove(&(2 * k)).unwrap_or_else(LaurentPoly::zero);
            let term = closed::desarrangement_trough_term(n, k);
            if let Some(w) = poly_eq(format!("n={n}: trough at {}", 2 * k), &term, &bucket) {
                return Ok(Some(w));
            }
            k += 1;
        }
        if n % 2 == 0 {
            let bucket = buckets.remove(&n).unwrap_or_else(LaurentPoly::zero);
            let term = LaurentPoly::term(
                1,
                Exponents::single(Var::Q, (n * n.saturating_sub(1) / 2) as i32),
            );
            if let Some(w) = poly_eq(format!("n={n}: all-decreasing word"), &term, &bucket) {
                return Ok(Some(w));
            }
        }
        if let Some((run, extra)) = buckets.into_iter().next() {
            return Ok(Some(Witness {
                location: format!("n={n}: unexpected trough position {run}"),
                expected: "no desarrangement outside the trough buckets".into(),
                actual: extra.to_string(),
            }));
        }
    }
    Ok(None)
}

fn check_6_26(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    for n in 0..=p.n_max {
        let by_inv = enum_polynomial(n, GroupFamily::K, StatBundle::Inv)?;
        let by_imaj = enum_polynomial(n, GroupFamily::K, StatBundle::Imaj)?;
        if let Some(w) = poly_eq(format!("n={n}: inversions vs inverse major"), &by_inv, &by_imaj)
        {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_6_27(p: &VerifyParams) -> Result<Option<Witness>, VerifyError> {
    let cap = closed::family_cap(GroupFamily::D);
    if p.n_max > cap {
        return Err(EnumError::CapExceeded { n: p.n_max, cap }.into());
    }
    for n in 0..=p.n_max {
        let mut derangement_classes: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        for w in perm::enumerate(n, SubsetClass::D) {
            let lig = w.ligne_stats().expect("plain");
            *derangement_classes.entry(lig.ligne).or_insert(0) += 1;
        }
        let mut desarrangement_classes: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        for w in perm::enumerate(n, SubsetClass::K) {
            let lig = w.ligne_stats().expect("plain");
            *desarrangement_classes.entry(lig.iligne).or_insert(0) += 1;
        }
        if derangement_classes != desarrangement_classes {
            let sets: BTreeSet<BTreeSet<usize>> = derangement_classes
                .keys()
                .chain(desarrangement_classes.keys())
                .cloned()
                .collect();
            for e in sets {
                let a = derangement_classes.get(&e).copied().unwrap_or(0);
                let b = desarrangement_classes.get(&e).copied().unwrap_or(0);
                if a != b {
                    return Ok(Some(Witness {
                        location: format!("n={n}, descent set {e:?}"),
                        expected: a.to_string(),
                        actual: b.to_string(),
                    }));
                }
            }
        }
    }
    Ok(None)
}
