//! Exhaustive statistic-generating polynomials over permutation families,
//! together with the closed forms they are checked against.
//!
//! Everything returned here is an exact [`LaurentPoly`]; the enumeration
//! side is a plain sum of monomials over a family stream, and the closed
//! forms are built from factorials, derangement numbers and q-Pochhammer
//! blocks without a single division (geometric sums are multiplied out
//! instead of dividing by `1 - q`).

use std::env;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::perm::{self, SignedPermutation, SubsetClass};
use crate::qalgebra::poly::{
    gauss_binomial, gauss_multinomial, Exponents, LaurentPoly, Var,
};

/// Largest order enumerated by default for the signed families (`2^n n!`
/// members); the plain families go two steps further (`n!` members).
pub const DEFAULT_SIGNED_CAP: usize = 7;

/// Errors from the enumeration front end.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    /// The requested order would enumerate more members than the
    /// (environment-overridable) desk-scale budget allows.
    #[error("order {n} exceeds the enumeration cap {cap} for this family")]
    CapExceeded { n: usize, cap: usize },
    /// The bundle reads the inverse descent set, which only exists for
    /// permutations without signs.
    #[error("statistic bundle {bundle} is only defined on plain permutation families")]
    PlainStatisticOnSignedFamily { bundle: &'static str },
}

/// The permutation families statistics are summed over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupFamily {
    /// All signed permutations of order `n`.
    B,
    /// All plain permutations (no negative letters).
    S,
    /// Plain derangements.
    D,
    /// Plain desarrangements.
    K,
    /// Signed derangements (no fixed point of either sign).
    DB,
    /// Signed desarrangements (no positive pixed point).
    KB,
}

impl GroupFamily {
    /// Short tag used by the command-line table output.
    pub fn tag(self) -> &'static str {
        match self {
            GroupFamily::B => "B",
            GroupFamily::S => "S",
            GroupFamily::D => "D",
            GroupFamily::K => "K",
            GroupFamily::DB => "DB",
            GroupFamily::KB => "KB",
        }
    }

    /// Families whose members carry no negative letters.
    pub fn is_plain(self) -> bool {
        matches!(self, GroupFamily::S | GroupFamily::D | GroupFamily::K)
    }

    fn stream(self, n: usize) -> Box<dyn Iterator<Item = SignedPermutation>> {
        match self {
            GroupFamily::B => Box::new(perm::enumerate(n, SubsetClass::B)),
            GroupFamily::S => Box::new(perm::plain_permutations(n)),
            GroupFamily::D => Box::new(perm::enumerate(n, SubsetClass::D)),
            GroupFamily::K => Box::new(perm::enumerate(n, SubsetClass::K)),
            GroupFamily::DB => Box::new(perm::enumerate(n, SubsetClass::DB)),
            GroupFamily::KB => Box::new(perm::enumerate(n, SubsetClass::KB)),
        }
    }
}

/// Which monomial a permutation contributes to the generating polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StatBundle {
    /// `Y0^fix+ Y1^fix- Z^neg`.
    Fix,
    /// `Y0^pix+ Y1^pix- Z^neg`.
    Pix,
    /// `q^length Y0^pix+ Y1^pix- Z^neg`.
    PixLength,
    /// `t^fdes q^fmaj Y0^fix+ Y1^fix- Z^neg`.
    Flag,
    /// `q^fmaj Y0^fix+ Y1^fix- Z^neg`.
    FmajFix,
    /// `q^fmaj Z^neg` (signed derangement polynomial).
    FmajNeg,
    /// `q^length Y1^pix- Z^neg` (signed desarrangement polynomial).
    LengthPixNeg,
    /// `t^des q^maj Y0^fix` on plain permutations.
    DesMajFix,
    /// `q^maj Y0^fix` on plain permutations.
    MajFix,
    /// `q^inv Y0^pix+` on plain permutations.
    InvPix,
    /// `q^imaj Y0^pix+` on plain permutations (inverse major index).
    ImajPix,
    /// `q^maj`.
    Maj,
    /// `q^inv`.
    Inv,
    /// `q^imaj` on plain permutations.
    Imaj,
}

impl StatBundle {
    /// Name used in error messages.
    pub fn name(self) -> &'static str {
        match self {
            StatBundle::Fix => "fix",
            StatBundle::Pix => "pix",
            StatBundle::PixLength => "length-pix",
            StatBundle::Flag => "flag",
            StatBundle::FmajFix => "fmaj-fix",
            StatBundle::FmajNeg => "fmaj-neg",
            StatBundle::LengthPixNeg => "length-pix-neg",
            StatBundle::DesMajFix => "des-maj-fix",
            StatBundle::MajFix => "maj-fix",
            StatBundle::InvPix => "inv-pix",
            StatBundle::ImajPix => "imaj-pix",
            StatBundle::Maj => "maj",
            StatBundle::Inv => "inv",
            StatBundle::Imaj => "imaj",
        }
    }

    fn needs_inverse(self) -> bool {
        matches!(self, StatBundle::ImajPix | StatBundle::Imaj)
    }
}

/// Enumeration budget for signed families: the `BPERM_NMAX_CAP`
/// environment variable when it parses as an integer, otherwise
/// [`DEFAULT_SIGNED_CAP`].
pub fn enumeration_cap() -> usize {
    env::var("BPERM_NMAX_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIGNED_CAP)
}

/// Per-family enumeration budget: plain families are a factor `2^n`
/// cheaper, so they are allowed two extra steps.
pub fn family_cap(family: GroupFamily) -> usize {
    let cap = enumeration_cap();
    if family.is_plain() {
        cap + 2
    } else {
        cap
    }
}

/// Sum the bundle's monomial over every member of the family at order `n`.
pub fn enum_polynomial(
    n: usize,
    family: GroupFamily,
    bundle: StatBundle,
) -> Result<LaurentPoly, EnumError> {
    let cap = family_cap(family);
    if n > cap {
        return Err(EnumError::CapExceeded { n, cap });
    }
    if bundle.needs_inverse() && !family.is_plain() {
        return Err(EnumError::PlainStatisticOnSignedFamily { bundle: bundle.name() });
    }
    let mut sum = LaurentPoly::zero();
    for w in family.stream(n) {
        sum += &LaurentPoly::term(1, monomial(bundle, &w));
    }
    Ok(sum)
}

fn monomial(bundle: StatBundle, w: &SignedPermutation) -> Exponents {
    let mut e = Exponents::ZERO;
    let mut set = |var: Var, k: usize| e.0[var as usize] = k as i32;
    let p = w.stat_profile();
    match bundle {
        StatBundle::Fix => {
            set(Var::Y0, p.fix_plus);
            set(Var::Y1, p.fix_minus);
            set(Var::Z, p.neg);
        }
        StatBundle::Pix => {
            set(Var::Y0, p.pix_plus);
            set(Var::Y1, p.pix_minus);
            set(Var::Z, p.neg);
        }
        StatBundle::PixLength => {
            set(Var::Q, p.length);
            set(Var::Y0, p.pix_plus);
            set(Var::Y1, p.pix_minus);
            set(Var::Z, p.neg);
        }
        StatBundle::Flag => {
            set(Var::T, p.fdes);
            set(Var::Q, p.fmaj);
            set(Var::Y0, p.fix_plus);
            set(Var::Y1, p.fix_minus);
            set(Var::Z, p.neg);
        }
        StatBundle::FmajFix => {
            set(Var::Q, p.fmaj);
            set(Var::Y0, p.fix_plus);
            set(Var::Y1, p.fix_minus);
            set(Var::Z, p.neg);
        }
        StatBundle::FmajNeg => {
            set(Var::Q, p.fmaj);
            set(Var::Z, p.neg);
        }
        StatBundle::LengthPixNeg => {
            set(Var::Q, p.length);
            set(Var::Y1, p.pix_minus);
            set(Var::Z, p.neg);
        }
        StatBundle::DesMajFix => {
            set(Var::T, p.des);
            set(Var::Q, p.maj);
            set(Var::Y0, p.fix_plus);
        }
        StatBundle::MajFix => {
            set(Var::Q, p.maj);
            set(Var::Y0, p.fix_plus);
        }
        StatBundle::InvPix => {
            set(Var::Q, p.inv);
            set(Var::Y0, p.pix_plus);
        }
        StatBundle::ImajPix => {
            let lig = w.ligne_stats().expect("plain family member");
            set(Var::Q, lig.imaj);
            set(Var::Y0, p.pix_plus);
        }
        StatBundle::Maj => set(Var::Q, p.maj),
        StatBundle::Inv => set(Var::Q, p.inv),
        StatBundle::Imaj => {
            let lig = w.ligne_stats().expect("plain family member");
            set(Var::Q, lig.imaj);
        }
    }
    e
}

// ---------------------------------------------------------------------------
// Integer building blocks
// ---------------------------------------------------------------------------

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// Falling product `n!/b! = n (n-1) ... (b+1)`.
fn falling_from(n: usize, b: usize) -> BigInt {
    ((b + 1) as u64..=n as u64).map(BigInt::from).product()
}

/// Multinomial coefficient `n! / (parts[0]! parts[1]! ...)`.
fn multinomial(n: usize, parts: &[usize]) -> BigInt {
    debug_assert_eq!(parts.iter().sum::<usize>(), n);
    let mut num = factorial(n);
    for &p in parts {
        num /= factorial(p);
    }
    num
}

/// Derangement numbers `d_0..d_n` by the recurrence
/// `d_n = n d_(n-1) + (-1)^n`.
pub fn derangement_numbers(n_max: usize) -> Vec<BigInt> {
    let mut d = Vec::with_capacity(n_max + 1);
    d.push(BigInt::one());
    for n in 1..=n_max {
        let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let prev: &BigInt = &d[n - 1];
        d.push(prev * BigInt::from(n as u64) + sign);
    }
    d
}

/// Derangement numbers as an explicit sum of positive terms: bucketing
/// desarrangements by their leftmost trough `2k` gives
/// `d_n = Σ_(2 ≤ 2k ≤ n-1) 2k · (2k+2)(2k+3)...(n) + [n even]`.
pub fn derangement_numbers_explicit(n_max: usize) -> Vec<BigInt> {
    (0..=n_max)
        .map(|n| {
            let mut total = if n % 2 == 0 { BigInt::one() } else { BigInt::zero() };
            let mut k = 1;
            while 2 * k <= n.saturating_sub(1) {
                // rising product (2k+2)_(n-2k-1) = (2k+2)(2k+3)...(n)
                let rising: BigInt =
                    ((2 * k + 2) as u64..=n as u64).map(BigInt::from).product();
                total += BigInt::from((2 * k) as u64) * rising;
                k += 1;
            }
            total
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Polynomial building blocks
// ---------------------------------------------------------------------------

/// `1 + base + base^2 + ... + base^(len-1)`.
pub fn geometric_sum(base: &LaurentPoly, len: usize) -> LaurentPoly {
    let mut sum = LaurentPoly::zero();
    let mut pow = LaurentPoly::one();
    for _ in 0..len {
        sum += &pow;
        pow = &pow * base;
    }
    sum
}

/// The q-integer `1 + q + ... + q^(m-1)`.
pub fn q_integer(m: usize) -> LaurentPoly {
    geometric_sum(&LaurentPoly::var(Var::Q), m)
}

/// `(b;b)_n / (1-b)^n` for `b = q^e`, built factor by factor as a product
/// of geometric sums (no division involved).
pub fn q_power_factorial(e: u32, n: usize) -> LaurentPoly {
    let base = LaurentPoly::var_pow(Var::Q, e as i32);
    let mut prod = LaurentPoly::one();
    for r in 1..=n {
        prod = &prod * &geometric_sum(&base, r);
    }
    prod
}

/// Generating polynomial `D_0(q)..D_n(q)` for derangements by the major
/// index, produced by peeling the triangular system
/// `(q;q)_n/(1-q)^n = Σ_k [n over k]_q D_k(q)`.
pub fn derangement_maj_polys(n_max: usize) -> Vec<LaurentPoly> {
    let q = LaurentPoly::var(Var::Q);
    let mut d = Vec::with_capacity(n_max + 1);
    d.push(LaurentPoly::one());
    for n in 1..=n_max {
        let mut rhs = q_power_factorial(1, n);
        for (k, dk) in d.iter().enumerate() {
            rhs -= &(&gauss_binomial(n, k, &q) * dk);
        }
        d.push(rhs);
    }
    d
}

/// Generating polynomial by `maj` for derangements whose desarrangement
/// partner has its leftmost trough at position `2k`:
/// `[2k]_q · Π_(r=0)^(n-2k-2) [2k+2+r]_q · q^C(2k,2)`.
pub fn desarrangement_trough_term(n: usize, k: usize) -> LaurentPoly {
    debug_assert!(2 <= 2 * k && 2 * k <= n.saturating_sub(1));
    let mut prod = q_integer(2 * k);
    for r in 0..(n - 2 * k - 1) {
        prod = &prod * &q_integer(2 * k + 2 + r);
    }
    let choose2 = (2 * k * (2 * k - 1) / 2) as i32;
    prod.mul_term(&BigInt::one(), &Exponents::single(Var::Q, choose2))
}

/// `D_n(q)` as a sum of trough terms with positive coefficients, plus the
/// all-decreasing word `q^C(n,2)` when `n` is even.
pub fn derangement_maj_explicit(n: usize) -> LaurentPoly {
    let mut sum = LaurentPoly::zero();
    let mut k = 1;
    while 2 * k <= n.saturating_sub(1) {
        sum += &desarrangement_trough_term(n, k);
        k += 1;
    }
    if n % 2 == 0 {
        let choose2 = (n * n.saturating_sub(1) / 2) as i32;
        sum += &LaurentPoly::term(1, Exponents::single(Var::Q, choose2));
    }
    sum
}

/// Closed form of the fixed-point generating polynomial read off from its
/// exponential generating function:
/// `Σ_b (n!/b!) (1+Z)^(n-b) (Y0 + Y1 Z - 1 - Z)^b`.
pub fn fix_closed_exponential(n: usize) -> LaurentPoly {
    let one_plus_z = &LaurentPoly::one() + &LaurentPoly::var(Var::Z);
    let core = &(&LaurentPoly::var(Var::Y0) + &(&LaurentPoly::var(Var::Y1) * &LaurentPoly::var(Var::Z)))
        - &one_plus_z;
    let mut sum = LaurentPoly::zero();
    for b in 0..=n {
        let term = &one_plus_z.pow((n - b) as u32) * &core.pow(b as u32);
        sum += &term.scale(&falling_from(n, b));
    }
    sum
}

/// The four-index closed form
/// `Σ_(i+j+k+l=n) C(n; i,j,k,l) Y0^i Y1^j Z^(j+k) d_(k+l)`.
pub fn fix_closed_four_index(n: usize) -> LaurentPoly {
    let d = derangement_numbers(n);
    let mut sum = LaurentPoly::zero();
    for i in 0..=n {
        for j in 0..=n - i {
            for k in 0..=n - i - j {
                let l = n - i - j - k;
                let coeff = multinomial(n, &[i, j, k, l]) * &d[k + l];
                let mut e = Exponents::ZERO;
                e.0[Var::Y0 as usize] = i as i32;
                e.0[Var::Y1 as usize] = j as i32;
                e.0[Var::Z as usize] = (j + k) as i32;
                sum += &LaurentPoly::term_big(coeff, e);
            }
        }
    }
    sum
}

/// The length-graded four-index closed form
/// `Σ [n over i,j,k,l]_q q^C(j+k+1,2) Y0^i (Y1 Z)^j (Z q^i)^k D_(k+l)(q)`.
pub fn pix_length_closed(n: usize) -> LaurentPoly {
    let q = LaurentPoly::var(Var::Q);
    let dq = derangement_maj_polys(n);
    let mut sum = LaurentPoly::zero();
    for i in 0..=n {
        for j in 0..=n - i {
            for k in 0..=n - i - j {
                let l = n - i - j - k;
                let gm = gauss_multinomial(n, &[i, j, k, l], &q);
                let jk = (j + k + 1) * (j + k) / 2;
                let mut e = Exponents::ZERO;
                e.0[Var::Q as usize] = jk as i32 + (i * k) as i32;
                e.0[Var::Y0 as usize] = i as i32;
                e.0[Var::Y1 as usize] = j as i32;
                e.0[Var::Z as usize] = (j + k) as i32;
                let term = gm.mul_term(&BigInt::one(), &e);
                sum += &(&term * &dq[k + l]);
            }
        }
    }
    sum
}

/// The rising product `Π_(r=1)^n (Y0 + q^r Y1 Z)`, the order-`n`
/// coefficient kernel of the length-graded generating function.
pub fn signed_fix_rise_product(n: usize) -> LaurentPoly {
    let y0 = LaurentPoly::var(Var::Y0);
    let mut prod = LaurentPoly::one();
    for r in 1..=n as i32 {
        let mut e = Exponents::single(Var::Q, r);
        e.0[Var::Y1 as usize] = 1;
        e.0[Var::Z as usize] = 1;
        let factor = &y0 + &LaurentPoly::term(1, e);
        prod = &prod * &factor;
    }
    prod
}

/// One weight column of a weighted signed permutation:
/// `Σ_(i=0)^s q^i Z^(i odd)`.
pub fn wsp_column_poly(s: u32) -> LaurentPoly {
    let mut sum = LaurentPoly::zero();
    for i in 0..=s as i32 {
        let mut e = Exponents::single(Var::Q, i);
        if i % 2 == 1 {
            e.0[Var::Z as usize] = 1;
        }
        sum += &LaurentPoly::term(1, e);
    }
    sum
}

/// `1 + qZ` as a polynomial.
pub fn one_plus_qz() -> LaurentPoly {
    let mut e = Exponents::single(Var::Q, 1);
    e.0[Var::Z as usize] = 1;
    &LaurentPoly::one() + &LaurentPoly::term(1, e)
}

/// Signed derangement polynomials `D_0^B..D_n^B` in `(q, Z)` by the
/// first-order recurrence
/// `D_(n+1)^B = (1+qZ)(1 + q^2 + ... + q^(2n)) D_n^B + (-1)^(n+1) q^(n(n+1))`.
pub fn signed_derangement_polys(n_max: usize) -> Vec<LaurentPoly> {
    let q2 = LaurentPoly::var_pow(Var::Q, 2);
    let opz = one_plus_qz();
    let mut d = Vec::with_capacity(n_max + 1);
    d.push(LaurentPoly::one());
    for n in 0..n_max {
        let mut next = &(&opz * &geometric_sum(&q2, n + 1)) * &d[n];
        let tail = LaurentPoly::term(
            if n % 2 == 0 { -1 } else { 1 },
            Exponents::single(Var::Q, (n * (n + 1)) as i32),
        );
        next += &tail;
        d.push(next);
    }
    d
}

/// Signed derangement polynomial as an alternating Gaussian sum:
/// `Σ_k [n over k]_(q^2) (-1)^k q^(k(k-1)) ((q^2;q^2)_(n-k)/(1-q^2)^(n-k)) (1+qZ)^(n-k)`.
pub fn signed_derangement_poly_explicit(n: usize) -> LaurentPoly {
    let q2 = LaurentPoly::var_pow(Var::Q, 2);
    let opz = one_plus_qz();
    let mut sum = LaurentPoly::zero();
    for k in 0..=n {
        let mut term = &gauss_binomial(n, k, &q2) * &q_power_factorial(2, n - k);
        term = &term * &opz.pow((n - k) as u32);
        term = term
            .mul_term(&BigInt::one(), &Exponents::single(Var::Q, (k * k.saturating_sub(1)) as i32));
        if k % 2 == 1 {
            term = term.scale(&-BigInt::one());
        }
        sum += &term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::poly::Replacement;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn derangement_numbers_match_frozen_sequence() {
        let expect: Vec<BigInt> = [1u64, 0, 1, 2, 9, 44, 265, 1854, 14833, 133496]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(derangement_numbers(9), expect);
        assert_eq!(derangement_numbers_explicit(9), expect);
    }

    #[test]
    fn derangement_maj_polys_small_values() {
        let d = derangement_maj_polys(4);
        assert_eq!(d[0], LaurentPoly::one());
        assert!(d[1].is_zero());
        assert_eq!(d[2], p("q"));
        assert_eq!(d[3], p("q + q^2"));
        // n = 4: derangements 2143 (maj 4), 2341 (maj 3), 2413 (maj 2),
        // 3142 (maj 4), 3412 (maj 2), 3421 (maj 5), 4123 (maj 1),
        // 4312 (maj 3), 4321 (maj 6).
        assert_eq!(d[4], p("q + 2*q^2 + 2*q^3 + 2*q^4 + q^5 + q^6"));
    }

    #[test]
    fn trough_expansion_agrees_with_triangular_system() {
        let by_recurrence = derangement_maj_polys(9);
        for n in 0..=9 {
            assert_eq!(derangement_maj_explicit(n), by_recurrence[n], "n={n}");
        }
    }

    #[test]
    fn trough_expansion_at_one_counts_derangements() {
        let ones = [BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one()];
        for n in 0..=9 {
            assert_eq!(
                derangement_maj_explicit(n).eval(&ones).unwrap(),
                derangement_numbers(n)[n],
                "n={n}"
            );
        }
    }

    #[test]
    fn closed_forms_for_fix_distribution_agree() {
        for n in 0..=6 {
            assert_eq!(fix_closed_exponential(n), fix_closed_four_index(n), "n={n}");
        }
    }

    #[test]
    fn enumerated_fix_polynomial_order_two() {
        let b2 = enum_polynomial(2, GroupFamily::B, StatBundle::Fix).unwrap();
        assert_eq!(b2, p("1 + 2*Z + Z^2 + 2*Y0*Y1*Z + Y0^2 + Y1^2*Z^2"));
        assert_eq!(b2, fix_closed_four_index(2));
    }

    #[test]
    fn enumerated_counts_are_group_orders() {
        let ones = [BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one()];
        for n in 0..=5 {
            let poly = enum_polynomial(n, GroupFamily::B, StatBundle::Fix).unwrap();
            let expect = BigInt::from(2u64).pow(n as u32) * factorial(n);
            assert_eq!(poly.eval(&ones).unwrap(), expect, "n={n}");
        }
    }

    #[test]
    fn length_graded_polynomial_small_orders() {
        let l1 = enum_polynomial(1, GroupFamily::B, StatBundle::PixLength).unwrap();
        assert_eq!(l1, p("Y0 + q*Y1*Z"));
        assert_eq!(l1, signed_fix_rise_product(1));
        assert_eq!(pix_length_closed(1), l1);
        // order 2 by hand: 12 -> Y0^2; 21 -> q; -1 2 -> letters (-1,2):
        // the factorizations and lengths are exercised exhaustively in the
        // identity checkers, so only the closed form is pinned here.
        assert_eq!(
            pix_length_closed(2),
            enum_polynomial(2, GroupFamily::B, StatBundle::PixLength).unwrap()
        );
    }

    #[test]
    fn rise_product_is_q_to_one_specialization_free() {
        // at q = 1 the rise product collapses to (Y0 + Y1 Z)^n
        let a3 = signed_fix_rise_product(3).substitute(Var::Q, &Replacement::one()).unwrap();
        let y0 = LaurentPoly::var(Var::Y0);
        let y1z = &LaurentPoly::var(Var::Y1) * &LaurentPoly::var(Var::Z);
        assert_eq!(a3, (&y0 + &y1z).pow(3));
    }

    #[test]
    fn length_graded_closed_form_tends_to_fix_form_at_q_one() {
        for n in 0..=5 {
            let collapsed = pix_length_closed(n).substitute(Var::Q, &Replacement::one()).unwrap();
            assert_eq!(collapsed, fix_closed_four_index(n), "n={n}");
        }
    }

    #[test]
    fn signed_derangement_polys_agree_and_start_correctly() {
        let by_rec = signed_derangement_polys(5);
        assert_eq!(by_rec[0], LaurentPoly::one());
        assert_eq!(by_rec[1], p("q*Z"));
        for n in 0..=5 {
            assert_eq!(signed_derangement_poly_explicit(n), by_rec[n], "n={n}");
        }
    }

    #[test]
    fn flag_enum_specializes_to_fmaj_enum_and_symmetric_halving() {
        for n in 0..=3 {
            let flag = enum_polynomial(n, GroupFamily::B, StatBundle::Flag).unwrap();
            let fmaj = enum_polynomial(n, GroupFamily::B, StatBundle::FmajFix).unwrap();
            assert_eq!(flag.substitute(Var::T, &Replacement::one()).unwrap(), fmaj, "n={n}");
            // Z = 0, Y1 = 0 leaves plain permutations with doubled t,q
            // exponents; halving them gives the descent/major polynomial.
            let plain = flag
                .substitute(Var::Z, &Replacement::Zero)
                .unwrap()
                .substitute(Var::Y1, &Replacement::Zero)
                .unwrap()
                .halve_exponents(Var::T)
                .unwrap()
                .halve_exponents(Var::Q)
                .unwrap();
            let a = enum_polynomial(n, GroupFamily::S, StatBundle::DesMajFix).unwrap();
            assert_eq!(plain, a, "n={n}");
        }
    }

    #[test]
    fn wsp_column_poly_matches_hand_expansion() {
        assert_eq!(wsp_column_poly(0), LaurentPoly::one());
        assert_eq!(wsp_column_poly(3), p("1 + q*Z + q^2 + q^3*Z"));
    }

    #[test]
    fn cap_is_enforced() {
        let cap = family_cap(GroupFamily::B);
        let err = enum_polynomial(cap + 1, GroupFamily::B, StatBundle::Fix).unwrap_err();
        assert_eq!(err, EnumError::CapExceeded { n: cap + 1, cap });
        assert_eq!(family_cap(GroupFamily::D), cap + 2);
    }

    #[test]
    fn inverse_statistics_require_plain_families() {
        let err = enum_polynomial(2, GroupFamily::B, StatBundle::Imaj).unwrap_err();
        assert_eq!(err, EnumError::PlainStatisticOnSignedFamily { bundle: "imaj" });
    }

    #[test]
    fn family_tags_and_streams() {
        assert_eq!(GroupFamily::DB.tag(), "DB");
        assert!(GroupFamily::K.is_plain());
        assert!(!GroupFamily::KB.is_plain());
        assert_eq!(GroupFamily::S.stream(3).count(), 6);
        assert_eq!(GroupFamily::B.stream(3).count(), 48);
        assert_eq!(GroupFamily::KB.stream(2).count(), 5);
    }
}
