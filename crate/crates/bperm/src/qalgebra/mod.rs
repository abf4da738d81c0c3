//! Exact polynomial and truncated-series arithmetic.
//!
//! Two layers:
//!
//! * [`poly`] — sparse multivariate Laurent polynomials over the fixed
//!   variable set `{t, q, Y0, Y1, Z}` with `BigInt` coefficients.  Signed
//!   exponents are permitted, so substitutions such as `q -> q^-1` or
//!   `Z -> Z^-1` stay inside the ring.
//! * [`series`] — power series in one distinguished variable (usually `u`)
//!   truncated at a fixed order, whose coefficients are Laurent
//!   polynomials, optionally themselves truncated `q`-adically and/or
//!   `t`-adically.  This is the regime used for identities that involve
//!   infinite products or factors like `1/(1-q)`.

pub mod poly;
pub mod series;

pub use poly::{gauss_binomial, gauss_multinomial, q_pochhammer, LaurentPoly, PolyError, TruncCaps, Var};
pub use series::{SeriesVar, TruncSeries};
