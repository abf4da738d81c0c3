//! Statistic-generating polynomials, closed forms, bijections and a
//! registry of named identity checkers.
//!
//! * [`closed`] — exhaustive statistic-generating polynomials over the
//!   permutation families, plus the closed-form counterparts they are
//!   checked against (derangement numbers and their q-analogues, the
//!   four-index fixed/pixed sums, Pochhammer products);
//! * [`biject`] — the cycle-splitting bijection from derangements to
//!   desarrangements and its signed extension matching fixed-point data to
//!   pixed-point data;
//! * [`verify`] — one named checker per identity, all returning a uniform
//!   machine-readable report.

pub mod biject;
pub mod closed;
pub mod verify;

pub use biject::{desarmenien_f, desarmenien_f_inverse, phi, phi_inverse, BijectError};
pub use closed::{
    derangement_maj_polys, derangement_numbers, enum_polynomial, enumeration_cap, EnumError,
    GroupFamily, StatBundle,
};
pub use verify::{registry, verify, IdentityId, VerifyParams, VerifyReport, VerifyStatus, Witness};
