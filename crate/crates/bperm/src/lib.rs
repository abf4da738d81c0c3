//! Exact combinatorics of signed permutations (the hyperoctahedral group
//! `B_n`), together with the polynomial algebra needed to state and verify
//! the generating-function identities satisfied by their statistics.
//!
//! Everything here is exact: integers are arbitrary precision, polynomials
//! are sparse Laurent polynomials over `t, q, Y0, Y1, Z`, and power series
//! are explicitly truncated.  No floating point, no rationals.
//!
//! The crate is organised around five concerns:
//!
//! * [`perm`] — signed permutations, their statistics (fixed and pixed
//!   points, inversions, length, descents, flag descent and major indices)
//!   and exhaustive lexicographic enumeration of the classical subfamilies
//!   (derangements, desarrangements and their signed analogues);
//! * [`words`] — the small integer-word families used as weight carriers:
//!   nonincreasing words, their even-letter variant, and strictly
//!   decreasing odd words;
//! * [`weighted`] — weighted signed permutations: validation, the
//!   fixed-point removal/insertion decomposition, the word encoding, and
//!   the descent-weight pairing;
//! * [`qalgebra`] — the exact polynomial and truncated-series engine:
//!   q-Pochhammer products, Gaussian multinomials, q-exponentials and
//!   geometric inverses;
//! * [`identities`] — statistic-generating polynomials, closed forms, the
//!   fixed-point/pixed-point bijections, and a registry of named identity
//!   checkers with a uniform machine-readable report format.

pub mod identities;
pub mod perm;
pub mod qalgebra;
pub mod weighted;
pub mod words;

pub use identities::verify::{
    registry, verify, IdentityId, VerifyError, VerifyParams, VerifyReport, VerifyStatus, Witness,
};
pub use perm::{PixedFactorization, SignedPermutation, StatProfile, SubsetClass};
pub use qalgebra::poly::{LaurentPoly, Var};
pub use qalgebra::series::TruncSeries;
pub use weighted::WeightedSignedPermutation;
pub use words::{IntWord, WordFamily};
