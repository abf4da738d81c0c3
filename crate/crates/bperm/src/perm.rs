//! Signed permutations and their statistics.
//!
//! A signed permutation of order `n` is a word `x_1 x_2 … x_n` over the
//! letters `{-n, …, -1, 1, …, n}` in which every absolute value `1..=n`
//! appears exactly once.  Letters compare in the natural integer order
//! (`-5 < -3 < 1 < 4`), and that order drives every statistic defined
//! here:
//!
//! * `neg` — number of negative letters; `Neg` the set of them;
//! * `fix+` / `fix-` — positive fixed points (`x_i = i`) and negative
//!   fixed points (`x_i = -i`), the latter recorded as negative letters;
//! * `inv` — inversions; `length` — `inv` plus the sum of the absolute
//!   values of the negative letters;
//! * `des`, `maj` — descents and the major index;
//! * `fdes = 2*des + [x_1 < 0]`, `fmaj = 2*maj + neg` — the flag variants;
//! * `pix+` / `pix-` — the letters of the increasing positive and negative
//!   prefixes of the pixed factorization (below).
//!
//! The *pixed factorization* splits `w` as `w^- w^+ w^d`, where `w^d` is
//! the longest right factor that is a desarrangement (a word whose maximal
//! initial strictly decreasing run has even length at least two; the empty
//! word counts, a one-letter word never does), and the remaining prefix —
//! necessarily increasing — splits into its negative part `w^-` and
//! positive part `w^+`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// Errors for signed-permutation construction and statistics.
///
/// Indices in error values are 1-based, matching word positions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    /// A letter was zero.
    #[error("letter at position {index} is zero")]
    ZeroLetter { index: usize },
    /// Two letters share an absolute value; the index is the second one.
    #[error("letter at position {index} repeats an absolute value")]
    RepeatedAbsoluteValue { index: usize },
    /// A letter's absolute value exceeds the word length.
    #[error("letter at position {index} is out of range")]
    OutOfRange { index: usize },
    /// The prefix in front of the longest desarrangement right factor was
    /// not an increasing word.  Cannot occur for a valid signed
    /// permutation; seeing it signals an implementation bug.
    #[error("pixed factorization produced a non-increasing prefix")]
    MalformedPrefix,
    /// An operation defined only for plain (all-positive) permutations was
    /// applied to a word with a negative letter.
    #[error("word has a negative letter at position {index}; plain permutation required")]
    NotPlain { index: usize },
    /// Text input could not be parsed as a signed permutation.
    #[error("cannot parse signed permutation: {0}")]
    Parse(String),
}

/// A signed permutation, stored as its letter sequence.
///
/// The canonical text encoding is the comma-separated letter list with no
/// spaces (`"3,-2,8,4,5,-1,9,-6,7"`); the empty string encodes the empty
/// permutation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    letters: Vec<i32>,
}

impl SignedPermutation {
    /// Validate a letter sequence and wrap it.
    pub fn new(letters: Vec<i32>) -> Result<SignedPermutation, PermError> {
        let n = letters.len();
        let mut seen = vec![false; n + 1];
        for (i, &x) in letters.iter().enumerate() {
            if x == 0 {
                return Err(PermError::ZeroLetter { index: i + 1 });
            }
            let a = x.unsigned_abs() as usize;
            if a > n {
                return Err(PermError::OutOfRange { index: i + 1 });
            }
            if seen[a] {
                return Err(PermError::RepeatedAbsoluteValue { index: i + 1 });
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { letters })
    }

    /// Construct without validation (used by the enumerators, which produce
    /// valid words by construction).
    pub(crate) fn from_vec_unchecked(letters: Vec<i32>) -> SignedPermutation {
        debug_assert!(SignedPermutation::new(letters.clone()).is_ok());
        SignedPermutation { letters }
    }

    /// The identity permutation `1 2 … n`.
    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation { letters: (1..=n as i32).collect() }
    }

    /// Order of the permutation.
    pub fn n(&self) -> usize {
        self.letters.len()
    }

    /// The letter sequence.
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// True when every letter is positive.
    pub fn is_plain(&self) -> bool {
        self.letters.iter().all(|&x| x > 0)
    }

    /// The bar involution: negate every letter in place.
    pub fn bar(&self) -> SignedPermutation {
        SignedPermutation { letters: self.letters.iter().map(|&x| -x).collect() }
    }

    /// Group inverse, defined here for plain permutations only.
    pub fn plain_inverse(&self) -> Result<SignedPermutation, PermError> {
        self.check_plain()?;
        let n = self.n();
        let mut inv = vec![0i32; n];
        for (i, &x) in self.letters.iter().enumerate() {
            inv[(x - 1) as usize] = (i + 1) as i32;
        }
        Ok(SignedPermutation { letters: inv })
    }

    fn check_plain(&self) -> Result<(), PermError> {
        if let Some(i) = self.letters.iter().position(|&x| x < 0) {
            return Err(PermError::NotPlain { index: i + 1 });
        }
        Ok(())
    }

    /// Pixed factorization `w = w^- w^+ w^d`.
    pub fn pixed_factorization(&self) -> Result<PixedFactorization, PermError> {
        let n = self.n();
        let mut start = n; // empty right factor by default
        for s in 0..n {
            if is_desarrangement(&self.letters[s..]) {
                start = s;
                break;
            }
        }
        let prefix = &self.letters[..start];
        if prefix.windows(2).any(|p| p[0] >= p[1]) {
            return Err(PermError::MalformedPrefix);
        }
        let split = prefix.iter().position(|&x| x > 0).unwrap_or(prefix.len());
        Ok(PixedFactorization {
            w_minus: prefix[..split].to_vec(),
            w_plus: prefix[split..].to_vec(),
            w_d: self.letters[start..].to_vec(),
        })
    }

    /// Compute the full statistic profile.
    pub fn stat_profile(&self) -> StatProfile {
        let n = self.n();
        let letters = &self.letters;

        let neg_set: BTreeSet<i32> = letters.iter().copied().filter(|&x| x < 0).collect();
        let mut fix_plus_set = BTreeSet::new();
        let mut fix_minus_set = BTreeSet::new();
        for (i, &x) in letters.iter().enumerate() {
            let pos = (i + 1) as i32;
            if x == pos {
                fix_plus_set.insert(x);
            } else if x == -pos {
                fix_minus_set.insert(x);
            }
        }

        let mut inv = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                if letters[i] > letters[j] {
                    inv += 1;
                }
            }
        }
        let length = inv + neg_set.iter().map(|&x| x.unsigned_abs() as usize).sum::<usize>();

        let mut des = 0usize;
        let mut maj = 0usize;
        for i in 0..n.saturating_sub(1) {
            if letters[i] > letters[i + 1] {
                des += 1;
                maj += i + 1;
            }
        }
        let first_negative = n > 0 && letters[0] < 0;
        let fdes = 2 * des + usize::from(first_negative);
        let fmaj = 2 * maj + neg_set.len();

        let pixed = self
            .pixed_factorization()
            .expect("valid signed permutations always factorize");
        let pix_plus_set: BTreeSet<i32> = pixed.w_plus.iter().copied().collect();
        let pix_minus_set: BTreeSet<i32> = pixed.w_minus.iter().copied().collect();

        StatProfile {
            n,
            neg: neg_set.len(),
            neg_set,
            fix_plus: fix_plus_set.len(),
            fix_plus_set,
            fix_minus: fix_minus_set.len(),
            fix_minus_set,
            inv,
            length,
            des,
            maj,
            fdes,
            fmaj,
            pix_plus: pix_plus_set.len(),
            pix_plus_set,
            pix_minus: pix_minus_set.len(),
            pix_minus_set,
        }
    }

    /// Descent data of a plain permutation and of its inverse.
    pub fn ligne_stats(&self) -> Result<LigneStats, PermError> {
        self.check_plain()?;
        let inverse = self.plain_inverse()?;
        let ligne = descent_set(&self.letters);
        let iligne = descent_set(&inverse.letters);
        let maj = ligne.iter().sum();
        let imaj = iligne.iter().sum();
        Ok(LigneStats { ligne, iligne, maj, imaj })
    }
}

fn descent_set(letters: &[i32]) -> BTreeSet<usize> {
    letters
        .windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i + 1)
        .collect()
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_letters(&self.letters))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", format_letters(&self.letters))
    }
}

/// Canonical comma-separated encoding of a letter sequence.
pub fn format_letters(letters: &[i32]) -> String {
    letters
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parse a comma-separated letter list; the empty string is the empty word.
pub fn parse_letters(s: &str) -> Result<Vec<i32>, PermError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i32>()
                .map_err(|_| PermError::Parse(format!("bad letter {:?}", tok.trim())))
        })
        .collect()
}

impl FromStr for SignedPermutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SignedPermutation::new(parse_letters(s)?)
    }
}

/// The pixed factorization of a signed permutation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PixedFactorization {
    /// Increasing word of negative letters.
    pub w_minus: Vec<i32>,
    /// Increasing word of positive letters.
    pub w_plus: Vec<i32>,
    /// Longest desarrangement right factor.
    pub w_d: Vec<i32>,
}

impl PixedFactorization {
    /// Concatenation `w^- w^+ w^d`, recovering the original word.
    pub fn concat(&self) -> Vec<i32> {
        let mut out = self.w_minus.clone();
        out.extend_from_slice(&self.w_plus);
        out.extend_from_slice(&self.w_d);
        out
    }
}

impl fmt::Display for PixedFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |w: &[i32]| if w.is_empty() { "e".to_string() } else { format_letters(w) };
        write!(
            f,
            "{} | {} | {}",
            part(&self.w_minus),
            part(&self.w_plus),
            part(&self.w_d)
        )
    }
}

/// Every statistic of a signed permutation, computed in one pass.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StatProfile {
    pub n: usize,
    pub neg: usize,
    pub neg_set: BTreeSet<i32>,
    pub fix_plus: usize,
    pub fix_plus_set: BTreeSet<i32>,
    pub fix_minus: usize,
    pub fix_minus_set: BTreeSet<i32>,
    pub inv: usize,
    pub length: usize,
    pub des: usize,
    pub maj: usize,
    pub fdes: usize,
    pub fmaj: usize,
    pub pix_plus: usize,
    pub pix_plus_set: BTreeSet<i32>,
    pub pix_minus: usize,
    pub pix_minus_set: BTreeSet<i32>,
}

/// Descent sets of a plain permutation and of its inverse.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LigneStats {
    /// Positions `i` with `x_i > x_(i+1)`.
    pub ligne: BTreeSet<usize>,
    /// Descent set of the inverse permutation.
    pub iligne: BTreeSet<usize>,
    /// Sum of the descent positions.
    pub maj: usize,
    /// Sum of the inverse descent positions.
    pub imaj: usize,
}

/// Is the word (with distinct letters) a desarrangement?
///
/// True iff the maximal initial strictly decreasing run has even length at
/// least two, or the word is empty.  There is no one-letter
/// desarrangement.
pub fn is_desarrangement(letters: &[i32]) -> bool {
    let n = letters.len();
    if n == 0 {
        return true;
    }
    let mut run = 1;
    while run < n && letters[run - 1] > letters[run] {
        run += 1;
    }
    run >= 2 && run % 2 == 0
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// The classical subfamilies of signed permutations.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SubsetClass {
    /// The whole group.
    B,
    /// Plain derangements: no fixed point, no negative letter.
    D,
    /// Plain desarrangements: the word is its own desarrangement factor.
    K,
    /// Signed derangements: no positive fixed point.
    DB,
    /// Signed desarrangements: empty positive pixed part.
    KB,
}

impl SubsetClass {
    /// Tag used on the command line and in reports.
    pub fn tag(self) -> &'static str {
        match self {
            SubsetClass::B => "B",
            SubsetClass::D => "D",
            SubsetClass::K => "K",
            SubsetClass::DB => "DB",
            SubsetClass::KB => "KB",
        }
    }

    /// Parse a class tag.
    pub fn from_tag(s: &str) -> Option<SubsetClass> {
        match s {
            "B" => Some(SubsetClass::B),
            "D" => Some(SubsetClass::D),
            "K" => Some(SubsetClass::K),
            "DB" => Some(SubsetClass::DB),
            "KB" => Some(SubsetClass::KB),
            _ => None,
        }
    }

    /// Membership predicate.
    pub fn contains(self, w: &SignedPermutation) -> bool {
        match self {
            SubsetClass::B => true,
            SubsetClass::D => {
                w.is_plain() && !w.letters.iter().enumerate().any(|(i, &x)| x == (i + 1) as i32)
            }
            SubsetClass::K => w.is_plain() && is_desarrangement(&w.letters),
            SubsetClass::DB => !w.letters.iter().enumerate().any(|(i, &x)| x == (i + 1) as i32),
            SubsetClass::KB => {
                w.pixed_factorization()
                    .map(|p| p.w_plus.is_empty())
                    .unwrap_or(false)
            }
        }
    }

    /// Does the class contain only plain permutations?
    fn is_plain_class(self) -> bool {
        matches!(self, SubsetClass::D | SubsetClass::K)
    }
}

/// Enumerate a class in lexicographic order of the letter sequence.
///
/// The plain classes are driven by a plain-permutation stream (factorially
/// many words), the signed ones by a signed stream (`2^n n!` words); both
/// streams are filtered by the membership predicate, so the enumerators
/// stay obviously exhaustive.
pub fn enumerate(n: usize, class: SubsetClass) -> impl Iterator<Item = SignedPermutation> {
    let signed = !class.is_plain_class();
    let first = if signed {
        (1..=n as i32).rev().map(|a| -a).collect::<Vec<_>>()
    } else {
        (1..=n as i32).collect::<Vec<_>>()
    };
    ClassIter { state: Some(first), signed, class }
}

/// Enumerate all plain permutations of `1..=n` in lexicographic order.
pub fn plain_permutations(n: usize) -> impl Iterator<Item = SignedPermutation> {
    ClassIter {
        state: Some((1..=n as i32).collect()),
        signed: false,
        class: SubsetClass::B,
    }
}

struct ClassIter {
    state: Option<Vec<i32>>,
    signed: bool,
    class: SubsetClass,
}

impl Iterator for ClassIter {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        loop {
            let current = self.state.as_ref()?.clone();
            let mut next = current.clone();
            let more = if self.signed { next_signed(&mut next) } else { next_plain(&mut next) };
            self.state = if more { Some(next) } else { None };
            let w = SignedPermutation::from_vec_unchecked(current);
            if self.class.contains(&w) {
                return Some(w);
            }
        }
    }
}

/// Advance a signed permutation to its lexicographic successor.
fn next_signed(letters: &mut [i32]) -> bool {
    let n = letters.len();
    for i in (0..n).rev() {
        let mut used = vec![false; n + 1];
        for &x in &letters[..i] {
            used[x.unsigned_abs() as usize] = true;
        }
        if let Some(v) = smallest_letter_above(letters[i], &used, n as i32) {
            letters[i] = v;
            used[v.unsigned_abs() as usize] = true;
            // Smallest possible tail: the unused absolute values, all
            // negative, in ascending value order.
            let mut tail: Vec<i32> = (1..=n as i32).filter(|&a| !used[a as usize]).map(|a| -a).collect();
            tail.sort_unstable();
            letters[i + 1..].copy_from_slice(&tail);
            return true;
        }
    }
    false
}

/// Smallest available letter strictly greater than `cur` in the order
/// `-n < … < -1 < 1 < … < n`.
fn smallest_letter_above(cur: i32, used: &[bool], n: i32) -> Option<i32> {
    for a in (1..=n).rev() {
        let v = -a;
        if v > cur && !used[a as usize] {
            return Some(v);
        }
    }
    for v in 1..=n {
        if v > cur && !used[v as usize] {
            return Some(v);
        }
    }
    None
}

/// Advance a plain permutation to its lexicographic successor.
fn next_plain(letters: &mut [i32]) -> bool {
    let n = letters.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && letters[i - 1] >= letters[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while letters[j] <= letters[i - 1] {
        j -= 1;
    }
    letters.swap(i - 1, j);
    letters[i..].reverse();
    true
}
