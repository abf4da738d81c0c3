//! Nonnegative-integer words and the three bounded word families.
//!
//! An [`IntWord`] is a finite sequence of nonnegative integers with the
//! statistics `lambda` (length), `tot` (letter sum) and `odd` (number of
//! odd letters).  Three families of such words are enumerable here, each
//! parameterized by a length `n` and a letter bound `s`:
//!
//! * `NIW` — nonincreasing words, all letters `≤ s`;
//! * `NIW_E` — nonincreasing words with every letter even, `≤ s`;
//! * `DW_O` — strictly decreasing words with every letter odd, `≤ s`.
//!
//! Their cardinalities are binomial: `C(n+s, n)`, `C(n+⌊s/2⌋, n)` and
//! `C(⌊(s+1)/2⌋, n)` respectively.  The module also carries the two small
//! set statistics `tot_subset` and `inv_crossing` used when counting
//! inversions across a merge of two words.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// Errors for word parsing and family enumeration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    /// Enumeration of a family requires a finite letter bound.
    #[error("cannot enumerate a word family without a letter bound")]
    UnboundedFamily,
    /// Text input could not be parsed as a nonnegative-integer word.
    #[error("cannot parse integer word: {0}")]
    Parse(String),
}

/// A word of nonnegative integers.
///
/// The canonical text encoding is the comma-separated letter list
/// (`"10,9,7"`); the empty string encodes the empty word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct IntWord {
    letters: Vec<u32>,
}

impl IntWord {
    pub fn new(letters: Vec<u32>) -> IntWord {
        IntWord { letters }
    }

    pub fn empty() -> IntWord {
        IntWord { letters: Vec::new() }
    }

    /// Length of the word.
    pub fn lambda(&self) -> usize {
        self.letters.len()
    }

    /// Sum of the letters.
    pub fn tot(&self) -> u64 {
        self.letters.iter().map(|&x| u64::from(x)).sum()
    }

    /// Number of odd letters.
    pub fn odd(&self) -> usize {
        self.letters.iter().filter(|&&x| x % 2 == 1).count()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// True when the letters never increase from left to right.
    pub fn is_nonincreasing(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] >= p[1])
    }
}

impl fmt::Display for IntWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .letters
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{}", body)
    }
}

impl fmt::Debug for IntWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl FromStr for IntWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(IntWord::empty());
        }
        let letters = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| WordError::Parse(format!("bad letter {:?}", tok.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntWord { letters })
    }
}

/// Family selector for [`WordFamily`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum FamilyTag {
    /// Nonincreasing words.
    Niw,
    /// Nonincreasing words with all letters even.
    NiwE,
    /// Strictly decreasing words with all letters odd.
    DwO,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Niw => "NIW",
            FamilyTag::NiwE => "NIW_E",
            FamilyTag::DwO => "DW_O",
        }
    }
}

/// A word family: a tag, a word length and an optional letter bound.
///
/// The bound may be omitted only for plain `NIW`, which is then the
/// (unbounded, non-enumerable) set of all nonincreasing words.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct WordFamily {
    pub tag: FamilyTag,
    pub n: usize,
    pub s: Option<u32>,
}

impl WordFamily {
    pub fn niw(n: usize, s: u32) -> WordFamily {
        WordFamily { tag: FamilyTag::Niw, n, s: Some(s) }
    }

    pub fn niw_unbounded(n: usize) -> WordFamily {
        WordFamily { tag: FamilyTag::Niw, n, s: None }
    }

    pub fn niw_e(n: usize, s: u32) -> WordFamily {
        WordFamily { tag: FamilyTag::NiwE, n, s: Some(s) }
    }

    pub fn dw_o(n: usize, s: u32) -> WordFamily {
        WordFamily { tag: FamilyTag::DwO, n, s: Some(s) }
    }

    /// Membership test (ignores the bound when it is absent).
    pub fn contains(&self, w: &IntWord) -> bool {
        if w.lambda() != self.n {
            return false;
        }
        let bounded = self.s.map_or(true, |s| w.letters.iter().all(|&x| x <= s));
        match self.tag {
            FamilyTag::Niw => bounded && w.is_nonincreasing(),
            FamilyTag::NiwE => bounded && w.is_nonincreasing() && w.letters.iter().all(|&x| x % 2 == 0),
            FamilyTag::DwO => {
                bounded
                    && w.letters.windows(2).all(|p| p[0] > p[1])
                    && w.letters.iter().all(|&x| x % 2 == 1)
            }
        }
    }
}

/// Enumerate a word family in lexicographic ascending order.
pub fn enumerate_words(f: WordFamily) -> Result<FamilyIter, WordError> {
    let s = f.s.ok_or(WordError::UnboundedFamily)?;
    let first = match f.tag {
        FamilyTag::Niw | FamilyTag::NiwE => Some(vec![0; f.n]),
        FamilyTag::DwO => {
            // Minimal strictly decreasing odd word: 2n-1, 2n-3, …, 3, 1.
            if f.n == 0 {
                Some(Vec::new())
            } else if 2 * f.n as u32 - 1 <= s {
                Some((0..f.n).map(|j| dw_o_tail_min(f.n, j)).collect())
            } else {
                None
            }
        }
    };
    Ok(FamilyIter { tag: f.tag, s, state: first })
}

/// Minimal admissible letter at position `j` (0-based) of a strictly
/// decreasing odd word of length `n`.
fn dw_o_tail_min(n: usize, j: usize) -> u32 {
    2 * (n - j) as u32 - 1
}

/// Lexicographic stream over a bounded word family.
pub struct FamilyIter {
    tag: FamilyTag,
    s: u32,
    state: Option<Vec<u32>>,
}

impl Iterator for FamilyIter {
    type Item = IntWord;

    fn next(&mut self) -> Option<IntWord> {
        let current = self.state.take()?;
        let n = current.len();
        let step = match self.tag {
            FamilyTag::Niw => 1,
            FamilyTag::NiwE | FamilyTag::DwO => 2,
        };
        let mut next = current.clone();
        let mut advanced = false;
        for i in (0..n).rev() {
            // Largest value position i may take given its left neighbor.
            let upper = match self.tag {
                FamilyTag::Niw | FamilyTag::NiwE => {
                    if i == 0 { self.s } else { self.s.min(next[i - 1]) }
                }
                FamilyTag::DwO => {
                    if i == 0 {
                        self.s
                    } else if next[i - 1] < 2 {
                        0 // left neighbor too small to fit anything below it
                    } else {
                        self.s.min(next[i - 1] - 2)
                    }
                }
            };
            if next[i] + step <= upper {
                next[i] += step;
                for j in i + 1..n {
                    next[j] = match self.tag {
                        FamilyTag::Niw | FamilyTag::NiwE => 0,
                        FamilyTag::DwO => dw_o_tail_min(n, j),
                    };
                }
                advanced = true;
                break;
            }
        }
        self.state = if advanced { Some(next) } else { None };
        Some(IntWord::new(current))
    }
}

/// Sum of the elements of a set.
pub fn tot_subset(a: &BTreeSet<i32>) -> i64 {
    a.iter().map(|&x| i64::from(x)).sum()
}

/// Number of pairs `(i, j)` with `i ∈ b`, `j ∈ c`, `i > j`.
///
/// Negating both arguments swaps their roles: `inv(B, C) = inv(-C, -B)`.
pub fn inv_crossing(b: &BTreeSet<i32>, c: &BTreeSet<i32>) -> usize {
    b.iter().map(|&i| c.iter().filter(|&&j| i > j).count()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{gauss_binomial, LaurentPoly, TruncCaps, Var};
    use crate::qalgebra::series::{pochhammer_series, SeriesVar};

    fn words(f: WordFamily) -> Vec<String> {
        enumerate_words(f).unwrap().map(|w| w.to_string()).collect()
    }

    #[test]
    fn frozen_small_families() {
        assert_eq!(words(WordFamily::niw(2, 1)), ["0,0", "1,0", "1,1"]);
        assert_eq!(words(WordFamily::niw_e(1, 5)), ["0", "2", "4"]);
        assert_eq!(words(WordFamily::dw_o(2, 5)), ["3,1", "5,1", "5,3"]);
        assert_eq!(words(WordFamily::niw(0, 3)), [""]);
        assert_eq!(words(WordFamily::dw_o(0, 0)), [""]);
        assert_eq!(words(WordFamily::dw_o(3, 3)), Vec::<String>::new());
    }

    #[test]
    fn unbounded_family_is_rejected() {
        assert!(matches!(
            enumerate_words(WordFamily::niw_unbounded(2)),
            Err(WordError::UnboundedFamily)
        ));
    }

    #[test]
    fn statistics_of_a_word() {
        let w: IntWord = "10,9,7,0".parse().unwrap();
        assert_eq!(w.lambda(), 4);
        assert_eq!(w.tot(), 26);
        assert_eq!(w.odd(), 2);
        assert!(w.is_nonincreasing());
        assert_eq!(w.to_string(), "10,9,7,0");
        assert_eq!("".parse::<IntWord>().unwrap(), IntWord::empty());
    }

    /// Count nonincreasing words with first letter ≤ s by a recursion
    /// independent of the binomial closed form.
    fn count_niw(n: usize, s: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (0..=s).map(|c| count_niw(n - 1, c)).sum()
    }

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn family_cardinalities_match_binomials() {
        for n in 0..=8usize {
            for s in 0..=8u32 {
                let niw = enumerate_words(WordFamily::niw(n, s)).unwrap().count() as u64;
                assert_eq!(niw, binom(n as u64 + u64::from(s), n as u64), "NIW n={} s={}", n, s);
                assert_eq!(niw, count_niw(n, s), "NIW recursion n={} s={}", n, s);

                let even = enumerate_words(WordFamily::niw_e(n, s)).unwrap().count() as u64;
                assert_eq!(even, binom(n as u64 + u64::from(s / 2), n as u64), "NIW_E n={} s={}", n, s);

                let odd = enumerate_words(WordFamily::dw_o(n, s)).unwrap().count() as u64;
                assert_eq!(odd, binom(u64::from((s + 1) / 2), n as u64), "DW_O n={} s={}", n, s);
            }
        }
    }

    #[test]
    fn families_match_filtered_tuple_enumeration() {
        // Independent oracle at small scale: generate every tuple over
        // {0..=s}^n and filter by the membership predicate.
        for n in 0..=4usize {
            for s in 0..=4u32 {
                for family in [WordFamily::niw(n, s), WordFamily::niw_e(n, s), WordFamily::dw_o(n, s)] {
                    let mut expected: Vec<IntWord> = Vec::new();
                    let total = (u64::from(s) + 1).pow(n as u32);
                    for code in 0..total {
                        let mut c = code;
                        let mut letters = Vec::with_capacity(n);
                        for _ in 0..n {
                            letters.push((c % (u64::from(s) + 1)) as u32);
                            c /= u64::from(s) + 1;
                        }
                        letters.reverse();
                        let w = IntWord::new(letters);
                        if family.contains(&w) {
                            expected.push(w);
                        }
                    }
                    expected.sort();
                    let got: Vec<IntWord> = enumerate_words(family).unwrap().collect();
                    assert_eq!(got, expected, "family {:?}", family);
                }
            }
        }
    }

    #[test]
    fn enumeration_is_strictly_ascending() {
        for family in [WordFamily::niw(3, 4), WordFamily::niw_e(3, 6), WordFamily::dw_o(3, 9)] {
            let all: Vec<IntWord> = enumerate_words(family).unwrap().collect();
            for pair in all.windows(2) {
                assert!(pair[0] < pair[1], "{:?} !< {:?}", pair[0], pair[1]);
            }
        }
    }

    #[test]
    fn even_word_sums_match_inverse_pochhammer_coefficients() {
        // Σ_{v ∈ NIW_E(n, s)} q^tot(v) is the u^n coefficient of the
        // inverse of (u; q²) taken ⌊s/2⌋ + 1 factors deep.
        for s in 0..=6u32 {
            let m = s / 2 + 1;
            let q2 = LaurentPoly::var_pow(Var::Q, 2);
            let product = pochhammer_series(SeriesVar::U, 6, TruncCaps::EXACT, &LaurentPoly::one(), &q2, m as usize);
            let inverse = product.inverse().unwrap();
            for n in 0..=6usize {
                let sum = enumerate_words(WordFamily::niw_e(n, s))
                    .unwrap()
                    .fold(LaurentPoly::zero(), |acc, v| {
                        &acc + &LaurentPoly::var_pow(Var::Q, v.tot() as i32)
                    });
                assert_eq!(&sum, inverse.coeff(n), "n={} s={}", n, s);
            }
        }
    }

    #[test]
    fn odd_word_sums_match_pochhammer_coefficients() {
        // Σ_{v ∈ DW_O(n, s)} q^tot(v) is the u^n coefficient of the
        // product of (1 + u·q^(2k+1)) over k < ⌊(s+1)/2⌋.
        for s in 0..=6u32 {
            let m = (s + 1) / 2;
            let neg_q = -&LaurentPoly::var(Var::Q);
            let q2 = LaurentPoly::var_pow(Var::Q, 2);
            let product = pochhammer_series(SeriesVar::U, 6, TruncCaps::EXACT, &neg_q, &q2, m as usize);
            for n in 0..=6usize {
                let sum = enumerate_words(WordFamily::dw_o(n, s))
                    .unwrap()
                    .fold(LaurentPoly::zero(), |acc, v| {
                        &acc + &LaurentPoly::var_pow(Var::Q, v.tot() as i32)
                    });
                assert_eq!(&sum, product.coeff(n), "n={} s={}", n, s);
            }
        }
    }

    #[test]
    fn subset_statistics() {
        assert_eq!(tot_subset(&BTreeSet::new()), 0);
        assert_eq!(tot_subset(&[1, 2, 3].into_iter().collect()), 6);

        let b: BTreeSet<i32> = [3].into_iter().collect();
        let c: BTreeSet<i32> = [1, 2].into_iter().collect();
        assert_eq!(inv_crossing(&b, &c), 2);
        assert_eq!(inv_crossing(&BTreeSet::new(), &c), 0);

        let b: BTreeSet<i32> = [2, 5].into_iter().collect();
        let c: BTreeSet<i32> = [1, 3].into_iter().collect();
        assert_eq!(inv_crossing(&b, &c), 3);
        let nb: BTreeSet<i32> = b.iter().map(|&x| -x).collect();
        let nc: BTreeSet<i32> = c.iter().map(|&x| -x).collect();
        assert_eq!(inv_crossing(&nc, &nb), 3);
    }

    #[test]
    fn fixed_size_subset_sums_follow_gauss_binomial_law() {
        // Σ over N-subsets A of [n] of q^tot(A) = q^(N(N+1)/2) * [n choose N]_q.
        let q = LaurentPoly::var(Var::Q);
        for n in 0..=6u32 {
            for big_n in 0..=n {
                let mut sum = LaurentPoly::zero();
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() != big_n {
                        continue;
                    }
                    let a: BTreeSet<i32> = (1..=n as i32).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
                    sum += LaurentPoly::var_pow(Var::Q, tot_subset(&a) as i32);
                }
                let expected = &LaurentPoly::var_pow(Var::Q, (big_n * (big_n + 1) / 2) as i32)
                    * &gauss_binomial(n as usize, big_n as usize, &q);
                assert_eq!(sum, expected, "n={} N={}", n, big_n);
            }
        }
    }

    #[test]
    fn words_shorter_than_family_length_are_rejected_by_contains() {
        let f = WordFamily::niw(3, 5);
        assert!(!f.contains(&IntWord::new(vec![2, 1])));
        assert!(f.contains(&IntWord::new(vec![5, 5, 0])));
        assert!(!f.contains(&IntWord::new(vec![5, 6, 0])));
    }
}
