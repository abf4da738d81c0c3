//! Weighted signed permutations and their three bijections.
//!
//! A weighted signed permutation of order `n` pairs a nonincreasing weight
//! word `c = c_1 … c_n` with a signed permutation `w = x_1 … x_n` subject
//! to:
//!
//! * (wsp1) `c` is nonincreasing;
//! * (wsp2) `w` is a signed permutation;
//! * (wsp3) equal adjacent weights force increasing letters
//!   (`c_k = c_(k+1)` implies `x_k < x_(k+1)`);
//! * (wsp4) the letter sign matches the weight parity (`x_k > 0` iff `c_k`
//!   even).
//!
//! Three constructions on these pairs are implemented:
//!
//! * [`wsp_decompose`] / [`wsp_recompose`] — strip the fixed-point columns
//!   into an even weight word `v_e` (positive fixed points) and an odd one
//!   `v_o` (negative fixed points), leaving a weighted signed derangement
//!   core; reinsertion is forced by (wsp3) and inverts the split.
//! * [`macmahon_to_word`] / [`macmahon_from_word`] — the MacMahon
//!   encoding: sort the columns so the letters read `1 2 … n` in absolute
//!   value and keep the weight row; a bijection onto `{0..s}^n` that sends
//!   `tot c` to `tot d` and `neg w` to the number of odd letters of `d`.
//! * [`fdes_pairing`] / [`fdes_pairing_inverse`] — encode the weights
//!   against the suffix-descent counts of `w`, producing a nonincreasing
//!   word `b` with `2*b_1 + fdes w = c_1` and `2*tot b + fmaj w = tot c`.

use std::fmt;
use std::str::FromStr;

use crate::perm::{self, PermError, SignedPermutation, SubsetClass};
use crate::words::{enumerate_words, IntWord, WordFamily};

/// Errors for weighted-signed-permutation construction and bijections.
///
/// Indices are 1-based column positions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WspError {
    /// Weight word and permutation have different lengths.
    #[error("weight word has length {c_len} but permutation has length {w_len}")]
    LengthMismatch { c_len: usize, w_len: usize },
    /// The weight word increases at the given position.
    #[error("weights increase at position {index}")]
    Wsp1 { index: usize },
    /// The word component is not a signed permutation.
    #[error("word component invalid: {0}")]
    Wsp2(#[from] PermError),
    /// Equal adjacent weights without increasing letters.
    #[error("equal weights at positions {index} and {}, letters not increasing", index + 1)]
    Wsp3 { index: usize },
    /// Letter sign does not match weight parity.
    #[error("weight parity and letter sign disagree at position {index}")]
    Wsp4 { index: usize },
    /// No placement of a fixed-point block satisfies the conditions; the
    /// decomposition being reassembled was not valid.
    #[error("fixed-point block cannot be inserted consistently")]
    InsertionConflict,
    /// The descent pairing produced a negative letter; the input pair was
    /// not a valid weighted signed permutation.
    #[error("pairing produced a negative letter at position {index}")]
    NegativeBLetter { index: usize },
    /// Text input could not be parsed as a `c=…;w=…` record.
    #[error("cannot parse weighted signed permutation: {0}")]
    Parse(String),
}

/// A validated weighted signed permutation.
///
/// The canonical text encoding is the two-field record
/// `"c=10,9,7;w=1,-3,-2"`; both fields may be empty for the order-0 pair.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct WeightedSignedPermutation {
    c: IntWord,
    w: SignedPermutation,
}

impl WeightedSignedPermutation {
    /// Weight word.
    pub fn c(&self) -> &IntWord {
        &self.c
    }

    /// Signed permutation.
    pub fn w(&self) -> &SignedPermutation {
        &self.w
    }

    /// Common length of the two rows.
    pub fn n(&self) -> usize {
        self.w.n()
    }

    /// The order-0 pair.
    pub fn empty() -> WeightedSignedPermutation {
        WeightedSignedPermutation { c: IntWord::empty(), w: SignedPermutation::identity(0) }
    }
}

impl fmt::Display for WeightedSignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c={};w={}", self.c, self.w)
    }
}

impl FromStr for WeightedSignedPermutation {
    type Err = WspError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (c_part, w_part) = s
            .trim()
            .split_once(';')
            .ok_or_else(|| WspError::Parse("expected two ';'-separated fields".into()))?;
        let c_body = c_part
            .trim()
            .strip_prefix("c=")
            .ok_or_else(|| WspError::Parse("first field must start with c=".into()))?;
        let w_body = w_part
            .trim()
            .strip_prefix("w=")
            .ok_or_else(|| WspError::Parse("second field must start with w=".into()))?;
        let c: IntWord = c_body.parse().map_err(|e| WspError::Parse(format!("{}", e)))?;
        let w: SignedPermutation = w_body.parse()?;
        validate_wsp(c, w)
    }
}

/// Check conditions (wsp1)–(wsp4) and wrap the pair.
pub fn validate_wsp(c: IntWord, w: SignedPermutation) -> Result<WeightedSignedPermutation, WspError> {
    if c.lambda() != w.n() {
        return Err(WspError::LengthMismatch { c_len: c.lambda(), w_len: w.n() });
    }
    let weights = c.letters();
    let letters = w.letters();
    for k in 0..weights.len().saturating_sub(1) {
        if weights[k] < weights[k + 1] {
            return Err(WspError::Wsp1 { index: k + 2 });
        }
        if weights[k] == weights[k + 1] && letters[k] >= letters[k + 1] {
            return Err(WspError::Wsp3 { index: k + 1 });
        }
    }
    for (k, (&ck, &xk)) in weights.iter().zip(letters).enumerate() {
        let even = ck % 2 == 0;
        if even != (xk > 0) {
            return Err(WspError::Wsp4 { index: k + 1 });
        }
    }
    Ok(WeightedSignedPermutation { c, w })
}

/// The fixed-point split of a weighted signed permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WspDecomposition {
    /// Remaining columns, letters relabeled onto the smaller alphabet; its
    /// permutation has no fixed point of either sign.
    pub core: WeightedSignedPermutation,
    /// Weights of the positive fixed points, in column order
    /// (nonincreasing, all even).
    pub v_e: IntWord,
    /// Weights of the negative fixed points, in column order (strictly
    /// decreasing, all odd).
    pub v_o: IntWord,
}

/// Split off the fixed-point columns.
///
/// Positive fixed points contribute their weights to `v_e`, negative ones
/// to `v_o`; the surviving columns keep their order and weights while the
/// letters are renamed by the unique increasing bijection onto the smaller
/// alphabet.
pub fn wsp_decompose(p: &WeightedSignedPermutation) -> WspDecomposition {
    let weights = p.c().letters();
    let letters = p.w().letters();
    let mut v_e = Vec::new();
    let mut v_o = Vec::new();
    let mut kept = Vec::new();
    for (k, (&ck, &xk)) in weights.iter().zip(letters).enumerate() {
        let pos = (k + 1) as i32;
        if xk == pos {
            v_e.push(ck);
        } else if xk == -pos {
            v_o.push(ck);
        } else {
            kept.push(k);
        }
    }
    let mut alphabet: Vec<i32> = kept.iter().map(|&k| letters[k].abs()).collect();
    alphabet.sort_unstable();
    let relabel = |x: i32| {
        let rank = alphabet.binary_search(&x.abs()).expect("kept letter in alphabet") as i32 + 1;
        x.signum() * rank
    };
    let core_c = IntWord::new(kept.iter().map(|&k| weights[k]).collect());
    let core_w = SignedPermutation::new(kept.iter().map(|&k| relabel(letters[k])).collect())
        .expect("relabeling preserves the permutation property");
    let core = validate_wsp(core_c, core_w).expect("column removal preserves the conditions");
    debug_assert!(SubsetClass::DB.contains(core.w()) && core.w().stat_profile().fix_minus == 0);
    WspDecomposition { core, v_e: IntWord::new(v_e), v_o: IntWord::new(v_o) }
}

/// Insert `h` fixed-point columns of weight `b` into a pair.
///
/// The columns join the run of weight-`b` columns; their letters are
/// forced to equal their positions (sign by parity of `b`), the remaining
/// letters are shifted up around the consumed values, and the placement
/// inside the run is the unique one that keeps the run's letters
/// increasing.
pub fn insert_fixed_block(
    p: &WeightedSignedPermutation,
    b: u32,
    h: usize,
) -> Result<WeightedSignedPermutation, WspError> {
    if h == 0 || (b % 2 == 1 && h != 1) {
        return Err(WspError::InsertionConflict);
    }
    let weights = p.c().letters();
    let letters = p.w().letters();
    let run_start = weights.iter().filter(|&&x| x > b).count();
    let run_len = weights.iter().filter(|&&x| x == b).count();

    let mut found: Option<WeightedSignedPermutation> = None;
    for j in 0..=run_len {
        // New columns occupy 1-based positions first .. first+h-1.
        let first = (run_start + j + 1) as i32;
        let block: Vec<i32> = if b % 2 == 0 {
            (first..first + h as i32).collect()
        } else {
            vec![-first]
        };
        let shift = |x: i32| if x.abs() >= first { x + x.signum() * h as i32 } else { x };

        let mut new_w: Vec<i32> = letters[..run_start + j].iter().map(|&x| shift(x)).collect();
        new_w.extend_from_slice(&block);
        new_w.extend(letters[run_start + j..].iter().map(|&x| shift(x)));
        let mut new_c: Vec<u32> = weights[..run_start + j].to_vec();
        new_c.extend(std::iter::repeat(b).take(h));
        new_c.extend_from_slice(&weights[run_start + j..]);

        let candidate = match SignedPermutation::new(new_w)
            .map_err(WspError::from)
            .and_then(|w| validate_wsp(IntWord::new(new_c), w))
        {
            Ok(q) => q,
            Err(_) => continue,
        };
        match &found {
            None => found = Some(candidate),
            // Distinct placements may rebuild the same pair; two distinct
            // valid results would make the reassembly ambiguous.
            Some(prev) if *prev == candidate => {}
            Some(_) => return Err(WspError::InsertionConflict),
        }
    }
    found.ok_or(WspError::InsertionConflict)
}

/// Rebuild a weighted signed permutation from its fixed-point split.
///
/// The fixed-point weights are merged into blocks `b^h` of equal weight
/// and inserted in decreasing weight order; each insertion position is
/// forced, so the whole map inverts [`wsp_decompose`].
pub fn wsp_recompose(d: &WspDecomposition) -> Result<WeightedSignedPermutation, WspError> {
    if !(d.v_e.is_nonincreasing() && d.v_e.letters().iter().all(|&x| x % 2 == 0)) {
        return Err(WspError::InsertionConflict);
    }
    if !(d.v_o.letters().windows(2).all(|p| p[0] > p[1])
        && d.v_o.letters().iter().all(|&x| x % 2 == 1))
    {
        return Err(WspError::InsertionConflict);
    }
    // Merge both weight words into (weight, multiplicity) blocks, largest
    // weight first.  Parities differ, so the two words never share a value.
    let mut blocks: Vec<(u32, usize)> = Vec::new();
    let mut all: Vec<u32> = d.v_e.letters().iter().chain(d.v_o.letters()).copied().collect();
    all.sort_unstable_by(|a, b| b.cmp(a));
    for x in all {
        match blocks.last_mut() {
            Some((b, h)) if *b == x => *h += 1,
            _ => blocks.push((x, 1)),
        }
    }
    let mut current = d.core.clone();
    for (b, h) in blocks {
        current = insert_fixed_block(&current, b, h)?;
    }
    Ok(current)
}

/// MacMahon encoding: read the weights off in letter order.
///
/// Sorting the columns so the letters become `1 2 … n` in absolute value
/// turns the weight row into an arbitrary word `d` with
/// `d_|x_k| = c_k`; weights are conserved (`tot d = tot c`) and the odd
/// letters of `d` mark the negative letters of `w`.
pub fn macmahon_to_word(p: &WeightedSignedPermutation) -> IntWord {
    let weights = p.c().letters();
    let letters = p.w().letters();
    let mut d = vec![0u32; p.n()];
    for (&ck, &xk) in weights.iter().zip(letters) {
        d[(xk.abs() - 1) as usize] = ck;
    }
    IntWord::new(d)
}

/// Decode a MacMahon word back into the unique weighted signed
/// permutation.
///
/// Columns `(d_a, ±a)` — sign by parity of `d_a` — are sorted by weight
/// descending; inside an equal-weight block the letters must increase
/// (wsp3), which fixes the order completely.
pub fn macmahon_from_word(d: &IntWord) -> WeightedSignedPermutation {
    let mut columns: Vec<(u32, i32)> = d
        .letters()
        .iter()
        .enumerate()
        .map(|(i, &da)| {
            let a = (i + 1) as i32;
            (da, if da % 2 == 0 { a } else { -a })
        })
        .collect();
    columns.sort_by(|(ca, xa), (cb, xb)| cb.cmp(ca).then(xa.cmp(xb)));
    let c = IntWord::new(columns.iter().map(|&(ck, _)| ck).collect());
    let w = SignedPermutation::new(columns.iter().map(|&(_, xk)| xk).collect())
        .expect("each absolute value used once");
    validate_wsp(c, w).expect("sorted columns satisfy the conditions")
}

/// Suffix-descent counts `z_k = des(x_k … x_n)` of a letter sequence.
fn suffix_descents(letters: &[i32]) -> Vec<usize> {
    let n = letters.len();
    let mut z = vec![0usize; n];
    for k in (0..n.saturating_sub(1)).rev() {
        z[k] = z[k + 1] + usize::from(letters[k] > letters[k + 1]);
    }
    z
}

/// Encode the weights of a pair against the descents of its word.
///
/// With `z_k` the number of descents in the right factor `x_k … x_n` and
/// `ε_k = 1` for negative `x_k`, the output letters are
/// `b_k = (c_k − ε_k)/2 − z_k`.  The word `b` is nonincreasing and
/// satisfies `2*b_1 + fdes w = c_1` and `2*tot b + fmaj w = tot c`.
pub fn fdes_pairing(
    p: &WeightedSignedPermutation,
) -> Result<(IntWord, SignedPermutation), WspError> {
    let letters = p.w().letters();
    let z = suffix_descents(letters);
    let mut b = Vec::with_capacity(p.n());
    for (k, (&ck, &xk)) in p.c().letters().iter().zip(letters).enumerate() {
        let eps = u32::from(xk < 0);
        let a = (ck - eps) / 2; // same parity by (wsp4)
        let zk = z[k] as u32;
        if a < zk {
            return Err(WspError::NegativeBLetter { index: k + 1 });
        }
        b.push(a - zk);
    }
    Ok((IntWord::new(b), p.w().clone()))
}

/// Rebuild the weight word from a nonincreasing `b` and a permutation.
///
/// Inverts [`fdes_pairing`] via `c_k = 2*(b_k + z_k) + ε_k`.
pub fn fdes_pairing_inverse(
    b: &IntWord,
    w: &SignedPermutation,
) -> Result<WeightedSignedPermutation, WspError> {
    if b.lambda() != w.n() {
        return Err(WspError::LengthMismatch { c_len: b.lambda(), w_len: w.n() });
    }
    if let Some(k) = b.letters().windows(2).position(|p| p[0] < p[1]) {
        return Err(WspError::Wsp1 { index: k + 2 });
    }
    let z = suffix_descents(w.letters());
    let c: Vec<u32> = b
        .letters()
        .iter()
        .zip(w.letters())
        .zip(&z)
        .map(|((&bk, &xk), &zk)| 2 * (bk + zk as u32) + u32::from(xk < 0))
        .collect();
    validate_wsp(IntWord::new(c), w.clone())
}

/// Enumerate all weighted signed permutations of order `n` with weights
/// `≤ s`, optionally restricted to derangement words (no fixed point of
/// either sign).
///
/// Pairs stream in (weight word, permutation) lexicographic order.  The
/// enumeration filters the full product of nonincreasing weight words and
/// signed permutations through [`validate_wsp`], so it is exhaustive by
/// construction; the MacMahon encoding shows there are `(s+1)^n` pairs.
pub fn enumerate_wsp(
    n: usize,
    s: u32,
    derangements_only: bool,
) -> impl Iterator<Item = WeightedSignedPermutation> {
    let cs: Vec<IntWord> = enumerate_words(WordFamily::niw(n, s))
        .expect("bounded family")
        .collect();
    cs.into_iter().flat_map(move |c| {
        perm::enumerate(n, SubsetClass::B).filter_map(move |w| {
            if derangements_only {
                let profile = w.stat_profile();
                if profile.fix_plus + profile.fix_minus > 0 {
                    return None;
                }
            }
            validate_wsp(c.clone(), w).ok()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wsp(s: &str) -> WeightedSignedPermutation {
        s.parse().unwrap()
    }

    fn iw(s: &str) -> IntWord {
        s.parse().unwrap()
    }

    const ORDER13: &str = "c=10,10,9,7,7,7,4,4,4,3,2,2,1;w=1,2,-7,-6,-5,-4,3,8,9,-10,12,13,-11";

    #[test]
    fn validation_examples() {
        assert_eq!(wsp(ORDER13).n(), 13);
        assert_eq!(
            validate_wsp(iw("2,2"), "2,1".parse().unwrap()),
            Err(WspError::Wsp3 { index: 1 })
        );
        assert_eq!(
            validate_wsp(iw("1"), "1".parse().unwrap()),
            Err(WspError::Wsp4 { index: 1 })
        );
        assert_eq!(
            validate_wsp(iw("0,1"), "1,-2".parse().unwrap()),
            Err(WspError::Wsp1 { index: 2 })
        );
        assert_eq!(
            validate_wsp(iw("1"), "-1,2".parse().unwrap()),
            Err(WspError::LengthMismatch { c_len: 1, w_len: 2 })
        );
    }

    #[test]
    fn encoding_round_trip() {
        for text in ["c=;w=", "c=1;w=-1", "c=10,9,7;w=1,-3,-2"] {
            assert_eq!(wsp(text).to_string(), text);
        }
        assert!(matches!("c=1".parse::<WeightedSignedPermutation>(), Err(WspError::Parse(_))));
        assert!(matches!("x=1;w=1".parse::<WeightedSignedPermutation>(), Err(WspError::Parse(_))));
    }

    #[test]
    fn decompose_worked_example() {
        let d = wsp_decompose(&wsp(ORDER13));
        assert_eq!(d.v_e.to_string(), "10,10,4,4");
        assert_eq!(d.v_o.to_string(), "7,3");
        assert_eq!(d.core.to_string(), "c=9,7,7,4,2,2,1;w=-4,-3,-2,1,6,7,-5");
    }

    #[test]
    fn decompose_trivial_cases() {
        // A derangement word decomposes into itself.
        let p = wsp("c=2,1;w=2,-1");
        let d = wsp_decompose(&p);
        assert_eq!(d.core, p);
        assert_eq!(d.v_e, IntWord::empty());
        assert_eq!(d.v_o, IntWord::empty());

        // A single positive fixed point empties the core.
        let d = wsp_decompose(&wsp("c=0;w=1"));
        assert_eq!(d.v_e.to_string(), "0");
        assert_eq!(d.v_o, IntWord::empty());
        assert_eq!(d.core.n(), 0);
    }

    #[test]
    fn insertion_reproduces_worked_intermediates() {
        let core = wsp("c=9,7,7,4,2,2,1;w=-4,-3,-2,1,6,7,-5");
        let step1 = insert_fixed_block(&core, 10, 2).unwrap();
        assert_eq!(step1.to_string(), "c=10,10,9,7,7,4,2,2,1;w=1,2,-6,-5,-4,3,8,9,-7");
        let step2 = insert_fixed_block(&step1, 7, 1).unwrap();
        assert_eq!(step2.to_string(), "c=10,10,9,7,7,7,4,2,2,1;w=1,2,-7,-6,-5,-4,3,9,10,-8");
        let step3 = insert_fixed_block(&step2, 4, 2).unwrap();
        assert_eq!(
            step3.to_string(),
            "c=10,10,9,7,7,7,4,4,4,2,2,1;w=1,2,-7,-6,-5,-4,3,8,9,11,12,-10"
        );
        let step4 = insert_fixed_block(&step3, 3, 1).unwrap();
        assert_eq!(step4, wsp(ORDER13));
    }

    #[test]
    fn recompose_inverts_decompose_on_worked_example() {
        let p = wsp(ORDER13);
        assert_eq!(wsp_recompose(&wsp_decompose(&p)).unwrap(), p);
    }

    #[test]
    fn recompose_smallest_cases() {
        let d = WspDecomposition {
            core: WeightedSignedPermutation::empty(),
            v_e: iw("0,0"),
            v_o: IntWord::empty(),
        };
        assert_eq!(wsp_recompose(&d).unwrap().to_string(), "c=0,0;w=1,2");

        let bad = WspDecomposition {
            core: WeightedSignedPermutation::empty(),
            v_e: iw("0,2"), // increasing: not a valid even weight word
            v_o: IntWord::empty(),
        };
        assert_eq!(wsp_recompose(&bad), Err(WspError::InsertionConflict));
    }

    #[test]
    fn decompose_recompose_round_trip_exhaustive() {
        for n in 0..=4usize {
            for s in 0..=4u32 {
                for p in enumerate_wsp(n, s, false) {
                    let d = wsp_decompose(&p);
                    // Split invariants: weights and statistics add up.
                    let profile = p.w().stat_profile();
                    assert_eq!(profile.fix_plus, d.v_e.lambda(), "{}", p);
                    assert_eq!(profile.fix_minus, d.v_o.lambda(), "{}", p);
                    assert_eq!(
                        p.c().tot(),
                        d.core.c().tot() + d.v_e.tot() + d.v_o.tot(),
                        "{}",
                        p
                    );
                    assert_eq!(
                        profile.neg,
                        d.core.w().stat_profile().neg + d.v_o.lambda(),
                        "{}",
                        p
                    );
                    let core_profile = d.core.w().stat_profile();
                    assert_eq!(core_profile.fix_plus + core_profile.fix_minus, 0, "{}", p);
                    assert_eq!(wsp_recompose(&d).unwrap(), p, "{}", p);
                }
            }
        }
    }

    #[test]
    fn macmahon_worked_example() {
        let p = wsp("c=10,9,7,4,4,2,2,1,1;w=1,-4,-3,2,5,6,8,-9,-7");
        let d = macmahon_to_word(&p);
        assert_eq!(d.to_string(), "10,4,7,9,4,2,1,2,1");
        assert_eq!(d.tot(), p.c().tot());
        assert_eq!(d.odd(), p.w().stat_profile().neg);
        assert_eq!(macmahon_from_word(&d), p);
    }

    #[test]
    fn macmahon_zero_word() {
        let p = wsp("c=0,0,0;w=1,2,3");
        assert_eq!(macmahon_to_word(&p).to_string(), "0,0,0");
        assert_eq!(macmahon_from_word(&iw("0,0,0")), p);
    }

    #[test]
    fn macmahon_bijection_both_directions() {
        // Decoding every word over {0..2}^3 and encoding back is the
        // identity, and vice versa on enumerated pairs.
        for code in 0..27u32 {
            let d = IntWord::new(vec![code / 9 % 3, code / 3 % 3, code % 3]);
            let p = macmahon_from_word(&d);
            assert_eq!(macmahon_to_word(&p), d, "word {}", d);
            assert_eq!(p.c().tot(), d.tot());
            assert_eq!(p.w().stat_profile().neg, d.odd());
        }
        for n in 0..=4usize {
            for s in 0..=4u32 {
                for p in enumerate_wsp(n, s, false) {
                    assert_eq!(macmahon_from_word(&macmahon_to_word(&p)), p, "{}", p);
                }
            }
        }
    }

    #[test]
    fn fdes_pairing_worked_example() {
        let p = wsp("c=9,7,7,4,4,4,2,2,1,1;w=-4,-3,-2,1,5,6,8,9,-10,-7");
        let (b, w) = fdes_pairing(&p).unwrap();
        assert_eq!(b.to_string(), "3,2,2,1,1,1,0,0,0,0");
        assert_eq!(w, *p.w());
        let profile = w.stat_profile();
        assert_eq!(2 * b.tot() + profile.fmaj as u64, p.c().tot());
        assert_eq!(2 * 10 + 21, 41u64);
        assert_eq!(fdes_pairing_inverse(&b, &w).unwrap(), p);
    }

    #[test]
    fn fdes_pairing_trivial_and_contract() {
        let p = wsp("c=0,0;w=1,2");
        let (b, _) = fdes_pairing(&p).unwrap();
        assert_eq!(b.to_string(), "0,0");

        for n in 0..=3usize {
            for s in 0..=4u32 {
                for p in enumerate_wsp(n, s, false) {
                    let (b, w) = fdes_pairing(&p).unwrap();
                    assert!(b.is_nonincreasing(), "{}", p);
                    let profile = w.stat_profile();
                    if n > 0 {
                        assert_eq!(
                            2 * b.letters()[0] as usize + profile.fdes,
                            p.c().letters()[0] as usize,
                            "{}",
                            p
                        );
                    }
                    assert_eq!(2 * b.tot() + profile.fmaj as u64, p.c().tot(), "{}", p);
                    assert_eq!(fdes_pairing_inverse(&b, &w).unwrap(), p, "{}", p);
                }
            }
        }
    }

    #[test]
    fn fdes_pairing_image_is_all_bounded_pairs() {
        // For n ≤ 3, s ≤ 4: the pairs (b, w) produced from weight bounds s
        // are exactly those with b nonincreasing and 2b₁ + fdes w ≤ s.
        for n in 0..=3usize {
            for s in 0..=4u32 {
                let mut produced: Vec<(IntWord, SignedPermutation)> = enumerate_wsp(n, s, false)
                    .map(|p| fdes_pairing(&p).unwrap())
                    .collect();
                produced.sort();
                produced.dedup();

                let mut expected: Vec<(IntWord, SignedPermutation)> = Vec::new();
                for b in enumerate_words(WordFamily::niw(n, s / 2)).unwrap() {
                    for w in perm::enumerate(n, SubsetClass::B) {
                        let head = if n == 0 { 0 } else { 2 * b.letters()[0] as usize };
                        if head + w.stat_profile().fdes <= s as usize {
                            expected.push((b.clone(), w));
                        }
                    }
                }
                expected.sort();
                assert_eq!(produced, expected, "n={} s={}", n, s);

                // Inverting any admissible pair lands back in the weight bound.
                for (b, w) in expected {
                    let p = fdes_pairing_inverse(&b, &w).unwrap();
                    assert!(p.c().letters().first().map_or(0, |&x| x) <= s, "{}", p);
                }
            }
        }
    }

    #[test]
    fn enumerate_wsp_counts_and_order() {
        let one: Vec<String> = enumerate_wsp(1, 1, false).map(|p| p.to_string()).collect();
        assert_eq!(one, ["c=0;w=1", "c=1;w=-1"]);
        let two: Vec<String> = enumerate_wsp(2, 0, false).map(|p| p.to_string()).collect();
        assert_eq!(two, ["c=0,0;w=1,2"]);
        assert_eq!(enumerate_wsp(3, 2, false).count(), 27);
        for n in 0..=4usize {
            for s in 0..=4u32 {
                assert_eq!(
                    enumerate_wsp(n, s, false).count(),
                    (u64::from(s) + 1).pow(n as u32) as usize,
                    "n={} s={}",
                    n,
                    s
                );
            }
        }
        // Restriction flag agrees with filtering after the fact.
        for s in 0..=3u32 {
            let restricted: Vec<_> = enumerate_wsp(3, s, true).collect();
            let filtered: Vec<_> = enumerate_wsp(3, s, false)
                .filter(|p| {
                    let pr = p.w().stat_profile();
                    pr.fix_plus + pr.fix_minus == 0
                })
                .collect();
            assert_eq!(restricted, filtered, "s={}", s);
        }
    }
}
