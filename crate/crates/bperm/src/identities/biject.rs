//! The cycle-splitting bijection from derangements onto desarrangements,
//! and its signed extension matching fixed-point data to pixed-point data.
//!
//! Both maps work on words over an *arbitrary* alphabet of distinct
//! integers.  A mapping `τ` of a letter set onto itself is encoded as the
//! word `τ(a_1) τ(a_2) ... τ(a_m)` where `a_1 < a_2 < ... < a_m` are the
//! letters in increasing order; the empty word encodes the empty mapping.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::perm::{self, SignedPermutation};

/// Errors for the word-level bijections.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BijectError {
    /// Input word repeats a letter, so it encodes no mapping.
    #[error("letter {letter} appears more than once")]
    RepeatedLetter { letter: i32 },
    /// The encoded mapping fixes a letter; cycle splitting needs every
    /// cycle to have length at least two.
    #[error("the mapping fixes letter {letter}")]
    HasFixedPoint { letter: i32 },
    /// The word cannot be cut into min-second blocks: some remaining block
    /// starts with its own minimum, so it is not a desarrangement.
    #[error("not a desarrangement: the minimum {letter} of a remaining block has nothing before it")]
    NotDesarrangement { letter: i32 },
}

fn sorted_alphabet(word: &[i32]) -> Result<Vec<i32>, BijectError> {
    let mut alpha: Vec<i32> = word.to_vec();
    alpha.sort_unstable();
    if let Some(pair) = alpha.windows(2).find(|p| p[0] == p[1]) {
        return Err(BijectError::RepeatedLetter { letter: pair[0] });
    }
    Ok(alpha)
}

/// Map a fixed-point-free self-map of a letter set to a desarrangement of
/// the same letters: split into cycles, rotate each cycle so its minimum
/// stands second, sort the cycles by decreasing minima and concatenate.
pub fn desarmenien_f(word: &[i32]) -> Result<Vec<i32>, BijectError> {
    let alpha = sorted_alphabet(word)?;
    let tau: BTreeMap<i32, i32> = alpha.iter().copied().zip(word.iter().copied()).collect();
    if let Some((&a, _)) = tau.iter().find(|(a, b)| a == b) {
        return Err(BijectError::HasFixedPoint { letter: a });
    }

    let mut seen: BTreeSet<i32> = BTreeSet::new();
    let mut cycles: Vec<Vec<i32>> = Vec::new();
    for &start in &alpha {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        seen.insert(start);
        let mut cur = tau[&start];
        while cur != start {
            orbit.push(cur);
            seen.insert(cur);
            cur = tau[&cur];
        }
        // rotate so the minimum letter ends up in second position
        let min_at = orbit
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map(|(i, _)| i)
            .expect("cycle is nonempty");
        let head = (min_at + orbit.len() - 1) % orbit.len();
        orbit.rotate_left(head);
        cycles.push(orbit);
    }
    // decreasing minima; the minimum of each rotated cycle sits at index 1
    cycles.sort_by_key(|c| std::cmp::Reverse(c[1]));
    let out: Vec<i32> = cycles.concat();
    debug_assert!(perm::is_desarrangement(&out));
    Ok(out)
}

/// Inverse of [`desarmenien_f`]: peel blocks off the right end, each block
/// reaching from just before the current global minimum to the end, read
/// every block as a cycle, and write the resulting mapping as a word.
pub fn desarmenien_f_inverse(word: &[i32]) -> Result<Vec<i32>, BijectError> {
    let alpha = sorted_alphabet(word)?;
    let mut tau: BTreeMap<i32, i32> = BTreeMap::new();
    let mut rest = word;
    while !rest.is_empty() {
        let (min_at, &min_letter) = rest
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .expect("block is nonempty");
        if min_at == 0 {
            return Err(BijectError::NotDesarrangement { letter: min_letter });
        }
        let block = &rest[min_at - 1..];
        for pair in block.windows(2) {
            tau.insert(pair[0], pair[1]);
        }
        tau.insert(block[block.len() - 1], block[0]);
        rest = &rest[..min_at - 1];
    }
    Ok(alpha.iter().map(|a| tau[a]).collect())
}

/// Send a signed permutation with fixed-point data `(Fix⁻, Fix⁺, Neg)` to
/// one with the same sets as pixed-point data: keep the fixed letters as
/// an increasing prefix and replace the rest by the cycle-splitting image
/// of the induced mapping on the non-fixed letters.
pub fn phi(w: &SignedPermutation) -> SignedPermutation {
    let profile = w.stat_profile();
    let mut out: Vec<i32> = profile.fix_minus_set.iter().copied().collect();
    out.extend(profile.fix_plus_set.iter().copied());

    let fixed_abs: BTreeSet<i32> = profile
        .fix_minus_set
        .iter()
        .map(|v| v.abs())
        .chain(profile.fix_plus_set.iter().copied())
        .collect();
    let mut rest: Vec<i32> = w
        .letters()
        .iter()
        .copied()
        .filter(|x| !fixed_abs.contains(&x.abs()))
        .collect();
    rest.sort_unstable();
    // the mapping v -> x_(|v|) on the non-fixed letters, as a word
    let tau_word: Vec<i32> = rest
        .iter()
        .map(|v| w.letters()[(v.unsigned_abs() - 1) as usize])
        .collect();
    let image = desarmenien_f(&tau_word).expect("induced mapping has no fixed point");
    out.extend(image);
    SignedPermutation::new(out).expect("output letters are a rearrangement of the input")
}

/// Inverse of [`phi`]: read the pixed factorization, keep the increasing
/// prefix as fixed letters, and pull the desarrangement factor back
/// through the cycle splitting.
pub fn phi_inverse(w: &SignedPermutation) -> SignedPermutation {
    let fact = w
        .pixed_factorization()
        .expect("every signed permutation has a pixed factorization");
    let mut letters = vec![0i32; w.n()];
    for &v in fact.w_minus.iter().chain(fact.w_plus.iter()) {
        letters[(v.unsigned_abs() - 1) as usize] = v;
    }
    let tau_word =
        desarmenien_f_inverse(&fact.w_d).expect("desarrangement factor splits into blocks");
    let mut alpha = fact.w_d.clone();
    alpha.sort_unstable();
    for (a, t) in alpha.iter().zip(tau_word) {
        letters[(a.unsigned_abs() - 1) as usize] = t;
    }
    SignedPermutation::new(letters).expect("output letters are a rearrangement of the input")
}
