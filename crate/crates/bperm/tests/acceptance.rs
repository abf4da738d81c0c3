//! Acceptance gate: one test per criterion, each printing a pass/fail
//! line with its runtime.  Every comparison here is coefficient-exact.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;

use bperm::identities::closed::{derangement_numbers_explicit, factorial};
use bperm::identities::{
    derangement_numbers, desarmenien_f, enum_polynomial, GroupFamily, StatBundle,
};
use bperm::perm::{self, SubsetClass};
use bperm::weighted::{insert_fixed_block, macmahon_to_word, wsp_decompose, fdes_pairing};
use bperm::{verify, IdentityId, SignedPermutation, VerifyParams, VerifyStatus, WeightedSignedPermutation};

fn run(id: IdentityId, params: VerifyParams) -> Result<(), String> {
    let report = verify(id, &params).map_err(|e| format!("{id}: {e}"))?;
    if report.status == VerifyStatus::Pass {
        Ok(())
    } else {
        Err(format!("{id} failed: {:?}", report.witness))
    }
}

fn conclude(criterion: &str, label: &str, started: Instant, outcome: Result<(), String>) {
    let status = if outcome.is_ok() { "pass" } else { "FAIL" };
    println!(
        "criterion {criterion}: {status} ({label}) [{} ms]",
        started.elapsed().as_millis()
    );
    if let Err(e) = outcome {
        panic!("criterion {criterion}: {e}");
    }
}

#[test]
fn criterion_1_fixed_and_pixed_interpretations() {
    let started = Instant::now();
    let outcome = run(IdentityId::Thm1_1, VerifyParams { n_max: 6, ..Default::default() });
    conclude("1", "fix and pix interpretations equal the closed form, n <= 6", started, outcome);
    assert!(started.elapsed() < Duration::from_secs(10), "criterion 1 exceeded 10 s");
}

#[test]
fn criterion_2_length_graded_identities() {
    let started = Instant::now();
    let outcome = run(IdentityId::I3_5, VerifyParams { n_max: 6, ..Default::default() })
        .and_then(|()| {
            run(
                IdentityId::I1_7,
                VerifyParams { u_order: 4, q_order: 12, ..Default::default() },
            )
        });
    conclude("2", "length-graded q-sum for n <= 6 and its factorial series", started, outcome);
    assert!(started.elapsed() < Duration::from_secs(60), "criterion 2 exceeded 60 s");
}

#[test]
fn criterion_3_flag_graded_identities() {
    let started = Instant::now();
    let outcome = run(
        IdentityId::I5_8,
        VerifyParams { n_max: 4, s_max: 6, ..Default::default() },
    )
    .and_then(|()| {
        run(
            IdentityId::I1_9,
            VerifyParams { u_order: 4, t_order: 8, q_order: 12, ..Default::default() },
        )
    })
    .and_then(|()| {
        run(
            IdentityId::I1_8,
            VerifyParams { u_order: 4, q_order: 12, ..Default::default() },
        )
    });
    conclude("3", "flag fold slice by slice and both truncated series", started, outcome);
}

#[test]
fn criterion_4_sanity_constants() {
    let started = Instant::now();
    let outcome = (|| {
        let ones = [
            BigInt::one(),
            BigInt::one(),
            BigInt::one(),
            BigInt::one(),
            BigInt::one(),
        ];
        for n in 0..=7usize {
            let count = enum_polynomial(n, GroupFamily::B, StatBundle::Fix)
                .map_err(|e| e.to_string())?
                .eval(&ones)
                .map_err(|e| format!("{e:?}"))?;
            let expected = BigInt::from(2u64).pow(n as u32) * factorial(n);
            if count != expected {
                return Err(format!("group order at n={n}: {count} != {expected}"));
            }
        }
        let frozen: Vec<BigInt> = [1u64, 0, 1, 2, 9, 44, 265, 1854, 14833, 133496]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        if derangement_numbers(9) != frozen {
            return Err("derangement recurrence deviates from the frozen sequence".into());
        }
        if derangement_numbers_explicit(9) != frozen {
            return Err("trough expansion deviates from the frozen sequence".into());
        }
        Ok(())
    })();
    conclude("4", "group orders n <= 7 and the derangement sequence n <= 9", started, outcome);
}

#[test]
fn criterion_5_bijection_suites() {
    let started = Instant::now();
    let outcome = run(IdentityId::I2_4, VerifyParams { n_max: 5, ..Default::default() })
        .and_then(|()| {
            // derangements to desarrangements, exhaustive through n = 7
            for n in 0..=7usize {
                let mut images = std::collections::BTreeSet::new();
                let mut count = 0usize;
                for w in perm::enumerate(n, SubsetClass::D) {
                    count += 1;
                    let image = desarmenien_f(w.letters()).map_err(|e| e.to_string())?;
                    let mut sorted = image.clone();
                    sorted.sort_unstable();
                    let expected: Vec<i32> = (1..=n as i32).collect();
                    if sorted != expected {
                        return Err(format!("letters not preserved at n={n}: {image:?}"));
                    }
                    images.insert(image);
                }
                let desarrangements: std::collections::BTreeSet<Vec<i32>> =
                    perm::enumerate(n, SubsetClass::K)
                        .map(|w| w.letters().to_vec())
                        .collect();
                if images.len() != count || images != desarrangements {
                    return Err(format!("image mismatch at n={n}"));
                }
            }
            Ok(())
        })
        .and_then(|()| run(IdentityId::I4_1, VerifyParams { n_max: 4, s_max: 4, ..Default::default() }))
        .and_then(|()| run(IdentityId::I5_3, VerifyParams { n_max: 4, s_max: 4, ..Default::default() }))
        .and_then(|()| run(IdentityId::I5_8, VerifyParams { n_max: 3, s_max: 4, ..Default::default() }));
    conclude("5", "phi, the derangement map, the split, the word code, the pairing", started, outcome);
}

#[test]
fn criterion_6_specialization_ladder() {
    let started = Instant::now();
    let five = VerifyParams { n_max: 5, ..Default::default() };
    let six = VerifyParams { n_max: 6, ..Default::default() };
    let outcome = run(IdentityId::I6_5, five)
        .and_then(|()| run(IdentityId::I6_7, five))
        .and_then(|()| run(IdentityId::I6_8, five))
        .and_then(|()| run(IdentityId::I6_9, five))
        .and_then(|()| run(IdentityId::I6_10, five))
        .and_then(|()| run(IdentityId::I6_16, six))
        .and_then(|()| run(IdentityId::I6_18, VerifyParams { n_max: 8, ..Default::default() }))
        .and_then(|()| run(IdentityId::I6_22, six))
        .and_then(|()| run(IdentityId::I6_24, six))
        .and_then(|()| run(IdentityId::I6_25, six))
        .and_then(|()| run(IdentityId::I6_26, six))
        .and_then(|()| run(IdentityId::I6_27, six));
    conclude("6", "duality, signed derangement recurrences, equidistributions", started, outcome);
}

#[test]
fn criterion_7_worked_example_regressions() {
    let started = Instant::now();
    let outcome = (|| {
        let factorizations = [
            ("-5,-2,-3,-4,1", "-5,-2 | e | -3,-4,1"),
            ("-5,-2,-3,1,-4", "-5 | e | -2,-3,1,-4"),
            ("-5,-3,-2,1,4", "-5,-3,-2 | 1,4 | e"),
            ("-5,-3,1,4,2", "-5,-3 | 1 | 4,2"),
            ("-5,-3,4,1,2", "-5,-3 | e | 4,1,2"),
        ];
        for (word, expected) in factorizations {
            let w: SignedPermutation = word.parse().map_err(|e| format!("{e}"))?;
            let got = w.pixed_factorization().map_err(|e| format!("{e}"))?.to_string();
            if got != expected {
                return Err(format!("factorization of {word}: {got} != {expected}"));
            }
        }

        let w: SignedPermutation = "3,-2,8,4,5,-1,9,-6,7".parse().map_err(|e| format!("{e}"))?;
        let image = bperm::identities::phi(&w).to_string();
        if image != "-2,4,5,9,7,8,-6,-1,3" {
            return Err(format!("phi image {image}"));
        }

        let plain = desarmenien_f(&perm::parse_letters("9,7,4,3,8,2,6,5,1").unwrap())
            .map_err(|e| e.to_string())?;
        if perm::format_letters(&plain) != "8,5,4,3,6,2,7,9,1" {
            return Err(format!("plain derangement image {plain:?}"));
        }
        let signed = desarmenien_f(&perm::parse_letters("-1,3,8,9,-6,7").unwrap())
            .map_err(|e| e.to_string())?;
        if perm::format_letters(&signed) != "9,7,8,-6,-1,3" {
            return Err(format!("signed derangement image {signed:?}"));
        }

        let p: WeightedSignedPermutation =
            "c=10,10,9,7,7,7,4,4,4,3,2,2,1;w=1,2,-7,-6,-5,-4,3,8,9,-10,12,13,-11"
                .parse()
                .map_err(|e| format!("{e}"))?;
        let d = wsp_decompose(&p);
        if d.v_e.to_string() != "10,10,4,4"
            || d.v_o.to_string() != "7,3"
            || d.core.to_string() != "c=9,7,7,4,2,2,1;w=-4,-3,-2,1,6,7,-5"
        {
            return Err("order-13 split".into());
        }
        let step1 = insert_fixed_block(&d.core, 10, 2).map_err(|e| format!("{e}"))?;
        let step2 = insert_fixed_block(&step1, 7, 1).map_err(|e| format!("{e}"))?;
        let step3 = insert_fixed_block(&step2, 4, 2).map_err(|e| format!("{e}"))?;
        let step4 = insert_fixed_block(&step3, 3, 1).map_err(|e| format!("{e}"))?;
        if step1.to_string() != "c=10,10,9,7,7,4,2,2,1;w=1,2,-6,-5,-4,3,8,9,-7"
            || step2.to_string() != "c=10,10,9,7,7,7,4,2,2,1;w=1,2,-7,-6,-5,-4,3,9,10,-8"
            || step3.to_string() != "c=10,10,9,7,7,7,4,4,4,2,2,1;w=1,2,-7,-6,-5,-4,3,8,9,11,12,-10"
            || step4 != p
        {
            return Err("order-13 insertion chain".into());
        }

        let pair: WeightedSignedPermutation = "c=10,9,7,4,4,2,2,1,1;w=1,-4,-3,2,5,6,8,-9,-7"
            .parse()
            .map_err(|e| format!("{e}"))?;
        if macmahon_to_word(&pair).to_string() != "10,4,7,9,4,2,1,2,1" {
            return Err("weight word".into());
        }

        let pair: WeightedSignedPermutation = "c=9,7,7,4,4,4,2,2,1,1;w=-4,-3,-2,1,5,6,8,9,-10,-7"
            .parse()
            .map_err(|e| format!("{e}"))?;
        let (b, _) = fdes_pairing(&pair).map_err(|e| format!("{e}"))?;
        if b.to_string() != "3,2,2,1,1,1,0,0,0,0" {
            return Err(format!("pairing word {b}"));
        }
        Ok(())
    })();
    conclude("7", "printed worked examples byte for byte", started, outcome);
}
