//! Batch command-line surface over the `bperm` library: statistics,
//! enumeration tables, bijection application, and identity verification
//! with machine-readable reports.

use std::collections::BTreeSet;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bperm::identities::closed::family_cap;
use bperm::identities::{
    desarmenien_f, enum_polynomial, phi, phi_inverse, GroupFamily, StatBundle,
};
use bperm::perm::{self, SignedPermutation, SubsetClass};
use bperm::weighted::{
    fdes_pairing, macmahon_from_word, macmahon_to_word, wsp_decompose, wsp_recompose,
    WeightedSignedPermutation, WspDecomposition,
};
use bperm::words::IntWord;
use bperm::{registry, verify, IdentityId, VerifyReport, VerifyStatus};

#[derive(Parser)]
#[command(
    name = "bperm",
    version,
    about = "Exact statistics, bijections and identity checks for signed permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every statistic and the pixed factorization of one signed permutation
    Stats {
        /// Comma-separated letters, e.g. "3,-2,1"; the empty string is the empty word
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// List every member of a permutation family, one word per line
    Enumerate {
        /// Family tag: B, D, K, DB or KB
        #[arg(long)]
        class: String,
        /// Order of the permutations
        #[arg(long)]
        n: usize,
    },
    /// Apply a bijection and print the image with its transported statistics
    Bijection {
        #[arg(long, value_enum)]
        name: BijectionName,
        /// Input in the encoding of the chosen bijection
        #[arg(long, allow_hyphen_values = true)]
        input: String,
    },
    /// Run identity checkers and print one report per identity
    Verify(VerifyArgs),
    /// Print a family of generating polynomials, one row per order
    Table {
        #[arg(long, value_enum)]
        family: TableFamily,
        /// Largest order to include
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BijectionName {
    /// Fixed points to pixed points on signed permutations
    Phi,
    PhiInv,
    /// Derangements to desarrangements over any alphabet
    Desarmenien,
    /// Weighted signed permutations to words over {0..s}
    Macmahon,
    MacmahonInv,
    /// Split off the weighted fixed points
    WspDecompose,
    WspRecompose,
    /// Weight word and permutation carrying the flag descent statistics
    FdesPair,
}

#[derive(Args)]
struct VerifyArgs {
    /// Registry tag of the identity to check
    #[arg(long, conflicts_with = "all")]
    identity: Option<String>,
    /// Check every identity in the registry
    #[arg(long)]
    all: bool,
    /// Largest order enumerated exhaustively
    #[arg(long)]
    n_max: Option<usize>,
    /// Number of series coefficients compared in u
    #[arg(long)]
    u_order: Option<usize>,
    /// Truncation exponent for t
    #[arg(long)]
    t_order: Option<usize>,
    /// Truncation exponent for q
    #[arg(long)]
    q_order: Option<i32>,
    /// Largest letter bound for weighted families
    #[arg(long)]
    s_max: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFamily {
    /// Signed derangements by flag major index and negation count
    #[value(name = "DnB")]
    DnB,
    /// Derangements by major index
    #[value(name = "Dn")]
    Dn,
    /// Desarrangements by inversion number
    #[value(name = "Kn")]
    Kn,
    /// Plain permutations by descents, major index and fixed points
    #[value(name = "An")]
    An,
    /// Signed permutations by the full flag statistic record
    #[value(name = "Bn")]
    Bn,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Stats { word, json } => cmd_stats(&word, json),
        Command::Enumerate { class, n } => cmd_enumerate(&class, n),
        Command::Bijection { name, input } => cmd_bijection(name, &input),
        Command::Verify(args) => cmd_verify(&args),
        Command::Table { family, n_max, format } => cmd_table(family, n_max, format),
    }
}

// ---------------------------------------------------------------------------
// Display helpers
// ---------------------------------------------------------------------------

/// Comma-separated letters, with `e` for the empty word.
fn display_word(letters: &[i32]) -> String {
    if letters.is_empty() {
        "e".to_string()
    } else {
        perm::format_letters(letters)
    }
}

fn display_intword(w: &IntWord) -> String {
    if w.lambda() == 0 {
        "e".to_string()
    } else {
        w.to_string()
    }
}

fn display_set(set: &BTreeSet<i32>) -> String {
    let body = set.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("{{{body}}}")
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

fn cmd_stats(word: &str, json: bool) -> Result<ExitCode> {
    let w: SignedPermutation = word.parse().map_err(|e| anyhow!("{e}"))?;
    let profile = w.stat_profile();
    let pixed = w.pixed_factorization().map_err(|e| anyhow!("{e}"))?;
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            word: String,
            profile: &'a bperm::StatProfile,
            pixed: &'a bperm::PixedFactorization,
        }
        let out = Out { word: w.to_string(), profile: &profile, pixed: &pixed };
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("word: {}", display_word(w.letters()));
        println!("pixed: {pixed}");
        println!("n: {}", profile.n);
        println!("neg: {}", profile.neg);
        println!("neg set: {}", display_set(&profile.neg_set));
        println!("fix+: {}", profile.fix_plus);
        println!("fix+ set: {}", display_set(&profile.fix_plus_set));
        println!("fix-: {}", profile.fix_minus);
        println!("fix- set: {}", display_set(&profile.fix_minus_set));
        println!("pix+: {}", profile.pix_plus);
        println!("pix+ set: {}", display_set(&profile.pix_plus_set));
        println!("pix-: {}", profile.pix_minus);
        println!("pix- set: {}", display_set(&profile.pix_minus_set));
        println!("inv: {}", profile.inv);
        println!("length: {}", profile.length);
        println!("des: {}", profile.des);
        println!("maj: {}", profile.maj);
        println!("fdes: {}", profile.fdes);
        println!("fmaj: {}", profile.fmaj);
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

fn cmd_enumerate(class: &str, n: usize) -> Result<ExitCode> {
    let class = SubsetClass::from_tag(class)
        .ok_or_else(|| anyhow!("unknown class tag `{class}` (expected B, D, K, DB or KB)"))?;
    let family = match class {
        SubsetClass::B => GroupFamily::B,
        SubsetClass::D => GroupFamily::D,
        SubsetClass::K => GroupFamily::K,
        SubsetClass::DB => GroupFamily::DB,
        SubsetClass::KB => GroupFamily::KB,
    };
    let cap = family_cap(family);
    if n > cap {
        bail!("order {n} exceeds the enumeration cap {cap}");
    }
    for w in perm::enumerate(n, class) {
        println!("{}", display_word(w.letters()));
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// bijection
// ---------------------------------------------------------------------------

fn cmd_bijection(name: BijectionName, input: &str) -> Result<ExitCode> {
    match name {
        BijectionName::Phi => {
            let w: SignedPermutation = input.parse().map_err(|e| anyhow!("{e}"))?;
            let y = phi(&w);
            let a = w.stat_profile();
            let b = y.stat_profile();
            println!("image: {}", display_word(y.letters()));
            println!(
                "fix-(input)={} pix-(image)={}",
                display_set(&a.fix_minus_set),
                display_set(&b.pix_minus_set)
            );
            println!(
                "fix+(input)={} pix+(image)={}",
                display_set(&a.fix_plus_set),
                display_set(&b.pix_plus_set)
            );
            println!("neg(input)={} neg(image)={}", a.neg, b.neg);
        }
        BijectionName::PhiInv => {
            let y: SignedPermutation = input.parse().map_err(|e| anyhow!("{e}"))?;
            let w = phi_inverse(&y);
            let a = y.stat_profile();
            let b = w.stat_profile();
            println!("image: {}", display_word(w.letters()));
            println!(
                "pix-(input)={} fix-(image)={}",
                display_set(&a.pix_minus_set),
                display_set(&b.fix_minus_set)
            );
            println!(
                "pix+(input)={} fix+(image)={}",
                display_set(&a.pix_plus_set),
                display_set(&b.fix_plus_set)
            );
            println!("neg(input)={} neg(image)={}", a.neg, b.neg);
        }
        BijectionName::Desarmenien => {
            let letters = perm::parse_letters(input).map_err(|e| anyhow!("{e}"))?;
            let image = desarmenien_f(&letters).map_err(|e| anyhow!("{e}"))?;
            println!("image: {}", display_word(&image));
            let mut alphabet = image.clone();
            alphabet.sort_unstable();
            println!("alphabet: {}", display_word(&alphabet));
            println!("desarrangement: {}", perm::is_desarrangement(&image));
        }
        BijectionName::Macmahon => {
            let p: WeightedSignedPermutation = input.parse().map_err(|e| anyhow!("{e}"))?;
            let d = macmahon_to_word(&p);
            let profile = p.w().stat_profile();
            println!("image: {}", display_intword(&d));
            println!("tot(c)={} tot(image)={}", p.c().tot(), d.tot());
            println!("neg(w)={} odd(image)={}", profile.neg, d.odd());
        }
        BijectionName::MacmahonInv => {
            let d: IntWord = input.parse().map_err(|e| anyhow!("{e}"))?;
            let p = macmahon_from_word(&d);
            let profile = p.w().stat_profile();
            println!("image: {p}");
            println!("tot(input)={} tot(c)={}", d.tot(), p.c().tot());
            println!("odd(input)={} neg(w)={}", d.odd(), profile.neg);
        }
        BijectionName::WspDecompose => {
            let p: WeightedSignedPermutation = input.parse().map_err(|e| anyhow!("{e}"))?;
            let d = wsp_decompose(&p);
            let profile = p.w().stat_profile();
            println!("core: {}", d.core);
            println!("v_e: {}", display_intword(&d.v_e));
            println!("v_o: {}", display_intword(&d.v_o));
            println!("fix+={} |v_e|={}", profile.fix_plus, d.v_e.lambda());
            println!("fix-={} |v_o|={}", profile.fix_minus, d.v_o.lambda());
            println!(
                "tot(c)={} tot(core)+tot(v_e)+tot(v_o)={}",
                p.c().tot(),
                d.core.c().tot() + d.v_e.tot() + d.v_o.tot()
            );
        }
        BijectionName::WspRecompose => {
            let parts: Vec<&str> = input.split('|').map(str::trim).collect();
            if parts.len() != 3 {
                bail!("expected `CORE|V_E|V_O` with exactly two `|` separators");
            }
            let core: WeightedSignedPermutation = parts[0].parse().map_err(|e| anyhow!("{e}"))?;
            let parse_word = |s: &str| -> Result<IntWord> {
                if s.is_empty() || s == "e" {
                    Ok(IntWord::empty())
                } else {
                    s.parse().map_err(|e| anyhow!("{e}"))
                }
            };
            let d = WspDecomposition {
                core,
                v_e: parse_word(parts[1])?,
                v_o: parse_word(parts[2])?,
            };
            let p = wsp_recompose(&d).map_err(|e| anyhow!("{e}"))?;
            println!("image: {p}");
        }
        BijectionName::FdesPair => {
            let p: WeightedSignedPermutation = input.parse().map_err(|e| anyhow!("{e}"))?;
            let (b, w) = fdes_pairing(&p).map_err(|e| anyhow!("{e}"))?;
            let profile = w.stat_profile();
            println!("b: {}", display_intword(&b));
            println!("w: {}", display_word(w.letters()));
            if p.n() > 0 {
                let b1 = b.letters()[0];
                let c1 = p.c().letters()[0];
                println!("2*b1 + fdes = {} = c1 = {}", 2 * b1 + profile.fdes as u32, c1);
            }
            println!(
                "2*tot(b) + fmaj = {} = tot(c) = {}",
                2 * b.tot() + profile.fmaj as u64,
                p.c().tot()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let jobs: Vec<IdentityId> = if args.all {
        registry().to_vec()
    } else if let Some(tag) = &args.identity {
        vec![tag.parse::<IdentityId>().map_err(|e| anyhow!("{e}"))?]
    } else {
        bail!("pass --identity <TAG> or --all");
    };
    let mut all_pass = true;
    for id in jobs {
        let mut params = id.default_params();
        if args.all {
            // one uniform order bound across the registry
            params.n_max = args.n_max.unwrap_or(5);
        } else if let Some(v) = args.n_max {
            params.n_max = v;
        }
        if let Some(v) = args.u_order {
            params.u_order = v;
        }
        if let Some(v) = args.t_order {
            params.t_order = v;
        }
        if let Some(v) = args.q_order {
            params.q_order = v;
        }
        if let Some(v) = args.s_max {
            params.s_max = v;
        }
        let report = verify(id, &params).map_err(|e| anyhow!("{e}"))?;
        print_report(&report);
        if report.status != VerifyStatus::Pass {
            all_pass = false;
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn print_report(r: &VerifyReport) {
    let p = &r.params;
    let status = match r.status {
        VerifyStatus::Pass => "pass",
        VerifyStatus::Fail => "FAIL",
    };
    println!(
        "{} {} (n_max={} u_order={} t_order={} q_order={} s_max={}) [{} ms]",
        r.identity, status, p.n_max, p.u_order, p.t_order, p.q_order, p.s_max, r.elapsed_ms
    );
    if let Some(w) = &r.witness {
        println!("  at {}", w.location);
        println!("  expected {}", w.expected);
        println!("  actual   {}", w.actual);
    }
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn cmd_table(family: TableFamily, n_max: usize, format: TableFormat) -> Result<ExitCode> {
    let (group, bundle) = match family {
        TableFamily::DnB => (GroupFamily::DB, StatBundle::FmajNeg),
        TableFamily::Dn => (GroupFamily::D, StatBundle::Maj),
        TableFamily::Kn => (GroupFamily::K, StatBundle::Inv),
        TableFamily::An => (GroupFamily::S, StatBundle::DesMajFix),
        TableFamily::Bn => (GroupFamily::B, StatBundle::Flag),
    };
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        rows.push(enum_polynomial(n, group, bundle).map_err(|e| anyhow!("{e}"))?);
    }
    match format {
        TableFormat::Csv => {
            println!("n,polynomial");
            for (n, poly) in rows.iter().enumerate() {
                println!("{n},{poly}");
            }
        }
        TableFormat::Json => {
            #[derive(Serialize)]
            struct Term {
                exps: [i32; 5],
                coeff: String,
            }
            #[derive(Serialize)]
            struct Row {
                n: usize,
                terms: Vec<Term>,
            }
            let out: Vec<Row> = rows
                .iter()
                .enumerate()
                .map(|(n, poly)| Row {
                    n,
                    terms: poly
                        .terms()
                        .map(|(e, c)| Term { exps: e.0, coeff: c.to_string() })
                        .collect(),
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}
