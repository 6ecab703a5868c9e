//! Named morphisms, words and integer sequences used throughout the crate
//! and exposed by the command-line tool.
//!
//! Word identifiers:
//!
//! | id    | word                                            |
//! |-------|-------------------------------------------------|
//! | `tm`  | Thue-Morse word, fixed point of `0->01;1->10`   |
//! | `pd`  | period-doubling word, fixed point of `0->01;1->00` |
//! | `tm2` | 2-block coding of `tm` (alphabet `{0,1,2,3}`)   |
//! | `pd2` | 2-block coding of `pd` (alphabet `{0,1,2}`)     |
//! | `pd3` | 3-block coding of `pd` (alphabet `{0..8}`)      |
//!
//! Sequence identifiers accepted by [`sequence`]: `A` (or `a007302`),
//! `const1`, `p<l>-<word>` for `l`-abelian complexity, `pinf-<word>` for
//! factor complexity, and `max<S>-<word>` / `min<S>-<word>` /
//! `delta<S>-<word>` / `jmax<S>-<word>` / `jmin<S>-<word>` for the extremal
//! count statistics over the letter set `S` (digits, e.g. `delta12-tm2`).

use std::sync::{Arc, LazyLock};

use crate::complexity::{statistic_with, Statistic};
use crate::error::{Error, Result};
use crate::kernel::SequenceOracle;
use crate::reflection;
use crate::words::{Alphabet, FactorConfig, LetterSet, Morphism, Word};

/// `0 -> 01, 1 -> 10`, generating the Thue-Morse word.
pub fn thue_morse_morphism() -> Morphism {
    Morphism::parse("0->01;1->10").unwrap()
}

/// `0 -> 01, 1 -> 00`, generating the period-doubling word.
pub fn period_doubling_morphism() -> Morphism {
    Morphism::parse("0->01;1->00").unwrap()
}

/// `0 -> 12, 1 -> 12, 2 -> 00`; its fixed point from 1 is the 2-block
/// coding of the period-doubling word.
pub fn pd_block2_morphism() -> Morphism {
    Morphism::parse("0->12;1->12;2->00").unwrap()
}

/// `0 -> 12, 1 -> 13, 2 -> 20, 3 -> 21`; its fixed point from 1 is the
/// 2-block coding of the Thue-Morse word.
pub fn tm_block2_morphism() -> Morphism {
    Morphism::parse("0->12;1->13;2->20;3->21").unwrap()
}

/// The letter swap `1 <-> 2` on `{0,1,2}`; reversal composed with this swap
/// preserves the factors of `pd2`.
pub fn swap12_ternary() -> Morphism {
    Morphism::parse("0->0;1->2;2->1").unwrap()
}

/// The letter swap `1 <-> 2` on `{0,1,2,3}`.
pub fn swap12_quaternary() -> Morphism {
    Morphism::parse("0->0;1->2;2->1;3->3").unwrap()
}

/// The letter swap `0 <-> 3` on `{0,1,2,3}`.
pub fn swap03_quaternary() -> Morphism {
    Morphism::parse("0->3;1->1;2->2;3->0").unwrap()
}

/// The coding `0,3 -> 1` and `1,2 -> 0` taking `tm2` back to the
/// period-doubling word.
pub fn tm2_to_pd_coding() -> Morphism {
    Morphism::parse("0->1;1->0;2->0;3->1").unwrap()
}

static TM: LazyLock<Arc<Word>> = LazyLock::new(|| {
    Word::fixed_point(&thue_morse_morphism(), 0).unwrap().with_id("tm")
});
static PD: LazyLock<Arc<Word>> = LazyLock::new(|| {
    Word::fixed_point(&period_doubling_morphism(), 0).unwrap().with_id("pd")
});
static TM2: LazyLock<Arc<Word>> = LazyLock::new(|| TM.blocks(2).unwrap().with_id("tm2"));
static PD2: LazyLock<Arc<Word>> = LazyLock::new(|| PD.blocks(2).unwrap().with_id("pd2"));
static PD3: LazyLock<Arc<Word>> = LazyLock::new(|| PD.blocks(3).unwrap().with_id("pd3"));

/// The Thue-Morse word.
pub fn thue_morse() -> Arc<Word> {
    TM.clone()
}

/// The period-doubling word.
pub fn period_doubling() -> Arc<Word> {
    PD.clone()
}

/// The 2-block coding of the Thue-Morse word.
pub fn tm_block2() -> Arc<Word> {
    TM2.clone()
}

/// The 2-block coding of the period-doubling word.
pub fn pd_block2() -> Arc<Word> {
    PD2.clone()
}

/// The 3-block coding of the period-doubling word.
pub fn pd_block3() -> Arc<Word> {
    PD3.clone()
}

/// Looks up a catalog word by identifier.
pub fn word(id: &str) -> Result<Arc<Word>> {
    match id {
        "tm" => Ok(thue_morse()),
        "pd" => Ok(period_doubling()),
        "tm2" => Ok(tm_block2()),
        "pd2" => Ok(pd_block2()),
        "pd3" => Ok(pd_block3()),
        _ => Err(Error::BadInput(format!(
            "unknown word id `{id}` (expected tm, pd, tm2, pd2 or pd3)"
        ))),
    }
}

/// All catalog word identifiers.
pub fn word_ids() -> &'static [&'static str] {
    &["tm", "pd", "tm2", "pd2", "pd3"]
}

fn parse_letter_set(digits: &str) -> Result<LetterSet> {
    let letters: Vec<u32> = digits
        .chars()
        .map(|c| c.to_digit(10).ok_or_else(|| Error::BadInput(format!("bad letter `{c}`"))))
        .collect::<Result<_>>()?;
    if letters.is_empty() {
        return Err(Error::BadInput("statistic needs a nonempty letter set".into()));
    }
    Ok(LetterSet::new(letters))
}

/// Parses a statistic name such as `p2`, `pinf`, `delta12` or `jmax0`.
pub fn parse_statistic(name: &str) -> Result<Statistic> {
    if name == "pinf" || name == "factor" {
        return Ok(Statistic::Factors);
    }
    if let Some(level) = name.strip_prefix('p') {
        let order: u32 = level
            .parse()
            .map_err(|_| Error::BadInput(format!("bad abelian order `{level}`")))?;
        if order == 0 {
            return Err(Error::BadInput("abelian order must be at least 1".into()));
        }
        return Ok(Statistic::AbelianClasses { order });
    }
    for (prefix, build) in [
        ("delta", Statistic::DeltaCount as fn(LetterSet) -> Statistic),
        ("jmax", Statistic::MaxJump),
        ("jmin", Statistic::MinJump),
        ("max", Statistic::MaxCount),
        ("min", Statistic::MinCount),
    ] {
        if let Some(digits) = name.strip_prefix(prefix) {
            return Ok(build(parse_letter_set(digits)?));
        }
    }
    Err(Error::BadInput(format!("unknown statistic `{name}`")))
}

/// Builds a sequence oracle from an identifier such as `A`, `const1`,
/// `p2-tm` or `delta0-pd2`.  Word statistics are memoized per oracle.
pub fn sequence(id: &str) -> Result<SequenceOracle> {
    sequence_with(id, &FactorConfig::default())
}

/// Like [`sequence`], with explicit factor-enumeration controls for word
/// statistics.
pub fn sequence_with(id: &str, cfg: &FactorConfig) -> Result<SequenceOracle> {
    match id {
        "A" | "a007302" => return Ok(a_sequence_oracle()),
        "const1" => return Ok(SequenceOracle::constant("const1", 1)),
        _ => {}
    }
    let (stat_name, word_id) = id
        .split_once('-')
        .ok_or_else(|| Error::BadInput(format!("unknown sequence id `{id}`")))?;
    let stat = parse_statistic(stat_name)?;
    let w = word(word_id)?;
    Ok(statistic_oracle_with(id, &w, stat, cfg))
}

/// The reflection sequence with one initial value 0 and increment 1
/// (OEIS A007302), realized by its recurrence.
pub fn a_sequence_oracle() -> SequenceOracle {
    SequenceOracle::memoized("A007302", reflection::a_sequence)
}

/// Wraps a word statistic as a memoized oracle.  Evaluation panics if the
/// factor set fails to stabilize under the prefix cap, which the catalog
/// words never do.
pub fn statistic_oracle(label: &str, word: &Arc<Word>, stat: Statistic) -> SequenceOracle {
    statistic_oracle_with(label, word, stat, &FactorConfig::default())
}

pub fn statistic_oracle_with(
    label: &str,
    word: &Arc<Word>,
    stat: Statistic,
    cfg: &FactorConfig,
) -> SequenceOracle {
    let word = word.clone();
    let cfg = *cfg;
    SequenceOracle::memoized(label, move |n| {
        statistic_with(&word, &stat, n as usize, &cfg)
            .expect("catalog statistic stabilizes") as i64
    })
}

/// Alphabets of the three block codings, for convenience in tests.
pub fn ternary() -> Alphabet {
    Alphabet::new(3)
}
