//! Complexity statistics of a word: factor complexity, `l`-abelian
//! complexity, extremal letter-count functions over a letter set, and their
//! 0/1 jump functions.
//!
//! Each statistic is available through two routes.  The operations
//! [`factor_complexity`], [`l_abelian_complexity`], [`extremal_counts`] and
//! [`jump_functions`] work from a materialized [`FactorSet`], exactly as the
//! statistics are defined.  [`statistic`] and [`series`] compute the same
//! values with an incremental window scan that never materializes factors,
//! which is what makes long series and deep kernel arguments affordable.
//! The two routes are checked against each other in the test suite.

use std::sync::Arc;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{
    enumerate_factors_with, l_abelian_key, FactorConfig, FactorSet, Letter, LetterSet, Word,
};

/// One statistic of a word, as a function of the factor length `n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// Number of distinct factors of length `n`.
    Factors,
    /// Number of factors of length `n` up to `order`-abelian equivalence.
    AbelianClasses { order: u32 },
    /// Maximum total count of the letters in the set over factors of
    /// length `n`.
    MaxCount(LetterSet),
    /// Minimum total count of the letters in the set.
    MinCount(LetterSet),
    /// Maximum minus minimum count.
    DeltaCount(LetterSet),
    /// 1 when the maximum count increases at `n` (0 at `n = 0`).
    MaxJump(LetterSet),
    /// 1 when the minimum count increases from `n` to `n + 1`.
    MinJump(LetterSet),
}

impl Statistic {
    /// Short name used in series exports and sequence identifiers, e.g.
    /// `pinf`, `p2`, `delta12`, `jmax0`.
    pub fn label(&self) -> String {
        match self {
            Statistic::Factors => "pinf".into(),
            Statistic::AbelianClasses { order } => format!("p{order}"),
            Statistic::MaxCount(s) => format!("max{s}"),
            Statistic::MinCount(s) => format!("min{s}"),
            Statistic::DeltaCount(s) => format!("delta{s}"),
            Statistic::MaxJump(s) => format!("jmax{s}"),
            Statistic::MinJump(s) => format!("jmin{s}"),
        }
    }

    pub fn abelian(order: u32) -> Statistic {
        assert!(order >= 1);
        Statistic::AbelianClasses { order }
    }
}

/// Extremal letter counts at one factor length.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExtremalCounts {
    pub min: u64,
    pub max: u64,
    pub delta: u64,
}

/// Number of distinct factors of length `n`.
pub fn factor_complexity(word: &Arc<Word>, n: usize) -> Result<u64> {
    Ok(enumerate(word, n)?.len() as u64)
}

/// Number of `order`-abelian equivalence classes among factors of length
/// `n`.  For `n < order - 1` classes are singletons, so this equals the
/// factor complexity.
pub fn l_abelian_complexity(word: &Arc<Word>, order: u32, n: usize) -> Result<u64> {
    let factors = enumerate(word, n)?;
    if n + 1 < order as usize {
        return Ok(factors.len() as u64);
    }
    let alphabet = word.alphabet();
    let mut keys = FxHashSet::default();
    for f in factors.iter() {
        keys.insert(l_abelian_key(f, order, alphabet)?);
    }
    Ok(keys.len() as u64)
}

/// Minimum, maximum and spread of the total count of `letters` over the
/// factors of length `n`.  Every integer between the extremes is attained
/// by some factor; this is checked and a gap reports an error.
pub fn extremal_counts(word: &Arc<Word>, letters: &LetterSet, n: usize) -> Result<ExtremalCounts> {
    let factors = enumerate(word, n)?;
    extremal_of_set(&factors, letters)
}

fn extremal_of_set(factors: &FactorSet, letters: &LetterSet) -> Result<ExtremalCounts> {
    if factors.length() == 0 {
        return Ok(ExtremalCounts { min: 0, max: 0, delta: 0 });
    }
    if factors.is_empty() {
        return Err(Error::TooShort { len: 0, need: factors.length() });
    }
    let mut attained = FxHashSet::default();
    for f in factors.iter() {
        attained.insert(letters.count_in(f));
    }
    let min = *attained.iter().min().unwrap();
    let max = *attained.iter().max().unwrap();
    for v in min..=max {
        if !attained.contains(&v) {
            return Err(Error::BadInput(format!(
                "count {v} between {min} and {max} is not attained at length {}",
                factors.length()
            )));
        }
    }
    Ok(ExtremalCounts { min, max, delta: max - min })
}

/// The jump indicators `(max_jump, min_jump)` at `n`: `max_jump(n)` is 1
/// when the maximum count increases from `n - 1` to `n` (0 at `n = 0`),
/// and `min_jump(n)` is 1 when the minimum count increases from `n` to
/// `n + 1`.
pub fn jump_functions(word: &Arc<Word>, letters: &LetterSet, n: usize) -> Result<(u64, u64)> {
    let here = extremal_counts(word, letters, n)?;
    let max_jump = if n == 0 {
        0
    } else {
        here.max - extremal_counts(word, letters, n - 1)?.max
    };
    let min_jump = extremal_counts(word, letters, n + 1)?.min - here.min;
    Ok((max_jump, min_jump))
}

fn enumerate(word: &Arc<Word>, n: usize) -> Result<FactorSet> {
    enumerate_factors_with(word, n, &FactorConfig::default())
}

// ---------------------------------------------------------------------------
// Incremental window scans.
// ---------------------------------------------------------------------------

/// What one scan round must produce for a statistic.
enum Pass {
    Distinct,
    Classes { order: u32 },
    Extremes { letters: LetterSet },
}

/// Values produced by one pass at one prefix length.
#[derive(Clone, PartialEq, Eq, Debug)]
enum PassValue {
    Count(u64),
    MinMax(u64, u64),
}

fn distinct_windows(prefix: &[Letter], n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    if prefix.len() < n {
        return 0;
    }
    let set: FxHashSet<&[Letter]> = prefix.windows(n).collect();
    set.len() as u64
}

fn extremes_pass(prefix: &[Letter], n: usize, letters: &LetterSet) -> Option<(u64, u64)> {
    if n == 0 {
        return Some((0, 0));
    }
    if prefix.len() < n {
        return None;
    }
    let max_letter = prefix.iter().copied().max().unwrap_or(0) as usize;
    let mut in_set = vec![0u64; max_letter + 1];
    for &a in letters.letters() {
        if (a as usize) <= max_letter {
            in_set[a as usize] = 1;
        }
    }
    let mut count: u64 = prefix[..n].iter().map(|&a| in_set[a as usize]).sum();
    let (mut min, mut max) = (count, count);
    for i in n..prefix.len() {
        count += in_set[prefix[i] as usize];
        count -= in_set[prefix[i - n] as usize];
        min = min.min(count);
        max = max.max(count);
    }
    Some((min, max))
}

/// Distinct `(prefix, block-count)` keys over the windows, counted with a
/// packed representation when it fits in 128 bits and with explicit count
/// vectors otherwise.
fn classes_pass(base: &[Letter], blocks: &[Letter], order: u32, n: usize) -> u64 {
    let width = order as usize;
    debug_assert!(n >= width);
    let nw = n - width + 1; // window length in the block-coded word
    let windows = base.len() - n + 1;
    debug_assert!(blocks.len() >= nw + windows - 1);

    // Effective block letters actually occurring in the scanned range.
    let scan_len = nw + windows - 1;
    let max_block = blocks[..scan_len].iter().copied().max().unwrap_or(0) as usize;
    let mut field_of = vec![usize::MAX; max_block + 1];
    let mut effective = 0usize;
    for &b in &blocks[..scan_len] {
        if field_of[b as usize] == usize::MAX {
            field_of[b as usize] = effective;
            effective += 1;
        }
    }

    // One field per effective letter except the last; its count is implied
    // by the fixed window length.
    let fields = effective.saturating_sub(1);
    let count_bits = u64::BITS - (nw as u64).leading_zeros();
    let letter_bits = if width > 1 {
        let max_base = base[..scan_len + width - 1].iter().copied().max().unwrap_or(0);
        (u32::BITS - max_base.leading_zeros()).max(1)
    } else {
        0
    };
    let packed_bits = fields as u32 * count_bits + (width as u32 - 1) * letter_bits;

    if packed_bits <= 64 {
        let mut bump = vec![0u64; max_block + 1];
        for (b, &f) in field_of.iter().enumerate() {
            if f != usize::MAX && f < fields {
                bump[b] = 1u64 << (count_bits * f as u32);
            }
        }
        let mut key: u64 = blocks[..nw].iter().map(|&b| bump[b as usize]).sum();
        let mut seen: FxHashSet<u64> = FxHashSet::default();
        seen.reserve(1024.min(windows));
        let shift = fields as u32 * count_bits;
        for i in 0..windows {
            if i > 0 {
                key += bump[blocks[i + nw - 1] as usize];
                key -= bump[blocks[i - 1] as usize];
            }
            let mut full = key;
            for (t, &a) in base[i..i + width - 1].iter().enumerate() {
                full |= (a as u64) << (shift + letter_bits * t as u32);
            }
            seen.insert(full);
        }
        seen.len() as u64
    } else if packed_bits <= 128 {
        let mut bump = vec![0u128; max_block + 1];
        for (b, &f) in field_of.iter().enumerate() {
            if f != usize::MAX && f < fields {
                bump[b] = 1u128 << (count_bits * f as u32);
            }
        }
        let mut key: u128 = blocks[..nw].iter().map(|&b| bump[b as usize]).sum();
        let mut seen: FxHashSet<u128> = FxHashSet::default();
        seen.reserve(1024.min(windows));
        let shift = fields as u32 * count_bits;
        for i in 0..windows {
            if i > 0 {
                key += bump[blocks[i + nw - 1] as usize];
                key -= bump[blocks[i - 1] as usize];
            }
            let mut full = key;
            for (t, &a) in base[i..i + width - 1].iter().enumerate() {
                full |= (a as u128) << (shift + letter_bits * t as u32);
            }
            seen.insert(full);
        }
        seen.len() as u64
    } else {
        let mut counts = vec![0u32; effective];
        for &b in &blocks[..nw] {
            counts[field_of[b as usize]] += 1;
        }
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        for i in 0..windows {
            if i > 0 {
                counts[field_of[blocks[i + nw - 1] as usize]] += 1;
                counts[field_of[blocks[i - 1] as usize]] -= 1;
            }
            let mut full = counts.clone();
            full.extend(base[i..i + width - 1].iter().copied());
            seen.insert(full);
        }
        seen.len() as u64
    }
}

/// Runs all passes over prefixes of doubling length until every value
/// agrees between two successive rounds.
fn scan(word: &Arc<Word>, n: usize, passes: &[Pass], cfg: &FactorConfig) -> Result<Vec<PassValue>> {
    if n == 0 {
        // The empty factor is the unique factor of length 0.
        return Ok(passes
            .iter()
            .map(|pass| match pass {
                Pass::Distinct | Pass::Classes { .. } => PassValue::Count(1),
                Pass::Extremes { .. } => PassValue::MinMax(0, 0),
            })
            .collect());
    }
    // Derived block codings share their own prefix caches for the duration
    // of the scan.
    let mut block_words: Vec<(u32, Arc<Word>)> = Vec::new();
    for pass in passes {
        if let Pass::Classes { order } = pass {
            if *order > 1 && n >= *order as usize && !block_words.iter().any(|(o, _)| o == order) {
                block_words.push((*order, word.blocks(*order as usize)?));
            }
        }
    }

    let mut len = if cfg.initial_len > 0 {
        cfg.initial_len.max(n + 1)
    } else {
        (4 * (n + 1)).max(128)
    };
    let mut previous: Option<(Vec<PassValue>, usize)> = None;
    loop {
        let letters = word.letters(len);
        let have = letters.len().min(len);
        let prefix = &letters[..have];
        let mut values = Vec::with_capacity(passes.len());
        for pass in passes {
            let value = match pass {
                Pass::Distinct => PassValue::Count(distinct_windows(prefix, n)),
                Pass::Classes { order } => {
                    let width = *order as usize;
                    if n < width {
                        PassValue::Count(distinct_windows(prefix, n))
                    } else if have < n {
                        PassValue::Count(0)
                    } else if width == 1 {
                        PassValue::Count(classes_pass(prefix, prefix, 1, n))
                    } else {
                        let bw = &block_words.iter().find(|(o, _)| o == order).unwrap().1;
                        let blocks = bw.letters(have);
                        let blocks = &blocks[..have + 1 - width];
                        PassValue::Count(classes_pass(prefix, blocks, *order, n))
                    }
                }
                Pass::Extremes { letters } => match extremes_pass(prefix, n, letters) {
                    Some((min, max)) => PassValue::MinMax(min, max),
                    None => {
                        return Err(Error::TooShort { len: have, need: n });
                    }
                },
            };
            values.push(value);
        }
        let done = match &previous {
            Some((prev, prev_len)) => *prev == values && (*prev_len < have || have < len),
            None => have < len && !word.is_extendable(),
        };
        if done {
            return Ok(values);
        }
        if len >= cfg.max_prefix {
            return Err(Error::NotStabilized { n, cap: cfg.max_prefix });
        }
        previous = Some((values, have));
        len = (len * 2).min(cfg.max_prefix);
    }
}

fn count_of(value: &PassValue) -> u64 {
    match value {
        PassValue::Count(c) => *c,
        PassValue::MinMax(..) => unreachable!("expected a count"),
    }
}

fn minmax_of(value: &PassValue) -> (u64, u64) {
    match value {
        PassValue::MinMax(min, max) => (*min, *max),
        PassValue::Count(_) => unreachable!("expected extremes"),
    }
}

fn extremes_at(word: &Arc<Word>, letters: &LetterSet, n: usize, cfg: &FactorConfig) -> Result<(u64, u64)> {
    let values = scan(word, n, &[Pass::Extremes { letters: letters.clone() }], cfg)?;
    Ok(minmax_of(&values[0]))
}

/// Value of one statistic at one length, via the incremental scan.
pub fn statistic(word: &Arc<Word>, stat: &Statistic, n: usize) -> Result<u64> {
    statistic_with(word, stat, n, &FactorConfig::default())
}

pub fn statistic_with(
    word: &Arc<Word>,
    stat: &Statistic,
    n: usize,
    cfg: &FactorConfig,
) -> Result<u64> {
    match stat {
        Statistic::Factors => Ok(count_of(&scan(word, n, &[Pass::Distinct], cfg)?[0])),
        Statistic::AbelianClasses { order } => {
            Ok(count_of(&scan(word, n, &[Pass::Classes { order: *order }], cfg)?[0]))
        }
        Statistic::MaxCount(s) => Ok(extremes_at(word, s, n, cfg)?.1),
        Statistic::MinCount(s) => Ok(extremes_at(word, s, n, cfg)?.0),
        Statistic::DeltaCount(s) => {
            let (min, max) = extremes_at(word, s, n, cfg)?;
            Ok(max - min)
        }
        Statistic::MaxJump(s) => {
            if n == 0 {
                return Ok(0);
            }
            Ok(extremes_at(word, s, n, cfg)?.1 - extremes_at(word, s, n - 1, cfg)?.1)
        }
        Statistic::MinJump(s) => {
            Ok(extremes_at(word, s, n + 1, cfg)?.0 - extremes_at(word, s, n, cfg)?.0)
        }
    }
}

/// The values of one statistic for `n = 0..=n_hi`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComplexitySeries {
    pub word: String,
    pub kind: Statistic,
    pub n_lo: u64,
    pub n_hi: u64,
    pub values: Vec<u64>,
}

impl ComplexitySeries {
    pub fn value(&self, n: u64) -> u64 {
        assert!(
            (self.n_lo..=self.n_hi).contains(&n),
            "n={n} outside series range [{}, {}]",
            self.n_lo,
            self.n_hi
        );
        self.values[(n - self.n_lo) as usize]
    }

    pub fn points(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (self.n_lo + i as u64, v))
    }

    /// Two-column CSV with a header, one row per length.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value\n");
        for (n, v) in self.points() {
            out.push_str(&format!("{n},{v}\n"));
        }
        out
    }

    /// Parses the two-column CSV produced by [`ComplexitySeries::to_csv`].
    pub fn parse_csv(text: &str) -> Result<Vec<(u64, u64)>> {
        let mut points = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (idx == 0 && line == "n,value") {
                continue;
            }
            let (n, v) = line
                .split_once(',')
                .ok_or_else(|| Error::BadInput(format!("bad CSV line `{line}`")))?;
            let n = n.trim().parse().map_err(|_| Error::BadInput(format!("bad n `{n}`")))?;
            let v = v.trim().parse().map_err(|_| Error::BadInput(format!("bad value `{v}`")))?;
            points.push((n, v));
        }
        Ok(points)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serializes")
    }

    pub fn from_json(text: &str) -> Result<ComplexitySeries> {
        serde_json::from_str(text).map_err(|e| Error::BadInput(format!("bad series JSON: {e}")))
    }
}

/// Series of one statistic over `0..=n_hi`.
pub fn series(word: &Arc<Word>, stat: &Statistic, n_hi: usize) -> Result<ComplexitySeries> {
    Ok(series_bundle(word, std::slice::from_ref(stat), n_hi)?.pop().unwrap())
}

/// Series of several statistics over `0..=n_hi`, sharing one window scan
/// per length.  Jump statistics extend the scan by one length as needed.
pub fn series_bundle(
    word: &Arc<Word>,
    stats: &[Statistic],
    n_hi: usize,
) -> Result<Vec<ComplexitySeries>> {
    series_bundle_with(word, stats, n_hi, &FactorConfig::default())
}

pub fn series_bundle_with(
    word: &Arc<Word>,
    stats: &[Statistic],
    n_hi: usize,
    cfg: &FactorConfig,
) -> Result<Vec<ComplexitySeries>> {
    let needs_min_jump = stats.iter().any(|s| matches!(s, Statistic::MinJump(_)));
    let scan_hi = if needs_min_jump { n_hi + 1 } else { n_hi };

    // One pass per distinct request.
    let mut passes: Vec<Pass> = Vec::new();
    let mut pass_keys: Vec<String> = Vec::new();
    let mut request = |pass: Pass, key: String| -> usize {
        if let Some(i) = pass_keys.iter().position(|k| *k == key) {
            return i;
        }
        passes.push(pass);
        pass_keys.push(key);
        pass_keys.len() - 1
    };
    let mut slots: Vec<usize> = Vec::with_capacity(stats.len());
    for stat in stats {
        let slot = match stat {
            Statistic::Factors => request(Pass::Distinct, "pinf".into()),
            Statistic::AbelianClasses { order } => {
                request(Pass::Classes { order: *order }, format!("p{order}"))
            }
            Statistic::MaxCount(s)
            | Statistic::MinCount(s)
            | Statistic::DeltaCount(s)
            | Statistic::MaxJump(s)
            | Statistic::MinJump(s) => {
                request(Pass::Extremes { letters: s.clone() }, format!("ext{s}"))
            }
        };
        slots.push(slot);
    }

    let mut table: Vec<Vec<PassValue>> = Vec::with_capacity(scan_hi + 1);
    for n in 0..=scan_hi {
        table.push(scan(word, n, &passes, cfg)?);
    }

    let mut out = Vec::with_capacity(stats.len());
    for (stat, &slot) in stats.iter().zip(&slots) {
        let values: Vec<u64> = (0..=n_hi)
            .map(|n| match stat {
                Statistic::Factors | Statistic::AbelianClasses { .. } => {
                    count_of(&table[n][slot])
                }
                Statistic::MaxCount(_) => minmax_of(&table[n][slot]).1,
                Statistic::MinCount(_) => minmax_of(&table[n][slot]).0,
                Statistic::DeltaCount(_) => {
                    let (min, max) = minmax_of(&table[n][slot]);
                    max - min
                }
                Statistic::MaxJump(_) => {
                    if n == 0 {
                        0
                    } else {
                        minmax_of(&table[n][slot]).1 - minmax_of(&table[n - 1][slot]).1
                    }
                }
                Statistic::MinJump(_) => {
                    minmax_of(&table[n + 1][slot]).0 - minmax_of(&table[n][slot]).0
                }
            })
            .collect();
        out.push(ComplexitySeries {
            word: word.id().to_string(),
            kind: stat.clone(),
            n_lo: 0,
            n_hi: n_hi as u64,
            values,
        });
    }
    Ok(out)
}
