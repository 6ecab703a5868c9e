//! Finite prefixes of morphic words: morphism iteration, codings, block
//! codings, factor enumeration, Parikh vectors and `l`-abelian equivalence.
//!
//! Letters are small non-negative integers `0..r` for an alphabet of size
//! `r`.  Words over alphabets of size at most 10 print as digit strings
//! (letter `a` is the character `'0' + a`); larger alphabets print as
//! comma-separated integers.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};

/// A letter of a word, always below the alphabet size.
pub type Letter = u32;

/// The alphabet `{0, ..., size - 1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    size: u32,
}

impl Alphabet {
    /// The alphabet of the given size (at least 1).
    pub fn new(size: u32) -> Self {
        assert!(size >= 1, "alphabet must have at least one letter");
        Alphabet { size }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn contains(&self, a: Letter) -> bool {
        a < self.size
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.size
    }

    fn check(&self, w: &[Letter]) -> Result<()> {
        for &a in w {
            if !self.contains(a) {
                return Err(Error::AlphabetMismatch { letter: a, alphabet: self.size });
            }
        }
        Ok(())
    }
}

/// A non-erasing morphism between free monoids over integer alphabets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Vec<Letter>>,
}

impl Morphism {
    /// Builds a morphism from the image of each source letter, in order.
    /// Every image must be nonempty and stay inside `target`.
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Vec<Letter>>) -> Result<Self> {
        if images.len() != source.size() as usize {
            return Err(Error::BadInput(format!(
                "expected {} images, got {}",
                source.size(),
                images.len()
            )));
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::BadInput(format!("image of {a} is empty")));
            }
            target.check(img)?;
        }
        Ok(Morphism { source, target, images })
    }

    /// Parses `"0->01;1->10"` style descriptions. Images are digit strings
    /// or comma-separated integers, alphabets are inferred.
    pub fn parse(text: &str) -> Result<Self> {
        let mut images: Vec<(Letter, Vec<Letter>)> = Vec::new();
        for rule in text.split(';').filter(|r| !r.trim().is_empty()) {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| Error::BadInput(format!("rule `{rule}` lacks `->`")))?;
            let letter: Letter = lhs
                .trim()
                .parse()
                .map_err(|_| Error::BadInput(format!("bad letter `{lhs}`")))?;
            images.push((letter, parse_letters(rhs.trim())?));
        }
        if images.is_empty() {
            return Err(Error::BadInput("empty morphism description".into()));
        }
        images.sort_by_key(|(a, _)| *a);
        if let Some(pair) = images.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::BadInput(format!("duplicate image for letter {}", pair[0].0)));
        }
        let src_size = images.last().unwrap().0 + 1;
        for (expect, (got, _)) in images.iter().enumerate() {
            if *got != expect as Letter {
                return Err(Error::BadInput(format!("missing image for letter {expect}")));
            }
        }
        let tgt_size = images
            .iter()
            .flat_map(|(_, img)| img.iter().copied())
            .max()
            .unwrap_or(0)
            + 1;
        Morphism::new(
            Alphabet::new(src_size),
            Alphabet::new(tgt_size),
            images.into_iter().map(|(_, img)| img).collect(),
        )
    }

    pub fn source(&self) -> Alphabet {
        self.source
    }

    pub fn target(&self) -> Alphabet {
        self.target
    }

    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[a as usize]
    }

    /// Applies the morphism letterwise.
    pub fn apply(&self, w: &[Letter]) -> Result<Vec<Letter>> {
        self.source.check(w)?;
        let mut out = Vec::with_capacity(w.len());
        for &a in w {
            out.extend_from_slice(self.image(a));
        }
        Ok(out)
    }

    /// True when iterating from `seed` yields an infinite fixed point:
    /// the image of `seed` starts with `seed` and has length at least 2.
    pub fn is_prolongable_on(&self, seed: Letter) -> bool {
        self.source.contains(seed) && {
            let img = self.image(seed);
            img.len() >= 2 && img[0] == seed
        }
    }

    /// Common image length when the morphism is uniform.
    pub fn uniform_length(&self) -> Option<usize> {
        let k = self.images[0].len();
        self.images.iter().all(|img| img.len() == k).then_some(k)
    }

    /// True when every image is a single letter.
    pub fn is_coding(&self) -> bool {
        self.uniform_length() == Some(1)
    }
}

enum Recipe {
    Literal(Arc<Vec<Letter>>),
    FixedPoint { morphism: Morphism, seed: Letter },
    Coded { base: Arc<Word>, coding: Morphism },
    Blocks { base: Arc<Word>, width: usize },
}

/// A word together with the recipe that produced it, so longer prefixes can
/// be regenerated on demand.  Literal words cannot be extended; words built
/// from a prolongable morphism (possibly followed by codings and block
/// codings) can.
///
/// Prefixes are cached and grown geometrically; the handle is cheap to share
/// and safe to use from several threads.
pub struct Word {
    alphabet: Alphabet,
    recipe: Recipe,
    id: String,
    cache: Mutex<Arc<Vec<Letter>>>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.id)
    }
}

impl Word {
    fn build(alphabet: Alphabet, recipe: Recipe, id: String) -> Arc<Word> {
        Arc::new(Word { alphabet, recipe, id, cache: Mutex::new(Arc::new(Vec::new())) })
    }

    /// A finite word given letter by letter.
    pub fn literal(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Arc<Word>> {
        alphabet.check(&letters)?;
        let letters = Arc::new(letters);
        Ok(Word::build(
            alphabet,
            Recipe::Literal(letters.clone()),
            format!("literal[{}]", letters.len()),
        ))
    }

    /// The fixed point `m^inf(seed)` of a morphism prolongable on `seed`.
    pub fn fixed_point(morphism: &Morphism, seed: Letter) -> Result<Arc<Word>> {
        if !morphism.is_prolongable_on(seed) {
            return Err(Error::NotProlongable { seed });
        }
        Ok(Word::build(
            morphism.target(),
            Recipe::FixedPoint { morphism: morphism.clone(), seed },
            format!("fp(seed={seed})"),
        ))
    }

    /// The letterwise image of this word under a coding.
    pub fn coded(self: &Arc<Self>, coding: &Morphism) -> Result<Arc<Word>> {
        if !coding.is_coding() {
            let bad = coding
                .source()
                .letters()
                .find(|&a| coding.image(a).len() != 1)
                .unwrap_or(0);
            return Err(Error::NotACoding { letter: bad, len: coding.image(bad).len() });
        }
        if coding.source().size() < self.alphabet.size() {
            return Err(Error::AlphabetMismatch {
                letter: self.alphabet.size() - 1,
                alphabet: coding.source().size(),
            });
        }
        Ok(Word::build(
            coding.target(),
            Recipe::Coded { base: self.clone(), coding: coding.clone() },
            format!("code({})", self.id),
        ))
    }

    /// The block coding of the word: position `j` of the result encodes the
    /// factor of length `width` starting at `j`, read as a base-`r` integer.
    pub fn blocks(self: &Arc<Self>, width: usize) -> Result<Arc<Word>> {
        if width < 1 {
            return Err(Error::BadInput("block width must be at least 1".into()));
        }
        let r = self.alphabet.size() as u64;
        let size = checked_power(r, width)?;
        Ok(Word::build(
            Alphabet::new(size as u32),
            Recipe::Blocks { base: self.clone(), width },
            format!("block({},{width})", self.id),
        ))
    }

    /// Attaches a stable identifier used in reports and series exports.
    pub fn with_id(self: Arc<Self>, id: &str) -> Arc<Word> {
        Word::build(
            self.alphabet,
            match &self.recipe {
                Recipe::Literal(l) => Recipe::Literal(l.clone()),
                Recipe::FixedPoint { morphism, seed } => {
                    Recipe::FixedPoint { morphism: morphism.clone(), seed: *seed }
                }
                Recipe::Coded { base, coding } => {
                    Recipe::Coded { base: base.clone(), coding: coding.clone() }
                }
                Recipe::Blocks { base, width } => {
                    Recipe::Blocks { base: base.clone(), width: *width }
                }
            },
            id.to_string(),
        )
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// False for literal words, which cannot grow past their given length.
    pub fn is_extendable(&self) -> bool {
        match &self.recipe {
            Recipe::Literal(_) => false,
            Recipe::FixedPoint { .. } => true,
            Recipe::Coded { base, .. } | Recipe::Blocks { base, .. } => base.is_extendable(),
        }
    }

    fn generate(&self, want: usize) -> Arc<Vec<Letter>> {
        match &self.recipe {
            Recipe::Literal(letters) => letters.clone(),
            Recipe::FixedPoint { morphism, seed } => {
                let mut v = vec![*seed];
                while v.len() < want {
                    v = morphism.apply(&v).expect("fixed-point letters stay in alphabet");
                }
                Arc::new(v)
            }
            Recipe::Coded { base, coding } => {
                let src = base.letters(want);
                Arc::new(coding.apply(&src).expect("coded letters stay in alphabet"))
            }
            Recipe::Blocks { base, width } => {
                let src = base.letters(want + width - 1);
                Arc::new(block_code(&src, *width, base.alphabet()))
            }
        }
    }

    /// A cached prefix of length at least `want` letters when the word is
    /// extendable; literal words return all they have.
    pub fn letters(&self, want: usize) -> Arc<Vec<Letter>> {
        let mut cache = self.cache.lock().unwrap();
        if cache.len() >= want || (!self.is_extendable() && !cache.is_empty()) {
            return cache.clone();
        }
        let target = want.max(cache.len() * 2).max(256);
        *cache = self.generate(target);
        cache.clone()
    }

    /// An immutable snapshot of the first `len` letters.
    pub fn prefix(&self, len: usize) -> Result<WordPrefix> {
        let letters = self.letters(len);
        if letters.len() < len {
            return Err(Error::TooShort { len: letters.len(), need: len });
        }
        Ok(WordPrefix {
            alphabet: self.alphabet,
            letters: letters[..len].to_vec(),
            provenance: self.id.clone(),
        })
    }
}

/// An immutable finite prefix with a description of where it came from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordPrefix {
    alphabet: Alphabet,
    letters: Vec<Letter>,
    provenance: String,
}

impl WordPrefix {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<WordPrefix> {
        alphabet.check(&letters)?;
        Ok(WordPrefix { alphabet, letters, provenance: "literal".into() })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn parikh(&self) -> ParikhVector {
        parikh(&self.letters, self.alphabet)
    }
}

impl fmt::Display for WordPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters, self.alphabet))
    }
}

/// Iterates a morphism prolongable on `seed` and returns the prefix of
/// length exactly `min_len` of the fixed point.
pub fn iterate_fixed_point(m: &Morphism, seed: Letter, min_len: usize) -> Result<WordPrefix> {
    if min_len < 1 {
        return Err(Error::BadInput("prefix length must be at least 1".into()));
    }
    let word = Word::fixed_point(m, seed)?;
    word.prefix(min_len)
}

/// Applies a letter-to-letter morphism to a prefix; the result has the same
/// length.
pub fn apply_coding(c: &Morphism, w: &WordPrefix) -> Result<WordPrefix> {
    if !c.is_coding() {
        let bad = c.source().letters().find(|&a| c.image(a).len() != 1).unwrap_or(0);
        return Err(Error::NotACoding { letter: bad, len: c.image(bad).len() });
    }
    let letters = c.apply(w.letters())?;
    Ok(WordPrefix {
        alphabet: c.target(),
        letters,
        provenance: format!("code({})", w.provenance),
    })
}

/// The block coding of a prefix: the output has length `|w| - width + 1`
/// and output letter `j` equals `sum w[j+i] * r^(width-1-i)`.
pub fn block_coding(w: &WordPrefix, width: usize) -> Result<WordPrefix> {
    if width < 1 {
        return Err(Error::BadInput("block width must be at least 1".into()));
    }
    if w.len() < width {
        return Err(Error::TooShort { len: w.len(), need: width });
    }
    let r = w.alphabet.size() as u64;
    let size = checked_power(r, width)?;
    Ok(WordPrefix {
        alphabet: Alphabet::new(size as u32),
        letters: block_code(w.letters(), width, w.alphabet),
        provenance: format!("block({},{width})", w.provenance),
    })
}

fn checked_power(r: u64, width: usize) -> Result<u64> {
    const LIMIT: u64 = 1 << 22;
    let mut size: u64 = 1;
    for _ in 0..width {
        size = size.saturating_mul(r);
        if size > LIMIT {
            return Err(Error::AlphabetTooLarge { size, limit: LIMIT });
        }
    }
    Ok(size)
}

fn block_code(src: &[Letter], width: usize, alphabet: Alphabet) -> Vec<Letter> {
    if src.len() < width {
        return Vec::new();
    }
    let r = alphabet.size() as u64;
    let top = r.pow(width as u32 - 1);
    let mut value: u64 = 0;
    for &a in &src[..width] {
        value = value * r + a as u64;
    }
    let mut out = Vec::with_capacity(src.len() - width + 1);
    out.push(value as Letter);
    for j in width..src.len() {
        value = (value - src[j - width] as u64 * top) * r + src[j] as u64;
        out.push(value as Letter);
    }
    out
}

/// Per-letter occurrence counts of a word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParikhVector {
    counts: Vec<u64>,
}

impl ParikhVector {
    pub fn zero(alphabet: Alphabet) -> ParikhVector {
        ParikhVector { counts: vec![0; alphabet.size() as usize] }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, a: Letter) -> u64 {
        self.counts[a as usize]
    }

    /// Total number of letters counted, i.e. the length of the word.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Counts how many positions of `w` hold each letter.
pub fn parikh(w: &[Letter], alphabet: Alphabet) -> ParikhVector {
    let mut counts = vec![0u64; alphabet.size() as usize];
    for &a in w {
        counts[a as usize] += 1;
    }
    ParikhVector { counts }
}

/// Number of (possibly overlapping) occurrences of `v` in `u`.  The empty
/// word occurs `|u| + 1` times; a `v` longer than `u` occurs 0 times.
pub fn count_occurrences(u: &[Letter], v: &[Letter]) -> usize {
    if v.is_empty() {
        return u.len() + 1;
    }
    if v.len() > u.len() {
        return 0;
    }
    u.windows(v.len()).filter(|w| *w == v).count()
}

/// The reversal `w[len-1] ... w[0]`.
pub fn reversal(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().copied().collect()
}

/// True when `x` and `y` have the same number of occurrences of every word
/// of length at most `order` (so in particular the same length).
pub fn l_abelian_equivalent(x: &[Letter], y: &[Letter], order: u32) -> bool {
    assert!(order >= 1, "equivalence order must be at least 1");
    if x.len() != y.len() {
        return false;
    }
    for m in 1..=(order as usize).min(x.len()) {
        let mut counts: FxHashMap<&[Letter], i64> = FxHashMap::default();
        for w in x.windows(m) {
            *counts.entry(w).or_insert(0) += 1;
        }
        for w in y.windows(m) {
            *counts.entry(w).or_insert(0) -= 1;
        }
        if counts.values().any(|&c| c != 0) {
            return false;
        }
    }
    true
}

/// Canonical key for `order`-abelian equivalence: the prefix of length
/// `order - 1` plus the Parikh vector of the block coding of width `order`.
/// Two words of equal length at least `order - 1` are `order`-abelian
/// equivalent exactly when their keys are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LAbelianKey {
    pub prefix: Vec<Letter>,
    pub block_counts: ParikhVector,
}

pub fn l_abelian_key(x: &[Letter], order: u32, alphabet: Alphabet) -> Result<LAbelianKey> {
    assert!(order >= 1, "equivalence order must be at least 1");
    let width = order as usize;
    if x.len() + 1 < width {
        return Err(Error::TooShort { len: x.len(), need: width - 1 });
    }
    let r = alphabet.size() as u64;
    let size = checked_power(r, width)?;
    let block_alphabet = Alphabet::new(size as u32);
    let block_counts = if x.len() < width {
        ParikhVector::zero(block_alphabet)
    } else {
        parikh(&block_code(x, width, alphabet), block_alphabet)
    };
    Ok(LAbelianKey { prefix: x[..width - 1].to_vec(), block_counts })
}

/// The set of distinct factors of one length, with the stabilization
/// evidence that produced it.
#[derive(Clone, Debug)]
pub struct FactorSet {
    length: usize,
    factors: Vec<Vec<Letter>>,
    stabilized: bool,
    prefix_len_used: usize,
}

impl FactorSet {
    /// Window width the factors were collected at.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of distinct factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &[Letter]> {
        self.factors.iter().map(|f| f.as_slice())
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.factors.binary_search_by(|f| f.as_slice().cmp(w)).is_ok()
    }

    /// True when two successive doubled prefixes produced the same set (or
    /// the whole of a literal word was inspected).
    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    pub fn prefix_len_used(&self) -> usize {
        self.prefix_len_used
    }
}

/// Controls for factor enumeration.
#[derive(Clone, Copy, Debug)]
pub struct FactorConfig {
    /// First prefix length tried; 0 picks `max(4 * (n + 1), 128)`.
    pub initial_len: usize,
    /// Doubling stops at this prefix length; exceeding it without two
    /// agreeing rounds raises [`Error::NotStabilized`].
    pub max_prefix: usize,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { initial_len: 0, max_prefix: 1 << 22 }
    }
}

/// Collects the distinct factors of length `n`, sliding a window over
/// prefixes of doubling length until two successive rounds agree.
pub fn enumerate_factors(word: &Word, n: usize) -> Result<FactorSet> {
    enumerate_factors_with(word, n, &FactorConfig::default())
}

pub fn enumerate_factors_with(word: &Word, n: usize, config: &FactorConfig) -> Result<FactorSet> {
    if n == 0 {
        return Ok(FactorSet {
            length: 0,
            factors: vec![Vec::new()],
            stabilized: true,
            prefix_len_used: 0,
        });
    }
    let mut len = if config.initial_len > 0 {
        config.initial_len.max(n + 1)
    } else {
        (4 * (n + 1)).max(128)
    };
    let mut previous: Option<(usize, usize)> = None; // (set size, prefix length)
    loop {
        let letters = word.letters(len);
        let have = letters.len().min(len);
        let set: FxHashSet<&[Letter]> = if have >= n {
            letters[..have].windows(n).collect()
        } else {
            FxHashSet::default()
        };
        // Windows of a prefix are windows of any longer prefix, so equal
        // sizes mean equal sets.
        let done = match previous {
            Some((size, prev_len)) => size == set.len() && (prev_len < have || have < len),
            None => have < len && !word.is_extendable(),
        };
        if done {
            let mut factors: Vec<Vec<Letter>> = set.into_iter().map(|w| w.to_vec()).collect();
            factors.sort_unstable();
            return Ok(FactorSet { length: n, factors, stabilized: true, prefix_len_used: have });
        }
        if len >= config.max_prefix {
            return Err(Error::NotStabilized { n, cap: config.max_prefix });
        }
        previous = Some((set.len(), have));
        len = (len * 2).min(config.max_prefix);
    }
}

/// Parses a word from a digit string (`"0110"`) or comma-separated integers
/// (`"0,1,1,0"`).
pub fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if text.contains(',') {
        text.split(',')
            .map(|p| {
                p.trim()
                    .parse::<Letter>()
                    .map_err(|_| Error::BadInput(format!("bad letter `{p}`")))
            })
            .collect()
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::BadInput(format!("bad letter `{c}`")))
            })
            .collect()
    }
}

/// Formats a word as a digit string when the alphabet fits, otherwise as
/// comma-separated integers.
pub fn format_letters(w: &[Letter], alphabet: Alphabet) -> String {
    if alphabet.size() <= 10 {
        w.iter()
            .map(|&a| char::from_digit(a, 10).expect("letter below 10"))
            .collect()
    } else {
        let parts: Vec<String> = w.iter().map(|a| a.to_string()).collect();
        parts.join(",")
    }
}

/// Sorted set of letters used to select which letters a count statistic
/// totals over.
#[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct LetterSet {
    letters: Vec<Letter>,
}

impl TryFrom<Vec<Letter>> for LetterSet {
    type Error = Error;
    fn try_from(letters: Vec<Letter>) -> Result<LetterSet> {
        if letters.is_empty() {
            return Err(Error::BadInput("letter set must be nonempty".into()));
        }
        Ok(LetterSet::new(letters))
    }
}

impl From<LetterSet> for Vec<Letter> {
    fn from(set: LetterSet) -> Vec<Letter> {
        set.letters
    }
}

impl LetterSet {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> LetterSet {
        let set: BTreeSet<Letter> = letters.into_iter().collect();
        assert!(!set.is_empty(), "letter set must be nonempty");
        LetterSet { letters: set.into_iter().collect() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn contains(&self, a: Letter) -> bool {
        self.letters.binary_search(&a).is_ok()
    }

    /// Total occurrences in `w` of the letters in this set.
    pub fn count_in(&self, w: &[Letter]) -> u64 {
        w.iter().filter(|&&a| self.contains(a)).count() as u64
    }

    pub fn label(&self) -> String {
        self.letters.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("")
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Vec<Letter> {
        parse_letters(text).unwrap()
    }

    fn thue_morse_morphism() -> Morphism {
        Morphism::parse("0->01;1->10").unwrap()
    }

    fn period_doubling_morphism() -> Morphism {
        Morphism::parse("0->01;1->00").unwrap()
    }

    #[test]
    fn fixed_point_prefixes_match_known_words() {
        let t = iterate_fixed_point(&thue_morse_morphism(), 0, 16).unwrap();
        assert_eq!(t.to_string(), "0110100110010110");
        let p = iterate_fixed_point(&period_doubling_morphism(), 0, 20).unwrap();
        assert_eq!(p.to_string(), "01000101010001000100");
        let phi = Morphism::parse("0->12;1->12;2->00").unwrap();
        let x = iterate_fixed_point(&phi, 1, 32).unwrap();
        assert_eq!(x.to_string(), "12001212120012001200121212001212");
    }

    #[test]
    fn fixed_point_requires_prolongable_seed() {
        // The image of 1 under 0->01;1->00 does not start with 1.
        let m = period_doubling_morphism();
        assert!(matches!(
            iterate_fixed_point(&m, 1, 4),
            Err(Error::NotProlongable { seed: 1 })
        ));
        let short = Morphism::parse("0->0;1->10").unwrap();
        assert!(matches!(
            iterate_fixed_point(&short, 0, 4),
            Err(Error::NotProlongable { seed: 0 })
        ));
    }

    #[test]
    fn fixed_point_prefixes_are_nested() {
        let word = Word::fixed_point(&thue_morse_morphism(), 0).unwrap();
        let long = word.prefix(512).unwrap();
        for len in [1, 2, 3, 50, 511] {
            let short = word.prefix(len).unwrap();
            assert_eq!(short.letters(), &long.letters()[..len]);
        }
    }

    #[test]
    fn coding_is_letterwise() {
        let tau = Morphism::parse("0->0;1->2;2->1").unwrap();
        let v = WordPrefix::new(Alphabet::new(3), w("12001")).unwrap();
        assert_eq!(apply_coding(&tau, &v).unwrap().to_string(), "21002");

        let identity = Morphism::parse("0->0;1->1;2->2").unwrap();
        assert_eq!(apply_coding(&identity, &v).unwrap().letters(), v.letters());

        let not_coding = Morphism::parse("0->01;1->1").unwrap();
        assert!(matches!(
            apply_coding(&not_coding, &v),
            Err(Error::NotACoding { letter: 0, len: 2 })
        ));
    }

    #[test]
    fn block_coding_matches_base_r_reading() {
        let u = WordPrefix::new(Alphabet::new(2), w("011010011")).unwrap();
        assert_eq!(block_coding(&u, 2).unwrap().to_string(), "13212013");
        let v = WordPrefix::new(Alphabet::new(2), w("001101101")).unwrap();
        assert_eq!(block_coding(&v, 2).unwrap().to_string(), "01321321");

        // |u| = width collapses to a single base-r value.
        let s = WordPrefix::new(Alphabet::new(2), w("101")).unwrap();
        let b = block_coding(&s, 3).unwrap();
        assert_eq!(b.letters(), &[5]);

        assert!(matches!(block_coding(&s, 4), Err(Error::TooShort { len: 3, need: 4 })));
    }

    #[test]
    fn two_block_coding_of_thue_morse() {
        let tm = Word::fixed_point(&thue_morse_morphism(), 0).unwrap();
        let y = tm.blocks(2).unwrap();
        let prefix = y.prefix(24).unwrap();
        assert_eq!(prefix.to_string(), "132120132012132120121320");
    }

    #[test]
    fn parikh_counts_letters() {
        let a3 = Alphabet::new(3);
        assert_eq!(parikh(&[], a3).counts(), &[0, 0, 0]);
        assert_eq!(parikh(&w("00"), a3).counts(), &[2, 0, 0]);
        // Direct count over the 32-letter prefix of the 2-block coding of
        // the period-doubling word.
        let x32 = w("12001212120012001200121212001212");
        assert_eq!(parikh(&x32, a3).counts(), &[10, 11, 11]);
        assert_eq!(parikh(&x32, a3).total(), 32);
    }

    #[test]
    fn occurrences_overlap() {
        assert_eq!(count_occurrences(&w("011010011"), &w("010")), 1);
        assert_eq!(count_occurrences(&w("001101101"), &w("010")), 0);
        assert_eq!(count_occurrences(&[0, 0, 0], &[0, 0]), 2);
        assert_eq!(count_occurrences(&w("01"), &w("0110")), 0);
        assert_eq!(count_occurrences(&w("011"), &[]), 4);
    }

    #[test]
    fn l_abelian_equivalence_examples() {
        let x = w("011010011");
        let y = w("001101101");
        assert!(l_abelian_equivalent(&x, &y, 2));
        assert!(!l_abelian_equivalent(&x, &y, 3));
        assert!(l_abelian_equivalent(&x, &x, 5));
        // Words shorter than the order degenerate to plain equality.
        assert!(!l_abelian_equivalent(&w("01"), &w("10"), 3));
        assert!(l_abelian_equivalent(&w("01"), &w("01"), 3));
        assert!(!l_abelian_equivalent(&w("0110"), &w("011"), 1));
    }

    #[test]
    fn keys_decide_equivalence_on_example_pair() {
        let a2 = Alphabet::new(2);
        let x = w("011010011");
        let y = w("001101101");
        assert_eq!(l_abelian_key(&x, 2, a2).unwrap(), l_abelian_key(&y, 2, a2).unwrap());
        assert_ne!(l_abelian_key(&x, 3, a2).unwrap(), l_abelian_key(&y, 3, a2).unwrap());
        // Order 1 reduces to the Parikh vector with an empty prefix.
        let k = l_abelian_key(&w("0110"), 1, a2).unwrap();
        assert!(k.prefix.is_empty());
        assert_eq!(k.block_counts.counts(), &[2, 2]);
        assert!(matches!(
            l_abelian_key(&w("0"), 3, a2),
            Err(Error::TooShort { len: 1, need: 2 })
        ));
    }

    #[test]
    fn reversal_is_involutive() {
        assert_eq!(reversal(&[0, 1, 2]), vec![2, 1, 0]);
        assert_eq!(reversal(&[]), Vec::<Letter>::new());
        let v = w("120012121");
        assert_eq!(reversal(&reversal(&v)), v);
    }

    #[test]
    fn factor_enumeration_stabilizes_on_fixed_points() {
        let tm = Word::fixed_point(&thue_morse_morphism(), 0).unwrap();
        let f1 = enumerate_factors(&tm, 1).unwrap();
        assert_eq!(f1.len(), 2);
        assert!(f1.stabilized());
        let f0 = enumerate_factors(&tm, 0).unwrap();
        assert_eq!(f0.len(), 1);
        assert!(f0.contains(&[]));

        let f3 = enumerate_factors(&tm, 3).unwrap();
        // The Thue-Morse word avoids cubes, so 000 and 111 are missing.
        assert_eq!(f3.len(), 6);
        assert!(!f3.contains(&w("000")));
        assert!(!f3.contains(&w("111")));
    }

    #[test]
    fn factor_enumeration_of_literal_is_exact() {
        let word = Word::literal(Alphabet::new(2), w("0110100110010110")).unwrap();
        let f = enumerate_factors(&word, 4).unwrap();
        assert!(f.stabilized());
        assert_eq!(f.prefix_len_used(), 16);
        assert!(f.contains(&w("0110")));
        let letters = w("0110100110010110");
        let mut windows: Vec<&[Letter]> = letters.windows(4).collect();
        windows.sort_unstable();
        windows.dedup();
        assert_eq!(f.len(), windows.len());
    }

    #[test]
    fn enumeration_error_when_cap_hit() {
        // A word that keeps producing new factors of length 8: impossible
        // for morphic words, so emulate with a tiny cap instead.
        let tm = Word::fixed_point(&thue_morse_morphism(), 0).unwrap();
        let config = FactorConfig { initial_len: 16, max_prefix: 16 };
        assert!(matches!(
            enumerate_factors_with(&tm, 8, &config),
            Err(Error::NotStabilized { n: 8, cap: 16 })
        ));
    }

    #[test]
    fn letters_parse_and_format() {
        assert_eq!(parse_letters("0110").unwrap(), vec![0, 1, 1, 0]);
        assert_eq!(parse_letters("10,3,0").unwrap(), vec![10, 3, 0]);
        assert!(parse_letters("01a").is_err());
        assert_eq!(format_letters(&[1, 2, 0], Alphabet::new(3)), "120");
        assert_eq!(format_letters(&[10, 3], Alphabet::new(11)), "10,3");
    }

    #[test]
    fn morphism_parse_rejects_gaps_and_duplicates() {
        assert!(Morphism::parse("0->01;2->10").is_err());
        assert!(Morphism::parse("0->01;0->10").is_err());
        assert!(Morphism::parse("0->01;1->").is_err());
        assert!(Morphism::parse("").is_err());
    }
}
