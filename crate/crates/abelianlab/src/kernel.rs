//! Base-`k` kernel machinery: slicing a sequence into `s(k^i n + j)`,
//! guessing linear relations among kernel slices by exact-rational
//! elimination on truncated slices, re-verifying the guessed relations
//! against the oracle, evaluating the resulting linear representation, and
//! detecting finite kernels of finite-valued sequences.
//!
//! A closed, verified relation set is evidence of `k`-regular structure up
//! to the verified horizon; it is never a proof, and the reports say so.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde_json::json;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A total integer sequence with a label.  Evaluation is expected to be
/// deterministic; wrap expensive evaluators with [`SequenceOracle::memoized`].
#[derive(Clone)]
pub struct SequenceOracle {
    label: String,
    eval: Arc<dyn Fn(u64) -> i64 + Send + Sync>,
}

impl std::fmt::Debug for SequenceOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SequenceOracle({})", self.label)
    }
}

impl SequenceOracle {
    pub fn new(label: &str, eval: impl Fn(u64) -> i64 + Send + Sync + 'static) -> Self {
        SequenceOracle { label: label.to_string(), eval: Arc::new(eval) }
    }

    /// Wraps the evaluator with a shared memo table.
    pub fn memoized(label: &str, eval: impl Fn(u64) -> i64 + Send + Sync + 'static) -> Self {
        let memo: Mutex<FxHashMap<u64, i64>> = Mutex::new(FxHashMap::default());
        SequenceOracle::new(label, move |n| {
            if let Some(&v) = memo.lock().unwrap().get(&n) {
                return v;
            }
            let v = eval(n);
            memo.lock().unwrap().insert(n, v);
            v
        })
    }

    pub fn constant(label: &str, value: i64) -> Self {
        SequenceOracle::new(label, move |_| value)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn value(&self, n: u64) -> i64 {
        (self.eval)(n)
    }

    /// The shifted sequence `n -> s(n + offset)`.
    pub fn shifted(&self, offset: u64) -> SequenceOracle {
        let inner = self.clone();
        SequenceOracle::new(&format!("{}<<{offset}", self.label), move |n| {
            inner.value(n + offset)
        })
    }

    /// The reduction `n -> s(n) mod m`, kept in `0..m`.
    pub fn mod_reduced(&self, modulus: i64) -> SequenceOracle {
        assert!(modulus >= 2);
        let inner = self.clone();
        SequenceOracle::new(&format!("{}%{modulus}", self.label), move |n| {
            inner.value(n).rem_euclid(modulus)
        })
    }

    /// The pointwise combination `F(n) = sum coeff * f(n) * pred(n)`, with
    /// `pred` omitted meaning the constant 1.  Panics if a value is not an
    /// integer, which only happens on a caller error.
    pub fn combine(
        label: &str,
        terms: Vec<(Rational, SequenceOracle, Option<SequenceOracle>)>,
    ) -> SequenceOracle {
        SequenceOracle::new(label, move |n| {
            let mut acc = Rational::zero();
            for (coeff, f, pred) in &terms {
                let p = pred.as_ref().map_or(1, |p| p.value(n));
                if p != 0 {
                    acc += coeff * Rational::from(BigInt::from(f.value(n) * p));
                }
            }
            if !acc.is_integer() {
                panic!("combined sequence is not integral at n={n}: {acc}");
            }
            acc.to_integer().to_i64().expect("combined value fits i64")
        })
    }
}

/// The kernel slice index `(i, j)`, denoting `n -> s(k^i n + j)` with
/// `0 <= j < k^i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct KernelLabel {
    pub i: u32,
    pub j: u64,
}

impl KernelLabel {
    pub fn root() -> KernelLabel {
        KernelLabel { i: 0, j: 0 }
    }

    /// The argument `k^i n + j`, or an overflow error.
    pub fn argument(&self, k: u32, n: u64) -> Result<u64> {
        let step = (k as u64)
            .checked_pow(self.i)
            .ok_or(Error::SliceOverflow { i: self.i, j: self.j })?;
        step.checked_mul(n)
            .and_then(|m| m.checked_add(self.j))
            .ok_or(Error::SliceOverflow { i: self.i, j: self.j })
    }

    /// The slice selected by reading one more base-`k` digit `d` (least
    /// significant first): `(i + 1, j + d * k^i)`.
    pub fn child(&self, k: u32, digit: u32) -> Result<KernelLabel> {
        let step = (k as u64)
            .checked_pow(self.i)
            .ok_or(Error::SliceOverflow { i: self.i, j: self.j })?;
        let j = (digit as u64)
            .checked_mul(step)
            .and_then(|m| m.checked_add(self.j))
            .ok_or(Error::SliceOverflow { i: self.i, j: self.j })?;
        Ok(KernelLabel { i: self.i + 1, j })
    }
}

/// The slice `n -> s(k^i n + j)` as a sequence in its own right.
pub fn kernel_slice(s: &SequenceOracle, k: u32, label: KernelLabel) -> SequenceOracle {
    assert!(k >= 2);
    assert!(label.j < (k as u64).pow(label.i), "slice residue out of range");
    let inner = s.clone();
    SequenceOracle::new(&format!("{}[{},{}]", s.label(), label.i, label.j), move |n| {
        inner.value(label.argument(k, n).expect("slice argument overflow"))
    })
}

/// One guessed relation: the truncated slice `child` lies in the rational
/// span of the basis slices with these coefficients.
#[derive(Clone, Debug)]
pub struct Relation {
    pub child: KernelLabel,
    pub coefficients: Vec<Rational>,
}

/// Options for [`guess_relations`].
#[derive(Clone, Copy, Debug)]
pub struct GuessConfig {
    /// Number of leading terms of each slice used for elimination.
    pub truncation: usize,
    /// Every relation is re-verified wherever all of its arguments stay
    /// at or below this bound.
    pub horizon: u64,
    /// Give up once the basis grows past this rank.
    pub rank_cap: usize,
}

impl Default for GuessConfig {
    fn default() -> Self {
        GuessConfig { truncation: 512, horizon: 1 << 14, rank_cap: 64 }
    }
}

/// A closed set of guessed-and-verified kernel relations.
#[derive(Clone, Debug)]
pub struct RelationSet {
    pub sequence: String,
    pub k: u32,
    pub truncation: usize,
    pub horizon: u64,
    pub basis: Vec<KernelLabel>,
    pub relations: Vec<Relation>,
    /// Values of the basis slices at `n = 0`, i.e. `s(j)` per basis label.
    pub basis_at_zero: Vec<i64>,
}

impl RelationSet {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// True when every guessed coefficient is an integer.  The elimination
    /// works over the rationals, so this is reported rather than assumed.
    pub fn all_integer(&self) -> bool {
        self.relations
            .iter()
            .flat_map(|r| r.coefficients.iter())
            .all(|c| c.is_integer())
    }

    fn lookup(&self, label: KernelLabel) -> Option<Vec<Rational>> {
        if let Some(b) = self.basis.iter().position(|&l| l == label) {
            let mut unit = vec![Rational::zero(); self.rank()];
            unit[b] = Rational::one();
            return Some(unit);
        }
        self.relations.iter().find(|r| r.child == label).map(|r| {
            let mut c = r.coefficients.clone();
            c.resize(self.rank(), Rational::zero());
            c
        })
    }

    /// Coefficients expressing the child of basis element `b` under digit
    /// `d` over the basis.
    pub fn child_coefficients(&self, b: usize, digit: u32) -> Result<Vec<Rational>> {
        let child = self.basis[b].child(self.k, digit)?;
        self.lookup(child).ok_or_else(|| {
            Error::BadInput(format!("no relation recorded for slice ({}, {})", child.i, child.j))
        })
    }

    pub fn to_json(&self) -> String {
        let frac = |c: &Rational| json!([bigint_json(c.numer()), bigint_json(c.denom())]);
        let value = json!({
            "sequence": self.sequence,
            "k": self.k,
            "truncation": self.truncation,
            "verified_horizon": self.horizon,
            "rank": self.rank(),
            "all_integer_coefficients": self.all_integer(),
            "basis": self.basis.iter().map(|l| json!({"i": l.i, "j": l.j})).collect::<Vec<_>>(),
            "basis_at_zero": self.basis_at_zero,
            "relations": self.relations.iter().map(|r| json!({
                "child": {"i": r.child.i, "j": r.child.j},
                "coefficients": r.coefficients.iter().map(frac).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&value).expect("relation set serializes")
    }
}

fn bigint_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

/// Exact-rational row reduction that remembers, for every reduced row, its
/// expression over the admitted basis vectors.
struct Eliminator {
    rows: Vec<ReducedRow>,
    rank: usize,
}

struct ReducedRow {
    pivot: usize,
    vector: Vec<Rational>,
    over_basis: Vec<Rational>,
}

impl Eliminator {
    fn new() -> Self {
        Eliminator { rows: Vec::new(), rank: 0 }
    }

    /// Reduces `v` against the rows.  Returns the coefficients over the
    /// basis when dependent, or `None` after admitting `v` as a new basis
    /// vector.
    fn reduce(&mut self, v: Vec<Rational>) -> Option<Vec<Rational>> {
        let mut rest = v;
        let mut combo = vec![Rational::zero(); self.rank];
        for row in &self.rows {
            if rest[row.pivot].is_zero() {
                continue;
            }
            let factor = &rest[row.pivot] / &row.vector[row.pivot];
            for (x, y) in rest.iter_mut().zip(&row.vector) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
            for (c, a) in combo.iter_mut().zip(&row.over_basis) {
                *c += &factor * a;
            }
        }
        match rest.iter().position(|x| !x.is_zero()) {
            None => Some(combo),
            Some(pivot) => {
                let mut over_basis: Vec<Rational> = combo.iter().map(|c| -c).collect();
                over_basis.push(Rational::one());
                self.rows.push(ReducedRow { pivot, vector: rest, over_basis });
                self.rank += 1;
                None
            }
        }
    }
}

/// Breadth-first guess of the kernel relations of `s` in base `k`.
///
/// Kernel labels are visited in `(i, j)` order starting from `(0, 0)`; a
/// label whose length-`truncation` vector is rationally independent of the
/// basis joins the basis and enqueues its `k` children, a dependent label
/// records its coefficients.  After closure, every recorded relation is
/// re-checked against the oracle at every `n` for which all referenced
/// arguments are at most `horizon`.
pub fn guess_relations(s: &SequenceOracle, k: u32, config: &GuessConfig) -> Result<RelationSet> {
    if k < 2 {
        return Err(Error::BadInput("base k must be at least 2".into()));
    }
    if config.truncation < 8 {
        return Err(Error::BadInput("truncation must be at least 8".into()));
    }
    if config.horizon < (k as u64) * config.truncation as u64 {
        return Err(Error::BadInput("horizon must be at least k * truncation".into()));
    }

    let truncation_of = |label: KernelLabel| -> Result<Vec<Rational>> {
        (0..config.truncation as u64)
            .map(|n| Ok(Rational::from(BigInt::from(s.value(label.argument(k, n)?)))))
            .collect()
    };

    let mut heap: BinaryHeap<Reverse<(u32, u64)>> = BinaryHeap::new();
    heap.push(Reverse((0, 0)));
    let mut eliminator = Eliminator::new();
    let mut basis: Vec<KernelLabel> = Vec::new();
    let mut basis_at_zero: Vec<i64> = Vec::new();
    let mut relations: Vec<Relation> = Vec::new();

    while let Some(Reverse((i, j))) = heap.pop() {
        let label = KernelLabel { i, j };
        let vector = truncation_of(label)?;
        match eliminator.reduce(vector) {
            Some(coefficients) => relations.push(Relation { child: label, coefficients }),
            None => {
                basis.push(label);
                basis_at_zero.push(s.value(label.argument(k, 0)?));
                if basis.len() > config.rank_cap {
                    return Err(Error::NotClosed {
                        cap: config.rank_cap,
                        truncation: config.truncation,
                    });
                }
                for d in 0..k {
                    let child = label.child(k, d)?;
                    heap.push(Reverse((child.i, child.j)));
                }
            }
        }
    }

    let set = RelationSet {
        sequence: s.label().to_string(),
        k,
        truncation: config.truncation,
        horizon: config.horizon,
        basis,
        relations,
        basis_at_zero,
    };
    verify_relations(s, &set)?;
    Ok(set)
}

/// Checks every relation on oracle values: for each `n` such that the
/// child argument and all involved basis arguments are at most the
/// horizon, the exact identity must hold.
fn verify_relations(s: &SequenceOracle, set: &RelationSet) -> Result<()> {
    for relation in &set.relations {
        // Scaled-integer form of the coefficients for cheap exact checks.
        let mut denom: i128 = 1;
        for c in &relation.coefficients {
            let d = c.denom().to_i128().ok_or_else(|| {
                Error::BadInput("relation denominator exceeds i128".into())
            })?;
            denom = lcm_i128(denom, d);
        }
        let scaled: Vec<i128> = relation
            .coefficients
            .iter()
            .map(|c| {
                let num = c.numer().to_i128().ok_or_else(|| {
                    Error::BadInput("relation numerator exceeds i128".into())
                })?;
                let d = c.denom().to_i128().unwrap();
                Ok(num * (denom / d))
            })
            .collect::<Result<_>>()?;

        let mut n = 0u64;
        loop {
            let child_arg = relation.child.argument(set.k, n)?;
            if child_arg > set.horizon {
                break;
            }
            let mut in_range = true;
            let mut sum: i128 = 0;
            // Coefficients were recorded against the basis prefix known at
            // the time; missing trailing entries are zero.
            for (r, &coeff) in scaled.iter().enumerate() {
                if coeff == 0 {
                    continue;
                }
                let arg = set.basis[r].argument(set.k, n)?;
                if arg > set.horizon {
                    in_range = false;
                    break;
                }
                sum += coeff * s.value(arg) as i128;
            }
            if in_range && denom * s.value(child_arg) as i128 != sum {
                return Err(Error::VerificationFailed {
                    i: relation.child.i,
                    j: relation.child.j,
                    n,
                });
            }
            n += 1;
        }
    }
    Ok(())
}

fn lcm_i128(a: i128, b: i128) -> i128 {
    fn gcd(mut a: i128, mut b: i128) -> i128 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    }
    (a / gcd(a, b)) * b
}

/// Row vector, one matrix per digit, and column vector evaluating the
/// sequence along base-`k` digits, least significant digit first.
#[derive(Clone, Debug)]
pub struct LinearRepresentation {
    pub sequence: String,
    pub k: u32,
    pub dimension: usize,
    pub row: Vec<Rational>,
    pub matrices: Vec<Vec<Vec<Rational>>>,
    pub column: Vec<Rational>,
    pub horizon: u64,
    /// Integer matrices with one cleared denominator per digit, kept for
    /// fast exact evaluation.
    scaled: Vec<(Vec<Vec<BigInt>>, BigInt)>,
}

/// Builds the representation from a closed relation set: entry `(b, r)` of
/// the digit-`d` matrix holds the coefficient of basis slice `r` in the
/// expansion of the digit-`d` child of basis slice `b`; the row selects
/// the slice `(0, 0)` and the column holds the basis values at `n = 0`.
pub fn to_linear_representation(set: &RelationSet) -> Result<LinearRepresentation> {
    let d = set.rank();
    let mut matrices = Vec::with_capacity(set.k as usize);
    for digit in 0..set.k {
        let mut matrix = Vec::with_capacity(d);
        for b in 0..d {
            matrix.push(set.child_coefficients(b, digit)?);
        }
        matrices.push(matrix);
    }
    let mut row = vec![Rational::zero(); d];
    if d > 0 {
        row[0] = Rational::one();
    }
    let column: Vec<Rational> =
        set.basis_at_zero.iter().map(|&v| Rational::from(BigInt::from(v))).collect();

    let scaled = matrices
        .iter()
        .map(|matrix| {
            let mut denom = BigInt::one();
            for row in matrix {
                for c in row {
                    denom = lcm_big(&denom, c.denom());
                }
            }
            let ints = matrix
                .iter()
                .map(|row| {
                    row.iter().map(|c| c.numer() * (&denom / c.denom())).collect::<Vec<_>>()
                })
                .collect::<Vec<_>>();
            (ints, denom)
        })
        .collect();

    Ok(LinearRepresentation {
        sequence: set.sequence.clone(),
        k: set.k,
        dimension: d,
        row,
        matrices,
        column,
        horizon: set.horizon,
        scaled,
    })
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

impl LinearRepresentation {
    /// `row * M(d0) * ... * M(d_last) * column` over the base-`k` digits
    /// of `n`, least significant first; `n = 0` uses no digits at all.
    pub fn eval(&self, n: u64) -> Rational {
        if self.dimension == 0 {
            return Rational::zero();
        }
        let mut vector: Vec<BigInt> = vec![BigInt::zero(); self.dimension];
        vector[0] = BigInt::one();
        let mut denom = BigInt::one();
        let mut rest = n;
        while rest > 0 {
            let digit = (rest % self.k as u64) as usize;
            rest /= self.k as u64;
            let (matrix, d) = &self.scaled[digit];
            let mut next = vec![BigInt::zero(); self.dimension];
            for (b, coeff) in vector.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (r, entry) in matrix[b].iter().enumerate() {
                    if !entry.is_zero() {
                        next[r] += coeff * entry;
                    }
                }
            }
            vector = next;
            denom *= d;
        }
        let mut total = Rational::zero();
        for (v, c) in vector.iter().zip(&self.column) {
            if !v.is_zero() {
                total += Rational::from(v.clone()) * c;
            }
        }
        total / Rational::from(denom)
    }

    /// Evaluates and converts to an integer; panics when the value is not
    /// integral, which a verified representation of an integer sequence
    /// never produces.
    pub fn eval_integer(&self, n: u64) -> i64 {
        let v = self.eval(n);
        assert!(v.is_integer(), "representation value at {n} is not an integer: {v}");
        v.to_integer().to_i64().expect("value fits i64")
    }

    pub fn to_json(&self) -> String {
        let frac = |c: &Rational| json!([bigint_json(c.numer()), bigint_json(c.denom())]);
        let matrix_json = |m: &Vec<Vec<Rational>>| {
            m.iter()
                .map(|row| row.iter().map(frac).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        let value = json!({
            "sequence": self.sequence,
            "k": self.k,
            "dimension": self.dimension,
            "digit_order": "least_significant_first",
            "verified_horizon": self.horizon,
            "row": self.row.iter().map(frac).collect::<Vec<_>>(),
            "matrices": self.matrices.iter().map(matrix_json).collect::<Vec<_>>(),
            "column": self.column.iter().map(frac).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&value).expect("representation serializes")
    }
}

/// A finite transition system on kernel slices of a finite-valued
/// sequence, with slices identified by their length-`truncation` prefixes.
#[derive(Clone, Debug)]
pub struct AutomaticKernel {
    pub sequence: String,
    pub k: u32,
    /// `transitions[state][digit]` is the state of the child slice.
    pub transitions: Vec<Vec<usize>>,
    /// Value of the slice at `n = 0`; reading the digits of `n` least
    /// significant first, the final state's output is `s(n)`.
    pub outputs: Vec<i64>,
    /// One kernel label per state, the first one discovered.
    pub representatives: Vec<KernelLabel>,
}

impl AutomaticKernel {
    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    /// Runs the automaton on the base-`k` digits of `n`, least significant
    /// first, starting from the state of the slice `(0, 0)`.
    pub fn value(&self, n: u64) -> i64 {
        let mut state = 0usize;
        let mut rest = n;
        while rest > 0 {
            state = self.transitions[state][(rest % self.k as u64) as usize];
            rest /= self.k as u64;
        }
        self.outputs[state]
    }
}

/// Explores the kernel of `s`, merging slices whose first `truncation`
/// values coincide.  Intended for finite-valued sequences, whose kernels
/// are finite exactly when the sequence is `k`-automatic.
pub fn automatic_kernel(
    s: &SequenceOracle,
    k: u32,
    truncation: usize,
    state_cap: usize,
) -> Result<AutomaticKernel> {
    assert!(k >= 2);
    let truncation_of = |label: KernelLabel| -> Result<Vec<i64>> {
        (0..truncation as u64).map(|n| Ok(s.value(label.argument(k, n)?))).collect()
    };

    let mut ids: FxHashMap<Vec<i64>, usize> = FxHashMap::default();
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut outputs: Vec<i64> = Vec::new();
    let mut representatives: Vec<KernelLabel> = Vec::new();
    let mut queue: Vec<(usize, KernelLabel)> = Vec::new();

    let root = KernelLabel::root();
    let root_vec = truncation_of(root)?;
    outputs.push(root_vec[0]);
    ids.insert(root_vec, 0);
    transitions.push(vec![usize::MAX; k as usize]);
    representatives.push(root);
    queue.push((0, root));

    let mut next = 0;
    while next < queue.len() {
        let (state, label) = queue[next];
        next += 1;
        for d in 0..k {
            let child = label.child(k, d)?;
            let vec = truncation_of(child)?;
            let target = match ids.get(&vec) {
                Some(&t) => t,
                None => {
                    let t = transitions.len();
                    if t >= state_cap {
                        return Err(Error::StateCapExceeded { cap: state_cap });
                    }
                    outputs.push(vec[0]);
                    ids.insert(vec, t);
                    transitions.push(vec![usize::MAX; k as usize]);
                    representatives.push(child);
                    queue.push((t, child));
                    t
                }
            };
            transitions[state][d as usize] = target;
        }
    }

    Ok(AutomaticKernel {
        sequence: s.label().to_string(),
        k,
        transitions,
        outputs,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::a_sequence;

    fn thue_morse_oracle() -> SequenceOracle {
        SequenceOracle::new("tm", |n| (n.count_ones() % 2) as i64)
    }

    fn a_oracle() -> SequenceOracle {
        SequenceOracle::new("A007302", a_sequence)
    }

    #[test]
    fn slice_arguments_and_children() {
        let l = KernelLabel { i: 3, j: 3 };
        assert_eq!(l.argument(2, 5).unwrap(), 43);
        assert_eq!(l.child(2, 1).unwrap(), KernelLabel { i: 4, j: 11 });
        assert_eq!(KernelLabel::root().child(2, 1).unwrap(), KernelLabel { i: 1, j: 1 });
    }

    #[test]
    fn identity_slice_is_the_sequence() {
        let s = a_oracle();
        let sliced = kernel_slice(&s, 2, KernelLabel::root());
        for n in 0..100 {
            assert_eq!(sliced.value(n), s.value(n));
        }
    }

    #[test]
    fn even_slice_of_thue_morse_is_thue_morse() {
        let t = thue_morse_oracle();
        let even = kernel_slice(&t, 2, KernelLabel { i: 1, j: 0 });
        for n in 0..2000 {
            assert_eq!(even.value(n), t.value(n));
        }
    }

    #[test]
    fn deep_slice_of_a_matches_its_identity() {
        // s(8n + 3) = s(2n + 1) + 1 for the base reflection sequence.
        let s = a_oracle();
        let slice = kernel_slice(&s, 2, KernelLabel { i: 3, j: 3 });
        for n in 0..10_000 {
            assert_eq!(slice.value(n), a_sequence(2 * n + 1) + 1, "n={n}");
        }
    }

    #[test]
    fn slice_composition() {
        let s = a_oracle();
        let inner = kernel_slice(&s, 2, KernelLabel { i: 2, j: 1 });
        let outer = kernel_slice(&inner, 2, KernelLabel { i: 1, j: 1 });
        // (i, j) then (i', j') composes to (i + i', j + j' * k^i).
        // (2, 1) then (1, 1) composes to (3, 1 + 1 * 2^2) = (3, 5).
        let composed = kernel_slice(&s, 2, KernelLabel { i: 3, j: 5 });
        for n in 0..10_000 {
            assert_eq!(outer.value(n), composed.value(n), "n={n}");
        }
    }

    #[test]
    fn constant_sequence_has_rank_one() {
        let one = SequenceOracle::constant("const1", 1);
        let config = GuessConfig { truncation: 16, horizon: 64, rank_cap: 8 };
        let set = guess_relations(&one, 2, &config).unwrap();
        assert_eq!(set.rank(), 1);
        assert_eq!(set.basis, vec![KernelLabel::root()]);
        for d in 0..2 {
            assert_eq!(set.child_coefficients(0, d).unwrap(), vec![Rational::one()]);
        }
        assert!(set.all_integer());

        let rep = to_linear_representation(&set).unwrap();
        assert_eq!(rep.eval_integer(1_000_000_000), 1);
    }

    #[test]
    fn thue_morse_kernel_has_rank_two() {
        let t = thue_morse_oracle();
        let config = GuessConfig { truncation: 64, horizon: 4096, rank_cap: 8 };
        let set = guess_relations(&t, 2, &config).unwrap();
        assert_eq!(set.rank(), 2);
        let rep = to_linear_representation(&set).unwrap();
        for n in 0..500 {
            assert_eq!(rep.eval_integer(n), t.value(n), "n={n}");
        }
    }

    #[test]
    fn base_reflection_sequence_closes_and_evaluates() {
        let s = a_oracle();
        let config = GuessConfig { truncation: 256, horizon: 1 << 14, rank_cap: 16 };
        let set = guess_relations(&s, 2, &config).unwrap();
        assert!(set.rank() <= 8, "rank {}", set.rank());
        let rep = to_linear_representation(&set).unwrap();
        for n in 0..2048 {
            assert_eq!(rep.eval_integer(n), a_sequence(n), "n={n}");
        }
        assert_eq!(rep.eval_integer(11), 3);
        assert_eq!(rep.eval_integer(85), 4);
        for level in 1..=12 {
            assert_eq!(rep.eval_integer(1 << level), 1);
        }
        assert_eq!(rep.eval(0), Rational::from(BigInt::from(0)));
    }

    #[test]
    fn rank_is_monotone_in_truncation() {
        let s = a_oracle();
        let mut ranks = Vec::new();
        for truncation in [64usize, 128, 256, 512] {
            let config = GuessConfig { truncation, horizon: 1 << 12, rank_cap: 32 };
            ranks.push(guess_relations(&s, 2, &config).unwrap().rank());
        }
        assert!(ranks.windows(2).all(|w| w[0] <= w[1]), "{ranks:?}");
        assert_eq!(ranks[2], ranks[3], "rank should stabilize: {ranks:?}");
    }

    #[test]
    fn verification_rejects_lying_truncations() {
        // Constant on all truncation windows the elimination ever sees
        // (arguments stay below 128), then jumps, so the guess closes at
        // rank 1 and re-verification at the horizon must fail.
        let sneaky = SequenceOracle::new("sneaky", |n| if n <= 1000 { 1 } else { 2 });
        let config = GuessConfig { truncation: 64, horizon: 4096, rank_cap: 8 };
        match guess_relations(&sneaky, 2, &config) {
            Err(Error::VerificationFailed { .. }) => {}
            other => panic!("expected verification failure, got {other:?}"),
        }
    }

    #[test]
    fn shifted_sequence_closes_like_the_original() {
        let s = a_oracle();
        let config = GuessConfig { truncation: 256, horizon: 1 << 13, rank_cap: 32 };
        let original = guess_relations(&s, 2, &config).unwrap();
        let shifted = guess_relations(&s.shifted(1), 2, &config).unwrap();
        assert!(original.rank() <= shifted.rank() + 4);
        assert!(shifted.rank() <= original.rank() + 4);
    }

    #[test]
    fn combine_identity_and_scaling() {
        let s = a_oracle();
        let twice = SequenceOracle::combine(
            "2A",
            vec![(Rational::from(BigInt::from(2)), s.clone(), None)],
        );
        for n in 0..200 {
            assert_eq!(twice.value(n), 2 * s.value(n));
        }
        let even = SequenceOracle::new("even", |n| (1 - n % 2) as i64);
        let odd = SequenceOracle::new("odd", |n| (n % 2) as i64);
        let pieced = SequenceOracle::combine(
            "pieced",
            vec![
                (Rational::one(), s.clone(), Some(even)),
                (Rational::one(), s.clone(), Some(odd)),
            ],
        );
        for n in 0..200 {
            assert_eq!(pieced.value(n), s.value(n));
        }
    }

    #[test]
    fn automaton_for_thue_morse_has_two_states() {
        let t = thue_morse_oracle();
        let kernel = automatic_kernel(&t, 2, 64, 16).unwrap();
        assert_eq!(kernel.state_count(), 2);
        for n in 0..4096 {
            assert_eq!(kernel.value(n), t.value(n), "n={n}");
        }
    }

    #[test]
    fn state_cap_is_enforced() {
        // A(n) takes unboundedly many values, so truncation classes keep
        // splitting and the cap must trigger.
        let s = a_oracle();
        assert!(matches!(
            automatic_kernel(&s, 2, 64, 4),
            Err(Error::StateCapExceeded { cap: 4 })
        ));
    }

    #[test]
    fn relation_set_serializes() {
        let one = SequenceOracle::constant("const1", 1);
        let config = GuessConfig { truncation: 16, horizon: 64, rank_cap: 8 };
        let set = guess_relations(&one, 2, &config).unwrap();
        let json: serde_json::Value = serde_json::from_str(&set.to_json()).unwrap();
        assert_eq!(json["rank"], 1);
        assert_eq!(json["relations"][0]["coefficients"][0][1], 1);
        let rep = to_linear_representation(&set).unwrap();
        let json: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(json["dimension"], 1);
        assert_eq!(json["digit_order"], "least_significant_first");
    }
}
