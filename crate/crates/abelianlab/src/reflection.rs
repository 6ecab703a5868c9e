//! Sequences defined by a reflection recurrence: for every `l >= level0`
//! and `0 <= r <= 2^l - 1`,
//!
//! ```text
//! s(2^l + r) = s(r) + c            if r <= 2^(l-1)
//!            = s(2^(l+1) - r)      if r >  2^(l-1)
//! ```
//!
//! with `2^level0` initial values.  Values on `[2^l, 2^(l+1))` mirror
//! earlier values, shifted by `c` on the left half.  Such sequences are
//! 2-regular, and every value can be written in terms of the base sequence
//! with one initial value 0 and increment 1 (OEIS A007302); see
//! [`ReflectionSpec::solve`].

use crate::error::{Error, Result};

/// The base reflection sequence: one initial value 0, increment 1.
/// This is OEIS A007302; it satisfies `A(2n) = A(n)`,
/// `A(8n+1) = A(4n+1)`, `A(8n+3) = A(8n+5) = A(2n+1) + 1` and
/// `A(8n+7) = A(4n+3)`.
pub fn a_sequence(n: u64) -> i64 {
    assert!(n < 1 << 62, "argument too large");
    if n == 0 {
        return 0;
    }
    let level = 63 - n.leading_zeros() as u64;
    let r = n - (1 << level);
    let half = if level == 0 { 0 } else { 1u64 << (level - 1) };
    if r <= half {
        // Each recursive argument is at most half of n, and the mirror
        // branch below is followed by this branch, so the recursion depth
        // is logarithmic.
        a_sequence(r) + 1
    } else {
        a_sequence(3 * (1 << level) - n)
    }
}

/// A reflection recurrence instance: the exponent bound `level0`, the
/// increment `c`, and the `2^level0` initial values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReflectionSpec {
    level0: u32,
    increment: i64,
    initials: Vec<i64>,
}

impl ReflectionSpec {
    pub fn new(level0: u32, increment: i64, initials: Vec<i64>) -> Result<ReflectionSpec> {
        let want = 1usize << level0;
        if initials.len() != want {
            return Err(Error::BadInput(format!(
                "expected {want} initial values for level0={level0}, got {}",
                initials.len()
            )));
        }
        Ok(ReflectionSpec { level0, increment, initials })
    }

    pub fn level0(&self) -> u32 {
        self.level0
    }

    pub fn increment(&self) -> i64 {
        self.increment
    }

    pub fn initials(&self) -> &[i64] {
        &self.initials
    }

    /// Evaluates the sequence by direct recursion on the defining
    /// recurrence.  A mirror step is always followed by a shift step, so
    /// each call runs in logarithmic time without memoization.
    pub fn eval(&self, n: u64) -> i64 {
        assert!(n < 1 << 62, "argument too large");
        let mut n = n;
        let mut offset: i64 = 0;
        loop {
            if n < self.initials.len() as u64 {
                return self.initials[n as usize] + offset;
            }
            let level = 63 - n.leading_zeros() as u64;
            let r = n - (1 << level);
            let half = if level == 0 { 0 } else { 1u64 << (level - 1) };
            if r <= half {
                offset += self.increment;
                n = r;
            } else {
                n = 3 * (1 << level) - n;
            }
        }
    }

    /// The values `s(0..=n_hi)`, filled in ascending order.
    pub fn series(&self, n_hi: u64) -> Vec<i64> {
        let mut values = Vec::with_capacity(n_hi as usize + 1);
        for n in 0..=n_hi {
            if n < self.initials.len() as u64 {
                values.push(self.initials[n as usize]);
                continue;
            }
            let level = 63 - n.leading_zeros() as u64;
            let r = n - (1 << level);
            let half = if level == 0 { 0 } else { 1u64 << (level - 1) };
            let v = if r <= half {
                values[r as usize] + self.increment
            } else {
                values[(3 * (1 << level) - n) as usize]
            };
            values.push(v);
        }
        values
    }

    /// Evaluates the sequence through the closed form over the base
    /// sequence [`a_sequence`]: writing `n = 2^(level0+2) q + i`, the value
    /// is one of eight expressions in `A` at `q`, `4q+1`, `2q+1` or `4q+3`
    /// and the initial values, with two carry-over cases that recurse on a
    /// smaller argument.  This never falls back on [`ReflectionSpec::eval`],
    /// so the two routes verify each other.
    pub fn solve(&self, n: u64) -> i64 {
        if self.level0 == 0 {
            // The recurrence forces s(1) = s(0) + c, and a sequence
            // satisfying the recurrence for all l >= 0 satisfies it for
            // all l >= 1, so lift to level0 = 1.
            let lifted = ReflectionSpec {
                level0: 1,
                increment: self.increment,
                initials: vec![self.initials[0], self.initials[0] + self.increment],
            };
            return lifted.solve(n);
        }
        let p = 1u64 << self.level0;
        if n < p {
            return self.initials[n as usize];
        }
        let c = self.increment;
        let q = n >> (self.level0 + 2);
        let i = n & (4 * p - 1);
        let s = |k: u64| -> i64 { self.initials[k as usize] };
        match i {
            0 => c * a_sequence(q) + s(0),
            i if i < p => c * a_sequence(4 * q + 1) - c + s(i),
            i if i == p => c * a_sequence(4 * q + 1) + s(0),
            i if i < p + p / 2 => self.solve(p * q + i - p) + c,
            i if i <= 2 * p + p / 2 => c * a_sequence(2 * q + 1) + s(i.abs_diff(2 * p)),
            i if i < 3 * p => self.solve(p * q + i - 2 * p) + c,
            i if i == 3 * p => c * a_sequence(4 * q + 3) + s(0),
            i => c * a_sequence(4 * q + 3) - c + s(4 * p - i),
        }
    }
}
