//! Checks shared between the property suite and the acceptance gate.
//! Each function panics with a descriptive message on the first violation.

// Each test binary compiles this module separately and uses its own subset.
#![allow(dead_code)]

use std::sync::Arc;

use abelianlab::catalog;
use abelianlab::complexity::{
    extremal_counts, factor_complexity, jump_functions, l_abelian_complexity, series,
    series_bundle, statistic, Statistic,
};
use abelianlab::kernel::{
    automatic_kernel, guess_relations, kernel_slice, GuessConfig, KernelLabel, Rational,
    SequenceOracle,
};
use abelianlab::reflection::ReflectionSpec;
use abelianlab::verify;
use abelianlab::words::{
    apply_coding, enumerate_factors, l_abelian_equivalent, l_abelian_key, parikh, reversal,
    LetterSet, Word,
};

pub fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// `p1 <= p2 <= p3 <= factor complexity` for every catalog word.
pub fn prop_monotone_chain(n_max: usize) {
    for id in catalog::word_ids() {
        let word = catalog::word(id).unwrap();
        let stats = [
            Statistic::abelian(1),
            Statistic::abelian(2),
            Statistic::abelian(3),
            Statistic::Factors,
        ];
        let bundle = series_bundle(&word, &stats, n_max).unwrap();
        for n in 0..=n_max as u64 {
            let values: Vec<u64> = bundle.iter().map(|s| s.value(n)).collect();
            assert!(
                values.windows(2).all(|w| w[0] <= w[1]),
                "chain violated for {id} at n={n}: {values:?}"
            );
        }
    }
}

/// The factor complexity of the Thue-Morse word satisfies
/// `p(2n+1) = 2 p(n+1)` and `p(2n) = p(n+1) + p(n)` for `n >= 2`.
pub fn prop_tm_factor_recurrence(n_max: usize) {
    let tm = catalog::thue_morse();
    let p = series(&tm, &Statistic::Factors, 2 * n_max + 1).unwrap();
    for n in 2..=n_max as u64 {
        assert_eq!(p.value(2 * n + 1), 2 * p.value(n + 1), "odd recurrence at n={n}");
        assert_eq!(p.value(2 * n), p.value(n + 1) + p.value(n), "even recurrence at n={n}");
    }
}

/// For even lengths, the extremal zero counts of `pd2` are even.
pub fn prop_parity_even_lengths(n_max: usize) {
    let x = catalog::pd_block2();
    let zeros = LetterSet::new([0]);
    let bundle = series_bundle(
        &x,
        &[
            Statistic::MaxCount(zeros.clone()),
            Statistic::MinCount(zeros.clone()),
            Statistic::DeltaCount(zeros),
        ],
        n_max,
    )
    .unwrap();
    for n in (0..=n_max as u64).step_by(2) {
        for s in &bundle {
            assert_eq!(s.value(n) % 2, 0, "{} odd at even n={n}", s.kind.label());
        }
    }
}

/// Every count between the extremes is attained by some factor (checked
/// inside `extremal_counts`, so this just has to not error).
pub fn prop_attainment(n_max: usize) {
    let x = catalog::pd_block2();
    let zeros = LetterSet::new([0]);
    let y = catalog::tm_block2();
    let ones_twos = LetterSet::new([1, 2]);
    for n in 0..=n_max {
        extremal_counts(&x, &zeros, n).unwrap();
        extremal_counts(&y, &ones_twos, n).unwrap();
    }
}

/// Crossed power-of-two identities for the zero counts of `pd2`, checked
/// beyond the suite ranges with single-length scans.
pub fn prop_power_of_two_pd(max_level: u32) {
    let x = catalog::pd_block2();
    let zeros = LetterSet::new([0]);
    let max = |n: usize| statistic(&x, &Statistic::MaxCount(zeros.clone()), n).unwrap();
    let min = |n: usize| statistic(&x, &Statistic::MinCount(zeros.clone()), n).unwrap();
    for level in 1..=max_level {
        let base = 1usize << level;
        assert_eq!(max(2 * base) as i64, base as i64 - min(base) as i64, "level {level}");
        assert_eq!(min(2 * base) as i64, base as i64 - max(base) as i64, "level {level}");
        let delta = statistic(&x, &Statistic::DeltaCount(zeros.clone()), base).unwrap();
        assert_eq!(delta, 2, "spread at 2^{level}");
    }
}

/// Power-of-two identities for the 1,2 counts of `tm2`: parity, the two
/// closed forms, and the crossover between consecutive powers.
pub fn prop_power_of_two_tm(max_level: u32) {
    let y = catalog::tm_block2();
    let ones_twos = LetterSet::new([1, 2]);
    let max = |n: usize| statistic(&y, &Statistic::MaxCount(ones_twos.clone()), n).unwrap() as i64;
    let min = |n: usize| statistic(&y, &Statistic::MinCount(ones_twos.clone()), n).unwrap() as i64;
    for level in 1..=max_level {
        let base = 1i64 << level;
        let sign = if level % 2 == 0 { 1 } else { -1 };
        let odd_form = (2 * base + sign) / 3;
        let even_form = (2 * base - 2 * sign) / 3;
        let m = min(base as usize);
        assert_eq!(m.rem_euclid(2), level as i64 % 2, "parity at 2^{level}");
        assert!(
            m == odd_form || m == even_form,
            "min12(2^{level}) = {m} not in {{{odd_form}, {even_form}}}"
        );
        assert_eq!(m + max(2 * base as usize), 2 * base, "crossover at 2^{level}");
        assert_eq!(max(base as usize) + min(2 * base as usize), 2 * base, "crossover at 2^{level}");
    }
}

/// At odd lengths the extremes of `tm2` step by exactly one.
pub fn prop_odd_steps_tm2(n_max: usize) {
    let y = catalog::tm_block2();
    let ones_twos = LetterSet::new([1, 2]);
    let bundle = series_bundle(
        &y,
        &[Statistic::MaxCount(ones_twos.clone()), Statistic::MinCount(ones_twos)],
        n_max + 1,
    )
    .unwrap();
    for n in (1..=n_max as u64).step_by(2) {
        assert_eq!(bundle[1].value(n), bundle[1].value(n + 1) - 1, "min step at n={n}");
        assert_eq!(bundle[0].value(n), bundle[0].value(n - 1) + 1, "max step at n={n}");
    }
}

/// A factor of `pd2` maximizes (minimizes) the 2-count exactly when its
/// image under the generating morphism maximizes (minimizes) the 0-count
/// at doubled length.
pub fn prop_desubstitution_duality_pd(n_max: usize) {
    let x = catalog::pd_block2();
    let phi = catalog::pd_block2_morphism();
    let zeros = LetterSet::new([0]);
    let twos = LetterSet::new([2]);
    for n in 1..=n_max {
        let factors = enumerate_factors(&x, n).unwrap();
        let two_counts = extremal_counts(&x, &twos, n).unwrap();
        let zero_counts = extremal_counts(&x, &zeros, 2 * n).unwrap();
        for u in factors.iter() {
            let image = phi.apply(u).unwrap();
            let image_zeros = zeros.count_in(&image);
            assert_eq!(
                twos.count_in(u) == two_counts.max,
                image_zeros == zero_counts.max,
                "max duality at n={n}"
            );
            assert_eq!(
                twos.count_in(u) == two_counts.min,
                image_zeros == zero_counts.min,
                "min duality at n={n}"
            );
        }
    }
}

/// A factor of `tm2` maximizes the 1,2-count exactly when its image under
/// the generating morphism minimizes it at doubled length, and vice versa.
pub fn prop_desubstitution_duality_tm(n_max: usize) {
    let y = catalog::tm_block2();
    let nu = catalog::tm_block2_morphism();
    let ones_twos = LetterSet::new([1, 2]);
    for n in 1..=n_max {
        let factors = enumerate_factors(&y, n).unwrap();
        let here = extremal_counts(&y, &ones_twos, n).unwrap();
        let doubled = extremal_counts(&y, &ones_twos, 2 * n).unwrap();
        for u in factors.iter() {
            let count = ones_twos.count_in(u);
            let image_count = ones_twos.count_in(&nu.apply(u).unwrap());
            assert_eq!(count == here.max, image_count == doubled.min, "n={n}");
            assert_eq!(count == here.min, image_count == doubled.max, "n={n}");
        }
    }
}

/// Balance and reversal closure for `pd2`: counts of 1 and 2 differ by at
/// most one in every factor, and swapping them in the reversal gives a
/// factor again.
pub fn prop_balance_and_reversal_pd(n_max: usize) {
    let x = catalog::pd_block2();
    let tau = catalog::swap12_ternary();
    for n in 1..=n_max {
        let factors = enumerate_factors(&x, n).unwrap();
        for u in factors.iter() {
            let counts = parikh(u, x.alphabet());
            assert!(
                counts.count(1).abs_diff(counts.count(2)) <= 1,
                "unbalanced factor at n={n}"
            );
            let twin = reversal(&tau.apply(u).unwrap());
            assert!(factors.contains(&twin), "reversal twin missing at n={n}");
        }
    }
}

/// Balance and the three reversal closures for `tm2`.
pub fn prop_balance_and_reversal_tm(n_max: usize) {
    let y = catalog::tm_block2();
    let tau = catalog::swap12_quaternary();
    let tau_prime = catalog::swap03_quaternary();
    for n in 1..=n_max {
        let factors = enumerate_factors(&y, n).unwrap();
        for u in factors.iter() {
            let counts = parikh(u, y.alphabet());
            assert!(counts.count(1).abs_diff(counts.count(2)) <= 1, "1,2 unbalanced at n={n}");
            assert!(counts.count(0).abs_diff(counts.count(3)) <= 1, "0,3 unbalanced at n={n}");
            let swapped = tau.apply(u).unwrap();
            let outer = tau_prime.apply(u).unwrap();
            assert!(factors.contains(&reversal(&swapped)), "swap12 reversal missing at n={n}");
            assert!(factors.contains(&reversal(&outer)), "swap03 reversal missing at n={n}");
            assert!(
                factors.contains(&tau_prime.apply(&swapped).unwrap()),
                "double swap missing at n={n}"
            );
        }
    }
}

/// The canonical key decides `l`-abelian equivalence on all pairs of
/// factors of `pd2` and `tm2`.  Coverage is complete: equivalence is
/// transitive, so checking consecutive members inside each key class and
/// all pairs of class representatives settles every pair.
pub fn prop_key_equals_direct(n_max: usize, max_order: u32) {
    use std::collections::BTreeMap;
    for word in [catalog::pd_block2(), catalog::tm_block2()] {
        let alphabet = word.alphabet();
        for n in 1..=n_max {
            let factors = enumerate_factors(&word, n).unwrap();
            let all: Vec<&[u32]> = factors.iter().collect();
            for order in 1..=max_order {
                if n + 1 < order as usize {
                    continue;
                }
                let mut classes: BTreeMap<Vec<String>, Vec<&[u32]>> = BTreeMap::new();
                for u in &all {
                    let key = l_abelian_key(u, order, alphabet).unwrap();
                    let tag = vec![format!("{:?}", key.prefix), format!("{:?}", key.block_counts)];
                    classes.entry(tag).or_default().push(u);
                }
                let representatives: Vec<&[u32]> =
                    classes.values().map(|members| members[0]).collect();
                for members in classes.values() {
                    for pair in members.windows(2) {
                        assert!(
                            l_abelian_equivalent(pair[0], pair[1], order),
                            "equal keys but inequivalent at n={n}, order={order}"
                        );
                    }
                }
                for a in 0..representatives.len() {
                    for b in a + 1..representatives.len() {
                        assert!(
                            !l_abelian_equivalent(representatives[a], representatives[b], order),
                            "distinct keys but equivalent at n={n}, order={order}"
                        );
                    }
                }
            }
        }
    }
}

/// Shorter prefixes of a fixed point are prefixes of longer ones, and the
/// block codings coincide with their own generating morphisms.
pub fn prop_generation_identities() {
    let tm = catalog::thue_morse();
    let long = tm.prefix(1 << 12).unwrap();
    for len in [1usize, 2, 10, 100, 1000, (1 << 12) - 1] {
        assert_eq!(tm.prefix(len).unwrap().letters(), &long.letters()[..len]);
    }

    let n = 1 << 16;
    let x = catalog::pd_block2().prefix(n).unwrap();
    let phi_fp = Word::fixed_point(&catalog::pd_block2_morphism(), 1).unwrap();
    assert_eq!(x.letters(), phi_fp.prefix(n).unwrap().letters());

    let y = catalog::tm_block2().prefix(n).unwrap();
    let nu_fp = Word::fixed_point(&catalog::tm_block2_morphism(), 1).unwrap();
    assert_eq!(y.letters(), nu_fp.prefix(n).unwrap().letters());

    let g = catalog::tm2_to_pd_coding();
    let recoded = apply_coding(&g, &y).unwrap();
    assert_eq!(recoded.letters(), catalog::period_doubling().prefix(n).unwrap().letters());
}

/// The incremental scans agree with the factor-set route on all statistic
/// kinds.
pub fn prop_fast_path_matches_sets() {
    let lengths = [0usize, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144];
    for id in catalog::word_ids() {
        let word = catalog::word(id).unwrap();
        for &n in &lengths {
            assert_eq!(
                statistic(&word, &Statistic::Factors, n).unwrap(),
                factor_complexity(&word, n).unwrap(),
                "factors of {id} at {n}"
            );
            for order in 1..=3 {
                assert_eq!(
                    statistic(&word, &Statistic::abelian(order), n).unwrap(),
                    l_abelian_complexity(&word, order, n).unwrap(),
                    "p{order} of {id} at {n}"
                );
            }
        }
    }
    let x = catalog::pd_block2();
    let zeros = LetterSet::new([0]);
    for &n in &lengths {
        let e = extremal_counts(&x, &zeros, n).unwrap();
        assert_eq!(statistic(&x, &Statistic::MaxCount(zeros.clone()), n).unwrap(), e.max);
        assert_eq!(statistic(&x, &Statistic::MinCount(zeros.clone()), n).unwrap(), e.min);
        let (jmax, jmin) = jump_functions(&x, &zeros, n).unwrap();
        assert_eq!(statistic(&x, &Statistic::MaxJump(zeros.clone()), n).unwrap(), jmax);
        assert_eq!(statistic(&x, &Statistic::MinJump(zeros.clone()), n).unwrap(), jmin);
    }
}

/// Composing kernel slices multiplies the steps and stacks the residues.
pub fn prop_slice_composition(n_max: u64) {
    let a = catalog::a_sequence_oracle();
    let cases = [((1u32, 1u64), (2u32, 3u64)), ((2, 2), (1, 0)), ((3, 5), (2, 1))];
    for ((i1, j1), (i2, j2)) in cases {
        let inner = kernel_slice(&a, 2, KernelLabel { i: i1, j: j1 });
        let outer = kernel_slice(&inner, 2, KernelLabel { i: i2, j: j2 });
        let composed = kernel_slice(
            &a,
            2,
            KernelLabel { i: i1 + i2, j: j1 + (j2 << i1) },
        );
        for n in 0..=n_max {
            assert_eq!(outer.value(n), composed.value(n), "composition at n={n}");
        }
    }
}

/// Rank is monotone in the truncation and stabilizes by 512 for the
/// catalog sequences.
pub fn prop_rank_monotonicity(ids: &[&str]) {
    for id in ids {
        let oracle = catalog::sequence(id).unwrap();
        let mut ranks = Vec::new();
        for truncation in [256usize, 512, 1024] {
            let config = GuessConfig { truncation, horizon: 1 << 14, rank_cap: 64 };
            ranks.push(guess_relations(&oracle, 2, &config).unwrap().rank());
        }
        assert!(ranks[0] <= ranks[1], "{id}: rank dropped: {ranks:?}");
        assert_eq!(ranks[1], ranks[2], "{id}: rank not stable by 512: {ranks:?}");
    }
}

/// Mod-2 reductions of the verified-regular count statistics have finite
/// kernels; the automaton reproduces the reduced sequence.
pub fn prop_finite_values_bridge(ids: &[&str], n_check: u64) {
    for id in ids {
        let oracle = catalog::sequence(id).unwrap().mod_reduced(2);
        let kernel = automatic_kernel(&oracle, 2, 64, 64).unwrap();
        assert!(kernel.state_count() <= 64, "{id}: {} states", kernel.state_count());
        for n in 0..=n_check {
            assert_eq!(kernel.value(n), oracle.value(n), "{id} at n={n}");
        }
    }
}

/// The three catalog statistics satisfy their reflection recurrences:
/// seeding the recurrence with measured initial values reproduces the
/// measured series.
pub fn prop_reflection_instances(n_max: usize) {
    let zeros = LetterSet::new([0]);
    let ones_twos = LetterSet::new([1, 2]);
    let instances: [(Arc<Word>, Statistic, u32, i64); 3] = [
        (catalog::pd_block2(), Statistic::DeltaCount(zeros), 2, 2),
        (catalog::tm_block2(), Statistic::DeltaCount(ones_twos), 1, 1),
        (catalog::pd_block2(), Statistic::abelian(1), 2, 3),
    ];
    for (word, stat, level0, increment) in instances {
        let measured = series(&word, &stat, n_max).unwrap();
        let initials: Vec<i64> =
            (0..1u64 << level0).map(|n| measured.value(n) as i64).collect();
        let spec = ReflectionSpec::new(level0, increment, initials).unwrap();
        let predicted = spec.series(n_max as u64);
        for n in 0..=n_max as u64 {
            assert_eq!(
                predicted[n as usize],
                measured.value(n) as i64,
                "{} {} at n={n}",
                word.id(),
                stat.label()
            );
        }
    }
}

/// Reflection sequences grow at most logarithmically.  Each mirror step
/// is followed by a shift step, so the maximum over a level grows by at
/// most the increment per level; the empirically fitted slope of
/// `(s(n) - D) / bit_length(n)` over the whole range must stay below that
/// cap.  A bounded-ratio check, not a limit claim.
pub fn prop_asymptotic_log_bound() {
    let specs = [
        ReflectionSpec::new(0, 1, vec![0]).unwrap(),
        ReflectionSpec::new(2, 2, vec![0, 1, 2, 1]).unwrap(),
        ReflectionSpec::new(3, 3, vec![2, 0, 4, 1, 3, 3, 0, 2]).unwrap(),
    ];
    for spec in &specs {
        let series = spec.series(1 << 20);
        let offset = spec.initials().iter().map(|v| v.abs()).max().unwrap();
        let cap = spec.increment().abs() + 1;
        for (n, &v) in series.iter().enumerate().skip(1) {
            let bits = 64 - (n as u64).leading_zeros() as i64;
            assert!(
                v - offset <= cap * bits,
                "log bound broken at n={n}: {v} > {cap}*{bits}+{offset}"
            );
        }
    }
}

/// Along `n = (4^(l+1) - 1) / 3` the value grows by exactly the increment
/// per level.
pub fn prop_telescoping(seed: u64) {
    let mut state = seed;
    for _ in 0..20 {
        let level0 = 1 + (splitmix(&mut state) % 4) as u32;
        let increment = (splitmix(&mut state) % 7) as i64 - 3;
        let initials: Vec<i64> =
            (0..1usize << level0).map(|_| (splitmix(&mut state) % 11) as i64 - 5).collect();
        let spec = ReflectionSpec::new(level0, increment, initials).unwrap();
        let start = ((level0 as i64 - 1).div_euclid(2)).max(0) as u32;
        for level in start..10 {
            let here = (4u64.pow(level + 1) - 1) / 3;
            let next = (4u64.pow(level + 2) - 1) / 3;
            assert_eq!(
                spec.eval(next) - spec.eval(here),
                increment,
                "telescoping at level {level}"
            );
        }
    }
}

/// Assembling the 2-abelian complexity of the period-doubling word from
/// the abelian data of its block coding, through the piecewise
/// combination, matches direct enumeration and is itself detected as
/// 2-regular.
pub fn prop_combine_bridge(n_max: usize) {
    let half = Rational::new(1.into(), 2.into());
    let one = Rational::from_integer(1.into());
    let even = SequenceOracle::new("even", |n| (1 - n % 2) as i64);
    let assembled = SequenceOracle::combine(
        "p2-pd-assembled",
        vec![
            (one.clone(), catalog::sequence("p1-pd2").unwrap(), None),
            (half, catalog::sequence("delta0-pd2").unwrap(), Some(even.clone())),
            (one.clone(), SequenceOracle::constant("one", 1), Some(even.clone())),
            (-one.clone(), catalog::sequence("jmax0-pd2").unwrap(), Some(even.clone())),
            (-one, catalog::sequence("jmin0-pd2").unwrap(), Some(even)),
        ],
    );
    let direct = series(&catalog::period_doubling(), &Statistic::abelian(2), n_max + 1).unwrap();
    for n in 1..=n_max as u64 {
        assert_eq!(assembled.value(n), direct.value(n + 1) as i64, "bridge at n={n}");
    }
    let config = GuessConfig { truncation: 256, horizon: 1 << 13, rank_cap: 64 };
    let set = guess_relations(&assembled, 2, &config).unwrap();
    assert!(set.rank() <= 64);
}

/// Runs the suites that the acceptance gate relies on wholesale.
pub fn assert_all_pass(reports: &[verify::VerificationReport]) {
    for report in reports {
        assert!(report.passed(), "\n{}", verify::render_text(std::slice::from_ref(report)));
    }
}
