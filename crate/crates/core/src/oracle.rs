//! Brute-force ground truth.
//!
//! Everything here is computed straight from the containment definitions
//! by scanning every permutation, so it stays independent of the
//! recurrences and generating functions it is used to check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{
    self, avoids_circular, circular_target, next_permutation, pattern_12_3, pattern_1_23,
    pattern_41_23, standardize, Permutation, VincularPattern,
};

/// Largest `n` the oracle accepts without an explicit override.
pub const DEFAULT_ORACLE_CAP: usize = 10;

pub fn ensure_within_cap(n: usize, cap: usize, allow_override: bool) -> Result<()> {
    if n > cap && !allow_override {
        return Err(Error::OutOfRange {
            what: "oracle n",
            n,
            limit: cap,
        });
    }
    Ok(())
}

/// Runs `f` over every arrangement of `rest` placed after `prefix`, in
/// lexicographic order.
fn scan_with_prefix(prefix: &[usize], rest: &[usize], f: &mut dyn FnMut(&[usize])) {
    let mut word: Vec<usize> = prefix.to_vec();
    let mut tail: Vec<usize> = rest.to_vec();
    tail.sort_unstable();
    word.extend_from_slice(&tail);
    let k = prefix.len();
    loop {
        f(&word);
        if !next_permutation(&mut word[k..]) {
            break;
        }
    }
}

/// Partitions the arrangements of `1..=n` (optionally with 1 pinned in
/// front) by their first free letter and folds each partition
/// independently. Partial results come back in lexicographic order.
fn par_partitions<T, F>(n: usize, pin_one: bool, scan: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[usize], &[usize]) -> T + Sync,
{
    let fixed: Vec<usize> = if pin_one { vec![1] } else { vec![] };
    let free: Vec<usize> = (1..=n).filter(|v| !fixed.contains(v)).collect();
    if free.is_empty() {
        return vec![scan(&fixed, &[])];
    }
    free.par_iter()
        .map(|&head| {
            let mut prefix = fixed.clone();
            prefix.push(head);
            let rest: Vec<usize> = free.iter().copied().filter(|&v| v != head).collect();
            scan(&prefix, &rest)
        })
        .collect()
}

fn par_count(n: usize, pin_one: bool, keep: impl Fn(&[usize]) -> bool + Sync) -> u64 {
    par_partitions(n, pin_one, |prefix, rest| {
        let mut count = 0u64;
        scan_with_prefix(prefix, rest, &mut |w| {
            if keep(w) {
                count += 1;
            }
        });
        count
    })
    .into_iter()
    .sum()
}

fn par_collect(n: usize, keep: impl Fn(&[usize]) -> bool + Sync) -> Vec<Vec<usize>> {
    par_partitions(n, false, |prefix, rest| {
        let mut found = Vec::new();
        scan_with_prefix(prefix, rest, &mut |w| {
            if keep(w) {
                found.push(w.to_vec());
            }
        });
        found
    })
    .into_iter()
    .flatten()
    .collect()
}

fn avoids_all(word: &[usize], pats: &[VincularPattern]) -> bool {
    pats.iter().all(|p| !perm::contains_word(word, p))
}

fn circular_avoids(word: &[usize], pat: &VincularPattern) -> bool {
    avoids_circular(&Permutation::from_vec_unchecked(word.to_vec()), pat)
}

/// Circular permutations of `[n]` (1 pinned in front) avoiding `pat`.
pub fn count_circular_avoiders(n: usize, pat: &VincularPattern) -> u64 {
    assert!(n >= 1, "n must be positive");
    par_count(n, true, |w| circular_avoids(w, pat))
}

fn l_patterns() -> [VincularPattern; 2] {
    [pattern_12_3(), pattern_41_23()]
}

fn v_patterns() -> [VincularPattern; 2] {
    [pattern_12_3(), pattern_1_23()]
}

/// Members of L_n: linear permutations avoiding 1̄2̄3 and 412̄3̄.
pub fn linear_avoiders(n: usize) -> Vec<Vec<usize>> {
    let pats = l_patterns();
    par_collect(n, |w| avoids_all(w, &pats))
}

/// Linear permutations of `[n]` avoiding every pattern in `pats`.
pub fn count_linear_avoiders(n: usize, pats: &[VincularPattern]) -> u64 {
    assert!(n >= 1, "n must be positive");
    par_count(n, false, |w| avoids_all(w, pats))
}

/// a_n = |L_n|.
pub fn count_l(n: usize) -> u64 {
    assert!(n >= 1, "n must be positive");
    let pats = l_patterns();
    par_count(n, false, |w| avoids_all(w, &pats))
}

fn held_out(n: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (1..n).rev().collect();
    w.push(n);
    w
}

fn last_two(w: &[usize]) -> (usize, usize) {
    (w[w.len() - 2], w[w.len() - 1])
}

fn pos(w: &[usize], v: usize) -> usize {
    w.iter().position(|&e| e == v).expect("letter present")
}

/// Members of L_n^* (L_n without (n-1)...1n) grouped by their last two
/// letters, restricted to those satisfying `keep`.
fn grouped_l_star(n: usize, keep: impl Fn(&[usize]) -> bool) -> BTreeMap<(usize, usize), u64> {
    let skip = held_out(n);
    let mut out = BTreeMap::new();
    for w in linear_avoiders(n) {
        if w != skip && keep(&w) {
            *out.entry(last_two(&w)).or_insert(0) += 1;
        }
    }
    out
}

/// b(n,i,j): members of L_n^* with 1 right of n, ending in i,j.
pub fn oracle_b(n: usize) -> BTreeMap<(usize, usize), u64> {
    assert!(n >= 2, "b is defined for n >= 2");
    grouped_l_star(n, |w| pos(w, 1) > pos(w, n))
}

/// c(n,i,j): members of L_n^* with 1 left of n and 2 right of n, ending in i,j.
pub fn oracle_c(n: usize) -> BTreeMap<(usize, usize), u64> {
    assert!(n >= 3, "c is defined for n >= 3");
    grouped_l_star(n, |w| {
        let pn = pos(w, n);
        pos(w, 1) < pn && pos(w, 2) > pn
    })
}

/// v(n,j): permutations avoiding 1̄2̄3 and 12̄3̄ that end in j.
pub fn oracle_v(n: usize) -> BTreeMap<usize, u64> {
    assert!(n >= 1, "n must be positive");
    let pats = v_patterns();
    let mut out = BTreeMap::new();
    for w in par_collect(n, |w| avoids_all(w, &pats)) {
        *out.entry(*w.last().expect("nonempty")).or_insert(0) += 1;
    }
    out
}

/// Checks, for every circular permutation λ of `[n]` with 1 in front, that
/// λ avoids 2̄3̄41 circularly exactly when λ with its 1 deleted (and
/// standardized) avoids 1̄2̄3 and 412̄3̄ linearly.
pub fn reduction_check(n: usize) -> bool {
    first_reduction_counterexample(n).is_none()
}

/// The lexicographically first λ violating the reduction, if any.
pub fn first_reduction_counterexample(n: usize) -> Option<Permutation> {
    assert!(n >= 2, "n must be at least 2");
    let target = circular_target();
    let pats = l_patterns();
    let bad = par_partitions(n, true, |prefix, rest| {
        let mut first = None;
        scan_with_prefix(prefix, rest, &mut |w| {
            if first.is_some() {
                return;
            }
            let circ = circular_avoids(w, &target);
            let reduced = standardize(&w[1..]).expect("distinct letters");
            let lin = avoids_all(reduced.entries(), &pats);
            if circ != lin {
                first = Some(w.to_vec());
            }
        });
        first
    });
    bad.into_iter()
        .flatten()
        .next()
        .map(Permutation::from_vec_unchecked)
}

/// Counts of members of A_n by the two letters read just before 1 when
/// going clockwise (`None` when the circle is too short to have them).
pub fn letters_before_one(n: usize) -> BTreeMap<(Option<usize>, Option<usize>), u64> {
    assert!(n >= 1, "n must be positive");
    let target = circular_target();
    let parts = par_partitions(n, true, |prefix, rest| {
        let mut hist: BTreeMap<(Option<usize>, Option<usize>), u64> = BTreeMap::new();
        scan_with_prefix(prefix, rest, &mut |w| {
            if circular_avoids(w, &target) {
                let len = w.len();
                let fin = (len >= 2).then(|| w[len - 1]);
                let pen = (len >= 3).then(|| w[len - 2]);
                *hist.entry((pen, fin)).or_insert(0) += 1;
            }
        });
        hist
    });
    let mut total = BTreeMap::new();
    for hist in parts {
        for (k, c) in hist {
            *total.entry(k).or_insert(0) += c;
        }
    }
    total
}

/// How a letter value before 1 maps to an exponent of its marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightConvention {
    /// letter `i + 2` contributes exponent `i`
    LetterMinusTwo,
    /// letter `i + 1` contributes exponent `i`
    LetterMinusOne,
}

impl WeightConvention {
    fn exponent(self, letter: usize) -> i32 {
        let shift = match self {
            Self::LetterMinusTwo => 2,
            Self::LetterMinusOne => 1,
        };
        letter as i32 - shift
    }
}

fn pow(q: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

/// Σ over A_n of v0^{pen} u0^{fin}, with exponents read off the two letters
/// before 1 under `convention`. Missing letters contribute exponent 0.
pub fn weighted_circular_sum(
    n: usize,
    v0: &BigRational,
    u0: &BigRational,
    convention: WeightConvention,
) -> BigRational {
    let mut total = BigRational::zero();
    for ((pen, fin), count) in letters_before_one(n) {
        let mut w = BigRational::from_integer(BigInt::from(count));
        if let Some(p) = pen {
            w *= pow(v0, convention.exponent(p));
        }
        if let Some(f) = fin {
            w *= pow(u0, convention.exponent(f));
        }
        total += w;
    }
    total
}

/// Every oracle quantity at one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub n: usize,
    /// a_n = |L_n|
    pub a: u64,
    /// |A_n|, circular avoiders of 2̄3̄41
    pub circular: u64,
    pub b: BTreeMap<(usize, usize), u64>,
    pub c: BTreeMap<(usize, usize), u64>,
    pub v: BTreeMap<usize, u64>,
    pub b_marginal: BTreeMap<usize, u64>,
    pub c_marginal: BTreeMap<usize, u64>,
}

fn marginal(cells: &BTreeMap<(usize, usize), u64>) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for (&(_, j), &c) in cells {
        *out.entry(j).or_insert(0) += c;
    }
    out
}

impl OracleReport {
    pub fn compute(n: usize) -> Self {
        assert!(n >= 1, "n must be positive");
        let b = if n >= 2 { oracle_b(n) } else { BTreeMap::new() };
        let c = if n >= 3 { oracle_c(n) } else { BTreeMap::new() };
        Self {
            n,
            a: count_l(n),
            circular: count_circular_avoiders(n, &circular_target()),
            b_marginal: marginal(&b),
            c_marginal: marginal(&c),
            b,
            c,
            v: oracle_v(n),
        }
    }

    pub fn b_cell(&self, i: usize, j: usize) -> u64 {
        self.b.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn c_cell(&self, i: usize, j: usize) -> u64 {
        self.c.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn v_cell(&self, j: usize) -> u64 {
        self.v.get(&j).copied().unwrap_or(0)
    }

    pub fn b_total(&self) -> u64 {
        self.b.values().sum()
    }

    pub fn c_total(&self) -> u64 {
        self.c.values().sum()
    }

    pub fn v_total(&self) -> u64 {
        self.v.values().sum()
    }
}

/// Σ_j weight^{j - shift} · cells(j) as an exact rational.
pub fn weighted_marginal(
    marginal: &BTreeMap<usize, u64>,
    weight: &BigRational,
    shift: i32,
) -> BigRational {
    marginal.iter().fold(BigRational::zero(), |acc, (&j, &c)| {
        acc + BigRational::from_integer(BigInt::from(c)) * pow(weight, j as i32 - shift)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circular_counts_match_small_table() {
        let t = circular_target();
        assert_eq!(count_circular_avoiders(1, &t), 1);
        assert_eq!(count_circular_avoiders(2, &t), 1);
        assert_eq!(count_circular_avoiders(4, &t), 5);
        assert_eq!(count_circular_avoiders(6, &t), 50);
    }

    #[test]
    fn linear_counts() {
        assert_eq!(count_l(1), 1);
        assert_eq!(count_l(4), 15);
        assert_eq!(count_l(7), 690);
    }

    #[test]
    fn b_examples() {
        let b5 = oracle_b(5);
        assert_eq!(b5[&(3, 2)], 3);
        let b2 = oracle_b(2);
        assert_eq!(b2.get(&(2, 1)), Some(&1));
        assert_eq!(b2.get(&(1, 2)), None);
        let b3 = oracle_b(3);
        let expect: BTreeMap<_, _> = [((1, 2), 1), ((2, 1), 1), ((3, 1), 1)].into();
        assert_eq!(b3, expect);
    }

    #[test]
    fn c_examples() {
        assert_eq!(oracle_c(5)[&(2, 4)], 2);
        let expect: BTreeMap<_, _> = [((3, 2), 1)].into();
        assert_eq!(oracle_c(3), expect);
        for n in 4..=8 {
            let c = oracle_c(n);
            assert_eq!(c.get(&(n, 2)), Some(&1), "n={n}");
            for j in 1..n {
                if j != 2 {
                    assert_eq!(c.get(&(n, j)), None);
                }
            }
        }
    }

    #[test]
    fn v_examples() {
        for n in 1..=8 {
            assert_eq!(oracle_v(n)[&n], 1, "n={n}");
        }
        assert_eq!(oracle_v(1)[&1], 1);
        // pinned from an exhaustive filter of the 24 permutations of [4]
        assert_eq!(oracle_v(4).get(&2).copied().unwrap_or(0), 5);
    }

    #[test]
    fn reduction_small() {
        for n in 2..=6 {
            assert!(reduction_check(n), "n={n}");
        }
    }

    #[test]
    fn report_marginals_are_consistent() {
        let r = OracleReport::compute(6);
        assert_eq!(r.b_marginal.values().sum::<u64>(), r.b_total());
        assert_eq!(r.c_marginal.values().sum::<u64>(), r.c_total());
        assert_eq!(r.a, 180);
        assert_eq!(r.circular, 50);
    }

    #[test]
    fn cap_enforcement() {
        assert!(ensure_within_cap(10, 10, false).is_ok());
        assert!(ensure_within_cap(11, 10, false).is_err());
        assert!(ensure_within_cap(11, 10, true).is_ok());
    }
}
