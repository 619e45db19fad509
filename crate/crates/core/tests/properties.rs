use std::collections::BTreeMap;

use circavoid::oracle::{oracle_b, oracle_c, weighted_marginal};
use circavoid::perm::{
    avoids_circular, circular_target, contains, next_permutation, occurrences, rotations, Permutation,
    VincularPattern,
};
use circavoid::series::{b1u_series, c1u_series, rational, v_series, Argument, ArithKind, TruncatedSeries};
use num_rational::BigRational;
use proptest::prelude::*;

fn perm_strategy(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut v: Vec<usize> = (1..=n).collect();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

fn order_isomorphic(word: &[usize], pat: &[usize]) -> bool {
    (0..word.len()).all(|a| (0..word.len()).all(|b| (word[a] < word[b]) == (pat[a] < pat[b])))
}

/// Index subsets of size k, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn naive_count(host: &[usize], pat: &[usize]) -> usize {
    subsets(host.len(), pat.len())
        .iter()
        .filter(|idx| {
            let w: Vec<usize> = idx.iter().map(|&i| host[i]).collect();
            order_isomorphic(&w, pat)
        })
        .count()
}

fn windows_match(host: &[usize], pat: &[usize]) -> bool {
    host.len() >= pat.len() && host.windows(pat.len()).any(|w| order_isomorphic(w, pat))
}

#[test]
fn degenerate_patterns_match_direct_scans() {
    for m in 1..=4 {
        for pat in all_perms(m) {
            let classical = VincularPattern::classical(pat.clone()).unwrap();
            let subword = VincularPattern::subword(pat.clone()).unwrap();
            for n in 1..=6 {
                for host in all_perms(n) {
                    let p = Permutation::new(host.clone()).unwrap();
                    assert_eq!(contains(&p, &classical), naive_count(&host, &pat) > 0, "{host:?} {pat:?}");
                    assert_eq!(contains(&p, &subword), windows_match(&host, &pat), "{host:?} {pat:?}");
                }
            }
        }
    }
}

fn weighted(cells: BTreeMap<(usize, usize), u64>, u: i64, shift: i32) -> BigRational {
    let mut marginal = BTreeMap::new();
    for ((_, j), c) in cells {
        *marginal.entry(j).or_insert(0) += c;
    }
    weighted_marginal(&marginal, &rational(u), shift)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circular_avoidance_is_rotation_invariant(p in perm_strategy(8)) {
        let t = circular_target();
        let base = avoids_circular(&p, &t);
        for r in rotations(&p) {
            prop_assert_eq!(avoids_circular(&r, &t), base);
        }
    }

    #[test]
    fn classical_occurrences_match_subsequence_count(
        host in perm_strategy(7),
        pat in (1usize..=4).prop_flat_map(|m| Just((1..=m).collect::<Vec<_>>()).prop_shuffle()),
    ) {
        let cp = VincularPattern::classical(pat.clone()).unwrap();
        prop_assert_eq!(occurrences(&host, &cp).len(), naive_count(host.entries(), &pat));
    }

    #[test]
    fn series_division_undoes_multiplication(
        a in prop::collection::vec(-9i64..=9, 1..=8),
        b in prop::collection::vec(-9i64..=9, 0..=7),
        c0 in prop_oneof![-3i64..=-1, 1i64..=3],
    ) {
        let n = 7;
        let a = TruncatedSeries::from_integers(n, &a);
        let mut bv = vec![c0];
        bv.extend(b);
        let b = TruncatedSeries::from_integers(n, &bv);
        let prod = a.arith(&b, ArithKind::Mul).unwrap();
        prop_assert_eq!(prod.arith(&b, ArithKind::Div).unwrap(), a.clone());
        let sum = a.arith(&b, ArithKind::Add).unwrap();
        prop_assert_eq!(sum.arith(&b, ArithKind::Sub).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn v_truncation_is_stable(num in -4i64..=4, den in 1i64..=3, n in 4usize..=8) {
        let p = Argument::Scalar(BigRational::new(num.into(), den.into()));
        let small = v_series(&p, n).unwrap();
        let big = v_series(&p, n + 5).unwrap();
        prop_assert_eq!(big.truncate(n).unwrap(), small);
    }

    #[test]
    fn weighted_series_match_oracle_marginals(u in -3i64..=6) {
        let n_max = 7;
        let b = b1u_series(&Argument::int(u), n_max).unwrap();
        let c = c1u_series(&Argument::int(u), n_max).unwrap();
        for n in 2..=n_max {
            prop_assert_eq!(b.coeff(n), &weighted(oracle_b(n), u, 1), "B n = {}", n);
            if n >= 3 {
                prop_assert_eq!(c.coeff(n), &weighted(oracle_c(n), u, 2), "C n = {}", n);
            }
        }
    }
}
