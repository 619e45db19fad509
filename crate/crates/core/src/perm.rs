//! Permutations, vincular patterns and containment in the linear and
//! circular senses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A linear permutation of `1..=n`, stored one-based by value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    /// Validates that `entries` is a bijection onto `{1, ..., n}` with `n >= 1`.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            if e == 0 || e > n || seen[e] {
                return Err(Error::InvalidPermutation(format!(
                    "{entries:?} is not a permutation of 1..={n}"
                )));
            }
            seen[e] = true;
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self { entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_vec_unchecked((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    /// Zero-based position of value `v`, if present.
    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.entries.iter().position(|&e| e == v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() >= 10 { " " } else { "" };
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

/// A pattern permutation with adjacency constraints.
///
/// `vincula` holds one-based pattern positions `t`: in an occurrence the
/// host positions matched to pattern positions `t` and `t + 1` must be
/// consecutive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VincularPattern {
    entries: Vec<usize>,
    vincula: BTreeSet<usize>,
}

impl VincularPattern {
    pub fn new(entries: Vec<usize>, vincula: impl IntoIterator<Item = usize>) -> Result<Self> {
        let perm = Permutation::new(entries)
            .map_err(|e| Error::InvalidPattern(e.to_string()))?;
        let m = perm.len();
        let vincula: BTreeSet<usize> = vincula.into_iter().collect();
        if let Some(&bad) = vincula.iter().find(|&&t| t == 0 || t >= m) {
            return Err(Error::InvalidPattern(format!(
                "vinculum position {bad} outside 1..={}",
                m.saturating_sub(1)
            )));
        }
        Ok(Self {
            entries: perm.into_entries(),
            vincula,
        })
    }

    /// A pattern with no adjacency constraints.
    pub fn classical(entries: Vec<usize>) -> Result<Self> {
        Self::new(entries, [])
    }

    /// A pattern whose letters must all be consecutive.
    pub fn subword(entries: Vec<usize>) -> Result<Self> {
        let m = entries.len();
        Self::new(entries, 1..m)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn vincula(&self) -> &BTreeSet<usize> {
        &self.vincula
    }

    fn adjacent_to_previous(&self, pattern_pos: usize) -> bool {
        // pattern_pos is zero-based; vinculum t joins one-based t and t+1.
        pattern_pos > 0 && self.vincula.contains(&pattern_pos)
    }
}

impl fmt::Display for VincularPattern {
    /// Renders juxtaposed letters for each vinculum and `-` elsewhere,
    /// e.g. `23-4-1`. Patterns longer than 9 join adjacent letters with `_`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let joiner = if self.len() > 9 { "_" } else { "" };
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(if self.adjacent_to_previous(k) { joiner } else { "-" })?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for VincularPattern {
    type Err = Error;

    /// Blocks are separated by `-` or whitespace; the letters inside a
    /// block must be adjacent. A block is read digit by digit unless it
    /// contains `_`, which then separates multi-digit letters.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidPattern(format!("{text:?}: {why}"));
        let mut entries = Vec::new();
        let mut vincula = Vec::new();
        for block in text.split(|c: char| c == '-' || c.is_whitespace()) {
            if block.is_empty() {
                continue;
            }
            let letters: Vec<&str> = if block.contains('_') {
                block.split('_').collect()
            } else {
                (0..block.len()).map(|i| &block[i..i + 1]).collect()
            };
            for (k, l) in letters.iter().enumerate() {
                if l.is_empty() || !l.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad("letters must be decimal numbers"));
                }
                if k > 0 {
                    vincula.push(entries.len());
                }
                entries.push(l.parse::<usize>().map_err(|_| bad("letter too large"))?);
            }
        }
        if entries.is_empty() {
            return Err(bad("empty pattern"));
        }
        Self::new(entries, vincula)
    }
}

/// The circular pattern 2̄3̄41: entries 2341 with letters 2 and 3 adjacent.
pub fn circular_target() -> VincularPattern {
    VincularPattern::new(vec![2, 3, 4, 1], [1]).expect("valid pattern")
}

/// 1̄2̄3: entries 123 with the first two letters adjacent.
pub fn pattern_12_3() -> VincularPattern {
    VincularPattern::new(vec![1, 2, 3], [1]).expect("valid pattern")
}

/// 1 2̄3̄: entries 123 with the last two letters adjacent.
pub fn pattern_1_23() -> VincularPattern {
    VincularPattern::new(vec![1, 2, 3], [2]).expect("valid pattern")
}

/// 4 1 2̄3̄: entries 4123 with the last two letters adjacent.
pub fn pattern_41_23() -> VincularPattern {
    VincularPattern::new(vec![4, 1, 2, 3], [3]).expect("valid pattern")
}

/// One occurrence: strictly increasing zero-based host indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub indices: Vec<usize>,
}

impl Occurrence {
    /// Indices shifted to one-based positions.
    pub fn one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }
}

/// Backtracking search over index tuples.
///
/// Order-isomorphism is enforced incrementally: a candidate at pattern
/// position `k` must compare with every already-chosen letter the same way
/// the pattern letters do.
struct Search<'a> {
    host: &'a [usize],
    pat: &'a VincularPattern,
    chosen: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(host: &'a [usize], pat: &'a VincularPattern) -> Self {
        Self {
            host,
            pat,
            chosen: Vec::with_capacity(pat.len()),
        }
    }

    fn consistent(&self, k: usize, idx: usize) -> bool {
        let value = self.host[idx];
        let pk = self.pat.entries[k];
        self.chosen.iter().enumerate().all(|(t, &ci)| {
            let pt = self.pat.entries[t];
            (self.host[ci] < value) == (pt < pk)
        })
    }

    fn candidates(&self, k: usize) -> std::ops::Range<usize> {
        let m = self.pat.len();
        let n = self.host.len();
        let start = self.chosen.last().map_or(0, |&i| i + 1);
        // leave room for the remaining m - k - 1 letters
        let end = n + 1 + k - m;
        if self.pat.adjacent_to_previous(k) {
            start..(start + 1).min(end)
        } else {
            start..end
        }
    }

    /// Visits occurrences in lexicographic order; the visitor returns
    /// `false` to stop.
    fn run(&mut self, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == self.pat.len() {
            return visit(&self.chosen);
        }
        for idx in self.candidates(k) {
            if self.consistent(k, idx) {
                self.chosen.push(idx);
                let keep_going = self.run(k + 1, visit);
                self.chosen.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
}

fn search(host: &[usize], pat: &VincularPattern, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if pat.len() > host.len() {
        return;
    }
    Search::new(host, pat).run(0, visit);
}

/// Every occurrence of `pat` in `host`, in lexicographic order of indices.
pub fn occurrences(host: &Permutation, pat: &VincularPattern) -> Vec<Occurrence> {
    let mut out = Vec::new();
    search(host.entries(), pat, &mut |idx| {
        out.push(Occurrence {
            indices: idx.to_vec(),
        });
        true
    });
    out
}

/// True when `host` (any sequence of distinct integers) contains `pat`.
pub fn contains_word(host: &[usize], pat: &VincularPattern) -> bool {
    let mut found = false;
    search(host, pat, &mut |_| {
        found = true;
        false
    });
    found
}

pub fn contains(host: &Permutation, pat: &VincularPattern) -> bool {
    contains_word(host.entries(), pat)
}

/// True iff `host` has no occurrence of any pattern in `pats`.
pub fn avoids_linear(host: &Permutation, pats: &[VincularPattern]) -> bool {
    pats.iter().all(|p| !contains(host, p))
}

/// The `n` cyclic shifts of `p`, starting with `p`; each is obtained from
/// the previous one by moving its last letter to the front.
pub fn rotations(p: &Permutation) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(p.len());
    let mut cur = p.entries().to_vec();
    for _ in 0..p.len() {
        out.push(Permutation::from_vec_unchecked(cur.clone()));
        cur.rotate_right(1);
    }
    out
}

/// True iff no rotation of `p` contains `pat` linearly.
pub fn avoids_circular(p: &Permutation, pat: &VincularPattern) -> bool {
    rotations(p).iter().all(|r| !contains(r, pat))
}

/// Replaces the i-th smallest entry by i.
pub fn standardize(word: &[usize]) -> Result<Permutation> {
    let mut sorted: Vec<usize> = word.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidPermutation(format!(
            "{word:?} has repeated entries"
        )));
    }
    let entries = word
        .iter()
        .map(|e| sorted.binary_search(e).expect("present") + 1)
        .collect();
    Permutation::new(entries)
}

/// Lexicographic successor in place; false once `v` is the last arrangement.
pub fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_text_round_trip() {
        let t: VincularPattern = "23-4-1".parse().unwrap();
        assert_eq!(t, circular_target());
        assert_eq!(t.to_string(), "23-4-1");
        let spaced: VincularPattern = "1 23".parse().unwrap();
        assert_eq!(spaced, pattern_1_23());
        let long: VincularPattern = "10_9-8-7-6-5-4-3-2-1".parse().unwrap();
        assert_eq!(long.vincula().iter().copied().collect::<Vec<_>>(), [1]);
        assert_eq!(long.to_string(), "10_9-8-7-6-5-4-3-2-1");
        assert!("".parse::<VincularPattern>().is_err());
        assert!("12a".parse::<VincularPattern>().is_err());
        assert!("13".parse::<VincularPattern>().is_err());
    }

    fn perm(s: &str) -> Permutation {
        Permutation::new(s.bytes().map(|b| (b - b'0') as usize).collect()).unwrap()
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut v: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation::new(v.clone()).unwrap()];
        while next_permutation(&mut v) {
            out.push(Permutation::new(v.clone()).unwrap());
        }
        out
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(VincularPattern::new(vec![1, 2, 3], [3]).is_err());
        assert!(VincularPattern::new(vec![1, 2, 3], [0]).is_err());
    }

    #[test]
    fn only_452_is_an_occurrence_of_2_31() {
        let pat = VincularPattern::new(vec![2, 3, 1], [2]).unwrap();
        let occ = occurrences(&perm("41523"), &pat);
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].one_based(), vec![1, 3, 4]);
        // classical 231 sees both 452 and 453
        let classical = VincularPattern::classical(vec![2, 3, 1]).unwrap();
        assert_eq!(occurrences(&perm("41523"), &classical).len(), 2);
    }

    #[test]
    fn short_host_has_no_occurrences() {
        assert!(occurrences(&perm("123"), &circular_target()).is_empty());
    }

    #[test]
    fn occurrences_of_12_3_in_identity() {
        let occ: Vec<Vec<usize>> = occurrences(&perm("1234"), &pattern_12_3())
            .iter()
            .map(Occurrence::one_based)
            .collect();
        assert_eq!(occ, vec![vec![1, 2, 3], vec![1, 2, 4], vec![2, 3, 4]]);
    }

    #[test]
    fn avoidance_examples() {
        let pats = [pattern_12_3(), pattern_41_23()];
        assert!(avoids_linear(&perm("45132"), &pats));
        assert!(avoids_linear(&perm("12"), &pats));
        // 3142: 3,1 then adjacent 4? no: needs w<x<y<z shape 4123 -> 3 1 ... only 4,2 follow
        assert!(avoids_linear(&perm("3142"), &[pattern_41_23()]));
        assert!(!avoids_linear(&perm("4123"), &[pattern_41_23()]));
    }

    #[test]
    fn rotation_examples() {
        let r: Vec<String> = rotations(&perm("123")).iter().map(|p| p.to_string()).collect();
        assert_eq!(r, ["123", "312", "231"]);
        assert_eq!(rotations(&perm("1")), vec![perm("1")]);
        let r: Vec<String> = rotations(&perm("2341")).iter().map(|p| p.to_string()).collect();
        assert_eq!(r, ["2341", "1234", "4123", "3412"]);
    }

    #[test]
    fn circular_examples() {
        let target = circular_target();
        // the rotation 2341 is itself an occurrence
        assert!(!avoids_circular(&perm("1234"), &target));
        assert!(avoids_circular(&perm("1243"), &target));
        for p in all_perms(3) {
            assert!(avoids_circular(&p, &target));
        }
        let avoiders = all_perms(4)
            .into_iter()
            .filter(|p| p.entries()[0] == 1)
            .filter(|p| avoids_circular(p, &target))
            .count();
        assert_eq!(avoiders, 5);
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[5, 2, 9]).unwrap(), perm("213"));
        assert_eq!(standardize(&[1, 2, 3]).unwrap(), perm("123"));
        assert_eq!(standardize(&[7, 3, 8, 1]).unwrap(), perm("3241"));
        assert!(standardize(&[2, 2]).is_err());
    }

    #[test]
    fn display_marks_vincula() {
        assert_eq!(circular_target().to_string(), "23-4-1");
        assert_eq!(pattern_41_23().to_string(), "4-1-23");
    }

    #[test]
    fn next_permutation_counts() {
        assert_eq!(all_perms(5).len(), 120);
        let mut v = vec![1];
        assert!(!next_permutation(&mut v));
    }
}
