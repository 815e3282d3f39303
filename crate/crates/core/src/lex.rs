//! Lexicographic order on k-subsets of `[n] = {1, ..., n}`.
//!
//! `A ≺ B` iff the smallest element of the symmetric difference lies in `A`.
//! For sorted subsets of equal size this coincides with ordinary
//! lexicographic comparison of the element sequences. Ranks are 1-based.

use std::cmp::Ordering;
use std::fmt;

use crate::bounds::binomial;
use crate::error::{invalid, Result};

/// A sorted k-subset of `[n]`. Elements are 1-based and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KSubset {
    n: usize,
    elements: Vec<usize>,
}

impl KSubset {
    /// Builds a subset from elements in any order; duplicates and points
    /// outside `[n]` are rejected.
    pub fn new(n: usize, elements: impl Into<Vec<usize>>) -> Result<Self> {
        let mut elements = elements.into();
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return invalid(format!("repeated element in subset {elements:?}"));
        }
        if let Some(&e) = elements.iter().find(|&&e| e == 0 || e > n) {
            return invalid(format!("element {e} outside [1, {n}]"));
        }
        Ok(KSubset { n, elements })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.iter().all(|&e| e >= 1 && e <= n));
        KSubset { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Number of common elements with `other`.
    pub fn intersection_size(&self, other: &KSubset) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        let (a, b) = (&self.elements, &other.elements);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Position in the lexicographic enumeration of `([n] choose k)`, in
    /// `[1, C(n, k)]`.
    ///
    /// `rank({t_1 < ... < t_k}) = 1 + sum_i sum_{j = t_{i-1}+1}^{t_i - 1} C(n - j, k - i)`
    /// with `t_0 = 0`.
    pub fn rank(&self) -> u64 {
        let (n, k) = (self.n as u64, self.k() as u64);
        let mut rank = 1u64;
        let mut prev = 0u64;
        for (i, &t) in self.elements.iter().enumerate() {
            let i = i as u64 + 1;
            for j in prev + 1..t as u64 {
                rank += binomial(n - j, k - i);
            }
            prev = t as u64;
        }
        rank
    }

    fn check_comparable(&self, other: &KSubset) -> Result<()> {
        if self.n != other.n || self.k() != other.k() {
            return invalid(format!(
                "cannot compare a {}-subset of [{}] with a {}-subset of [{}]",
                self.k(),
                self.n,
                other.k(),
                other.n
            ));
        }
        Ok(())
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by `(n, k)` first, then by `≺`.
impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.k())
            .cmp(&(other.n, other.k()))
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

/// `a ≺ b`: the minimum of the symmetric difference belongs to `a`.
pub fn lex_less(a: &KSubset, b: &KSubset) -> Result<bool> {
    a.check_comparable(b)?;
    let (mut i, mut j) = (0, 0);
    let (x, y) = (&a.elements, &b.elements);
    // walk both sorted lists; the first element present in only one side
    // is the minimum of the symmetric difference
    loop {
        match (x.get(i), y.get(j)) {
            (Some(p), Some(q)) if p == q => {
                i += 1;
                j += 1;
            }
            (Some(p), Some(q)) => return Ok(p < q),
            (Some(_), None) => return Ok(true),
            (None, Some(_)) => return Ok(false),
            (None, None) => return Ok(false),
        }
    }
}

pub fn rank(s: &KSubset) -> u64 {
    s.rank()
}

/// Inverse of [`rank`]: picks each element greedily as the smallest value
/// whose block of completions still covers the remaining rank.
pub fn unrank(n: usize, k: usize, r: u64) -> Result<KSubset> {
    if k > n {
        return invalid(format!("k = {k} exceeds n = {n}"));
    }
    let total = binomial(n as u64, k as u64);
    if r == 0 || r > total {
        return invalid(format!("rank {r} outside [1, {total}] for ({n} choose {k})"));
    }
    let mut remaining = r - 1;
    let mut elements = Vec::with_capacity(k);
    let mut next = 1usize;
    for i in 1..=k {
        let mut t = next;
        loop {
            // subsets whose i-th element is t (given the prefix)
            let block = binomial((n - t) as u64, (k - i) as u64);
            if remaining < block {
                break;
            }
            remaining -= block;
            t += 1;
        }
        elements.push(t);
        next = t + 1;
    }
    Ok(KSubset::from_sorted_unchecked(n, elements))
}

/// Iterator over all k-subsets of `[n]` in `≺` order.
#[derive(Clone, Debug)]
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = KSubset;

    fn next(&mut self) -> Option<KSubset> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still be incremented
        let pos = (0..k).rev().find(|&i| next[i] < self.n - (k - 1 - i));
        self.current = pos.map(|i| {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            next
        });
        Some(KSubset::from_sorted_unchecked(self.n, out))
    }
}

pub fn subsets(n: usize, k: usize) -> Subsets {
    Subsets {
        n,
        current: (k <= n).then(|| (1..=k).collect()),
    }
}

/// All k-subsets of `[n]` in `≺` order; empty when `k > n`.
pub fn enumerate(n: usize, k: usize) -> Vec<KSubset> {
    subsets(n, k).collect()
}

/// Removes a shared element from both subsets. `a ≺ b` implies
/// `a \ {x} ≺ b \ {x}`.
pub fn delete_common(a: &KSubset, b: &KSubset, x: usize) -> Result<(KSubset, KSubset)> {
    a.check_comparable(b)?;
    if !a.contains(x) || !b.contains(x) {
        return invalid(format!("{x} is not common to {a} and {b}"));
    }
    let strip = |s: &KSubset| {
        KSubset::from_sorted_unchecked(s.n, s.elements.iter().copied().filter(|&e| e != x).collect())
    };
    Ok((strip(a), strip(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn set(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e.to_vec()).unwrap()
    }

    /// Reference enumeration: itertools emits combinations of a sorted
    /// input in lexicographic order.
    fn oracle(n: usize, k: usize) -> Vec<Vec<usize>> {
        (1..=n).combinations(k).collect()
    }

    /// Definition-level comparison, independent of `lex_less`'s merge walk.
    fn prec_by_definition(a: &[usize], b: &[usize]) -> bool {
        let sym: Vec<usize> = a
            .iter()
            .filter(|x| !b.contains(x))
            .chain(b.iter().filter(|x| !a.contains(x)))
            .copied()
            .collect();
        match sym.iter().min() {
            Some(m) => a.contains(m),
            None => false,
        }
    }

    #[test]
    fn lex_less_examples() {
        assert!(lex_less(&set(5, &[1, 2, 3]), &set(5, &[1, 2, 4])).unwrap());
        assert!(lex_less(&set(5, &[1, 4, 5]), &set(5, &[2, 3, 4])).unwrap());
        assert!(!lex_less(&set(5, &[2, 3, 4]), &set(5, &[2, 3, 4])).unwrap());
    }

    #[test]
    fn lex_less_rejects_mismatched_shapes() {
        assert!(lex_less(&set(5, &[1, 2, 3]), &set(6, &[1, 2, 3])).is_err());
        assert!(lex_less(&set(5, &[1, 2, 3]), &set(5, &[1, 2])).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(set(5, &[1, 2, 3]).rank(), 1);
        assert_eq!(set(9, &[1, 2, 3]).rank(), 1);
        assert_eq!(set(5, &[3, 4, 5]).rank(), 10);
        assert_eq!(set(5, &[1, 3, 5]).rank(), 5);
        // frozen from the enumeration oracle
        let pos = oracle(5, 3).iter().position(|s| s == &[1, 3, 5]).unwrap() + 1;
        assert_eq!(pos, 5);
        let pos = oracle(5, 3).iter().position(|s| s == &[1, 4, 5]).unwrap() + 1;
        assert_eq!(pos, 6);
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(unrank(5, 3, 1).unwrap(), set(5, &[1, 2, 3]));
        assert_eq!(unrank(5, 3, 10).unwrap(), set(5, &[3, 4, 5]));
        assert_eq!(unrank(5, 3, 5).unwrap(), set(5, &[1, 3, 5]));
        assert!(unrank(5, 3, 0).is_err());
        assert!(unrank(5, 3, 11).is_err());
        assert!(unrank(3, 4, 1).is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(3, 3), vec![set(3, &[1, 2, 3])]);
        let five: Vec<String> = enumerate(5, 3)
            .iter()
            .map(|s| s.elements().iter().map(|e| e.to_string()).collect())
            .collect();
        assert_eq!(five, ["123", "124", "125", "134", "135", "145", "234", "235", "245", "345"]);
        let four: Vec<Vec<usize>> = enumerate(4, 2).iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(four, oracle(4, 2));
        assert!(enumerate(2, 3).is_empty());
        assert_eq!(enumerate(4, 0).len(), 1);
    }

    #[test]
    fn enumerate_matches_oracle_and_unrank() {
        for n in 0..=9 {
            for k in 0..=n {
                let got = enumerate(n, k);
                let want = oracle(n, k);
                assert_eq!(got.len(), want.len());
                for (r, (g, w)) in got.iter().zip(&want).enumerate() {
                    assert_eq!(g.elements(), &w[..]);
                    assert_eq!(g.rank(), r as u64 + 1);
                    assert_eq!(&unrank(n, k, r as u64 + 1).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn rank_is_strictly_monotone() {
        for n in 1..=10 {
            for k in 1..=4.min(n) {
                let all = enumerate(n, k);
                for a in &all {
                    for b in &all {
                        let less = lex_less(a, b).unwrap();
                        assert_eq!(less, prec_by_definition(a.elements(), b.elements()));
                        assert_eq!(less, a.rank() < b.rank(), "{a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn bijection_for_triples() {
        for n in 3..=14 {
            let total = binomial(n as u64, 3);
            for r in 1..=total {
                assert_eq!(unrank(n, 3, r).unwrap().rank(), r);
            }
            for s in enumerate(n, 3) {
                assert_eq!(unrank(n, 3, s.rank()).unwrap(), s);
            }
        }
    }

    #[test]
    fn delete_common_examples() {
        let (a, b) = delete_common(&set(5, &[1, 2, 4]), &set(5, &[1, 3, 4]), 1).unwrap();
        assert_eq!((a.elements(), b.elements()), (&[2, 4][..], &[3, 4][..]));
        assert!(lex_less(&a, &b).unwrap());
        let (a, b) = delete_common(&set(5, &[1, 2, 3]), &set(5, &[1, 2, 5]), 2).unwrap();
        assert_eq!((a.elements(), b.elements()), (&[1, 3][..], &[1, 5][..]));
        assert!(delete_common(&set(5, &[1, 2, 3]), &set(5, &[1, 4, 5]), 2).is_err());
    }

    #[test]
    fn deleting_a_common_element_preserves_order() {
        for n in 3..=8 {
            let all = enumerate(n, 3);
            for a in &all {
                for b in &all {
                    if !lex_less(a, b).unwrap() {
                        continue;
                    }
                    for &x in a.elements() {
                        if b.contains(x) {
                            let (a2, b2) = delete_common(a, b, x).unwrap();
                            assert!(lex_less(&a2, &b2).unwrap(), "{a} {b} minus {x}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subset_validation() {
        assert!(KSubset::new(5, vec![1, 1, 2]).is_err());
        assert!(KSubset::new(5, vec![0, 1, 2]).is_err());
        assert!(KSubset::new(5, vec![1, 2, 6]).is_err());
        assert_eq!(KSubset::new(5, vec![3, 1, 2]).unwrap().elements(), &[1, 2, 3]);
    }
}
