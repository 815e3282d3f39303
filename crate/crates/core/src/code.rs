//! Codewords, constant-weight codes, and their verification.

use std::collections::HashMap;
use std::fmt;

use crate::error::{invalid, Result};

/// Alphabet symbol; `0..q` stands for the residues of `Z_q`.
pub type Symbol = u32;

/// A vector over `{0, ..., q-1}` with its support cached.
///
/// Support positions are stored 0-based; every public report is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    symbols: Vec<Symbol>,
    support: Vec<usize>,
}

impl Codeword {
    pub fn new(symbols: impl Into<Vec<Symbol>>) -> Self {
        let symbols = symbols.into();
        let support = symbols
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, _)| i)
            .collect();
        Codeword { symbols, support }
    }

    /// Like [`Codeword::new`] but rejects symbols outside `[0, q-1]`.
    pub fn with_alphabet(symbols: impl Into<Vec<Symbol>>, q: Symbol) -> Result<Self> {
        let word = Codeword::new(symbols);
        if let Some(pos) = word.symbols.iter().position(|&s| s >= q) {
            return invalid(format!(
                "symbol {} at coordinate {} is outside [0, {}]",
                word.symbols[pos],
                pos + 1,
                q.saturating_sub(1)
            ));
        }
        Ok(word)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Value at 1-based coordinate `i`.
    pub fn get(&self, i: usize) -> Symbol {
        self.symbols[i - 1]
    }

    /// Support as 1-based coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.support.iter().map(|&i| i + 1).collect()
    }

    pub(crate) fn support0(&self) -> &[usize] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    /// Drops the 1-based coordinate `i`.
    pub(crate) fn without_coordinate(&self, i: usize) -> Codeword {
        let mut symbols = self.symbols.clone();
        symbols.remove(i - 1);
        Codeword::new(symbols)
    }

    // Sorted-list intersection on the cached supports.
    fn common_support(&self, other: &Codeword) -> usize {
        let (a, b) = (&self.support, &other.support);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            if a[i] < b[j] {
                i += 1;
            } else if a[i] > b[j] {
                j += 1;
            } else {
                count += 1;
                i += 1;
                j += 1;
            }
        }
        count
    }

    fn distance_unchecked(&self, other: &Codeword) -> usize {
        self.symbols
            .iter()
            .zip(&other.symbols)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

fn check_same_length(u: &Codeword, v: &Codeword) -> Result<()> {
    if u.len() != v.len() {
        return invalid(format!("length mismatch: {} vs {}", u.len(), v.len()));
    }
    Ok(())
}

/// Number of coordinates where `u` and `v` differ.
pub fn hamming_distance(u: &Codeword, v: &Codeword) -> Result<usize> {
    check_same_length(u, v)?;
    Ok(u.distance_unchecked(v))
}

/// `|supp(u) ∩ supp(v)|`.
pub fn support_intersection_size(u: &Codeword, v: &Codeword) -> Result<usize> {
    check_same_length(u, v)?;
    Ok(u.common_support(v))
}

/// A set of codewords together with its declared parameters `(n, q, w, d)`.
///
/// Construction does not check anything; call [`ConstantWeightCode::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantWeightCode {
    pub n: usize,
    pub q: Symbol,
    pub w: usize,
    pub d: usize,
    pub words: Vec<Codeword>,
}

impl ConstantWeightCode {
    pub fn new(n: usize, q: Symbol, w: usize, d: usize, words: Vec<Codeword>) -> Self {
        ConstantWeightCode { n, q, w, d, words }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Smallest pairwise distance, `None` for fewer than two words.
    pub fn min_distance(&self) -> Option<usize> {
        let words = &self.words;
        let mut best: Option<usize> = None;
        for (i, u) in words.iter().enumerate() {
            for v in &words[i + 1..] {
                // |supp u Δ supp v| is a lower bound on the distance
                let floor = u.weight() + v.weight() - 2 * u.common_support(v);
                if best.is_some_and(|b| floor >= b) {
                    continue;
                }
                let d = u.distance_unchecked(v);
                if best.is_none_or(|b| d < b) {
                    best = Some(d);
                }
            }
        }
        best
    }

    /// Checks every code invariant and reports the first failure.
    ///
    /// Pairs whose support symmetric difference already reaches `d` skip
    /// the coordinate-by-coordinate distance computation.
    pub fn verify(&self) -> Verification {
        let size = self.words.len();
        let fail = |violation| Verification { size, violation: Some(violation) };
        if self.words.is_empty() {
            return fail(Violation::Empty);
        }
        for (idx, u) in self.words.iter().enumerate() {
            let index = idx + 1;
            if u.len() != self.n {
                return fail(Violation::Length { index, len: u.len() });
            }
            if let Some(pos) = u.symbols.iter().position(|&s| s >= self.q) {
                return fail(Violation::Symbol { index, coordinate: pos + 1, symbol: u.symbols[pos] });
            }
            if u.weight() != self.w {
                return fail(Violation::Weight { index, weight: u.weight() });
            }
        }
        let mut seen: HashMap<&[Symbol], usize> = HashMap::with_capacity(size);
        for (idx, u) in self.words.iter().enumerate() {
            if let Some(first) = seen.insert(u.symbols(), idx + 1) {
                return fail(Violation::Duplicate { first, second: idx + 1 });
            }
        }
        let safe = |common: usize| 2 * (self.w - common) >= self.d;
        for (i, u) in self.words.iter().enumerate() {
            for (j, v) in self.words.iter().enumerate().skip(i + 1) {
                if safe(u.common_support(v)) {
                    continue;
                }
                let distance = u.distance_unchecked(v);
                if distance < self.d {
                    return fail(Violation::Distance { first: i + 1, second: j + 1, distance });
                }
            }
        }
        Verification { size, violation: None }
    }
}

/// The first violated code invariant. Indices are 1-based positions in the
/// code's word list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    Length { index: usize, len: usize },
    Symbol { index: usize, coordinate: usize, symbol: Symbol },
    Weight { index: usize, weight: usize },
    Duplicate { first: usize, second: usize },
    Distance { first: usize, second: usize, distance: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "code is empty"),
            Violation::Length { index, len } => write!(f, "codeword {index} has length {len}"),
            Violation::Symbol { index, coordinate, symbol } => {
                write!(f, "codeword {index} has symbol {symbol} at coordinate {coordinate}")
            }
            Violation::Weight { index, weight } => write!(f, "codeword {index} has weight {weight}"),
            Violation::Duplicate { first, second } => {
                write!(f, "codewords {first} and {second} are identical")
            }
            Violation::Distance { first, second, distance } => {
                write!(f, "codewords {first} and {second} are at distance {distance}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub size: usize,
    pub violation: Option<Violation>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "pass (size {})", self.size),
            Some(v) => write!(f, "fail: {v}"),
        }
    }
}

pub fn verify_code(code: &ConstantWeightCode) -> Verification {
    code.verify()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn w(s: &[Symbol]) -> Codeword {
        Codeword::new(s.to_vec())
    }

    /// Rows of the filled matrix printed for `n = q = 5`, `s = (1,2,3,3,4,1)`.
    pub(crate) const EXAMPLE_ONE: [[Symbol; 5]; 10] = [
        [1, 1, 1, 0, 0],
        [2, 2, 0, 1, 0],
        [3, 3, 0, 0, 1],
        [3, 0, 2, 2, 0],
        [4, 0, 3, 0, 2],
        [1, 0, 0, 3, 3],
        [0, 3, 3, 3, 0],
        [0, 4, 4, 0, 3],
        [0, 1, 0, 4, 4],
        [0, 0, 1, 1, 1],
    ];

    pub(crate) fn example_one() -> ConstantWeightCode {
        ConstantWeightCode::new(5, 5, 3, 4, EXAMPLE_ONE.iter().map(|r| w(r)).collect())
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hamming_distance(&w(&[1, 1, 1, 0, 0]), &w(&[1, 1, 1, 0, 0])).unwrap(), 0);
        assert_eq!(hamming_distance(&w(&[1, 1, 1, 0, 0]), &w(&[2, 2, 0, 1, 0])).unwrap(), 4);
        assert_eq!(hamming_distance(&w(&[1, 0, 2]), &w(&[0, 1, 2])).unwrap(), 2);
        assert!(hamming_distance(&w(&[1, 0]), &w(&[1, 0, 0])).is_err());
    }

    #[test]
    fn intersection_examples() {
        let a = w(&[1, 1, 1, 0, 0]);
        assert_eq!(support_intersection_size(&a, &w(&[0, 0, 1, 1, 1])).unwrap(), 1);
        assert_eq!(support_intersection_size(&a, &w(&[2, 2, 0, 1, 0])).unwrap(), 2);
        assert_eq!(support_intersection_size(&a, &w(&[0, 0, 0, 0, 0])).unwrap(), 0);
        assert!(support_intersection_size(&a, &w(&[1])).is_err());
    }

    #[test]
    fn support_and_weight_are_one_based() {
        let u = w(&[0, 3, 0, 1]);
        assert_eq!(u.support(), vec![2, 4]);
        assert_eq!(u.weight(), 2);
        assert_eq!(u.get(2), 3);
        assert!(Codeword::with_alphabet(vec![0, 4], 4).is_err());
        assert!(Codeword::with_alphabet(vec![0, 3], 4).is_ok());
    }

    #[test]
    fn example_one_verifies() {
        let code = example_one();
        let report = code.verify();
        assert!(report.passed(), "{report}");
        assert_eq!(report.size, 10);
        assert_eq!(code.min_distance(), Some(4));
    }

    #[test]
    fn distance_violation_is_reported() {
        let code = ConstantWeightCode::new(5, 2, 3, 4, vec![w(&[1, 1, 1, 0, 0]), w(&[1, 1, 0, 1, 0])]);
        assert_eq!(
            code.verify().violation,
            Some(Violation::Distance { first: 1, second: 2, distance: 2 })
        );
    }

    #[test]
    fn binary_pair_is_a_code() {
        let code = ConstantWeightCode::new(5, 2, 3, 4, vec![w(&[1, 1, 1, 0, 0]), w(&[1, 0, 0, 1, 1])]);
        let report = code.verify();
        assert!(report.passed());
        assert_eq!(report.size, 2);
    }

    #[test]
    fn each_invariant_is_checked() {
        let base = |words: Vec<Codeword>| ConstantWeightCode::new(4, 3, 2, 2, words);
        assert_eq!(base(vec![]).verify().violation, Some(Violation::Empty));
        assert_eq!(
            base(vec![w(&[1, 1, 0])]).verify().violation,
            Some(Violation::Length { index: 1, len: 3 })
        );
        assert_eq!(
            base(vec![w(&[1, 3, 0, 0])]).verify().violation,
            Some(Violation::Symbol { index: 1, coordinate: 2, symbol: 3 })
        );
        assert_eq!(
            base(vec![w(&[1, 1, 1, 0])]).verify().violation,
            Some(Violation::Weight { index: 1, weight: 3 })
        );
        assert_eq!(
            base(vec![w(&[1, 1, 0, 0]), w(&[0, 0, 1, 1]), w(&[1, 1, 0, 0])]).verify().violation,
            Some(Violation::Duplicate { first: 1, second: 3 })
        );
    }

    #[test]
    fn min_distance_of_singleton_is_none() {
        let code = ConstantWeightCode::new(3, 2, 3, 4, vec![w(&[1, 1, 1])]);
        assert_eq!(code.min_distance(), None);
        assert!(code.verify().passed());
    }

    /// Enumerates all weight-3 words of length `n` over `Z_q`.
    pub(crate) fn weight_three_words(n: usize, q: Symbol) -> Vec<Codeword> {
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for x in 1..q {
                        for y in 1..q {
                            for z in 1..q {
                                let mut s = vec![0; n];
                                s[a] = x;
                                s[b] = y;
                                s[c] = z;
                                out.push(Codeword::new(s));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn two_shared_coordinates_distance_rule() {
        for (n, q) in [(5, 3), (5, 4), (6, 3)] {
            let words = weight_three_words(n, q);
            for u in &words {
                for v in &words {
                    let common = u.common_support(v);
                    let d = u.distance_unchecked(v);
                    if common <= 1 {
                        assert!(d >= 4);
                    }
                    if common == 2 {
                        let shared_diff = (0..n)
                            .filter(|&i| u.symbols[i] != 0 && v.symbols[i] != 0)
                            .filter(|&i| u.symbols[i] != v.symbols[i])
                            .count();
                        assert_eq!(d, 2 + shared_diff);
                        assert!((2..=4).contains(&d));
                        assert_eq!(d == 4, shared_diff == 2);
                    }
                }
            }
        }
    }

    fn weight_three(n: usize, q: Symbol) -> impl Strategy<Value = Codeword> {
        (proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 3), prop::collection::vec(1..q, 3)).prop_map(
            move |(pos, vals)| {
                let mut s = vec![0; n];
                for (p, v) in pos.into_iter().zip(vals) {
                    s[p] = v;
                }
                Codeword::new(s)
            },
        )
    }

    proptest! {
        #[test]
        fn small_intersection_means_distance_four(u in weight_three(9, 6), v in weight_three(9, 6)) {
            if u.common_support(&v) <= 1 {
                prop_assert!(hamming_distance(&u, &v).unwrap() >= 4);
            }
        }

        #[test]
        fn distance_is_a_metric(
            a in prop::collection::vec(0u32..4, 7),
            b in prop::collection::vec(0u32..4, 7),
            c in prop::collection::vec(0u32..4, 7),
        ) {
            let (a, b, c) = (Codeword::new(a), Codeword::new(b), Codeword::new(c));
            let ab = hamming_distance(&a, &b).unwrap();
            prop_assert_eq!(ab, hamming_distance(&b, &a).unwrap());
            prop_assert_eq!(ab == 0, a == b);
            prop_assert!(hamming_distance(&a, &c).unwrap() <= ab + hamming_distance(&b, &c).unwrap());
        }
    }
}
