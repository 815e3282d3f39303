//! Large sets with holes and the construction of optimal `(n, 4, 3)_q`
//! codes for `n ≡ 5 (mod 6)`, `2 <= q <= n - 1`.
//!
//! An `LS(2, (3, {3, 5}), n)` is a family of `n - 2` designs on `[n]`, each
//! a 2BD with block sizes in `{3, 5}`, such that the union of all blocks is
//! a 3BD and a block of size `s` occurs in exactly `s - 2` of the designs.
//! The construction below additionally needs every design to contain exactly
//! one 5-block; nothing about a file is trusted, it is all re-checked.

mod base;
mod exact_cover;
mod format;
mod search;

use std::collections::HashMap;
use std::fmt;

pub use base::base_code;
pub use format::{read_large_set, write_large_set};
pub use search::{ls_search, trivial_large_set, SearchConfig, SearchOutcome};

use crate::bounds::{binomial, u_q};
use crate::code::{Codeword, ConstantWeightCode, Symbol};
use crate::error::{invalid, Error, Result};
use crate::lex::{subsets, KSubset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub n: usize,
    pub blocks: Vec<KSubset>,
}

impl Design {
    pub fn new(n: usize, blocks: Vec<KSubset>) -> Self {
        Design { n, blocks }
    }

    pub fn five_blocks(&self) -> impl Iterator<Item = &KSubset> {
        self.blocks.iter().filter(|b| b.k() == 5)
    }

    pub fn triples(&self) -> impl Iterator<Item = &KSubset> {
        self.blocks.iter().filter(|b| b.k() == 3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargeSet {
    pub n: usize,
    pub designs: Vec<Design>,
}

impl LargeSet {
    pub fn new(n: usize, designs: Vec<Design>) -> Self {
        LargeSet { n, designs }
    }
}

/// Which properties [`verify_large_set`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Only the large-set definition.
    Plain,
    /// Also exactly one 5-block in every design.
    OneFiveBlock,
}

/// First failed large-set condition. Design numbers are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LsViolation {
    DesignCount { found: usize, expected: usize },
    GroundSet { design: usize, n: usize },
    BlockSize { design: usize, block: KSubset },
    PairCover { design: usize, pair: (usize, usize), count: usize },
    FiveBlockCount { design: usize, count: usize },
    TripleCover { triple: KSubset, count: usize },
    Multiplicity { block: KSubset, count: usize, expected: usize },
}

impl fmt::Display for LsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LsViolation::DesignCount { found, expected } => {
                write!(f, "found {found} designs, expected {expected}")
            }
            LsViolation::GroundSet { design, n } => write!(f, "design {design} is on {n} points"),
            LsViolation::BlockSize { design, block } => {
                write!(f, "design {design} has block {block} of size {}", block.k())
            }
            LsViolation::PairCover { design, pair, count } => write!(
                f,
                "design {design} covers pair {{{},{}}} {count} times",
                pair.0, pair.1
            ),
            LsViolation::FiveBlockCount { design, count } => {
                write!(f, "design {design} has {count} blocks of size five")
            }
            LsViolation::TripleCover { triple, count } => {
                write!(f, "triple {triple} lies in {count} blocks of the union")
            }
            LsViolation::Multiplicity { block, count, expected } => {
                write!(f, "block {block} appears in {count} designs, expected {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsReport {
    pub violation: Option<LsViolation>,
}

impl LsReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for LsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => f.write_str("pass"),
            Some(v) => write!(f, "fail: {v}"),
        }
    }
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b <= n);
    (a - 1) * n + (b - 1)
}

pub fn verify_large_set(ls: &LargeSet, flavor: Flavor) -> LsReport {
    match check(ls, flavor) {
        Ok(()) => LsReport { violation: None },
        Err(v) => LsReport { violation: Some(v) },
    }
}

fn check(ls: &LargeSet, flavor: Flavor) -> std::result::Result<(), LsViolation> {
    let n = ls.n;
    let expected = n.saturating_sub(2);
    if ls.designs.len() != expected {
        return Err(LsViolation::DesignCount { found: ls.designs.len(), expected });
    }
    for (r, design) in ls.designs.iter().enumerate() {
        let design_no = r + 1;
        if design.n != n || design.blocks.iter().any(|b| b.n() != n) {
            return Err(LsViolation::GroundSet { design: design_no, n: design.n });
        }
        if let Some(block) = design.blocks.iter().find(|b| b.k() != 3 && b.k() != 5) {
            return Err(LsViolation::BlockSize { design: design_no, block: block.clone() });
        }
        let mut cover = vec![0usize; n * n];
        for block in &design.blocks {
            let e = block.elements();
            for (i, &a) in e.iter().enumerate() {
                for &b in &e[i + 1..] {
                    cover[pair_index(n, a, b)] += 1;
                }
            }
        }
        for a in 1..=n {
            for b in a + 1..=n {
                let count = cover[pair_index(n, a, b)];
                if count != 1 {
                    return Err(LsViolation::PairCover { design: design_no, pair: (a, b), count });
                }
            }
        }
        if flavor == Flavor::OneFiveBlock {
            let count = design.five_blocks().count();
            if count != 1 {
                return Err(LsViolation::FiveBlockCount { design: design_no, count });
            }
        }
    }

    // set union, remembering in how many designs each block occurs
    let mut union: Vec<(&KSubset, usize)> = Vec::new();
    let mut index: HashMap<&KSubset, usize> = HashMap::new();
    for design in &ls.designs {
        for block in &design.blocks {
            match index.get(block) {
                Some(&i) => union[i].1 += 1,
                None => {
                    index.insert(block, union.len());
                    union.push((block, 1));
                }
            }
        }
    }
    let mut triple_cover = vec![0usize; binomial(n as u64, 3) as usize];
    for (block, _) in &union {
        for t in subsets(block.k(), 3) {
            let triple: Vec<usize> = t.elements().iter().map(|&i| block.elements()[i - 1]).collect();
            let rank = KSubset::from_sorted_unchecked(n, triple).rank();
            triple_cover[rank as usize - 1] += 1;
        }
    }
    for (t, &count) in subsets(n, 3).zip(&triple_cover) {
        if count != 1 {
            return Err(LsViolation::TripleCover { triple: t, count });
        }
    }
    for (block, count) in union {
        // C(|A| - t, k - t) with t = 2, k = 3
        let expected = block.k() - 2;
        if count != expected {
            return Err(LsViolation::Multiplicity { block: block.clone(), count, expected });
        }
    }
    Ok(())
}

/// One class `P_i`: the three designs sharing the 5-block `F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveGroup {
    pub five_block: KSubset,
    /// 1-based indices into the original design list, ascending.
    pub designs: [usize; 3],
}

/// The partition of the designs by their 5-block, groups sorted by the
/// lexicographic rank of `F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub groups: Vec<FiveGroup>,
}

impl Partition {
    /// The large set with designs renumbered so that designs `3i-2, 3i-1, 3i`
    /// form group `i`.
    pub fn relabel(&self, ls: &LargeSet) -> LargeSet {
        let designs = self
            .groups
            .iter()
            .flat_map(|g| g.designs.iter().map(|&r| ls.designs[r - 1].clone()))
            .collect();
        LargeSet::new(ls.n, designs)
    }
}

pub fn partition_by_five_blocks(ls: &LargeSet) -> Result<Partition> {
    if let Some(v) = verify_large_set(ls, Flavor::OneFiveBlock).violation {
        return invalid(format!("not a large set with one 5-block per design: {v}"));
    }
    let mut by_block: HashMap<&KSubset, Vec<usize>> = HashMap::new();
    for (r, design) in ls.designs.iter().enumerate() {
        let five = design.five_blocks().next().expect("flavor checked");
        by_block.entry(five).or_default().push(r + 1);
    }
    let mut groups = by_block
        .into_iter()
        .map(|(block, designs)| {
            let designs: [usize; 3] = designs
                .try_into()
                .map_err(|d: Vec<usize>| Error::InvalidInput(format!("5-block {block} is in {} designs", d.len())))?;
            Ok(FiveGroup { five_block: block.clone(), designs })
        })
        .collect::<Result<Vec<_>>>()?;
    groups.sort_by_key(|g| g.five_block.rank());
    Ok(Partition { groups })
}

/// Builds an optimal `(n, 4, 3)_q` code of size `U_q(n)` from a large set
/// with one 5-block per design.
///
/// With `q - 1 = 3α + β`: symbol `r ∈ [q-1]` is placed on every triple of
/// design `r`; group `i <= α` contributes an optimal quaternary code on `F_i`
/// with symbols `{3i-2, 3i-1, 3i}`; when `β >= 1`, group `α + 1` contributes an
/// optimal `(β+1)`-ary code on `F_{α+1}` with the remaining symbols.
pub fn construct_from_ls(ls: &LargeSet, q: Symbol) -> Result<ConstantWeightCode> {
    let n = ls.n;
    if n % 6 != 5 {
        return invalid(format!("construction needs n ≡ 5 (mod 6), got n = {n}"));
    }
    if q < 2 || q as usize > n - 1 {
        return invalid(format!("construction needs 2 <= q <= {}, got q = {q}", n - 1));
    }
    let partition = partition_by_five_blocks(ls)?;
    let designs = partition.relabel(ls).designs;
    let alpha = (q - 1) / 3;
    let beta = q - 1 - 3 * alpha;
    let groups_needed = alpha as usize + usize::from(beta >= 1);
    if groups_needed > partition.groups.len() {
        return invalid(format!(
            "q = {q} needs {groups_needed} five-blocks but the large set has {}",
            partition.groups.len()
        ));
    }

    let mut words = Vec::new();
    for r in 1..q {
        for triple in designs[r as usize - 1].triples() {
            let mut s = vec![0; n];
            for &p in triple.elements() {
                s[p - 1] = r;
            }
            words.push(Codeword::new(s));
        }
    }
    for i in 1..=alpha {
        let alphabet = [0, 3 * i - 2, 3 * i - 1, 3 * i];
        words.extend(base_code(4, &alphabet, &partition.groups[i as usize - 1].five_block)?);
    }
    if beta >= 1 {
        let alphabet: Vec<Symbol> = std::iter::once(0).chain(3 * alpha + 1..=3 * alpha + beta).collect();
        words.extend(base_code(beta + 1, &alphabet, &partition.groups[alpha as usize].five_block)?);
    }

    let code = ConstantWeightCode::new(n, q, 3, 4, words);
    if let Some(v) = code.verify().violation {
        return Err(Error::Internal(format!("constructed code failed verification: {v}")));
    }
    let target = u_q(n as u64, q as u64)?;
    if code.len() as u64 != target {
        return Err(Error::Internal(format!("constructed {} codewords, expected U_q(n) = {target}", code.len())));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::tests::w;
    use crate::oracle::{certify_optimal, exact_a};
    use std::time::Duration;

    const LS11: &str = include_str!("../../data/ls11.largeset");

    fn ls11() -> LargeSet {
        read_large_set(LS11).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn trivial_large_set_passes() {
        let ls = trivial_large_set();
        assert!(verify_large_set(&ls, Flavor::Plain).passed());
        assert!(verify_large_set(&ls, Flavor::OneFiveBlock).passed());
    }

    #[test]
    fn two_designs_fail() {
        let mut ls = trivial_large_set();
        ls.designs.pop();
        assert_eq!(
            verify_large_set(&ls, Flavor::Plain).violation,
            Some(LsViolation::DesignCount { found: 2, expected: 3 })
        );
    }

    #[test]
    fn bundled_eleven_point_set_passes() {
        let ls = ls11();
        assert_eq!(ls.designs.len(), 9);
        let report = verify_large_set(&ls, Flavor::OneFiveBlock);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn union_blocks_meet_in_at_most_two_points() {
        let ls = ls11();
        let mut union: Vec<&KSubset> = ls.designs.iter().flat_map(|d| &d.blocks).collect();
        union.sort();
        union.dedup();
        for (i, a) in union.iter().enumerate() {
            for b in &union[i + 1..] {
                assert!(a.intersection_size(b) <= 2, "{a} {b}");
            }
        }
    }

    #[test]
    fn violations_are_located() {
        let ls = ls11();

        let mut bad = ls.clone();
        bad.designs[0].blocks.swap_remove(0);
        assert!(matches!(
            verify_large_set(&bad, Flavor::Plain).violation,
            Some(LsViolation::PairCover { design: 1, count: 0, .. })
        ));

        // a design with the 5-block split into triples and pairs is not a
        // {3,5}-design
        let mut bad = ls.clone();
        bad.designs[2].blocks.push(set(11, &[1, 2]));
        assert!(matches!(
            verify_large_set(&bad, Flavor::Plain).violation,
            Some(LsViolation::BlockSize { design: 3, .. })
        ));

        // swapping a triple between two designs of different groups keeps
        // the union but breaks pair coverage
        let mut bad = ls.clone();
        let moved = bad.designs[0].triples().next().unwrap().clone();
        bad.designs[0].blocks.retain(|b| b != &moved);
        bad.designs[3].blocks.push(moved);
        assert!(matches!(
            verify_large_set(&bad, Flavor::Plain).violation,
            Some(LsViolation::PairCover { .. })
        ));

        // identical designs: pairwise fine, but the union multiplicities break
        let mut bad = ls.clone();
        bad.designs[1] = bad.designs[0].clone();
        assert!(!verify_large_set(&bad, Flavor::Plain).passed());
    }

    #[test]
    fn five_block_flavor_is_checked() {
        // two designs with two 5-blocks on 9 points would need a different
        // ground set; use a copy of the trivial set with an extra 5-block
        let mut ls = trivial_large_set();
        ls.designs[0].blocks.push(set(5, &[1, 2, 3, 4, 5]));
        assert!(matches!(
            verify_large_set(&ls, Flavor::OneFiveBlock).violation,
            Some(LsViolation::PairCover { design: 1, count: 2, .. })
        ));
    }

    #[test]
    fn partition_examples() {
        let p = partition_by_five_blocks(&trivial_large_set()).unwrap();
        assert_eq!(p.groups.len(), 1);
        assert_eq!(p.groups[0].designs, [1, 2, 3]);
        assert_eq!(p.groups[0].five_block, set(5, &[1, 2, 3, 4, 5]));

        let ls = ls11();
        let p = partition_by_five_blocks(&ls).unwrap();
        assert_eq!(p.groups.len(), 3);
        let mut all: Vec<usize> = p.groups.iter().flat_map(|g| g.designs).collect();
        all.sort();
        assert_eq!(all, (1..=9).collect::<Vec<_>>());
        assert!(p.groups.windows(2).all(|g| g[0].five_block.rank() < g[1].five_block.rank()));
        let relabeled = p.relabel(&ls);
        for (i, g) in p.groups.iter().enumerate() {
            for r in 3 * i..3 * i + 3 {
                assert!(relabeled.designs[r].blocks.contains(&g.five_block));
            }
        }
    }

    #[test]
    fn partition_rejects_five_block_in_two_designs() {
        let mut ls = ls11();
        // replace one design of a group by a design of another group: that
        // group's 5-block now sits in two designs, the other's in four
        let p = partition_by_five_blocks(&ls).unwrap();
        let (a, b) = (p.groups[0].designs[0], p.groups[1].designs[0]);
        ls.designs[a - 1] = ls.designs[b - 1].clone();
        assert!(partition_by_five_blocks(&ls).is_err());
    }

    #[test]
    fn base_code_examples() {
        let coords = set(5, &[1, 2, 3, 4, 5]);
        let two = base_code(2, &[0, 7], &coords).unwrap();
        assert_eq!(two, vec![w(&[7, 7, 7, 0, 0]), w(&[7, 0, 0, 7, 7])]);
        assert_eq!(two[0].support(), vec![1, 2, 3]);
        assert_eq!(two[1].support(), vec![1, 4, 5]);
        assert_eq!(base_code(3, &[0, 1, 2], &coords).unwrap().len(), 5);
        assert_eq!(base_code(4, &[0, 1, 2, 3], &coords).unwrap().len(), 10);
        assert!(base_code(5, &[0, 1, 2, 3, 4], &coords).is_err());
        assert!(base_code(3, &[1, 2, 3], &coords).is_err());
        assert!(base_code(3, &[0, 2, 2], &coords).is_err());
        assert!(base_code(3, &[0, 1, 2], &set(6, &[1, 2, 3])).is_err());

        let spread = base_code(4, &[0, 4, 5, 6], &set(11, &[2, 4, 6, 8, 10])).unwrap();
        for word in &spread {
            assert_eq!(word.len(), 11);
            assert!(word.support().iter().all(|c| [2, 4, 6, 8, 10].contains(c)));
            assert!(word.symbols().iter().all(|s| [0, 4, 5, 6].contains(s)));
        }
    }

    /// The frozen base codes are what the oracle returns, and optimal.
    #[test]
    fn base_codes_match_oracle() {
        for q in 2..=4 {
            let result = exact_a(5, q, Duration::from_secs(30));
            assert!(result.proved_optimal);
            let frozen: Vec<Codeword> = base::canonical(q).unwrap().iter().map(|r| w(r)).collect();
            assert_eq!(result.witness.words, frozen, "q' = {q}");
            let code = ConstantWeightCode::new(5, q, 3, 4, frozen);
            assert!(certify_optimal(&code, Duration::from_secs(30)).is_optimal());
        }
    }

    #[test]
    fn trivial_construction_sizes() {
        let ls = trivial_large_set();
        for (q, size) in [(2, 2), (3, 5), (4, 10)] {
            let code = construct_from_ls(&ls, q).unwrap();
            assert_eq!(code.len(), size);
            assert!(code.verify().passed());
        }
        assert!(construct_from_ls(&ls, 5).is_err());
        assert!(construct_from_ls(&ls, 1).is_err());
    }

    #[test]
    fn eleven_point_construction() {
        let ls = ls11();
        let code = construct_from_ls(&ls, 5).unwrap();
        assert_eq!(code.len(), 72);
        assert_eq!(code.min_distance(), Some(4));
    }

    #[test]
    fn size_formula_by_residue() {
        let ls = ls11();
        let n = 11u64;
        for q in 2..=10u32 {
            let code = construct_from_ls(&ls, q).unwrap();
            let alpha = (q as u64 - 1) / 3;
            let beta = q as u64 - 1 - 3 * alpha;
            let extra = 10 * alpha + [0, 2, 5][beta as usize];
            let formula = (q as u64 - 1) * (binomial(n, 2) - 10) / 3 + extra;
            assert_eq!(code.len() as u64, formula, "q = {q}");
            assert_eq!(formula, u_q(n, q as u64).unwrap());
        }
    }

    #[test]
    fn cross_class_pairs_differ_on_shared_coordinates() {
        let code = construct_from_ls(&ls11(), 10).unwrap();
        for (i, u) in code.words.iter().enumerate() {
            for v in &code.words[i + 1..] {
                let shared: Vec<usize> =
                    u.support().into_iter().filter(|c| v.support().contains(c)).collect();
                if shared.len() == 2 {
                    assert!(shared.iter().all(|&c| u.get(c) != v.get(c)), "{u} {v}");
                }
            }
        }
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        let ls = ls11();
        assert!(construct_from_ls(&ls, 11).is_err());
        let mut bad = ls.clone();
        bad.designs.pop();
        assert!(construct_from_ls(&bad, 3).is_err());
        let seven = LargeSet::new(7, vec![]);
        assert!(construct_from_ls(&seven, 3).is_err());
    }

    #[test]
    fn format_round_trip_and_errors() {
        let ls = ls11();
        assert_eq!(read_large_set(&write_large_set(&ls)).unwrap(), ls);
        let text = write_large_set(&trivial_large_set());
        assert_eq!(
            text,
            "largeset 1\nn=5 t=2 k=3 K=3,5\ndesign 1\nblock 1 2 3 4 5\ndesign 2\nblock 1 2 3 4 5\ndesign 3\nblock 1 2 3 4 5\n"
        );
        assert!(read_large_set("largeset 1\nn=5 t=2 k=3 K=3,4\n").is_err());
        assert!(read_large_set("largeset 1\nn=5 t=2 k=3 K=3,5\nblock 1 2 3\n").is_err());
        assert!(read_large_set("largeset 1\nn=5 t=2 k=3 K=3,5\ndesign 2\n").is_err());
        assert!(read_large_set("largeset 1\nn=5 t=2 k=3 K=3,5\ndesign 1\nblock 2 1 3\n").is_err());
        assert!(read_large_set("largeset 1\nn=5 t=2 k=3 K=3,5\ndesign 1\nblock 1 2 6\n").is_err());
        assert!(read_large_set("largeset 1\nn=5 t=2 k=3 K=3,5\ndesign 1\nblok 1 2 3\n").is_err());
        let commented = "largeset 1\nn=5 t=2 k=3 K=3,5\n# c\ndesign 1\nblock 1 2 3 4 5\n";
        assert_eq!(read_large_set(commented).unwrap().designs.len(), 1);
    }

    #[test]
    fn search_results() {
        let config = SearchConfig { time_limit: Duration::from_secs(30), ..SearchConfig::default() };
        match ls_search(5, config).unwrap() {
            SearchOutcome::Found { large_set, .. } => assert_eq!(large_set, trivial_large_set()),
            other => panic!("{other:?}"),
        }
        match ls_search(11, config).unwrap() {
            SearchOutcome::Found { large_set, .. } => {
                assert!(verify_large_set(&large_set, Flavor::OneFiveBlock).passed());
            }
            other => panic!("{other:?}"),
        }
        let err = ls_search(7, config).unwrap_err().to_string();
        assert!(err.contains("no LS(2,(3,{3,5}),7) exists"), "{err}");
        assert!(ls_search(9, config).is_err());
    }

    #[test]
    fn search_is_deterministic_and_matches_bundled_file() {
        let config = SearchConfig::default();
        let a = ls_search(11, config).unwrap();
        let b = ls_search(11, config).unwrap();
        match (a, b) {
            (SearchOutcome::Found { large_set: x, .. }, SearchOutcome::Found { large_set: y, .. }) => {
                assert_eq!(x, y);
                assert_eq!(x, ls11());
            }
            other => panic!("{other:?}"),
        }
    }
}
