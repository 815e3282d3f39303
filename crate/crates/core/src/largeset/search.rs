//! Best-effort search for an `LS(2, (3, {3, 5}), n)` with one 5-block per
//! design, `n ≡ 5 (mod 6)`.
//!
//! The hole family `F_1, ..., F_m` (`m = (n-2)/3`, pairwise meeting in at
//! most two points) is fixed first. Designs `3i-2, 3i-1, 3i` get hole `F_i`,
//! and the remaining blocks are found as one exact cover problem:
//!
//! * every triple of `[n]` not inside a hole is used exactly once overall;
//! * every pair of design `r` not inside its hole is covered exactly once.
//!
//! An option is "design `r` takes triple `T`" for `|T ∩ F_{g(r)}| <= 1`.
//! Triples are presented in a seeded random order so restarts explore
//! different parts of the tree.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::exact_cover::{CoverOutcome, ExactCover, SearchStats};
use super::{Design, LargeSet};
use crate::error::{invalid, Result};
use crate::lex::{enumerate, KSubset};

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found { large_set: LargeSet, nodes: u64, elapsed: Duration },
    TimedOut { nodes: u64, elapsed: Duration, attempts: usize },
    /// Every hole family and restart was exhausted without a solution.
    Exhausted { nodes: u64, elapsed: Duration },
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub time_limit: Duration,
    pub seed: u64,
    /// Budget for a single randomized attempt before restarting.
    pub restart_after: Duration,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            time_limit: Duration::from_secs(60),
            seed: 1,
            restart_after: Duration::from_secs(2),
        }
    }
}

/// The degenerate large set on five points: three copies of `{[5]}`.
pub fn trivial_large_set() -> LargeSet {
    let block = KSubset::new(5, vec![1, 2, 3, 4, 5]).expect("valid block");
    let design = Design::new(5, vec![block]);
    LargeSet::new(5, vec![design.clone(), design.clone(), design])
}

/// Searches for an `LS(2, (3, {3, 5}), n)` whose designs each contain one
/// 5-block. Single-threaded and deterministic for a fixed seed.
pub fn ls_search(n: usize, config: SearchConfig) -> Result<SearchOutcome> {
    if n % 6 != 5 {
        let note = if n == 7 {
            "; note that no LS(2,(3,{3,5}),7) exists at all (n = 7 is the one odd exception)"
        } else {
            ""
        };
        return invalid(format!(
            "large-set search needs n ≡ 5 (mod 6), got n = {n}{note}"
        ));
    }
    let start = Instant::now();
    if n == 5 {
        return Ok(SearchOutcome::Found { large_set: trivial_large_set(), nodes: 0, elapsed: start.elapsed() });
    }
    let holes = hole_families(n);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut nodes = 0u64;
    let mut attempts = 0usize;
    let mut exhausted = vec![false; holes.len()];
    while start.elapsed() < config.time_limit {
        if exhausted.iter().all(|&e| e) {
            return Ok(SearchOutcome::Exhausted { nodes, elapsed: start.elapsed() });
        }
        for (fi, family) in holes.iter().enumerate() {
            if exhausted[fi] {
                continue;
            }
            let remaining = config.time_limit.saturating_sub(start.elapsed());
            if remaining.is_zero() {
                break;
            }
            attempts += 1;
            let budget = config.restart_after.min(remaining);
            let mut stats = SearchStats { nodes: 0 };
            let outcome = attempt(n, family, &mut rng, budget, &mut stats);
            nodes += stats.nodes;
            match outcome {
                Attempt::Found(ls) => {
                    return Ok(SearchOutcome::Found { large_set: ls, nodes, elapsed: start.elapsed() })
                }
                Attempt::Exhausted => exhausted[fi] = true,
                Attempt::TimedOut => {}
            }
        }
    }
    Ok(SearchOutcome::TimedOut { nodes, elapsed: start.elapsed(), attempts })
}

enum Attempt {
    Found(LargeSet),
    Exhausted,
    TimedOut,
}

fn attempt(
    n: usize,
    holes: &[KSubset],
    rng: &mut ChaCha8Rng,
    budget: Duration,
    stats: &mut SearchStats,
) -> Attempt {
    let designs = n - 2;
    let group = |r: usize| r / 3;
    let hole_pair = |g: usize, a: usize, b: usize| holes[g].contains(a) && holes[g].contains(b);

    let mut item_of_triple: HashMap<[usize; 3], usize> = HashMap::new();
    let mut items = 0usize;
    let mut triples = Vec::new();
    for t in enumerate(n, 3) {
        let e = t.elements();
        if holes.iter().any(|h| e.iter().all(|&x| h.contains(x))) {
            continue;
        }
        let key = [e[0], e[1], e[2]];
        item_of_triple.insert(key, items);
        triples.push(key);
        items += 1;
    }
    let mut item_of_pair: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for r in 0..designs {
        for a in 1..=n {
            for b in a + 1..=n {
                if !hole_pair(group(r), a, b) {
                    item_of_pair.insert((r, a, b), items);
                    items += 1;
                }
            }
        }
    }

    let mut options: Vec<(usize, [usize; 3])> = Vec::new();
    triples.shuffle(rng);
    let mut order: Vec<usize> = (0..designs).collect();
    for t in &triples {
        order.shuffle(rng);
        for &r in &order {
            let hits = t.iter().filter(|&&x| holes[group(r)].contains(x)).count();
            if hits <= 1 {
                options.push((r, *t));
            }
        }
    }
    let mut ec = ExactCover::new(items);
    for (id, (r, t)) in options.iter().enumerate() {
        let cover = [
            item_of_triple[t],
            item_of_pair[&(*r, t[0], t[1])],
            item_of_pair[&(*r, t[0], t[2])],
            item_of_pair[&(*r, t[1], t[2])],
        ];
        ec.add_option(id, &cover);
    }
    match ec.solve(budget, stats) {
        CoverOutcome::Solved(chosen) => {
            let mut blocks: Vec<Vec<KSubset>> = (0..designs).map(|r| vec![holes[group(r)].clone()]).collect();
            for id in chosen {
                let (r, t) = options[id];
                blocks[r].push(KSubset::new(n, t.to_vec()).expect("valid triple"));
            }
            let designs = blocks
                .into_iter()
                .map(|mut b| {
                    b.sort();
                    Design::new(n, b)
                })
                .collect();
            Attempt::Found(LargeSet::new(n, designs))
        }
        CoverOutcome::Exhausted => Attempt::Exhausted,
        CoverOutcome::TimedOut => Attempt::TimedOut,
    }
}

/// Candidate hole families: `m` 5-subsets of `[n]` pairwise meeting in at
/// most two points, in lexicographic order of the family, first one fixed
/// to `{1,...,5}`. Only a handful are returned.
fn hole_families(n: usize) -> Vec<Vec<KSubset>> {
    const MAX_FAMILIES: usize = 8;
    let m = (n - 2) / 3;
    let fives = enumerate(n, 5);
    let mut out = Vec::new();
    let mut current = vec![fives[0].clone()];
    fn extend(
        m: usize,
        fives: &[KSubset],
        from: usize,
        current: &mut Vec<KSubset>,
        out: &mut Vec<Vec<KSubset>>,
        max: usize,
    ) {
        if out.len() >= max {
            return;
        }
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for (i, f) in fives.iter().enumerate().skip(from) {
            if current.iter().all(|c| c.intersection_size(f) <= 2) {
                current.push(f.clone());
                extend(m, fives, i + 1, current, out, max);
                current.pop();
                if out.len() >= max {
                    return;
                }
            }
        }
    }
    extend(m, &fives, 1, &mut current, &mut out, MAX_FAMILIES);
    out
}
