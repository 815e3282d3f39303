//! Exact `A_q(n, 4, 3)` for small parameters by maximum-clique search.
//!
//! Vertices are all weight-3 words of length `n` over `Z_q`, ordered by the
//! rank of their support and then by their nonzero values. Two words are
//! adjacent when their distance is at least four, so cliques are codes.
//!
//! Branch and bound prunes with the minimum of three bounds on the clique
//! that can still be added from the candidate set `P`:
//!
//! * greedy colouring of `P` (each colour class is an independent set);
//! * distinct supports in `P` (a support carries at most one codeword);
//! * stars: words sharing a nonzero value at a coordinate have pairwise
//!   disjoint remaining supports, so each `(coordinate, value)` star holds at
//!   most `⌊(n-1)/2⌋` words, minus those already chosen; every word lies in
//!   three stars.

use std::time::{Duration, Instant};

use crate::bounds::binomial;
use crate::code::{Codeword, ConstantWeightCode, Symbol, Violation};
use crate::lex::enumerate;

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub n: usize,
    pub q: Symbol,
    /// Size of the largest code found; exact when `proved_optimal`.
    pub exact_size: usize,
    pub witness: ConstantWeightCode,
    pub proved_optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub time_limit: Duration,
    /// Force the word `(1,1,1,0,...,0)` into the clique. Every nonempty code
    /// maps onto one containing it under coordinate permutations and
    /// per-coordinate symbol relabelings, both of which preserve distances.
    pub fix_first_word: bool,
}

impl OracleOptions {
    pub fn with_limit(time_limit: Duration) -> Self {
        OracleOptions { time_limit, fix_first_word: true }
    }
}

/// Number of vertices in the compatibility graph.
pub fn vertex_count(n: usize, q: Symbol) -> u64 {
    binomial(n as u64, 3) * (q as u64 - 1).pow(3)
}

pub fn exact_a(n: usize, q: Symbol, time_limit: Duration) -> OracleResult {
    exact_a_with(n, q, OracleOptions::with_limit(time_limit))
}

pub fn exact_a_with(n: usize, q: Symbol, options: OracleOptions) -> OracleResult {
    assert!(n >= 3 && q >= 2, "oracle needs n >= 3 and q >= 2");
    let start = Instant::now();
    let graph = Graph::build(n, q);
    let deadline = start + options.time_limit;
    let mut clique = Vec::new();
    let mut cand = Bitset::full(graph.len());
    if options.fix_first_word {
        // vertex 0 is support {1,2,3} with values (1,1,1)
        clique.push(0);
        cand = cand.and(&graph.adj[0]);
    }
    let mut best = greedy(&graph, &clique, &cand);
    let mut nodes = 0;
    let mut timed_out = false;
    let root = graph.root_bound();

    // A clique meeting the root bound is optimal however it was found, so
    // the first pass may break value symmetry without being exhaustive.
    if best.len() < root && options.fix_first_word {
        let mut search = Search::new(&graph, root, deadline, true);
        search.run(&clique, &cand);
        nodes += search.nodes;
        timed_out = search.timed_out;
        if let Some(found) = search.found {
            best = found;
        }
    }
    // Exhaustive passes with decreasing goals: the first goal met, after
    // every larger goal was refuted, is the maximum.
    let mut goal = root;
    while !timed_out && goal > best.len() {
        let mut search = Search::new(&graph, goal, deadline, false);
        search.run(&clique, &cand);
        nodes += search.nodes;
        timed_out = search.timed_out;
        if let Some(found) = search.found {
            best = found;
            break;
        }
        goal -= 1;
    }
    let words = best.iter().map(|&v| graph.word(v)).collect();
    OracleResult {
        n,
        q,
        exact_size: best.len(),
        witness: ConstantWeightCode::new(n, q, 3, 4, words),
        proved_optimal: !timed_out,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Optimal,
    /// The code is valid but smaller than `A_q(n, 4, 3)`.
    NotOptimal { exact: usize },
    /// The search ran out of time; `best` is the largest code seen.
    Indeterminate { best: usize },
    /// The code is not a valid `(n, 4, 3)_q` code.
    Invalid(Violation),
}

impl Certification {
    pub fn is_optimal(&self) -> bool {
        matches!(self, Certification::Optimal)
    }
}

/// Decides whether `code` is an optimal `(n, 4, 3)_q` code.
pub fn certify_optimal(code: &ConstantWeightCode, time_limit: Duration) -> Certification {
    let as_43 = ConstantWeightCode { w: 3, d: 4, ..code.clone() };
    if let Some(v) = as_43.verify().violation {
        return Certification::Invalid(v);
    }
    let result = exact_a(code.n, code.q, time_limit);
    if result.exact_size > code.len() {
        // a strictly larger code is a proof on its own
        return Certification::NotOptimal { exact: result.exact_size };
    }
    if !result.proved_optimal {
        return Certification::Indeterminate { best: result.exact_size };
    }
    Certification::Optimal
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bitset {
    blocks: Vec<u64>,
}

impl Bitset {
    fn empty(len: usize) -> Self {
        Bitset { blocks: vec![0; len.div_ceil(64)] }
    }

    fn full(len: usize) -> Self {
        let mut b = Bitset::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.blocks[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.blocks[i / 64] & (1 << (i % 64)) != 0
    }

    fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    fn and(&self, other: &Bitset) -> Bitset {
        Bitset { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & b).collect() }
    }

    fn and_not_assign(&mut self, other: &Bitset) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    fn first(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(i, b)| i * 64 + b.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                (b != 0).then(|| {
                    let bit = b.trailing_zeros() as usize;
                    b &= b - 1;
                    i * 64 + bit
                })
            })
        })
    }
}

struct Vertex {
    support: [usize; 3],
    values: [Symbol; 3],
    support_id: usize,
    stars: [usize; 3],
}

struct Graph {
    n: usize,
    q: Symbol,
    vertices: Vec<Vertex>,
    adj: Vec<Bitset>,
    /// Vertices in each `(coordinate, value)` star.
    star_bits: Vec<Bitset>,
    star_count: usize,
    star_cap: u8,
    support_count: usize,
}

impl Graph {
    fn build(n: usize, q: Symbol) -> Self {
        let mut vertices = Vec::new();
        let values: Vec<[Symbol; 3]> = (1..q)
            .flat_map(|a| (1..q).flat_map(move |b| (1..q).map(move |c| [a, b, c])))
            .collect();
        let supports = enumerate(n, 3);
        for (support_id, s) in supports.iter().enumerate() {
            let e = s.elements();
            let support = [e[0] - 1, e[1] - 1, e[2] - 1];
            for v in &values {
                let stars = std::array::from_fn(|k| support[k] * (q as usize - 1) + (v[k] as usize - 1));
                debug_assert!(v.iter().all(|&x| x >= 1));
                vertices.push(Vertex { support, values: *v, support_id, stars });
            }
        }
        let len = vertices.len();
        let mut adj = vec![Bitset::empty(len); len];
        for i in 0..len {
            for j in i + 1..len {
                if compatible(&vertices[i], &vertices[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        let star_count = n * (q as usize - 1);
        let mut star_bits = vec![Bitset::empty(len); star_count];
        for (v, vx) in vertices.iter().enumerate() {
            for s in vx.stars {
                star_bits[s].insert(v);
            }
        }
        Graph {
            n,
            q,
            vertices,
            adj,
            star_bits,
            star_count,
            star_cap: ((n - 1) / 2) as u8,
            support_count: supports.len(),
        }
    }

    fn star(&self, coordinate: usize, value: Symbol) -> usize {
        coordinate * (self.q as usize - 1) + (value as usize - 1)
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }

    fn word(&self, v: usize) -> Codeword {
        let vx = &self.vertices[v];
        let mut s = vec![0; self.n];
        for k in 0..3 {
            s[vx.support[k]] = vx.values[k];
        }
        Codeword::new(s)
    }

    /// Bound on the whole graph; reaching it ends the search.
    fn root_bound(&self) -> usize {
        let star_total = self.star_count * self.star_cap as usize;
        (star_total / 3).min(self.support_count)
    }
}

fn compatible(u: &Vertex, v: &Vertex) -> bool {
    let mut common = 0;
    let mut differing = 0;
    for a in 0..3 {
        for b in 0..3 {
            if u.support[a] == v.support[b] {
                common += 1;
                if u.values[a] != v.values[b] {
                    differing += 1;
                }
            }
        }
    }
    // distance = 6 - 2*common + differing
    6 - 2 * common + differing >= 4
}

/// First-fit clique in vertex order, extending `start` from `cand`.
fn greedy(graph: &Graph, start: &[usize], cand: &Bitset) -> Vec<usize> {
    let mut clique = start.to_vec();
    let mut cand = cand.clone();
    while let Some(v) = cand.first() {
        clique.push(v);
        cand = cand.and(&graph.adj[v]);
    }
    clique
}

/// One depth-first pass looking for a clique of exactly `goal` vertices.
struct Search<'g> {
    graph: &'g Graph,
    goal: usize,
    found: Option<Vec<usize>>,
    star_used: Vec<u8>,
    /// Per coordinate, the largest value used so far. Present only when
    /// candidates introducing a value out of order are discarded.
    max_value: Option<Vec<Symbol>>,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
}

impl<'g> Search<'g> {
    fn new(graph: &'g Graph, goal: usize, deadline: Instant, break_values: bool) -> Self {
        Search {
            graph,
            goal,
            found: None,
            star_used: vec![0; graph.star_count],
            max_value: break_values.then(|| vec![0; graph.n]),
            nodes: 0,
            deadline,
            timed_out: false,
        }
    }

    fn run(&mut self, clique: &[usize], cand: &Bitset) {
        let mut clique = clique.to_vec();
        let mut undo = Vec::new();
        for &v in &clique {
            self.take(v, &mut undo);
        }
        self.expand(&mut clique, cand.clone());
    }

    fn done(&self) -> bool {
        self.timed_out || self.found.is_some()
    }

    fn take(&mut self, v: usize, undo: &mut Vec<(usize, Symbol)>) {
        let vx = &self.graph.vertices[v];
        for s in vx.stars {
            self.star_used[s] += 1;
        }
        if let Some(max) = self.max_value.as_mut() {
            for k in 0..3 {
                let c = vx.support[k];
                if vx.values[k] > max[c] {
                    undo.push((c, max[c]));
                    max[c] = vx.values[k];
                }
            }
        }
    }

    fn release(&mut self, v: usize, undo: &mut Vec<(usize, Symbol)>) {
        for s in self.graph.vertices[v].stars {
            self.star_used[s] -= 1;
        }
        if let Some(max) = self.max_value.as_mut() {
            for (c, old) in undo.drain(..) {
                max[c] = old;
            }
        }
    }

    /// Drops candidates that would use a value at some coordinate before
    /// every smaller value has appeared there.
    fn restrict_values(&self, cand: &mut Bitset) {
        if let Some(max) = &self.max_value {
            let g = self.graph;
            for (c, &m) in max.iter().enumerate() {
                for value in m + 2..g.q {
                    cand.and_not_assign(&g.star_bits[g.star(c, value)]);
                }
            }
        }
    }

    /// Star-capacity and support-count bound on what `cand` can add.
    fn structural_bound(&self, cand: &Bitset) -> usize {
        let g = self.graph;
        let mut counts = vec![0u32; g.star_count];
        let mut supports = 0;
        let mut last_support = usize::MAX;
        for v in cand.iter() {
            let vx = &g.vertices[v];
            for s in vx.stars {
                counts[s] += 1;
            }
            // vertices are sorted by support, so distinct supports are runs
            if vx.support_id != last_support {
                supports += 1;
                last_support = vx.support_id;
            }
        }
        let star_sum: u32 = counts
            .iter()
            .zip(&self.star_used)
            .map(|(&c, &used)| c.min((g.star_cap - used) as u32))
            .sum();
        (star_sum as usize / 3).min(supports)
    }

    /// Greedy sequential colouring; vertices come out in nondecreasing
    /// colour order, and the colour of a vertex bounds the clique that can
    /// be built from it and the vertices before it.
    fn colouring(&self, cand: &Bitset) -> Vec<(usize, usize)> {
        let mut uncoloured = cand.clone();
        let mut out = Vec::new();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                uncoloured.remove(v);
                avail.and_not_assign(&self.graph.adj[v]);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: Bitset) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(256) && Instant::now() > self.deadline {
            self.timed_out = true;
        }
        if self.done() {
            return;
        }
        if clique.len() >= self.goal {
            self.found = Some(clique.clone());
            return;
        }
        let need = self.goal - clique.len();
        if self.structural_bound(&cand) < need {
            return;
        }
        let order = self.colouring(&cand);
        // bounds use every candidate; only branching honours the value order
        let mut allowed = cand.clone();
        self.restrict_values(&mut allowed);
        let mut undo = Vec::new();
        for &(v, colour) in order.iter().rev() {
            if self.done() || colour < need {
                return;
            }
            if !allowed.contains(v) {
                continue;
            }
            clique.push(v);
            self.take(v, &mut undo);
            let next = cand.and(&self.graph.adj[v]);
            self.expand(clique, next);
            self.release(v, &mut undo);
            clique.pop();
            cand.remove(v);
        }
    }
}
