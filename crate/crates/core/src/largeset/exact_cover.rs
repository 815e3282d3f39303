//! Dancing-links exact cover (Algorithm X) with minimum-remaining-values
//! item selection and a wall-clock budget.

use std::time::{Duration, Instant};

pub(crate) struct ExactCover {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    // header index for each node; headers point to themselves
    column: Vec<usize>,
    option_of: Vec<usize>,
    size: Vec<usize>,
    items: usize,
}

#[derive(Debug)]
pub(crate) enum CoverOutcome {
    Solved(Vec<usize>),
    Exhausted,
    TimedOut,
}

pub(crate) struct SearchStats {
    pub nodes: u64,
}

impl ExactCover {
    /// `items` primary items numbered `0..items`.
    pub fn new(items: usize) -> Self {
        let headers = items + 1;
        let mut ec = ExactCover {
            left: Vec::with_capacity(headers * 8),
            right: Vec::with_capacity(headers * 8),
            up: Vec::with_capacity(headers * 8),
            down: Vec::with_capacity(headers * 8),
            column: Vec::with_capacity(headers * 8),
            option_of: Vec::with_capacity(headers * 8),
            size: vec![0; headers],
            items,
        };
        for h in 0..headers {
            ec.left.push(if h == 0 { items } else { h - 1 });
            ec.right.push(if h == items { 0 } else { h + 1 });
            ec.up.push(h);
            ec.down.push(h);
            ec.column.push(h);
            ec.option_of.push(usize::MAX);
        }
        ec
    }

    /// Adds an option covering the given items; returns nothing, options are
    /// identified by insertion order.
    pub fn add_option(&mut self, option: usize, items: &[usize]) {
        let mut first: Option<usize> = None;
        for &item in items {
            debug_assert!(item < self.items);
            let header = item + 1;
            let node = self.left.len();
            let above = self.up[header];
            self.up.push(above);
            self.down.push(header);
            self.down[above] = node;
            self.up[header] = node;
            self.column.push(header);
            self.option_of.push(option);
            self.size[header] += 1;
            match first {
                None => {
                    self.left.push(node);
                    self.right.push(node);
                    first = Some(node);
                }
                Some(f) => {
                    let last = self.left[f];
                    self.left.push(last);
                    self.right.push(f);
                    self.right[last] = node;
                    self.left[f] = node;
                }
            }
        }
    }

    fn cover(&mut self, header: usize) {
        let (l, r) = (self.left[header], self.right[header]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[header];
        while i != header {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.column[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, header: usize) {
        let mut i = self.up[header];
        while i != header {
            let mut j = self.left[i];
            while j != i {
                let c = self.column[j];
                self.size[c] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[header], self.right[header]);
        self.right[l] = header;
        self.left[r] = header;
    }

    /// Depth-first search for one exact cover. Returns the chosen option ids.
    pub fn solve(&mut self, time_limit: Duration, stats: &mut SearchStats) -> CoverOutcome {
        let start = Instant::now();
        let mut chosen: Vec<usize> = Vec::new();
        // choice stack: the row node currently tried at each level
        let mut stack: Vec<usize> = Vec::new();
        'descend: loop {
            if self.right[0] == 0 {
                return CoverOutcome::Solved(chosen);
            }
            stats.nodes += 1;
            if stats.nodes.is_multiple_of(4096) && start.elapsed() > time_limit {
                return CoverOutcome::TimedOut;
            }
            // MRV item
            let mut best = self.right[0];
            let mut c = self.right[best];
            while c != 0 {
                if self.size[c] < self.size[best] {
                    best = c;
                }
                c = self.right[c];
            }
            self.cover(best);
            let mut row = self.down[best];
            loop {
                if row != best {
                    let mut j = self.right[row];
                    while j != row {
                        self.cover(self.column[j]);
                        j = self.right[j];
                    }
                    chosen.push(self.option_of[row]);
                    stack.push(row);
                    continue 'descend;
                }
                // exhausted this item: undo and backtrack
                self.uncover(best);
                let Some(prev) = stack.pop() else {
                    return CoverOutcome::Exhausted;
                };
                chosen.pop();
                let mut j = self.left[prev];
                while j != prev {
                    self.uncover(self.column[j]);
                    j = self.left[j];
                }
                best = self.column[prev];
                row = self.down[prev];
            }
        }
    }
}
