//! Codes of size `C(q, 3)` from the matrix `M(n)` of all weight-3 binary
//! rows, filled column by column with a sequence.

use std::fmt;

use crate::bounds::binomial;
use crate::code::{Codeword, ConstantWeightCode, Symbol};
use crate::error::{invalid, Error, Result};
use crate::lex::{subsets, KSubset};

/// `M(n)` or a filled `M(n, s)`. Row `r` has support `unrank(n, 3, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillMatrix {
    n: usize,
    q: Option<Symbol>,
    rows: Vec<Vec<Symbol>>,
}

impl FillMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Alphabet size, `None` while unfilled.
    pub fn q(&self) -> Option<Symbol> {
        self.q
    }

    pub fn is_filled(&self) -> bool {
        self.q.is_some()
    }

    pub fn rows(&self) -> &[Vec<Symbol>] {
        &self.rows
    }

    /// Column `j` (1-based) from top to bottom.
    pub fn column(&self, j: usize) -> Vec<Symbol> {
        self.rows.iter().map(|r| r[j - 1]).collect()
    }
}

impl fmt::Display for FillMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{}", join(row))?;
        }
        Ok(())
    }
}

fn join(values: &[Symbol]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    /// Entries in `[0, q-2]`.
    X,
    /// Entries in `[1, q-1]`; the only kind that can fill a matrix.
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillSequence {
    q: Symbol,
    kind: SequenceKind,
    entries: Vec<Symbol>,
}

impl FillSequence {
    /// A fill sequence for `M(q)`: `C(q-1, 2)` entries in `[1, q-1]`.
    pub fn new(q: Symbol, entries: Vec<Symbol>) -> Result<Self> {
        Self::with_kind(q, SequenceKind::Y, entries)
    }

    pub fn with_kind(q: Symbol, kind: SequenceKind, entries: Vec<Symbol>) -> Result<Self> {
        if q < 3 {
            return invalid(format!("sequences need q >= 3, got {q}"));
        }
        let len = sequence_len(q);
        if entries.len() != len {
            return invalid(format!("a sequence for q = {q} has {len} entries, got {}", entries.len()));
        }
        let (lo, hi) = match kind {
            SequenceKind::X => (0, q - 2),
            SequenceKind::Y => (1, q - 1),
        };
        if let Some(pos) = entries.iter().position(|&e| e < lo || e > hi) {
            return invalid(format!("entry {} is {}, outside [{lo}, {hi}]", pos + 1, entries[pos]));
        }
        Ok(FillSequence { q, kind, entries })
    }

    pub fn q(&self) -> Symbol {
        self.q
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Space-separated, or a digit string when `compact` (only for `q <= 10`).
    pub fn render(&self, compact: bool) -> Result<String> {
        if !compact {
            return Ok(join(&self.entries));
        }
        if self.q > 10 {
            return invalid(format!("compact form is ambiguous for q = {} > 10", self.q));
        }
        Ok(self.entries.iter().map(|e| char::from(b'0' + *e as u8)).collect())
    }
}

impl fmt::Display for FillSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.entries))
    }
}

fn sequence_len(q: Symbol) -> usize {
    binomial(q as u64 - 1, 2) as usize
}

/// Reads a y-type sequence for `q`. Whitespace-separated integers; a single
/// digit string is read one digit per entry when `q <= 10`.
pub fn parse_sequence(q: Symbol, text: &str) -> Result<FillSequence> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let compact = tokens.len() == 1 && q <= 10;
    let entries = if compact {
        tokens[0]
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::InvalidInput(format!("'{c}' is not a digit"))))
            .collect::<Result<Vec<_>>>()?
    } else {
        tokens
            .iter()
            .map(|t| t.parse::<Symbol>().map_err(|_| Error::InvalidInput(format!("'{t}' is not an entry"))))
            .collect::<Result<Vec<_>>>()?
    };
    FillSequence::new(q, entries)
}

pub fn build_m(n: usize) -> Result<FillMatrix> {
    if n < 3 {
        return invalid(format!("M(n) needs n >= 3, got {n}"));
    }
    let rows = subsets(n, 3)
        .map(|t| {
            let mut row = vec![0; n];
            for &i in t.elements() {
                row[i - 1] = 1;
            }
            row
        })
        .collect();
    Ok(FillMatrix { n, q: None, rows })
}

/// `M(n, s)`: the `t`-th nonzero entry of every column becomes `s_t`.
pub fn fill(m: &FillMatrix, s: &FillSequence) -> Result<FillMatrix> {
    if m.is_filled() {
        return invalid("matrix is already filled");
    }
    if s.kind != SequenceKind::Y {
        return invalid("only sequences with nonzero entries can fill M(n)");
    }
    let per_column = binomial(m.n as u64 - 1, 2) as usize;
    if s.len() != per_column {
        return invalid(format!(
            "M({}) needs a sequence of length {per_column}, got {}",
            m.n,
            s.len()
        ));
    }
    let mut rows = m.rows.clone();
    let mut next = vec![0usize; m.n];
    for row in &mut rows {
        for (j, entry) in row.iter_mut().enumerate() {
            if *entry != 0 {
                *entry = s.entries[next[j]];
                next[j] += 1;
            }
        }
    }
    Ok(FillMatrix { n: m.n, q: Some(s.q), rows })
}

/// `x(q)` from the closed form: segment `t = q-2, ..., 1` has entries
/// `(2(q-2-t) + i - 1) mod (q-1)` for `i = 1..=t`. Cross-checked against
/// [`gen_x_recursive`].
pub fn gen_x(q: Symbol) -> Result<FillSequence> {
    if q < 3 {
        return invalid(format!("x(q) needs q >= 3, got {q}"));
    }
    let mut entries = Vec::with_capacity(sequence_len(q));
    for t in (1..=q - 2).rev() {
        for i in 1..=t {
            entries.push((2 * (q - 2 - t) + i - 1) % (q - 1));
        }
    }
    if entries != gen_x_recursive(q)? {
        return Err(Error::Internal(format!("closed and recursive x({q}) disagree")));
    }
    FillSequence::with_kind(q, SequenceKind::X, entries)
}

/// `x(q)` from `x^(q-2) = (0, ..., q-3)` and
/// `x^(t) = ((x^(t+1) + 2) mod (q-1))` truncated to its first `t` entries.
pub fn gen_x_recursive(q: Symbol) -> Result<Vec<Symbol>> {
    if q < 3 {
        return invalid(format!("x(q) needs q >= 3, got {q}"));
    }
    let mut segment: Vec<Symbol> = (0..q - 2).collect();
    let mut out = segment.clone();
    for t in (1..q - 2).rev() {
        segment = segment[..t as usize].iter().map(|v| (v + 2) % (q - 1)).collect();
        out.extend(&segment);
    }
    Ok(out)
}

/// `y(q) = x(q) + 1`.
pub fn gen_y(q: Symbol) -> Result<FillSequence> {
    let x = gen_x(q)?;
    FillSequence::new(q, x.entries.iter().map(|e| e + 1).collect())
}

/// The rows of a filled matrix as a code. The declared distance is the
/// measured minimum distance, or `2w` when there is only one row.
pub fn code_of(m: &FillMatrix) -> Result<ConstantWeightCode> {
    let Some(q) = m.q else {
        return invalid("code_of needs a filled matrix");
    };
    let words: Vec<Codeword> = m.rows.iter().map(|r| Codeword::new(r.clone())).collect();
    let mut code = ConstantWeightCode::new(m.n, q, 3, 6, words);
    if let Some(d) = code.min_distance() {
        code.d = d;
    }
    Ok(code)
}

/// Outcome of [`is_special`]. The counterexample is the smallest pair of
/// rows (1-based) at distance below four.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCheck {
    pub special: bool,
    pub counterexample: Option<(usize, usize)>,
}

/// Whether `M(q, s)` has minimum distance 4: every two rows sharing two
/// support coordinates must differ in both.
pub fn is_special(s: &FillSequence) -> Result<SpecialCheck> {
    let m = fill(&build_m(s.q as usize)?, s)?;
    let counterexample = shared_pair_violations(&m).min();
    Ok(SpecialCheck { special: counterexample.is_none(), counterexample })
}

// Rows through a pair {a, b} meet exactly in {a, b}, so grouping by pair
// covers every row pair with two common coordinates once.
fn shared_pair_violations(m: &FillMatrix) -> impl Iterator<Item = (usize, usize)> + '_ {
    let n = m.n;
    let mut through = vec![Vec::new(); n * n];
    for (r, row) in m.rows.iter().enumerate() {
        let support: Vec<usize> = (0..n).filter(|&j| row[j] != 0).collect();
        for (i, &a) in support.iter().enumerate() {
            for &b in &support[i + 1..] {
                through[a * n + b].push(r);
            }
        }
    }
    through.into_iter().enumerate().flat_map(move |(key, rows)| {
        let (a, b) = (key / n, key % n);
        let mut bad = Vec::new();
        for (i, &u) in rows.iter().enumerate() {
            for &v in &rows[i + 1..] {
                let (ru, rv) = (&m.rows[u], &m.rows[v]);
                if ru[a] == rv[a] || ru[b] == rv[b] {
                    bad.push((u + 1, v + 1));
                }
            }
        }
        bad
    })
}

/// A matrix with one column moved to the front, rows kept as they were.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fronted {
    /// The original index of the fronted column.
    pub column: usize,
    pub rows: Vec<Vec<Symbol>>,
}

impl Fronted {
    /// Row supports in the new column order.
    pub fn supports(&self) -> Vec<KSubset> {
        self.rows
            .iter()
            .map(|row| {
                let e = (1..=row.len()).filter(|&j| row[j - 1] != 0).collect();
                KSubset::from_sorted_unchecked(row.len(), e)
            })
            .collect()
    }
}

/// `A_j`: columns in the order `j, 1, ..., j-1, j+1, ..., n`.
pub fn move_column_front(m: &FillMatrix, j: usize) -> Result<Fronted> {
    if j == 0 || j > m.n {
        return invalid(format!("column {j} is outside [1, {}]", m.n));
    }
    let rows = m
        .rows
        .iter()
        .map(|row| {
            let mut out = Vec::with_capacity(row.len());
            out.push(row[j - 1]);
            out.extend(row.iter().enumerate().filter(|&(i, _)| i != j - 1).map(|(_, &v)| v));
            out
        })
        .collect();
    Ok(Fronted { column: j, rows })
}

/// `A'_j`: while some row with a zero first entry precedes a row with a
/// nonzero one, take the first zero row `s` and the first nonzero row `t`
/// after it and move `t` to just before `s`.
pub fn reorder(a: &Fronted) -> Result<Fronted> {
    let Some(width) = a.rows.first().map(Vec::len) else {
        return invalid("reorder needs a nonempty matrix");
    };
    if width < 3 {
        return invalid(format!("reorder needs at least three columns, got {width}"));
    }
    let expected = binomial(width as u64 - 1, 2) as usize;
    let nonzero = a.rows.iter().filter(|r| r[0] != 0).count();
    if nonzero != expected {
        return invalid(format!("first column has {nonzero} nonzero entries, expected {expected}"));
    }

    let mut rows = a.rows.clone();
    let cap = rows.len() * rows.len();
    for _ in 0..=cap {
        let Some(s) = rows.iter().position(|r| r[0] == 0) else {
            return Ok(Fronted { column: a.column, rows });
        };
        let Some(t) = rows[s + 1..].iter().position(|r| r[0] != 0).map(|k| k + s + 1) else {
            return Ok(Fronted { column: a.column, rows });
        };
        let row = rows.remove(t);
        rows.insert(s, row);
    }
    Err(Error::Internal(format!("reorder did not stop within {cap} moves")))
}

/// A pair of rows of `M(q)` meeting in `{1, x}` whose first entries agree
/// after the first column is filled with `y(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstColumnWitness {
    pub x: usize,
    pub rows: (usize, usize),
    pub value: Symbol,
}

/// Checks that rows of `M(q, y(q))` meeting in exactly `{1, x}` have
/// different first entries, for every `x` in `[2, q]`.
pub fn check_first_column(q: Symbol) -> Result<Option<FirstColumnWitness>> {
    let y = gen_y(q)?;
    let m = fill(&build_m(q as usize)?, &y)?;
    let n = m.n;
    for x in 2..=n {
        let through: Vec<usize> = (0..m.rows.len()).filter(|&r| m.rows[r][0] != 0 && m.rows[r][x - 1] != 0).collect();
        for (i, &u) in through.iter().enumerate() {
            for &v in &through[i + 1..] {
                if m.rows[u][0] == m.rows[v][0] {
                    return Ok(Some(FirstColumnWitness { x, rows: (u + 1, v + 1), value: m.rows[u][0] }));
                }
            }
        }
    }
    Ok(None)
}
