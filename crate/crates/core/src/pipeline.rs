//! Choosing and running a construction for a cell `(n, q)`, and the table of
//! `A_q(n, 4, 3)` values built from constructions, the oracle and the bound.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::bounds::main_theorem_value;
use crate::code::{ConstantWeightCode, Symbol};
use crate::error::{invalid, Error, Result};
use crate::largeset::{construct_from_ls, ls_search, trivial_large_set, LargeSet, SearchConfig, SearchOutcome};
use crate::oracle::{exact_a, vertex_count};
use crate::sequence::{build_m, code_of, fill, gen_y};
use crate::shorten::shorten_optimal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Sequence,
    LargeSet,
    Shorten,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "sequence" => Ok(Method::Sequence),
            "largeset" => Ok(Method::LargeSet),
            "shorten" => Ok(Method::Shorten),
            _ => invalid(format!("unknown method '{s}'")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Sequence => "sequence",
            Method::LargeSet => "largeset",
            Method::Shorten => "shorten",
        })
    }
}

/// The construction that covers `(n, q)`, if any.
pub fn resolve(n: usize, q: Symbol, method: Method) -> Result<Method> {
    let sequence = n >= 3 && q as usize == n;
    let largeset = n % 6 == 5 && q >= 2 && (q as usize) < n;
    let shorten = n % 6 == 4 && q >= 2 && q as usize <= n;
    match method {
        Method::Auto if sequence => Ok(Method::Sequence),
        Method::Auto if largeset => Ok(Method::LargeSet),
        Method::Auto if shorten => Ok(Method::Shorten),
        Method::Auto => invalid(format!(
            "no construction here covers (n, q) = ({n}, {q}); cells with n ≡ 0, 1, 2, 3 (mod 6) and \
             q < n come from earlier published constructions that are not implemented (try the oracle)"
        )),
        Method::Sequence if !sequence => invalid(format!("sequence method needs n = q >= 3, got n = {n}, q = {q}")),
        Method::LargeSet if !largeset => invalid(format!(
            "largeset method needs n ≡ 5 (mod 6) and 2 <= q <= n - 1, got n = {n}, q = {q}"
        )),
        Method::Shorten if !shorten => invalid(format!(
            "shorten method needs n ≡ 4 (mod 6) and 2 <= q <= n, got n = {n}, q = {q}"
        )),
        m => Ok(m),
    }
}

/// Where the large set comes from when one is needed.
#[derive(Clone, Debug)]
pub enum LsSource {
    Given(LargeSet),
    /// Use the trivial set for five points, otherwise search.
    Search(SearchConfig),
    /// Use the trivial set for five points, otherwise fail.
    TrivialOnly,
}

impl LsSource {
    fn obtain(&self, n: usize) -> Result<LargeSet> {
        match self {
            LsSource::Given(ls) if ls.n == n => Ok(ls.clone()),
            _ if n == 5 => Ok(trivial_large_set()),
            LsSource::Given(ls) => invalid(format!("large set is on {} points, need {n}", ls.n)),
            LsSource::Search(config) => match ls_search(n, *config)? {
                SearchOutcome::Found { large_set, .. } => Ok(large_set),
                SearchOutcome::TimedOut { nodes, elapsed, .. } => invalid(format!(
                    "no large set on {n} points found in {:.1} s ({nodes} nodes); pass one with --ls",
                    elapsed.as_secs_f64()
                )),
                SearchOutcome::Exhausted { .. } => invalid(format!("search found no large set on {n} points")),
            },
            LsSource::TrivialOnly => invalid(format!("a large set on {n} points is required")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Constructed {
    pub code: ConstantWeightCode,
    pub method: Method,
    pub main_value: u64,
}

impl Constructed {
    pub fn optimal(&self) -> bool {
        self.code.len() as u64 == self.main_value
    }
}

/// Builds and verifies a code for `(n, q)`.
pub fn construct(n: usize, q: Symbol, method: Method, ls: &LsSource) -> Result<Constructed> {
    let method = resolve(n, q, method)?;
    let code = match method {
        Method::Sequence => {
            let code = code_of(&fill(&build_m(n)?, &gen_y(q)?)?)?;
            ConstantWeightCode { d: 4, ..code }
        }
        Method::LargeSet => construct_from_ls(&ls.obtain(n)?, q)?,
        Method::Shorten => shorten_optimal(&construct_from_ls(&ls.obtain(n + 1)?, q)?)?.code,
        Method::Auto => unreachable!("resolved above"),
    };
    if let Some(v) = code.verify().violation {
        return Err(Error::Internal(format!("{method} construction failed verification: {v}")));
    }
    let main_value = main_theorem_value(n as u64, q as u64)?;
    Ok(Constructed { code, method, main_value })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Constructed,
    Oracle,
    FormulaOnly,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellStatus::Constructed => "constructed",
            CellStatus::Oracle => "oracle",
            CellStatus::FormulaOnly => "formula-only",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub q: Symbol,
    pub value: u64,
    pub status: CellStatus,
}

#[derive(Clone, Copy, Debug)]
pub struct TableOptions {
    /// Cells whose graph has more vertices are not sent to the oracle.
    pub oracle_max_vertices: u64,
    pub oracle_time_limit: Duration,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { oracle_max_vertices: 3000, oracle_time_limit: Duration::from_secs(60) }
    }
}

/// One row per `3 <= n <= nmax`, `2 <= q <= qmax`. A constructed code or a
/// finished oracle run that disagrees with the bound is an error.
pub fn table(nmax: usize, qmax: Symbol, ls: Option<&LargeSet>, options: TableOptions) -> Result<Vec<TableRow>> {
    if nmax < 3 || qmax < 2 {
        return invalid(format!("table needs nmax >= 3 and qmax >= 2, got {nmax} and {qmax}"));
    }
    let source = ls.map_or(LsSource::TrivialOnly, |ls| LsSource::Given(ls.clone()));
    let mut rows = Vec::new();
    for n in 3..=nmax {
        for q in 2..=qmax {
            let value = main_theorem_value(n as u64, q as u64)?;
            let status = cell_status(n, q, value, &source, options)?;
            rows.push(TableRow { n, q, value, status });
        }
    }
    Ok(rows)
}

fn cell_status(n: usize, q: Symbol, value: u64, source: &LsSource, options: TableOptions) -> Result<CellStatus> {
    if let Ok(method) = resolve(n, q, Method::Auto) {
        let ls_points = match method {
            Method::LargeSet => Some(n),
            Method::Shorten => Some(n + 1),
            _ => None,
        };
        let available = match (ls_points, source) {
            (None, _) | (Some(5), _) => true,
            (Some(m), LsSource::Given(ls)) => ls.n == m,
            _ => false,
        };
        if available {
            let built = construct(n, q, method, source)?;
            if !built.optimal() {
                return Err(Error::Internal(format!(
                    "constructed {} codewords for ({n}, {q}), expected {value}",
                    built.code.len()
                )));
            }
            return Ok(CellStatus::Constructed);
        }
    }
    if vertex_count(n, q) <= options.oracle_max_vertices {
        let result = exact_a(n, q, options.oracle_time_limit);
        if result.proved_optimal {
            if result.exact_size as u64 != value {
                return Err(Error::Internal(format!(
                    "oracle finds A = {} for ({n}, {q}), bound gives {value}",
                    result.exact_size
                )));
            }
            return Ok(CellStatus::Oracle);
        }
    }
    Ok(CellStatus::FormulaOnly)
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("n,q,value,status\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.n, r.q, r.value, r.status));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::largeset::read_large_set;

    fn ls11() -> LargeSet {
        read_large_set(include_str!("../data/ls11.largeset")).unwrap()
    }

    #[test]
    fn auto_follows_congruence() {
        assert_eq!(resolve(5, 5, Method::Auto).unwrap(), Method::Sequence);
        assert_eq!(resolve(11, 11, Method::Auto).unwrap(), Method::Sequence);
        assert_eq!(resolve(11, 3, Method::Auto).unwrap(), Method::LargeSet);
        assert_eq!(resolve(10, 10, Method::Auto).unwrap(), Method::Sequence);
        assert_eq!(resolve(10, 7, Method::Auto).unwrap(), Method::Shorten);
        let err = resolve(7, 3, Method::Auto).unwrap_err().to_string();
        assert!(err.contains("earlier published constructions"), "{err}");
        assert!(resolve(5, 6, Method::Auto).is_err());
        assert!(resolve(5, 5, Method::LargeSet).is_err());
        assert!(resolve(6, 5, Method::Sequence).is_err());
        assert!(resolve(10, 11, Method::Shorten).is_err());
        assert_eq!(resolve(4, 4, Method::Shorten).unwrap(), Method::Shorten);
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::Auto, Method::Sequence, Method::LargeSet, Method::Shorten] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("lex".parse::<Method>().is_err());
    }

    #[test]
    fn construct_examples() {
        let c = construct(5, 5, Method::Sequence, &LsSource::TrivialOnly).unwrap();
        assert_eq!((c.code.len(), c.optimal()), (10, true));
        let c = construct(5, 3, Method::LargeSet, &LsSource::TrivialOnly).unwrap();
        assert_eq!((c.code.len(), c.optimal()), (5, true));
        let c = construct(10, 2, Method::Shorten, &LsSource::Given(ls11())).unwrap();
        assert_eq!((c.code.len(), c.optimal()), (13, true));
        assert!(construct(10, 2, Method::Shorten, &LsSource::TrivialOnly).is_err());
        assert!(construct(11, 2, Method::LargeSet, &LsSource::Given(trivial_large_set())).is_err());
    }

    #[test]
    fn small_table() {
        let rows = table(7, 7, None, TableOptions::default()).unwrap();
        assert_eq!(rows.len(), 30);
        for r in &rows {
            assert_eq!(r.value, main_theorem_value(r.n as u64, r.q as u64).unwrap());
            if r.n == r.q as usize {
                assert_eq!(r.status, CellStatus::Constructed);
            }
        }
        let csv = table_csv(&rows);
        assert!(csv.starts_with("n,q,value,status\n3,2,1,oracle\n"));
        assert!(csv.contains("\n5,3,5,constructed\n"));
        assert!(csv.contains("\n4,2,1,constructed\n"));
        assert!(csv.contains("\n7,7,35,constructed\n"));
        assert!(csv.contains("\n7,6,"));
        assert!(!csv.contains('"'));
    }

    #[test]
    fn table_uses_given_large_set() {
        let rows = table(11, 3, Some(&ls11()), TableOptions { oracle_max_vertices: 0, ..TableOptions::default() })
            .unwrap();
        let cell = |n, q| rows.iter().find(|r| r.n == n && r.q == q).unwrap().status;
        assert_eq!(cell(11, 2), CellStatus::Constructed);
        assert_eq!(cell(10, 3), CellStatus::Constructed);
        assert_eq!(cell(3, 3), CellStatus::Constructed);
        assert_eq!(cell(9, 2), CellStatus::FormulaOnly);
        assert!(table(2, 3, None, TableOptions::default()).is_err());
    }
}
