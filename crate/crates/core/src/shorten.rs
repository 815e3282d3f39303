//! Shortening: optimal `(n, 4, 3)_q` codes for `n ≡ 4 (mod 6)` from optimal
//! codes of length `n + 1`.

use crate::bounds::{u_q, upper_bound};
use crate::code::ConstantWeightCode;
use crate::error::{invalid, Error, Result};

/// Number of codewords nonzero at each coordinate, indexed from 0.
pub fn coordinate_usage(code: &ConstantWeightCode) -> Vec<usize> {
    let mut usage = vec![0; code.n];
    for word in &code.words {
        for &i in word.support0() {
            usage[i] += 1;
        }
    }
    usage
}

/// Drops every codeword nonzero at the 1-based coordinate `i`, then deletes
/// `i` from the rest.
pub fn shorten_at(code: &ConstantWeightCode, i: usize) -> Result<ConstantWeightCode> {
    if i == 0 || i > code.n {
        return invalid(format!("coordinate {i} is outside [1, {}]", code.n));
    }
    let words: Vec<_> = code
        .words
        .iter()
        .filter(|u| u.get(i) == 0)
        .map(|u| u.without_coordinate(i))
        .collect();
    if words.is_empty() {
        return invalid(format!("shortening at coordinate {i} leaves no codewords"));
    }
    Ok(ConstantWeightCode::new(code.n - 1, code.q, code.w, code.d, words))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shortened {
    pub code: ConstantWeightCode,
    /// 1-based coordinate that was removed.
    pub coordinate: usize,
    pub removed: usize,
    /// Largest removal that still leaves `U_q(n)` codewords.
    pub budget: usize,
}

/// The allowed loss when going from length `n + 1` to `n`.
pub fn removal_budget(n: usize, q: u32) -> usize {
    let half = (q as usize - 1) * n / 2;
    if q % 3 == 1 {
        half
    } else {
        half - 1
    }
}

/// Shortens an optimal `(n+1, 4, 3)_q` code of size `U_q(n+1)` at its least
/// used coordinate (smallest index on ties). The result is not trimmed.
pub fn shorten_optimal(code: &ConstantWeightCode) -> Result<Shortened> {
    let n = code.n.saturating_sub(1);
    if n % 6 != 4 {
        return invalid(format!("shortening needs input length ≡ 5 (mod 6), got {}", code.n));
    }
    if code.q < 2 || code.q as usize > n {
        return invalid(format!("shortening needs 2 <= q <= {n}, got q = {}", code.q));
    }
    if code.w != 3 || code.d != 4 {
        return invalid(format!("expected w = 3 and d = 4, got w = {} and d = {}", code.w, code.d));
    }
    let report = code.verify();
    if let Some(v) = report.violation {
        return invalid(format!("input code fails verification: {v}"));
    }
    let target_in = u_q(code.n as u64, code.q as u64)? as usize;
    if code.len() != target_in {
        return invalid(format!(
            "input has {} codewords, an optimal code has U_q(n+1) = {target_in}",
            code.len()
        ));
    }

    let usage = coordinate_usage(code);
    let (coordinate, removed) = usage
        .iter()
        .enumerate()
        .min_by_key(|&(i, &u)| (u, i))
        .map(|(i, &u)| (i + 1, u))
        .expect("length is at least 5");
    let pigeonhole = 3 * code.len() / code.n;
    let budget = removal_budget(n, code.q);
    if removed > pigeonhole || removed > budget {
        return Err(Error::Internal(format!(
            "least used coordinate carries {removed} codewords, pigeonhole {pigeonhole}, budget {budget}"
        )));
    }

    let shortened = shorten_at(code, coordinate)?;
    let lower = u_q(n as u64, code.q as u64)? as usize;
    let upper = upper_bound(n as u64, code.q as u64)? as usize;
    if shortened.len() < lower || shortened.len() > upper {
        return Err(Error::Internal(format!(
            "shortened code has {} codewords, outside [{lower}, {upper}]",
            shortened.len()
        )));
    }
    Ok(Shortened { code: shortened, coordinate, removed, budget })
}
