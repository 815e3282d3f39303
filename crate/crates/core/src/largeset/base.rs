//! Optimal `(5, 4, 3)_{q'}` codes for `q' ∈ {2, 3, 4}`.
//!
//! These are the witnesses the clique oracle returns for `n = 5`, frozen
//! here; a test re-derives and certifies them.

use crate::code::{Codeword, Symbol};
use crate::error::{invalid, Result};
use crate::lex::KSubset;

pub(crate) const BASE_2: [[Symbol; 5]; 2] = [[1, 1, 1, 0, 0], [1, 0, 0, 1, 1]];

pub(crate) const BASE_3: [[Symbol; 5]; 5] = [
    [1, 1, 1, 0, 0],
    [0, 0, 1, 2, 2],
    [0, 1, 0, 1, 1],
    [2, 0, 2, 0, 1],
    [2, 2, 0, 2, 0],
];

pub(crate) const BASE_4: [[Symbol; 5]; 10] = [
    [1, 1, 1, 0, 0],
    [2, 2, 0, 1, 0],
    [3, 3, 0, 0, 1],
    [3, 0, 2, 2, 0],
    [2, 0, 3, 0, 2],
    [1, 0, 0, 3, 3],
    [0, 3, 3, 3, 0],
    [0, 2, 2, 0, 3],
    [0, 1, 0, 2, 2],
    [0, 0, 1, 1, 1],
];

pub(crate) fn canonical(q_prime: Symbol) -> Option<&'static [[Symbol; 5]]> {
    match q_prime {
        2 => Some(&BASE_2),
        3 => Some(&BASE_3),
        4 => Some(&BASE_4),
        _ => None,
    }
}

/// An optimal `(5, 4, 3)_{q'}` code placed on the five coordinates `coords`
/// of length-`coords.n()` words, with its nonzero symbols `1..q'` mapped in
/// ascending order onto the nonzero symbols of `alphabet`.
pub fn base_code(q_prime: Symbol, alphabet: &[Symbol], coords: &KSubset) -> Result<Vec<Codeword>> {
    let Some(words) = canonical(q_prime) else {
        return invalid(format!("no base code for q' = {q_prime}; expected 2, 3 or 4"));
    };
    let mut symbols = alphabet.to_vec();
    symbols.sort_unstable();
    symbols.dedup();
    if symbols.len() != alphabet.len() || symbols.len() != q_prime as usize || symbols[0] != 0 {
        return invalid(format!(
            "alphabet {alphabet:?} must hold 0 and {} distinct nonzero symbols",
            q_prime - 1
        ));
    }
    if coords.k() != 5 {
        return invalid(format!("base code needs 5 coordinates, got {coords}"));
    }
    let n = coords.n();
    Ok(words
        .iter()
        .map(|w| {
            let mut s = vec![0; n];
            for (&c, &v) in coords.elements().iter().zip(w) {
                s[c - 1] = symbols[v as usize];
            }
            Codeword::new(s)
        })
        .collect())
}
