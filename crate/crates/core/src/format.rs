//! `cwcode v1`: the line-oriented text format for codes.
//!
//! ```text
//! cwcode 1
//! n=5 q=5 w=3 d=4
//! 1 1 1 0 0
//! # comments are allowed after the header
//! 2 2 0 1 0
//! ```

use std::fmt::Write as _;

use crate::code::{Codeword, ConstantWeightCode, Symbol};
use crate::error::{Error, Result};

pub const MAGIC: &str = "cwcode 1";

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

pub fn write_code(code: &ConstantWeightCode) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    let _ = writeln!(out, "n={} q={} w={} d={}", code.n, code.q, code.w, code.d);
    for word in &code.words {
        let mut first = true;
        for s in word.symbols() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{s}");
        }
        out.push('\n');
    }
    out
}

/// Parses `key=value` pairs in a fixed key order separated by single spaces.
pub(crate) fn parse_header<const N: usize>(line: &str, keys: [&str; N], lineno: usize) -> Result<[String; N]> {
    let fields: Vec<&str> = line.split(' ').collect();
    if fields.len() != N {
        return parse_err(lineno, format!("expected {N} space-separated fields, found {}", fields.len()));
    }
    let mut out: [String; N] = std::array::from_fn(|_| String::new());
    for (i, (field, key)) in fields.iter().zip(keys).enumerate() {
        match field.split_once('=') {
            Some((k, v)) if k == key && !v.is_empty() => out[i] = v.to_string(),
            _ => return parse_err(lineno, format!("expected `{key}=<value>`, found `{field}`")),
        }
    }
    Ok(out)
}

pub(crate) fn parse_num<T: std::str::FromStr>(s: &str, lineno: usize) -> Result<T> {
    s.parse().or_else(|_| parse_err(lineno, format!("`{s}` is not a valid number")))
}

/// Parses a `cwcode v1` document. Structural errors are rejected; code
/// invariants (weight, distance) are left to [`ConstantWeightCode::verify`].
pub fn read_code(text: &str) -> Result<ConstantWeightCode> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
    match lines.next() {
        Some((_, MAGIC)) => {}
        Some((no, other)) => return parse_err(no, format!("expected `{MAGIC}`, found `{other}`")),
        None => return parse_err(1, "empty input"),
    }
    let Some((no, header)) = lines.next() else {
        return parse_err(2, "missing parameter line");
    };
    let [n, q, w, d] = parse_header(header, ["n", "q", "w", "d"], no)?;
    let n: usize = parse_num(&n, no)?;
    let q: Symbol = parse_num(&q, no)?;
    let w: usize = parse_num(&w, no)?;
    let d: usize = parse_num(&d, no)?;

    let mut words = Vec::new();
    for (no, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let symbols = line
            .split_whitespace()
            .map(|tok| parse_num::<Symbol>(tok, no))
            .collect::<Result<Vec<_>>>()?;
        if symbols.len() != n {
            return parse_err(no, format!("expected {n} symbols, found {}", symbols.len()));
        }
        words.push(Codeword::new(symbols));
    }
    Ok(ConstantWeightCode::new(n, q, w, d, words))
}
