//! `largeset v1` text format.
//!
//! ```text
//! largeset 1
//! n=5 t=2 k=3 K=3,5
//! design 1
//! block 1 2 3 4 5
//! design 2
//! block 1 2 3 4 5
//! design 3
//! block 1 2 3 4 5
//! ```

use std::fmt::Write as _;

use super::{Design, LargeSet};
use crate::error::{Error, Result};
use crate::format::{parse_header, parse_num};
use crate::lex::KSubset;

pub const MAGIC: &str = "largeset 1";

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

pub fn write_large_set(ls: &LargeSet) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    let _ = writeln!(out, "n={} t=2 k=3 K=3,5", ls.n);
    for (r, design) in ls.designs.iter().enumerate() {
        let _ = writeln!(out, "design {}", r + 1);
        for block in &design.blocks {
            out.push_str("block");
            for p in block.elements() {
                let _ = write!(out, " {p}");
            }
            out.push('\n');
        }
    }
    out
}

/// Parses the format; design/block structure is checked, design properties
/// are left to [`super::verify_large_set`].
pub fn read_large_set(text: &str) -> Result<LargeSet> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
    match lines.next() {
        Some((_, MAGIC)) => {}
        Some((no, other)) => return parse_err(no, format!("expected `{MAGIC}`, found `{other}`")),
        None => return parse_err(1, "empty input"),
    }
    let Some((no, header)) = lines.next() else {
        return parse_err(2, "missing parameter line");
    };
    let [n, t, k, kset] = parse_header(header, ["n", "t", "k", "K"], no)?;
    let n: usize = parse_num(&n, no)?;
    if t != "2" || k != "3" || kset != "3,5" {
        return parse_err(no, "only t=2 k=3 K=3,5 is supported");
    }

    let mut designs: Vec<Design> = Vec::new();
    for (no, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("design") => {
                let r: usize = match tokens.next() {
                    Some(tok) => parse_num(tok, no)?,
                    None => return parse_err(no, "`design` needs an index"),
                };
                if tokens.next().is_some() {
                    return parse_err(no, "trailing tokens after design index");
                }
                if r != designs.len() + 1 {
                    return parse_err(no, format!("expected design {}, found design {r}", designs.len() + 1));
                }
                designs.push(Design::new(n, Vec::new()));
            }
            Some("block") => {
                let points = tokens.map(|tok| parse_num::<usize>(tok, no)).collect::<Result<Vec<_>>>()?;
                if points.windows(2).any(|w| w[0] >= w[1]) {
                    return parse_err(no, "block points must be strictly ascending");
                }
                let block = KSubset::new(n, points).or_else(|e| parse_err(no, e.to_string()))?;
                match designs.last_mut() {
                    Some(d) => d.blocks.push(block),
                    None => return parse_err(no, "block before the first design"),
                }
            }
            Some(other) => return parse_err(no, format!("unknown record `{other}`")),
            None => unreachable!("blank lines are skipped"),
        }
    }
    Ok(LargeSet::new(n, designs))
}
