//! Line-oriented poset files.
//!
//! ```text
//! poset two_chain 2
//! cover 0 1
//! ```
//!
//! Blank lines and `#` comments are ignored.

use anyhow::{bail, Context, Result};
use effdom_core::domains::FinitePoset;

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().context("empty poset file")?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [kw, name, size] = fields[..] else { bail!("line {line}: expected `poset <name> <size>`") };
    if kw != "poset" {
        bail!("line {line}: expected `poset <name> <size>`");
    }
    let size: usize = size.parse().with_context(|| format!("line {line}: bad size {size:?}"))?;
    let mut covers = Vec::new();
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let ["cover", i, j] = fields[..] else { bail!("line {line}: expected `cover <i> <j>`") };
        let parse = |s: &str| s.parse::<usize>().with_context(|| format!("line {line}: bad index {s:?}"));
        covers.push((parse(i)?, parse(j)?));
    }
    Ok(FinitePoset::from_covers(name, size, &covers)?)
}
