//! Plain-text Cayley tables.
//!
//! ```text
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! #name 1 r
//! #name 2 r2
//! ```
//! Line 1 is the order `n`, the next `n` lines hold the 0-based table rows and
//! optional trailing `#name <index> <label>` lines attach display labels.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyText {
    pub table: Vec<Vec<usize>>,
    pub labels: Option<Vec<String>>,
}

pub fn parse_cayley_text(text: &str) -> Result<CayleyText> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or_else(|| Error::MalformedTable("empty input".into()))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::MalformedTable(format!("line 1: expected the order, found `{}`", first.trim())))?;
    let mut table = Vec::with_capacity(n);
    let mut labels: Option<Vec<String>> = None;
    for (lineno, line) in lines {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("#name") {
            let mut parts = rest.split_whitespace();
            let idx: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .filter(|&i| i < n)
                .ok_or_else(|| Error::MalformedTable(format!("line {}: bad label index", lineno + 1)))?;
            let label = parts.collect::<Vec<_>>().join(" ");
            if label.is_empty() {
                return Err(Error::MalformedTable(format!("line {}: empty label", lineno + 1)));
            }
            labels.get_or_insert_with(|| (0..n).map(|i| i.to_string()).collect())[idx] = label;
            continue;
        }
        if table.len() == n {
            return Err(Error::MalformedTable(format!("line {}: more than {n} rows", lineno + 1)));
        }
        let row: Result<Vec<usize>> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::MalformedTable(format!("line {}: bad entry `{t}`", lineno + 1)))
            })
            .collect();
        table.push(row?);
    }
    if table.len() != n {
        return Err(Error::MalformedTable(format!("expected {n} rows, found {}", table.len())));
    }
    Ok(CayleyText { table, labels })
}

/// Renders a group back into the text format.
pub fn to_cayley_text(g: &super::Group) -> String {
    let mut out = format!("{}\n", g.order());
    for a in g.elements() {
        let row: Vec<String> = g.elements().map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(labels) = g.labels() {
        for (i, l) in labels.iter().enumerate() {
            out.push_str(&format!("#name {i} {l}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rows_and_labels() {
        let t = parse_cayley_text("2\n0 1\n1 0\n#name 1 s\n").unwrap();
        assert_eq!(t.table, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(t.labels.unwrap(), vec!["0".to_string(), "s".to_string()]);
    }

    #[test]
    fn rejects_short_tables() {
        assert!(matches!(parse_cayley_text("3\n0 1 2\n"), Err(Error::MalformedTable(_))));
        assert!(matches!(parse_cayley_text("x\n"), Err(Error::MalformedTable(_))));
    }
}
