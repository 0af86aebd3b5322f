//! Family text format: a `ground=<n>` line, then one line per member with
//! space-separated 1-based elements. An empty line is an empty member; lines
//! starting with `#` are comments.

use super::SetFamily;
use crate::{Error, Result};

pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut ground: Option<usize> = None;
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let Some(n) = ground else {
            if line.is_empty() {
                continue;
            }
            let value = line
                .strip_prefix("ground=")
                .ok_or_else(|| err(format!("expected 'ground=<n>', found '{line}'")))?;
            ground = Some(
                value
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad ground size '{value}'")))?,
            );
            continue;
        };
        let set = line
            .split_whitespace()
            .map(|tok| {
                let e: usize = tok.parse().map_err(|_| err(format!("bad element '{tok}'")))?;
                if e == 0 || e > n {
                    return Err(err(format!("element {e} outside 1..={n}")));
                }
                Ok(e)
            })
            .collect::<Result<Vec<_>>>()?;
        sets.push(set);
    }
    let n = ground.ok_or(Error::Parse {
        line: 0,
        message: "missing 'ground=<n>' header".into(),
    })?;
    SetFamily::new(n, &sets)
}

pub fn write_family(family: &SetFamily) -> String {
    let mut out = format!("ground={}\n", family.ground_size());
    for i in 0..family.len() {
        let elems: Vec<String> = family.elements(i).iter().map(usize::to_string).collect();
        out.push_str(&elems.join(" "));
        out.push('\n');
    }
    out
}
