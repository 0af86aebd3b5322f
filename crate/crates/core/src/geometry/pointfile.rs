//! Point-set text format.
//!
//! One point per line, coordinates separated by single commas. Lines starting
//! with `#` are comments. The first non-comment line may be `dim=<d>`;
//! otherwise the dimension is taken from the first point row.

use std::fmt::Write as _;

use super::PointSet;
use crate::{Error, Result};

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let mut set: Option<PointSet> = None;
    let mut seen_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        if !seen_data {
            seen_data = true;
            if let Some(d) = line.strip_prefix("dim=") {
                let dim: usize = d.trim().parse().map_err(|_| err(format!("bad dimension '{d}'")))?;
                set = Some(PointSet::empty(dim).map_err(|e| err(e.to_string()))?);
                continue;
            }
        }
        let coords = line
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| err(format!("bad coordinate '{tok}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        let set = match &mut set {
            Some(s) => s,
            None => set.insert(PointSet::empty(coords.len()).map_err(|e| err(e.to_string()))?),
        };
        set.push(&coords).map_err(|e| err(e.to_string()))?;
    }
    set.ok_or(Error::Parse {
        line: 0,
        message: "no dim= header and no points; dimension unknown".into(),
    })
}

pub fn write_point_set(points: &PointSet) -> String {
    let mut out = format!("dim={}\n", points.dim());
    for p in points.iter() {
        for (i, c) in p.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format_coord(*c));
        }
        out.push('\n');
    }
    out
}

/// Formats a coordinate with 17 significant digits (`%.17g` style), which
/// round-trips every finite binary64 value.
pub fn format_coord(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-5..17).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
            out.push_str(&digits);
        } else {
            let split = exp as usize + 1;
            out.push_str(&digits[..split]);
            out.push('.');
            out.push_str(&digits[split..]);
        }
        let trimmed = out.trim_end_matches('0').trim_end_matches('.').len();
        out.truncate(trimmed);
    } else {
        let frac = digits[1..].trim_end_matches('0');
        out.push_str(&digits[..1]);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    out
}
