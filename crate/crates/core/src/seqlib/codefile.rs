//! Plain-text code exchange format.
//!
//! ```text
//! m n l A
//! <l chips of family 0, member 0>
//! <l chips of family 0, member 1>
//! ...
//! ```
//!
//! Chips are written as `1` / `-1`, space separated, family-major then
//! member-major.

use std::io::{BufRead, Write};

use super::{CodeFamily, CompleteComplementaryCode, Sequence};
use crate::error::{Error, Result};

pub fn write_code<W: Write>(code: &CompleteComplementaryCode, mut out: W) -> Result<()> {
    let (m, n, l) = code.params();
    writeln!(out, "{m} {n} {l} {}", code.amplitude())?;
    for family in code.families() {
        for member in family.members() {
            let line: Vec<String> = member.chips().iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_code<R: BufRead>(input: R) -> Result<CompleteComplementaryCode> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));

    let bad = |line: usize, reason: String| Error::CodeFormat { line, reason };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| bad(1, "missing header".into()))?;
    let header = header?;
    let fields = header
        .split_whitespace()
        .map(|f| {
            f.parse::<i64>()
                .map_err(|e| bad(hline, format!("header field {f:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let [m, n, l, amplitude] = fields[..] else {
        return Err(bad(
            hline,
            format!("expected `m n l A`, got {} fields", fields.len()),
        ));
    };
    if m < 1 || n < 1 || l < 1 {
        return Err(bad(hline, "m, n and l must be positive".into()));
    }
    let (m, n, l) = (m as usize, n as usize, l as usize);

    let mut families = Vec::with_capacity(m);
    for i in 0..m {
        let mut members = Vec::with_capacity(n);
        for _ in 0..n {
            let (lineno, text) = lines
                .next()
                .ok_or_else(|| bad(hline, format!("expected {} sequences", m * n)))?;
            let text = text?;
            let chips = text
                .split_whitespace()
                .map(|c| match c {
                    "1" | "+1" | "+" => Ok(1),
                    "-1" | "-" => Ok(-1),
                    other => Err(bad(lineno, format!("chip {other:?} is not ±1"))),
                })
                .collect::<Result<Vec<i8>>>()?;
            if chips.len() != l {
                return Err(bad(lineno, format!("{} chips, expected {l}", chips.len())));
            }
            members.push(Sequence::new(chips)?);
        }
        families.push(CodeFamily::new(i, members)?);
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(bad(lineno, "trailing data after last sequence".into()));
    }
    let code = CompleteComplementaryCode::from_families(families)?;
    if code.amplitude() != amplitude {
        return Err(bad(
            hline,
            format!("header A = {amplitude}, chips give {}", code.amplitude()),
        ));
    }
    Ok(code)
}
