//! Text file formats.
//!
//! Matrix file: a header line `KHM k=<k> n=<n>` followed by n lines of n
//! characters from `+`/`-`, LF terminated, no trailing whitespace. `k=0`
//! marks a matrix that is not of bordered dihedral form.
//!
//! Blocks file: `k=<k>` and then `a=…`, `b=…`, `c=…`, `d=…` in the element
//! grammar, one per line.

use crate::error::{KhmError, Result};
use crate::group_algebra::GroupRingElement;
use crate::kimura::KimuraBlocks;
use crate::matrix::SignMatrix;

pub fn write_matrix(h: &SignMatrix, k: usize) -> String {
    let n = h.rows();
    let mut out = String::with_capacity((n + 1) * (n + 1) + 32);
    out.push_str(&format!("KHM k={k} n={n}\n"));
    for i in 0..n {
        out.extend(h.row(i).iter().map(|&v| if v > 0 { '+' } else { '-' }));
        out.push('\n');
    }
    out
}

fn header_field(field: Option<&str>, key: &str, offset: usize) -> Result<usize> {
    let field = field.ok_or_else(|| KhmError::parse(offset, format!("missing {key}=")))?;
    field
        .strip_prefix(key)
        .and_then(|v| v.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| KhmError::parse(offset, format!("expected {key}=<integer>, found {field:?}")))
}

/// Parse a matrix file, returning `(k, H)`.
pub fn parse_matrix(text: &str) -> Result<(usize, SignMatrix)> {
    let mut lines = text.split_inclusive('\n');
    let header = lines.next().ok_or_else(|| KhmError::parse(0, "empty input"))?;
    let header_body = header
        .strip_suffix('\n')
        .ok_or_else(|| KhmError::parse(header.len(), "header must end with LF"))?;
    let mut fields = header_body.split(' ');
    if fields.next() != Some("KHM") {
        return Err(KhmError::parse(0, "header must start with 'KHM'"));
    }
    let k = header_field(fields.next(), "k", 4)?;
    let n = header_field(fields.next(), "n", 4)?;
    if fields.next().is_some() {
        return Err(KhmError::parse(header_body.len(), "trailing data in header"));
    }
    if k > 0 && n != 8 * k + 4 {
        return Err(KhmError::parse(0, format!("n = {n} does not equal 8k+4 for k = {k}")));
    }
    let mut offset = header.len();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    for line in lines {
        let body = line
            .strip_suffix('\n')
            .ok_or_else(|| KhmError::parse(offset + line.len(), "line must end with LF"))?;
        if rows.len() == n {
            return Err(KhmError::parse(offset, "more rows than declared"));
        }
        let mut row = Vec::with_capacity(n);
        for (col, ch) in body.char_indices() {
            row.push(match ch {
                '+' => 1,
                '-' => -1,
                other => {
                    return Err(KhmError::parse(offset + col, format!("unexpected {other:?}")))
                }
            });
        }
        if row.len() != n {
            return Err(KhmError::parse(offset, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
        offset += line.len();
    }
    if rows.len() != n {
        return Err(KhmError::parse(offset, format!("expected {n} rows, found {}", rows.len())));
    }
    let h = if n == 0 {
        SignMatrix::from_fn(0, 0, |_, _| 1)
    } else {
        SignMatrix::from_rows(&rows)?
    };
    Ok((k, h))
}

pub fn write_blocks(blocks: &KimuraBlocks) -> String {
    let mut out = format!("k={}\n", blocks.k());
    for (name, w) in ["a", "b", "c", "d"].iter().zip(blocks.elements()) {
        out.push_str(&format!("{name}={}\n", w.to_grammar().expect("binary")));
    }
    out
}

pub fn parse_blocks(text: &str) -> Result<KimuraBlocks> {
    let mut offset = 0;
    let mut k: Option<usize> = None;
    let mut elements: [Option<GroupRingElement>; 4] = [None, None, None, None];
    for line in text.split_inclusive('\n') {
        let body = line.trim_end_matches('\n').trim_end_matches('\r');
        let trimmed = body.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            offset += line.len();
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| KhmError::parse(offset, "expected key=value"))?;
        let value_offset = offset + body.find('=').unwrap_or(0) + 1;
        match key.trim() {
            "k" => {
                k = Some(value.trim().parse().map_err(|_| {
                    KhmError::parse(value_offset, format!("invalid k {:?}", value.trim()))
                })?)
            }
            name @ ("a" | "b" | "c" | "d") => {
                let kk = k.ok_or_else(|| KhmError::parse(offset, "k= must come first"))?;
                let idx = (name.as_bytes()[0] - b'a') as usize;
                let w = GroupRingElement::parse(value, kk).map_err(|e| match e {
                    KhmError::Parse { position, message } => {
                        KhmError::parse(value_offset + position, message)
                    }
                    other => other,
                })?;
                elements[idx] = Some(w);
            }
            other => return Err(KhmError::parse(offset, format!("unknown key {other:?}"))),
        }
        offset += line.len();
    }
    let missing = |name: &str| KhmError::parse(text.len(), format!("missing {name}="));
    let [a, b, c, d] = elements;
    KimuraBlocks::new(
        a.ok_or_else(|| missing("a"))?,
        b.ok_or_else(|| missing("b"))?,
        c.ok_or_else(|| missing("c"))?,
        d.ok_or_else(|| missing("d"))?,
    )
}
