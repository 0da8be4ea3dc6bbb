//! Text formats for instances, cover certificates, and sign matrices.
//!
//! All three formats are line-oriented, diffable, and bit-exact:
//!
//! * Incidence matrix: a header `cff r=<r> w=<w> t=<t> n=<n> [d=<d>]
//!   [tprime=<x>]`, then `t` lines of `n` characters in `{0,1}`; row `i`,
//!   column `j` is `1` exactly when point `j` lies in block `i`.
//! * Cover certificate: a header `cover t=<t> r=<r> w=<w> d=<d>
//!   [rejected=<k>]`, then one `gen` line per generator with its elements in
//!   ascending order, e.g. `gen 0 2 3`.
//! * Sign matrix: an optional header `order <n>`, then one row per line of
//!   `+`/`-` characters with no separators.
//!
//! Blank lines and `#` comment lines are ignored everywhere. Writing then
//! reading any document reproduces the in-memory value exactly.

use std::collections::HashMap;

use crate::biclique::BicliqueCoverCert;
use crate::cff::CffInstance;
use crate::error::{Error, Result};
use crate::subset::IndexSubset;

/// An incidence matrix together with the header parameters it was written
/// with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CffDocument {
    pub instance: CffInstance,
    pub r: usize,
    pub w: usize,
    pub d: Option<u64>,
    pub t_prime: Option<usize>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header<'a>(
    line: &'a str,
    tag: &str,
    lineno: usize,
) -> Result<HashMap<&'a str, &'a str>> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(Error::parse(format!(
            "line {lineno}: expected a `{tag}` header"
        )));
    }
    let mut fields = HashMap::new();
    for part in parts {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            Error::parse(format!("line {lineno}: malformed field `{part}`"))
        })?;
        if fields.insert(key, value).is_some() {
            return Err(Error::parse(format!("line {lineno}: duplicate field `{key}`")));
        }
    }
    Ok(fields)
}

fn field<T: std::str::FromStr>(
    fields: &HashMap<&str, &str>,
    key: &str,
    lineno: usize,
) -> Result<T> {
    let raw = fields
        .get(key)
        .ok_or_else(|| Error::parse(format!("line {lineno}: missing field `{key}`")))?;
    raw.parse()
        .map_err(|_| Error::parse(format!("line {lineno}: invalid value for `{key}`: {raw}")))
}

fn optional_field<T: std::str::FromStr>(
    fields: &HashMap<&str, &str>,
    key: &str,
    lineno: usize,
) -> Result<Option<T>> {
    match fields.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse()
            .map(Some)
            .map_err(|_| Error::parse(format!("line {lineno}: invalid value for `{key}`: {raw}"))),
    }
}

pub fn write_cff(doc: &CffDocument) -> String {
    let f = &doc.instance;
    let mut out = format!(
        "cff r={} w={} t={} n={}",
        doc.r,
        doc.w,
        f.t(),
        f.n()
    );
    if let Some(d) = doc.d {
        out.push_str(&format!(" d={d}"));
    }
    if let Some(tp) = doc.t_prime {
        out.push_str(&format!(" tprime={tp}"));
    }
    out.push('\n');
    // Width-zero rows carry no information and would be eaten by the
    // blank-line filter, so they are omitted entirely.
    if f.n() > 0 {
        for block in f.blocks() {
            for j in 0..f.n() {
                out.push(if block.contains(j) { '1' } else { '0' });
            }
            out.push('\n');
        }
    }
    out
}

pub fn read_cff(text: &str) -> Result<CffDocument> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse("empty document".to_string()))?;
    let fields = parse_header(header, "cff", lineno)?;
    let r: usize = field(&fields, "r", lineno)?;
    let w: usize = field(&fields, "w", lineno)?;
    let t: usize = field(&fields, "t", lineno)?;
    let n: usize = field(&fields, "n", lineno)?;
    let d: Option<u64> = optional_field(&fields, "d", lineno)?;
    let t_prime: Option<usize> = optional_field(&fields, "tprime", lineno)?;

    if n == 0 {
        if let Some((lineno, _)) = lines.next() {
            return Err(Error::parse(format!(
                "line {lineno}: trailing content after the header of a 0-point instance"
            )));
        }
        let blocks = vec![IndexSubset::empty(0); t];
        return Ok(CffDocument {
            instance: CffInstance::new(0, blocks)?,
            r,
            w,
            d,
            t_prime,
        });
    }

    let mut blocks = Vec::with_capacity(t);
    for _ in 0..t {
        let (lineno, row) = lines
            .next()
            .ok_or_else(|| Error::parse(format!("expected {t} incidence rows")))?;
        if row.len() != n {
            return Err(Error::parse(format!(
                "line {lineno}: row has {} columns, expected {n}",
                row.len()
            )));
        }
        let mut block = IndexSubset::empty(n);
        for (j, c) in row.chars().enumerate() {
            match c {
                '1' => block.insert(j).expect("column index below n"),
                '0' => {}
                other => {
                    return Err(Error::parse(format!(
                        "line {lineno}: unexpected character `{other}`"
                    )))
                }
            }
        }
        blocks.push(block);
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(Error::parse(format!(
            "line {lineno}: trailing content after {t} rows"
        )));
    }
    Ok(CffDocument {
        instance: CffInstance::new(n, blocks)?,
        r,
        w,
        d,
        t_prime,
    })
}

pub fn write_cover(cert: &BicliqueCoverCert) -> String {
    let mut out = format!(
        "cover t={} r={} w={} d={}",
        cert.t(),
        cert.r(),
        cert.w(),
        cert.d()
    );
    if cert.rejected_points() > 0 {
        out.push_str(&format!(" rejected={}", cert.rejected_points()));
    }
    out.push('\n');
    for gen in cert.generators() {
        out.push_str("gen");
        for e in gen.iter() {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    out
}

pub fn read_cover(text: &str) -> Result<BicliqueCoverCert> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse("empty document".to_string()))?;
    let fields = parse_header(header, "cover", lineno)?;
    let t: usize = field(&fields, "t", lineno)?;
    let r: usize = field(&fields, "r", lineno)?;
    let w: usize = field(&fields, "w", lineno)?;
    let d: u64 = field(&fields, "d", lineno)?;
    let rejected: Option<usize> = optional_field(&fields, "rejected", lineno)?;

    let mut generators = Vec::new();
    for (lineno, line) in lines {
        let mut parts = line.split_whitespace();
        if parts.next() != Some("gen") {
            return Err(Error::parse(format!(
                "line {lineno}: expected a `gen` line"
            )));
        }
        let mut elements = Vec::new();
        for part in parts {
            let e: usize = part.parse().map_err(|_| {
                Error::parse(format!("line {lineno}: invalid index `{part}`"))
            })?;
            elements.push(e);
        }
        generators.push(
            IndexSubset::from_elements(t, elements)
                .map_err(|e| Error::parse(format!("line {lineno}: {e}")))?,
        );
    }
    Ok(BicliqueCoverCert::new(t, r, w, d, generators)?
        .with_rejected(rejected.unwrap_or(0)))
}

/// Writes a sign matrix (any square `{+1,-1}` rows, verified or not).
pub fn write_sign_matrix(rows: &[Vec<i8>]) -> String {
    let mut out = format!("order {}\n", rows.len());
    for row in rows {
        for &e in row {
            out.push(if e == 1 { '+' } else { '-' });
        }
        out.push('\n');
    }
    out
}

/// Reads a sign matrix; the `order <n>` header is optional. The result is a
/// candidate only — run it through the verifier to certify it.
pub fn read_sign_matrix(text: &str) -> Result<Vec<Vec<i8>>> {
    let mut declared: Option<usize> = None;
    let mut rows: Vec<Vec<i8>> = Vec::new();
    for (lineno, line) in content_lines(text) {
        if rows.is_empty() && declared.is_none() {
            if let Some(rest) = line.strip_prefix("order") {
                let rest = rest.trim();
                declared = Some(rest.parse().map_err(|_| {
                    Error::parse(format!("line {lineno}: invalid order `{rest}`"))
                })?);
                continue;
            }
        }
        let mut row = Vec::with_capacity(line.len());
        for c in line.chars() {
            match c {
                '+' => row.push(1i8),
                '-' => row.push(-1i8),
                other => {
                    return Err(Error::parse(format!(
                        "line {lineno}: unexpected character `{other}`"
                    )))
                }
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse("empty document".to_string()));
    }
    if let Some(n) = declared {
        if rows.len() != n {
            return Err(Error::parse(format!(
                "header declares order {n} but {} rows follow",
                rows.len()
            )));
        }
    }
    Ok(rows)
}
