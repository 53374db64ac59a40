//! Line-class file format and report schemas.
//!
//! A class file is plain text: a header line
//! `PGCL v1; n=3; q=5; x=12; count=372` followed by one canonical line
//! index per record. Canonical indices are stable across versions because
//! point and plane enumeration is pinned to lexicographic coordinate order.

use super::LineClass;
use crate::projgeom::{Geometry, LineId};
use serde::Serialize;
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PgclIoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("header declares (n={n}, q={q}) but the geometry is (n={gn}, q={gq})")]
    GeometryMismatch { n: usize, q: u16, gn: usize, gq: u16 },
    #[error("bad line index {0}")]
    BadIndex(String),
    #[error("header count {expected} does not match {found} records")]
    CountMismatch { expected: usize, found: usize },
}

pub fn write_pgcl<W: Write>(
    mut w: W,
    g: &Geometry,
    cl: &LineClass,
    x: u32,
) -> Result<(), PgclIoError> {
    writeln!(w, "PGCL v1; n={}; q={}; x={}; count={}", g.n, g.q(), x, cl.size())?;
    for l in cl.line_ids() {
        writeln!(w, "{l}")?;
    }
    Ok(())
}

pub fn read_pgcl<R: BufRead>(r: R, g: &Geometry) -> Result<(LineClass, u32), PgclIoError> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| PgclIoError::Header("empty file".into()))??;
    let mut n = None;
    let mut q = None;
    let mut x = None;
    let mut count = None;
    let mut fields = header.split(';').map(str::trim);
    if fields.next() != Some("PGCL v1") {
        return Err(PgclIoError::Header(header.clone()));
    }
    for field in fields {
        let Some((key, value)) = field.split_once('=') else {
            return Err(PgclIoError::Header(header.clone()));
        };
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| PgclIoError::Header(header.clone()))?;
        match key.trim() {
            "n" => n = Some(value as usize),
            "q" => q = Some(value as u16),
            "x" => x = Some(value as u32),
            "count" => count = Some(value as usize),
            _ => return Err(PgclIoError::Header(header.clone())),
        }
    }
    let (Some(n), Some(q), Some(x), Some(count)) = (n, q, x, count) else {
        return Err(PgclIoError::Header(header));
    };
    if n != g.n || q != g.q() {
        return Err(PgclIoError::GeometryMismatch { n, q, gn: g.n, gq: g.q() });
    }
    let mut ids: Vec<LineId> = Vec::with_capacity(count);
    for record in lines {
        let record = record?;
        let t = record.trim();
        if t.is_empty() {
            continue;
        }
        let id: LineId = t.parse().map_err(|_| PgclIoError::BadIndex(t.into()))?;
        if id as usize >= g.num_lines() {
            return Err(PgclIoError::BadIndex(t.into()));
        }
        ids.push(id);
    }
    if ids.len() != count {
        return Err(PgclIoError::CountMismatch { expected: count, found: ids.len() });
    }
    Ok((LineClass::from_line_ids(g, &ids), x))
}

/// Verification verdict in report form.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum VerifyReport {
    CameronLiebler { q: u16, x: u32, size: usize },
    NotCameronLiebler { q: u16, size: usize, reason: String },
}

#[cfg(test)]
mod tests {
    use super::super::catalog;
    use super::*;
    use crate::projgeom::build_geometry;

    #[test]
    fn pgcl_round_trip() {
        let g = build_geometry(3, 3).unwrap();
        let cl = catalog::star(&g, 11);
        let mut buf = Vec::new();
        write_pgcl(&mut buf, &g, &cl, 1).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("PGCL v1; n=3; q=3; x=1; count=13\n"));
        let (back, x) = read_pgcl(std::io::Cursor::new(buf), &g).unwrap();
        assert_eq!(back, cl);
        assert_eq!(x, 1);
        // wrong geometry is refused
        let g2 = build_geometry(3, 5).unwrap();
        let mut buf = Vec::new();
        write_pgcl(&mut buf, &g, &cl, 1).unwrap();
        assert!(read_pgcl(std::io::Cursor::new(buf), &g2).is_err());
    }
}
