//! Deterministic CSV and JSON-lines emitters for search results.

use std::io::Write;

use crate::cubic::SectorPrime;
use crate::exact::MaximalTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

/// Write triples with the fixed header `q,a1,n,source` (CSV) or one JSON
/// object per line with the same four keys. Identical inputs produce
/// bytewise identical output.
pub fn write_triples(w: &mut dyn Write, triples: &[MaximalTriple], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "q,a1,n,source")?;
            for t in triples {
                writeln!(w, "{},{},{},{}", t.q, t.a1, t.n, t.source)?;
            }
        }
        Format::Jsonl => {
            for t in triples {
                serde_json::to_writer(&mut *w, t)?;
                writeln!(w)?;
            }
        }
    }
    Ok(())
}

/// Sector-prime records: header `p,a,c,s3,s4,s5,s6` with 0/1 flags, or
/// JSON lines mirroring the struct fields.
pub fn write_sector(w: &mut dyn Write, rows: &[SectorPrime], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "p,a,c,s3,s4,s5,s6")?;
            for s in rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    s.p, s.a, s.c, s.in_s3 as u8, s.in_s4 as u8, s.in_s5 as u8, s.in_s6 as u8
                )?;
            }
        }
        Format::Jsonl => {
            for s in rows {
                serde_json::to_writer(&mut *w, s)?;
                writeln!(w)?;
            }
        }
    }
    Ok(())
}
