//! `index,value` CSV for real sequences and `index,symbol` CSV for symbol
//! sequences. Bits are written as `0`/`1`; other reals with 17 significant
//! digits, which round-trips every `f64`.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::game::Sequence;

fn format_real(v: f64) -> String {
    if v == 0.0 || v == 1.0 {
        format!("{}", v as u8)
    } else {
        format!("{v:.16e}")
    }
}

pub fn write_sequence_csv<W: Write>(sequence: &Sequence, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    if let Some(values) = sequence.as_real() {
        w.write_record(["index", "value"])?;
        for (i, &v) in values.iter().enumerate() {
            w.write_record([i.to_string(), format_real(v)])?;
        }
    } else if let Some(ids) = sequence.as_symbols() {
        w.write_record(["index", "symbol"])?;
        for (i, &s) in ids.iter().enumerate() {
            w.write_record([i.to_string(), s.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a sequence written by [`write_sequence_csv`]. Rows must be in index
/// order. Symbol sequences get alphabet `max id + 1` unless `alphabet` is set.
pub fn read_sequence_csv<R: Read>(reader: R, alphabet: Option<usize>) -> Result<Sequence> {
    let mut r = csv::Reader::from_reader(reader);
    let header = r.headers()?.clone();
    let symbolic = match (header.get(0), header.get(1)) {
        (Some("index"), Some("value")) => false,
        (Some("index"), Some("symbol")) => true,
        _ => {
            return Err(Error::Parse(format!(
                "expected header index,value or index,symbol, got {header:?}"
            )))
        }
    };
    let mut reals = Vec::new();
    let mut ids = Vec::new();
    for (row, record) in r.records().enumerate() {
        let record = record?;
        let index: usize = record
            .get(0)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("row {row}: bad index")))?;
        if index != row {
            return Err(Error::Parse(format!(
                "row {row}: index {index} out of order"
            )));
        }
        let field = record
            .get(1)
            .ok_or_else(|| Error::Parse(format!("row {row}: missing value")))?
            .trim();
        if symbolic {
            ids.push(
                field
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("row {row}: {e}")))?,
            );
        } else {
            reals.push(
                field
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("row {row}: {e}")))?,
            );
        }
    }
    if symbolic {
        let alphabet = alphabet.unwrap_or_else(|| ids.iter().max().map_or(0, |m| m + 1));
        Sequence::symbols(ids, alphabet)
    } else {
        Sequence::real(reals)
    }
}
