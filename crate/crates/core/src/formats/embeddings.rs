//! Embedding CSV: `video_id,e0,e1,...`, one mean-pooled vector per video.

use std::io::Read;
use std::path::Path;

use crate::evaluation::EmbeddingTable;

use super::{format_real, parse_real, read_file, FormatError};

pub fn write_embeddings(table: &EmbeddingTable) -> String {
    let mut out = String::from("video_id");
    for i in 0..table.dim() {
        out.push_str(&format!(",e{i}"));
    }
    out.push('\n');
    for (id, v) in table.iter() {
        out.push_str(id);
        for x in v {
            out.push(',');
            out.push_str(&format_real(*x));
        }
        out.push('\n');
    }
    out
}

pub fn parse_embeddings<R: Read>(reader: R) -> Result<EmbeddingTable, FormatError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let header = rdr.headers().map_err(|e| FormatError::invalid(1, e.to_string()))?.clone();
    let cols: Vec<&str> = header.iter().collect();
    let expected = (0..cols.len().saturating_sub(1)).map(|i| format!("e{i}"));
    if cols.len() < 2 || cols[0] != "video_id" || !cols[1..].iter().copied().eq(expected.clone()) {
        return Err(FormatError::invalid(1, "header must be video_id,e0,e1,..."));
    }
    let mut table = EmbeddingTable::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| FormatError::invalid(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != cols.len() {
            return Err(FormatError::invalid(
                line,
                format!("expected {} fields, found {}", cols.len(), rec.len()),
            ));
        }
        let v = rec
            .iter()
            .skip(1)
            .zip(&cols[1..])
            .map(|(x, c)| parse_real(x, line, c))
            .collect::<Result<Vec<_>, _>>()?;
        table
            .insert(&rec[0], v)
            .map_err(|e| FormatError::invalid(line, e.to_string()))?;
    }
    Ok(table)
}

pub fn read_embeddings(path: &Path) -> Result<EmbeddingTable, FormatError> {
    parse_embeddings(read_file(path)?.as_slice()).map_err(|e| e.with_path(path))
}
