//! Loading requirements from delimited text exports.
//!
//! Rows are numbered by record: the header is row 1 and the first data record
//! is row 2, even when a quoted field spans several physical lines.

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Requirement {
    pub id: String,
    pub text: String,
    pub row: usize,
    /// Remaining columns, in header order.
    pub extra: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnMapping {
    pub id_column: String,
    pub text_column: String,
    pub delimiter: char,
}

impl Default for ColumnMapping {
    fn default() -> Self {
        ColumnMapping {
            id_column: "ID".to_string(),
            text_column: "Text".to_string(),
            delimiter: ',',
        }
    }
}

impl ColumnMapping {
    pub fn new(id_column: impl Into<String>, text_column: impl Into<String>, delimiter: char) -> Self {
        ColumnMapping {
            id_column: id_column.into(),
            text_column: text_column.into(),
            delimiter,
        }
    }

    fn delimiter_byte(&self) -> Result<u8, IngestError> {
        if self.id_column == self.text_column {
            return Err(IngestError::InvalidMapping(format!(
                "id and text column are both `{}`",
                self.id_column
            )));
        }
        u8::try_from(self.delimiter)
            .ok()
            .filter(|b| b.is_ascii() && !matches!(b, b'"' | b'\n' | b'\r'))
            .ok_or_else(|| {
                IngestError::InvalidMapping(format!("unsupported delimiter {:?}", self.delimiter))
            })
    }
}

/// Loaded requirements plus non-fatal findings.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub requirements: Vec<Requirement>,
    pub warnings: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid column mapping: {0}")]
    InvalidMapping(String),
    #[error("input has no header row")]
    MissingHeader,
    #[error("column `{0}` not found in header")]
    MissingColumn(String),
    #[error("duplicate requirement id `{id}` in rows {first} and {second}")]
    DuplicateId { id: String, first: usize, second: usize },
    #[error("row {row}: requirement id is empty")]
    EmptyId { row: usize },
    #[error("row {row}: expected {expected} fields, found {found}")]
    RowArityMismatch { row: usize, expected: usize, found: usize },
    #[error("row {row}: invalid UTF-8")]
    InvalidEncoding { row: usize },
    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },
}

fn decode(record: &csv::ByteRecord, row: usize) -> Result<Vec<String>, IngestError> {
    record
        .iter()
        .map(|f| {
            std::str::from_utf8(f)
                .map(str::to_string)
                .map_err(|_| IngestError::InvalidEncoding { row })
        })
        .collect()
}

/// Parses requirements from an in-memory reader.
pub fn read_requirements(input: impl Read, mapping: &ColumnMapping) -> Result<Corpus, IngestError> {
    let delimiter = mapping.delimiter_byte()?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .from_reader(input);

    let parse_err = |row: usize, e: csv::Error| match e.kind() {
        csv::ErrorKind::Io(_) => IngestError::Parse { row, message: e.to_string() },
        csv::ErrorKind::Utf8 { .. } => IngestError::InvalidEncoding { row },
        _ => IngestError::Parse { row, message: e.to_string() },
    };

    let mut records = reader.byte_records();
    let header = match records.next() {
        Some(r) => r.map_err(|e| parse_err(1, e))?,
        None => return Err(IngestError::MissingHeader),
    };
    let mut header = decode(&header, 1)?;
    if let Some(first) = header.first_mut() {
        if let Some(stripped) = first.strip_prefix('\u{feff}') {
            *first = stripped.to_string();
        }
    }
    let position = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IngestError::MissingColumn(name.to_string()))
    };
    let id_col = position(&mapping.id_column)?;
    let text_col = position(&mapping.text_column)?;

    let mut corpus = Corpus::default();
    let mut first_seen: HashMap<String, usize> = HashMap::new();
    for (i, record) in records.enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| parse_err(row, e))?;
        if record.len() != header.len() {
            return Err(IngestError::RowArityMismatch {
                row,
                expected: header.len(),
                found: record.len(),
            });
        }
        let fields = decode(&record, row)?;
        let id = fields[id_col].trim().to_string();
        if id.is_empty() {
            return Err(IngestError::EmptyId { row });
        }
        if let Some(&first) = first_seen.get(&id) {
            return Err(IngestError::DuplicateId { id, first, second: row });
        }
        first_seen.insert(id.clone(), row);
        let extra = header
            .iter()
            .zip(&fields)
            .enumerate()
            .filter(|(c, _)| *c != id_col && *c != text_col)
            .map(|(_, (h, v))| (h.clone(), v.clone()))
            .collect();
        corpus.requirements.push(Requirement {
            id,
            text: fields[text_col].clone(),
            row,
            extra,
        });
    }
    if corpus.requirements.is_empty() {
        corpus.warnings.push("input contains a header but no requirements".to_string());
    }
    Ok(corpus)
}

pub fn load_requirements(path: impl AsRef<Path>, mapping: &ColumnMapping) -> Result<Corpus, IngestError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_requirements(file, mapping)
}

/// Writes requirements back as delimited text: id, text, then the extra
/// columns of the first requirement.
pub fn write_requirements(
    out: impl Write,
    requirements: &[Requirement],
    mapping: &ColumnMapping,
) -> Result<(), IngestError> {
    let delimiter = mapping.delimiter_byte()?;
    let mut writer = csv::WriterBuilder::new().delimiter(delimiter).from_writer(out);
    let io_err = |e: csv::Error| IngestError::Io {
        path: "<output>".to_string(),
        source: std::io::Error::other(e),
    };
    let extras: Vec<&str> = requirements
        .first()
        .map(|r| r.extra.iter().map(|(k, _)| k.as_str()).collect())
        .unwrap_or_default();
    let mut header = vec![mapping.id_column.as_str(), mapping.text_column.as_str()];
    header.extend(&extras);
    writer.write_record(&header).map_err(io_err)?;
    for r in requirements {
        let mut record = vec![r.id.as_str(), r.text.as_str()];
        record.extend(r.extra.iter().map(|(_, v)| v.as_str()));
        writer.write_record(&record).map_err(io_err)?;
    }
    writer.flush().map_err(|source| IngestError::Io {
        path: "<output>".to_string(),
        source,
    })
}
