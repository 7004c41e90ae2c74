use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use sphtet::VolumeResult;

use crate::{volume_of, Mode};

pub const HEADER: [&str; 9] = ["id", "mode", "v1", "v2", "v3", "v4", "v5", "v6", "unit"];

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Record {
    Ok {
        id: String,
        #[serde(flatten)]
        result: VolumeResult<f64>,
    },
    Err {
        id: String,
        error: String,
    },
}

pub struct Batch {
    pub records: Vec<Record>,
    pub duplicates: Vec<String>,
}

impl Batch {
    pub fn summary(&self) -> String {
        let ok = self.records.iter().filter(|r| matches!(r, Record::Ok { .. })).count();
        let mut line = format!(
            "{} records: {} ok, {} errors",
            self.records.len(),
            ok,
            self.records.len() - ok
        );
        if !self.duplicates.is_empty() {
            line += &format!("; warning: duplicate ids {}", self.duplicates.join(", "));
        }
        line
    }
}

fn parse_row(row: &csv::StringRecord) -> Result<(Mode, [f64; 6]), String> {
    if row.len() != HEADER.len() {
        return Err(format!("expected {} fields, found {}", HEADER.len(), row.len()));
    }
    let mode = match row[1].trim() {
        "angles" => Mode::Angles,
        "lengths" => Mode::Lengths,
        other => return Err(format!("unknown mode '{other}'")),
    };
    let mut values = [0.0f64; 6];
    for (k, v) in values.iter_mut().enumerate() {
        let field = row[k + 2].trim();
        *v = field.parse().map_err(|_| format!("v{} is not a number: '{field}'", k + 1))?;
        if !v.is_finite() {
            return Err(format!("v{} is not finite", k + 1));
        }
    }
    match row[8].trim() {
        "radians" => {}
        "degrees" => values = values.map(f64::to_radians),
        other => return Err(format!("unknown unit '{other}'")),
    }
    Ok((mode, values))
}

/// Reads and evaluates every record. Only an unreadable file or a wrong
/// header is an error; bad rows become error records.
pub fn run(path: &Path) -> Result<Batch, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = reader.records();
    let header = match rows.next() {
        None => return Ok(Batch { records: Vec::new(), duplicates: Vec::new() }),
        Some(h) => h.map_err(|e| e.to_string())?,
    };
    if header.iter().map(str::trim).ne(HEADER) {
        return Err(format!("bad header, expected {}", HEADER.join(",")));
    }

    let mut records = Vec::new();
    let mut seen = BTreeMap::<String, usize>::new();
    for (line, row) in rows.enumerate() {
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                records.push(Record::Err { id: format!("line {}", line + 2), error: e.to_string() });
                continue;
            }
        };
        let id = row.get(0).unwrap_or_default().trim().to_string();
        *seen.entry(id.clone()).or_default() += 1;
        let outcome = parse_row(&row)
            .and_then(|(mode, v)| volume_of(mode, v).map_err(|e| e.to_string()));
        records.push(match outcome {
            Ok(result) => Record::Ok { id, result },
            Err(error) => Record::Err { id, error },
        });
    }
    let duplicates = seen.into_iter().filter(|(_, n)| *n > 1).map(|(id, _)| id).collect();
    Ok(Batch { records, duplicates })
}
