//! CSV and JSON ingestion of named distributions.
//!
//! CSV: a header row whose first cell names the name column and whose
//! remaining cells are outcome labels; then one distribution per row, name
//! first. Empty cells read as 0.
//!
//! JSON: `[{"name": "P", "masses": {"a": 1, "b": 3}}, ...]`.
//!
//! Weights are normalized on load. Row numbers in errors are 1-based line
//! numbers for CSV (the header is line 1) and 1-based array positions for
//! JSON.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::distributions::{Distribution, NamedDistribution};
use crate::{Error, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        ext.parse().ok()
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

/// Reads distributions from `path`, using `format` or the file extension.
pub fn read_distributions<T: Scalar>(
    path: &Path,
    format: Option<Format>,
) -> Result<Vec<NamedDistribution<T>>> {
    let format = match format.or_else(|| Format::from_path(path)) {
        Some(f) => f,
        None => return Err(Error::UnknownFormat(path.display().to_string())),
    };
    let file = File::open(path)?;
    match format {
        Format::Csv => parse_csv(file),
        Format::Json => parse_json(file),
    }
}

fn weight<T: Scalar>(v: f64) -> T {
    T::from_f64(v).unwrap_or_else(T::nan)
}

fn check_unique_names<T>(ds: &[NamedDistribution<T>]) -> Result<()> {
    let mut seen = HashSet::new();
    for d in ds {
        if !seen.insert(d.name.as_str()) {
            return Err(Error::DuplicateName(d.name.clone()));
        }
    }
    Ok(())
}

pub fn parse_csv<T: Scalar, R: Read>(reader: R) -> Result<Vec<NamedDistribution<T>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let csv_err = |row: usize, e: csv::Error| Error::Parse {
        row,
        column: String::new(),
        message: e.to_string(),
    };
    let header = rdr.headers().map_err(|e| csv_err(1, e))?.clone();
    if header.len() < 2 {
        return Err(Error::Parse {
            row: 1,
            column: String::new(),
            message: "header needs a name column and at least one outcome label".into(),
        });
    }
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();

    let mut out = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| csv_err(row, e))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != header.len() {
            return Err(Error::Parse {
                row,
                column: String::new(),
                message: format!("expected {} cells, found {}", header.len(), record.len()),
            });
        }
        let name = record[0].to_string();
        let mut weights = Vec::with_capacity(labels.len());
        for (label, cell) in labels.iter().zip(record.iter().skip(1)) {
            let w = if cell.is_empty() {
                0.0
            } else {
                cell.parse::<f64>().map_err(|e| Error::Parse {
                    row,
                    column: label.clone(),
                    message: format!("cannot read `{cell}` as a number: {e}"),
                })?
            };
            weights.push(weight::<T>(w));
        }
        let dist =
            Distribution::new(labels.iter().cloned(), weights).map_err(|e| Error::Record {
                row,
                name: name.clone(),
                source: Box::new(e),
            })?;
        out.push(NamedDistribution { name, dist });
    }
    check_unique_names(&out)?;
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRecord {
    name: String,
    masses: BTreeMap<String, f64>,
}

pub fn parse_json<T: Scalar, R: Read>(reader: R) -> Result<Vec<NamedDistribution<T>>> {
    let records: Vec<JsonRecord> = serde_json::from_reader(reader).map_err(|e| Error::Parse {
        row: e.line(),
        column: e.column().to_string(),
        message: e.to_string(),
    })?;
    let out = records
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let (labels, weights): (Vec<String>, Vec<T>) = r
                .masses
                .into_iter()
                .map(|(l, w)| (l, weight::<T>(w)))
                .unzip();
            Distribution::new(labels, weights)
                .map(|dist| NamedDistribution {
                    name: r.name.clone(),
                    dist,
                })
                .map_err(|e| Error::Record {
                    row: i + 1,
                    name: r.name,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    check_unique_names(&out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_basic() {
        let src = "name,a,b,c\nP,1,1,\nQ,0,2,2\n";
        let ds: Vec<NamedDistribution<f64>> = parse_csv(src.as_bytes()).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds[0].name, "P");
        assert_eq!(ds[0].dist.masses(), &[0.5, 0.5, 0.0]);
        assert_eq!(ds[1].dist.masses(), &[0.0, 0.5, 0.5]);
    }

    #[test]
    fn csv_errors_name_row_and_column() {
        let err = parse_csv::<f64, _>("name,a,b\nP,1,x\n".as_bytes()).unwrap_err();
        match err {
            Error::Parse { row, column, .. } => {
                assert_eq!(row, 2);
                assert_eq!(column, "b");
            }
            e => panic!("unexpected {e}"),
        }
        let err = parse_csv::<f64, _>("name,a,b\nP,1,1\nQ,-1,1\n".as_bytes()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 3") && msg.contains("`a`"), "{msg}");
        assert!(matches!(
            parse_csv::<f64, _>("name,a\nP,0\n".as_bytes()),
            Err(Error::Record { .. })
        ));
        assert!(matches!(
            parse_csv::<f64, _>("name,a\nP,1\nP,2\n".as_bytes()),
            Err(Error::DuplicateName(_))
        ));
        assert!(matches!(
            parse_csv::<f64, _>("name,a,b\nP,1\n".as_bytes()),
            Err(Error::Parse { row: 2, .. })
        ));
        assert!(matches!(
            parse_csv::<f64, _>("name,a,a\nP,1,1\n".as_bytes()),
            Err(Error::Record { .. })
        ));
    }

    #[test]
    fn json_basic() {
        let src = r#"[{"name": "P", "masses": {"b": 3, "a": 1}},
                      {"name": "Q", "masses": {"c": 1}}]"#;
        let ds: Vec<NamedDistribution<f64>> = parse_json(src.as_bytes()).unwrap();
        assert_eq!(ds[0].dist.labels(), &["a", "b"]);
        assert_eq!(ds[0].dist.masses(), &[0.25, 0.75]);
        assert_eq!(ds[1].dist.masses(), &[1.0]);
    }

    #[test]
    fn json_errors() {
        assert!(matches!(
            parse_json::<f64, _>(r#"[{"name": "P", "masses": {"a": -1}}]"#.as_bytes()),
            Err(Error::Record { row: 1, .. })
        ));
        assert!(matches!(
            parse_json::<f64, _>(r#"[{"name": "P"}]"#.as_bytes()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_json::<f64, _>("not json".as_bytes()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn format_detection() {
        assert_eq!(Format::from_path(Path::new("x.CSV")), Some(Format::Csv));
        assert_eq!(Format::from_path(Path::new("x.json")), Some(Format::Json));
        assert_eq!(Format::from_path(Path::new("x.txt")), None);
        assert!("yaml".parse::<Format>().is_err());
    }
}
