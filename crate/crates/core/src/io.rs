//! Point input in CSV or JSON form, and JSON output with stable precision.

use serde::{Deserialize, Serialize};
use std::io::Write;
use thiserror::Error;

use crate::geometry::Point;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("failed to parse JSON input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("row {row}: expected two numeric columns, got {found}")]
    BadColumns { row: usize, found: usize },
    #[error("row {row}: {value:?} is not a number")]
    BadNumber { row: usize, value: String },
    #[error("no points in input")]
    Empty,
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
}

#[derive(Deserialize)]
struct PointsHolder {
    points: Vec<[f64; 2]>,
}

/// Parses a point set from text.
///
/// Accepts a JSON array of `[x, y]` pairs, a JSON object with a `points`
/// field (as written by the graph serializer, so build output can be fed
/// straight back in), or two-column CSV with an optional header row.
pub fn parse_points(text: &str) -> Result<Vec<Point>, IoError> {
    let trimmed = text.trim_start();
    let raw: Vec<[f64; 2]> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed)?
    } else if trimmed.starts_with('{') {
        serde_json::from_str::<PointsHolder>(trimmed)?.points
    } else {
        parse_csv(text)?
    };
    if raw.is_empty() {
        return Err(IoError::Empty);
    }
    let points: Vec<Point> = raw.into_iter().map(Point::from).collect();
    for (index, p) in points.iter().enumerate() {
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(IoError::NonFinite { index });
        }
    }
    Ok(points)
}

fn parse_csv(text: &str) -> Result<Vec<[f64; 2]>, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 2 {
            return Err(IoError::BadColumns {
                row: i + 1,
                found: record.len(),
            });
        }
        let parse = |field: &str| -> Result<f64, IoError> {
            field.parse::<f64>().map_err(|_| IoError::BadNumber {
                row: i + 1,
                value: field.to_string(),
            })
        };
        match (parse(&record[0]), parse(&record[1])) {
            (Ok(x), Ok(y)) => out.push([x, y]),
            // A non-numeric first row is an optional header.
            _ if i == 0 => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(out)
}

/// Renders points as two-column CSV with an `x,y` header, 17 significant
/// digits per coordinate.
pub fn points_to_csv(points: &[Point]) -> String {
    let mut out = String::from("x,y\n");
    for p in points {
        out.push_str(&format!("{:.16e},{:.16e}\n", p.x, p.y));
    }
    out
}

struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        debug_assert!(value.is_finite(), "refusing to serialize {value}");
        write!(writer, "{value:.16e}")
    }
}

/// Serializes to JSON with every real written at 17 significant digits in
/// scientific notation, so output is byte-stable and round-trips exactly.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String, serde_json::Error> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serializer emits utf-8"))
}

/// Same as [`to_json_string`] but appends a newline and writes to `writer`.
pub fn write_json_line<W: Write, T: Serialize>(
    mut writer: W,
    value: &T,
) -> Result<(), std::io::Error> {
    let line = to_json_string(value).map_err(std::io::Error::other)?;
    writer.write_all(line.as_bytes())?;
    writer.write_all(b"\n")
}
