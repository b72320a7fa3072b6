//! Point-set text files.
//!
//! One point per line as `x y`, whitespace separated. Coordinates may be
//! integers, fractions `a/b`, or finite decimals; all are parsed exactly.
//! Blank lines and lines starting with `#` are ignored. Duplicate points
//! are a load error, not a warning.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::{Point2, PointSet};
use crate::rational::{format_rational, parse_rational};

/// Reads a point set from any reader.
pub fn read_point_set<R: Read>(reader: R) -> Result<PointSet> {
    let mut points = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let body = match line.split_once('#') {
            Some((before, _)) => before,
            None => line.as_str(),
        };
        if body.trim().is_empty() {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let (x, y) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(x), Some(y), None) => (x, y),
            _ => {
                return Err(Error::ParsePointFile {
                    line: line_no,
                    reason: "expected exactly two coordinates".into(),
                })
            }
        };
        let parse = |tok: &str| {
            parse_rational(tok).map_err(|e| Error::ParsePointFile {
                line: line_no,
                reason: e.to_string(),
            })
        };
        points.push(Point2::new(parse(x)?, parse(y)?));
    }
    PointSet::new(points)
}

/// Loads a point set from a file path.
pub fn load_point_set<P: AsRef<Path>>(path: P) -> Result<PointSet> {
    read_point_set(std::fs::File::open(path)?)
}

/// Writes a point set; `comment` becomes a leading `#` line.
///
/// Output is deterministic: same set and comment, same bytes.
pub fn write_point_set<W: Write>(
    mut writer: W,
    set: &PointSet,
    comment: Option<&str>,
) -> Result<()> {
    if let Some(comment) = comment {
        writeln!(writer, "# {comment}")?;
    }
    for p in set.points() {
        writeln!(
            writer,
            "{} {}",
            format_rational(&p.x),
            format_rational(&p.y)
        )?;
    }
    Ok(())
}

/// Saves a point set to a file path.
pub fn save_point_set<P: AsRef<Path>>(
    path: P,
    set: &PointSet,
    comment: Option<&str>,
) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_point_set(file, set, comment)
}
