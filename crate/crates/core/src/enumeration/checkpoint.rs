//! Plain-text checkpoints for interrupted enumerations.
//!
//! ```text
//! REDGE-CHECKPOINT 1
//! facets <n> units <count>
//! unit <graph> <sink> <second> admissible <count> best <p/q> order <v0> <v1> ...
//! unit <graph> <sink> <second> admissible 0 best none
//! ```
//!
//! Lines are appended as units finish; a truncated last line is ignored on
//! reload and that unit is recomputed.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::EnumerationError;
use crate::rational::Rational;

const HEADER: &str = "REDGE-CHECKPOINT 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitRecord {
    pub graph: usize,
    pub sink: usize,
    pub second: usize,
    pub admissible: u64,
    /// Best value in the unit and the placement order attaining it.
    pub best: Option<(Rational, Vec<usize>)>,
}

impl UnitRecord {
    pub fn to_line(&self) -> String {
        let mut s = format!(
            "unit {} {} {} admissible {} best ",
            self.graph, self.sink, self.second, self.admissible
        );
        match &self.best {
            None => s.push_str("none"),
            Some((v, order)) => {
                s.push_str(&v.to_string());
                s.push_str(" order");
                for x in order {
                    s.push(' ');
                    s.push_str(&x.to_string());
                }
            }
        }
        s
    }

    pub fn parse(line: &str) -> Option<UnitRecord> {
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() < 8 || t[0] != "unit" || t[4] != "admissible" || t[6] != "best" {
            return None;
        }
        let graph = t[1].parse().ok()?;
        let sink = t[2].parse().ok()?;
        let second = t[3].parse().ok()?;
        let admissible = t[5].parse().ok()?;
        let best = if t[7] == "none" {
            if t.len() != 8 {
                return None;
            }
            None
        } else {
            let v: Rational = t[7].parse().ok()?;
            if t.get(8) != Some(&"order") {
                return None;
            }
            let order: Option<Vec<usize>> = t[9..].iter().map(|x| x.parse().ok()).collect();
            Some((v, order?))
        };
        Some(UnitRecord {
            graph,
            sink,
            second,
            admissible,
            best,
        })
    }
}

pub struct Checkpoint {
    pub records: Vec<UnitRecord>,
    file: File,
}

impl Checkpoint {
    /// Opens or creates a checkpoint for `facets` with `units` work units.
    pub fn open(path: &Path, facets: usize, units: usize) -> Result<Checkpoint, EnumerationError> {
        let size_line = format!("facets {facets} units {units}");
        let mut records = Vec::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            let lines: Vec<String> = reader.lines().collect::<Result<_, _>>()?;
            if lines.first().map(String::as_str) != Some(HEADER) {
                return Err(EnumerationError::Checkpoint(format!(
                    "{}: missing `{HEADER}` header",
                    path.display()
                )));
            }
            if lines.get(1) != Some(&size_line) {
                return Err(EnumerationError::Checkpoint(format!(
                    "{}: written for a different run (expected `{size_line}`)",
                    path.display()
                )));
            }
            records = lines[2..].iter().filter_map(|l| UnitRecord::parse(l)).collect();
            // rewrite without any torn trailing line
            let mut file = File::create(path)?;
            writeln!(file, "{HEADER}\n{size_line}")?;
            for r in &records {
                writeln!(file, "{}", r.to_line())?;
            }
            file.flush()?;
        } else {
            let mut file = File::create(path)?;
            writeln!(file, "{HEADER}\n{size_line}")?;
            file.flush()?;
        }
        let file = OpenOptions::new().append(true).open(path)?;
        Ok(Checkpoint { records, file })
    }

    pub fn append(&mut self, record: &UnitRecord) -> std::io::Result<()> {
        writeln!(self.file, "{}", record.to_line())?;
        self.file.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn line_round_trip() {
        let r = UnitRecord {
            graph: 3,
            sink: 1,
            second: 4,
            admissible: 17,
            best: Some((q(35, 8), vec![1, 4, 0, 2, 3, 5, 6, 7])),
        };
        assert_eq!(UnitRecord::parse(&r.to_line()), Some(r));
        let e = UnitRecord {
            graph: 0,
            sink: 0,
            second: 1,
            admissible: 0,
            best: None,
        };
        assert_eq!(UnitRecord::parse(&e.to_line()), Some(e));
        assert_eq!(UnitRecord::parse("unit 1 2 3 admissible 4 best 5/2 ord"), None);
    }
}
