//! Tagged-field bibliographic export reader.
//!
//! Reads the classic line-oriented export format: a two-character tag in
//! columns 1–2, the value from column 4, and continuation lines indented
//! by at least two spaces. Records run from `PT` to `ER`. Only the tags
//! needed downstream (`AU`, `TI`, `SO`, `PY`) are kept; every other tag is
//! skipped together with its continuation lines.

use thiserror::Error;

const YEAR_MIN: i32 = 1800;
const YEAR_MAX: i32 = 2200;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    /// A record was opened by `PT` but never terminated by `ER`.
    #[error("record opened at line {opened} has no ER terminator")]
    MalformedFile { opened: usize },
    /// The input contains no `PT` tag at all.
    #[error("input contains no PT tag")]
    EmptyInput,
}

/// One parsed bibliographic document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// Zero-based ordinal in the file, equal to parse order.
    pub id: usize,
    /// Normalized author names, no duplicates, no empty strings.
    pub authors: Vec<String>,
    /// Title with continuation lines joined by single spaces.
    pub title: String,
    /// Normalized source (journal) name; empty when `SO` was missing.
    pub journal: String,
    /// Publication year, absent when `PY` was missing or unparsable.
    pub year: Option<i32>,
}

/// A non-fatal problem noticed while parsing, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RecordSet {
    pub records: Vec<Record>,
    pub warnings: Vec<Warning>,
}

/// Summary counts over a record set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordStats {
    pub records: usize,
    /// (min, max) over records that carry a year.
    pub year_range: Option<(i32, i32)>,
    pub distinct_journals: usize,
    pub distinct_authors: usize,
}

/// Lowercase an author name, strip punctuation, collapse whitespace.
///
/// "Fournier, L" and "FOURNIER L." both normalize to "fournier l"; hyphenated
/// initials lose the hyphen ("J-P" becomes "jp").
pub fn normalize_author(raw: &str) -> String {
    let mut cleaned = String::with_capacity(raw.len());
    for ch in raw.chars() {
        if ch.is_alphanumeric() {
            cleaned.extend(ch.to_lowercase());
        } else if ch.is_whitespace() {
            cleaned.push(' ');
        }
    }
    collapse_ws(&cleaned)
}

/// Lowercase a journal name and collapse whitespace.
pub fn normalize_journal(raw: &str) -> String {
    collapse_ws(&raw.to_lowercase())
}

fn collapse_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Copy, PartialEq)]
enum ActiveTag {
    Author,
    Title,
    Source,
    Skip,
    None,
}

struct OpenRecord {
    opened_line: usize,
    authors_raw: Vec<String>,
    title_parts: Vec<String>,
    source_parts: Vec<String>,
    saw_title: bool,
    saw_source: bool,
    saw_author: bool,
    year: Option<i32>,
}

impl OpenRecord {
    fn new(opened_line: usize) -> Self {
        OpenRecord {
            opened_line,
            authors_raw: Vec::new(),
            title_parts: Vec::new(),
            source_parts: Vec::new(),
            saw_title: false,
            saw_source: false,
            saw_author: false,
            year: None,
        }
    }

    fn finish(self, id: usize, closed_line: usize, warnings: &mut Vec<Warning>) -> Record {
        let mut authors = Vec::with_capacity(self.authors_raw.len());
        for raw in &self.authors_raw {
            let norm = normalize_author(raw);
            if norm.is_empty() {
                warnings.push(Warning {
                    line: closed_line,
                    message: format!("record {id}: author name \"{raw}\" is empty after normalization"),
                });
            } else if !authors.contains(&norm) {
                authors.push(norm);
            }
        }
        if !self.saw_author {
            warnings.push(Warning {
                line: closed_line,
                message: format!("record {id}: no AU field"),
            });
        }
        if !self.saw_title {
            warnings.push(Warning {
                line: closed_line,
                message: format!("record {id}: no TI field"),
            });
        }
        if !self.saw_source {
            warnings.push(Warning {
                line: closed_line,
                message: format!("record {id}: no SO field"),
            });
        }
        Record {
            id,
            authors,
            title: self.title_parts.join(" "),
            journal: normalize_journal(&self.source_parts.join(" ")),
            year: self.year,
        }
    }
}

/// Parse a full tagged-field export into records.
///
/// One record per `PT`…`ER` block. Records missing `AU`, `TI`, or `SO`
/// are kept and produce a warning; an unparsable `PY` leaves the year
/// absent rather than failing the file. A leading UTF-8 BOM is stripped.
pub fn parse_records(text: &str) -> Result<RecordSet, ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    let mut current: Option<OpenRecord> = None;
    let mut active = ActiveTag::None;
    let mut saw_pt = false;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            active = ActiveTag::None;
            continue;
        }
        if line.starts_with("  ") {
            // continuation of the current field
            let value = line.trim_start();
            if let Some(rec) = current.as_mut() {
                match active {
                    ActiveTag::Author => {
                        rec.authors_raw.push(value.to_string());
                    }
                    ActiveTag::Title => rec.title_parts.push(value.to_string()),
                    ActiveTag::Source => rec.source_parts.push(value.to_string()),
                    ActiveTag::Skip | ActiveTag::None => {}
                }
            }
            continue;
        }

        let (tag, value) = match split_tag_line(line) {
            Some(tv) => tv,
            None => {
                active = ActiveTag::Skip;
                continue;
            }
        };

        match tag {
            "PT" => {
                if let Some(open) = &current {
                    return Err(ParseError::MalformedFile {
                        opened: open.opened_line,
                    });
                }
                saw_pt = true;
                current = Some(OpenRecord::new(lineno));
                active = ActiveTag::Skip;
            }
            "ER" => {
                match current.take() {
                    Some(rec) => {
                        let id = records.len();
                        records.push(rec.finish(id, lineno, &mut warnings));
                    }
                    None => warnings.push(Warning {
                        line: lineno,
                        message: "ER without an open record".to_string(),
                    }),
                }
                active = ActiveTag::None;
            }
            "AU" => {
                if let Some(rec) = current.as_mut() {
                    rec.saw_author = true;
                    rec.authors_raw.push(value.to_string());
                    active = ActiveTag::Author;
                } else {
                    active = ActiveTag::Skip;
                }
            }
            "TI" => {
                if let Some(rec) = current.as_mut() {
                    rec.saw_title = true;
                    rec.title_parts.push(value.to_string());
                    active = ActiveTag::Title;
                } else {
                    active = ActiveTag::Skip;
                }
            }
            "SO" => {
                if let Some(rec) = current.as_mut() {
                    rec.saw_source = true;
                    rec.source_parts.push(value.to_string());
                    active = ActiveTag::Source;
                } else {
                    active = ActiveTag::Skip;
                }
            }
            "PY" => {
                if let Some(rec) = current.as_mut() {
                    match value.trim().parse::<i32>() {
                        Ok(y) if (YEAR_MIN..=YEAR_MAX).contains(&y) => rec.year = Some(y),
                        _ => warnings.push(Warning {
                            line: lineno,
                            message: format!("unparsable PY value \"{}\"", value.trim()),
                        }),
                    }
                }
                active = ActiveTag::Skip;
            }
            // file-level headers and anything unrecognized
            _ => active = ActiveTag::Skip,
        }
    }

    if let Some(open) = &current {
        return Err(ParseError::MalformedFile {
            opened: open.opened_line,
        });
    }
    if !saw_pt {
        return Err(ParseError::EmptyInput);
    }
    Ok(RecordSet { records, warnings })
}

/// Split "XX value" into tag and value; None when the line is not a tag line.
fn split_tag_line(line: &str) -> Option<(&str, &str)> {
    let bytes = line.as_bytes();
    if bytes.len() < 2 || bytes[0] == b' ' || bytes[1] == b' ' {
        return None;
    }
    if !line.is_char_boundary(2) {
        return None;
    }
    let tag = &line[..2];
    if bytes.len() == 2 {
        return Some((tag, ""));
    }
    if bytes[2] != b' ' {
        return None;
    }
    let value = if line.len() > 3 { &line[3..] } else { "" };
    Some((tag, value))
}

/// Record count, year range, and distinct journal/author counts.
pub fn recordset_stats(rs: &RecordSet) -> RecordStats {
    let mut year_range: Option<(i32, i32)> = None;
    let mut journals = std::collections::HashSet::new();
    let mut authors = std::collections::HashSet::new();
    for rec in &rs.records {
        if let Some(y) = rec.year {
            year_range = Some(match year_range {
                Some((lo, hi)) => (lo.min(y), hi.max(y)),
                None => (y, y),
            });
        }
        if !rec.journal.is_empty() {
            journals.insert(rec.journal.as_str());
        }
        for a in &rec.authors {
            authors.insert(a.as_str());
        }
    }
    RecordStats {
        records: rs.records.len(),
        year_range,
        distinct_journals: journals.len(),
        distinct_authors: authors.len(),
    }
}
