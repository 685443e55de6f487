//! Binary document-by-attribute occurrence matrices and period slicing.
//!
//! Rows are documents, columns are cataloged attributes, and a cell is 1
//! exactly when the document carries the attribute. Column sums therefore
//! reproduce the catalog's document frequencies. Matrices can be sliced
//! into consecutive half-open year windows for time-resolved maps.

use crate::attributes::{Attribute, AttributeCatalog};
use crate::wos::Record;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("row {row} has {got} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("column selection index {index} out of range for {columns} columns")]
    ColumnOutOfRange { index: usize, columns: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SliceError {
    #[error("period end {end} must be after start {start}")]
    BadRange { start: i32, end: i32 },
    #[error("period width must be positive, got {width}")]
    BadWidth { width: i32 },
}

/// Binary occurrence matrix over a fixed attribute list.
#[derive(Debug, Clone, PartialEq)]
pub struct OccurrenceMatrix {
    /// Document ids, parallel to rows.
    pub doc_ids: Vec<usize>,
    /// Column attributes, in catalog order.
    pub attributes: Vec<Attribute>,
    /// Row-major binary cells; `rows[i][j] == 1` when document `i`
    /// carries attribute `j`.
    pub rows: Vec<Vec<u8>>,
}

impl OccurrenceMatrix {
    pub fn n_docs(&self) -> usize {
        self.rows.len()
    }

    pub fn n_attrs(&self) -> usize {
        self.attributes.len()
    }

    /// Number of documents carrying column `j`.
    pub fn column_sum(&self, j: usize) -> usize {
        self.rows.iter().map(|r| r[j] as usize).sum()
    }

    /// Verify all rows have the same width as the attribute list.
    pub fn check_shape(&self) -> Result<(), ShapeError> {
        let expected = self.attributes.len();
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != expected {
                return Err(ShapeError::RaggedRow {
                    row: i,
                    got: row.len(),
                    expected,
                });
            }
        }
        Ok(())
    }
}

/// One time window with the documents falling inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodSlice {
    /// First year of the window (inclusive).
    pub start: i32,
    /// End of the window (exclusive).
    pub end: i32,
    /// Indices into the original record list.
    pub record_indices: Vec<usize>,
}

impl PeriodSlice {
    /// Human-readable inclusive label, e.g. "1975-1979".
    pub fn label(&self) -> String {
        format!("{}-{}", self.start, self.end - 1)
    }
}

/// Materialize the catalog's record/attribute incidence as a binary matrix.
pub fn build_matrix(catalog: &AttributeCatalog, records: &[Record]) -> OccurrenceMatrix {
    let n_attrs = catalog.attributes.len();
    let mut rows = Vec::with_capacity(records.len());
    let mut doc_ids = Vec::with_capacity(records.len());
    for (i, rec) in records.iter().enumerate() {
        let mut row = vec![0u8; n_attrs];
        for &j in &catalog.record_attrs[i] {
            row[j] = 1;
        }
        rows.push(row);
        doc_ids.push(rec.id);
    }
    OccurrenceMatrix {
        doc_ids,
        attributes: catalog.attributes.clone(),
        rows,
    }
}

/// Partition records into consecutive half-open windows
/// `[start, start+width), [start+width, start+2·width), …` up to `end`.
///
/// The final window is shortened to end exactly at `end`. Records without
/// a year are excluded; their indices are returned alongside the slices.
pub fn slice_by_period(
    records: &[Record],
    start: i32,
    width: i32,
    end: i32,
) -> Result<(Vec<PeriodSlice>, Vec<usize>), SliceError> {
    if width <= 0 {
        return Err(SliceError::BadWidth { width });
    }
    if end <= start {
        return Err(SliceError::BadRange { start, end });
    }
    let mut slices = Vec::new();
    let mut lo = start;
    while lo < end {
        let hi = (lo + width).min(end);
        slices.push(PeriodSlice {
            start: lo,
            end: hi,
            record_indices: Vec::new(),
        });
        lo = hi;
    }
    let mut undated = Vec::new();
    for (i, rec) in records.iter().enumerate() {
        match rec.year {
            Some(y) if y >= start && y < end => {
                let k = ((y - start) / width) as usize;
                // the last slice may be narrower than `width`
                let k = k.min(slices.len() - 1);
                debug_assert!(y >= slices[k].start && y < slices[k].end);
                slices[k].record_indices.push(i);
            }
            Some(_) => {} // outside the requested range
            None => undated.push(i),
        }
    }
    Ok((slices, undated))
}

/// Restrict a matrix to a subset of rows and columns.
///
/// `row_indices` index into `matrix.rows`; `col_indices` into
/// `matrix.attributes`. Order is preserved as given.
pub fn submatrix(
    matrix: &OccurrenceMatrix,
    row_indices: &[usize],
    col_indices: &[usize],
) -> Result<OccurrenceMatrix, ShapeError> {
    for &j in col_indices {
        if j >= matrix.n_attrs() {
            return Err(ShapeError::ColumnOutOfRange {
                index: j,
                columns: matrix.n_attrs(),
            });
        }
    }
    for &i in row_indices {
        if i >= matrix.rows.len() {
            return Err(ShapeError::ColumnOutOfRange {
                index: i,
                columns: matrix.rows.len(),
            });
        }
    }
    let attributes = col_indices
        .iter()
        .map(|&j| matrix.attributes[j].clone())
        .collect();
    let rows = row_indices
        .iter()
        .map(|&i| col_indices.iter().map(|&j| matrix.rows[i][j]).collect())
        .collect();
    let doc_ids = row_indices.iter().map(|&i| matrix.doc_ids[i]).collect();
    Ok(OccurrenceMatrix {
        doc_ids,
        attributes,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attributes::{build_catalog, StopwordList, Thresholds};
    use crate::wos::Record;

    fn rec(id: usize, authors: &[&str], title: &str, journal: &str, year: Option<i32>) -> Record {
        Record {
            id,
            authors: authors.iter().map(|s| s.to_string()).collect(),
            title: title.to_string(),
            journal: journal.to_string(),
            year,
        }
    }

    fn small_corpus() -> Vec<Record> {
        vec![
            rec(0, &["ahn s"], "Battery Cathode Aging", "energy letters", Some(1975)),
            rec(1, &["baker t"], "Battery Anode Aging", "energy letters", Some(1979)),
            rec(2, &["cho d"], "Battery Electrolyte Aging", "power sources", Some(1980)),
            rec(3, &["ahn s"], "Cathode Microscopy", "power sources", None),
        ]
    }

    fn small_matrix() -> OccurrenceMatrix {
        let records = small_corpus();
        let sw = StopwordList::default_english();
        let cat = build_catalog(&records, &Thresholds::default(), &sw);
        build_matrix(&cat, &records)
    }

    #[test]
    fn column_sums_equal_catalog_frequencies() {
        let m = small_matrix();
        for (j, attr) in m.attributes.iter().enumerate() {
            assert_eq!(m.column_sum(j), attr.frequency, "column {}", attr.label);
        }
    }

    #[test]
    fn cells_are_binary_and_shape_checks() {
        let m = small_matrix();
        m.check_shape().unwrap();
        assert!(m.rows.iter().flatten().all(|&c| c == 0 || c == 1));
        assert_eq!(m.n_docs(), 4);
    }

    #[test]
    fn ragged_rows_are_detected() {
        let mut m = small_matrix();
        m.rows[1].pop();
        let err = m.check_shape().unwrap_err();
        assert!(matches!(err, ShapeError::RaggedRow { row: 1, .. }));
    }

    #[test]
    fn slices_cover_range_without_overlap() {
        let records = small_corpus();
        let (slices, undated) = slice_by_period(&records, 1975, 5, 1985).unwrap();
        assert_eq!(slices.len(), 2);
        assert_eq!((slices[0].start, slices[0].end), (1975, 1980));
        assert_eq!((slices[1].start, slices[1].end), (1980, 1985));
        assert_eq!(slices[0].record_indices, vec![0, 1]);
        assert_eq!(slices[1].record_indices, vec![2]);
        assert_eq!(undated, vec![3]);
    }

    #[test]
    fn final_slice_is_shortened() {
        let (slices, _) = slice_by_period(&small_corpus(), 1975, 4, 1981).unwrap();
        assert_eq!(slices.len(), 2);
        assert_eq!((slices[1].start, slices[1].end), (1979, 1981));
        assert_eq!(slices[1].label(), "1979-1980");
    }

    #[test]
    fn boundary_year_goes_to_later_slice() {
        // 1980 sits at the boundary: excluded from [1975,1980), included in [1980,1985)
        let records = small_corpus();
        let (slices, _) = slice_by_period(&records, 1975, 5, 1985).unwrap();
        assert!(!slices[0].record_indices.contains(&2));
        assert!(slices[1].record_indices.contains(&2));
    }

    #[test]
    fn bad_ranges_are_rejected() {
        let records = small_corpus();
        assert_eq!(
            slice_by_period(&records, 1990, 5, 1990).unwrap_err(),
            SliceError::BadRange { start: 1990, end: 1990 }
        );
        assert_eq!(
            slice_by_period(&records, 1990, 0, 2000).unwrap_err(),
            SliceError::BadWidth { width: 0 }
        );
    }

    #[test]
    fn out_of_range_years_are_silently_outside() {
        let records = small_corpus();
        let (slices, undated) = slice_by_period(&records, 1978, 2, 1980).unwrap();
        assert_eq!(slices.len(), 1);
        assert_eq!(slices[0].record_indices, vec![1]);
        // record 0 (1975) and record 2 (1980) fall outside; only the
        // undated record is reported separately
        assert_eq!(undated, vec![3]);
    }

    #[test]
    fn submatrix_preserves_cells() {
        let m = small_matrix();
        let j_battery = m
            .attributes
            .iter()
            .position(|a| a.label == "battery")
            .unwrap();
        let sub = submatrix(&m, &[0, 2], &[j_battery]).unwrap();
        assert_eq!(sub.n_docs(), 2);
        assert_eq!(sub.n_attrs(), 1);
        assert_eq!(sub.rows, vec![vec![1], vec![1]]);
        assert_eq!(sub.doc_ids, vec![0, 2]);
    }

    #[test]
    fn submatrix_rejects_out_of_range() {
        let m = small_matrix();
        assert!(submatrix(&m, &[0], &[999]).is_err());
        assert!(submatrix(&m, &[999], &[0]).is_err());
    }

    #[test]
    fn period_label_is_inclusive() {
        let p = PeriodSlice {
            start: 1975,
            end: 1980,
            record_indices: vec![],
        };
        assert_eq!(p.label(), "1975-1979");
    }
}
