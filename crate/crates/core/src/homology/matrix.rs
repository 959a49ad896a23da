use std::collections::HashMap;

/// Sparse integer matrix stored by column; each column lists `(row, value)`
/// with strictly increasing rows and nonzero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Columns are sorted and zero entries dropped; repeated rows are summed.
    ///
    /// # Panics
    /// If a row index is out of range.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|mut col| {
                assert!(col.iter().all(|&(r, _)| r < rows), "row index out of range");
                col.sort_unstable_by_key(|&(r, _)| r);
                let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    match out.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|&(_, v)| v != 0);
                out
            })
            .collect();
        IntMatrix { rows, columns }
    }

    /// # Panics
    /// If the rows have different lengths.
    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let cols = dense.first().map_or(0, Vec::len);
        assert!(dense.iter().all(|r| r.len() == cols), "ragged matrix");
        let columns = (0..cols)
            .map(|c| {
                dense
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r[c] != 0)
                    .map(|(i, r)| (i, r[c]))
                    .collect()
            })
            .collect();
        IntMatrix {
            rows: dense.len(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let col = &self.columns[c];
        col.binary_search_by_key(&r, |&(row, _)| row).map_or(0, |i| col[i].1)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = v;
            }
        }
        out
    }

    /// Row-major copy: each row lists `(column, value)` by increasing column.
    pub(crate) fn row_lists(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                rows[r].push((c, v));
            }
        }
        rows
    }

    /// `self · other`, or `None` on overflow or a shape mismatch.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        if self.cols() != other.rows {
            return None;
        }
        let mut columns = Vec::with_capacity(other.cols());
        for col in &other.columns {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    let e = acc.entry(r).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            columns.push(acc.into_iter().collect());
        }
        Some(IntMatrix::from_columns(self.rows, columns))
    }
}
