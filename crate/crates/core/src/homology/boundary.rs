use std::collections::HashMap;
use std::io::Write;

use crate::complex::{enumerate_faces, ComplexParams, Face};
use crate::error::{Error, Result};

/// `∂_k` from `k`-faces (columns) to `(k-1)`-faces (rows).
///
/// Both index spaces follow the canonical face order. Column `c` holds the
/// entries `(-1)^m` for the face obtained by omitting the `m`-th vertex,
/// `m` counted from 1. For `k = 0` the single row is the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBoundaryMatrix {
    k: i64,
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseBoundaryMatrix {
    pub fn from_columns(k: i64, rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        SparseBoundaryMatrix { k, rows, columns }
    }

    pub fn dimension(&self) -> i64 {
        self.k
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Column entries sorted by row.
    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, i64)>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map(|i| self.columns[col][i].1)
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m[r][c] = v;
            }
        }
        m
    }

    /// Relabels rows and columns: old row `r` moves to `row_perm[r]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols());
        let mut columns = vec![Vec::new(); self.cols()];
        for (c, col) in self.columns.iter().enumerate() {
            let mut moved: Vec<(usize, i64)> = col.iter().map(|&(r, v)| (row_perm[r], v)).collect();
            moved.sort_unstable();
            columns[col_perm[c]] = moved;
        }
        SparseBoundaryMatrix {
            k: self.k,
            rows: self.rows,
            columns,
        }
    }

    /// Coordinate triplets, 1-based, after a `%%` header with the shape.
    pub fn write_triplets<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "%% {} {} {}", self.rows, self.cols(), self.nnz())?;
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                writeln!(out, "{} {} {}", r + 1, c + 1, v)?;
            }
        }
        Ok(())
    }
}

/// Builds `∂_k` for `0 ≤ k ≤ n - 1`.
pub fn boundary_matrix(params: &ComplexParams, k: i64, budget: u64) -> Result<SparseBoundaryMatrix> {
    if k < 0 || k > params.max_dim() {
        return Err(Error::domain(format!(
            "boundary dimension {k} outside [0, {}]",
            params.max_dim()
        )));
    }
    params.check_budget(budget, k)?;
    let index: HashMap<Face, usize> = enumerate_faces(params, k - 1)
        .enumerate()
        .map(|(i, f)| (f, i))
        .collect();
    let columns = enumerate_faces(params, k)
        .map(|face| {
            let mut col: Vec<(usize, i64)> = (0..face.len())
                .map(|l| {
                    let sign = if (l + 1) % 2 == 0 { 1 } else { -1 };
                    (index[&face.without(l)], sign)
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    Ok(SparseBoundaryMatrix {
        k,
        rows: index.len(),
        columns,
    })
}

/// Whether `lower · upper` vanishes, where `lower = ∂_k` and `upper = ∂_{k+1}`.
pub fn composes_to_zero(lower: &SparseBoundaryMatrix, upper: &SparseBoundaryMatrix) -> bool {
    if lower.cols() != upper.rows() {
        return false;
    }
    upper.columns.iter().all(|col| {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &(mid, a) in col {
            for &(r, b) in lower.column(mid) {
                *acc.entry(r).or_insert(0) += a * b;
            }
        }
        acc.values().all(|&v| v == 0)
    })
}
