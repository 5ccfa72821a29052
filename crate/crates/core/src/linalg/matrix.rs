use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::echelon::Echelon;
use crate::arith::{primitive_integer_vector, Rational};
use crate::error::{Error, Result};

/// Sparse vector: `(index, value)` pairs with strictly increasing indices and
/// no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Exact rational matrix stored by sparse columns. Equality ignores the
/// basis tags.
#[derive(Clone)]
pub struct RatMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
    row_tag: String,
    col_tag: String,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols: vec![Vec::new(); cols],
            row_tag: String::new(),
            col_tag: String::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (j, col) in m.cols.iter_mut().enumerate() {
            col.push((j, Rational::one()));
        }
        m
    }

    /// Builds a matrix from columns; entries are sorted and zeros dropped.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                let mut merged: SparseVec = Vec::with_capacity(c.len());
                for (i, v) in c {
                    assert!(i < rows, "row index {} out of range {}", i, rows);
                    match merged.last_mut() {
                        Some((j, acc)) if *j == i => *acc += &v,
                        _ => merged.push((i, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                merged
            })
            .collect();
        RatMatrix {
            rows,
            cols,
            row_tag: String::new(),
            col_tag: String::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i, Rational::from(rows[i][j])))
                    .collect()
            })
            .collect();
        RatMatrix {
            rows: nrows,
            cols,
            row_tag: String::new(),
            col_tag: String::new(),
        }
    }

    /// Attaches basis descriptions used by the debug dump.
    pub fn with_tags(mut self, rows: impl Into<String>, cols: impl Into<String>) -> Self {
        self.row_tag = rows.into();
        self.col_tag = cols.into();
        self
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.cols[j]
            .iter()
            .find(|e| e.0 == i)
            .map(|e| e.1.clone())
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.ncols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.rows, self.ncols());
        }
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, v * factor)).collect())
            .collect();
        RatMatrix {
            rows: self.rows,
            cols,
            row_tag: self.row_tag.clone(),
            col_tag: self.col_tag.clone(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.rows);
        for (j, x) in v {
            acc.axpy(x, &self.cols[*j]);
        }
        acc.drain_sorted()
    }

    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.ncols() != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows,
                self.ncols(),
                rhs.rows,
                rhs.ncols()
            )));
        }
        let mut acc = Accumulator::new(self.rows);
        let cols = rhs
            .cols
            .iter()
            .map(|c| {
                for (j, x) in c {
                    acc.axpy(x, &self.cols[*j]);
                }
                acc.drain_sorted()
            })
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols,
            row_tag: self.row_tag.clone(),
            col_tag: rhs.col_tag.clone(),
        })
    }

    /// Places `block` with its top-left corner at `(row, col)`; entries
    /// already present are overwritten by addition.
    pub fn add_block(&mut self, row: usize, col: usize, block: &RatMatrix) {
        assert!(row + block.rows <= self.rows && col + block.ncols() <= self.ncols());
        for (j, bcol) in block.cols.iter().enumerate() {
            let target = &mut self.cols[col + j];
            let shifted: SparseVec = bcol.iter().map(|(i, v)| (row + i, v.clone())).collect();
            *target = merge_add(target, &shifted);
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.rows);
        self.cols.iter().filter(|c| ech.insert(c).is_some()).count()
    }

    /// Kernel basis as primitive integer vectors. The `i`-th vector has its
    /// last nonzero entry at a non-pivot column, so the basis is triangular.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::with_tracking(self.rows, self.ncols());
        let mut kernel = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            if let Some(expr) = ech.insert_tracked(col, j).err() {
                kernel.push(primitive(&expr));
            }
        }
        kernel
    }

    /// Basis of the column space, taken from the matrix's own columns
    /// (leftmost independent ones).
    pub fn image_basis(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::new(self.rows);
        self.cols
            .iter()
            .filter(|c| ech.insert(c).is_some())
            .cloned()
            .collect()
    }

    /// JSON dump with basis tags, for debugging.
    pub fn debug_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            row: usize,
            col: usize,
            value: String,
        }
        let entries: Vec<Entry> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| {
                c.iter().map(move |(i, v)| Entry {
                    row: *i,
                    col: j,
                    value: v.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "rows": self.rows,
            "cols": self.ncols(),
            "row_basis": self.row_tag,
            "col_basis": self.col_tag,
            "entries": entries,
        })
    }
}

impl PartialEq for RatMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }
}

impl Eq for RatMatrix {}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.ncols())?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

fn primitive(v: &SparseVec) -> SparseVec {
    let values: Vec<Rational> = v.iter().map(|e| e.1.clone()).collect();
    primitive_integer_vector(&values)
        .into_iter()
        .zip(v)
        .map(|(c, (i, _))| (*i, Rational::from(c)))
        .collect()
}

pub(crate) fn merge_add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let s = &a[i].1 + &b[j].1;
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Dense scratch space for sparse linear combinations.
pub(crate) struct Accumulator {
    values: Vec<Rational>,
    touched: Vec<bool>,
    support: Vec<usize>,
}

impl Accumulator {
    pub(crate) fn new(len: usize) -> Self {
        Accumulator {
            values: vec![Rational::zero(); len],
            touched: vec![false; len],
            support: Vec::new(),
        }
    }

    pub(crate) fn add(&mut self, i: usize, x: &Rational) {
        if !self.touched[i] {
            self.touched[i] = true;
            self.support.push(i);
        }
        self.values[i] += x;
    }

    pub(crate) fn axpy(&mut self, alpha: &Rational, v: &SparseVec) {
        for (i, x) in v {
            let mut slot = std::mem::take(&mut self.values[*i]);
            slot = slot.add_product(alpha, x);
            self.values[*i] = slot;
            if !self.touched[*i] {
                self.touched[*i] = true;
                self.support.push(*i);
            }
        }
    }

    pub(crate) fn drain_sorted(&mut self) -> SparseVec {
        self.support.sort_unstable();
        let mut out = Vec::with_capacity(self.support.len());
        for &i in &self.support {
            self.touched[i] = false;
            let v = std::mem::take(&mut self.values[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.support.clear();
        out
    }
}
