use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => acc.add_assign(&c),
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    /// Entry with the largest index.
    pub fn lead(&self) -> Option<&(usize, F)> {
        self.entries.last()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, a)| (*i, a.mul(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, a)| (*i, a.neg())).collect() }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &F, other: &SparseVec<F>) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while a < x.len() || b < y.len() {
            if b == y.len() || (a < x.len() && x[a].0 < y[b].0) {
                out.push(x[a].clone());
                a += 1;
            } else if a == x.len() || y[b].0 < x[a].0 {
                out.push((y[b].0, y[b].1.mul(c)));
                b += 1;
            } else {
                let s = x[a].1.add(&y[b].1.mul(c));
                if !s.is_zero() {
                    out.push((x[a].0, s));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec<F>) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &SparseVec<F>) -> Self {
        self.axpy(&F::one().neg(), other)
    }

    pub fn dot(&self, other: &SparseVec<F>) -> F {
        let mut acc = F::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, j) = (self.entries[a].0, other.entries[b].0);
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                acc.add_assign(&self.entries[a].1.mul(&other.entries[b].1));
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Reindexes through `map`; entries mapped to `None` are dropped.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> Self {
        SparseVec::from_pairs(self.entries.iter().filter_map(|(i, c)| map(*i).map(|j| (j, c.clone()))).collect())
    }

    pub fn shift(&self, offset: usize) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, c)| (i + offset, c.clone())).collect() }
    }
}

impl<F: fmt::Debug> fmt::Debug for SparseVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, c)| (i, c))).finish()
    }
}

/// Column-major sparse matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMat<F> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMat<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat { rows: n, cols: n, columns: (0..n).map(SparseVec::unit).collect() }
    }

    /// Panics if a column refers to a row out of range.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<F>>) -> Self {
        for c in &columns {
            if let Some(m) = c.max_index() {
                assert!(m < rows, "row index {m} out of range {rows}");
            }
        }
        SparseMat { rows, cols: columns.len(), columns }
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, F)>) -> Result<Self> {
        let mut per_col: Vec<Vec<(usize, F)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::input(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            per_col[c].push((r, v));
        }
        Ok(SparseMat { rows, cols, columns: per_col.into_iter().map(SparseVec::from_pairs).collect() })
    }

    /// Row-major dense input.
    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let trip = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(r, c, trip).expect("dense shape")
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let conv: Vec<Vec<F>> = rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect();
        Self::from_dense(&conv)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> &SparseVec<F> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.columns[c].get(r)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn mul_vec(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut pairs = Vec::new();
        for (j, a) in v.entries() {
            for (i, b) in self.columns[*j].entries() {
                pairs.push((*i, b.mul(a)));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn mul(&self, other: &SparseMat<F>) -> Result<SparseMat<F>> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "shape mismatch {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(SparseMat { rows: self.rows, cols: other.cols, columns: other.columns.iter().map(|c| self.mul_vec(c)).collect() })
    }

    pub fn add(&self, other: &SparseMat<F>) -> Result<SparseMat<F>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::input("shape mismatch in addition"));
        }
        Ok(SparseMat {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn scale(&self, c: &F) -> SparseMat<F> {
        SparseMat { rows: self.rows, cols: self.cols, columns: self.columns.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn transpose(&self) -> SparseMat<F> {
        let mut per_row: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.entries() {
                per_row[*i].push((j, v.clone()));
            }
        }
        SparseMat { rows: self.cols, cols: self.rows, columns: per_row.into_iter().map(|e| SparseVec { entries: e }).collect() }
    }

    /// Rows `row_sel` (in that order) and columns `col_sel`.
    pub fn submatrix(&self, row_sel: &[usize], col_sel: &[usize]) -> SparseMat<F> {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, &r) in row_sel.iter().enumerate() {
            pos[r] = k;
        }
        let columns = col_sel
            .iter()
            .map(|&c| self.columns[c].remap(|i| (pos[i] != usize::MAX).then_some(pos[i])))
            .collect();
        SparseMat { rows: row_sel.len(), cols: col_sel.len(), columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.entries() {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &SparseMat<F>) -> SparseMat<F> {
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().map(|c| c.shift(self.rows)));
        SparseMat { rows: self.rows + other.rows, cols: self.cols + other.cols, columns }
    }

    pub fn hstack(&self, other: &SparseMat<F>) -> Result<SparseMat<F>> {
        if self.rows != other.rows {
            return Err(Error::input("hstack row mismatch"));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(SparseMat { rows: self.rows, cols: self.cols + other.cols, columns })
    }
}

impl<F: fmt::Debug> fmt::Debug for SparseMat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMat {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.columns.iter()).finish()
    }
}
