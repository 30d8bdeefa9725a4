use std::collections::HashMap;

use super::field::Field;
use super::sparse::{SparseMat, SparseVec};
use crate::error::{Error, Result};

/// Column reduction `R = M·V` with pivots on the largest row index of each
/// surviving column. Pivot columns of `R` are normalized to leading entry 1.
///
/// The lowest-row pivot rule is the one persistence reduction uses, so the
/// same object serves rank, kernel, solve and barcode extraction.
#[derive(Clone, Debug)]
pub struct Reduction<F> {
    rows: usize,
    cols: usize,
    pivot_of_row: HashMap<usize, usize>,
    reduced: Vec<SparseVec<F>>,
    v: Option<Vec<SparseVec<F>>>,
}

impl<F: Field> Reduction<F> {
    pub fn new(m: &SparseMat<F>, track_v: bool) -> Self {
        let mut pivot_of_row: HashMap<usize, usize> = HashMap::new();
        let mut reduced: Vec<SparseVec<F>> = Vec::with_capacity(m.cols());
        let mut v: Vec<SparseVec<F>> = Vec::new();
        for j in 0..m.cols() {
            let mut col = m.col(j).clone();
            let mut vj = if track_v { SparseVec::unit(j) } else { SparseVec::new() };
            while let Some((r, a)) = col.lead().cloned() {
                match pivot_of_row.get(&r) {
                    Some(&k) => {
                        let c = a.neg();
                        col = col.axpy(&c, &reduced[k]);
                        if track_v {
                            vj = vj.axpy(&c, &v[k]);
                        }
                    }
                    None => {
                        let s = a.inv();
                        col = col.scale(&s);
                        if track_v {
                            vj = vj.scale(&s);
                        }
                        pivot_of_row.insert(r, j);
                        break;
                    }
                }
            }
            reduced.push(col);
            if track_v {
                v.push(vj);
            }
        }
        Reduction { rows: m.rows(), cols: m.cols(), pivot_of_row, reduced, v: track_v.then_some(v) }
    }

    pub fn rank(&self) -> usize {
        self.pivot_of_row.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column whose reduced form has its lead in `row`.
    pub fn pivot_col(&self, row: usize) -> Option<usize> {
        self.pivot_of_row.get(&row).copied()
    }

    /// `(row, col)` pivot pairs sorted by column.
    pub fn pivots(&self) -> Vec<(usize, usize)> {
        let mut p: Vec<(usize, usize)> = self.pivot_of_row.iter().map(|(&r, &c)| (r, c)).collect();
        p.sort_by_key(|x| x.1);
        p
    }

    pub fn reduced_col(&self, j: usize) -> &SparseVec<F> {
        &self.reduced[j]
    }

    /// Column `j` of `V`; requires tracking.
    pub fn v_col(&self, j: usize) -> &SparseVec<F> {
        &self.v.as_ref().expect("reduction built without V")[j]
    }

    pub fn kernel_basis(&self) -> Vec<SparseVec<F>> {
        let v = self.v.as_ref().expect("reduction built without V");
        (0..self.cols).filter(|&j| self.reduced[j].is_zero()).map(|j| v[j].clone()).collect()
    }

    /// Reduces `b` against the pivot columns. Returns the remainder and the
    /// coefficients `c` with `b = Σ c_k R_k + remainder`.
    pub fn reduce(&self, b: &SparseVec<F>) -> (SparseVec<F>, Vec<(usize, F)>) {
        let mut rest = b.clone();
        let mut coeffs = Vec::new();
        while let Some((r, a)) = rest.lead().cloned() {
            match self.pivot_of_row.get(&r) {
                Some(&k) => {
                    rest = rest.axpy(&a.neg(), &self.reduced[k]);
                    coeffs.push((k, a));
                }
                None => break,
            }
        }
        (rest, coeffs)
    }

    /// `x` with `M x = b`, or `None` when `b` is not in the column space.
    pub fn solve(&self, b: &SparseVec<F>) -> Option<SparseVec<F>> {
        let (rest, coeffs) = self.reduce(b);
        if !rest.is_zero() {
            return None;
        }
        let v = self.v.as_ref().expect("reduction built without V");
        let mut x = SparseVec::new();
        for (k, c) in coeffs {
            x = x.axpy(&c, &v[k]);
        }
        Some(x)
    }
}

pub fn rank<F: Field>(m: &SparseMat<F>) -> usize {
    Reduction::new(m, false).rank()
}

#[derive(Clone, Debug)]
pub struct Decomposition<F> {
    pub rank: usize,
    pub kernel_basis: Vec<SparseVec<F>>,
    pub image_basis: Vec<SparseVec<F>>,
}

/// Rank, a kernel basis and a column-space basis (original pivot columns).
pub fn decompose<F: Field>(m: &SparseMat<F>) -> Decomposition<F> {
    let red = Reduction::new(m, true);
    let mut pivot_cols: Vec<usize> = red.pivots().into_iter().map(|p| p.1).collect();
    pivot_cols.sort_unstable();
    Decomposition {
        rank: red.rank(),
        kernel_basis: red.kernel_basis(),
        image_basis: pivot_cols.into_iter().map(|j| m.col(j).clone()).collect(),
    }
}

/// Solves `m x = v`. `Ok(None)` is the not-in-image sentinel.
pub fn solve<F: Field>(m: &SparseMat<F>, v: &SparseVec<F>) -> Result<Option<SparseVec<F>>> {
    if let Some(i) = v.max_index() {
        if i >= m.rows() {
            return Err(Error::input(format!("vector index {i} outside {} rows", m.rows())));
        }
    }
    Ok(Reduction::new(m, true).solve(v))
}

/// Incrementally built basis of a subspace, in echelon form, remembering how
/// every stored vector is expressed through the inserted generators.
#[derive(Clone, Debug, Default)]
pub struct Echelon<F> {
    pivot_of_lead: HashMap<usize, usize>,
    vectors: Vec<SparseVec<F>>,
    combos: Vec<SparseVec<F>>,
    generators: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { pivot_of_lead: HashMap::new(), vectors: Vec::new(), combos: Vec::new(), generators: 0 }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Number of `insert` calls so far; generator ids are `0..generators()`.
    pub fn generators(&self) -> usize {
        self.generators
    }

    fn reduce_with_combo(&self, v: &SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut rest = v.clone();
        let mut combo = SparseVec::new();
        while let Some((r, a)) = rest.lead().cloned() {
            match self.pivot_of_lead.get(&r) {
                Some(&k) => {
                    rest = rest.axpy(&a.neg(), &self.vectors[k]);
                    combo = combo.axpy(&a, &self.combos[k]);
                }
                None => break,
            }
        }
        (rest, combo)
    }

    /// Inserts `v` as generator number `generators()`; returns whether it
    /// enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let id = self.generators;
        self.generators += 1;
        let (rest, combo) = self.reduce_with_combo(v);
        let Some((r, a)) = rest.lead().cloned() else {
            return false;
        };
        let s = a.inv();
        // rest = v - combo·gens, so rest/a = (e_id - combo)/a in generator terms.
        let combo = SparseVec::unit(id).sub(&combo).scale(&s);
        self.pivot_of_lead.insert(r, self.vectors.len());
        self.vectors.push(rest.scale(&s));
        self.combos.push(combo);
        true
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce_with_combo(v).0.is_zero()
    }

    /// Coefficients over the generators expressing `v`, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let (rest, combo) = self.reduce_with_combo(v);
        rest.is_zero().then_some(combo)
    }

    /// Remainder of `v` after reduction; zero iff `v` is in the span.
    pub fn remainder(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.reduce_with_combo(v).0
    }

    /// Remainder with every pivot position cleared, not only the lead. The
    /// result is supported on non-pivot indices, which makes it the
    /// canonical representative of `v` modulo the span.
    pub fn normal_form(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut rest = v.clone();
        let mut bound = usize::MAX;
        loop {
            let hit = rest
                .entries()
                .iter()
                .rev()
                .find(|(i, _)| *i < bound && self.pivot_of_lead.contains_key(i))
                .cloned();
            let Some((r, a)) = hit else { break };
            let k = self.pivot_of_lead[&r];
            rest = rest.axpy(&a.neg(), &self.vectors[k]);
            bound = r;
        }
        rest
    }

    /// Indices that are leads of stored vectors.
    pub fn pivot_positions(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_of_lead.keys().copied().collect();
        p.sort_unstable();
        p
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.vectors
    }
}
