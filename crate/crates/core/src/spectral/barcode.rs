use std::collections::BTreeMap;

use super::filtered::FilteredComplex;
use crate::qlinalg::{Field, Reduction};

/// A pair killed by the differential: `x` in degree `degree` at level
/// `death` bounds (modulo lower levels) the class born by `y` in degree
/// `degree - 1` at level `birth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pair {
    pub degree: i64,
    pub birth: i64,
    pub death: i64,
}

impl Pair {
    /// The page index `r` whose differential `d^r` realizes this pair.
    pub fn gap(&self) -> i64 {
        self.death - self.birth
    }
}

/// Pairing decomposition of a filtered complex, from column reduction in
/// filtration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Barcode {
    /// `(degree, level)` of each class surviving to `E^∞`.
    pub essential: Vec<(i64, i64)>,
    pub pairs: Vec<Pair>,
}

/// Basis order of degree `q`: ascending level, ties by index.
pub(crate) fn filtration_order<F: Field>(f: &FilteredComplex<F>, q: i64) -> Vec<usize> {
    let lv = f.levels(q);
    let mut idx: Vec<usize> = (0..lv.len()).collect();
    idx.sort_by_key(|&i| (lv[i], i));
    idx
}

pub fn barcode<F: Field>(f: &FilteredComplex<F>) -> Barcode {
    let c = f.complex();
    let mut killed: BTreeMap<i64, Vec<bool>> = BTreeMap::new();
    let mut killing: BTreeMap<i64, Vec<bool>> = BTreeMap::new();
    let mut pairs = Vec::new();
    for q in c.degrees() {
        killed.insert(q, vec![false; c.dim(q)]);
        killing.insert(q, vec![false; c.dim(q)]);
    }
    for q in c.degrees() {
        if q == c.min_degree() {
            continue;
        }
        let cols = filtration_order(f, q);
        let rows = filtration_order(f, q - 1);
        let m = c.differential(q).submatrix(&rows, &cols);
        let red = Reduction::new(&m, false);
        for (r, col) in red.pivots() {
            let y = rows[r];
            let x = cols[col];
            killed.get_mut(&(q - 1)).unwrap()[y] = true;
            killing.get_mut(&q).unwrap()[x] = true;
            pairs.push(Pair { degree: q, birth: f.level(q - 1, y), death: f.level(q, x) });
        }
    }
    let mut essential = Vec::new();
    for q in c.degrees() {
        for i in 0..c.dim(q) {
            if !killed[&q][i] && !killing[&q][i] {
                essential.push((q, f.level(q, i)));
            }
        }
    }
    essential.sort_unstable();
    pairs.sort_unstable();
    Barcode { essential, pairs }
}

impl Barcode {
    /// `dim E^r_{k,h}` for every nonzero cell, `(k, h) = (level, degree - level)`.
    pub fn page_dims(&self, r: i64) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        let mut bump = |q: i64, p: i64| *out.entry((p, q - p)).or_insert(0) += 1;
        for &(q, p) in &self.essential {
            bump(q, p);
        }
        for pr in &self.pairs {
            if pr.gap() >= r {
                bump(pr.degree - 1, pr.birth);
                bump(pr.degree, pr.death);
            }
        }
        out
    }

    pub fn infinity_dims(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for &(q, p) in &self.essential {
            *out.entry((p, q - p)).or_insert(0) += 1;
        }
        out
    }

    /// Rank of `d^r` leaving each cell.
    pub fn differential_ranks(&self, r: i64) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for pr in self.pairs.iter().filter(|p| p.gap() == r) {
            *out.entry((pr.death, pr.degree - pr.death)).or_insert(0) += 1;
        }
        out
    }

    /// Smallest `r ≥ 1` with `E^r = E^∞`.
    pub fn degeneration_page(&self) -> i64 {
        self.pairs.iter().map(|p| p.gap() + 1).filter(|&g| g >= 1).max().unwrap_or(1).max(1)
    }
}
