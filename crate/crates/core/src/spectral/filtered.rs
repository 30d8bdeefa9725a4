use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complexes::{ChainComplex, Orientation};
use crate::error::{Error, Result};
use crate::qlinalg::{Echelon, Field, SparseMat, SparseVec};

/// Chain complex with an increasing filtration given by an adapted basis:
/// `F_p C_q` is spanned by the basis vectors of degree `q` whose level is `≤ p`.
#[derive(Clone, Debug)]
pub struct FilteredComplex<F> {
    complex: Arc<ChainComplex<F>>,
    levels: BTreeMap<i64, Vec<i64>>,
}

impl<F: Field> FilteredComplex<F> {
    /// `levels[q][i]` is the filtration level of basis vector `i` in degree `q`.
    pub fn new(complex: Arc<ChainComplex<F>>, levels: BTreeMap<i64, Vec<i64>>) -> Result<Self> {
        if complex.orientation() != Orientation::Chain {
            return Err(Error::input("filtered complexes are homologically graded"));
        }
        for q in complex.degrees() {
            let lv = levels.get(&q).map_or(0, |l| l.len());
            if lv != complex.dim(q) {
                return Err(Error::input(format!("degree {q}: {lv} levels for {} basis vectors", complex.dim(q))));
            }
        }
        let f = FilteredComplex { complex, levels };
        for q in f.complex.degrees() {
            let d = f.complex.differential(q);
            for (j, col) in d.columns().iter().enumerate() {
                let pj = f.level(q, j);
                if let Some(&(i, _)) = col.entries().iter().find(|(i, _)| f.level(q - 1, *i) > pj) {
                    return Err(Error::input(format!(
                        "differential raises filtration: degree {q} vector {j} (level {pj}) hits level {}",
                        f.level(q - 1, i)
                    )));
                }
            }
        }
        Ok(f)
    }

    /// Single-level filtration.
    pub fn trivial(complex: Arc<ChainComplex<F>>) -> Result<Self> {
        let levels = complex.degrees().map(|q| (q, vec![0; complex.dim(q)])).collect();
        Self::new(complex, levels)
    }

    /// Filtration given by nested subspaces: `subspaces[q]` maps a level `p`
    /// to spanning vectors of `F_p C_q`. The top level must span `C_q`.
    /// Returns the complex rewritten in an adapted basis and the basis change
    /// (columns are the adapted vectors in the original coordinates).
    pub fn from_subspaces(
        complex: &ChainComplex<F>,
        subspaces: &BTreeMap<i64, BTreeMap<i64, Vec<SparseVec<F>>>>,
    ) -> Result<(Self, BTreeMap<i64, SparseMat<F>>)> {
        let mut bases: BTreeMap<i64, (Vec<SparseVec<F>>, Vec<i64>)> = BTreeMap::new();
        for q in complex.degrees() {
            let empty = BTreeMap::new();
            let levels = subspaces.get(&q).unwrap_or(&empty);
            let mut e = Echelon::new();
            let mut vecs = Vec::new();
            let mut lv = Vec::new();
            let mut prev: Option<Echelon<F>> = None;
            for (&p, span) in levels {
                if let Some(pe) = &prev {
                    let mut cur = Echelon::new();
                    for v in span {
                        cur.insert(v);
                    }
                    for b in pe.basis() {
                        if !cur.contains(b) {
                            return Err(Error::input(format!("degree {q}: level {p} does not contain the previous level")));
                        }
                    }
                }
                for v in span {
                    if e.insert(v) {
                        vecs.push(v.clone());
                        lv.push(p);
                    }
                }
                let mut snap = Echelon::new();
                for v in span {
                    snap.insert(v);
                }
                prev = Some(snap);
            }
            if vecs.len() != complex.dim(q) {
                return Err(Error::input(format!("degree {q}: filtration is not exhaustive")));
            }
            bases.insert(q, (vecs, lv));
        }
        let mut coords: BTreeMap<i64, Echelon<F>> = BTreeMap::new();
        for (&q, (vecs, _)) in &bases {
            let mut e = Echelon::new();
            for v in vecs {
                e.insert(v);
            }
            coords.insert(q, e);
        }
        let mut dims = Vec::new();
        let mut diffs = Vec::new();
        let mut change = BTreeMap::new();
        for q in complex.degrees() {
            let (vecs, _) = &bases[&q];
            dims.push(vecs.len());
            change.insert(q, SparseMat::from_columns(complex.dim(q), vecs.clone()));
            let d = complex.differential(q);
            let rows = complex.dim(q - 1);
            let mut cols = Vec::new();
            for v in vecs {
                let dv = d.mul_vec(v);
                let c = match coords.get(&(q - 1)) {
                    Some(e) => e.coordinates(&dv).ok_or_else(|| Error::defect("adapted basis does not span"))?,
                    None => SparseVec::new(),
                };
                cols.push(c);
            }
            diffs.push(SparseMat::from_columns(rows, cols));
        }
        let cx = Arc::new(ChainComplex::chain(complex.min_degree(), dims, diffs)?);
        let levels = bases.into_iter().map(|(q, (_, lv))| (q, lv)).collect();
        Ok((Self::new(cx, levels)?, change))
    }

    pub fn complex(&self) -> &Arc<ChainComplex<F>> {
        &self.complex
    }

    pub fn level(&self, q: i64, i: usize) -> i64 {
        self.levels[&q][i]
    }

    pub fn levels(&self, q: i64) -> &[i64] {
        self.levels.get(&q).map_or(&[], |v| v.as_slice())
    }

    /// Distinct levels present in degree `q`, ascending.
    pub fn distinct_levels(&self, q: i64) -> Vec<i64> {
        let mut l: Vec<i64> = self.levels(q).to_vec();
        l.sort_unstable();
        l.dedup();
        l
    }

    pub fn level_range(&self) -> Option<(i64, i64)> {
        let all = self.levels.values().flatten();
        let lo = all.clone().min()?;
        let hi = all.max()?;
        Some((*lo, *hi))
    }

    /// Basis indices of `F_p C_q`.
    pub fn indices_upto(&self, q: i64, p: i64) -> Vec<usize> {
        self.levels(q).iter().enumerate().filter(|(_, &l)| l <= p).map(|(i, _)| i).collect()
    }
}
