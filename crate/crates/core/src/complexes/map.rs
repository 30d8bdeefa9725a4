use std::sync::Arc;

use super::chain::{ChainComplex, HomologyData};
use crate::error::{Error, Result};
use crate::qlinalg::{rank, Field, SparseMat, SparseVec};

/// Chain map of degree `shift`: component `q` sends source degree `q` to
/// target degree `q + shift`. Commutation is checked on construction.
#[derive(Clone, Debug)]
pub struct ChainMap<F> {
    source: Arc<ChainComplex<F>>,
    target: Arc<ChainComplex<F>>,
    shift: i64,
    components: Vec<SparseMat<F>>,
}

impl<F: Field> ChainMap<F> {
    /// `components[i]` acts on source degree `source.min_degree() + i`.
    pub fn new(
        source: Arc<ChainComplex<F>>,
        target: Arc<ChainComplex<F>>,
        shift: i64,
        components: Vec<SparseMat<F>>,
    ) -> Result<Self> {
        if source.orientation() != target.orientation() {
            return Err(Error::input("chain map between complexes of different orientation"));
        }
        if components.len() != source.dims().len() {
            return Err(Error::input("one component per source degree required"));
        }
        let f = ChainMap { source, target, shift, components };
        for q in f.source.degrees() {
            let c = f.component(q);
            if c.cols() != f.source.dim(q) || c.rows() != f.target.dim(q + shift) {
                return Err(Error::input(format!("component at degree {q} has wrong shape")));
            }
        }
        let step = f.source.orientation().step();
        for q in f.source.degrees() {
            let lhs = f.target.differential(q + shift).mul(&f.component(q))?;
            let rhs = f.component(q + step).mul(&f.source.differential(q))?;
            if lhs != rhs {
                return Err(Error::input(format!("map does not commute with the differential at degree {q}")));
            }
        }
        Ok(f)
    }

    pub fn identity(c: Arc<ChainComplex<F>>) -> Self {
        let components = c.degrees().map(|q| SparseMat::identity(c.dim(q))).collect();
        ChainMap { source: c.clone(), target: c, shift: 0, components }
    }

    pub fn source(&self) -> &Arc<ChainComplex<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex<F>> {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Component at source degree `q` (zero outside the source range).
    pub fn component(&self, q: i64) -> SparseMat<F> {
        if self.source.in_range(q) {
            self.components[(q - self.source.min_degree()) as usize].clone()
        } else {
            SparseMat::zero(self.target.dim(q + self.shift), self.source.dim(q))
        }
    }

    /// Rank of the induced map `H_q(source) → H_{q+shift}(target)`.
    pub fn induced_rank(&self, q: i64) -> usize {
        let src = HomologyData::new(&self.source, q);
        let t = q + self.shift;
        let images = SparseMat::from_columns(
            self.target.dim(t),
            src.representatives().iter().map(|z| self.component(q).mul_vec(z)).collect(),
        );
        let bd = self.target.incoming(t);
        let joint = bd.hstack(&images).expect("row counts agree");
        rank(&joint) - rank(&bd)
    }

    /// Matrix of the induced map in the representative bases of both sides.
    pub fn induced_matrix(&self, q: i64, src: &HomologyData<F>, tgt: &HomologyData<F>) -> Result<SparseMat<F>> {
        let mut cols = Vec::new();
        for z in src.representatives() {
            let img = self.component(q).mul_vec(z);
            cols.push(tgt.class_of(&img).ok_or_else(|| Error::defect("image of a cycle is not a cycle"))?);
        }
        Ok(SparseMat::from_columns(tgt.dim(), cols))
    }

    pub fn apply(&self, q: i64, v: &SparseVec<F>) -> SparseVec<F> {
        self.component(q).mul_vec(v)
    }
}

/// `g ∘ f`, checked to be a chain map.
pub fn compose_check<F: Field>(f: &ChainMap<F>, g: &ChainMap<F>) -> Result<ChainMap<F>> {
    if f.target().dims() != g.source().dims() || f.target().min_degree() != g.source().min_degree() {
        return Err(Error::input("composition shape mismatch"));
    }
    let mut comps = Vec::new();
    for q in f.source().degrees() {
        comps.push(g.component(q + f.shift()).mul(&f.component(q))?);
    }
    ChainMap::new(f.source().clone(), g.target().clone(), f.shift() + g.shift(), comps)
}
