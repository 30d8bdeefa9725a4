use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::algebra::{Gen, GradedAlgebra};
use super::ops::{total_order, HochschildChain, Operator, Ops, Tensor};
use super::window::Window;
use crate::complexes::{ChainComplex, MixedComplex};
use crate::error::{Error, Result};
use crate::qlinalg::{Field, SparseMat, SparseVec};
use crate::spectral::FilteredComplex;

/// Basis tensors of one weight, degree by degree, with their positions.
#[derive(Clone, Debug)]
pub struct TensorBasis {
    pub weight: i64,
    pub window: Window,
    tensors: Vec<Vec<Tensor>>,
    index: Vec<HashMap<Tensor, usize>>,
}

impl TensorBasis {
    /// Tensors of degrees `0..=top`.
    pub fn new<A: GradedAlgebra + ?Sized>(alg: &A, window: &Window, w: i64, top: usize) -> Self {
        let tensors: Vec<Vec<Tensor>> = (0..=top).map(|q| window.tensors(alg, q, w)).collect();
        let index = tensors.iter().map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()).collect();
        TensorBasis { weight: w, window: window.clone(), tensors, index }
    }

    pub fn top(&self) -> usize {
        self.tensors.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.tensors.iter().map(Vec::len).collect()
    }

    pub fn tensors(&self, q: usize) -> &[Tensor] {
        &self.tensors[q]
    }

    pub fn position(&self, t: &[Gen]) -> Option<usize> {
        self.index.get(t.len().checked_sub(1)?)?.get(t).copied()
    }

    /// Coordinates of a chain; tensors below the window floor are zero.
    pub fn coordinates<F: Field>(&self, c: &HochschildChain<F>) -> Result<SparseVec<F>> {
        let floor = self.window.floor();
        let mut pairs = Vec::with_capacity(c.terms().len());
        for (t, x) in c.terms() {
            if total_order(t) <= floor {
                continue;
            }
            let i = self.position(t).ok_or_else(|| Error::defect(format!("tensor {t:?} leaves the window")))?;
            pairs.push((i, x.clone()));
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn chain<F: Field>(&self, q: usize, v: &SparseVec<F>) -> HochschildChain<F> {
        let mut c = HochschildChain::zero(q);
        for (i, x) in v.entries() {
            c.add_term(self.tensors[q][*i].clone(), x.clone());
        }
        c
    }

    /// Matrix of `op` from degree `q` to degree `q + shift`.
    pub fn operator_matrix<A: GradedAlgebra + ?Sized>(&self, ops: &Ops<'_, A>, op: Operator, q: usize) -> Result<SparseMat<A::F>> {
        let tq = match op {
            Operator::B | Operator::BPrime => q.checked_sub(1),
            Operator::T => Some(q),
            Operator::S | Operator::B0 | Operator::Connes => Some(q + 1),
        };
        let rows = tq.map_or(0, |t| self.tensors.get(t).map_or(0, Vec::len));
        if op_raises(op) && tq.map_or(true, |t| t > self.top()) {
            return Err(Error::input(format!("degree {} is not materialized", q + 1)));
        }
        let mut cols = Vec::with_capacity(self.tensors[q].len());
        for t in &self.tensors[q] {
            let img = ops.apply(op, &HochschildChain::basis(t.clone()))?;
            cols.push(if tq.is_none() { SparseVec::new() } else { self.coordinates(&img)? });
        }
        Ok(SparseMat::from_columns(rows, cols))
    }
}

fn op_raises(op: Operator) -> bool {
    matches!(op, Operator::S | Operator::B0 | Operator::Connes)
}

/// Hochschild complex of one weight, filtered by total order.
#[derive(Clone, Debug)]
pub struct HochschildComplex<F> {
    pub basis: TensorBasis,
    pub filtered: FilteredComplex<F>,
    /// Set when the window holds no tensor at all.
    pub empty: bool,
}

impl<F: Field> HochschildComplex<F> {
    pub fn complex(&self) -> &Arc<ChainComplex<F>> {
        self.filtered.complex()
    }

    /// `dim HH_q` for `q ≤ q_max`.
    pub fn homology_dims(&self, q_max: usize) -> Vec<usize> {
        (0..=q_max).map(|q| self.complex().homology_dim(q as i64)).collect()
    }
}

fn differential_complex<A: GradedAlgebra + ?Sized>(
    ops: &Ops<'_, A>,
    basis: &TensorBasis,
    op: Operator,
) -> Result<ChainComplex<A::F>> {
    let diffs = (0..=basis.top()).map(|q| basis.operator_matrix(ops, op, q)).collect::<Result<Vec<_>>>()?;
    ChainComplex::chain(0, basis.dims(), diffs).map_err(|e| Error::defect(format!("{op:?} fails to square to zero: {e}")))
}

/// `(C_*, b)` of weight `w` in degrees `0..=q_max + 1`, so that homology is
/// exact through `q_max`. The level of a tensor is its total order.
pub fn hochschild_complex<A: GradedAlgebra + ?Sized>(alg: &A, window: &Window, w: i64, q_max: usize) -> Result<HochschildComplex<A::F>> {
    let basis = TensorBasis::new(alg, window, w, q_max + 1);
    let ops = Ops::new(alg).with_floor(window.floor());
    let complex = Arc::new(differential_complex(&ops, &basis, Operator::B)?);
    let levels: BTreeMap<i64, Vec<i64>> =
        (0..=basis.top()).map(|q| (q as i64, basis.tensors(q).iter().map(|t| total_order(t)).collect())).collect();
    let filtered = FilteredComplex::new(complex, levels)?;
    let empty = basis.dims().iter().all(|&d| d == 0);
    Ok(HochschildComplex { basis, filtered, empty })
}

/// `(C_*, b′)` of weight `w` in degrees `0..=q_max + 1`.
pub fn bar_complex<A: GradedAlgebra + ?Sized>(alg: &A, window: &Window, w: i64, q_max: usize) -> Result<(TensorBasis, ChainComplex<A::F>)> {
    let basis = TensorBasis::new(alg, window, w, q_max + 1);
    let ops = Ops::new(alg).with_floor(window.floor());
    let c = differential_complex(&ops, &basis, Operator::BPrime)?;
    Ok((basis, c))
}

/// Mixed complex `(C_*, b, B)` of weight `w` in degrees `0..=top`. Needs a unit.
pub fn mixed_complex<A: GradedAlgebra + ?Sized>(alg: &A, window: &Window, w: i64, top: usize) -> Result<MixedComplex<A::F>> {
    if alg.unit().is_none() {
        return Err(Error::input(format!("{} has no unit; the mixed complex needs one", alg.name())));
    }
    let basis = TensorBasis::new(alg, window, w, top);
    let ops = Ops::new(alg).with_floor(window.floor());
    let b = (0..=top).map(|q| basis.operator_matrix(&ops, Operator::B, q)).collect::<Result<Vec<_>>>()?;
    let big_b = (0..top).map(|q| basis.operator_matrix(&ops, Operator::Connes, q)).collect::<Result<Vec<_>>>()?;
    MixedComplex::new(basis.dims(), b, big_b).map_err(|e| Error::defect(format!("mixed identities fail: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HUnitalReport {
    /// `dim H_q(C, b′)` for `q ≤ q_max`.
    pub bar_homology: Vec<usize>,
    pub acyclic: bool,
    pub failing_degree: Option<usize>,
}

/// Homology of the bar complex `(C, b′)` through `q_max`.
pub fn h_unital_check<A: GradedAlgebra + ?Sized>(alg: &A, window: &Window, w: i64, q_max: usize) -> Result<HUnitalReport> {
    let (_, c) = bar_complex(alg, window, w, q_max)?;
    let bar_homology: Vec<usize> = (0..=q_max).map(|q| c.homology_dim(q as i64)).collect();
    let failing_degree = bar_homology.iter().position(|&d| d > 0);
    Ok(HUnitalReport { acyclic: failing_degree.is_none(), bar_homology, failing_degree })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilized {
    pub dim: usize,
    /// Index of the first window of the agreeing pair.
    pub window_used: usize,
    /// Dimensions for each window tried.
    pub history: Vec<usize>,
}

/// `dim HH_q` of weight `w` over an increasing family of windows, accepted
/// once two consecutive windows agree.
pub fn hh_stabilized<A: GradedAlgebra + ?Sized>(
    alg: &A,
    family: &dyn Fn(usize) -> Window,
    w: i64,
    q: usize,
    budget: usize,
) -> Result<Stabilized> {
    let mut history = Vec::new();
    for k in 0..budget {
        let hc = hochschild_complex(alg, &family(k), w, q)?;
        history.push(hc.complex().homology_dim(q as i64));
        if k > 0 && history[k] == history[k - 1] {
            return Ok(Stabilized { dim: history[k], window_used: k - 1, history });
        }
    }
    Err(Error::budget(format!("HH_{q} of weight {w} not stable within {budget} windows: {history:?}")))
}
