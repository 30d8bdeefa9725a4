use std::sync::Arc;

use super::chain::ChainComplex;
use super::les::{les_of_ses_window, ExactSequenceReport};
use super::map::ChainMap;
use crate::error::{Error, Result};
use crate::qlinalg::{Field, SparseMat, SparseVec};

/// Spaces `H_0..=H_top` with `b: H_q → H_{q-1}` and `B: H_q → H_{q+1}`.
#[derive(Clone, Debug)]
pub struct MixedComplex<F> {
    dims: Vec<usize>,
    /// `b[q]` leaves degree q (`b[0]` has zero rows).
    b: Vec<SparseMat<F>>,
    /// `big_b[q]` leaves degree q, for `q < top`.
    big_b: Vec<SparseMat<F>>,
}

impl<F: Field> MixedComplex<F> {
    /// Checks shapes and `b² = 0`, `B² = 0`, `bB + Bb = 0` wherever all
    /// terms are defined.
    pub fn new(dims: Vec<usize>, b: Vec<SparseMat<F>>, big_b: Vec<SparseMat<F>>) -> Result<Self> {
        let top = dims.len();
        if top == 0 || b.len() != top || big_b.len() + 1 != top {
            return Err(Error::input("mixed complex needs b on every degree and B below the top"));
        }
        for q in 0..top {
            let rows = if q == 0 { 0 } else { dims[q - 1] };
            if b[q].cols() != dims[q] || b[q].rows() != rows {
                return Err(Error::input(format!("b has wrong shape in degree {q}")));
            }
            if q + 1 < top && (big_b[q].cols() != dims[q] || big_b[q].rows() != dims[q + 1]) {
                return Err(Error::input(format!("B has wrong shape in degree {q}")));
            }
        }
        let m = MixedComplex { dims, b, big_b };
        m.check_identities()?;
        Ok(m)
    }

    fn check_identities(&self) -> Result<()> {
        let top = self.dims.len();
        for q in 1..top {
            if !self.b[q - 1].mul(&self.b[q])?.is_zero() {
                return Err(Error::input(format!("b² ≠ 0 in degree {q}")));
            }
        }
        for q in 0..top.saturating_sub(2) {
            if !self.big_b[q + 1].mul(&self.big_b[q])?.is_zero() {
                return Err(Error::input(format!("B² ≠ 0 in degree {q}")));
            }
        }
        for q in 0..top.saturating_sub(1) {
            // bB + Bb on H_q, landing in H_q
            let bb = self.b[q + 1].mul(&self.big_b[q])?;
            let bb2 = if q == 0 { SparseMat::zero(self.dims[0], self.dims[0]) } else { self.big_b[q - 1].mul(&self.b[q])? };
            if !bb.add(&bb2)?.is_zero() {
                return Err(Error::input(format!("bB + Bb ≠ 0 in degree {q}")));
            }
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    pub fn b(&self, q: usize) -> &SparseMat<F> {
        &self.b[q]
    }

    pub fn big_b(&self, q: usize) -> &SparseMat<F> {
        &self.big_b[q]
    }

    /// `(H, b)` in degrees `0..=top`.
    pub fn hochschild(&self, top: usize) -> Result<ChainComplex<F>> {
        let dims: Vec<usize> = (0..=top).map(|q| self.dim(q)).collect();
        ChainComplex::chain(0, dims, (0..=top).map(|q| self.b[q].clone()).collect())
    }
}

/// Cyclic total complex with its periodicity and inclusion maps.
#[derive(Clone, Debug)]
pub struct CyclicTotal<F> {
    pub complex: Arc<ChainComplex<F>>,
    /// `(H, b)` truncated at the same degree.
    pub hochschild: Arc<ChainComplex<F>>,
    /// `I: H_n → C_n`, inclusion of the `k = 0` summand.
    pub inclusion: ChainMap<F>,
    /// `S: C_n → C_{n-2}`, projection killing the `k = 0` summand, into the
    /// total complex truncated at `top - 2`.
    pub periodicity: ChainMap<F>,
}

/// Offsets of the summands `H_{n-2k}` inside `C_n`.
fn summands<F: Field>(m: &MixedComplex<F>, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    let mut k = 0;
    while 2 * k <= n {
        let d = n - 2 * k;
        out.push((d, off));
        off += m.dim(d);
        k += 1;
    }
    out
}

/// `C_n = ⊕_{k≥0} H_{n-2k}` with differential `b + B`, for `n ≤ top_degree`.
pub fn cyclic_total<F: Field>(m: &MixedComplex<F>, top_degree: usize) -> Result<CyclicTotal<F>> {
    if top_degree > m.top() {
        return Err(Error::input(format!("mixed complex only reaches degree {}", m.top())));
    }
    let dims: Vec<usize> = (0..=top_degree).map(|n| summands(m, n).iter().map(|(d, _)| m.dim(*d)).sum()).collect();
    let mut diffs = Vec::new();
    for n in 0..=top_degree {
        let src = summands(m, n);
        let rows = if n == 0 { 0 } else { dims[n - 1] };
        let tgt = if n == 0 { Vec::new() } else { summands(m, n - 1) };
        let off_of = |deg: usize| tgt.iter().find(|(d, _)| *d == deg).map(|(_, o)| *o);
        let mut cols = Vec::with_capacity(dims[n]);
        for (k, &(d, _)) in src.iter().enumerate() {
            for j in 0..m.dim(d) {
                let mut v = SparseVec::new();
                if d >= 1 {
                    if let Some(o) = off_of(d - 1) {
                        v = v.add(&m.b(d).col(j).shift(o));
                    }
                }
                if k >= 1 {
                    if let Some(o) = off_of(d + 1) {
                        v = v.add(&m.big_b(d).col(j).shift(o));
                    }
                }
                cols.push(v);
            }
        }
        diffs.push(SparseMat::from_columns(rows, cols));
    }
    let complex = Arc::new(ChainComplex::chain(0, dims.clone(), diffs)?);
    let hochschild = Arc::new(m.hochschild(top_degree)?);

    let mut inc = Vec::new();
    for n in 0..=top_degree {
        let cols = (0..m.dim(n)).map(SparseVec::unit).collect();
        inc.push(SparseMat::from_columns(dims[n], cols));
    }
    let inclusion = ChainMap::new(hochschild.clone(), complex.clone(), 0, inc)?;

    // S lands in the total complex truncated two degrees lower, so that
    // 0 → H → C → C[-2] → 0 stays exact up to the top.
    let low_top = top_degree.saturating_sub(2);
    let low = if top_degree >= 2 {
        let d: Vec<SparseMat<F>> = (0..=low_top).map(|n| complex.differential(n as i64)).collect();
        Arc::new(ChainComplex::chain(0, dims[..=low_top].to_vec(), d)?)
    } else {
        Arc::new(ChainComplex::chain(0, vec![0], vec![SparseMat::zero(0, 0)])?)
    };
    let mut per = Vec::new();
    for n in 0..=top_degree {
        let rows = if n >= 2 { dims[n - 2] } else { 0 };
        let mut cols = Vec::with_capacity(dims[n]);
        let src = summands(m, n);
        for (k, &(d, off)) in src.iter().enumerate() {
            for j in 0..m.dim(d) {
                // summand k of C_n is summand k-1 of C_{n-2}; same offset shift
                if k == 0 {
                    cols.push(SparseVec::new());
                } else {
                    cols.push(SparseVec::unit(off - m.dim(n) + j));
                }
            }
        }
        per.push(SparseMat::from_columns(rows, cols));
    }
    let periodicity = ChainMap::new(complex.clone(), low, -2, per)?;
    Ok(CyclicTotal { complex, hochschild, inclusion, periodicity })
}

/// The `I`, `S`, `B` long exact sequence `HH_n → HC_n → HC_{n-2} → HH_{n-1}`,
/// checked for exactness at every node of degree `≤ up_to`.
///
/// The connecting map follows [`super::les_of_ses`]; on homology it agrees with
/// `I ∘ B` up to the sign convention fixed there.
pub fn sbi_report<F: Field>(m: &MixedComplex<F>, up_to: usize) -> Result<ExactSequenceReport<F>> {
    let top = up_to + 1;
    if m.top() < top {
        return Err(Error::input(format!("need the mixed complex up to degree {top}")));
    }
    let tot = cyclic_total(m, top)?;
    let rep = les_of_ses_window(&tot.inclusion, &tot.periodicity, 0, up_to as i64)?;
    if !rep.all_exact {
        let n = rep.first_failure().expect("some node fails");
        return Err(Error::defect(format!("SBI sequence not exact at {}{}", n.label, n.degree)));
    }
    Ok(rep)
}
