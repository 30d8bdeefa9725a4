use std::collections::{BTreeMap, BTreeSet};

use super::cells::{Cell, CellComplex};
use super::manifold::{CornerManifold, FaceSubset};
use crate::error::{Error, Result};

/// Cellular model of `𝓛(M)`.
///
/// A cell of `M` whose smallest face `G` has codimension `k` contributes the
/// cells `σ × e_S`, one for each set `S` of hyperfaces through `G`, where
/// `e_S` is the open cell of `(S¹)^k` with `θ_H ≠ 1` exactly for `H ∈ S`.
/// Points with `θ_H = 1` are the ones glued to the next face up, so the
/// boundary of `σ × e_S` is `∂σ × e_S`.
#[derive(Clone, Debug)]
pub struct GluedSpace {
    pub complex: CellComplex,
    /// Cell of `M` under each cell.
    pub base_cell: Vec<usize>,
    /// Hyperfaces carrying a circle coordinate of each cell.
    pub torus: Vec<BTreeSet<usize>>,
}

fn subsets_of(s: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let v: Vec<usize> = s.iter().copied().collect();
    (0u32..(1 << v.len())).map(|m| (0..v.len()).filter(|i| m & (1 << i) != 0).map(|i| v[i]).collect()).collect()
}

pub fn build_l(m: &CornerManifold) -> Result<GluedSpace> {
    let cx = m.complex()?;
    let mut cells = Vec::new();
    let mut base_cell = Vec::new();
    let mut torus = Vec::new();
    let mut pos: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let mut hyp = Vec::with_capacity(cx.len());
    for c in 0..cx.len() {
        hyp.push(m.hyperfaces_above(m.smallest_face(c)?));
    }
    let name = |s: &BTreeSet<usize>| s.iter().map(|&h| m.face(h).id.clone()).collect::<Vec<_>>().join(",");
    for c in 0..cx.len() {
        for s in subsets_of(&hyp[c]) {
            pos.insert((c, s.iter().copied().collect()), cells.len());
            cells.push(Cell { id: format!("{}|{}", cx.cell(c).id, name(&s)), dim: cx.cell(c).dim + s.len(), boundary: vec![] });
            base_cell.push(c);
            torus.push(s);
        }
    }
    for i in 0..cells.len() {
        let key: Vec<usize> = torus[i].iter().copied().collect();
        let mut bd = Vec::new();
        for &(t, a) in &cx.cell(base_cell[i]).boundary {
            let j = *pos.get(&(t, key.clone())).ok_or_else(|| {
                Error::defect(format!("boundary cell {} lacks the circle coordinates of {}", cx.cell(t).id, cells[i].id))
            })?;
            bd.push((j, a));
        }
        cells[i].boundary = bd;
    }
    let complex = CellComplex::new(cells).map_err(|e| Error::defect(format!("glued space: {e}")))?;
    Ok(GluedSpace { complex, base_cell, torus })
}

impl GluedSpace {
    /// Cells lying over the given cells of `M`.
    pub fn preimage(&self, base: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.base_cell.len()).filter(|&i| base.contains(&self.base_cell[i])).collect()
    }
}

/// `dim H^q(𝓛(M), p⁻¹(X))` for `q = 0..=dim M`; cells at infinity of `M`
/// are always divided out, so the result is `H_c^q(𝓛(M) ∖ p⁻¹(X))`.
pub fn cellular_cohomology(m: &CornerManifold, g: &GluedSpace, rel: Option<&FaceSubset>) -> Result<Vec<usize>> {
    let mut base = m.ends().clone();
    if let Some(x) = rel {
        base.extend(m.cells_of(&x.faces)?);
    }
    let rel_cells = g.preimage(&base);
    if !g.complex.is_subcomplex(&rel_cells) {
        return Err(Error::input("relative part is not a subcomplex of the glued space"));
    }
    let mut b = g.complex.cohomology(&g.complex.all(), &rel_cells)?;
    b.resize(m.dim + 1, 0);
    Ok(b)
}

/// Ranks of `p*: H^q(M, ends) → H^q(𝓛(M), p⁻¹(ends))`, `σ ↦ σ × e_∅`.
pub fn pullback_ranks(m: &CornerManifold, g: &GluedSpace) -> Result<Vec<usize>> {
    use crate::complexes::ChainMap;
    use crate::qlinalg::{SparseMat, SparseVec, Q};
    use std::collections::HashMap;
    use std::sync::Arc;
    let cx = m.complex()?;
    let (src, sb) = cx.cochain_complex(&cx.all(), m.ends())?;
    let rel = g.preimage(m.ends());
    let (tgt, tb) = g.complex.cochain_complex(&g.complex.all(), &rel)?;
    let lift: HashMap<usize, usize> =
        (0..g.base_cell.len()).filter(|&i| g.torus[i].is_empty()).map(|i| (g.base_cell[i], i)).collect();
    let mut comps: Vec<SparseMat<Q>> = Vec::new();
    for q in 0..sb.len() {
        let t = tb.get(q).cloned().unwrap_or_default();
        let pos: HashMap<usize, usize> = t.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let cols = sb[q].iter().map(|c| SparseVec::unit(pos[&lift[c]])).collect();
        comps.push(SparseMat::from_columns(t.len(), cols));
    }
    if sb.len() != tb.len() {
        return Err(Error::defect("pullback between complexes of different length"));
    }
    let f = ChainMap::new(Arc::new(src), Arc::new(tgt), 0, comps)?;
    Ok((0..sb.len() as i64).map(|q| f.induced_rank(q)).collect())
}
