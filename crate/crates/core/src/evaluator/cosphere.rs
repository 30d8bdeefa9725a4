use std::collections::BTreeSet;

use super::manifest::Assumptions;
use crate::corners::{
    build_l, kunneth, pair_sequence, parity_totals, sphere_betti, CellComplex, CornerManifold, FaceSpec, FaceSubset, GluedSpace,
};
use crate::error::{Error, Result};

/// Cosphere bundle `S*M = M × S^{n−1}` of a manifold with corners, together
/// with the space `𝓛(S*M) × S¹` on which the Laurent theorems are computed.
///
/// The product structure needs `trivial_cosphere` when `n ≥ 2`; in
/// dimension one every cosphere bundle is `M × S⁰`.
#[derive(Clone, Debug)]
pub struct CosphereModel {
    pub base: CornerManifold,
    pub fiber: Vec<usize>,
    pub assumptions: Assumptions,
    /// `S*M`, faces `F × S^{n−1}` with the face lattice of `M`.
    pub total: CornerManifold,
    laurent: Option<LaurentSpace>,
}

/// `𝓛(S*M) × S¹` with the projection data needed for preimages.
#[derive(Clone, Debug)]
struct LaurentSpace {
    glued: GluedSpace,
    space: CellComplex,
    fiber_cells: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpVariant {
    /// `H_c^{[q]}(S*M × S¹)`
    Full,
    /// `H_c^{[q]}(S*M)`
    OrderZero,
    /// `H_c^{[q]}(𝓛(S*M) × S¹ ∖ p⁻¹(X))`
    Laurent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Cellular,
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HhReport {
    /// `HH_q` for `q = 0..=2n`.
    pub dims: Vec<usize>,
    pub route: Route,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcReport {
    /// `HC_m` for `m = 0..=m_max`.
    pub dims: Vec<usize>,
    /// Degrees `m > dim S*M` where the direct formula was compared.
    pub checked: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    /// `HH_q` of the quotient by the ideal of `X`, `q = 0..=2n`.
    pub quotient_hh: Vec<usize>,
    pub les_exact: bool,
    pub trace_count: usize,
    /// `dim H_c^{2n}(p⁻¹(Y))`, `Y` the union of minimal faces.
    pub h_top: usize,
    /// Whether `trace_count = h_top` was asserted.
    pub asserted: bool,
    pub notes: Vec<String>,
}

impl CosphereModel {
    pub fn new(base: CornerManifold, assumptions: Assumptions) -> Result<Self> {
        base.validate()?;
        let n = base.dim;
        if n == 0 {
            return Err(Error::input(format!("{}: the cosphere bundle of a point is empty", base.name)));
        }
        if n >= 2 && !assumptions.trivial_cosphere {
            return Err(Error::input(format!(
                "{}: the product model of S*M needs assumptions.trivial_cosphere for n = {n}",
                base.name
            )));
        }
        let fiber = sphere_betti(n - 1);
        let sphere = CellComplex::sphere(n - 1);
        let (complex, cell_names) = match base.complex() {
            Ok(cx) => {
                let prod = cx.product(&sphere)?;
                let names: Vec<Vec<String>> = (0..cx.len())
                    .map(|a| (0..sphere.len()).map(|s| prod.cell(a * sphere.len() + s).id.clone()).collect())
                    .collect();
                (Some(prod), Some(names))
            }
            Err(_) => (None, None),
        };
        let lift = |cells: &BTreeSet<usize>| -> Vec<String> {
            let names = cell_names.as_ref().expect("cells");
            cells.iter().flat_map(|&c| names[c].iter().cloned()).collect()
        };
        let mut specs = Vec::with_capacity(base.faces().len());
        for (i, f) in base.faces().iter().enumerate() {
            let top = base.top_face() == Some(i);
            specs.push(FaceSpec {
                id: f.id.clone(),
                codim: f.codim,
                betti: f.betti.as_ref().map(|b| kunneth(b, &fiber)),
                cells: f.cells.as_ref().map(&lift),
                ends: if top && cell_names.is_some() { lift(base.ends()) } else { vec![] },
                orientable: f.orientable,
            });
        }
        let covers: Vec<(String, String)> =
            base.covers().iter().map(|&(c, p)| (base.face(c).id.clone(), base.face(p).id.clone())).collect();
        let total = CornerManifold::new(&format!("S*{}", base.name), 2 * n - 1, complex, &specs, &covers)?;
        total.validate().map_err(|e| Error::defect(format!("derived cosphere manifold: {e}")))?;
        let laurent = if total.has_cells() {
            let glued = build_l(&total)?;
            let space = glued.complex.product(&CellComplex::circle())?;
            Some(LaurentSpace { glued, space, fiber_cells: sphere.len() })
        } else {
            None
        };
        Ok(CosphereModel { base, fiber, assumptions, total, laurent })
    }

    pub fn n(&self) -> usize {
        self.base.dim
    }

    /// `dim S*M = 2n − 1`.
    pub fn cosphere_dim(&self) -> usize {
        2 * self.n() - 1
    }

    /// `H_c^*(M)`.
    pub fn base_betti(&self) -> Result<Vec<usize>> {
        self.base.face_betti(self.base.top_face().expect("validated"))
    }

    /// Cells of `𝓛(S*M) × S¹` over the given cells of `M`.
    fn preimage(&self, ls: &LaurentSpace, base: &BTreeSet<usize>) -> BTreeSet<usize> {
        let total: BTreeSet<usize> =
            base.iter().flat_map(|&a| (0..ls.fiber_cells).map(move |s| a * ls.fiber_cells + s)).collect();
        ls.glued.preimage(&total).into_iter().flat_map(|i| [2 * i, 2 * i + 1]).collect()
    }

    fn ends_preimage(&self, ls: &LaurentSpace) -> BTreeSet<usize> {
        self.preimage(ls, self.base.ends())
    }

    fn space(&self) -> Result<&LaurentSpace> {
        self.laurent.as_ref().ok_or_else(|| Error::input(format!("{}: the glued space needs cell data", self.base.name)))
    }

    /// `H_c^k(𝓛(S*M) × S¹ ∖ p⁻¹(X))` for `k = 0..=2n`.
    pub fn laurent_cohomology(&self, x: &FaceSubset) -> Result<(Vec<usize>, Route)> {
        let top = 2 * self.n();
        let mut b = match &self.laurent {
            Some(ls) => {
                let mut rel = self.ends_preimage(ls);
                rel.extend(self.preimage(ls, &self.base.cells_of(&x.faces)?));
                (ls.space.cohomology(&ls.space.all(), &rel)?, Route::Cellular)
            }
            None if x.is_empty() => (kunneth(&self.total.laurent_cohomology_formula()?, &[1, 1]), Route::Formula),
            None => return Err(Error::input(format!("{}: relative cohomology needs cell data", self.base.name))),
        };
        b.0.resize(top + 1, 0);
        Ok(b)
    }

    /// `H_c^k(𝓛(S*M) × S¹)` by the face formula on `S*M` and Künneth.
    pub fn laurent_cohomology_formula(&self) -> Result<Vec<usize>> {
        let mut b = kunneth(&self.total.laurent_cohomology_formula()?, &[1, 1]);
        b.resize(2 * self.n() + 1, 0);
        Ok(b)
    }
}

/// `(Σ even, Σ odd)` of the periodic theory for the chosen algebra.
pub fn eval_hp(cm: &CosphereModel, variant: HpVariant, x: &FaceSubset) -> Result<(usize, usize)> {
    if variant != HpVariant::Laurent && !x.is_empty() {
        return Err(Error::input("X only applies to the laurent variant"));
    }
    let betti = match variant {
        HpVariant::Full => kunneth(&kunneth(&cm.base_betti()?, &cm.fiber), &[1, 1]),
        HpVariant::OrderZero => kunneth(&cm.base_betti()?, &cm.fiber),
        HpVariant::Laurent => cm.laurent_cohomology(x)?.0,
    };
    Ok(parity_totals(&betti))
}

/// `HH_q ≅ H_c^{2n−q}(𝓛(S*M) × S¹ ∖ p⁻¹(X))`.
pub fn eval_hh_laurent(cm: &CosphereModel, x: &FaceSubset) -> Result<HhReport> {
    if !cm.assumptions.rational_iso {
        return Err(Error::input(format!(
            "{}: refusing to evaluate without assumptions.rational_iso (vertical tangent bundle rationally isomorphic to TM)",
            cm.base.name
        )));
    }
    let (mut b, route) = cm.laurent_cohomology(x)?;
    b.reverse();
    Ok(HhReport { dims: b, route })
}

/// `HC_m = Σ_{k ≥ 0} HH_{m−2k}`, zero for `m < 0`.
pub fn hc_from_hh(hh: &[usize], m: i64) -> usize {
    if m < 0 {
        return 0;
    }
    (0..=m / 2).map(|k| hh.get((m - 2 * k) as usize).copied().unwrap_or(0)).sum()
}

/// `HC_m` for `m ≤ m_max` by the vanishing of `B`, checked for every
/// `m > dim S*M` against the direct sum `⊕_k H^{m−2k}` of the same space,
/// computed by the face formula when `X` is empty, and against `S`-stability.
pub fn eval_hc(cm: &CosphereModel, x: &FaceSubset, m_max: usize) -> Result<HcReport> {
    let hh = eval_hh_laurent(cm, x)?;
    let direct = if x.is_empty() { cm.laurent_cohomology_formula()? } else { cm.laurent_cohomology(x)?.0 };
    let dims: Vec<usize> = (0..=m_max as i64).map(|m| hc_from_hh(&hh.dims, m)).collect();
    let mut checked = Vec::new();
    for m in cm.cosphere_dim() + 1..=m_max {
        let (even, odd) = parity_totals(&direct);
        let want = if m % 2 == 0 { even } else { odd };
        if dims[m] != want {
            return Err(Error::defect(format!("HC_{m} = {} but the direct sum gives {want}", dims[m])));
        }
        if hc_from_hh(&hh.dims, m as i64 + 2) != dims[m] {
            return Err(Error::defect(format!("S: HC_{} → HC_{m} is not an isomorphism", m + 2)));
        }
        checked.push(m);
    }
    Ok(HcReport { dims, checked })
}

/// Quotient homology from `p⁻¹(X)` and the trace count.
pub fn eval_quotient_and_traces(cm: &CosphereModel, x: &FaceSubset) -> Result<QuotientReport> {
    let n = cm.n();
    let ls = cm.space()?;
    let ends = cm.ends_preimage(ls);
    let sub = cm.preimage(ls, &cm.base.cells_of(&x.faces)?);
    let sub_ends: BTreeSet<usize> = sub.intersection(&ends).copied().collect();
    let mut q = ls.space.cohomology(&sub, &sub_ends)?;
    q.resize(2 * n + 1, 0);
    q.reverse();
    let les = pair_sequence(&ls.space, &ls.space.all(), &sub, &ends)?;
    if !les.all_exact {
        return Err(Error::defect(format!("pair sequence fails at {:?}", les.first_failure())));
    }
    let minimal: BTreeSet<usize> = cm.base.minimal_faces().into_iter().collect();
    let trace_count = minimal.len();
    let y = cm.preimage(ls, &cm.base.cells_of(&minimal)?);
    let y_ends: BTreeSet<usize> = y.intersection(&ends).copied().collect();
    let h_top = ls.space.cohomology(&y, &y_ends)?.get(2 * n).copied().unwrap_or(0);
    let orientable = cm.base.faces().iter().all(|f| f.orientable);
    let asserted = n >= 2 && orientable && cm.assumptions.trivial_cosphere;
    if asserted && trace_count != h_top {
        return Err(Error::defect(format!("{} minimal faces but H_c^{}(p⁻¹(Y)) has dimension {h_top}", trace_count, 2 * n)));
    }
    let mut notes = vec!["quotient computed in 𝓛(S*M)×S¹; the source statement names 𝓛(M)".to_string()];
    if !asserted {
        notes.push(format!("trace count {trace_count} and H_c^{} dimension {h_top} reported without assertion", 2 * n));
    }
    Ok(QuotientReport { quotient_hh: q, les_exact: true, trace_count, h_top, asserted, notes })
}

/// `HH(M, X)` against `HH(M′, ∅)` for a manifest `M′` modelling `M ∖ X`.
pub fn excision_check(cm: &CosphereModel, x: &FaceSubset, excised: &CosphereModel) -> Result<(Vec<usize>, Vec<usize>)> {
    let a = eval_hh_laurent(cm, x)?.dims;
    let b = eval_hh_laurent(excised, &FaceSubset::empty())?.dims;
    if a != b {
        return Err(Error::defect(format!("excision fails: {a:?} against {b:?}")));
    }
    Ok((a, b))
}
