use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use super::filtered::FilteredComplex;
use crate::qlinalg::{Echelon, Field, Reduction, SparseMat, SparseVec};

/// One `E^r_{k,h}` group, represented as `Z / D` inside the chain space.
#[derive(Clone, Debug)]
pub struct PageCell<F> {
    pub dim: usize,
    /// Representatives of a basis of the cell.
    pub basis: Vec<SparseVec<F>>,
    echelon: Echelon<F>,
    denominator_gens: usize,
    basis_gen_ids: Vec<usize>,
}

impl<F: Field> PageCell<F> {
    fn new(denominator: &[SparseVec<F>], numerator: &[SparseVec<F>]) -> Self {
        let mut echelon = Echelon::new();
        for v in denominator {
            echelon.insert(v);
        }
        let denominator_gens = echelon.generators();
        let mut basis = Vec::new();
        let mut basis_gen_ids = Vec::new();
        for v in numerator {
            let id = echelon.generators();
            if echelon.insert(v) {
                basis.push(v.clone());
                basis_gen_ids.push(id);
            }
        }
        PageCell { dim: basis.len(), basis, echelon, denominator_gens, basis_gen_ids }
    }

    /// Coordinates of the class of `z` in [`PageCell::basis`], or `None` if
    /// `z` is outside the numerator.
    pub fn class_of(&self, z: &SparseVec<F>) -> Option<SparseVec<F>> {
        let coords = self.echelon.coordinates(z)?;
        let pos: HashMap<usize, usize> = self.basis_gen_ids.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        Some(coords.remap(|g| if g < self.denominator_gens { None } else { pos.get(&g).copied() }))
    }
}

/// Page `r` of the spectral sequence of a filtered complex.
#[derive(Clone, Debug)]
pub struct SpectralPage<F> {
    pub r: i64,
    /// Nonzero cells keyed by `(k, h)`.
    pub cells: BTreeMap<(i64, i64), PageCell<F>>,
    /// `d^r` leaving `(k, h)` towards `(k - r, h + r - 1)`; only between nonzero cells.
    pub differentials: BTreeMap<(i64, i64), SparseMat<F>>,
}

impl<F> SpectralPage<F> {
    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.cells.iter().map(|(&k, c)| (k, c.dim)).collect()
    }

    pub fn dim(&self, k: i64, h: i64) -> usize {
        self.cells.get(&(k, h)).map_or(0, |c| c.dim)
    }
}

/// Explicit `Z^r / B^r` evaluation with memoized cycle spaces.
pub struct PageEngine<'a, F> {
    f: &'a FilteredComplex<F>,
    z_cache: Mutex<HashMap<(i64, i64, i64), Vec<SparseVec<F>>>>,
}

impl<'a, F: Field> PageEngine<'a, F> {
    pub fn new(f: &'a FilteredComplex<F>) -> Self {
        PageEngine { f, z_cache: Mutex::new(HashMap::new()) }
    }

    /// Basis of `Z^r_p C_q = {x ∈ F_p C_q : dx ∈ F_{p-r} C_{q-1}}`.
    pub fn z(&self, q: i64, p: i64, r: i64) -> Vec<SparseVec<F>> {
        if let Some(v) = self.z_cache.lock().unwrap().get(&(q, p, r)) {
            return v.clone();
        }
        let cx = self.f.complex();
        let cols = self.f.indices_upto(q, p);
        let rows: Vec<usize> =
            self.f.levels(q - 1).iter().enumerate().filter(|(_, &l)| l > p - r).map(|(i, _)| i).collect();
        let out: Vec<SparseVec<F>> = if rows.is_empty() || !cx.in_range(q - 1) {
            cols.iter().map(|&i| SparseVec::unit(i)).collect()
        } else {
            let sub = cx.differential(q).submatrix(&rows, &cols);
            Reduction::new(&sub, true).kernel_basis().into_iter().map(|v| v.remap(|j| Some(cols[j]))).collect()
        };
        self.z_cache.lock().unwrap().insert((q, p, r), out.clone());
        out
    }

    /// Spanning set of `Z^{r-1}_{p-1} C_q + d Z^{r-1}_{p+r-1} C_{q+1}`.
    fn denominator(&self, q: i64, p: i64, r: i64) -> Vec<SparseVec<F>> {
        let mut out = self.z(q, p - 1, r - 1);
        let cx = self.f.complex();
        if cx.in_range(q + 1) {
            let d = cx.differential(q + 1);
            out.extend(self.z(q + 1, p + r - 1, r - 1).iter().map(|y| d.mul_vec(y)));
        }
        out
    }

    pub fn cell(&self, q: i64, p: i64, r: i64) -> PageCell<F> {
        PageCell::new(&self.denominator(q, p, r), &self.z(q, p, r))
    }

    pub fn page(&self, r: i64) -> SpectralPage<F> {
        let cx = self.f.complex();
        let mut all: BTreeMap<(i64, i64), (i64, PageCell<F>)> = BTreeMap::new();
        for q in cx.degrees() {
            for p in self.f.distinct_levels(q) {
                all.insert((p, q - p), (q, self.cell(q, p, r)));
            }
        }
        let mut differentials = BTreeMap::new();
        for (&(k, h), (q, cell)) in &all {
            if cell.dim == 0 {
                continue;
            }
            let tgt = (k - r, h + r - 1);
            let Some((_, tcell)) = all.get(&tgt) else { continue };
            if tcell.dim == 0 {
                continue;
            }
            let d = cx.differential(*q);
            let cols = cell
                .basis
                .iter()
                .map(|z| tcell.class_of(&d.mul_vec(z)).expect("d maps Z^r_p into Z^r_{p-r}"))
                .collect();
            differentials.insert((k, h), SparseMat::from_columns(tcell.dim, cols));
        }
        let cells = all.into_iter().filter(|(_, (_, c))| c.dim > 0).map(|(k, (_, c))| (k, c)).collect();
        SpectralPage { r, cells, differentials }
    }
}

/// Page `r ≥ 0` computed directly from `Z^r / B^r`.
pub fn page<F: Field>(f: &FilteredComplex<F>, r: i64) -> SpectralPage<F> {
    PageEngine::new(f).page(r)
}
