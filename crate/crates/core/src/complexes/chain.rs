use crate::error::{Error, Result};
use crate::qlinalg::{rank, Echelon, Field, Reduction, SparseMat, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Differential lowers the degree.
    Chain,
    /// Differential raises the degree.
    Cochain,
}

impl Orientation {
    pub fn step(self) -> i64 {
        match self {
            Orientation::Chain => -1,
            Orientation::Cochain => 1,
        }
    }
}

/// Finite graded complex. Degrees outside `min_degree..min_degree+len` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex<F> {
    min_degree: i64,
    dims: Vec<usize>,
    /// `diffs[i]` leaves degree `min_degree + i`.
    diffs: Vec<SparseMat<F>>,
    orientation: Orientation,
}

impl<F: Field> ChainComplex<F> {
    /// `diffs[i]` is the differential leaving degree `min_degree + i`. Shapes
    /// and `d∘d = 0` are checked.
    pub fn new(min_degree: i64, dims: Vec<usize>, diffs: Vec<SparseMat<F>>, orientation: Orientation) -> Result<Self> {
        if dims.len() != diffs.len() {
            return Err(Error::input("one differential per degree required"));
        }
        let c = ChainComplex { min_degree, dims, diffs, orientation };
        for (i, d) in c.diffs.iter().enumerate() {
            let q = min_degree + i as i64;
            let target = c.dim(q + orientation.step());
            if d.cols() != c.dims[i] || d.rows() != target {
                return Err(Error::input(format!(
                    "differential at degree {q} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    target,
                    c.dims[i]
                )));
            }
        }
        for i in 0..c.diffs.len() {
            let q = min_degree + i as i64;
            let next = q + orientation.step();
            if c.in_range(next) {
                let dd = c.differential(next).mul(&c.diffs[i])?;
                if !dd.is_zero() {
                    return Err(Error::input(format!("d∘d ≠ 0 leaving degree {q}")));
                }
            }
        }
        Ok(c)
    }

    /// Chain complex from the differentials `d_q: C_q → C_{q-1}`, degrees `min..`.
    pub fn chain(min_degree: i64, dims: Vec<usize>, diffs: Vec<SparseMat<F>>) -> Result<Self> {
        Self::new(min_degree, dims, diffs, Orientation::Chain)
    }

    pub fn cochain(min_degree: i64, dims: Vec<usize>, diffs: Vec<SparseMat<F>>) -> Result<Self> {
        Self::new(min_degree, dims, diffs, Orientation::Cochain)
    }

    /// Complex with zero differentials.
    pub fn zero_differential(min_degree: i64, dims: Vec<usize>, orientation: Orientation) -> Self {
        let n = dims.len();
        let mut diffs = Vec::with_capacity(n);
        for i in 0..n {
            let t = i as i64 + orientation.step();
            let rows = if t >= 0 && (t as usize) < n { dims[t as usize] } else { 0 };
            diffs.push(SparseMat::zero(rows, dims[i]));
        }
        ChainComplex { min_degree, dims, diffs, orientation }
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    pub fn in_range(&self, q: i64) -> bool {
        q >= self.min_degree && q <= self.max_degree()
    }

    pub fn dim(&self, q: i64) -> usize {
        if self.in_range(q) {
            self.dims[(q - self.min_degree) as usize]
        } else {
            0
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Differential leaving degree `q` (a zero matrix of the right shape
    /// outside the stored range).
    pub fn differential(&self, q: i64) -> SparseMat<F> {
        if self.in_range(q) {
            self.diffs[(q - self.min_degree) as usize].clone()
        } else {
            SparseMat::zero(self.dim(q + self.orientation.step()), 0)
        }
    }

    pub fn differential_ref(&self, q: i64) -> Option<&SparseMat<F>> {
        self.in_range(q).then(|| &self.diffs[(q - self.min_degree) as usize])
    }

    /// Differential arriving at degree `q`.
    pub fn incoming(&self, q: i64) -> SparseMat<F> {
        let src = q - self.orientation.step();
        if self.in_range(src) {
            self.diffs[(src - self.min_degree) as usize].clone()
        } else {
            SparseMat::zero(self.dim(q), 0)
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|q| if q.rem_euclid(2) == 0 { self.dim(q) as i64 } else { -(self.dim(q) as i64) }).sum()
    }

    /// `dim ker d_q − rank d_{into q}` from two rank computations.
    pub fn homology_dim(&self, q: i64) -> usize {
        if !self.in_range(q) {
            return 0;
        }
        let out = self.differential_ref(q).map_or(0, rank);
        let inc = rank(&self.incoming(q));
        self.dim(q) - out - inc
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees().map(|q| self.homology_dim(q)).collect()
    }

    /// Homology with explicit representatives.
    pub fn homology(&self, q: i64) -> Homology<F> {
        if !self.in_range(q) {
            return Homology { degree: q, dim: 0, representatives: Vec::new(), in_range: false };
        }
        let data = HomologyData::new(self, q);
        Homology { degree: q, dim: data.dim(), representatives: data.representatives().to_vec(), in_range: true }
    }

    /// Same complex with degrees shifted by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        ChainComplex { min_degree: self.min_degree + k, ..self.clone() }
    }

    /// Subcomplex spanned by `spans[q]` (vectors in degree `q`). Returns the
    /// complex in an echelon basis of the spans and the inclusion components.
    pub fn subcomplex(&self, spans: &dyn Fn(i64) -> Vec<SparseVec<F>>) -> Result<(ChainComplex<F>, Vec<SparseMat<F>>)> {
        let mut bases: Vec<Echelon<F>> = Vec::new();
        for q in self.degrees() {
            let mut e = Echelon::new();
            for v in spans(q) {
                e.insert(&v);
            }
            bases.push(e);
        }
        // echelons whose generators are exactly the stored basis vectors
        let coords_of: Vec<Echelon<F>> = bases.iter().map(rebased).collect();
        let idx = |q: i64| (q - self.min_degree) as usize;
        let mut dims = Vec::new();
        let mut diffs = Vec::new();
        let mut incl = Vec::new();
        for q in self.degrees() {
            let e = &bases[idx(q)];
            dims.push(e.dim());
            incl.push(SparseMat::from_columns(self.dim(q), e.basis().to_vec()));
            let t = q + self.orientation.step();
            let d = self.differential(q);
            let mut cols = Vec::new();
            for v in e.basis() {
                let dv = d.mul_vec(v);
                if !self.in_range(t) {
                    cols.push(SparseVec::new());
                    continue;
                }
                let coords = coords_of[idx(t)].coordinates(&dv).ok_or_else(|| {
                    Error::input(format!("span in degree {q} is not closed under the differential"))
                })?;
                cols.push(coords);
            }
            let rows = if self.in_range(t) { bases[idx(t)].dim() } else { 0 };
            diffs.push(SparseMat::from_columns(rows, cols));
        }
        Ok((ChainComplex::new(self.min_degree, dims, diffs, self.orientation)?, incl))
    }

    /// Quotient by the subcomplex spanned by `spans[q]`. Basis of the
    /// quotient: standard vectors off the echelon pivot positions. Returns the
    /// quotient and the projection components.
    pub fn quotient(&self, spans: &dyn Fn(i64) -> Vec<SparseVec<F>>) -> Result<(ChainComplex<F>, Vec<SparseMat<F>>)> {
        let mut bases: Vec<(Echelon<F>, Vec<Option<usize>>, usize)> = Vec::new();
        for q in self.degrees() {
            let mut e = Echelon::new();
            for v in spans(q) {
                e.insert(&v);
            }
            let piv: std::collections::HashSet<usize> = e.pivot_positions().into_iter().collect();
            let mut pos = vec![None; self.dim(q)];
            let mut k = 0;
            for (i, p) in pos.iter_mut().enumerate() {
                if !piv.contains(&i) {
                    *p = Some(k);
                    k += 1;
                }
            }
            bases.push((e, pos, k));
        }
        let idx = |q: i64| (q - self.min_degree) as usize;
        let project = |q: i64, v: &SparseVec<F>| -> SparseVec<F> {
            let (e, pos, _) = &bases[idx(q)];
            e.normal_form(v).remap(|i| pos[i])
        };
        let mut dims = Vec::new();
        let mut diffs = Vec::new();
        let mut proj = Vec::new();
        for q in self.degrees() {
            let (e, pos, k) = &bases[idx(q)];
            dims.push(*k);
            let pcols: Vec<SparseVec<F>> = (0..self.dim(q)).map(|i| project(q, &SparseVec::unit(i))).collect();
            proj.push(SparseMat::from_columns(*k, pcols));
            let t = q + self.orientation.step();
            let d = self.differential(q);
            let rows = if self.in_range(t) { bases[idx(t)].2 } else { 0 };
            let mut cols = Vec::new();
            for (i, p) in pos.iter().enumerate() {
                if p.is_none() {
                    continue;
                }
                if !self.in_range(t) {
                    cols.push(SparseVec::new());
                    continue;
                }
                let dv = d.mul_vec(&SparseVec::unit(i));
                cols.push(project(t, &dv));
            }
            let _ = e;
            diffs.push(SparseMat::from_columns(rows, cols));
        }
        Ok((ChainComplex::new(self.min_degree, dims, diffs, self.orientation)?, proj))
    }

    /// Degreewise direct sum; both complexes must share orientation.
    pub fn direct_sum(&self, other: &ChainComplex<F>) -> Result<ChainComplex<F>> {
        if self.orientation != other.orientation {
            return Err(Error::input("orientation mismatch"));
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        let mut dims = Vec::new();
        let mut diffs = Vec::new();
        for q in lo..=hi {
            dims.push(self.dim(q) + other.dim(q));
            diffs.push(self.differential(q).direct_sum(&other.differential(q)));
        }
        ChainComplex::new(lo, dims, diffs, self.orientation)
    }

    /// Complex with every differential transposed and the orientation flipped
    /// (the dual complex).
    pub fn dual(&self) -> ChainComplex<F> {
        let flipped = match self.orientation {
            Orientation::Chain => Orientation::Cochain,
            Orientation::Cochain => Orientation::Chain,
        };
        let mut diffs = Vec::new();
        for q in self.degrees() {
            diffs.push(self.incoming(q).transpose());
        }
        ChainComplex { min_degree: self.min_degree, dims: self.dims.clone(), diffs, orientation: flipped }
    }
}

/// Echelon spanning the same space whose generators are the stored basis of `e`.
pub(crate) fn rebased<F: Field>(e: &Echelon<F>) -> Echelon<F> {
    let mut fresh = Echelon::new();
    for b in e.basis() {
        fresh.insert(b);
    }
    fresh
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology<F> {
    pub degree: i64,
    pub dim: usize,
    /// Cycles independent modulo boundaries.
    pub representatives: Vec<SparseVec<F>>,
    /// `false` when the degree lies outside the complex.
    pub in_range: bool,
}

/// Cycles, boundaries and a chosen homology basis in one degree, able to
/// express any cycle in that basis.
#[derive(Clone, Debug)]
pub struct HomologyData<F> {
    echelon: Echelon<F>,
    boundary_gens: usize,
    reps: Vec<SparseVec<F>>,
    rep_gen_ids: Vec<usize>,
}

impl<F: Field> HomologyData<F> {
    pub fn new(c: &ChainComplex<F>, q: i64) -> Self {
        let mut echelon = Echelon::new();
        let inc = c.incoming(q);
        for col in inc.columns() {
            echelon.insert(col);
        }
        let boundary_gens = echelon.generators();
        let mut reps = Vec::new();
        let mut rep_gen_ids = Vec::new();
        if c.in_range(q) {
            let out = c.differential(q);
            let red = Reduction::new(&out, true);
            for z in red.kernel_basis() {
                let id = echelon.generators();
                if echelon.insert(&z) {
                    reps.push(z);
                    rep_gen_ids.push(id);
                }
            }
        }
        HomologyData { echelon, boundary_gens, reps, rep_gen_ids }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[SparseVec<F>] {
        &self.reps
    }

    /// Coordinates of the class of cycle `z` in the representative basis.
    /// `None` if `z` is not in cycles (span of boundaries and representatives).
    pub fn class_of(&self, z: &SparseVec<F>) -> Option<SparseVec<F>> {
        let coords = self.echelon.coordinates(z)?;
        let pos: std::collections::HashMap<usize, usize> =
            self.rep_gen_ids.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        Some(coords.remap(|g| if g < self.boundary_gens { None } else { pos.get(&g).copied() }))
    }

    pub fn is_boundary(&self, z: &SparseVec<F>) -> bool {
        self.class_of(z).is_some_and(|c| c.is_zero())
    }
}
