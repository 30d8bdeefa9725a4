use std::sync::Arc;

use crate::complexes::{ChainComplex, ChainMap, ExactSequenceReport, HomologyData, Node};
use crate::error::{Error, Result};
use crate::qlinalg::{rank, Echelon, Field, Reduction, SparseMat, SparseVec};

/// How the tower continues past the last materialized stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// Constant, with identity maps.
    Identity,
    /// The last map `V_N → V_{N-1}` (square) repeats forever.
    Repeat,
}

/// Inverse system `V_0 ← V_1 ← … ← V_N`, `maps[n]: V_{n+1} → V_n`.
#[derive(Clone, Debug)]
pub struct Tower<F> {
    pub dims: Vec<usize>,
    pub maps: Vec<SparseMat<F>>,
    pub tail: Tail,
}

impl<F: Field> Tower<F> {
    pub fn new(dims: Vec<usize>, maps: Vec<SparseMat<F>>, tail: Tail) -> Result<Self> {
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(Error::input("a tower with N+1 stages needs N maps"));
        }
        for (n, m) in maps.iter().enumerate() {
            if m.rows() != dims[n] || m.cols() != dims[n + 1] {
                return Err(Error::input(format!("map {n} has shape {}x{}", m.rows(), m.cols())));
            }
        }
        if tail == Tail::Repeat && (maps.is_empty() || dims[dims.len() - 1] != dims[dims.len() - 2]) {
            return Err(Error::input("a repeating tail needs a square last map"));
        }
        Ok(Tower { dims, maps, tail })
    }

    pub fn constant(dim: usize, stages: usize) -> Self {
        Tower { dims: vec![dim; stages], maps: vec![SparseMat::identity(dim); stages - 1], tail: Tail::Identity }
    }

    fn last(&self) -> usize {
        self.dims.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct TowerLimits<F> {
    pub lim_dim: usize,
    /// Compatible families `(v_0, …, v_N)` in product coordinates.
    pub lim_basis: Vec<SparseVec<F>>,
    /// `dim coker F` on the materialized product.
    pub lim1_dim: usize,
    /// Dimension of the stable image in every stage.
    pub stable_image_dims: Vec<usize>,
    /// Images stabilized (Mittag-Leffler), so `lim¹ = 0` for the whole tower.
    pub lim1_certified_zero: bool,
}

fn span_basis<F: Field>(vs: impl IntoIterator<Item = SparseVec<F>>) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for v in vs {
        if e.insert(&v) {
            out.push(v);
        }
    }
    out
}

/// Stable image inside the last stage.
fn stable_top<F: Field>(t: &Tower<F>, budget: usize) -> Result<Vec<SparseVec<F>>> {
    let n = t.last();
    let all: Vec<SparseVec<F>> = (0..t.dims[n]).map(SparseVec::unit).collect();
    match t.tail {
        Tail::Identity => Ok(all),
        Tail::Repeat => {
            let phi = &t.maps[n - 1];
            let mut cur = all;
            for _ in 0..=budget {
                let next = span_basis(cur.iter().map(|v| phi.mul_vec(v)));
                if next.len() == cur.len() {
                    return Ok(cur);
                }
                cur = next;
            }
            Err(Error::budget("tower images did not stabilize within budget"))
        }
    }
}

/// `lim = ker F` and `lim¹ = coker F` for `F(v)_k = v_k − φ_k(v_{k+1})`.
pub fn tower_limits<F: Field>(t: &Tower<F>, budget: usize) -> Result<TowerLimits<F>> {
    let n = t.last();
    let offs: Vec<usize> = t.dims.iter().scan(0, |acc, &d| {
        let o = *acc;
        *acc += d;
        Some(o)
    }).collect();
    let total: usize = t.dims.iter().sum();
    let rows_f: usize = t.dims[..n].iter().sum();

    let stable = stable_top(t, budget)?;
    let mut top = Echelon::new();
    for v in &stable {
        top.insert(v);
    }
    let pivots = top.pivot_positions();
    let free: Vec<usize> = (0..t.dims[n]).filter(|i| pivots.binary_search(i).is_err()).collect();

    // Rows: F, then the class of v_N modulo the stable image.
    let mut cols = Vec::with_capacity(total);
    for k in 0..=n {
        for i in 0..t.dims[k] {
            let mut pairs = Vec::new();
            pairs.push((offs[k] + i, F::one()));
            if k > 0 {
                for (r, c) in t.maps[k - 1].col(i).entries() {
                    pairs.push((offs[k - 1] + r, c.neg()));
                }
            }
            // v_N itself has no F-row of its own
            let mut v: Vec<(usize, F)> = pairs.into_iter().filter(|(r, _)| *r < rows_f).collect();
            if k == n {
                let nf = top.normal_form(&SparseVec::unit(i));
                for (j, f) in free.iter().enumerate() {
                    let c = nf.get(*f);
                    if !c.is_zero() {
                        v.push((rows_f + j, c));
                    }
                }
            }
            cols.push(SparseVec::from_pairs(v));
        }
    }
    let g = SparseMat::from_columns(rows_f + free.len(), cols);
    let lim_basis = Reduction::new(&g, true).kernel_basis();

    let f_only = g.submatrix(&(0..rows_f).collect::<Vec<_>>(), &(0..total).collect::<Vec<_>>());
    let lim1_dim = rows_f - rank(&f_only);

    let mut stable_image_dims = vec![0; n + 1];
    let mut img = stable;
    stable_image_dims[n] = img.len();
    for k in (0..n).rev() {
        img = span_basis(img.iter().map(|v| t.maps[k].mul_vec(v)));
        stable_image_dims[k] = img.len();
    }
    Ok(TowerLimits { lim_dim: lim_basis.len(), lim_basis, lim1_dim, stable_image_dims, lim1_certified_zero: true })
}

/// Tower with distinguished subspaces `B_n ⊆ A_n`.
#[derive(Clone, Debug)]
pub struct SubTower<F> {
    pub tower: Tower<F>,
    /// Spanning vectors of `B_n`.
    pub sub: Vec<Vec<SparseVec<F>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternReport {
    pub hypotheses_hold: bool,
    /// First stage violating a hypothesis, with the reason.
    pub failing_stage: Option<(usize, String)>,
    /// `dim C_n = dim A_n / B_n`.
    pub quotient_dims: Vec<usize>,
    /// `rank(A_{n+2} → A_n)`.
    pub two_step_image_dims: Vec<usize>,
    /// `lim A_n` when the hypotheses hold.
    pub lim_dim: Option<usize>,
    pub lim1_zero: bool,
}

/// Checks that `C_{n+1} → C_n` are isomorphisms and `B_{n+1} → B_n` vanish.
pub fn ml_pattern_check<F: Field>(t: &SubTower<F>) -> Result<PatternReport> {
    let tw = &t.tower;
    if t.sub.len() != tw.dims.len() {
        return Err(Error::input("one subspace per stage required"));
    }
    let echs: Vec<Echelon<F>> = t
        .sub
        .iter()
        .map(|vs| {
            let mut e = Echelon::new();
            for v in vs {
                e.insert(v);
            }
            e
        })
        .collect();
    for (n, m) in tw.maps.iter().enumerate() {
        for b in &t.sub[n + 1] {
            if !echs[n].contains(&m.mul_vec(b)) {
                return Err(Error::input(format!("map {n} does not preserve the subspaces")));
            }
        }
    }
    let free = |n: usize| -> Vec<usize> {
        let p = echs[n].pivot_positions();
        (0..tw.dims[n]).filter(|i| p.binary_search(i).is_err()).collect()
    };
    let quotient_dims: Vec<usize> = (0..tw.dims.len()).map(|n| free(n).len()).collect();
    let mut failing = None;
    for (n, m) in tw.maps.iter().enumerate() {
        if t.sub[n + 1].iter().any(|b| !m.mul_vec(b).is_zero()) {
            failing.get_or_insert((n + 1, "B-level map is nonzero".to_string()));
            continue;
        }
        let (src, tgt) = (free(n + 1), free(n));
        let cols = src
            .iter()
            .map(|&j| {
                let nf = echs[n].normal_form(&m.mul_vec(&SparseVec::unit(j)));
                SparseVec::from_pairs(tgt.iter().enumerate().map(|(k, &i)| (k, nf.get(i))).collect())
            })
            .collect();
        let induced = SparseMat::from_columns(tgt.len(), cols);
        if src.len() != tgt.len() || rank(&induced) != tgt.len() {
            failing.get_or_insert((n + 1, "quotient map is not an isomorphism".to_string()));
        }
    }
    let mut two_step_image_dims = Vec::new();
    for n in 0..tw.maps.len().saturating_sub(1) {
        two_step_image_dims.push(rank(&tw.maps[n].mul(&tw.maps[n + 1])?));
    }
    let hold = failing.is_none();
    Ok(PatternReport {
        hypotheses_hold: hold,
        failing_stage: failing,
        lim_dim: hold.then(|| quotient_dims[0]),
        quotient_dims,
        two_step_image_dims,
        lim1_zero: hold,
    })
}

/// Inverse system of chain complexes, `maps[n]: V_{n+1} → V_n` of degree 0.
#[derive(Clone, Debug)]
pub struct ComplexTower<F> {
    pub stages: Vec<Arc<ChainComplex<F>>>,
    pub maps: Vec<ChainMap<F>>,
}

/// Checks `0 → lim¹ H_{q+1} → H_q(lim) → lim H_q → 0` in every degree, with
/// `lim = ker F` on the materialized product.
pub fn exact_limp_check<F: Field>(t: &ComplexTower<F>) -> Result<ExactSequenceReport<F>> {
    let n = t.stages.len().checked_sub(1).ok_or_else(|| Error::input("empty tower"))?;
    if t.maps.len() != n {
        return Err(Error::input("a tower with N+1 stages needs N maps"));
    }
    let lo = t.stages[0].min_degree();
    let hi = t.stages[0].max_degree();
    for (k, m) in t.maps.iter().enumerate() {
        if m.shift() != 0 || !Arc::ptr_eq(m.source(), &t.stages[k + 1]) && m.source().dims() != t.stages[k + 1].dims() {
            return Err(Error::input(format!("map {k} does not match the stages")));
        }
        for q in lo..=hi {
            if rank(&m.component(q)) != t.stages[k].dim(q) {
                return Err(Error::input(format!("map {k} is not surjective in degree {q}")));
            }
        }
    }
    for s in &t.stages {
        if s.min_degree() != lo || s.max_degree() != hi {
            return Err(Error::input("stages must share a degree range"));
        }
    }

    let offs = |q: i64| -> Vec<usize> {
        t.stages.iter().scan(0, |acc, s| {
            let o = *acc;
            *acc += s.dim(q);
            Some(o)
        }).collect()
    };
    let mut prod = (*t.stages[0]).clone();
    for s in &t.stages[1..] {
        prod = prod.direct_sum(s)?;
    }
    let mut kernels = std::collections::BTreeMap::new();
    for q in lo..=hi {
        let o = offs(q);
        let rows: usize = (0..n).map(|k| t.stages[k].dim(q)).sum();
        let mut cols = Vec::new();
        for k in 0..=n {
            for i in 0..t.stages[k].dim(q) {
                let mut v = Vec::new();
                if k < n {
                    v.push((o[k] + i, F::one()));
                }
                if k > 0 {
                    for (r, c) in t.maps[k - 1].component(q).col(i).entries() {
                        v.push((o[k - 1] + r, c.neg()));
                    }
                }
                cols.push(SparseVec::from_pairs(v));
            }
        }
        let fq = SparseMat::from_columns(rows, cols);
        kernels.insert(q, Reduction::new(&fq, true).kernel_basis());
    }
    let (lim, incl) = prod.subcomplex(&|q| kernels.get(&q).cloned().unwrap_or_default())?;

    let mut nodes = Vec::new();
    let homology_tower = |q: i64| -> Result<(Vec<HomologyData<F>>, Tower<F>)> {
        let hs: Vec<HomologyData<F>> = t.stages.iter().map(|s| HomologyData::new(s, q)).collect();
        let mut maps = Vec::new();
        for k in 0..n {
            maps.push(t.maps[k].induced_matrix(q, &hs[k + 1], &hs[k])?);
        }
        let tw = Tower::new(hs.iter().map(|h| h.dim()).collect(), maps, Tail::Identity)?;
        Ok((hs, tw))
    };
    for q in (lo..=hi).rev() {
        let (hs, tw) = homology_tower(q)?;
        let lim_h = tower_limits(&tw, 0)?.lim_dim;
        let lim1_next = if q < hi { tower_limits(&homology_tower(q + 1)?.1, 0)?.lim1_dim } else { 0 };
        let hl = HomologyData::new(&lim, q);
        let o = offs(q);
        let idx = (q - lo) as usize;
        let total_h: usize = hs.iter().map(|h| h.dim()).sum();
        let mut hoffs = Vec::new();
        let mut acc = 0;
        for h in &hs {
            hoffs.push(acc);
            acc += h.dim();
        }
        let mut cols = Vec::new();
        for z in hl.representatives() {
            let zp = incl[idx].mul_vec(z);
            let mut pairs = Vec::new();
            for k in 0..=n {
                let dk = t.stages[k].dim(q);
                let zk = zp.remap(|i| (i >= o[k] && i < o[k] + dk).then(|| i - o[k]));
                let cls = hs[k].class_of(&zk).ok_or_else(|| Error::defect("lim cycle does not restrict to a cycle"))?;
                pairs.extend(cls.entries().iter().map(|(i, c)| (hoffs[k] + i, c.clone())));
            }
            cols.push(SparseVec::from_pairs(pairs));
        }
        let mu = SparseMat::from_columns(total_h, cols);
        let rk = rank(&mu);
        let ker = hl.dim() - rk;
        nodes.push(Node {
            label: "lim1 H".into(),
            degree: q + 1,
            dim: lim1_next,
            rank_in: 0,
            rank_out: ker,
            exact: ker == lim1_next,
        });
        nodes.push(Node { label: "H(lim)".into(), degree: q, dim: hl.dim(), rank_in: ker, rank_out: rk, exact: true });
        nodes.push(Node { label: "lim H".into(), degree: q, dim: lim_h, rank_in: rk, rank_out: 0, exact: rk == lim_h });
    }
    let all_exact = nodes.iter().all(|n| n.exact);
    Ok(ExactSequenceReport { nodes, connecting: Default::default(), all_exact })
}
