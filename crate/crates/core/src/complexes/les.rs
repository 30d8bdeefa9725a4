use std::collections::BTreeMap;

use super::chain::{HomologyData, Orientation};
use super::map::ChainMap;
use crate::error::{Error, Result};
use crate::qlinalg::{rank, Field, Reduction, SparseMat};

/// One group in a long exact sequence together with the ranks of the maps
/// entering and leaving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub label: String,
    pub degree: i64,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    /// image of the incoming map equals the kernel of the outgoing one
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct ExactSequenceReport<F> {
    /// Nodes in sequence order (decreasing degree for chain complexes).
    pub nodes: Vec<Node>,
    /// Connecting maps keyed by the degree of their source in the quotient
    /// complex, in representative bases.
    pub connecting: BTreeMap<i64, SparseMat<F>>,
    pub all_exact: bool,
}

impl<F> ExactSequenceReport<F> {
    pub fn node(&self, label: &str, degree: i64) -> Option<&Node> {
        self.nodes.iter().find(|n| n.label == label && n.degree == degree)
    }

    pub fn first_failure(&self) -> Option<&Node> {
        self.nodes.iter().find(|n| !n.exact)
    }
}

/// Long exact homology sequence of `0 → A → B → C → 0`.
///
/// `incl` must have degree 0 and `proj` any degree `s`, so the sequence reads
/// `H_q(A) → H_q(B) → H_{q+s}(C) → H_{q∓1}(A)`. The connecting map sends
/// `[c]` to the class of `a` with `incl(a) = d(b)` for any lift `proj(b) = c`;
/// no extra sign is introduced.
pub fn les_of_ses<F: Field>(incl: &ChainMap<F>, proj: &ChainMap<F>) -> Result<ExactSequenceReport<F>> {
    let b = incl.target();
    let lo = b.min_degree();
    let hi = b.max_degree();
    les_of_ses_window(incl, proj, lo, hi)
}

/// As [`les_of_ses`], recording only nodes whose `B`-degree lies in
/// `lo..=hi`, plus the `A`/`C` groups adjacent to them.
pub fn les_of_ses_window<F: Field>(
    incl: &ChainMap<F>,
    proj: &ChainMap<F>,
    lo: i64,
    hi: i64,
) -> Result<ExactSequenceReport<F>> {
    let a_cx = incl.source().clone();
    let b_cx = incl.target().clone();
    let c_cx = proj.target().clone();
    if incl.shift() != 0 {
        return Err(Error::input("inclusion must have degree 0"));
    }
    if proj.source().dims() != b_cx.dims() || proj.source().min_degree() != b_cx.min_degree() {
        return Err(Error::input("projection source differs from inclusion target"));
    }
    let s = proj.shift();
    let step = b_cx.orientation().step();

    // Short exactness, degree by degree.
    for q in b_cx.degrees().chain(a_cx.degrees()).chain(c_cx.degrees().map(|t| t - s)) {
        let i = incl.component(q);
        let p = proj.component(q);
        let ri = rank(&i);
        let rp = rank(&p);
        if ri != a_cx.dim(q) {
            return Err(Error::input(format!("inclusion not injective in degree {q}")));
        }
        if rp != c_cx.dim(q + s) {
            return Err(Error::input(format!("projection not surjective in degree {q}")));
        }
        if !p.mul(&i)?.is_zero() {
            return Err(Error::input(format!("projection ∘ inclusion ≠ 0 in degree {q}")));
        }
        if ri + rp != b_cx.dim(q) {
            return Err(Error::input(format!("sequence not exact in the middle in degree {q}")));
        }
    }

    let mut ha: BTreeMap<i64, HomologyData<F>> = BTreeMap::new();
    let mut hb: BTreeMap<i64, HomologyData<F>> = BTreeMap::new();
    let mut hc: BTreeMap<i64, HomologyData<F>> = BTreeMap::new();
    let get = |m: &mut BTreeMap<i64, HomologyData<F>>, cx: &super::ChainComplex<F>, q: i64| {
        m.entry(q).or_insert_with(|| HomologyData::new(cx, q)).clone()
    };

    let mut i_rank: BTreeMap<i64, usize> = BTreeMap::new();
    let mut p_rank: BTreeMap<i64, usize> = BTreeMap::new();
    let mut d_rank: BTreeMap<i64, usize> = BTreeMap::new();
    let mut connecting = BTreeMap::new();

    let qs: Vec<i64> = ((lo - 1)..=(hi + 1)).collect();
    for &q in &qs {
        let a_q = get(&mut ha, &a_cx, q);
        let b_q = get(&mut hb, &b_cx, q);
        let c_q = get(&mut hc, &c_cx, q + s);
        let a_next = get(&mut ha, &a_cx, q + step);

        let im = incl.induced_matrix(q, &a_q, &b_q)?;
        let pm = proj.induced_matrix(q, &b_q, &c_q)?;
        if !pm.mul(&im)?.is_zero() {
            return Err(Error::defect(format!("p∘i ≠ 0 on homology in degree {q}")));
        }

        // connecting map H_{q+s}(C) → H_{q+step}(A)
        let lift = Reduction::new(&proj.component(q), true);
        let a_incl = Reduction::new(&incl.component(q + step), true);
        let mut cols = Vec::new();
        for c in c_q.representatives() {
            let bl = lift.solve(c).ok_or_else(|| Error::defect("cycle of C has no lift"))?;
            let db = b_cx.differential(q).mul_vec(&bl);
            let a = a_incl.solve(&db).ok_or_else(|| Error::defect("boundary of lift not in A"))?;
            let cls = a_next.class_of(&a).ok_or_else(|| Error::defect("connecting image is not a cycle"))?;
            cols.push(cls);
        }
        let dm = SparseMat::from_columns(a_next.dim(), cols);
        // ∂∘p_* = 0 and i_*∘∂ = 0
        if !dm.mul(&pm)?.is_zero() {
            return Err(Error::defect(format!("∂∘p ≠ 0 in degree {q}")));
        }
        let b_next = get(&mut hb, &b_cx, q + step);
        let im_next = incl.induced_matrix(q + step, &a_next, &b_next)?;
        if !im_next.mul(&dm)?.is_zero() {
            return Err(Error::defect(format!("i∘∂ ≠ 0 in degree {q}")));
        }
        i_rank.insert(q, rank(&im));
        p_rank.insert(q, rank(&pm));
        d_rank.insert(q, rank(&dm));
        connecting.insert(q + s, dm);
    }

    let mut nodes = Vec::new();
    let order: Vec<i64> = match b_cx.orientation() {
        Orientation::Chain => (lo..=hi).rev().collect(),
        Orientation::Cochain => (lo..=hi).collect(),
    };
    for q in order {
        let mk = |label: &str, degree: i64, dim: usize, rin: usize, rout: usize| Node {
            label: label.to_string(),
            degree,
            dim,
            rank_in: rin,
            rank_out: rout,
            exact: rin + rout == dim,
        };
        // A_q: in = ∂ from C_{q-step+s}, out = i_q
        nodes.push(mk("A", q, ha[&q].dim(), d_rank[&(q - step)], i_rank[&q]));
        nodes.push(mk("B", q, hb[&q].dim(), i_rank[&q], p_rank[&q]));
        nodes.push(mk("C", q + s, hc[&(q + s)].dim(), p_rank[&q], d_rank[&q]));
    }
    let all_exact = nodes.iter().all(|n| n.exact);
    Ok(ExactSequenceReport { nodes, connecting, all_exact })
}
