#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use cornerhom::complexes::{ChainComplex, ChainMap};
use cornerhom::qlinalg::{q_int, SparseMat, SparseVec, Q};
use cornerhom::spectral::{Barcode, ComplexTower, FilteredComplex, Pair};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Q {
    q_int(n)
}

pub fn mat(rows: &[Vec<i64>]) -> SparseMat<Q> {
    SparseMat::from_i64(rows)
}

/// Elementary filtered complex with known pairs and essential classes, in a
/// scrambled adapted basis.
pub struct RandomFiltered {
    pub filtered: FilteredComplex<Q>,
    pub expected: Barcode,
}

pub fn random_filtered(rng: &mut ChaCha8Rng, max_dim: usize, levels: i64) -> RandomFiltered {
    let top = rng.gen_range(0..=3i64);
    // per degree: list of levels; pairs (x in q, y in q-1)
    let mut lv: Vec<Vec<i64>> = vec![Vec::new(); (top + 1) as usize];
    let mut d_pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); (top + 1) as usize];
    let mut expected = Barcode::default();
    for q in 0..=top {
        let qi = q as usize;
        let ess = rng.gen_range(0..=2);
        for _ in 0..ess {
            if lv[qi].len() < max_dim {
                let p = rng.gen_range(0..levels);
                lv[qi].push(p);
                expected.essential.push((q, p));
            }
        }
        if q >= 1 {
            let np = rng.gen_range(0..=2);
            for _ in 0..np {
                if lv[qi].len() < max_dim && lv[qi - 1].len() < max_dim {
                    let b = rng.gen_range(0..levels);
                    let dth = rng.gen_range(b..levels);
                    lv[qi - 1].push(b);
                    lv[qi].push(dth);
                    d_pairs[qi].push((lv[qi].len() - 1, lv[qi - 1].len() - 1));
                    expected.pairs.push(Pair { degree: q, birth: b, death: dth });
                }
            }
        }
    }
    let dims: Vec<usize> = lv.iter().map(|l| l.len()).collect();
    let mut diffs = Vec::new();
    for qi in 0..=top as usize {
        let rows = if qi == 0 { 0 } else { dims[qi - 1] };
        let trip = d_pairs[qi].iter().map(|&(x, y)| (y, x, q(1)));
        diffs.push(SparseMat::from_triplets(rows, dims[qi], trip).unwrap());
    }
    let base = ChainComplex::chain(0, dims.clone(), diffs).unwrap();
    // unitriangular change of basis respecting levels
    let mut subspaces: BTreeMap<i64, BTreeMap<i64, Vec<SparseVec<Q>>>> = BTreeMap::new();
    for qi in 0..=top as usize {
        let l = &lv[qi];
        let mut new_vecs = Vec::new();
        for i in 0..l.len() {
            let mut pairs = vec![(i, q(1))];
            for j in 0..l.len() {
                if j != i && (l[j], j) < (l[i], i) && rng.gen_bool(0.6) {
                    pairs.push((j, q(rng.gen_range(-3..=3))));
                }
            }
            new_vecs.push((l[i], SparseVec::from_pairs(pairs)));
        }
        let mut per_level = BTreeMap::new();
        for p in 0..levels {
            per_level.insert(p, new_vecs.iter().filter(|(lp, _)| *lp <= p).map(|(_, v)| v.clone()).collect());
        }
        subspaces.insert(qi as i64, per_level);
    }
    let (filtered, _) = FilteredComplex::from_subspaces(&base, &subspaces).unwrap();
    expected.essential.sort_unstable();
    expected.pairs.sort_unstable();
    RandomFiltered { filtered, expected }
}

/// Random chain complex: elementary pieces in a random basis (scrambled by
/// unitriangular matrices in both directions).
pub fn random_complex(rng: &mut ChaCha8Rng, max_dim: usize) -> (ChainComplex<Q>, Vec<usize>) {
    let rf = random_filtered(rng, max_dim, 1);
    let cx = rf.filtered.complex();
    let mut betti = vec![0; cx.dims().len()];
    for &(q, _) in &rf.expected.essential {
        betti[q as usize] += 1;
    }
    ((**cx).clone(), betti)
}

pub fn arc<T>(x: T) -> Arc<T> {
    Arc::new(x)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random surjective tower: each stage is a quotient of the next by the
/// subcomplex generated by a few random chains.
pub fn random_surjective_tower(rng: &mut ChaCha8Rng, stages: usize) -> ComplexTower<Q> {
    let (c, _) = random_complex(rng, 4);
    let mut cur = Arc::new(c);
    let mut st = vec![cur.clone()];
    let mut maps = Vec::new();
    for _ in 1..stages {
        let mut spans: Vec<Vec<SparseVec<Q>>> = vec![Vec::new(); cur.dims().len()];
        for qd in cur.degrees() {
            if cur.dim(qd) == 0 || !rng.gen_bool(0.5) {
                continue;
            }
            let v = SparseVec::from_pairs((0..cur.dim(qd)).map(|i| (i, q(rng.gen_range(-2..=2)))).collect());
            let dv = cur.differential(qd).mul_vec(&v);
            spans[(qd - cur.min_degree()) as usize].push(v);
            if qd > cur.min_degree() {
                spans[(qd - 1 - cur.min_degree()) as usize].push(dv);
            }
        }
        let base = cur.min_degree();
        let (qc, pr) = cur.quotient(&|qd| spans[(qd - base) as usize].clone()).unwrap();
        let qc = Arc::new(qc);
        maps.push(ChainMap::new(cur.clone(), qc.clone(), 0, pr).unwrap());
        st.push(qc.clone());
        cur = qc;
    }
    st.reverse();
    maps.reverse();
    ComplexTower { stages: st, maps }
}
