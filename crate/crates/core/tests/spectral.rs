mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::*;
use cornerhom::complexes::{ChainComplex, ChainMap, Orientation};
use cornerhom::qlinalg::{rank, SparseMat, SparseVec, Q};
use cornerhom::spectral::{
    barcode, converge, exact_limp_check, ml_pattern_check, page, tower_limits, ComplexTower, FilteredComplex,
    SpectralPage, SubTower, Tail, Tower,
};
use proptest::prelude::*;

/// Homology of page `r` at every cell, from the page's own matrices.
fn page_homology(p: &SpectralPage<Q>) -> BTreeMap<(i64, i64), usize> {
    let r = p.r;
    let mut out = BTreeMap::new();
    for (&(k, h), cell) in &p.cells {
        let out_rank = p.differentials.get(&(k, h)).map_or(0, rank);
        let src = (k + r, h - r + 1);
        let in_rank = p.differentials.get(&src).map_or(0, rank);
        let d = cell.dim - out_rank - in_rank;
        if d > 0 {
            out.insert((k, h), d);
        }
    }
    out
}

fn check_pages(f: &FilteredComplex<Q>, max_r: i64) {
    let bc = barcode(f);
    for r in 0..=max_r {
        let p = page(f, r);
        assert_eq!(p.dims(), bc.page_dims(r), "page {r}");
        for (&(k, h), d) in &p.differentials {
            let tgt = (k - r, h + r - 1);
            if let Some(d2) = p.differentials.get(&tgt) {
                assert!(d2.mul(d).unwrap().is_zero(), "d∘d at ({k},{h}) page {r}");
            }
            assert_eq!(rank(d), bc.differential_ranks(r).get(&(k, h)).copied().unwrap_or(0));
        }
        let next = page(f, r + 1);
        assert_eq!(page_homology(&p), next.dims(), "E^{} = H(E^{r})", r + 1);
    }
}

#[test]
fn trivial_filtration_page_one_is_homology() {
    let (c, betti) = random_complex(&mut seeded(11), 5);
    let f = FilteredComplex::trivial(Arc::new(c)).unwrap();
    let p1 = page(&f, 1);
    for (q, b) in betti.iter().enumerate() {
        assert_eq!(p1.dim(0, q as i64), *b);
    }
}

#[test]
fn split_cone_dies_on_page_two() {
    // x in degree 1 at level 1, y = dx in degree 0 at level 0
    let c = ChainComplex::chain(0, vec![1, 1], vec![SparseMat::zero(0, 1), mat(&[vec![1]])]).unwrap();
    let mut lv = BTreeMap::new();
    lv.insert(0, vec![0]);
    lv.insert(1, vec![1]);
    let f = FilteredComplex::new(Arc::new(c), lv).unwrap();
    let p1 = page(&f, 1);
    assert_eq!(p1.dim(0, 0), 1);
    assert_eq!(p1.dim(1, 0), 1);
    assert!(page(&f, 2).cells.is_empty());
    let rep = converge(&f).unwrap();
    assert_eq!(rep.degeneration_page, 2);
    assert!(rep.einf.is_empty());
}

#[test]
fn filtration_raising_differential_is_rejected() {
    let c = ChainComplex::chain(0, vec![1, 1], vec![SparseMat::zero(0, 1), mat(&[vec![1]])]).unwrap();
    let mut lv = BTreeMap::new();
    lv.insert(0, vec![1]);
    lv.insert(1, vec![0]);
    assert!(FilteredComplex::new(Arc::new(c), lv).is_err());
}

#[test]
fn fixed_random_filtrations() {
    let mut rng = seeded(2024);
    for _ in 0..30 {
        let rf = random_filtered(&mut rng, 5, 4);
        assert_eq!(barcode(&rf.filtered), rf.expected);
        check_pages(&rf.filtered, 4);
    }
}

#[test]
fn constant_tower() {
    let t = Tower::<Q>::constant(3, 4);
    let l = tower_limits(&t, 10).unwrap();
    assert_eq!((l.lim_dim, l.lim1_dim), (3, 0));
}

#[test]
fn zero_tower() {
    let t = Tower::new(vec![2, 2, 2], vec![SparseMat::<Q>::zero(2, 2); 2], Tail::Repeat).unwrap();
    let l = tower_limits(&t, 10).unwrap();
    assert_eq!((l.lim_dim, l.lim1_dim), (0, 0));
    assert_eq!(l.stable_image_dims, vec![0, 0, 0]);
}

#[test]
fn repeating_projection_tower() {
    // φ = diag(1, 0): stable image is one line
    let phi = mat(&[vec![1, 0], vec![0, 0]]);
    let t = Tower::new(vec![2, 2], vec![phi], Tail::Repeat).unwrap();
    let l = tower_limits(&t, 10).unwrap();
    assert_eq!(l.lim_dim, 1);
    assert!(l.lim1_certified_zero);
}

#[test]
fn nilpotent_tail_exhausts_small_budget() {
    let shift = mat(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
    let t = Tower::new(vec![3, 3], vec![shift], Tail::Repeat).unwrap();
    assert_eq!(tower_limits(&t, 1).unwrap_err().exit_code(), 3);
    assert_eq!(tower_limits(&t, 5).unwrap().lim_dim, 0);
}

#[test]
fn pattern_with_trivial_subspaces() {
    let t = SubTower { tower: Tower::<Q>::constant(2, 3), sub: vec![Vec::new(); 3] };
    let rep = ml_pattern_check(&t).unwrap();
    assert!(rep.hypotheses_hold);
    assert_eq!(rep.lim_dim, Some(2));
}

#[test]
fn pattern_with_full_subspaces_and_zero_maps() {
    let full: Vec<SparseVec<Q>> = (0..2).map(SparseVec::unit).collect();
    let tower = Tower::new(vec![2, 2, 2], vec![SparseMat::zero(2, 2); 2], Tail::Identity).unwrap();
    let rep = ml_pattern_check(&SubTower { tower, sub: vec![full; 3] }).unwrap();
    assert!(rep.hypotheses_hold);
    assert_eq!(rep.lim_dim, Some(0));
}

#[test]
fn pattern_failure_names_the_stage() {
    let tower = Tower::new(vec![1, 1, 1], vec![mat(&[vec![1]]), mat(&[vec![0]])], Tail::Identity).unwrap();
    let rep = ml_pattern_check(&SubTower { tower, sub: vec![Vec::new(); 3] }).unwrap();
    assert!(!rep.hypotheses_hold);
    assert_eq!(rep.failing_stage.unwrap().0, 2);
}

#[test]
fn constant_complex_tower() {
    let (c, betti) = random_complex(&mut seeded(5), 4);
    let c = Arc::new(c);
    let id = ChainMap::identity(c.clone());
    let t = ComplexTower { stages: vec![c.clone(), c.clone(), c.clone()], maps: vec![id.clone(), id] };
    let rep = exact_limp_check(&t).unwrap();
    assert!(rep.all_exact);
    for (q, b) in betti.iter().enumerate() {
        assert_eq!(rep.nodes.iter().find(|n| n.label == "H(lim)" && n.degree == q as i64).unwrap().dim, *b);
        assert_eq!(rep.nodes.iter().find(|n| n.label == "lim1 H" && n.degree == q as i64 + 1).unwrap().dim, 0);
    }
}

#[test]
fn non_surjective_tower_is_rejected() {
    let a = Arc::new(ChainComplex::<Q>::zero_differential(0, vec![1], Orientation::Chain));
    let zero = ChainMap::new(a.clone(), a.clone(), 0, vec![SparseMat::zero(1, 1)]).unwrap();
    let t = ComplexTower { stages: vec![a.clone(), a], maps: vec![zero] };
    assert_eq!(exact_limp_check(&t).unwrap_err().exit_code(), 2);
}

/// `C / F_{N-n}` for a filtered complex, with the quotient maps between them.
pub fn quotient_tower(f: &FilteredComplex<Q>) -> ComplexTower<Q> {
    let c = f.complex();
    let (lo, hi) = f.level_range().unwrap_or((0, 0));
    let mut stages = Vec::new();
    let mut projs = Vec::new();
    for p in (lo - 1..=hi).rev() {
        let (qc, pr) = c
            .quotient(&|q| f.indices_upto(q, p).into_iter().map(SparseVec::unit).collect())
            .unwrap();
        stages.push(Arc::new(qc));
        projs.push(pr);
    }
    // stages[0] = C/F_hi, last = C/F_{lo-1} = C
    let mut maps = Vec::new();
    for n in 0..stages.len() - 1 {
        // stage n+1 → stage n through C: lift by the section of projs[n+1]
        let comps: Vec<SparseMat<Q>> = c
            .degrees()
            .map(|q| {
                let idx = (q - c.min_degree()) as usize;
                let p_big = &projs[n + 1][idx];
                let p_small = &projs[n][idx];
                let cols = (0..p_big.rows())
                    .map(|j| {
                        let lift = cornerhom::qlinalg::solve(p_big, &SparseVec::unit(j)).unwrap().unwrap();
                        p_small.mul_vec(&lift)
                    })
                    .collect();
                SparseMat::from_columns(p_small.rows(), cols)
            })
            .collect();
        maps.push(ChainMap::new(stages[n + 1].clone(), stages[n].clone(), 0, comps).unwrap());
    }
    ComplexTower { stages, maps }
}

#[test]
fn truncation_tower_is_exact() {
    let mut rng = seeded(99);
    for _ in 0..10 {
        let rf = random_filtered(&mut rng, 4, 3);
        let t = quotient_tower(&rf.filtered);
        let rep = exact_limp_check(&t).unwrap();
        assert!(rep.all_exact, "{:?}", rep.first_failure());
        // lim is the last stage, the complex itself
        let c = rf.filtered.complex();
        for q in c.degrees() {
            let h = rep.nodes.iter().find(|n| n.label == "H(lim)" && n.degree == q).unwrap();
            assert_eq!(h.dim, c.homology_dim(q));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn barcode_recovers_the_construction(seed in any::<u64>()) {
        let rf = random_filtered(&mut seeded(seed), 5, 3);
        prop_assert_eq!(barcode(&rf.filtered), rf.expected);
    }

    #[test]
    fn pages_agree_with_barcode_and_homology(seed in any::<u64>()) {
        let rf = random_filtered(&mut seeded(seed), 5, 3);
        check_pages(&rf.filtered, 3);
    }

    #[test]
    fn convergence_on_random_filtrations(seed in any::<u64>()) {
        let rf = random_filtered(&mut seeded(seed), 5, 4);
        let rep = converge(&rf.filtered).unwrap();
        let c = rf.filtered.complex();
        for qd in c.degrees() {
            prop_assert_eq!(rep.total(qd), c.homology_dim(qd));
        }
        let p = page(&rf.filtered, rep.degeneration_page);
        prop_assert_eq!(p.dims(), rep.einf);
    }

    #[test]
    fn random_surjective_towers_are_exact(seed in any::<u64>()) {
        let t = random_surjective_tower(&mut seeded(seed), 4);
        let rep = exact_limp_check(&t).unwrap();
        prop_assert!(rep.all_exact);
    }
}
