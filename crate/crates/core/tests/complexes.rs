mod common;

use std::sync::Arc;

use common::*;
use cornerhom::complexes::{
    compose_check, cyclic_total, les_of_ses, sbi_report, ChainComplex, ChainMap, MixedComplex, Orientation,
};
use cornerhom::qlinalg::{q_frac, Field, SparseMat, SparseVec, Q};
use proptest::prelude::*;

#[test]
fn zero_differential_keeps_every_class() {
    let c = ChainComplex::<Q>::zero_differential(0, vec![1, 1], Orientation::Chain);
    assert_eq!(c.betti(), vec![1, 1]);
}

#[test]
fn identity_cone_is_acyclic() {
    let c = ChainComplex::chain(0, vec![1, 1], vec![SparseMat::zero(0, 1), mat(&[vec![1]])]).unwrap();
    assert_eq!(c.betti(), vec![0, 0]);
}

#[test]
fn nonzero_square_is_rejected() {
    let d1 = mat(&[vec![1]]);
    let d2 = mat(&[vec![1]]);
    let err = ChainComplex::chain(0, vec![1, 1, 1], vec![SparseMat::zero(0, 1), d1, d2]).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

/// Polynomial de Rham complex on the line, `Ω⁰ = ⟨1..x^6⟩ → Ω¹ = ⟨dx..x^5 dx⟩`.
#[test]
fn polynomial_de_rham_on_the_line() {
    let n = 6;
    let d = SparseMat::from_triplets(n, n + 1, (1..=n).map(|k| (k - 1, k, q(k as i64)))).unwrap();
    let c = ChainComplex::cochain(0, vec![n + 1, n], vec![d.clone(), SparseMat::zero(0, n)]).unwrap();
    assert_eq!(c.homology_dim(0), 1);
    assert_eq!(c.homology_dim(1), 0);
    // integration oracle: x^k dx = d(x^{k+1}/(k+1))
    for k in 0..n {
        let prim = SparseVec::from_pairs(vec![(k + 1, q_frac(1, k as i64 + 1))]);
        assert_eq!(d.mul_vec(&prim), SparseVec::unit(k));
    }
    let h0 = c.homology(0);
    assert_eq!(h0.representatives, vec![SparseVec::unit(0)]);
}

#[test]
fn euler_characteristic_matches_betti() {
    let mut rng = seeded(7);
    for _ in 0..40 {
        let (c, betti) = random_complex(&mut rng, 5);
        assert_eq!(c.betti(), betti);
        let chi: i64 = betti.iter().enumerate().map(|(q, b)| if q % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum();
        assert_eq!(c.euler_characteristic(), chi);
    }
}

#[test]
fn les_with_zero_subcomplex() {
    let b = Arc::new(ChainComplex::chain(0, vec![1, 1], vec![SparseMat::zero(0, 1), SparseMat::zero(1, 1)]).unwrap());
    let a = Arc::new(ChainComplex::<Q>::zero_differential(0, vec![0, 0], Orientation::Chain));
    let incl = ChainMap::new(a, b.clone(), 0, vec![SparseMat::zero(1, 0), SparseMat::zero(1, 0)]).unwrap();
    let proj = ChainMap::identity(b);
    let rep = les_of_ses(&incl, &proj).unwrap();
    assert!(rep.all_exact);
    for q in 0..=1 {
        let bn = rep.node("B", q).unwrap();
        assert_eq!(bn.rank_out, bn.dim);
    }
}

#[test]
fn split_sequence_has_zero_connecting_maps() {
    let a = Arc::new(ChainComplex::<Q>::zero_differential(0, vec![1, 2], Orientation::Chain));
    let c = Arc::new(ChainComplex::<Q>::zero_differential(0, vec![2, 1], Orientation::Chain));
    let b = Arc::new(a.direct_sum(&c).unwrap());
    let incl = ChainMap::new(
        a.clone(),
        b.clone(),
        0,
        vec![mat(&[vec![1], vec![0], vec![0]]), mat(&[vec![1, 0], vec![0, 1], vec![0, 0]])],
    )
    .unwrap();
    let proj = ChainMap::new(
        b,
        c,
        0,
        vec![mat(&[vec![0, 1, 0], vec![0, 0, 1]]), mat(&[vec![0, 0, 1]])],
    )
    .unwrap();
    let rep = les_of_ses(&incl, &proj).unwrap();
    assert!(rep.all_exact);
    assert!(rep.connecting.values().all(|m| m.is_zero()));
}

#[test]
fn les_rejects_non_injective_inclusion() {
    let a = Arc::new(ChainComplex::<Q>::zero_differential(0, vec![1], Orientation::Chain));
    let b = Arc::new(ChainComplex::<Q>::zero_differential(0, vec![1], Orientation::Chain));
    let incl = ChainMap::new(a, b.clone(), 0, vec![SparseMat::zero(1, 1)]).unwrap();
    let proj = ChainMap::identity(b);
    let err = les_of_ses(&incl, &proj).unwrap_err();
    assert!(err.to_string().contains("degree 0"));
}

/// Cone of the identity on `ℚ` in degree 0: `0 → ℚ → Cone → ℚ[1] → 0`, whose
/// connecting map is an isomorphism.
#[test]
fn connecting_map_of_a_cone_is_an_isomorphism() {
    let a = Arc::new(ChainComplex::<Q>::zero_differential(0, vec![1, 0], Orientation::Chain));
    let cone = Arc::new(ChainComplex::chain(0, vec![1, 1], vec![SparseMat::zero(0, 1), mat(&[vec![1]])]).unwrap());
    let c = Arc::new(ChainComplex::<Q>::zero_differential(0, vec![0, 1], Orientation::Chain));
    let incl = ChainMap::new(a, cone.clone(), 0, vec![mat(&[vec![1]]), SparseMat::zero(1, 0)]).unwrap();
    let proj = ChainMap::new(cone, c, 0, vec![SparseMat::zero(0, 1), mat(&[vec![1]])]).unwrap();
    let rep = les_of_ses(&incl, &proj).unwrap();
    assert!(rep.all_exact);
    assert_eq!(rep.connecting[&1], mat(&[vec![1]]));
}

#[test]
fn identity_composes_to_identity() {
    let (c, _) = random_complex(&mut seeded(3), 4);
    let c = Arc::new(c);
    let id = ChainMap::identity(c.clone());
    let comp = compose_check(&id, &id).unwrap();
    for q in c.degrees() {
        assert_eq!(comp.component(q), SparseMat::identity(c.dim(q)));
    }
}

/// Ground field oracle: every chain is `1^{⊗(n+1)}`, so each operator is a
/// scalar obtained by summing the signs of its terms.
fn ground_field_mixed(top: usize) -> MixedComplex<Q> {
    let b_scalar = |n: usize| -> i64 {
        // b' terms (-1)^i for i < n, plus the cyclic term (-1)^n
        (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).sum::<i64>() + if n % 2 == 0 { 1 } else { -1 }
    };
    let t_sign = |n: usize| if n % 2 == 0 { 1 } else { -1 };
    let big_b_scalar = |n: usize| -> i64 {
        let sum_t: i64 = (0..=n).map(|k| if (n * k) % 2 == 0 { 1 } else { -1 }).sum();
        sum_t * (1 - t_sign(n + 1))
    };
    let dims = vec![1; top + 1];
    let b = (0..=top)
        .map(|n| if n == 0 { SparseMat::zero(0, 1) } else { mat(&[vec![b_scalar(n)]]) })
        .collect();
    let big_b = (0..top).map(|n| mat(&[vec![big_b_scalar(n)]])).collect();
    MixedComplex::new(dims, b, big_b).unwrap()
}

#[test]
fn ground_field_cyclic_homology() {
    let m = ground_field_mixed(4);
    let tot = cyclic_total(&m, 3).unwrap();
    let hc: Vec<usize> = (0..=2).map(|n| tot.complex.homology_dim(n)).collect();
    assert_eq!(hc, vec![1, 0, 1]);
    assert_eq!(tot.periodicity.induced_rank(2), 1);
    let rep = sbi_report(&m, 2).unwrap();
    assert!(rep.all_exact);
    // B: HC_0 → HH_1 vanishes
    assert!(rep.connecting[&0].is_zero());
}

#[test]
fn zero_mixed_complex_is_exact() {
    let dims = vec![0; 5];
    let b = (0..5).map(|n| SparseMat::zero(if n == 0 { 0 } else { 0 }, 0)).collect();
    let big_b = (0..4).map(|_| SparseMat::zero(0, 0)).collect();
    let m = MixedComplex::<Q>::new(dims, b, big_b).unwrap();
    let rep = sbi_report(&m, 3).unwrap();
    assert!(rep.all_exact);
    assert!(rep.nodes.iter().all(|n| n.dim == 0));
}

#[test]
fn vanishing_b_gives_direct_sum() {
    let dims = vec![2, 1, 3, 1];
    let b = vec![SparseMat::zero(0, 2), SparseMat::zero(2, 1), SparseMat::zero(1, 3), SparseMat::zero(3, 1)];
    let big_b = vec![SparseMat::zero(1, 2), SparseMat::zero(3, 1), SparseMat::zero(1, 3)];
    let m = MixedComplex::<Q>::new(dims.clone(), b, big_b).unwrap();
    let tot = cyclic_total(&m, 3).unwrap();
    for n in 0..=3usize {
        let expect: usize = (0..=n / 2).map(|k| dims[n - 2 * k]).sum();
        assert_eq!(tot.complex.homology_dim(n as i64), expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homology_of_random_complexes(seed in any::<u64>()) {
        let (c, betti) = random_complex(&mut seeded(seed), 5);
        prop_assert_eq!(c.betti(), betti);
        for q in c.degrees() {
            let h = c.homology(q);
            let d = c.differential(q);
            for z in &h.representatives {
                prop_assert!(d.mul_vec(z).is_zero());
            }
        }
    }

    #[test]
    fn dual_complex_has_the_same_betti_numbers(seed in any::<u64>()) {
        let (c, betti) = random_complex(&mut seeded(seed), 5);
        prop_assert_eq!(c.dual().betti(), betti);
    }

    #[test]
    fn quotient_sequence_is_exact(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let (c, _) = random_complex(&mut rng, 5);
        let c = Arc::new(c);
        // subcomplex spanned by {v, dv} for random v
        use rand::Rng;
        let mut spans: Vec<Vec<SparseVec<Q>>> = vec![Vec::new(); c.dims().len()];
        for qd in c.degrees() {
            if c.dim(qd) == 0 || !rng.gen_bool(0.7) { continue; }
            let v = SparseVec::from_pairs((0..c.dim(qd)).map(|i| (i, q(rng.gen_range(-2..=2)))).collect());
            let dv = c.differential(qd).mul_vec(&v);
            spans[qd as usize].push(v);
            if qd >= 1 { spans[qd as usize - 1].push(dv); }
        }
        let (sub, incl) = c.subcomplex(&|qd| spans[qd as usize].clone()).unwrap();
        let (quo, proj) = c.quotient(&|qd| spans[qd as usize].clone()).unwrap();
        let sub = Arc::new(sub);
        let quo = Arc::new(quo);
        let i = ChainMap::new(sub, c.clone(), 0, incl).unwrap();
        let p = ChainMap::new(c.clone(), quo, 0, proj).unwrap();
        let rep = les_of_ses(&i, &p).unwrap();
        prop_assert!(rep.all_exact);
        let _ = Q::one();
    }
}
