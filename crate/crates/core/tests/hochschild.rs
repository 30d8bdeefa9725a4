mod common;

use common::*;
use cornerhom::complexes::{cyclic_total, sbi_report};
use cornerhom::evaluator::{binom_gen, Sheet, SymbolModel};
use cornerhom::hochschild::*;
use cornerhom::qlinalg::{q_frac, Field, Qi, Q};
use proptest::prelude::*;
use rand::Rng;

fn g(w: i64) -> Gen {
    Gen::new(w, 0, 0)
}

fn tensor_chain<F: Field>(t: &[Gen]) -> HochschildChain<F> {
    HochschildChain::basis(t.to_vec())
}

fn upper_triangular() -> FiniteAlgebra {
    let m = |rows: [[i64; 2]; 2]| rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<Vec<Q>>>();
    FiniteAlgebra::from_matrices("T2", &[m([[1, 0], [0, 1]]), m([[1, 0], [0, 0]]), m([[0, 1], [0, 0]])]).unwrap()
}

/// Forms of degree `q` and weight `w`: `x^w` and `x^{w-1} dx` on the line,
/// `z^w` and `z^w dz/z` on the punctured line or the circle.
fn forms_dim(polynomial: bool, q: usize, w: i64) -> usize {
    match (polynomial, q) {
        (true, 0) => (w >= 0) as usize,
        (true, 1) => (w >= 1) as usize,
        (false, 0) | (false, 1) => 1,
        _ => 0,
    }
}

#[test]
fn b_in_degree_one_is_the_commutator() {
    let a = upper_triangular();
    let ops = Ops::new(&a);
    for i in 0..3 {
        for j in 0..3 {
            let (x, y) = (Gen::new(0, 0, i), Gen::new(0, 0, j));
            let lhs = ops.b(&tensor_chain(&[x, y]));
            let mut rhs = HochschildChain::zero(0);
            for (p, c) in a.mul(&x, &y) {
                rhs.add_term(vec![p], c);
            }
            for (p, c) in a.mul(&y, &x) {
                rhs.add_term(vec![p], c.neg());
            }
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn cyclic_operator_sign_in_degree_two() {
    let a = Monomials::laurent();
    let t = Ops::new(&a).t(&tensor_chain::<Q>(&[g(1), g(2), g(3)]));
    assert_eq!(t, tensor_chain(&[g(3), g(1), g(2)]));
    let t1 = Ops::new(&a).t(&tensor_chain::<Q>(&[g(1), g(2)]));
    assert_eq!(t1, tensor_chain::<Q>(&[g(2), g(1)]).scale(&q(-1)));
}

#[test]
fn connes_operator_on_a_laurent_generator() {
    let a = Monomials::laurent();
    let ops = Ops::new(&a);
    let r = tensor_chain::<Q>(&[g(1)]);
    let br = ops.connes(&r).unwrap();
    let expected = tensor_chain::<Q>(&[g(0), g(1)]).add(&tensor_chain(&[g(1), g(0)]));
    assert_eq!(br, expected);
    // b(r) = 0 in degree 0, so bB + Bb = 0 reduces to b(B(r)) = 0
    assert!(ops.b(&r).is_zero());
    assert!(ops.b(&br).is_zero());
}

#[test]
fn s_needs_a_unit_or_a_formal_one() {
    let a = FiniteAlgebra::square_zero();
    let x = tensor_chain::<Q>(&[Gen::new(0, 0, 0)]);
    assert_eq!(Ops::new(&a).s(&x).unwrap_err().exit_code(), 2);
    let s = Ops::new(&a).with_formal_unit().s(&x).unwrap();
    assert_eq!(s, tensor_chain(&[Gen::FORMAL_UNIT, Gen::new(0, 0, 0)]));
    // b and b′ never see the formal unit
    let ops = Ops::new(&a).with_formal_unit();
    let xx = tensor_chain::<Q>(&[Gen::new(0, 0, 0), Gen::new(0, 0, 0)]);
    let bs = ops.b(&ops.connes(&xx).unwrap());
    let sb = ops.connes(&ops.b(&xx)).unwrap();
    assert!(bs.add(&sb).is_zero());
}

#[test]
fn ground_field_has_homology_in_degree_zero() {
    let hc = hochschild_complex(&GroundField, &Window::finite(), 0, 4).unwrap();
    assert_eq!(hc.basis.dims(), vec![1; 6]);
    assert_eq!(hc.homology_dims(4), vec![1, 0, 0, 0, 0]);
}

#[test]
fn polynomial_weight_two() {
    let hc = hochschild_complex(&Monomials::polynomial(), &Window::nonnegative(2), 2, 3).unwrap();
    assert_eq!(hc.homology_dims(3), vec![1, 1, 0, 0]);
}

#[test]
fn laurent_weight_zero_with_pole_bound_four() {
    let hc = hochschild_complex(&Monomials::laurent(), &Window::poles(0, 4), 0, 2).unwrap();
    assert_eq!(hc.homology_dims(2), vec![1, 1, 0]);
}

#[test]
fn laurent_stabilizes_over_the_pole_bound() {
    let a = Monomials::laurent();
    for q in 0..=2 {
        let s = hh_stabilized(&a, &|l| Window::poles(-1, l as i64), -1, q, 4).unwrap();
        assert_eq!(s.dim, forms_dim(false, q, -1), "q = {q}: {s:?}");
    }
}

#[test]
fn polynomial_stabilizes_at_once() {
    let s = hh_stabilized(&Monomials::polynomial(), &|_| Window::nonnegative(3), 3, 1, 3).unwrap();
    assert_eq!((s.dim, s.window_used), (1, 0));
}

#[test]
fn hkr_dims_at_small_scale() {
    let circle = CircleRing::new(8).unwrap();
    for w in -2..=2i64 {
        let p = hochschild_complex(&Monomials::polynomial(), &Window::nonnegative(w), w, 2).unwrap();
        let l = hochschild_complex(&Monomials::laurent(), &Window::poles(w, 1), w, 2).unwrap();
        let c = hochschild_complex(&circle, &Window::poles(w, 1), w, 2).unwrap();
        for q in 0..=2 {
            assert_eq!(p.complex().homology_dim(q as i64), forms_dim(true, q, w), "Q[x] w={w} q={q}");
            assert_eq!(l.complex().homology_dim(q as i64), forms_dim(false, q, w), "Laurent w={w} q={q}");
            assert_eq!(c.complex().homology_dim(q as i64), forms_dim(false, q, w), "circle w={w} q={q}");
        }
    }
}

#[test]
fn circle_ring_products_are_characters() {
    let c = CircleRing::new(4).unwrap();
    for a in -2..=2 {
        for b in -2..=2 {
            assert_eq!(c.mul(&g(a), &g(b)), vec![(g(a + b), Qi::one())]);
        }
    }
}

#[test]
fn empty_window_is_flagged() {
    let hc = hochschild_complex(&Monomials::polynomial(), &Window::nonnegative(-3), -3, 1).unwrap();
    assert!(hc.empty);
}

#[test]
fn h_unitality() {
    let t = upper_triangular();
    let rep = h_unital_check(&t, &Window::finite(), 0, 3).unwrap();
    assert!(rep.acyclic, "{rep:?}");
    let rep = h_unital_check(&FiniteAlgebra::square_zero(), &Window::finite(), 0, 2).unwrap();
    assert_eq!(rep.failing_degree, Some(0));
    assert_eq!(rep.bar_homology[0], 1);
    let gr = SymbolModel::new(Sheet::Plus, -3).associated_graded();
    for w in -1..=1 {
        let rep = h_unital_check(&gr, &Window::symbol(1, 1, -3), w, 2).unwrap();
        assert!(rep.acyclic, "weight {w}: {rep:?}");
    }
}

#[test]
fn ground_field_mixed_complex_gives_periodic_cyclic_homology() {
    let m = mixed_complex(&GroundField, &Window::finite(), 0, 5).unwrap();
    let tot = cyclic_total(&m, 4).unwrap();
    assert_eq!(tot.complex.betti(), vec![1, 0, 1, 0, 1]);
}

#[test]
fn mixed_complex_requires_a_unit() {
    let err = mixed_complex(&FiniteAlgebra::square_zero(), &Window::finite(), 0, 2).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn symbol_commutator_is_the_bracket_to_first_order() {
    // [e^{ix}ξ, e^{-ix}] = −i{e^{ix}ξ, e^{-ix}} = −i·(−i) = −1
    let m = SymbolModel::new(Sheet::Plus, -5);
    let (a, b) = (m.gen(1, 1), m.gen(-1, 0));
    let mut comm = HochschildChain::<Q>::zero(0);
    for (p, c) in m.mul(&a, &b) {
        comm.add_term(vec![p], c);
    }
    for (p, c) in m.mul(&b, &a) {
        comm.add_term(vec![p], c.neg());
    }
    assert_eq!(comm, HochschildChain::basis(vec![m.gen(0, 0)]).scale(&q(-1)));
}

#[test]
fn symbol_window_dimension_and_graded_commutativity() {
    let m = SymbolModel::new(Sheet::Plus, -2);
    assert_eq!(m.basis((0, 0), (-2, 2)).len(), 5);
    let gr = m.associated_graded();
    let basis = gr.basis((-1, 1), (-2, 2));
    for a in &basis {
        for b in &basis {
            assert_eq!(gr.mul(a, b), gr.mul(b, a));
        }
    }
}

#[test]
fn symbol_products_are_associative_above_the_floor() {
    let m = SymbolModel::new(Sheet::Minus, -6);
    let basis = m.basis((-1, 1), (-2, 2));
    let mul_c = |x: &[(Gen, Q)], y: &[(Gen, Q)]| -> std::collections::BTreeMap<Gen, Q> {
        let mut out = std::collections::BTreeMap::new();
        for (a, c) in x {
            for (b, d) in y {
                for (p, e) in m.mul(a, b) {
                    let v: &mut Q = out.entry(p).or_insert(q(0));
                    *v += c * d * e;
                }
            }
        }
        out.retain(|_, v: &mut Q| *v != q(0));
        out
    };
    // truncation at order −6 only affects triple products below order −4
    let high = |m: std::collections::BTreeMap<Gen, Q>| m.into_iter().filter(|(g, _)| g.o > -4).collect::<Vec<_>>();
    for a in &basis {
        for b in &basis {
            for c in &basis {
                let ab: Vec<_> = mul_c(&[(*a, q(1))], &[(*b, q(1))]).into_iter().collect();
                let bc: Vec<_> = mul_c(&[(*b, q(1))], &[(*c, q(1))]).into_iter().collect();
                assert_eq!(high(mul_c(&ab, &[(*c, q(1))])), high(mul_c(&[(*a, q(1))], &bc)));
            }
        }
    }
}

#[test]
fn generalized_binomials() {
    assert_eq!(binom_gen(-1, 3), q(-1));
    assert_eq!(binom_gen(4, 2), q(6));
    assert_eq!(binom_gen(2, 3), q(0));
    assert_eq!(binom_gen(-2, 2), q(3));
    assert_eq!(binom_gen(1, 1), q_frac(1, 1));
}

/// `E¹_{k,h}` of the order filtration against `HH_{k+h}` of `Gr` in order `k`,
/// the latter computed on the order-`k` slice of the graded bar complex.
#[test]
fn first_page_is_hochschild_homology_of_the_graded_algebra() {
    use cornerhom::complexes::ChainComplex;
    let win = Window::symbol(1, 2, -4);
    let m = SymbolModel::for_window(Sheet::Plus, &win);
    let hc = hochschild_complex(&m, &win, 0, 2).unwrap();
    let e1 = cornerhom::spectral::barcode(&hc.filtered).page_dims(1);
    let gr = m.associated_graded();
    let hg = hochschild_complex(&gr, &win, 0, 2).unwrap();
    let cx = hg.complex();
    for k in -3..=2i64 {
        let sel: Vec<Vec<usize>> = (0..=3)
            .map(|q| hg.basis.tensors(q).iter().enumerate().filter(|(_, t)| total_order(t) == k).map(|(i, _)| i).collect())
            .collect();
        let dims = sel.iter().map(Vec::len).collect();
        let diffs = (0..=3i64)
            .map(|q| {
                let rows = if q == 0 { vec![] } else { sel[q as usize - 1].clone() };
                let d = cx.differential(q);
                if q == 0 { cornerhom::qlinalg::SparseMat::zero(0, sel[0].len()) } else { d.submatrix(&rows, &sel[q as usize]) }
            })
            .collect();
        let slice = ChainComplex::chain(0, dims, diffs).unwrap();
        for q in 0..=2i64 {
            assert_eq!(e1.get(&(k, q - k)).copied().unwrap_or(0), slice.homology_dim(q), "cell ({k}, {})", q - k);
        }
    }
}

fn random_window_chain<A: GradedAlgebra>(rng: &mut impl Rng, alg: &A, win: &Window, q: usize, w: i64) -> HochschildChain<A::F> {
    let ts = win.tensors(alg, q, w);
    let mut c = HochschildChain::zero(q);
    if ts.is_empty() {
        return c;
    }
    for _ in 0..rng.gen_range(1..=4) {
        let t = ts[rng.gen_range(0..ts.len())].clone();
        c.add_term(t, A::F::from_i64(rng.gen_range(-3..=3)));
    }
    c
}

fn check_identities<A: GradedAlgebra>(rng: &mut impl Rng, alg: &A, win: &Window, w: i64, q: usize) {
    let ops = Ops::new(alg).with_floor(win.floor());
    let c = random_window_chain(rng, alg, win, q, w);
    let b = ops.b(&c);
    assert!(ops.b(&b).is_zero(), "b² on {c:?}");
    assert!(ops.b_prime(&ops.b_prime(&c)).is_zero(), "b′² on {c:?}");
    let bb = ops.connes(&c).unwrap();
    assert!(ops.connes(&bb).unwrap().is_zero(), "B² on {c:?}");
    let mut anti = ops.b(&bb);
    if q > 0 {
        anti.add_scaled(&ops.connes(&b).unwrap(), &A::F::one());
    }
    assert!(anti.is_zero(), "bB + Bb on {c:?}");
    for op in [Operator::B, Operator::BPrime, Operator::S, Operator::T, Operator::B0, Operator::Connes] {
        let img = ops.apply(op, &c).unwrap();
        assert!(img.weights().iter().all(|&x| x == w), "{op:?} changes weight");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn operator_identities_on_random_chains(seed in any::<u64>(), q in 0usize..=3) {
        let mut rng = seeded(seed);
        let w = rng.gen_range(-2..=2);
        check_identities(&mut rng, &Monomials::laurent(), &Window::poles(w, 2), w, q);
        check_identities(&mut rng, &CircleRing::new(6).unwrap(), &Window::poles(w, 1), w, q);
        let dim = rng.gen_range(1..=4);
        let fa = FiniteAlgebra::random_unital(&mut rng, dim);
        check_identities(&mut rng, &fa, &Window::finite(), 0, q.min(2));
        let win = Window::symbol(1, 2, -4);
        let m = SymbolModel::for_window(Sheet::Plus, &win);
        let ws = rng.gen_range(-1..=1);
        check_identities(&mut rng, &m, &win, ws, q.min(2));
        check_identities(&mut rng, &m.associated_graded(), &win, 0, q.min(2));
    }

    #[test]
    fn sbi_is_exact_for_random_unital_algebras(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let a = FiniteAlgebra::random_unital(&mut rng, dim);
        let m = mixed_complex(&a, &Window::finite(), 0, 4).unwrap();
        let rep = sbi_report(&m, 3).unwrap();
        prop_assert!(rep.all_exact);
    }

    #[test]
    fn random_algebras_are_associative_and_unital(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=4);
        let a = FiniteAlgebra::random_unital(&mut rng, dim);
        prop_assert_eq!(a.dim(), dim);
        prop_assert!(a.unit().is_some());
    }
}

fn form_rank(forms: &[cornerhom::poisson::LaurentForm]) -> usize {
    use cornerhom::qlinalg::{rank, SparseMat, SparseVec};
    let mut index = std::collections::HashMap::new();
    let cols: Vec<SparseVec<Qi>> = forms
        .iter()
        .map(|f| {
            SparseVec::from_pairs(
                f.terms()
                    .iter()
                    .map(|(m, c)| {
                        let n = index.len();
                        (*index.entry(m.clone()).or_insert(n), c.clone())
                    })
                    .collect(),
            )
        })
        .collect();
    rank(&SparseMat::from_columns(index.len(), cols))
}

/// Rank of χ on the `q`-cycles, and whether χ kills every boundary.
fn chi_on_homology<A: GradedAlgebra>(alg: &A, win: &Window, w: i64, q: usize, coords: &Coordinates<'_>, p: &Patch) -> (usize, bool) {
    use cornerhom::qlinalg::Reduction;
    let basis = TensorBasis::new(alg, win, w, q + 1);
    let ops = Ops::new(alg).with_floor(win.floor());
    let bq = basis.operator_matrix(&ops, Operator::B, q).unwrap();
    let cycles: Vec<_> =
        Reduction::new(&bq, true).kernel_basis().iter().map(|v| hkr_chi(alg, &basis.chain(q, v), coords, p).unwrap()).collect();
    let boundaries_vanish = basis.tensors(q + 1).iter().all(|t| {
        let bt = ops.b(&HochschildChain::basis(t.clone()));
        hkr_chi(alg, &bt, coords, p).unwrap().is_zero()
    });
    (form_rank(&cycles), boundaries_vanish)
}

use cornerhom::poisson::Patch;

#[test]
fn hkr_map_on_elementary_tensors() {
    let p = Patch::new(1, 1, vec![1]).unwrap();
    let coords = monomial_coordinates(&p);
    let a = Monomials::laurent();
    // x² ⊗ x⁻¹ ↦ x² d(x⁻¹) = −dx
    let c: HochschildChain<Q> = tensor_chain(&[g(2), g(-1)]);
    let dx = cornerhom::poisson::LaurentForm::differential(&p, 0);
    assert_eq!(hkr_chi(&a, &c, &coords, &p).unwrap(), dx.scale(&Qi::from_i64(-1)));
    // 1 ⊗ x ⊗ x ↦ ½ dx∧dx = 0
    let c: HochschildChain<Q> = tensor_chain(&[g(0), g(1), g(1)]);
    assert!(hkr_chi(&a, &c, &coords, &p).unwrap().is_zero());
    // 1 ⊗ x ⊗ x⁻¹ ↦ ½ dx∧d(x⁻¹) = 0 in one variable
    let c: HochschildChain<Q> = tensor_chain(&[g(0), g(1), g(-1)]);
    assert!(hkr_chi(&a, &c, &coords, &p).unwrap().is_zero());
}

#[test]
fn hkr_map_needs_a_commutative_algebra() {
    let p = Patch::new(1, 0, vec![]).unwrap();
    let coords = fourier_coordinates(&p);
    let model = SymbolModel::new(Sheet::Plus, -4);
    let c: HochschildChain<Q> = HochschildChain::basis(vec![model.gen(0, 1), model.gen(1, 0)]);
    assert!(matches!(hkr_chi(&model, &c, &coords, &p), Err(cornerhom::Error::Input(_))));
    assert!(hkr_chi(&model.associated_graded(), &c, &coords, &p).is_ok());
}

#[test]
fn hkr_map_is_an_isomorphism_on_polynomials() {
    let p = Patch::new(1, 1, vec![1]).unwrap();
    let coords = monomial_coordinates(&p);
    let a = Monomials::polynomial();
    for w in 0..=4 {
        for q in 0..=2 {
            let (r, ok) = chi_on_homology(&a, &Window::nonnegative(w), w, q, &coords, &p);
            assert!(ok);
            assert_eq!(r, forms_dim(true, q, w), "w={w} q={q}");
        }
    }
}

#[test]
fn hkr_map_is_an_isomorphism_on_laurent_polynomials_and_the_circle() {
    let p = Patch::new(1, 1, vec![1]).unwrap();
    let coords = monomial_coordinates(&p);
    let a = Monomials::laurent();
    for w in -2..=2 {
        for q in 0..=2 {
            let (r, ok) = chi_on_homology(&a, &Window::poles(w, 2), w, q, &coords, &p);
            assert!(ok);
            assert_eq!(r, forms_dim(false, q, w), "w={w} q={q}");
        }
    }
    let p = Patch::new(1, 0, vec![]).unwrap();
    let coords = fourier_coordinates(&p);
    let circle = CircleRing::new(8).unwrap();
    for w in -2..=2 {
        for q in 0..=2 {
            let (r, ok) = chi_on_homology(&circle, &Window::poles(w, 2), w, q, &coords, &p);
            assert!(ok);
            assert_eq!(r, forms_dim(false, q, w), "w={w} q={q}");
        }
    }
}
