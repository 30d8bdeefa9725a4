use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::qlinalg::{q_int, Field, Qi, SparseMat, SparseVec, Q};

/// Basis element of a graded algebra: weight `w`, order `o`, and a tag
/// separating elements that share both gradings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub w: i64,
    pub o: i64,
    pub tag: u32,
}

impl Gen {
    /// The adjoined unit of a non-unital algebra.
    pub const FORMAL_UNIT: Gen = Gen { w: 0, o: 0, tag: u32::MAX };

    pub const fn new(w: i64, o: i64, tag: u32) -> Self {
        Gen { w, o, tag }
    }

    pub fn is_formal_unit(&self) -> bool {
        *self == Gen::FORMAL_UNIT
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_formal_unit() {
            return write!(f, "1̃");
        }
        write!(f, "[{},{}|{}]", self.w, self.o, self.tag)
    }
}

/// Algebra given by structure constants on a basis of [`Gen`]s.
///
/// Weights add exactly under [`GradedAlgebra::mul`]; orders are bounded by
/// the sum of the factor orders.
pub trait GradedAlgebra: Send + Sync {
    type F: Field;

    fn name(&self) -> String;

    /// Basis elements with weight in `w` and order in `o` (both inclusive).
    fn basis(&self, w: (i64, i64), o: (i64, i64)) -> Vec<Gen>;

    fn mul(&self, a: &Gen, b: &Gen) -> Vec<(Gen, Self::F)>;

    fn unit(&self) -> Option<Gen>;

    fn is_commutative(&self) -> bool;
}

/// Product that also understands [`Gen::FORMAL_UNIT`].
pub fn product<A: GradedAlgebra + ?Sized>(alg: &A, a: &Gen, b: &Gen) -> Vec<(Gen, A::F)> {
    if a.is_formal_unit() {
        return vec![(*b, A::F::one())];
    }
    if b.is_formal_unit() {
        return vec![(*a, A::F::one())];
    }
    alg.mul(a, b)
}

/// The ground field, one basis element of weight 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct GroundField;

impl GradedAlgebra for GroundField {
    type F = Q;

    fn name(&self) -> String {
        "Q".into()
    }

    fn basis(&self, w: (i64, i64), o: (i64, i64)) -> Vec<Gen> {
        if w.0 <= 0 && 0 <= w.1 && o.0 <= 0 && 0 <= o.1 {
            vec![Gen::new(0, 0, 0)]
        } else {
            vec![]
        }
    }

    fn mul(&self, _: &Gen, _: &Gen) -> Vec<(Gen, Q)> {
        vec![(Gen::new(0, 0, 0), q_int(1))]
    }

    fn unit(&self) -> Option<Gen> {
        Some(Gen::new(0, 0, 0))
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// `ℚ[x]` (`laurent = false`) or `ℚ[x, x⁻¹]`; `x^a` has weight `a`.
#[derive(Clone, Copy, Debug)]
pub struct Monomials {
    pub laurent: bool,
}

impl Monomials {
    pub fn polynomial() -> Self {
        Monomials { laurent: false }
    }

    pub fn laurent() -> Self {
        Monomials { laurent: true }
    }
}

impl GradedAlgebra for Monomials {
    type F = Q;

    fn name(&self) -> String {
        if self.laurent { "Q[x,1/x]".into() } else { "Q[x]".into() }
    }

    fn basis(&self, w: (i64, i64), o: (i64, i64)) -> Vec<Gen> {
        if o.0 > 0 || o.1 < 0 {
            return vec![];
        }
        let lo = if self.laurent { w.0 } else { w.0.max(0) };
        (lo..=w.1).map(|a| Gen::new(a, 0, 0)).collect()
    }

    fn mul(&self, a: &Gen, b: &Gen) -> Vec<(Gen, Q)> {
        vec![(Gen::new(a.w + b.w, 0, 0), q_int(1))]
    }

    fn unit(&self) -> Option<Gen> {
        Some(Gen::new(0, 0, 0))
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// Polynomial in `u, v` over ℚ(i), reduced modulo `u² + v² − 1` to
/// `v`-degree at most one. Keys are `(u-exponent, v-exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UvPoly(pub BTreeMap<(u32, u32), Qi>);

impl UvPoly {
    fn monomial(c: Qi, u: u32, v: u32) -> Self {
        let mut p = UvPoly::default();
        p.add_term(c, u, v);
        p
    }

    /// Adds `c u^a v^b`, rewriting `v² = 1 − u²`.
    fn add_term(&mut self, c: Qi, a: u32, b: u32) {
        if c.is_zero() {
            return;
        }
        if b >= 2 {
            self.add_term(c.clone(), a, b - 2);
            self.add_term(c.neg(), a + 2, b - 2);
            return;
        }
        let e = self.0.entry((a, b)).or_insert_with(Qi::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.0.remove(&(a, b));
        }
    }

    pub fn mul(&self, other: &UvPoly) -> UvPoly {
        let mut out = UvPoly::default();
        for (&(a1, b1), c1) in &self.0 {
            for (&(a2, b2), c2) in &other.0 {
                out.add_term(c1.mul(c2), a1 + a2, b1 + b2);
            }
        }
        out
    }

    /// Largest total degree appearing.
    pub fn degree(&self) -> u32 {
        self.0.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }
}

/// The circle coordinate ring `ℚ(i)[u, v]/(u² + v² − 1)` in the basis of
/// characters `z^m`, `z = u + iv`, `z⁻¹ = u − iv`. Rotation weight of `z^m`
/// is `m`.
///
/// Structure constants are not assumed: [`CircleRing::new`] expands each
/// character in the normal-form monomials and reads every product back
/// through a linear solve.
#[derive(Clone, Debug)]
pub struct CircleRing {
    range: i64,
    table: BTreeMap<(i64, i64), Vec<(i64, Qi)>>,
}

impl CircleRing {
    /// Characters `z^m` for `|m| ≤ range`; products are tabulated when the
    /// result stays in range.
    pub fn new(range: i64) -> Result<Self> {
        let z = UvPoly({
            let mut p = UvPoly::monomial(Qi::one(), 1, 0);
            p.add_term(Qi::i(), 0, 1);
            p.0
        });
        let zinv = UvPoly({
            let mut p = UvPoly::monomial(Qi::one(), 1, 0);
            p.add_term(Qi::i().neg(), 0, 1);
            p.0
        });
        let mut chars: BTreeMap<i64, UvPoly> = BTreeMap::new();
        chars.insert(0, UvPoly::monomial(Qi::one(), 0, 0));
        for m in 1..=range {
            let up = chars[&(m - 1)].mul(&z);
            let down = chars[&(1 - m)].mul(&zinv);
            chars.insert(m, up);
            chars.insert(-m, down);
        }
        // coordinates of normal-form monomials u^a v^b with a + b ≤ range
        let mut keys: Vec<(u32, u32)> = chars.values().flat_map(|p| p.0.keys().copied()).collect();
        keys.sort();
        keys.dedup();
        let row: BTreeMap<(u32, u32), usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let to_vec = |p: &UvPoly| -> Option<SparseVec<Qi>> {
            let mut pairs = Vec::new();
            for (k, c) in &p.0 {
                pairs.push((*row.get(k)?, c.clone()));
            }
            Some(SparseVec::from_pairs(pairs))
        };
        let ms: Vec<i64> = chars.keys().copied().collect();
        let basis = SparseMat::from_columns(keys.len(), ms.iter().map(|m| to_vec(&chars[m]).expect("own monomials")).collect());
        let red = crate::qlinalg::Reduction::new(&basis, true);
        if red.rank() != ms.len() {
            return Err(Error::defect("characters are not independent"));
        }
        let mut table = BTreeMap::new();
        for &a in &ms {
            for &b in &ms {
                if (a + b).abs() > range {
                    continue;
                }
                let p = chars[&a].mul(&chars[&b]);
                let v = to_vec(&p).ok_or_else(|| Error::defect("product leaves the monomial span"))?;
                let x = red.solve(&v).ok_or_else(|| Error::defect("product is not a combination of characters"))?;
                table.insert((a, b), x.entries().iter().map(|(i, c)| (ms[*i], c.clone())).collect());
            }
        }
        Ok(CircleRing { range, table })
    }

    pub fn range(&self) -> i64 {
        self.range
    }
}

impl GradedAlgebra for CircleRing {
    type F = Qi;

    fn name(&self) -> String {
        "Q(i)[u,v]/(u^2+v^2-1)".into()
    }

    fn basis(&self, w: (i64, i64), o: (i64, i64)) -> Vec<Gen> {
        if o.0 > 0 || o.1 < 0 {
            return vec![];
        }
        (w.0.max(-self.range)..=w.1.min(self.range)).map(|m| Gen::new(m, 0, 0)).collect()
    }

    fn mul(&self, a: &Gen, b: &Gen) -> Vec<(Gen, Qi)> {
        let terms = self.table.get(&(a.w, b.w)).unwrap_or_else(|| panic!("product z^{} z^{} outside the tabulated range", a.w, b.w));
        terms.iter().map(|(m, c)| (Gen::new(*m, 0, 0), c.clone())).collect()
    }

    fn unit(&self) -> Option<Gen> {
        Some(Gen::new(0, 0, 0))
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// Finite-dimensional algebra over ℚ by structure constants; all basis
/// elements have weight and order 0 and tag equal to their index.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    name: String,
    dim: usize,
    /// `table[i][j]` is `e_i e_j`.
    table: Vec<Vec<Vec<(usize, Q)>>>,
    unit: Option<usize>,
}

impl FiniteAlgebra {
    /// Checks shapes and associativity; the unit, if given, is checked too.
    pub fn new(name: impl Into<String>, dim: usize, table: Vec<Vec<Vec<(usize, Q)>>>, unit: Option<usize>) -> Result<Self> {
        if table.len() != dim || table.iter().any(|r| r.len() != dim) {
            return Err(Error::input("structure table must be dim × dim"));
        }
        if table.iter().flatten().flatten().any(|(k, _)| *k >= dim) {
            return Err(Error::input("structure constant index out of range"));
        }
        let a = FiniteAlgebra { name: name.into(), dim, table, unit };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if a.vec_mul(&a.vec_mul(&a.e(i), &a.e(j)), &a.e(k)) != a.vec_mul(&a.e(i), &a.vec_mul(&a.e(j), &a.e(k))) {
                        return Err(Error::input(format!("not associative on (e{i}, e{j}, e{k})")));
                    }
                }
            }
        }
        if let Some(u) = unit {
            for i in 0..dim {
                if a.vec_mul(&a.e(u), &a.e(i)) != a.e(i) || a.vec_mul(&a.e(i), &a.e(u)) != a.e(i) {
                    return Err(Error::input(format!("e{u} is not a unit")));
                }
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn e(&self, i: usize) -> SparseVec<Q> {
        SparseVec::unit(i)
    }

    /// Product of two elements in coordinates.
    pub fn vec_mul(&self, x: &SparseVec<Q>, y: &SparseVec<Q>) -> SparseVec<Q> {
        let mut out = SparseVec::new();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                let c = a * b;
                let prod = SparseVec::from_pairs(self.table[*i][*j].clone());
                out = out.axpy(&c, &prod);
            }
        }
        out
    }

    /// The nilpotent algebra `x ℚ` with `x² = 0`, no unit.
    pub fn square_zero() -> Self {
        FiniteAlgebra::new("x^2=0", 1, vec![vec![vec![]]], None).expect("associative")
    }

    /// Algebra of an `n×n` matrix subalgebra spanned by `basis`, which must be
    /// closed under products and contain the identity as `basis[0]`.
    pub fn from_matrices(name: impl Into<String>, basis: &[Vec<Vec<Q>>]) -> Result<Self> {
        let flat = |m: &Vec<Vec<Q>>| -> SparseVec<Q> { SparseVec::from_dense(&m.iter().flatten().cloned().collect::<Vec<_>>()) };
        let n = basis.first().map_or(0, |m| m.len());
        let cols: Vec<SparseVec<Q>> = basis.iter().map(flat).collect();
        let span = SparseMat::from_columns(n * n, cols);
        let red = crate::qlinalg::Reduction::new(&span, true);
        if red.rank() != basis.len() {
            return Err(Error::input("matrix basis is dependent"));
        }
        let matmul = |a: &Vec<Vec<Q>>, b: &Vec<Vec<Q>>| -> Vec<Vec<Q>> {
            (0..n).map(|i| (0..n).map(|j| (0..n).fold(q_int(0), |s, k| s + &a[i][k] * &b[k][j])).collect()).collect()
        };
        let mut table = vec![vec![vec![]; basis.len()]; basis.len()];
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let x = red.solve(&flat(&matmul(a, b))).ok_or_else(|| Error::input("matrix span is not closed"))?;
                table[i][j] = x.into_entries();
            }
        }
        FiniteAlgebra::new(name, basis.len(), table, Some(0))
    }

    /// Random unital algebra of dimension `dim ≤ 4`: one of several model
    /// algebras, written in a random basis whose first vector is the unit.
    pub fn random_unital<R: Rng>(rng: &mut R, dim: usize) -> Self {
        assert!((1..=4).contains(&dim), "dimension 1..=4");
        let q = |n: i64| q_int(n);
        let e = |n: usize, i: usize, j: usize| -> Vec<Vec<Q>> {
            (0..n).map(|a| (0..n).map(|b| if a == i && b == j { q(1) } else { q(0) }).collect()).collect()
        };
        let ident = |n: usize| -> Vec<Vec<Q>> { (0..n).map(|a| (0..n).map(|b| if a == b { q(1) } else { q(0) }).collect()).collect() };
        // powers of a nilpotent Jordan block or of a diagonal matrix, giving ℚ[x]/(p)
        let truncated_poly = |n: usize, roots: Option<Vec<i64>>| -> Vec<Vec<Vec<Q>>> {
            let x: Vec<Vec<Q>> = match &roots {
                None => (0..n).map(|a| (0..n).map(|b| if b == a + 1 { q(1) } else { q(0) }).collect()).collect(),
                Some(r) => (0..n).map(|a| (0..n).map(|b| if a == b { q(r[a]) } else { q(0) }).collect()).collect(),
            };
            let mut out = vec![ident(n)];
            for _ in 1..n {
                let last = out.last().unwrap().clone();
                out.push((0..n).map(|i| (0..n).map(|j| (0..n).fold(q(0), |s, k| s + &last[i][k] * &x[k][j])).collect()).collect());
            }
            out
        };
        let choice = rng.gen_range(0..4);
        let (name, mats) = match (dim, choice) {
            (1, _) => ("Q", vec![ident(1)]),
            (3, 0) | (3, 1) => ("upper triangular 2x2", vec![ident(2), e(2, 0, 0), e(2, 0, 1)]),
            (4, 0) => ("M2(Q)", vec![ident(2), e(2, 0, 0), e(2, 0, 1), e(2, 1, 0)]),
            (n, 2) => {
                let roots: Vec<i64> = (0..n).map(|i| i as i64 * 2 - 1).collect();
                ("Q^n", truncated_poly(n, Some(roots)))
            }
            (n, _) => ("Q[x]/x^n", truncated_poly(n, None)),
        };
        let model = FiniteAlgebra::from_matrices(name, &mats).expect("model algebra");
        loop {
            // basis change with first vector the unit
            let mut p: Vec<SparseVec<Q>> = vec![SparseVec::unit(0)];
            for i in 1..dim {
                let mut pairs = vec![(i, q(rng.gen_range(1..=3)))];
                for j in 0..dim {
                    if j != i && rng.gen_bool(0.5) {
                        pairs.push((j, q(rng.gen_range(-2..=2))));
                    }
                }
                p.push(SparseVec::from_pairs(pairs));
            }
            let pm = SparseMat::from_columns(dim, p.clone());
            let red = crate::qlinalg::Reduction::new(&pm, true);
            if red.rank() < dim {
                continue;
            }
            let mut table = vec![vec![vec![]; dim]; dim];
            for i in 0..dim {
                for j in 0..dim {
                    let prod = model.vec_mul(&p[i], &p[j]);
                    table[i][j] = red.solve(&prod).expect("invertible basis change").into_entries();
                }
            }
            return FiniteAlgebra::new(format!("{name} (random basis)"), dim, table, Some(0)).expect("conjugate of an algebra");
        }
    }
}

impl GradedAlgebra for FiniteAlgebra {
    type F = Q;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn basis(&self, w: (i64, i64), o: (i64, i64)) -> Vec<Gen> {
        if w.0 > 0 || w.1 < 0 || o.0 > 0 || o.1 < 0 {
            return vec![];
        }
        (0..self.dim as u32).map(|i| Gen::new(0, 0, i)).collect()
    }

    fn mul(&self, a: &Gen, b: &Gen) -> Vec<(Gen, Q)> {
        self.table[a.tag as usize][b.tag as usize].iter().map(|(k, c)| (Gen::new(0, 0, *k as u32), c.clone())).collect()
    }

    fn unit(&self) -> Option<Gen> {
        self.unit.map(|u| Gen::new(0, 0, u as u32))
    }

    fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.table[i][j] == self.table[j][i]))
    }
}
