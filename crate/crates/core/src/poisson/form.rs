use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::qlinalg::{Field, Qi};

/// Chart `[0,1)^k × ℝ^{n−k}` of a manifold with corners and its cotangent
/// fibre. Coordinates are ordered `b₁…b_n, ξ₁…ξ_n` with `b_j = x_j` for
/// `j ≤ k` and `b_j = y_j` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Patch {
    pub n: usize,
    pub k: usize,
    pub c: Vec<i64>,
}

impl Patch {
    pub fn new(n: usize, k: usize, c: Vec<i64>) -> Result<Self> {
        if k > n || c.len() != k || c.iter().any(|&x| x < 1) {
            return Err(Error::input(format!("patch needs 0 ≤ k ≤ n and k exponents ≥ 1 (n={n}, k={k}, c={c:?})")));
        }
        if 2 * n > 30 {
            return Err(Error::input("patch dimension too large"));
        }
        Ok(Patch { n, k, c })
    }

    /// Number of coordinates, `2n`.
    pub fn vars(&self) -> usize {
        2 * self.n
    }

    pub fn xi(&self, j: usize) -> usize {
        self.n + j
    }

    pub fn is_xi(&self, v: usize) -> bool {
        v >= self.n
    }

    /// Base coordinate `b_j` is a boundary defining function.
    pub fn is_x(&self, v: usize) -> bool {
        v < self.k
    }

    pub fn var_name(&self, v: usize) -> String {
        if v < self.k {
            format!("x{}", v + 1)
        } else if v < self.n {
            format!("y{}", v + 1)
        } else {
            format!("ξ{}", v - self.n + 1)
        }
    }
}

/// `e^{i⟨m, y⟩} Π z_v^{a_v} dz_I`; `fourier` is indexed by base coordinate
/// and only nonzero on `y` slots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub wedge: u32,
    pub exps: Vec<i64>,
    pub fourier: Vec<i64>,
}

impl Monomial {
    pub fn one(p: &Patch) -> Self {
        Monomial { wedge: 0, exps: vec![0; p.vars()], fourier: vec![0; p.n] }
    }

    pub fn degree(&self) -> usize {
        self.wedge.count_ones() as usize
    }

    pub fn wedge_vars(&self) -> Vec<usize> {
        (0..32).filter(|v| self.wedge & (1 << v) != 0).collect()
    }

    /// Total `ξ`-exponent plus the number of `dξ` factors.
    pub fn homogeneity(&self, p: &Patch) -> i64 {
        let e: i64 = self.exps[p.n..].iter().sum();
        e + self.wedge_vars().iter().filter(|&&v| p.is_xi(v)).count() as i64
    }
}

/// Finite sum of monomial forms with ℚ(i) coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentForm {
    patch: Patch,
    terms: BTreeMap<Monomial, Qi>,
}

/// Sign of `dz_I ∧ dz_J` relative to the sorted wedge, or 0 on overlap.
pub fn wedge_sign(i: u32, j: u32) -> i64 {
    if i & j != 0 {
        return 0;
    }
    let mut inversions = 0;
    for v in 0..32 {
        if j & (1 << v) != 0 {
            inversions += (i >> (v + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 { 1 } else { -1 }
}

impl LaurentForm {
    pub fn zero(p: &Patch) -> Self {
        LaurentForm { patch: p.clone(), terms: BTreeMap::new() }
    }

    pub fn term(p: &Patch, c: Qi, m: Monomial) -> Self {
        let mut f = Self::zero(p);
        f.add_term(m, c);
        f
    }

    pub fn constant(p: &Patch, c: Qi) -> Self {
        Self::term(p, c, Monomial::one(p))
    }

    /// The coordinate function `z_v`.
    pub fn coordinate(p: &Patch, v: usize) -> Self {
        let mut m = Monomial::one(p);
        m.exps[v] = 1;
        Self::term(p, Qi::one(), m)
    }

    /// The 1-form `dz_v`.
    pub fn differential(p: &Patch, v: usize) -> Self {
        let mut m = Monomial::one(p);
        m.wedge = 1 << v;
        Self::term(p, Qi::one(), m)
    }

    pub fn patch(&self) -> &Patch {
        &self.patch
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Qi> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Qi) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Qi::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Qi::one().neg()))
    }

    pub fn scale(&self, c: &Qi) -> Self {
        let mut out = Self::zero(&self.patch);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.mul(c));
        }
        out
    }

    /// Wedge product.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.patch);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let s = wedge_sign(m1.wedge, m2.wedge);
                if s == 0 {
                    continue;
                }
                let m = Monomial {
                    wedge: m1.wedge | m2.wedge,
                    exps: m1.exps.iter().zip(&m2.exps).map(|(a, b)| a + b).collect(),
                    fourier: m1.fourier.iter().zip(&m2.fourier).map(|(a, b)| a + b).collect(),
                };
                out.add_term(m, c1.mul(c2).mul(&Qi::from_i64(s)));
            }
        }
        out
    }

    /// Partial derivative of the coefficients in `z_v`.
    pub fn partial(&self, v: usize) -> Self {
        let p = &self.patch;
        let mut out = Self::zero(p);
        for (m, c) in &self.terms {
            let a = m.exps[v];
            if a != 0 {
                let mut m2 = m.clone();
                m2.exps[v] -= 1;
                out.add_term(m2, c.mul(&Qi::from_i64(a)));
            }
            if v < p.n && m.fourier[v] != 0 {
                out.add_term(m.clone(), c.mul(&Qi::i()).mul(&Qi::from_i64(m.fourier[v])));
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let p = &self.patch;
        let mut out = Self::zero(p);
        for v in 0..p.vars() {
            out = out.add(&Self::differential(p, v).wedge(&self.partial(v)));
        }
        out
    }

    /// Terms of form degree `q`.
    pub fn degree_part(&self, q: usize) -> Self {
        let mut out = Self::zero(&self.patch);
        for (m, c) in &self.terms {
            if m.degree() == q {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Homogeneity degrees present.
    pub fn homogeneities(&self) -> Vec<i64> {
        let mut h: Vec<i64> = self.terms.keys().map(|m| m.homogeneity(&self.patch)).collect();
        h.sort();
        h.dedup();
        h
    }

    /// Form degrees present.
    pub fn degrees(&self) -> Vec<usize> {
        let mut h: Vec<usize> = self.terms.keys().map(Monomial::degree).collect();
        h.sort();
        h.dedup();
        h
    }

    /// Whether some `ξ` exponent is negative.
    pub fn has_xi_pole(&self) -> bool {
        let n = self.patch.n;
        self.terms.keys().any(|m| m.exps[n..].iter().any(|&e| e < 0))
    }

    /// Smallest `x_j` exponent appearing, per boundary coordinate.
    pub fn min_x_exponents(&self) -> Vec<Option<i64>> {
        (0..self.patch.k).map(|j| self.terms.keys().map(|m| m.exps[j]).min()).collect()
    }
}

impl fmt::Debug for LaurentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = &self.patch;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &a) in m.exps.iter().enumerate() {
                if a != 0 {
                    write!(f, "·{}^{a}", p.var_name(v))?;
                }
            }
            for (j, &a) in m.fourier.iter().enumerate() {
                if a != 0 {
                    write!(f, "·e^(i{a}y{})", j + 1)?;
                }
            }
            for v in m.wedge_vars() {
                write!(f, " d{}", p.var_name(v))?;
            }
        }
        Ok(())
    }
}
