use std::collections::BTreeMap;
use std::fmt;

use super::algebra::{product, Gen, GradedAlgebra};
use crate::error::{Error, Result};
use crate::qlinalg::Field;

/// Basis tensor `a₀ ⊗ … ⊗ a_q`.
pub type Tensor = Vec<Gen>;

/// Formal combination of basis tensors of one degree.
#[derive(Clone, PartialEq, Eq)]
pub struct HochschildChain<F> {
    degree: usize,
    terms: BTreeMap<Tensor, F>,
}

impl<F: Field> HochschildChain<F> {
    pub fn zero(degree: usize) -> Self {
        HochschildChain { degree, terms: BTreeMap::new() }
    }

    pub fn basis(t: Tensor) -> Self {
        assert!(!t.is_empty(), "a tensor has at least one factor");
        let mut c = Self::zero(t.len() - 1);
        c.terms.insert(t, F::one());
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Tensor, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: Tensor, c: F) {
        debug_assert_eq!(t.len(), self.degree + 1);
        if c.is_zero() {
            return;
        }
        let mut remove = false;
        self.terms
            .entry(t.clone())
            .and_modify(|e| {
                *e = e.add(&c);
                remove = e.is_zero();
            })
            .or_insert(c);
        if remove {
            self.terms.remove(&t);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &F::one());
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        for (t, x) in &other.terms {
            self.add_term(t.clone(), x.mul(c));
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.degree);
        for (t, x) in &self.terms {
            out.add_term(t.clone(), x.mul(c));
        }
        out
    }

    /// Weights of the terms; a homogeneous chain has at most one.
    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.terms.keys().map(|t| t.iter().map(|g| g.w).sum()).collect();
        w.sort();
        w.dedup();
        w
    }

    /// Drops tensors of total order `≤ floor`.
    pub fn above(&self, floor: i64) -> Self {
        let mut out = Self::zero(self.degree);
        for (t, c) in &self.terms {
            if total_order(t) > floor {
                out.terms.insert(t.clone(), c.clone());
            }
        }
        out
    }
}

impl<F: Field> fmt::Debug for HochschildChain<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for g in t {
                write!(f, "{g:?}")?;
            }
        }
        Ok(())
    }
}

pub fn total_order(t: &[Gen]) -> i64 {
    t.iter().map(|g| g.o).sum()
}

pub fn total_weight(t: &[Gen]) -> i64 {
    t.iter().map(|g| g.w).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    B,
    BPrime,
    S,
    T,
    B0,
    Connes,
}

/// Operator context: the algebra, the order floor of the quotient, and
/// whether a formal unit may be adjoined for `s` and `B`.
pub struct Ops<'a, A: GradedAlgebra + ?Sized> {
    pub alg: &'a A,
    pub floor: i64,
    pub formal_unit: bool,
}

impl<'a, A: GradedAlgebra + ?Sized> Ops<'a, A> {
    pub fn new(alg: &'a A) -> Self {
        Ops { alg, floor: i64::MIN, formal_unit: false }
    }

    pub fn with_floor(mut self, floor: i64) -> Self {
        self.floor = floor;
        self
    }

    pub fn with_formal_unit(mut self) -> Self {
        self.formal_unit = true;
        self
    }

    fn unit(&self) -> Result<Gen> {
        match self.alg.unit() {
            Some(u) => Ok(u),
            None if self.formal_unit => Ok(Gen::FORMAL_UNIT),
            None => Err(Error::input(format!("{} has no unit; adjoin a formal unit for s and B", self.alg.name()))),
        }
    }

    pub fn apply(&self, op: Operator, c: &HochschildChain<A::F>) -> Result<HochschildChain<A::F>> {
        Ok(match op {
            Operator::B => self.b(c),
            Operator::BPrime => self.b_prime(c),
            Operator::S => self.s(c)?,
            Operator::T => self.t(c),
            Operator::B0 => self.b0(c)?,
            Operator::Connes => self.connes(c)?,
        })
    }

    /// Term `(−1)^i a₀ ⊗ … ⊗ a_i a_{i+1} ⊗ … ⊗ a_n` added to `out`.
    fn merge_into(&self, out: &mut HochschildChain<A::F>, t: &[Gen], i: usize, c: &A::F) {
        let sign = if i % 2 == 0 { c.clone() } else { c.neg() };
        for (g, x) in product(self.alg, &t[i], &t[i + 1]) {
            let mut nt = Vec::with_capacity(t.len() - 1);
            nt.extend_from_slice(&t[..i]);
            nt.push(g);
            nt.extend_from_slice(&t[i + 2..]);
            if total_order(&nt) > self.floor {
                out.add_term(nt, x.mul(&sign));
            }
        }
    }

    /// `b′ = Σ_{i<n} (−1)^i (… a_i a_{i+1} …)`. Zero in degree 0.
    pub fn b_prime(&self, c: &HochschildChain<A::F>) -> HochschildChain<A::F> {
        if c.degree == 0 {
            return HochschildChain::zero(0);
        }
        let mut out = HochschildChain::zero(c.degree - 1);
        for (t, x) in &c.terms {
            for i in 0..c.degree {
                self.merge_into(&mut out, t, i, x);
            }
        }
        out
    }

    /// `b = b′ + (−1)^n a_n a₀ ⊗ a₁ ⊗ … ⊗ a_{n−1}`. Zero in degree 0.
    pub fn b(&self, c: &HochschildChain<A::F>) -> HochschildChain<A::F> {
        let mut out = self.b_prime(c);
        let n = c.degree;
        if n == 0 {
            return out;
        }
        for (t, x) in &c.terms {
            let sign = if n % 2 == 0 { x.clone() } else { x.neg() };
            for (g, y) in product(self.alg, &t[n], &t[0]) {
                let mut nt = Vec::with_capacity(n);
                nt.push(g);
                nt.extend_from_slice(&t[1..n]);
                if total_order(&nt) > self.floor {
                    out.add_term(nt, y.mul(&sign));
                }
            }
        }
        out
    }

    /// `t(a₀ ⊗ … ⊗ a_n) = (−1)^n a_n ⊗ a₀ ⊗ … ⊗ a_{n−1}`.
    pub fn t(&self, c: &HochschildChain<A::F>) -> HochschildChain<A::F> {
        let n = c.degree;
        let mut out = HochschildChain::zero(n);
        for (t, x) in &c.terms {
            let mut nt = Vec::with_capacity(n + 1);
            nt.push(t[n]);
            nt.extend_from_slice(&t[..n]);
            out.add_term(nt, if n % 2 == 0 { x.clone() } else { x.neg() });
        }
        out
    }

    /// `s(a₀ ⊗ … ⊗ a_n) = 1 ⊗ a₀ ⊗ … ⊗ a_n`.
    pub fn s(&self, c: &HochschildChain<A::F>) -> Result<HochschildChain<A::F>> {
        let u = self.unit()?;
        let mut out = HochschildChain::zero(c.degree + 1);
        for (t, x) in &c.terms {
            let mut nt = Vec::with_capacity(t.len() + 1);
            nt.push(u);
            nt.extend_from_slice(t);
            out.add_term(nt, x.clone());
        }
        Ok(out)
    }

    /// `N = Σ_{k=0}^{n} t^k`.
    pub fn norm(&self, c: &HochschildChain<A::F>) -> HochschildChain<A::F> {
        let mut out = c.clone();
        let mut cur = c.clone();
        for _ in 0..c.degree {
            cur = self.t(&cur);
            out.add_scaled(&cur, &A::F::one());
        }
        out
    }

    /// `B₀ = s N`.
    pub fn b0(&self, c: &HochschildChain<A::F>) -> Result<HochschildChain<A::F>> {
        self.s(&self.norm(c))
    }

    /// `B = (1 − t) B₀`.
    pub fn connes(&self, c: &HochschildChain<A::F>) -> Result<HochschildChain<A::F>> {
        let x = self.b0(c)?;
        let mut out = x.clone();
        out.add_scaled(&self.t(&x), &A::F::one().neg());
        Ok(out)
    }
}
