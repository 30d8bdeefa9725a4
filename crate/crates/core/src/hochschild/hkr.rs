use super::algebra::{Gen, GradedAlgebra};
use super::ops::HochschildChain;
use crate::error::{Error, Result};
use crate::poisson::{LaurentForm, Monomial, Patch};
use crate::qlinalg::{Field, Qi};

/// Presentation of a commutative algebra by functions on a chart.
pub type Coordinates<'a> = dyn Fn(&Gen) -> Result<LaurentForm> + 'a;

/// `x^a ↦ x^a` on the half-line chart `(n, k) = (1, 1)`; weight is the exponent.
pub fn monomial_coordinates(p: &Patch) -> impl Fn(&Gen) -> Result<LaurentForm> + '_ {
    move |g: &Gen| {
        let mut m = Monomial::one(p);
        m.exps[0] = g.w;
        Ok(LaurentForm::term(p, Qi::one(), m))
    }
}

/// `e^{imθ}|ξ|^j ↦ e^{imy} ξ^j` on the chart `(n, k) = (1, 0)`; weight is the
/// Fourier mode and order the `ξ` exponent.
pub fn fourier_coordinates(p: &Patch) -> impl Fn(&Gen) -> Result<LaurentForm> + '_ {
    move |g: &Gen| {
        let mut m = Monomial::one(p);
        m.fourier[p.k] = g.w;
        m.exps[p.n] = g.o;
        Ok(LaurentForm::term(p, Qi::one(), m))
    }
}

/// Hochschild–Kostant–Rosenberg–Connes map
/// `χ(a₀ ⊗ … ⊗ a_l) = (1/l!) a₀ da₁∧…∧da_l`.
pub fn hkr_chi<A: GradedAlgebra + ?Sized>(alg: &A, c: &HochschildChain<A::F>, coords: &Coordinates<'_>, p: &Patch) -> Result<LaurentForm> {
    if !alg.is_commutative() {
        return Err(Error::input(format!("{} is not commutative; χ is defined on commutative algebras", alg.name())));
    }
    let l = c.degree();
    let mut fact = Qi::one();
    for i in 2..=l as i64 {
        fact = fact.mul(&Qi::from_i64(i));
    }
    let norm = fact.inv();
    let mut out = LaurentForm::zero(p);
    for (t, x) in c.terms() {
        if t.iter().any(Gen::is_formal_unit) {
            return Err(Error::input("χ is not defined on the formal unit"));
        }
        let mut f = coords(&t[0])?;
        for g in &t[1..] {
            f = f.wedge(&coords(g)?.d());
        }
        out = out.add(&f.scale(&x.to_qi().mul(&norm)));
    }
    Ok(out)
}
