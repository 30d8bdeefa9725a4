use super::form::{wedge_sign, LaurentForm, Monomial, Patch};
use crate::error::{Error, Result};
use crate::qlinalg::{Field, Qi};

/// `G = Σ_{j>k} ∂_{ξ_j}∧∂_{y_j} + Σ_{j≤k} x_j^{c_j} ∂_{ξ_j}∧∂_{x_j}` on a patch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonTensor {
    pub patch: Patch,
}

impl PoissonTensor {
    pub fn new(patch: &Patch) -> Self {
        PoissonTensor { patch: patch.clone() }
    }

    /// `P_j`: the coefficient `x_j^{c_j}` for `j ≤ k`, else 1.
    fn weight(&self, j: usize) -> Monomial {
        let mut m = Monomial::one(&self.patch);
        if j < self.patch.k {
            m.exps[j] = self.patch.c[j];
        }
        m
    }

    /// `G(dz_a, dz_b)` as a function.
    pub fn pair(&self, a: usize, b: usize) -> LaurentForm {
        let p = &self.patch;
        let n = p.n;
        if a < n && b == a + n {
            LaurentForm::term(p, Qi::one().neg(), self.weight(a))
        } else if b < n && a == b + n {
            LaurentForm::term(p, Qi::one(), self.weight(b))
        } else {
            LaurentForm::zero(p)
        }
    }

    /// `{f, g} = Σ_j P_j (∂_{ξ_j} f ∂_{b_j} g − ∂_{b_j} f ∂_{ξ_j} g)` on functions.
    pub fn bracket(&self, f: &LaurentForm, g: &LaurentForm) -> LaurentForm {
        let p = &self.patch;
        let mut out = LaurentForm::zero(p);
        for j in 0..p.n {
            let xi = p.xi(j);
            let t = f.partial(xi).wedge(&g.partial(j)).sub(&f.partial(j).wedge(&g.partial(xi)));
            out = out.add(&LaurentForm::term(p, Qi::one(), self.weight(j)).wedge(&t));
        }
        out
    }

    /// `i_G(f dz_{a₁}∧…∧dz_{a_m}) = Σ_{i<j} (−1)^{i+j+1} G(dz_{a_i}, dz_{a_j}) f dz_{rest}`.
    pub fn contract(&self, f: &LaurentForm) -> LaurentForm {
        let p = &self.patch;
        let mut out = LaurentForm::zero(p);
        for (m, c) in f.terms() {
            let vars = m.wedge_vars();
            for i in 0..vars.len() {
                for j in i + 1..vars.len() {
                    let g = self.pair(vars[i], vars[j]);
                    if g.is_zero() {
                        continue;
                    }
                    // positions are 1-based in the sign
                    let sign = if (i + j + 1) % 2 == 0 { 1 } else { -1 };
                    let mut rest = m.clone();
                    rest.wedge &= !((1 << vars[i]) | (1 << vars[j]));
                    let t = LaurentForm::term(p, c.mul(&Qi::from_i64(sign)), rest);
                    out = out.add(&g.wedge(&t));
                }
            }
        }
        out
    }
}

/// Which expression of `δ` to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaRoute {
    /// `i_G ∘ d − d ∘ i_G`.
    Contraction,
    /// The explicit bracket expansion of `δ(f₀ df₁∧…∧df_m)`.
    LocalFormula,
}

/// Exterior derivative.
pub fn exterior_d(f: &LaurentForm) -> LaurentForm {
    f.d()
}

fn delta_contraction(f: &LaurentForm, g: &PoissonTensor) -> LaurentForm {
    g.contract(&f.d()).sub(&g.contract(f).d())
}

/// `δ(f₀ df₁…df_m) = Σ_j (−1)^{j+1} {f₀, f_j} df₁…^j…df_m
///   + Σ_{i<j} (−1)^{i+j} f₀ d{f_i, f_j} ∧ df₁…^i…^j…df_m`, with `f_i` the
/// coordinate functions of each monomial.
fn delta_local(f: &LaurentForm, g: &PoissonTensor) -> LaurentForm {
    let p = f.patch();
    let mut out = LaurentForm::zero(p);
    for (m, c) in f.terms() {
        let mut m0 = m.clone();
        m0.wedge = 0;
        let f0 = LaurentForm::term(p, c.clone(), m0);
        let vars = m.wedge_vars();
        let coords: Vec<LaurentForm> = vars.iter().map(|&v| LaurentForm::coordinate(p, v)).collect();
        let rest = |skip: &[usize]| {
            let mut r = LaurentForm::constant(p, Qi::one());
            for (i, &v) in vars.iter().enumerate() {
                if !skip.contains(&i) {
                    r = r.wedge(&LaurentForm::differential(p, v));
                }
            }
            r
        };
        for j in 0..vars.len() {
            let sign = if j % 2 == 0 { Qi::one() } else { Qi::one().neg() };
            out = out.add(&g.bracket(&f0, &coords[j]).wedge(&rest(&[j])).scale(&sign));
        }
        for i in 0..vars.len() {
            for j in i + 1..vars.len() {
                let sign = if (i + j) % 2 == 0 { Qi::one() } else { Qi::one().neg() };
                let dij = g.bracket(&coords[i], &coords[j]).d();
                out = out.add(&f0.wedge(&dij).wedge(&rest(&[i, j])).scale(&sign));
            }
        }
    }
    out
}

/// Poisson differential of the chart; lowers form degree and homogeneity by one.
pub fn delta(f: &LaurentForm, g: &PoissonTensor, route: DeltaRoute) -> LaurentForm {
    match route {
        DeltaRoute::Contraction => delta_contraction(f, g),
        DeltaRoute::LocalFormula => delta_local(f, g),
    }
}

/// `δ` by both routes; a disagreement is a defect.
pub fn delta_checked(f: &LaurentForm, g: &PoissonTensor) -> Result<LaurentForm> {
    let a = delta_contraction(f, g);
    let b = delta_local(f, g);
    if a != b {
        return Err(Error::defect(format!("δ routes disagree on {f:?}: {a:?} vs {b:?}")));
    }
    Ok(a)
}

/// `ωⁿ/n!` with `ω = Σ_{j>k} dy_j∧dξ_j + Σ_{j≤k} x_j^{−c_j} dx_j∧dξ_j`.
pub fn volume(p: &Patch) -> LaurentForm {
    let mut omega = LaurentForm::zero(p);
    for j in 0..p.n {
        let mut m = Monomial::one(p);
        if j < p.k {
            m.exps[j] = -p.c[j];
        }
        let f = LaurentForm::term(p, Qi::one(), m);
        omega = omega.add(&f.wedge(&LaurentForm::differential(p, j)).wedge(&LaurentForm::differential(p, p.xi(j))));
    }
    let mut v = LaurentForm::constant(p, Qi::one());
    for i in 1..=p.n {
        v = v.wedge(&omega).scale(&Qi::from_i64(i as i64).inv());
    }
    v
}

/// `Λᵏ(G)(dz_I, dz_J) = det[G(dz_{I_a}, dz_{J_b})]`.
pub fn pairing(g: &PoissonTensor, i: u32, j: u32) -> LaurentForm {
    let p = &g.patch;
    let iv: Vec<usize> = (0..32).filter(|v| i & (1 << v) != 0).collect();
    let jv: Vec<usize> = (0..32).filter(|v| j & (1 << v) != 0).collect();
    if iv.len() != jv.len() {
        return LaurentForm::zero(p);
    }
    det(&iv.iter().map(|&a| jv.iter().map(|&b| g.pair(a, b)).collect()).collect::<Vec<Vec<_>>>(), p)
}

fn det(m: &[Vec<LaurentForm>], p: &Patch) -> LaurentForm {
    let n = m.len();
    if n == 0 {
        return LaurentForm::constant(p, Qi::one());
    }
    let mut out = LaurentForm::zero(p);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentForm>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, x)| x.clone()).collect()).collect();
        let sign = if col % 2 == 0 { Qi::one() } else { Qi::one().neg() };
        out = out.add(&m[0][col].wedge(&det(&minor, p)).scale(&sign));
    }
    out
}

/// Symplectic Hodge operator `*_G`. The form `⋆β` determined by
/// `α∧⋆β = Λᵏ(G)(α, β) ωⁿ/n!` is multiplied by `(−1)^{deg β}`, which keeps
/// `*_G² = 1` and gives `*_G δ *_G = (−1)ᵏ d` on `k`-forms.
pub fn hodge_star(f: &LaurentForm, g: &PoissonTensor) -> LaurentForm {
    let p = &g.patch;
    let vol = volume(p);
    let all: u32 = (1u32 << p.vars()) - 1;
    let (vm, vc) = vol.terms().iter().next().map(|(m, c)| (m.clone(), c.clone())).expect("volume form is nonzero");
    let mut vol_fn = vm;
    vol_fn.wedge = 0;
    let vol_fn = LaurentForm::term(p, vc, vol_fn);
    let mut out = LaurentForm::zero(p);
    for (m, c) in f.terms() {
        let q = m.degree();
        let mut coef = m.clone();
        coef.wedge = 0;
        let sign = if q % 2 == 0 { Qi::one() } else { Qi::one().neg() };
        let coef = LaurentForm::term(p, c.mul(&sign), coef);
        for i in subsets(p.vars(), q) {
            let gij = pairing(g, i, m.wedge);
            if gij.is_zero() {
                continue;
            }
            let comp = all & !i;
            let eps = wedge_sign(i, comp);
            let mut unit = Monomial::one(p);
            unit.wedge = comp;
            let basis = LaurentForm::term(p, Qi::from_i64(eps), unit);
            out = out.add(&coef.wedge(&gij).wedge(&vol_fn).wedge(&basis));
        }
    }
    out
}

/// Bitmasks of the `q`-element subsets of `0..n`.
pub fn subsets(n: usize, q: usize) -> Vec<u32> {
    (0u32..(1u32 << n)).filter(|s| s.count_ones() as usize == q).collect()
}
