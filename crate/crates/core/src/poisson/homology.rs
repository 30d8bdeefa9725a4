use std::collections::HashMap;

use rand::Rng;

use super::calculus::{delta_checked, exterior_d, hodge_star, subsets, PoissonTensor};
use super::form::{LaurentForm, Monomial, Patch};
use crate::error::{Error, Result};
use crate::qlinalg::{rank, Field, Qi, SparseMat, SparseVec};

/// Exponent bounds cutting a homogeneous sector down to finitely many
/// monomials. `fourier` fixes the character `e^{i⟨m,y⟩}` and must vanish on
/// the `x` slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub x: (i64, i64),
    pub y: (i64, i64),
    pub xi: (i64, i64),
    pub fourier: Vec<i64>,
}

impl Truncation {
    pub fn new(p: &Patch, x: (i64, i64), y: (i64, i64), xi: (i64, i64)) -> Self {
        Truncation { x, y, xi, fourier: vec![0; p.n] }
    }

    pub fn with_fourier(mut self, fourier: Vec<i64>) -> Self {
        self.fourier = fourier;
        self
    }

    /// Bounds widened by `s` on every side; `y` exponents stay nonnegative.
    pub fn widened(&self, s: i64) -> Self {
        Truncation {
            x: (self.x.0 - s, self.x.1 + s),
            y: ((self.y.0 - s).max(0), self.y.1 + s),
            xi: (self.xi.0 - s, self.xi.1 + s),
            fourier: self.fourier.clone(),
        }
    }

    fn check(&self, p: &Patch) -> Result<()> {
        if self.fourier.len() != p.n || self.fourier[..p.k].iter().any(|&m| m != 0) {
            return Err(Error::input("Fourier weights live on the y coordinates only"));
        }
        if self.y.0 < 0 {
            return Err(Error::input("y exponents are nonnegative"));
        }
        Ok(())
    }
}

/// Largest sector the homology routines will enumerate.
pub const SECTOR_BUDGET: usize = 50_000;

/// Monomial `q`-forms of homogeneity `h` inside the truncation.
pub fn sector(p: &Patch, q: usize, h: i64, t: &Truncation) -> Result<Vec<Monomial>> {
    t.check(p)?;
    let mut out = Vec::new();
    for wedge in subsets(p.vars(), q) {
        let dxi = (p.n..p.vars()).filter(|v| wedge & (1 << v) != 0).count() as i64;
        let target = h - dxi;
        let mut exps = vec![0i64; p.vars()];
        fill(p, t, 0, target, &mut exps, &mut |e| {
            out.push(Monomial { wedge, exps: e.to_vec(), fourier: t.fourier.clone() });
        });
        if out.len() > SECTOR_BUDGET {
            return Err(Error::budget(format!("sector of degree {q}, homogeneity {h} exceeds {SECTOR_BUDGET} monomials")));
        }
    }
    out.sort();
    Ok(out)
}

fn fill(p: &Patch, t: &Truncation, v: usize, xi_left: i64, exps: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    if v == p.vars() {
        if xi_left == 0 {
            emit(exps);
        }
        return;
    }
    let range = if v < p.k {
        t.x
    } else if v < p.n {
        t.y
    } else {
        let rest = (p.vars() - v - 1) as i64;
        (t.xi.0.max(xi_left - rest * t.xi.1), t.xi.1.min(xi_left - rest * t.xi.0))
    };
    for a in range.0..=range.1 {
        exps[v] = a;
        let left = if v >= p.n { xi_left - a } else { xi_left };
        fill(p, t, v + 1, left, exps, emit);
    }
}

struct Ambient {
    index: HashMap<Monomial, usize>,
}

impl Ambient {
    fn coords(&mut self, f: &LaurentForm) -> SparseVec<Qi> {
        let mut pairs = Vec::with_capacity(f.terms().len());
        for (m, c) in f.terms() {
            let n = self.index.len();
            let i = *self.index.entry(m.clone()).or_insert(n);
            pairs.push((i, c.clone()));
        }
        SparseVec::from_pairs(pairs)
    }

    fn matrix(&mut self, fs: &[LaurentForm]) -> Vec<SparseVec<Qi>> {
        fs.iter().map(|f| self.coords(f)).collect()
    }
}

fn rank_of(cols: Vec<SparseVec<Qi>>, rows: usize) -> usize {
    rank(&SparseMat::from_columns(rows, cols))
}

/// `dim ker(op|V) − dim(op(W) ∩ V)` for `V = span(source)` (linearly
/// independent) and `W = span(incoming)`.
pub fn subquotient(source: &[LaurentForm], incoming: &[LaurentForm], op: &dyn Fn(&LaurentForm) -> Result<LaurentForm>) -> Result<usize> {
    let mut amb = Ambient { index: HashMap::new() };
    let images = source.iter().map(op).collect::<Result<Vec<_>>>()?;
    let img_cols = amb.matrix(&images);
    let kernel = source.len() - rank_of(img_cols, amb.index.len());

    let mut amb = Ambient { index: HashMap::new() };
    let src = amb.matrix(source);
    let inc = incoming.iter().map(op).collect::<Result<Vec<_>>>()?;
    let inc = amb.matrix(&inc);
    let rows = amb.index.len();
    let r_src = rank_of(src.clone(), rows);
    if r_src != source.len() {
        return Err(Error::defect("sector basis is linearly dependent"));
    }
    let r_inc = rank_of(inc.clone(), rows);
    let r_both = rank_of(src.into_iter().chain(inc).collect(), rows);
    let meet = r_inc + r_src - r_both;
    kernel.checked_sub(meet).ok_or_else(|| Error::defect("boundaries exceed cycles"))
}

fn unit_forms(p: &Patch, ms: &[Monomial]) -> Vec<LaurentForm> {
    ms.iter().map(|m| LaurentForm::term(p, Qi::one(), m.clone())).collect()
}

/// Truncated homogeneous Poisson homology at form degree `p0` and
/// homogeneity `d`: cycles of the `(p0, d)` sector modulo boundaries of the
/// `(p0 + 1, d + 1)` sector.
pub fn homogeneous_poisson_homology(p: &Patch, p0: usize, d: i64, t: &Truncation) -> Result<usize> {
    if p0 > p.vars() {
        return Ok(0);
    }
    let g = PoissonTensor::new(p);
    let src = unit_forms(p, &sector(p, p0, d, t)?);
    let inc = if p0 < p.vars() { unit_forms(p, &sector(p, p0 + 1, d + 1, t)?) } else { vec![] };
    subquotient(&src, &inc, &|f| delta_checked(f, &g))
}

/// The same space computed on the other side of `*_G`: `d`-cohomology of the
/// image of the `(p0, d)` sector, with incoming classes from the image of
/// the `(p0 + 1, d + 1)` sector.
pub fn dual_de_rham_dim(p: &Patch, p0: usize, d: i64, t: &Truncation) -> Result<usize> {
    if p0 > p.vars() {
        return Ok(0);
    }
    let g = PoissonTensor::new(p);
    let star = |ms: Vec<Monomial>| unit_forms(p, &ms).iter().map(|f| hodge_star(f, &g)).collect::<Vec<_>>();
    let src = star(sector(p, p0, d, t)?);
    let inc = if p0 < p.vars() { star(sector(p, p0 + 1, d + 1, t)?) } else { vec![] };
    subquotient(&src, &inc, &|f| Ok(exterior_d(f)))
}

/// Truncated `d`-cohomology of the `(q, h)` sector.
pub fn homogeneous_de_rham(p: &Patch, q: usize, h: i64, t: &Truncation) -> Result<usize> {
    let src = unit_forms(p, &sector(p, q, h, t)?);
    let inc = if q > 0 { unit_forms(p, &sector(p, q - 1, h, t)?) } else { vec![] };
    subquotient(&src, &inc, &|f| Ok(exterior_d(f)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStabilization {
    /// Dimension for the truncation widened by 0, 1, 2, ….
    pub history: Vec<usize>,
    pub stable: bool,
}

/// Poisson homology over successively widened truncations; stable once the
/// last `window` dimensions agree.
pub fn poisson_homology_stabilization(p: &Patch, p0: usize, d: i64, t: &Truncation, steps: usize, window: usize) -> Result<PoissonStabilization> {
    let history = (0..steps).map(|s| homogeneous_poisson_homology(p, p0, d, &t.widened(s as i64))).collect::<Result<Vec<_>>>()?;
    let stable = history.len() >= window && history[history.len() - window..].windows(2).all(|w| w[0] == w[1]);
    Ok(PoissonStabilization { history, stable })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub samples: usize,
    pub delta_squared: usize,
    pub d_squared: usize,
    pub star_involution: usize,
    pub conjugation: usize,
    pub homogeneity: usize,
    pub star_bidegree: usize,
    pub routes_agree: usize,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        let s = self.samples;
        [self.delta_squared, self.d_squared, self.star_involution, self.conjugation, self.homogeneity, self.star_bidegree, self.routes_agree]
            .iter()
            .all(|&c| c == s)
    }
}

/// Random homogeneous monomial form: up to three terms sharing form degree
/// and homogeneity, `x` exponents in `[−3, 3]`, `y` and `ξ` exponents in
/// `[0, 3]`, small Gaussian-integer coefficients.
pub fn random_form<R: Rng>(p: &Patch, rng: &mut R) -> LaurentForm {
    let q = rng.gen_range(0..=p.vars());
    let wedges = subsets(p.vars(), q);
    let terms = rng.gen_range(1..=3);
    let mut f = LaurentForm::zero(p);
    let mut h = None;
    for _ in 0..terms * 8 {
        if f.terms().len() >= terms {
            break;
        }
        let wedge = wedges[rng.gen_range(0..wedges.len())];
        let mut m = Monomial { wedge, exps: vec![0; p.vars()], fourier: vec![0; p.n] };
        for v in 0..p.vars() {
            m.exps[v] = if v < p.k { rng.gen_range(-3..=3) } else { rng.gen_range(0..=3) };
        }
        for j in p.k..p.n {
            m.fourier[j] = rng.gen_range(-1..=1);
        }
        let mh = m.homogeneity(p);
        if *h.get_or_insert(mh) != mh {
            continue;
        }
        let c = Qi::new(crate::qlinalg::q_int(rng.gen_range(-3..=3)), crate::qlinalg::q_int(rng.gen_range(-1..=1)));
        f.add_term(m, c);
    }
    f
}

fn fail(what: &str, f: &LaurentForm, lhs: &LaurentForm, rhs: &LaurentForm) -> Error {
    Error::defect(format!("{what} fails on {f:?}: {lhs:?} ≠ {rhs:?}"))
}

/// Checks every identity of the chart calculus on the given forms.
pub fn verify_identities(p: &Patch, forms: &[LaurentForm]) -> Result<IdentityReport> {
    let g = PoissonTensor::new(p);
    let mut r = IdentityReport { samples: forms.len(), ..Default::default() };
    for f in forms {
        let zero = LaurentForm::zero(p);
        let df = delta_checked(f, &g)?;
        r.routes_agree += 1;
        let ddf = delta_checked(&df, &g)?;
        if !ddf.is_zero() {
            return Err(fail("δ² = 0", f, &ddf, &zero));
        }
        r.delta_squared += 1;
        let d2 = f.d().d();
        if !d2.is_zero() {
            return Err(fail("d² = 0", f, &d2, &zero));
        }
        r.d_squared += 1;
        let s = hodge_star(f, &g);
        let ss = hodge_star(&s, &g);
        if &ss != f {
            return Err(fail("*_G² = 1", f, &ss, f));
        }
        r.star_involution += 1;
        for q in f.degrees() {
            let part = f.degree_part(q);
            let lhs = hodge_star(&delta_checked(&hodge_star(&part, &g), &g)?, &g);
            let sign = if q % 2 == 0 { Qi::one() } else { Qi::one().neg() };
            let rhs = part.d().scale(&sign);
            if lhs != rhs {
                return Err(fail("*_G δ *_G = (−1)^k d", &part, &lhs, &rhs));
            }
        }
        r.conjugation += 1;
        let hs = f.homogeneities();
        if hs.len() == 1 && !df.is_zero() {
            let want = vec![hs[0] - 1];
            if df.homogeneities() != want || (!f.has_xi_pole() && df.has_xi_pole()) {
                return Err(Error::defect(format!("δ is not homogeneous of degree −1 on {f:?}: {df:?}")));
            }
        }
        r.homogeneity += 1;
        for (m, _) in f.terms() {
            let single = LaurentForm::term(p, Qi::one(), m.clone());
            let img = hodge_star(&single, &g);
            let want_h = m.homogeneity(p) + p.n as i64 - m.degree() as i64;
            if img.degrees() != vec![p.vars() - m.degree()] || img.homogeneities() != vec![want_h] {
                return Err(Error::defect(format!("*_G bidegree rule fails on {single:?}: {img:?}")));
            }
        }
        r.star_bidegree += 1;
    }
    Ok(r)
}
