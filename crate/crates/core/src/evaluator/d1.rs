use rand::Rng;

use super::symbol::{Sheet, SymbolModel};
use crate::error::{Error, Result};
use crate::hochschild::{fourier_coordinates, hkr_chi, total_order, Gen, HochschildChain, Ops};
use crate::poisson::{delta_checked, Patch, PoissonTensor};
use crate::qlinalg::{Field, Qi, Q};

/// Sample for the `d₁` check: `η = Σ_σ sign(σ) f₀ ⊗ f_{σ(1)} ⊗ … ⊗ f_{σ(m)}`
/// with symbols `f_i = e^{i m_i x}|ξ|^{j_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D1Sample {
    pub factors: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct D1Report {
    pub samples: usize,
    pub passed: usize,
    /// Samples whose antisymmetrization vanishes identically.
    pub degenerate: usize,
}

fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    if m == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            // inserting the largest element before `len − pos` others
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// The antisymmetrized chain `η` on one sheet.
pub fn antisymmetrize(model: &SymbolModel, sample: &D1Sample) -> HochschildChain<Q> {
    let m = sample.factors.len() - 1;
    let mut eta = HochschildChain::zero(m);
    let gen = |(w, o): (i64, i64)| model.gen(w, o);
    for (perm, sign) in permutations(m) {
        let mut t: Vec<Gen> = vec![gen(sample.factors[0])];
        t.extend(perm.iter().map(|&i| gen(sample.factors[i + 1])));
        eta.add_term(t, Q::from_i64(sign));
    }
    eta
}

/// Checks `χ(b q(η)) ≡ −√−1 δ(χ(η))` modulo total order `k − 2` on the
/// `ξ > 0` sheet, where `k` is the total order of `η`.
pub fn d1_check(model: &SymbolModel, samples: &[D1Sample]) -> Result<D1Report> {
    if model.sheet != Sheet::Plus || model.graded {
        return Err(Error::input("the d₁ check runs on the full ξ > 0 symbol model"));
    }
    let p = Patch::new(1, 0, vec![])?;
    let coords = fourier_coordinates(&p);
    let g = PoissonTensor::new(&p);
    let gr = model.associated_graded();
    let ops = Ops::new(model);
    let mut report = D1Report { samples: samples.len(), ..Default::default() };
    for s in samples {
        if s.factors.len() < 2 {
            return Err(Error::input("a d₁ sample needs at least two factors"));
        }
        let k: i64 = s.factors.iter().map(|f| f.1).sum();
        if s.factors.iter().any(|f| f.1 - 1 < model.min_order) || k - 1 < model.min_order {
            return Err(Error::input(format!("sample {s:?} reaches below the model's order cutoff")));
        }
        let eta = antisymmetrize(model, s);
        if eta.terms().is_empty() {
            report.degenerate += 1;
        }
        let beta = ops.b(&eta);
        if let Some((t, _)) = beta.terms().iter().find(|(t, _)| total_order(t) >= k) {
            return Err(Error::defect(format!("b q(η) has a term {t:?} of order ≥ {k} for {s:?}")));
        }
        let mut top = HochschildChain::zero(beta.degree());
        for (t, c) in beta.terms() {
            if total_order(t) == k - 1 {
                top.add_term(t.clone(), c.clone());
            }
        }
        let lhs = hkr_chi(&gr, &top, &coords, &p)?;
        let chi_eta = hkr_chi(&gr, &eta, &coords, &p)?;
        let rhs = delta_checked(&chi_eta, &g)?.scale(&Qi::i().neg());
        if lhs != rhs {
            return Err(Error::defect(format!("d₁ mismatch on {s:?}: χ b q(η) = {lhs:?}, −i δ χ(η) = {rhs:?}")));
        }
        report.passed += 1;
    }
    Ok(report)
}

/// Random samples of length `2..=4` with Fourier modes and orders in `[−2, 2]`.
pub fn random_d1_samples<R: Rng>(rng: &mut R, count: usize) -> Vec<D1Sample> {
    (0..count)
        .map(|_| {
            let len = rng.gen_range(2..=4);
            D1Sample { factors: (0..len).map(|_| (rng.gen_range(-2..=2), rng.gen_range(-2..=2))).collect() }
        })
        .collect()
}

/// Model deep enough for samples from [`random_d1_samples`].
pub fn d1_model() -> SymbolModel {
    SymbolModel::new(Sheet::Plus, -12)
}
