use std::collections::BTreeMap;
use std::sync::Arc;

use super::symbol::{build_symbol_model, Sheet};
use crate::complexes::{cyclic_total, ChainComplex, ChainMap, CyclicTotal};
use crate::corners::{circle, kunneth};
use crate::error::{Error, Result};
use crate::hochschild::{mixed_complex, total_order, TensorBasis, Window};
use crate::qlinalg::{SparseMat, Q};
use crate::spectral::{barcode, FilteredComplex};

/// Weight-0 data of one sheet of the cosphere bundle of `S¹`, which is a
/// circle: forms modulo exact forms and de Rham cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosphereForms {
    /// `dim Ω^q(S*)_0 / dΩ^{q−1}(S*)_0`; `d` vanishes in weight 0.
    pub omega_mod_d: Vec<usize>,
    pub cohomology: Vec<usize>,
}

impl CosphereForms {
    pub fn circle_sheet() -> Result<Self> {
        let c = circle();
        let cx = c.complex()?;
        let coh = cx.cohomology(&cx.all(), c.ends())?;
        // weight-0 forms on S¹ have constant coefficients
        Ok(CosphereForms { omega_mod_d: vec![1, 1], cohomology: coh })
    }

    fn omega(&self, q: i64) -> usize {
        if q < 0 {
            0
        } else {
            self.omega_mod_d.get(q as usize).copied().unwrap_or(0)
        }
    }

    fn coh(&self, q: i64) -> usize {
        if q < 0 {
            0
        } else {
            self.cohomology.get(q as usize).copied().unwrap_or(0)
        }
    }

    fn dim(&self) -> i64 {
        self.omega_mod_d.len() as i64 - 1
    }

    /// `EC¹_{k,h}` of the full symbol algebra.
    pub fn ec1_full(&self, k: i64, h: i64) -> usize {
        let q = k + h;
        if k != 0 {
            return self.omega(q);
        }
        let with_circle = kunneth(&self.cohomology, &[1, 1]);
        let tower: usize = (1..).map(|j| q - 2 * j).take_while(|&d| d >= 0).map(|d| with_circle.get(d as usize).copied().unwrap_or(0)).sum();
        self.omega(q) + self.omega(q - 1) + tower
    }

    /// `EC¹_{k,h}` of the order-zero algebra, where it is determined:
    /// `k ≠ 0`, or `k = 0` with `h ≥ dim S*`.
    pub fn ec1_order_zero(&self, k: i64, h: i64) -> Option<usize> {
        match k {
            k if k < 0 => Some(self.ec1_full(k, h)),
            k if k > 0 => Some(0),
            _ if h >= self.dim() => Some((-h..=h).filter(|d| (h - d) % 2 == 0).map(|d| self.coh(d)).sum()),
            _ => None,
        }
    }

    /// Rank of `S: EC¹_{k,m−k} → EC¹_{k,m−k−2}`. For `k = 0` the summands
    /// `H^{m−2j}(S* × S¹)`, `j > 0`, survive; the one with `j = 1` lands
    /// injectively in the forms.
    pub fn s_rank(&self, k: i64, m: i64) -> usize {
        if k != 0 {
            return 0;
        }
        let with_circle = kunneth(&self.cohomology, &[1, 1]);
        (1..).map(|j| m - 2 * j).take_while(|&d| d >= 0).map(|d| with_circle.get(d as usize).copied().unwrap_or(0)).sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ec1Report {
    /// `((k, h), engine, closed form)` for every compared cell.
    pub cells: Vec<((i64, i64), usize, usize)>,
    /// `(k, m, engine rank, closed form)` for `S` on page 1.
    pub s_ranks: Vec<(i64, i64, usize, usize)>,
    pub order_zero_cells: Vec<((i64, i64), usize, usize)>,
}

struct FilteredCyclic {
    total: CyclicTotal<Q>,
    levels: BTreeMap<i64, Vec<i64>>,
    filtered: FilteredComplex<Q>,
}

fn filtered_cyclic(sheet: Sheet, window: &Window, top: usize) -> Result<FilteredCyclic> {
    let model = build_symbol_model(sheet, window)?;
    let basis = TensorBasis::new(&model, window, 0, top);
    let mixed = mixed_complex(&model, window, 0, top)?;
    let total = cyclic_total(&mixed, top)?;
    let mut levels = BTreeMap::new();
    for n in 0..=top {
        let l: Vec<i64> = (0..=n / 2).flat_map(|j| basis.tensors(n - 2 * j).iter().map(|t| total_order(t))).collect();
        levels.insert(n as i64, l);
    }
    let filtered = FilteredComplex::new(total.complex.clone(), levels.clone())?;
    Ok(FilteredCyclic { total, levels, filtered })
}

/// The order-`k` slice of a complex, with the selected basis positions.
fn slice(cx: &ChainComplex<Q>, levels: &BTreeMap<i64, Vec<i64>>, k: i64) -> Result<(ChainComplex<Q>, Vec<Vec<usize>>)> {
    let sel: Vec<Vec<usize>> = cx
        .degrees()
        .map(|q| levels[&q].iter().enumerate().filter(|(_, &l)| l == k).map(|(i, _)| i).collect())
        .collect();
    let diffs = (0..sel.len())
        .map(|q| if q == 0 { SparseMat::zero(0, sel[0].len()) } else { cx.differential(q as i64).submatrix(&sel[q - 1], &sel[q]) })
        .collect();
    let dims = sel.iter().map(Vec::len).collect();
    Ok((ChainComplex::chain(0, dims, diffs)?, sel))
}

fn s_rank_on_page_one(fc: &FilteredCyclic, k: i64, m: i64) -> Result<usize> {
    let per = &fc.total.periodicity;
    let (src, ssel) = slice(&fc.total.complex, &fc.levels, k)?;
    let (tgt, tsel) = slice(per.target(), &fc.levels, k)?;
    let comps = (0..ssel.len())
        .map(|n| if n < 2 { SparseMat::zero(0, ssel[n].len()) } else { per.component(n as i64).submatrix(&tsel[n - 2], &ssel[n]) })
        .collect();
    let f = ChainMap::new(Arc::new(src), Arc::new(tgt), -2, comps)?;
    Ok(f.induced_rank(m))
}

/// Compares the first page of the order-filtered cyclic complex of the `S¹`
/// symbol model with its closed form, for the full window and an order-zero
/// window, in Fourier weight 0 and total degrees `< top`. Only orders in
/// `floor + 2 ..= top_order − 1` are compared.
pub fn ec1_check(sheet: Sheet, full: &Window, order_zero: &Window, top: usize) -> Result<Ec1Report> {
    if order_zero.factor_orders.1 > 0 {
        return Err(Error::input("the order-zero window admits symbols of positive order"));
    }
    if top < 3 {
        return Err(Error::input("the EC¹ check needs total degrees up to at least 3"));
    }
    let forms = CosphereForms::circle_sheet()?;
    let mut report = Ec1Report::default();
    let band = |w: &Window| (w.floor() + 2, w.block_order_max.unwrap_or(w.factor_orders.1) - 1);

    let fc = filtered_cyclic(sheet, full, top)?;
    let e1 = barcode(&fc.filtered).page_dims(1);
    let (lo, hi) = band(full);
    for k in lo..=hi {
        for q in 0..top as i64 {
            let got = e1.get(&(k, q - k)).copied().unwrap_or(0);
            let want = forms.ec1_full(k, q - k);
            if got != want {
                return Err(Error::defect(format!("EC¹_({k},{}) = {got}, closed form {want}", q - k)));
            }
            report.cells.push(((k, q - k), got, want));
        }
        for m in 2..top as i64 {
            let got = s_rank_on_page_one(&fc, k, m)?;
            let want = forms.s_rank(k, m);
            if got != want {
                return Err(Error::defect(format!("S on EC¹ at order {k}, degree {m}: rank {got}, closed form {want}")));
            }
            report.s_ranks.push((k, m, got, want));
        }
    }

    let fz = filtered_cyclic(sheet, order_zero, top)?;
    let e1 = barcode(&fz.filtered).page_dims(1);
    let (lo, _) = band(order_zero);
    if let Some((&(k, h), _)) = e1.iter().find(|(&(k, _), &d)| k > 0 && d > 0) {
        return Err(Error::defect(format!("order-zero window has EC¹ at positive order ({k}, {h})")));
    }
    for k in lo..=1 {
        for q in 0..top as i64 {
            let Some(want) = forms.ec1_order_zero(k, q - k) else { continue };
            let got = e1.get(&(k, q - k)).copied().unwrap_or(0);
            if got != want {
                return Err(Error::defect(format!("order-zero EC¹_({k},{}) = {got}, closed form {want}", q - k)));
            }
            report.order_zero_cells.push(((k, q - k), got, want));
        }
    }
    Ok(report)
}
