use std::collections::BTreeMap;

use super::barcode::{barcode, Barcode};
use super::filtered::FilteredComplex;
use crate::error::{Error, Result};
use crate::qlinalg::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    /// `dim E^∞_{k,h}` for nonzero cells.
    pub einf: BTreeMap<(i64, i64), usize>,
    /// `dim H_q` of the underlying complex, computed by ranks.
    pub homology: BTreeMap<i64, usize>,
    /// `Σ_k dim E^∞_{k,q-k}` per degree.
    pub einf_totals: BTreeMap<i64, usize>,
    pub degeneration_page: i64,
    pub barcode: Barcode,
}

impl ConvergenceReport {
    pub fn total(&self, q: i64) -> usize {
        self.einf_totals.get(&q).copied().unwrap_or(0)
    }
}

/// Computes `E^∞` and checks it against `H_*` of the underlying complex.
pub fn converge<F: Field>(f: &FilteredComplex<F>) -> Result<ConvergenceReport> {
    let bc = barcode(f);
    let einf = bc.infinity_dims();
    let cx = f.complex();
    let homology: BTreeMap<i64, usize> = cx.degrees().map(|q| (q, cx.homology_dim(q))).collect();
    let mut einf_totals: BTreeMap<i64, usize> = cx.degrees().map(|q| (q, 0)).collect();
    for (&(k, h), &d) in &einf {
        *einf_totals.entry(k + h).or_insert(0) += d;
    }
    for (&q, &h) in &homology {
        if einf_totals[&q] != h {
            return Err(Error::defect(format!("E^∞ total {} differs from H_{q} = {h}", einf_totals[&q])));
        }
    }
    Ok(ConvergenceReport { einf, homology, einf_totals, degeneration_page: bc.degeneration_page(), barcode: bc })
}
