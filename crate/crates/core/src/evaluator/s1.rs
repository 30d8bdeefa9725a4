use std::collections::BTreeMap;

use super::cosphere::{eval_hh_laurent, CosphereModel};
use super::manifest::Assumptions;
use super::symbol::{build_symbol_model, Sheet};
use crate::corners::{circle, FaceSubset};
use crate::error::{Error, Result};
use crate::hochschild::{hochschild_complex, Window};
use crate::poisson::{homogeneous_poisson_homology, Patch, Truncation};
use crate::spectral::converge;

/// Default windows `(fourier, top, floor)` for the end-to-end run.
pub const S1_WINDOWS: [(i64, i64, i64); 2] = [(1, 2, -4), (1, 3, -5)];

/// One spectral run on one sheet and window, Fourier weight 0, `q ≤ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheetRun {
    pub sheet: Sheet,
    pub window: (i64, i64, i64),
    pub einf: BTreeMap<(i64, i64), usize>,
    pub e2: BTreeMap<(i64, i64), usize>,
    /// Orders `floor + 2 ..= top − 1`, away from both truncation edges.
    pub band: (i64, i64),
    /// `Σ_{k in band} dim E^∞_{k,q−k}` for `q = 0, 1, 2`.
    pub interior: Vec<usize>,
    pub degeneration_page: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S1Report {
    pub runs: Vec<SheetRun>,
    /// Interior totals agree across windows on each sheet.
    pub stable: bool,
    /// Stabilized totals summed over both sheets.
    pub hh: Vec<usize>,
    /// `eval_hh_laurent(S¹)` for `q = 0, 1, 2`.
    pub predicted: Vec<usize>,
}

impl S1Report {
    pub fn agrees(&self) -> bool {
        self.stable && self.hh == self.predicted
    }
}

/// Runs the Hochschild filtration of the symbol model on one sheet. The
/// convergence certificate compares `E^∞` with the homology of the window.
pub fn sheet_run(sheet: Sheet, window: (i64, i64, i64)) -> Result<SheetRun> {
    let (f, top, floor) = window;
    if floor + 2 > top - 1 {
        return Err(Error::input(format!("window {window:?} has no interior orders")));
    }
    let win = Window::symbol(f, top, floor);
    let model = build_symbol_model(sheet, &win)?;
    let hc = hochschild_complex(&model, &win, 0, 2)?;
    let report = converge(&hc.filtered)?;
    let band = (floor + 2, top - 1);
    let interior = (0..=2i64)
        .map(|q| report.einf.iter().filter(|(&(k, h), _)| k + h == q && k >= band.0 && k <= band.1).map(|(_, &d)| d).sum())
        .collect();
    let e2 = report.barcode.page_dims(2);
    Ok(SheetRun { sheet, window, einf: report.einf, e2, band, interior, degeneration_page: report.degeneration_page })
}

/// `HH_q` of the complete symbols on `S¹` from the spectral engine,
/// stabilized over `windows` and summed over the two sheets, against the
/// cohomological prediction.
pub fn s1_end_to_end(windows: &[(i64, i64, i64)]) -> Result<S1Report> {
    if windows.is_empty() {
        return Err(Error::input("no windows given"));
    }
    let mut runs = Vec::new();
    let mut stable = true;
    let mut hh = vec![0; 3];
    for sheet in [Sheet::Plus, Sheet::Minus] {
        let first = runs.len();
        for &w in windows {
            runs.push(sheet_run(sheet, w)?);
        }
        let base = &runs[first].interior;
        stable &= runs[first..].iter().all(|r| &r.interior == base);
        for (t, v) in hh.iter_mut().zip(runs.last().unwrap().interior.iter()) {
            *t += v;
        }
    }
    let cm = CosphereModel::new(circle(), Assumptions { rational_iso: true, trivial_cosphere: true })?;
    let mut predicted = eval_hh_laurent(&cm, &FaceSubset::empty())?.dims;
    predicted.truncate(3);
    Ok(S1Report { runs, stable, hh, predicted })
}

/// `(k, h)`, spectral `E²`, and the Poisson homology of degree `k + h` and
/// homogeneity `k` on one sheet of `T*S¹ ∖ 0`.
pub type E2Cell = ((i64, i64), usize, usize);

/// Compares `E²` of a run with truncated Poisson homology in the interior
/// band, Fourier weight 0.
pub fn e2_check(run: &SheetRun) -> Result<Vec<E2Cell>> {
    let p = Patch::new(1, 0, vec![])?;
    let t = Truncation::new(&p, (0, 0), (0, 0), (run.band.0 - 4, run.band.1 + 4));
    let mut out = Vec::new();
    for k in run.band.0..=run.band.1 {
        for q in 0..=2i64 {
            let spectral = run.e2.get(&(k, q - k)).copied().unwrap_or(0);
            let poisson = homogeneous_poisson_homology(&p, q as usize, k, &t)?;
            if spectral != poisson {
                return Err(Error::defect(format!("E²_({k},{}) = {spectral}, Poisson homology {poisson}", q - k)));
            }
            out.push(((k, q - k), spectral, poisson));
        }
    }
    Ok(out)
}
