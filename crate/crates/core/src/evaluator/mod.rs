//! Theorem evaluator: manifests, the cosphere model, the symbol model of
//! `S¹` and the checks tying the spectral, Hochschild and Poisson sides
//! together.

mod cosphere;
mod d1;
mod ec1;
mod manifest;
mod s1;
mod symbol;

pub use cosphere::{
    eval_hc, eval_hh_laurent, eval_hp, eval_quotient_and_traces, excision_check, hc_from_hh, CosphereModel, HcReport, HhReport,
    HpVariant, QuotientReport, Route,
};
pub use d1::{antisymmetrize, d1_check, d1_model, random_d1_samples, D1Report, D1Sample};
pub use ec1::{ec1_check, CosphereForms, Ec1Report};
pub use manifest::{parse_manifest, Assumptions, Budgets, CellDef, FaceCells, FaceEntry, Manifest, Parsed};
pub use s1::{e2_check, s1_end_to_end, sheet_run, E2Cell, S1Report, SheetRun, S1_WINDOWS};
pub use symbol::{binom_gen, build_symbol_model, Sheet, SymbolModel};
