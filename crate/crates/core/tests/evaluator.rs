use cornerhom::evaluator::{antisymmetrize, d1_check, d1_model, random_d1_samples, D1Sample, Sheet, SymbolModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn d1_on_xi_and_a_character() {
    let s = D1Sample { factors: vec![(0, 1), (1, 0)] };
    let r = d1_check(&d1_model(), &[s]).unwrap();
    assert_eq!((r.samples, r.passed, r.degenerate), (1, 1, 0));
}

#[test]
fn d1_with_repeated_factors_is_degenerate() {
    let s = D1Sample { factors: vec![(1, 0), (2, 1), (2, 1)] };
    assert!(antisymmetrize(&d1_model(), &s).terms().is_empty());
    let r = d1_check(&d1_model(), &[s]).unwrap();
    assert_eq!((r.passed, r.degenerate), (1, 1));
}

#[test]
fn d1_on_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples = random_d1_samples(&mut rng, 120);
    let r = d1_check(&d1_model(), &samples).unwrap();
    assert_eq!(r.passed, 120);
    assert!(r.degenerate < 120);
}

#[test]
fn d1_needs_the_plus_sheet() {
    let s = D1Sample { factors: vec![(0, 1), (1, 0)] };
    assert_eq!(d1_check(&SymbolModel::new(Sheet::Minus, -12), &[s.clone()]).unwrap_err().exit_code(), 2);
    assert_eq!(d1_check(&SymbolModel::new(Sheet::Plus, 0), &[s]).unwrap_err().exit_code(), 2);
}

use cornerhom::corners::{circle, cube, open_interval, CornerManifold, FaceSubset};
use cornerhom::evaluator::{
    e2_check, ec1_check, eval_hc, eval_hh_laurent, eval_hp, eval_quotient_and_traces, excision_check, hc_from_hh, parse_manifest,
    s1_end_to_end, sheet_run, Assumptions, CosphereModel, HpVariant, Route, S1_WINDOWS,
};
use cornerhom::hochschild::Window;

const FLAGS: Assumptions = Assumptions { rational_iso: true, trivial_cosphere: true };

fn model(m: CornerManifold) -> CosphereModel {
    CosphereModel::new(m, FLAGS).unwrap()
}

fn subset(m: &CosphereModel, ids: &[&str]) -> FaceSubset {
    FaceSubset::new(&m.base, &ids.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap()
}

const INTERVAL: &str = r#"{
  "name": "interval", "dim": 1,
  "faces": [
    {"id": "M", "codim": 0, "cells": {"define": [
      {"id": "0", "dim": 0}, {"id": "1", "dim": 0},
      {"id": "e", "dim": 1, "boundary": [["1", 1], ["0", -1]]}]}},
    {"id": "0", "codim": 1, "cells": {"list": ["0"]}},
    {"id": "1", "codim": 1, "cells": {"list": ["1"]}}
  ],
  "covers": [["0", "M"], ["1", "M"]],
  "X": ["0", "1"],
  "c": {"0": 1, "1": 2},
  "assumptions": {"rational_iso": true}
}"#;

#[test]
fn interval_manifest_parses() {
    let p = parse_manifest(INTERVAL).unwrap();
    assert_eq!(p.manifold.faces().len(), 3);
    assert_eq!(p.x.faces.len(), 2);
    assert!(p.assumptions.rational_iso && !p.assumptions.trivial_cosphere);
    assert_eq!(p.budgets.q_max, 3);
}

#[test]
fn manifest_errors_carry_a_path() {
    let bad = INTERVAL.replace(r#""codim": 1, "cells": {"list": ["1"]}"#, r#""codim": "one", "cells": {"list": ["1"]}"#);
    let err = parse_manifest(&bad).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("faces[2].codim"), "{err}");
    let err = parse_manifest(&INTERVAL.replace(r#""1": 2}"#, r#""M": 2}"#)).unwrap_err();
    assert!(err.to_string().contains("c.M"), "{err}");
    let err = parse_manifest(&INTERVAL.replace(r#""1": 2}"#, r#""1": 0}"#)).unwrap_err();
    assert!(err.to_string().contains("below 1"), "{err}");
}

fn square_manifest(x: &str) -> String {
    let mut faces = vec![r#"{"id": "M", "codim": 0, "betti": [1]}"#.to_string()];
    for e in ["a", "b", "c", "d"] {
        faces.push(format!(r#"{{"id": "{e}", "codim": 1, "betti": [1]}}"#));
    }
    let mut covers = vec![];
    for v in ["ab", "bc", "cd", "da"] {
        faces.push(format!(r#"{{"id": "{v}", "codim": 2, "betti": [1]}}"#));
        covers.push(format!(r#"["{v}", "{}"]"#, &v[..1]));
        covers.push(format!(r#"["{v}", "{}"]"#, &v[1..]));
    }
    for e in ["a", "b", "c", "d"] {
        covers.push(format!(r#"["{e}", "M"]"#));
    }
    format!(r#"{{"name": "square", "dim": 2, "faces": [{}], "covers": [{}], "X": {x}}}"#, faces.join(","), covers.join(","))
}

#[test]
fn square_manifest_with_closed_and_open_x() {
    assert!(parse_manifest(&square_manifest(r#"["ab"]"#)).is_ok());
    let err = parse_manifest(&square_manifest(r#"["a"]"#)).unwrap_err();
    assert!(err.to_string().contains("not closed"), "{err}");
}

#[test]
fn hp_parity_tables() {
    let s1 = model(circle());
    let e = FaceSubset::empty();
    assert_eq!(eval_hp(&s1, HpVariant::Full, &e).unwrap(), (4, 4));
    assert_eq!(eval_hp(&s1, HpVariant::OrderZero, &e).unwrap(), (2, 2));
    assert_eq!(eval_hp(&s1, HpVariant::Laurent, &e).unwrap(), (4, 4));
    let i = model(cube(1));
    assert_eq!(eval_hp(&i, HpVariant::Full, &e).unwrap(), (2, 2));
    // 𝓛 of each cosphere component is a wedge of two circles
    assert_eq!(eval_hp(&i, HpVariant::Laurent, &e).unwrap(), (6, 6));
}

#[test]
fn hochschild_of_the_circle_and_the_interval() {
    let s1 = model(circle());
    assert_eq!(eval_hh_laurent(&s1, &FaceSubset::empty()).unwrap().dims, vec![2, 4, 2]);
    let i = model(cube(1));
    let hh = eval_hh_laurent(&i, &FaceSubset::empty()).unwrap();
    assert_eq!((hh.dims, hh.route), (vec![4, 6, 2], Route::Cellular));
    // open cylinders: H_c = (0, 2, 2) read from the top degree down
    assert_eq!(eval_hh_laurent(&i, &subset(&i, &["0", "1"])).unwrap().dims, vec![2, 2, 0]);
}

#[test]
fn hochschild_needs_the_rational_isomorphism_flag() {
    let cm = CosphereModel::new(circle(), Assumptions::default()).unwrap();
    assert_eq!(eval_hh_laurent(&cm, &FaceSubset::empty()).unwrap_err().exit_code(), 2);
    assert_eq!(CosphereModel::new(cube(2), Assumptions { rational_iso: true, trivial_cosphere: false }).unwrap_err().exit_code(), 2);
}

#[test]
fn betti_only_square_uses_the_formula_route() {
    let p = parse_manifest(&square_manifest("[]")).unwrap();
    let cm = CosphereModel::new(p.manifold, FLAGS).unwrap();
    let hh = eval_hh_laurent(&cm, &FaceSubset::empty()).unwrap();
    let cellular = eval_hh_laurent(&model(cube(2)), &FaceSubset::empty()).unwrap();
    assert_eq!(hh.route, Route::Formula);
    assert_eq!(hh.dims, cellular.dims);
}

#[test]
fn cyclic_homology_of_the_circle() {
    let s1 = model(circle());
    let hc = eval_hc(&s1, &FaceSubset::empty(), 6).unwrap();
    assert_eq!(&hc.dims[..5], &[2, 4, 4, 4, 4]);
    assert_eq!(hc.dims[3], hc.dims[5]);
    assert_eq!(hc.checked, vec![2, 3, 4, 5, 6]);
    assert_eq!(hc_from_hh(&[2, 4, 2], -1), 0);
}

#[test]
fn cyclic_homology_agrees_with_the_direct_sum_on_builtins() {
    for m in [circle(), cube(1), cube(2), cube(3), open_interval()] {
        let name = m.name.clone();
        let cm = model(m);
        let hc = eval_hc(&cm, &FaceSubset::empty(), 2 * cm.n() + 3).unwrap();
        assert!(!hc.checked.is_empty(), "{name}");
    }
}

#[test]
fn excision_on_the_interval() {
    let i = model(cube(1));
    let (a, b) = excision_check(&i, &subset(&i, &["0", "1"]), &model(open_interval())).unwrap();
    assert_eq!(a, b);
}

#[test]
fn trace_counts() {
    let r = eval_quotient_and_traces(&model(circle()), &FaceSubset::empty()).unwrap();
    assert_eq!((r.trace_count, r.h_top, r.asserted), (1, 2, false));
    let r = eval_quotient_and_traces(&model(cube(1)), &FaceSubset::empty()).unwrap();
    assert_eq!((r.trace_count, r.h_top, r.asserted), (2, 4, false));
    for (n, t) in [(2, 4), (3, 8)] {
        let r = eval_quotient_and_traces(&model(cube(n)), &FaceSubset::empty()).unwrap();
        assert_eq!((r.trace_count, r.h_top, r.asserted), (t, t, true));
    }
}

#[test]
fn quotient_by_the_endpoints() {
    let i = model(cube(1));
    let r = eval_quotient_and_traces(&i, &subset(&i, &["0", "1"])).unwrap();
    assert!(r.les_exact);
    // p⁻¹ of the endpoints: four tori
    assert_eq!(r.quotient_hh, vec![4, 8, 4]);
    // the LES of the pair in Euler characteristics
    let full = eval_hh_laurent(&i, &FaceSubset::empty()).unwrap().dims;
    let rel = eval_hh_laurent(&i, &subset(&i, &["0", "1"])).unwrap().dims;
    let chi = |v: &[usize]| v.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
    assert_eq!(chi(&full), chi(&rel) + chi(&r.quotient_hh));
}

#[test]
fn ec1_closed_forms_on_both_sheets() {
    for sheet in [Sheet::Plus, Sheet::Minus] {
        let r = ec1_check(sheet, &Window::symbol(1, 2, -4), &Window::symbol(1, 0, -5), 4).unwrap();
        assert!(r.cells.len() >= 16 && r.s_ranks.len() >= 8 && r.order_zero_cells.len() >= 10);
        // S vanishes off order 0 and keeps one class at order 0
        assert!(r.s_ranks.iter().all(|&(k, _, got, _)| (k == 0) == (got > 0)));
    }
}

#[test]
fn ec1_refuses_order_zero_window_with_positive_orders() {
    let w = Window::symbol(1, 2, -4);
    assert_eq!(ec1_check(Sheet::Plus, &w, &w, 4).unwrap_err().exit_code(), 2);
}

#[test]
fn e2_matches_poisson_homology() {
    for sheet in [Sheet::Plus, Sheet::Minus] {
        let run = sheet_run(sheet, S1_WINDOWS[0]).unwrap();
        let cells = e2_check(&run).unwrap();
        assert_eq!(cells.iter().map(|c| c.1).sum::<usize>(), 4);
        assert_eq!(run.degeneration_page, 2);
    }
}

#[test]
fn circle_end_to_end() {
    let r = s1_end_to_end(&S1_WINDOWS).unwrap();
    assert!(r.stable);
    assert_eq!(r.hh, vec![2, 4, 2]);
    assert_eq!(r.predicted, vec![2, 4, 2]);
    assert!(r.agrees());
}
