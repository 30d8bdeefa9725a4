use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corners::{CellComplex, CornerManifold, FaceSpec, FaceSubset};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDef {
    pub id: String,
    pub dim: usize,
    /// `[cell id, incidence]` pairs.
    #[serde(default)]
    pub boundary: Vec<(String, i64)>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceCells {
    /// Cells of the face; on the codimension-0 face it defaults to every
    /// defined cell.
    #[serde(default)]
    pub list: Option<Vec<String>>,
    /// The cell complex of `M`, given once on the codimension-0 face.
    #[serde(default)]
    pub define: Option<Vec<CellDef>>,
    /// Cells at infinity.
    #[serde(default)]
    pub ends: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceEntry {
    pub id: String,
    pub codim: usize,
    #[serde(default)]
    pub betti: Option<Vec<usize>>,
    #[serde(default)]
    pub cells: Option<FaceCells>,
    #[serde(default = "yes")]
    pub orientable: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assumptions {
    #[serde(default)]
    pub rational_iso: bool,
    #[serde(default)]
    pub trivial_cosphere: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    #[serde(default = "default_order_window")]
    pub order_window: (i64, i64),
    #[serde(default = "default_pole_bound")]
    pub pole_bound: i64,
    #[serde(default = "default_q_max")]
    pub q_max: usize,
}

fn default_order_window() -> (i64, i64) {
    (-4, 2)
}

fn default_pole_bound() -> i64 {
    4
}

fn default_q_max() -> usize {
    3
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { order_window: default_order_window(), pole_bound: default_pole_bound(), q_max: default_q_max() }
    }
}

/// Manifest as written on disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    pub dim: usize,
    pub faces: Vec<FaceEntry>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
    #[serde(default, rename = "X")]
    pub x: Vec<String>,
    #[serde(default)]
    pub c: BTreeMap<String, i64>,
    #[serde(default)]
    pub assumptions: Assumptions,
    #[serde(default)]
    pub budgets: Budgets,
}

/// Validated manifest.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub manifold: CornerManifold,
    pub x: FaceSubset,
    pub c: BTreeMap<String, i64>,
    pub assumptions: Assumptions,
    pub budgets: Budgets,
}

pub fn parse_manifest(doc: &str) -> Result<Parsed> {
    let de = &mut serde_json::Deserializer::from_str(doc);
    let m: Manifest = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::input(format!("manifest schema violation at {path}: {}", e.into_inner()))
    })?;
    m.build()
}

impl Manifest {
    pub fn build(&self) -> Result<Parsed> {
        let mut complex = None;
        for (i, f) in self.faces.iter().enumerate() {
            if let Some(def) = f.cells.as_ref().and_then(|c| c.define.as_ref()) {
                if complex.is_some() {
                    return Err(Error::input(format!("faces[{i}].cells.define: the cell complex is defined twice")));
                }
                if f.codim != 0 {
                    return Err(Error::input(format!("faces[{i}].cells.define: cells must be defined on the codimension-0 face")));
                }
                let named: Vec<(&str, usize, Vec<(&str, i64)>)> =
                    def.iter().map(|c| (c.id.as_str(), c.dim, c.boundary.iter().map(|(b, a)| (b.as_str(), *a)).collect())).collect();
                complex = Some(
                    CellComplex::from_named(&named).map_err(|e| Error::input(format!("faces[{i}].cells.define: {e}")))?,
                );
            }
        }
        let mut specs = Vec::with_capacity(self.faces.len());
        for (i, f) in self.faces.iter().enumerate() {
            let cells = match &f.cells {
                None => None,
                Some(c) => match (&c.list, &c.define) {
                    (Some(l), _) => Some(l.clone()),
                    (None, Some(def)) => Some(def.iter().map(|d| d.id.clone()).collect()),
                    (None, None) => return Err(Error::input(format!("faces[{i}].cells: neither list nor define"))),
                },
            };
            specs.push(FaceSpec {
                id: f.id.clone(),
                codim: f.codim,
                betti: f.betti.clone(),
                cells,
                ends: f.cells.as_ref().map(|c| c.ends.clone()).unwrap_or_default(),
                orientable: f.orientable,
            });
        }
        let manifold = CornerManifold::new(&self.name, self.dim, complex, &specs, &self.covers)?;
        manifold.validate()?;
        let x = FaceSubset::new(&manifold, &self.x).map_err(|e| Error::input(format!("X: {e}")))?;
        let hyper: Vec<String> = manifold.hyperfaces().iter().map(|&h| manifold.face(h).id.clone()).collect();
        for (h, &v) in &self.c {
            if !hyper.contains(h) {
                return Err(Error::input(format!("c.{h}: not a hyperface")));
            }
            if v < 1 {
                return Err(Error::input(format!("c.{h}: exponent {v} is below 1")));
            }
        }
        if self.budgets.order_window.0 > self.budgets.order_window.1 {
            return Err(Error::input("budgets.order_window: empty window"));
        }
        Ok(Parsed { manifold, x, c: self.c.clone(), assumptions: self.assumptions, budgets: self.budgets.clone() })
    }
}
