use std::collections::{BTreeMap, BTreeSet};

use super::cells::{Cell, CellComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    pub codim: usize,
    pub betti: Option<Vec<usize>>,
    /// Cells of the closed face in the manifold's complex.
    pub cells: Option<BTreeSet<usize>>,
    pub orientable: bool,
}

/// Face as written in a manifest, before ids are resolved.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceSpec {
    pub id: String,
    pub codim: usize,
    pub betti: Option<Vec<usize>>,
    pub cells: Option<Vec<String>>,
    /// Cells at infinity: the face is the complement of these in its closure.
    pub ends: Vec<String>,
    pub orientable: bool,
}

/// Manifold with corners described by its face lattice, with Betti numbers
/// or a cell structure in which every face is a subcomplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerManifold {
    pub name: String,
    pub dim: usize,
    faces: Vec<Face>,
    /// `(child, parent)` with `codim(child) = codim(parent) + 1`.
    covers: Vec<(usize, usize)>,
    complex: Option<CellComplex>,
    ends: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub faces: usize,
    pub hyperfaces: usize,
    pub minimal_faces: usize,
    pub has_cells: bool,
}

impl CornerManifold {
    pub fn new(name: &str, dim: usize, complex: Option<CellComplex>, specs: &[FaceSpec], covers: &[(String, String)]) -> Result<Self> {
        let mut faces = Vec::with_capacity(specs.len());
        let mut ids: BTreeMap<&str, usize> = BTreeMap::new();
        let mut ends = BTreeSet::new();
        for (i, s) in specs.iter().enumerate() {
            if ids.insert(&s.id, i).is_some() {
                return Err(Error::input(format!("face {} listed twice", s.id)));
            }
            let resolve = |names: &[String]| -> Result<BTreeSet<usize>> {
                let cx = complex.as_ref().ok_or_else(|| Error::input(format!("face {} lists cells but no cells are defined", s.id)))?;
                names.iter().map(|n| cx.position(n).ok_or_else(|| Error::input(format!("face {}: unknown cell {n}", s.id)))).collect()
            };
            let cells = match &s.cells {
                Some(names) => Some(resolve(names)?),
                None => None,
            };
            ends.extend(resolve(&s.ends).or_else(|e| if s.ends.is_empty() { Ok(BTreeSet::new()) } else { Err(e) })?);
            faces.push(Face { id: s.id.clone(), codim: s.codim, betti: s.betti.clone(), cells, orientable: s.orientable });
        }
        let mut cov = Vec::with_capacity(covers.len());
        for (c, p) in covers {
            let ci = *ids.get(c.as_str()).ok_or_else(|| Error::input(format!("cover relation names unknown face {c}")))?;
            let pi = *ids.get(p.as_str()).ok_or_else(|| Error::input(format!("cover relation names unknown face {p}")))?;
            if cov.contains(&(ci, pi)) {
                return Err(Error::input(format!("cover relation {c} ⊂ {p} listed twice")));
            }
            cov.push((ci, pi));
        }
        Ok(CornerManifold { name: name.to_string(), dim, faces, covers: cov, complex, ends })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn face_index(&self, id: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.id == id)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn complex(&self) -> Result<&CellComplex> {
        self.complex.as_ref().ok_or_else(|| Error::input(format!("{} has no cell structure", self.name)))
    }

    pub fn has_cells(&self) -> bool {
        self.complex.is_some()
    }

    /// Cells at infinity.
    pub fn ends(&self) -> &BTreeSet<usize> {
        &self.ends
    }

    pub fn top_face(&self) -> Option<usize> {
        self.faces.iter().position(|f| f.codim == 0)
    }

    fn parents(&self, f: usize) -> Vec<usize> {
        self.covers.iter().filter(|c| c.0 == f).map(|c| c.1).collect()
    }

    fn children(&self, f: usize) -> Vec<usize> {
        self.covers.iter().filter(|c| c.1 == f).map(|c| c.0).collect()
    }

    /// Faces containing `f`, itself included.
    pub fn above(&self, f: usize) -> BTreeSet<usize> {
        self.walk(f, |m, g| m.parents(g))
    }

    /// Faces contained in `f`, itself included.
    pub fn below(&self, f: usize) -> BTreeSet<usize> {
        self.walk(f, |m, g| m.children(g))
    }

    fn walk(&self, f: usize, next: impl Fn(&Self, usize) -> Vec<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([f]);
        let mut stack = vec![f];
        while let Some(g) = stack.pop() {
            for h in next(self, g) {
                if out.insert(h) {
                    stack.push(h);
                }
            }
        }
        out
    }

    /// Hyperfaces containing `f`.
    pub fn hyperfaces_above(&self, f: usize) -> BTreeSet<usize> {
        self.above(f).into_iter().filter(|&g| self.faces[g].codim == 1).collect()
    }

    pub fn hyperfaces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].codim == 1).collect()
    }

    /// Faces with no face strictly below them.
    pub fn minimal_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.children(f).is_empty()).collect()
    }

    /// Smallest face containing the cell `c`.
    pub fn smallest_face(&self, c: usize) -> Result<usize> {
        let cell_id = self.complex()?.cell(c).id.clone();
        let holders: Vec<usize> =
            (0..self.faces.len()).filter(|&f| self.faces[f].cells.as_ref().is_some_and(|s| s.contains(&c))).collect();
        let best = holders
            .iter()
            .copied()
            .max_by_key(|&f| self.faces[f].codim)
            .ok_or_else(|| Error::input(format!("cell {cell_id} lies in no face")))?;
        let up = self.above(best);
        if let Some(&f) = holders.iter().find(|f| !up.contains(f)) {
            return Err(Error::input(format!(
                "cell {cell_id} lies in faces {} and {} but not in a common smaller face",
                self.faces[best].id,
                self.faces[f].id
            )));
        }
        Ok(best)
    }

    /// Checks the face lattice, the local cube condition (which also forces
    /// hyperfaces to be embedded) and the cell data.
    pub fn validate(&self) -> Result<ValidationReport> {
        let tops: Vec<&Face> = self.faces.iter().filter(|f| f.codim == 0).collect();
        if tops.len() != 1 {
            return Err(Error::input(format!("{}: expected exactly one codimension-0 face, found {}", self.name, tops.len())));
        }
        for f in &self.faces {
            if f.codim > self.dim {
                return Err(Error::input(format!("face {}: codimension {} exceeds dimension {}", f.id, f.codim, self.dim)));
            }
        }
        for &(c, p) in &self.covers {
            if self.faces[c].codim != self.faces[p].codim + 1 {
                return Err(Error::input(format!(
                    "cover relation {} ⊂ {} does not raise the codimension by one",
                    self.faces[c].id, self.faces[p].id
                )));
            }
        }
        for (i, f) in self.faces.iter().enumerate() {
            let hyp = self.hyperfaces_above(i);
            if hyp.len() != f.codim {
                return Err(Error::input(format!(
                    "face {}: codimension {} but {} hyperfaces above it (missing cover relation or non-embedded hyperface)",
                    f.id,
                    f.codim,
                    hyp.len()
                )));
            }
            let parents = self.parents(i);
            if f.codim > 0 && parents.len() != f.codim {
                return Err(Error::input(format!("face {}: {} faces cover it, expected {}", f.id, parents.len(), f.codim)));
            }
            let mut seen = BTreeSet::new();
            for p in parents {
                if !seen.insert(self.hyperfaces_above(p)) {
                    return Err(Error::input(format!("face {}: two covering faces lie in the same hyperfaces", f.id)));
                }
            }
            if let Some(b) = &f.betti {
                if b.len() > self.dim - f.codim + 1 {
                    return Err(Error::input(format!("face {}: Betti vector longer than its dimension allows", f.id)));
                }
            }
            if f.betti.is_none() && f.cells.is_none() {
                return Err(Error::input(format!("face {}: neither Betti numbers nor cells", f.id)));
            }
        }
        if let Some(cx) = &self.complex {
            self.validate_cells(cx)?;
        }
        Ok(ValidationReport {
            faces: self.faces.len(),
            hyperfaces: self.hyperfaces().len(),
            minimal_faces: self.minimal_faces().len(),
            has_cells: self.complex.is_some(),
        })
    }

    fn validate_cells(&self, cx: &CellComplex) -> Result<()> {
        for f in &self.faces {
            let cells = f.cells.as_ref().ok_or_else(|| Error::input(format!("face {}: cells missing while others have them", f.id)))?;
            if !cx.is_subcomplex(cells) {
                return Err(Error::input(format!("face {}: cells are not closed under the boundary", f.id)));
            }
            let top = cells.iter().map(|&c| cx.cell(c).dim).max();
            if top != Some(self.dim - f.codim) {
                return Err(Error::input(format!("face {}: cells do not have dimension {}", f.id, self.dim - f.codim)));
            }
        }
        for &(c, p) in &self.covers {
            if !self.faces[c].cells.as_ref().unwrap().is_subset(self.faces[p].cells.as_ref().unwrap()) {
                return Err(Error::input(format!("face {} is not contained in {}", self.faces[c].id, self.faces[p].id)));
            }
        }
        let top = &self.faces[self.top_face().unwrap()];
        if top.cells.as_ref().unwrap().len() != cx.len() {
            return Err(Error::input(format!("face {} does not contain every cell", top.id)));
        }
        if !cx.is_subcomplex(&self.ends) {
            return Err(Error::input("cells at infinity do not form a subcomplex"));
        }
        for c in 0..cx.len() {
            self.smallest_face(c)?;
        }
        Ok(())
    }

    /// Cohomology of a face, compactly supported when it has cells at
    /// infinity, padded to its dimension.
    pub fn face_betti(&self, f: usize) -> Result<Vec<usize>> {
        let face = &self.faces[f];
        let n = self.dim - face.codim;
        let mut b = match (&face.cells, &face.betti) {
            (Some(cells), _) => {
                let cx = self.complex()?;
                let rel: BTreeSet<usize> = cells.intersection(&self.ends).copied().collect();
                let mut b = cx.cohomology(cells, &rel)?;
                if let Some(given) = &face.betti {
                    let mut g = given.clone();
                    g.resize(b.len().max(g.len()), 0);
                    b.resize(g.len(), 0);
                    if &g != &b {
                        return Err(Error::input(format!("face {}: Betti numbers {given:?} disagree with its cells {b:?}", face.id)));
                    }
                }
                b
            }
            (None, Some(b)) => b.clone(),
            (None, None) => return Err(Error::input(format!("face {}: no Betti data", face.id))),
        };
        b.resize(n + 1, 0);
        b.truncate(n + 1);
        Ok(b)
    }

    /// `H^k_𝓛(M) = ⊕_{j ≤ k} ⊕_{F of codim j} H^{k−j}(F)`, degrees `0..=dim`.
    pub fn laurent_cohomology_formula(&self) -> Result<Vec<usize>> {
        let mut out = vec![0; self.dim + 1];
        for (i, f) in self.faces.iter().enumerate() {
            for (d, b) in self.face_betti(i)?.iter().enumerate() {
                out[d + f.codim] += b;
            }
        }
        Ok(out)
    }

    /// Union of the cells of the given faces.
    pub fn cells_of(&self, faces: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for &f in faces {
            let cells = self.faces[f].cells.as_ref().ok_or_else(|| Error::input(format!("face {} has no cells", self.faces[f].id)))?;
            out.extend(cells.iter().copied());
        }
        Ok(out)
    }
}

/// Closed union of faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSubset {
    pub faces: BTreeSet<usize>,
}

impl FaceSubset {
    pub fn empty() -> Self {
        FaceSubset { faces: BTreeSet::new() }
    }

    /// Rejects sets that miss a face below one of their members.
    pub fn new(m: &CornerManifold, ids: &[String]) -> Result<Self> {
        let mut faces = BTreeSet::new();
        for id in ids {
            faces.insert(m.face_index(id).ok_or_else(|| Error::input(format!("X names unknown face {id}")))?);
        }
        for &f in &faces {
            if let Some(g) = m.below(f).into_iter().find(|g| !faces.contains(g)) {
                return Err(Error::input(format!("X is not closed: it contains {} but not {}", m.face(f).id, m.face(g).id)));
            }
        }
        Ok(FaceSubset { faces })
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// `[0,1]^n` with its product cell structure; every cell is a face.
/// Cells are words over `{0, 1, *}`; `*` marks a free coordinate.
pub fn cube(n: usize) -> CornerManifold {
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..n {
        words = words.into_iter().flat_map(|w| [b'0', b'1', b'*'].map(|c| [w.clone(), vec![c]].concat())).collect();
    }
    words.sort_by_key(|w| (w.iter().filter(|&&c| c == b'*').count(), w.clone()));
    let name = |w: &[u8]| if w.is_empty() { "pt".to_string() } else { String::from_utf8(w.to_vec()).unwrap() };
    let pos: BTreeMap<Vec<u8>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let mut cells = Vec::new();
    for w in &words {
        let mut boundary = Vec::new();
        let mut stars = 0;
        for i in 0..n {
            if w[i] == b'*' {
                let sign = if stars % 2 == 0 { 1 } else { -1 };
                for (c, s) in [(b'1', sign), (b'0', -sign)] {
                    let mut v = w.clone();
                    v[i] = c;
                    boundary.push((pos[&v], s));
                }
                stars += 1;
            }
        }
        cells.push(Cell { id: name(w), dim: stars, boundary });
    }
    let cx = CellComplex::new(cells).expect("cube cells");
    let closure = |w: &[u8]| -> Vec<String> {
        let mut out = vec![vec![]];
        for &c in w {
            let opts: Vec<u8> = if c == b'*' { vec![b'0', b'1', b'*'] } else { vec![c] };
            out = out.into_iter().flat_map(|p: Vec<u8>| opts.iter().map(move |&o| [p.clone(), vec![o]].concat())).collect();
        }
        out.iter().map(|v| name(v)).collect()
    };
    let specs: Vec<FaceSpec> = words
        .iter()
        .map(|w| FaceSpec {
            id: name(w),
            codim: n - w.iter().filter(|&&c| c == b'*').count(),
            betti: None,
            cells: Some(closure(w)),
            ends: vec![],
            orientable: true,
        })
        .collect();
    let mut covers = Vec::new();
    for w in &words {
        for i in 0..n {
            if w[i] != b'*' {
                let mut v = w.clone();
                v[i] = b'*';
                covers.push((name(w), name(&v)));
            }
        }
    }
    let label = match n {
        0 => "point".to_string(),
        1 => "interval".to_string(),
        2 => "square".to_string(),
        3 => "cube".to_string(),
        _ => format!("cube{n}"),
    };
    CornerManifold::new(&label, n, Some(cx), &specs, &covers).expect("cube manifold")
}

/// The circle with one vertex and one edge.
pub fn circle() -> CornerManifold {
    let cx = CellComplex::from_named(&[("v", 0, vec![]), ("e", 1, vec![("v", 1), ("v", -1)])]).expect("circle cells");
    let spec = FaceSpec { id: "M".into(), codim: 0, cells: Some(vec!["v".into(), "e".into()]), orientable: true, ..Default::default() };
    CornerManifold::new("circle", 1, Some(cx), &[spec], &[]).expect("circle manifold")
}

/// The open interval: `[0,1]` with both endpoints at infinity.
pub fn open_interval() -> CornerManifold {
    let cx = CellComplex::from_named(&[("a", 0, vec![]), ("b", 0, vec![]), ("e", 1, vec![("b", 1), ("a", -1)])]).expect("interval cells");
    let spec = FaceSpec {
        id: "M".into(),
        codim: 0,
        cells: Some(vec!["a".into(), "b".into(), "e".into()]),
        ends: vec!["a".into(), "b".into()],
        orientable: true,
        ..Default::default()
    };
    CornerManifold::new("open-interval", 1, Some(cx), &[spec], &[]).expect("open interval manifold")
}
