use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::complexes::ChainComplex;
use crate::error::{Error, Result};
use crate::qlinalg::{Field, SparseMat, SparseVec, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    /// `(cell index, incidence)` pairs of the cellular boundary.
    pub boundary: Vec<(usize, i64)>,
}

/// Finite CW complex given by its cellular boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    cells: Vec<Cell>,
    index: HashMap<String, usize>,
}

/// Largest complex the cellular routines will build.
pub const CELL_BUDGET: usize = 200_000;

impl CellComplex {
    /// Checks ids, incidence dimensions and `∂² = 0`.
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        if cells.len() > CELL_BUDGET {
            return Err(Error::budget(format!("{} cells exceed the budget of {CELL_BUDGET}", cells.len())));
        }
        let mut index = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::input(format!("cell {} defined twice", c.id)));
            }
        }
        for c in &cells {
            for &(j, _) in &c.boundary {
                let t = cells.get(j).ok_or_else(|| Error::input(format!("cell {} has a dangling boundary entry", c.id)))?;
                if t.dim + 1 != c.dim {
                    return Err(Error::input(format!("boundary of {} meets {} of dimension {}", c.id, t.id, t.dim)));
                }
            }
        }
        let cx = CellComplex { cells, index };
        for c in &cx.cells {
            let mut dd: BTreeMap<usize, i64> = BTreeMap::new();
            for &(j, a) in &c.boundary {
                for &(k, b) in &cx.cells[j].boundary {
                    *dd.entry(k).or_default() += a * b;
                }
            }
            if dd.values().any(|&v| v != 0) {
                return Err(Error::input(format!("∂∂ ≠ 0 on cell {}", c.id)));
            }
        }
        Ok(cx)
    }

    /// Builds from `(id, dim, [(boundary id, incidence)])` triples.
    pub fn from_named(cells: &[(&str, usize, Vec<(&str, i64)>)]) -> Result<Self> {
        let pos: HashMap<&str, usize> = cells.iter().enumerate().map(|(i, c)| (c.0, i)).collect();
        let mut out = Vec::with_capacity(cells.len());
        for (id, dim, bd) in cells {
            let mut boundary = Vec::new();
            for (b, a) in bd {
                let j = *pos.get(b).ok_or_else(|| Error::input(format!("cell {id} refers to unknown cell {b}")))?;
                boundary.push((j, *a));
            }
            out.push(Cell { id: id.to_string(), dim: *dim, boundary });
        }
        CellComplex::new(out)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn all(&self) -> BTreeSet<usize> {
        (0..self.cells.len()).collect()
    }

    /// Smallest subcomplex containing `set`.
    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(i) = stack.pop() {
            for &(j, a) in &self.cells[i].boundary {
                if a != 0 && out.insert(j) {
                    stack.push(j);
                }
            }
        }
        out
    }

    pub fn is_subcomplex(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&i| self.cells[i].boundary.iter().all(|&(j, a)| a == 0 || set.contains(&j)))
    }

    /// Cellular cochain complex of the pair `(space, rel)`, degrees `0..=dim`.
    pub fn cochain_complex(&self, space: &BTreeSet<usize>, rel: &BTreeSet<usize>) -> Result<(ChainComplex<Q>, Vec<Vec<usize>>)> {
        if !self.is_subcomplex(space) {
            return Err(Error::input("cochains requested on a set that is not a subcomplex"));
        }
        if !rel.is_subset(space) || !self.is_subcomplex(rel) {
            return Err(Error::input("relative part is not a subcomplex"));
        }
        let top = self.dim();
        let mut basis: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for &i in space.difference(rel) {
            basis[self.cells[i].dim].push(i);
        }
        let pos: Vec<HashMap<usize, usize>> = basis.iter().map(|b| b.iter().enumerate().map(|(k, &i)| (i, k)).collect()).collect();
        let mut diffs = Vec::with_capacity(top + 1);
        for q in 0..=top {
            let rows = if q < top { basis[q + 1].len() } else { 0 };
            let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); basis[q].len()];
            if q < top {
                for (r, &tau) in basis[q + 1].iter().enumerate() {
                    for &(s, a) in &self.cells[tau].boundary {
                        if let Some(&c) = pos[q].get(&s) {
                            cols[c].push((r, Q::from_i64(a)));
                        }
                    }
                }
            }
            diffs.push(SparseMat::from_columns(rows, cols.into_iter().map(SparseVec::from_pairs).collect()));
        }
        let dims = basis.iter().map(Vec::len).collect();
        let cx = ChainComplex::cochain(0, dims, diffs).map_err(|e| Error::defect(format!("cellular coboundary: {e}")))?;
        Ok((cx, basis))
    }

    /// `dim H^q(space, rel)` for `q = 0..=dim`.
    pub fn cohomology(&self, space: &BTreeSet<usize>, rel: &BTreeSet<usize>) -> Result<Vec<usize>> {
        Ok(self.cochain_complex(space, rel)?.0.betti())
    }

    /// Product complex with cells `a×b` in `a`-major order and
    /// `∂(a×b) = ∂a×b + (−1)^{dim a} a×∂b`.
    pub fn product(&self, other: &CellComplex) -> Result<CellComplex> {
        let nb = other.len();
        let mut cells = Vec::with_capacity(self.len() * nb);
        for a in &self.cells {
            for b in &other.cells {
                let mut boundary = Vec::new();
                for &(ja, x) in &a.boundary {
                    boundary.push((ja * nb + other.index[&b.id], x));
                }
                let sign = if a.dim % 2 == 0 { 1 } else { -1 };
                for &(jb, y) in &b.boundary {
                    boundary.push((self.index[&a.id] * nb + jb, sign * y));
                }
                cells.push(Cell { id: format!("{}×{}", a.id, b.id), dim: a.dim + b.dim, boundary });
            }
        }
        CellComplex::new(cells)
    }

    /// Minimal structure on `S^m`: two points for `m = 0`, else a point and an `m`-cell.
    pub fn sphere(m: usize) -> CellComplex {
        let cells = if m == 0 {
            vec![Cell { id: "s+".into(), dim: 0, boundary: vec![] }, Cell { id: "s-".into(), dim: 0, boundary: vec![] }]
        } else {
            vec![Cell { id: "pt".into(), dim: 0, boundary: vec![] }, Cell { id: format!("s{m}"), dim: m, boundary: vec![] }]
        };
        CellComplex::new(cells).expect("sphere cells")
    }

    pub fn circle() -> CellComplex {
        CellComplex::sphere(1)
    }
}

/// Betti numbers of a product by Künneth.
pub fn kunneth(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Betti numbers of `S^m`.
pub fn sphere_betti(m: usize) -> Vec<usize> {
    if m == 0 {
        vec![2]
    } else {
        let mut v = vec![0; m + 1];
        v[0] = 1;
        v[m] = 1;
        v
    }
}

/// `(Σ even, Σ odd)` of a Betti vector.
pub fn parity_totals(betti: &[usize]) -> (usize, usize) {
    let even = betti.iter().step_by(2).sum();
    let odd = betti.iter().skip(1).step_by(2).sum();
    (even, odd)
}

/// Long exact sequence of the pair `(space, sub)` relative to `base`:
/// `0 → C(space, sub) → C(space, base) → C(sub, base) → 0`.
pub fn pair_sequence(
    cx: &CellComplex,
    space: &BTreeSet<usize>,
    sub: &BTreeSet<usize>,
    base: &BTreeSet<usize>,
) -> Result<crate::complexes::ExactSequenceReport<Q>> {
    use crate::complexes::{les_of_ses, ChainMap};
    use std::sync::Arc;
    let rel_sub: BTreeSet<usize> = sub.union(base).copied().collect();
    let base_sub: BTreeSet<usize> = sub.intersection(base).copied().collect();
    let (a, ab) = cx.cochain_complex(space, &rel_sub)?;
    let (b, bb) = cx.cochain_complex(space, base)?;
    let (c, cb) = cx.cochain_complex(sub, &base_sub)?;
    let map = |from: &[Vec<usize>], to: &[Vec<usize>]| -> Vec<SparseMat<Q>> {
        from.iter()
            .zip(to)
            .map(|(f, t)| {
                let pos: HashMap<usize, usize> = t.iter().enumerate().map(|(k, &i)| (i, k)).collect();
                let cols = f.iter().map(|i| pos.get(i).map_or_else(SparseVec::new, |&k| SparseVec::unit(k))).collect();
                SparseMat::from_columns(t.len(), cols)
            })
            .collect()
    };
    let (a, b, c) = (Arc::new(a), Arc::new(b), Arc::new(c));
    let incl = ChainMap::new(a, b.clone(), 0, map(&ab, &bb))?;
    let proj = ChainMap::new(b, c, 0, map(&bb, &cb))?;
    les_of_ses(&incl, &proj)
}
