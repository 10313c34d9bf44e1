//! The quotients `Q^n` of the cubes `□^n`, their cosimplicial structure, and
//! the descent test for maps out of them.
//!
//! An `m`-cell of `Q^n` is stored as its canonical representative: the box
//! map `[1]^m → [1]^n` in which every coordinate after the first constant `1`
//! is itself `1`.

use std::fmt;
use std::sync::Arc;

use crate::boxcat::{BoxMap, Coord, SimplexMap, Support};
use crate::error::{Error, Result};
use crate::presheaf::{Presheaf, PresheafMap};
use crate::site::{Flavor, Generator, Op};

/// A cell of `Q^n`, held by its canonical representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QCell(BoxMap);

impl QCell {
    pub fn rep(&self) -> &BoxMap {
        &self.0
    }

    pub fn into_rep(self) -> BoxMap {
        self.0
    }

    /// The `n` of `Q^n`.
    pub fn ambient(&self) -> usize {
        self.0.cod()
    }

    pub fn dim(&self) -> usize {
        self.0.dom()
    }
}

impl fmt::Display for QCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for QCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q^{} cell {}", self.ambient(), self.0)
    }
}

/// Sets every coordinate after the first constant `1` to `1`.
pub fn canonicalize(f: &BoxMap) -> QCell {
    match f.coords().iter().position(|c| *c == Coord::Const1) {
        None => QCell(f.clone()),
        Some(j) => {
            let mut coords = f.coords().to_vec();
            coords[j..].fill(Coord::Const1);
            QCell(BoxMap::new(f.dom(), coords).expect("constants never break interleaving"))
        }
    }
}

pub fn is_canonical(f: &BoxMap) -> bool {
    match f.coords().iter().position(|c| *c == Coord::Const1) {
        None => true,
        Some(j) => f.coords()[j..].iter().all(|c| *c == Coord::Const1),
    }
}

/// The canonical representatives of `Q^n_m`, in enumeration order.
pub fn q_cells(m: usize, n: usize) -> Vec<BoxMap> {
    BoxMap::enumerate(m, n).into_iter().filter(is_canonical).collect()
}

/// `Q^n`, truncated at `truncation`.
pub fn q_object(n: usize, truncation: usize) -> Presheaf {
    let cells = (0..=truncation).map(|m| q_cells(m, n)).collect();
    Presheaf::from_fn(Flavor::Cubical, truncation, cells, |_, f: &BoxMap| f.to_string(), |g, f| {
        canonicalize(&f.compose_unchecked(&g.box_map())).into_rep()
    })
    .expect("canonical forms are closed under the actions")
}

/// The cell of `x` named by a box map, in either `□^n` or `Q^n`.
fn cell_of(x: &Presheaf, f: &BoxMap) -> usize {
    x.index_of(f.dom(), &f.to_string()).unwrap_or_else(|| panic!("no cell {f} in {x:?}"))
}

/// The quotient map `π_n : □^n → Q^n`.
pub fn pi(n: usize, truncation: usize) -> PresheafMap {
    let cube = Arc::new(Presheaf::representable(Flavor::Cubical, n, truncation));
    let q = Arc::new(q_object(n, truncation));
    let comps = (0..=truncation)
        .map(|m| BoxMap::enumerate(m, n).iter().map(|f| cell_of(&q, canonicalize(f).rep())).collect())
        .collect();
    PresheafMap::new(cube, q, comps).expect("canonicalization is natural")
}

/// Post-composition with `u : [1]^m → [1]^n` as a map `□^m → □^n`.
pub fn cube_map(u: &BoxMap, truncation: usize) -> PresheafMap {
    let a = Arc::new(Presheaf::representable(Flavor::Cubical, u.dom(), truncation));
    let b = Arc::new(Presheaf::representable(Flavor::Cubical, u.cod(), truncation));
    let comps = (0..=truncation)
        .map(|p| BoxMap::enumerate(p, u.dom()).iter().map(|f| cell_of(&b, &u.compose_unchecked(f))).collect())
        .collect();
    PresheafMap::new(a, b, comps).expect("post-composition is natural")
}

/// The map `Q^m → Q^n` induced by `u : [1]^m → [1]^n`, if `u` descends.
pub fn q_map(u: &BoxMap, truncation: usize) -> Result<PresheafMap> {
    let a = Arc::new(q_object(u.dom(), truncation));
    let b = Arc::new(q_object(u.cod(), truncation));
    let comps = (0..=truncation)
        .map(|p| q_cells(p, u.dom()).iter().map(|f| cell_of(&b, canonicalize(&u.compose_unchecked(f)).rep())).collect())
        .collect();
    PresheafMap::new(a, b, comps)
        .map_err(|e| Error::Precondition(format!("{u} does not descend to Q^{} → Q^{}: {e}", u.dom(), u.cod())))
}

/// The box maps inducing the cofaces and codegeneracies of `Q^•` in dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosimplicialTable {
    pub n: usize,
    /// `faces[j] : [1]^{n-1} → [1]^n` induces `d^j : Q^{n-1} → Q^n`.
    pub faces: Vec<BoxMap>,
    /// `degeneracies[j] : [1]^n → [1]^{n-1}` induces `s^j : Q^n → Q^{n-1}`.
    pub degeneracies: Vec<BoxMap>,
}

impl CosimplicialTable {
    pub fn new(n: usize) -> CosimplicialTable {
        let faces = if n == 0 { Vec::new() } else { (0..=n).map(|j| coface_inducer(n, j)).collect() };
        let degeneracies = if n == 0 { Vec::new() } else { (0..n).map(|j| codegeneracy_inducer(n, j)).collect() };
        CosimplicialTable { n, faces, degeneracies }
    }
}

/// `d^j` into `Q^n` is induced by `∂_{n,1}` for `j = 0` and `∂_{n-j+1,0}` otherwise.
pub fn coface_inducer(n: usize, j: usize) -> BoxMap {
    assert!(n >= 1 && j <= n, "coface d^{j} into Q^{n}");
    if j == 0 {
        BoxMap::face(n, n, 1)
    } else {
        BoxMap::face(n, n - j + 1, 0)
    }
    .expect("index in range")
}

/// `s^j` out of `Q^n` is induced by `σ_n` for `j = 0` and `γ_{n-j}` otherwise.
pub fn codegeneracy_inducer(n: usize, j: usize) -> BoxMap {
    assert!(j < n, "codegeneracy s^{j} out of Q^{n}");
    if j == 0 {
        BoxMap::degeneracy(n, n)
    } else {
        BoxMap::connection(n, n - j)
    }
    .expect("index in range")
}

/// A box map inducing `Q^α : Q^m → Q^n`, obtained by factoring `α` into
/// cofaces and codegeneracies. Only its class in `Q^n_m` is meaningful.
pub fn table_map(a: &SimplexMap) -> BoxMap {
    a.word().iter().fold(BoxMap::identity(a.dom()), |acc, g| {
        let u = match g.op {
            Op::Face => coface_inducer(g.dim, g.index),
            _ => codegeneracy_inducer(g.dim, g.index),
        };
        u.compose_unchecked(&acc)
    })
}

/// The canonical representative of `Q^α` applied to the top cell of `Q^m`.
pub fn table_rep(a: &SimplexMap) -> BoxMap {
    canonicalize(&table_map(a)).into_rep()
}

/// `Q^α : Q^m → Q^n`.
pub fn cosimplicial_map(a: &SimplexMap, truncation: usize) -> PresheafMap {
    q_map(&table_map(a), truncation).expect("maps from the table descend")
}

/// Whether the `n`-cell `x` of `X` defines a map `Q^n → X`.
pub fn descends(x: &Presheaf, dim: usize, cell: usize) -> Result<bool> {
    if x.flavor() != Flavor::Cubical {
        return Err(Error::Mismatch("descent is a cubical condition".into()));
    }
    if dim > x.truncation() {
        return Err(Error::Truncation(format!("cell dimension {dim} exceeds truncation {}", x.truncation())));
    }
    for i in 1..dim {
        let face = Generator::cube_face(dim, i, 1);
        let y = x.act(&face, cell);
        let retract = keep_prefix(dim - 1, i - 1);
        if x.act_box(&retract, y)? != y {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[1]^n → [1]^n` keeping the first `k` coordinates and setting the rest to `1`.
fn keep_prefix(n: usize, k: usize) -> BoxMap {
    let coords = (1..=n).map(|j| if j <= k { Coord::Max(Support::singleton(j)) } else { Coord::Const1 }).collect();
    BoxMap::new(n, coords).expect("prefix projections are valid")
}
