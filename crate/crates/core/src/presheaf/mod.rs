//! Finite, dimension-truncated presheaves on □ and Δ.
//!
//! A [`Presheaf`] stores, for every dimension up to its truncation, an ordered
//! list of named cells, and for every generating map of the site a full action
//! table. Cells are addressed by their position in the per-dimension list.

mod colimit;
mod hom;
mod limit;
mod map;
mod quotient;
mod validate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use crate::boxcat::{BoxMap, SimplexMap};
use crate::error::{Error, Result};
use crate::site::{Flavor, Generator, Op};

pub use colimit::{is_pushout_square, pushout, pushout_comparison, Pushout};
pub use hom::{find_isomorphism, hom_set, MapSearch};
pub use limit::{product, subobject, terminal, Product};
pub use map::PresheafMap;
pub(crate) use quotient::Quotient;
pub use validate::Violation;

/// A cell addressed by dimension and position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub dim: usize,
    pub index: usize,
}

impl CellRef {
    pub fn new(dim: usize, index: usize) -> Self {
        CellRef { dim, index }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Presheaf {
    flavor: Flavor,
    truncation: usize,
    names: Vec<Vec<String>>,
    lookup: Vec<HashMap<String, usize>>,
    actions: BTreeMap<Generator, Vec<usize>>,
}

impl Presheaf {
    /// Builds a presheaf from raw tables, checking totality and the site
    /// identities.
    pub fn new(
        flavor: Flavor,
        truncation: usize,
        names: Vec<Vec<String>>,
        actions: BTreeMap<Generator, Vec<usize>>,
    ) -> Result<Presheaf> {
        let x = Presheaf::from_tables(flavor, truncation, names, actions)?;
        let violations = x.validate();
        if violations.is_empty() {
            Ok(x)
        } else {
            Err(Error::Validation(violations))
        }
    }

    /// Builds a presheaf, checking only that the tables are total and in range.
    pub fn from_tables(
        flavor: Flavor,
        truncation: usize,
        names: Vec<Vec<String>>,
        actions: BTreeMap<Generator, Vec<usize>>,
    ) -> Result<Presheaf> {
        if names.len() != truncation + 1 {
            return Err(Error::Precondition(format!(
                "expected cell lists for dimensions 0..={truncation}, got {}",
                names.len()
            )));
        }
        let mut lookup = Vec::with_capacity(names.len());
        for (d, cells) in names.iter().enumerate() {
            let mut map = HashMap::with_capacity(cells.len());
            for (i, name) in cells.iter().enumerate() {
                if map.insert(name.clone(), i).is_some() {
                    return Err(Error::Precondition(format!("duplicate cell `{name}` in dimension {d}")));
                }
            }
            lookup.push(map);
        }
        let expected = flavor.generators_upto(truncation);
        for g in &expected {
            let table = actions
                .get(g)
                .ok_or_else(|| Error::Precondition(format!("missing action table for {g} in dimension {}", g.dim)))?;
            let (from, to) = action_dims(g);
            if table.len() != names[from].len() {
                return Err(Error::Precondition(format!(
                    "action {g} at dimension {} has {} entries for {} cells",
                    g.dim,
                    table.len(),
                    names[from].len()
                )));
            }
            if let Some((i, _)) = table.iter().enumerate().find(|(_, &v)| v >= names[to].len()) {
                return Err(Error::Precondition(format!(
                    "action {g} at dimension {} sends `{}` out of range",
                    g.dim, names[from][i]
                )));
            }
        }
        if actions.len() != expected.len() {
            let extra = actions.keys().find(|k| !expected.contains(k)).expect("an unexpected key exists");
            return Err(Error::Precondition(format!("unexpected action {extra} at dimension {}", extra.dim)));
        }
        Ok(Presheaf { flavor, truncation, names, lookup, actions })
    }

    /// Builds a presheaf whose cells are values of `K`, acting through `act`.
    ///
    /// `act(g, x)` must return the image of `x` under the action of `g`, and
    /// that image must appear among the listed cells.
    pub fn from_fn<K, N, A>(flavor: Flavor, truncation: usize, cells: Vec<Vec<K>>, name: N, act: A) -> Result<Presheaf>
    where
        K: Eq + Hash,
        N: Fn(usize, &K) -> String,
        A: Fn(Generator, &K) -> K,
    {
        assert_eq!(cells.len(), truncation + 1, "one cell list per dimension");
        let index: Vec<HashMap<&K, usize>> =
            cells.iter().map(|cs| cs.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
        let mut actions = BTreeMap::new();
        for g in flavor.generators_upto(truncation) {
            let (from, to) = action_dims(&g);
            let mut table = Vec::with_capacity(cells[from].len());
            for x in &cells[from] {
                let y = act(g, x);
                let &j = index[to].get(&y).ok_or_else(|| {
                    Error::Precondition(format!(
                        "action {g} sends `{}` outside the listed cells of dimension {to}",
                        name(from, x)
                    ))
                })?;
                table.push(j);
            }
            actions.insert(g, table);
        }
        let names = cells
            .iter()
            .enumerate()
            .map(|(d, cs)| cs.iter().map(|k| name(d, k)).collect())
            .collect();
        Presheaf::from_tables(flavor, truncation, names, actions)
    }

    /// The empty presheaf.
    pub fn empty(flavor: Flavor, truncation: usize) -> Presheaf {
        let names = vec![Vec::new(); truncation + 1];
        let actions = flavor.generators_upto(truncation).into_iter().map(|g| (g, Vec::new())).collect();
        Presheaf::from_tables(flavor, truncation, names, actions).expect("empty tables are consistent")
    }

    /// The representable `□^n` or `Δ^n`; cells are the maps into `[1]^n` or `[n]`.
    pub fn representable(flavor: Flavor, n: usize, truncation: usize) -> Presheaf {
        match flavor {
            Flavor::Cubical => {
                let cells = (0..=truncation).map(|m| BoxMap::enumerate(m, n)).collect();
                Presheaf::from_fn(flavor, truncation, cells, |_, f: &BoxMap| f.to_string(), |g, f| {
                    f.compose_unchecked(&g.box_map())
                })
            }
            Flavor::Simplicial => {
                let cells = (0..=truncation).map(|m| SimplexMap::enumerate(m, n)).collect();
                Presheaf::from_fn(flavor, truncation, cells, |_, f: &SimplexMap| f.to_string(), |g, f| {
                    f.compose(&g.simplex_map()).expect("dimensions agree")
                })
            }
        }
        .expect("representables are closed under precomposition")
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_cells() == 0
    }

    pub fn names(&self, dim: usize) -> &[String] {
        &self.names[dim]
    }

    pub fn name(&self, dim: usize, cell: usize) -> &str {
        &self.names[dim][cell]
    }

    pub fn index_of(&self, dim: usize, name: &str) -> Option<usize> {
        self.lookup.get(dim)?.get(name).copied()
    }

    pub fn actions(&self) -> &BTreeMap<Generator, Vec<usize>> {
        &self.actions
    }

    pub fn table(&self, g: &Generator) -> &[usize] {
        self.actions
            .get(g)
            .unwrap_or_else(|| panic!("no action {g} at dimension {} (truncation {})", g.dim, self.truncation))
    }

    pub fn act(&self, g: &Generator, cell: usize) -> usize {
        self.table(g)[cell]
    }

    /// Acts by the composite of a site word given in application order.
    pub fn act_word(&self, word: &[Generator], cell: usize) -> usize {
        word.iter().rev().fold(cell, |c, g| self.act(g, c))
    }

    fn check_dims(&self, dims: &[usize]) -> Result<()> {
        match dims.iter().find(|&&d| d > self.truncation) {
            Some(d) => Err(Error::Truncation(format!("dimension {d} exceeds truncation {}", self.truncation))),
            None => Ok(()),
        }
    }

    /// `X(u)(x)` for a box map `u : [1]^m → [1]^n` and `x ∈ X_n`.
    pub fn act_box(&self, u: &BoxMap, cell: usize) -> Result<usize> {
        if self.flavor != Flavor::Cubical {
            return Err(Error::Mismatch("box maps act on cubical presheaves".into()));
        }
        self.check_dims(&[u.dom(), u.cod()])?;
        Ok(self.act_word(&u.normal_form().word(), cell))
    }

    /// `X(α)(x)` for a monotone map `α : [m] → [n]` and `x ∈ X_n`.
    pub fn act_simplex(&self, a: &SimplexMap, cell: usize) -> Result<usize> {
        if self.flavor != Flavor::Simplicial {
            return Err(Error::Mismatch("monotone maps act on simplicial presheaves".into()));
        }
        self.check_dims(&[a.dom(), a.cod()])?;
        Ok(self.act_word(&a.word(), cell))
    }

    /// Generators whose action lands in dimension `dim` from below.
    pub(crate) fn up_actions(&self, dim: usize) -> Vec<Generator> {
        self.flavor.generators_at(dim).into_iter().filter(|g| g.op != Op::Face).collect()
    }

    /// Face generators leaving dimension `dim`.
    pub(crate) fn face_actions(&self, dim: usize) -> Vec<Generator> {
        self.flavor.generators_at(dim).into_iter().filter(|g| g.op == Op::Face).collect()
    }

    /// Whether the cell is a degeneracy (or connection) of a lower cell,
    /// detected through the section equations `σ_i ∂_{i,ε} = id`,
    /// `γ_i ∂_{i,0} = id` (cubical) and `s^i d^i = id` (simplicial).
    pub fn is_degenerate(&self, dim: usize, cell: usize) -> bool {
        if dim == 0 {
            return false;
        }
        match self.flavor {
            Flavor::Cubical => {
                (1..=dim).any(|i| {
                    [0, 1].into_iter().any(|e| {
                        let y = self.act(&Generator::cube_face(dim, i, e), cell);
                        self.act(&Generator::cube_deg(dim, i), y) == cell
                    })
                }) || (1..dim).any(|i| {
                    let y = self.act(&Generator::cube_face(dim, i, 0), cell);
                    self.act(&Generator::cube_conn(dim, i), y) == cell
                })
            }
            Flavor::Simplicial => (0..dim).any(|i| {
                let y = self.act(&Generator::simplex_face(dim, i), cell);
                self.act(&Generator::simplex_deg(dim, i), y) == cell
            }),
        }
    }

    pub fn nondegenerate(&self, dim: usize) -> Vec<usize> {
        (0..self.count(dim)).filter(|&c| !self.is_degenerate(dim, c)).collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.truncation).map(|d| self.nondegenerate(d).len()).collect()
    }

    /// Highest dimension holding a nondegenerate cell.
    pub fn top_dimension(&self) -> Option<usize> {
        (0..=self.truncation).rev().find(|&d| !self.nondegenerate(d).is_empty())
    }

    /// Writes a simplicial cell as a degeneracy of a nondegenerate one:
    /// returns `(η, y)` with `x = X(η)(y)`.
    pub fn ez_decompose(&self, dim: usize, cell: usize) -> (SimplexMap, usize) {
        assert_eq!(self.flavor, Flavor::Simplicial, "Eilenberg–Zilber splitting is simplicial");
        for i in 0..dim {
            let y = self.act(&Generator::simplex_face(dim, i), cell);
            if self.act(&Generator::simplex_deg(dim, i), y) == cell {
                let (eta, base) = self.ez_decompose(dim - 1, y);
                let s = SimplexMap::codegeneracy(dim - 1, i).expect("index in range");
                return (eta.compose(&s).expect("dimensions agree"), base);
            }
        }
        (SimplexMap::identity(dim), cell)
    }

    /// Renames cells; the tables are unchanged.
    pub fn with_names(&self, names: Vec<Vec<String>>) -> Result<Presheaf> {
        if names.iter().map(Vec::len).ne(self.names.iter().map(Vec::len)) {
            return Err(Error::Precondition("renaming must keep the cell counts".into()));
        }
        Presheaf::from_tables(self.flavor, self.truncation, names, self.actions.clone())
    }

    /// Drops every dimension above `truncation`.
    pub fn truncate(&self, truncation: usize) -> Result<Presheaf> {
        if truncation > self.truncation {
            return Err(Error::Truncation(format!(
                "cannot extend truncation {} to {truncation}",
                self.truncation
            )));
        }
        let names = self.names[..=truncation].to_vec();
        let actions = self.actions.iter().filter(|(g, _)| g.dim <= truncation).map(|(g, t)| (*g, t.clone())).collect();
        Presheaf::from_tables(self.flavor, truncation, names, actions)
    }

    pub(crate) fn same_shape(&self, other: &Presheaf) -> Result<()> {
        if self.flavor != other.flavor {
            return Err(Error::Mismatch(format!("{} vs {} presheaves", self.flavor, other.flavor)));
        }
        if self.truncation != other.truncation {
            return Err(Error::Mismatch(format!("truncations {} vs {}", self.truncation, other.truncation)));
        }
        Ok(())
    }
}

/// `(from, to)` dimensions of the action table of a generator.
pub(crate) fn action_dims(g: &Generator) -> (usize, usize) {
    match g.op {
        Op::Face => (g.dim, g.dim - 1),
        Op::Deg | Op::Conn => (g.dim - 1, g.dim),
    }
}

impl fmt::Debug for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} presheaf, truncation {}, cells {:?}", self.flavor, self.truncation, self.counts())
    }
}
