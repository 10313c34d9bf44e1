use std::fmt;
use std::sync::Arc;

use super::{action_dims, Presheaf};
use crate::error::{Error, Result};

/// A natural map between presheaves of the same flavor and truncation.
#[derive(Clone, PartialEq, Eq)]
pub struct PresheafMap {
    source: Arc<Presheaf>,
    target: Arc<Presheaf>,
    components: Vec<Vec<usize>>,
}

impl PresheafMap {
    /// Checks ranges and naturality against every action table.
    pub fn new(
        source: impl Into<Arc<Presheaf>>,
        target: impl Into<Arc<Presheaf>>,
        components: Vec<Vec<usize>>,
    ) -> Result<PresheafMap> {
        let map = PresheafMap { source: source.into(), target: target.into(), components };
        map.check()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Arc<Presheaf>, target: Arc<Presheaf>, components: Vec<Vec<usize>>) -> Self {
        let map = PresheafMap { source, target, components };
        debug_assert!(map.check().is_ok(), "{:?}", map.check());
        map
    }

    /// Builds the components from a cellwise function.
    pub fn from_fn(
        source: impl Into<Arc<Presheaf>>,
        target: impl Into<Arc<Presheaf>>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<PresheafMap> {
        let source = source.into();
        let components = (0..=source.truncation()).map(|d| (0..source.count(d)).map(|c| f(d, c)).collect()).collect();
        PresheafMap::new(source, target, components)
    }

    fn check(&self) -> Result<()> {
        let (x, y) = (&*self.source, &*self.target);
        x.same_shape(y)?;
        if self.components.len() != x.truncation() + 1 {
            return Err(Error::InvalidMap(format!("expected {} components", x.truncation() + 1)));
        }
        for (d, comp) in self.components.iter().enumerate() {
            if comp.len() != x.count(d) {
                return Err(Error::InvalidMap(format!(
                    "component {d} has {} entries for {} cells",
                    comp.len(),
                    x.count(d)
                )));
            }
            if let Some(c) = comp.iter().position(|&v| v >= y.count(d)) {
                return Err(Error::InvalidMap(format!("`{}` in dimension {d} is sent out of range", x.name(d, c))));
            }
        }
        for (g, table) in x.actions() {
            let (from, to) = action_dims(g);
            let ytable = y.table(g);
            for (c, &gc) in table.iter().enumerate() {
                if self.components[to][gc] != ytable[self.components[from][c]] {
                    return Err(Error::InvalidMap(format!(
                        "not natural: {g} at dimension {} and cell `{}`",
                        g.dim,
                        x.name(from, c)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: impl Into<Arc<Presheaf>>) -> PresheafMap {
        let x = x.into();
        let components = x.counts().into_iter().map(|n| (0..n).collect()).collect();
        PresheafMap { source: x.clone(), target: x, components }
    }

    /// The unique map out of the empty presheaf.
    pub fn from_empty(target: impl Into<Arc<Presheaf>>) -> PresheafMap {
        let target = target.into();
        let source = Arc::new(Presheaf::empty(target.flavor(), target.truncation()));
        let components = vec![Vec::new(); target.truncation() + 1];
        PresheafMap { source, target, components }
    }

    pub fn source(&self) -> &Arc<Presheaf> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presheaf> {
        &self.target
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn apply(&self, dim: usize, cell: usize) -> usize {
        self.components[dim][cell]
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &PresheafMap) -> Result<PresheafMap> {
        if *f.target != *self.source {
            return Err(Error::Composition("inner map does not land in the source of the outer map".into()));
        }
        let components = f
            .components
            .iter()
            .enumerate()
            .map(|(d, comp)| comp.iter().map(|&c| self.components[d][c]).collect())
            .collect();
        Ok(PresheafMap { source: f.source.clone(), target: self.target.clone(), components })
    }

    /// The same components with the target replaced by an equal presheaf.
    pub fn retarget(&self, target: impl Into<Arc<Presheaf>>) -> Result<PresheafMap> {
        PresheafMap::new(self.source.clone(), target, self.components.clone())
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().enumerate().all(|(d, comp)| {
            let mut seen = vec![false; self.target.count(d)];
            comp.iter().all(|&c| !std::mem::replace(&mut seen[c], true))
        })
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().enumerate().all(|(d, comp)| {
            let mut seen = vec![false; self.target.count(d)];
            comp.iter().for_each(|&c| seen[c] = true);
            seen.into_iter().all(|b| b)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// First dimension where the map is not injective, with two colliding cells.
    pub fn mono_failure(&self) -> Option<(usize, usize, usize)> {
        for (d, comp) in self.components.iter().enumerate() {
            let mut seen = vec![usize::MAX; self.target.count(d)];
            for (c, &t) in comp.iter().enumerate() {
                if seen[t] != usize::MAX {
                    return Some((d, seen[t], c));
                }
                seen[t] = c;
            }
        }
        None
    }

    /// First target cell missed by the map.
    pub fn epi_failure(&self) -> Option<(usize, usize)> {
        for (d, comp) in self.components.iter().enumerate() {
            let mut seen = vec![false; self.target.count(d)];
            comp.iter().for_each(|&c| seen[c] = true);
            if let Some(t) = seen.iter().position(|b| !b) {
                return Some((d, t));
            }
        }
        None
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Result<PresheafMap> {
        if !self.is_iso() {
            return Err(Error::Precondition("only isomorphisms have inverses".into()));
        }
        let components = self
            .components
            .iter()
            .map(|comp| {
                let mut inv = vec![0; comp.len()];
                for (c, &t) in comp.iter().enumerate() {
                    inv[t] = c;
                }
                inv
            })
            .collect();
        Ok(PresheafMap { source: self.target.clone(), target: self.source.clone(), components })
    }
}

impl fmt::Debug for PresheafMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "map {:?} -> {:?}", self.source, self.target)?;
        for (d, comp) in self.components.iter().enumerate() {
            let parts: Vec<String> = comp
                .iter()
                .enumerate()
                .map(|(c, &t)| format!("{} -> {}", self.source.name(d, c), self.target.name(d, t)))
                .collect();
            writeln!(f, "  {d}: {}", parts.join(", "))?;
        }
        Ok(())
    }
}
