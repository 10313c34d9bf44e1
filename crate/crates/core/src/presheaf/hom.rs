//! Backtracking enumeration of presheaf maps.
//!
//! Dimensions are filled in ascending order. Cells in the image of a
//! degeneracy or connection table are forced by the lower dimension; every
//! other cell is a free choice among the target cells whose faces match.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::{action_dims, Presheaf, PresheafMap};
use crate::error::Result;
use crate::site::Generator;

const UNSET: usize = usize::MAX;

type Admissible<'a> = Box<dyn Fn(usize, usize, usize) -> bool + 'a>;

/// A configurable search for maps `source → target`.
pub struct MapSearch<'a> {
    source: Arc<Presheaf>,
    target: Arc<Presheaf>,
    injective: bool,
    fixed: Vec<Vec<usize>>,
    admissible: Option<Admissible<'a>>,
}

struct Plan {
    /// Free cells per dimension.
    free: Vec<Vec<usize>>,
    faces: Vec<Vec<Generator>>,
    ups: Vec<Vec<Generator>>,
    /// Target cells of each dimension keyed by their face images.
    by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>>,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: impl Into<Arc<Presheaf>>, target: impl Into<Arc<Presheaf>>) -> Result<MapSearch<'a>> {
        let (source, target) = (source.into(), target.into());
        source.same_shape(&target)?;
        let fixed = source.counts().into_iter().map(|n| vec![UNSET; n]).collect();
        Ok(MapSearch { source, target, injective: false, fixed, admissible: None })
    }

    /// Only injective maps.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Prescribes the image of one cell.
    pub fn fix(mut self, dim: usize, cell: usize, value: usize) -> Self {
        self.fixed[dim][cell] = value;
        self
    }

    /// Restricts the image of each cell: `pred(dim, source_cell, target_cell)`.
    pub fn admissible(mut self, pred: impl Fn(usize, usize, usize) -> bool + 'a) -> Self {
        self.admissible = Some(Box::new(pred));
        self
    }

    fn plan(&self) -> Plan {
        let (x, y) = (&*self.source, &*self.target);
        let n = x.truncation();
        let mut free = Vec::with_capacity(n + 1);
        let mut faces = Vec::with_capacity(n + 1);
        let mut ups = Vec::with_capacity(n + 1);
        let mut by_faces = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let up = x.up_actions(d);
            let mut hit = vec![false; x.count(d)];
            for g in &up {
                for &c in x.table(g) {
                    hit[c] = true;
                }
            }
            free.push((0..x.count(d)).filter(|&c| !hit[c]).collect());
            let fs = x.face_actions(d);
            let mut index: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for t in 0..y.count(d) {
                index.entry(fs.iter().map(|g| y.act(g, t)).collect()).or_default().push(t);
            }
            faces.push(fs);
            ups.push(up);
            by_faces.push(index);
        }
        Plan { free, faces, ups, by_faces }
    }

    /// Visits every map; the visitor may stop the search early.
    pub fn for_each(&self, mut visit: impl FnMut(&[Vec<usize>]) -> ControlFlow<()>) {
        let plan = self.plan();
        let mut state = State {
            search: self,
            plan: &plan,
            assign: self.source.counts().into_iter().map(|n| vec![UNSET; n]).collect(),
            used: self.target.counts().into_iter().map(|n| vec![false; n]).collect(),
        };
        let _ = state.enter(0, &mut visit);
    }

    pub fn first(&self) -> Option<PresheafMap> {
        let mut found = None;
        self.for_each(|comps| {
            found = Some(comps.to_vec());
            ControlFlow::Break(())
        });
        found.map(|c| self.wrap(c))
    }

    pub fn all(&self) -> Vec<PresheafMap> {
        let mut out = Vec::new();
        self.for_each(|comps| {
            out.push(comps.to_vec());
            ControlFlow::Continue(())
        });
        out.into_iter().map(|c| self.wrap(c)).collect()
    }

    pub fn count(&self) -> usize {
        let mut k = 0;
        self.for_each(|_| {
            k += 1;
            ControlFlow::Continue(())
        });
        k
    }

    fn wrap(&self, components: Vec<Vec<usize>>) -> PresheafMap {
        PresheafMap::new_unchecked(self.source.clone(), self.target.clone(), components)
    }
}

struct State<'s, 'a> {
    search: &'s MapSearch<'a>,
    plan: &'s Plan,
    assign: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
}

impl State<'_, '_> {
    fn allowed(&self, dim: usize, cell: usize, value: usize) -> bool {
        let s = self.search;
        let fixed = s.fixed[dim][cell];
        (fixed == UNSET || fixed == value)
            && !(s.injective && self.used[dim][value])
            && s.admissible.as_ref().is_none_or(|p| p(dim, cell, value))
    }

    fn faces_match(&self, dim: usize, cell: usize, value: usize) -> bool {
        let (x, y) = (&*self.search.source, &*self.search.target);
        self.plan.faces[dim].iter().all(|g| self.assign[dim - 1][x.act(g, cell)] == y.act(g, value))
    }

    fn set(&mut self, dim: usize, cell: usize, value: usize) {
        self.assign[dim][cell] = value;
        if self.search.injective {
            self.used[dim][value] = true;
        }
    }

    fn unset(&mut self, dim: usize, cell: usize) {
        let v = std::mem::replace(&mut self.assign[dim][cell], UNSET);
        if self.search.injective {
            self.used[dim][v] = false;
        }
    }

    /// Fills the forced cells of `dim`, then the free ones.
    fn enter(&mut self, dim: usize, visit: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<()>) -> ControlFlow<()> {
        if dim > self.search.source.truncation() {
            return visit(&self.assign);
        }
        let (x, y) = (self.search.source.clone(), self.search.target.clone());
        let mut forced = Vec::new();
        let mut ok = true;
        'outer: for g in &self.plan.ups[dim] {
            let (from, _) = action_dims(g);
            for (c, &t) in x.table(g).iter().enumerate() {
                let v = y.act(g, self.assign[from][c]);
                if self.assign[dim][t] == UNSET {
                    if !self.allowed(dim, t, v) || (dim > 0 && !self.faces_match(dim, t, v)) {
                        ok = false;
                        break 'outer;
                    }
                    self.set(dim, t, v);
                    forced.push(t);
                } else if self.assign[dim][t] != v {
                    ok = false;
                    break 'outer;
                }
            }
        }
        let flow = if ok { self.choose(dim, 0, visit) } else { ControlFlow::Continue(()) };
        for t in forced {
            self.unset(dim, t);
        }
        flow
    }

    fn choose(
        &mut self,
        dim: usize,
        k: usize,
        visit: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(&cell) = self.plan.free[dim].get(k) else {
            return self.enter(dim + 1, visit);
        };
        let x = self.search.source.clone();
        let key: Vec<usize> = self.plan.faces[dim].iter().map(|g| self.assign[dim - 1][x.act(g, cell)]).collect();
        let Some(candidates) = self.plan.by_faces[dim].get(&key) else {
            return ControlFlow::Continue(());
        };
        for &v in candidates {
            if self.allowed(dim, cell, v) {
                self.set(dim, cell, v);
                let flow = self.choose(dim, k + 1, visit);
                self.unset(dim, cell);
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Every map `x → y`, in search order.
pub fn hom_set(x: impl Into<Arc<Presheaf>>, y: impl Into<Arc<Presheaf>>) -> Result<Vec<PresheafMap>> {
    Ok(MapSearch::new(x, y)?.all())
}

/// Some isomorphism `x → y`, if there is one.
pub fn find_isomorphism(x: impl Into<Arc<Presheaf>>, y: impl Into<Arc<Presheaf>>) -> Result<Option<PresheafMap>> {
    let (x, y) = (x.into(), y.into());
    x.same_shape(&y)?;
    if x.counts() != y.counts() {
        return Ok(None);
    }
    Ok(MapSearch::new(x, y)?.injective().first())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::site::Flavor;

    #[test]
    fn vertices_of_interval() {
        let pt = Presheaf::representable(Flavor::Cubical, 0, 2);
        let i = Presheaf::representable(Flavor::Cubical, 1, 2);
        assert_eq!(hom_set(pt, i).unwrap().len(), 2);
    }

    // Yoneda: maps out of a representable are its top-dimensional cells.
    #[test]
    fn yoneda_counts() {
        for n in 0..=2 {
            for m in 0..=2 {
                let a = Presheaf::representable(Flavor::Cubical, n, 3);
                let b = Presheaf::representable(Flavor::Cubical, m, 3);
                assert_eq!(hom_set(a, b.clone()).unwrap().len(), b.count(n), "□^{n} → □^{m}");
                let a = Presheaf::representable(Flavor::Simplicial, n, 3);
                let b = Presheaf::representable(Flavor::Simplicial, m, 3);
                assert_eq!(hom_set(a, b.clone()).unwrap().len(), b.count(n), "Δ^{n} → Δ^{m}");
            }
        }
    }

    #[test]
    fn isomorphism_search() {
        let a = Presheaf::representable(Flavor::Cubical, 2, 2);
        let renamed = a.with_names((0..=2).map(|d| (0..a.count(d)).rev().map(|c| format!("c{d}_{c}")).collect()).collect()).unwrap();
        assert!(find_isomorphism(a.clone(), renamed).unwrap().is_some());
        let b = Presheaf::representable(Flavor::Cubical, 1, 2);
        assert!(find_isomorphism(a, b).unwrap().is_none());
    }

    #[test]
    fn composites_stay_in_hom() {
        let a = Arc::new(Presheaf::representable(Flavor::Simplicial, 1, 2));
        let b = Arc::new(Presheaf::representable(Flavor::Simplicial, 2, 2));
        let ab = hom_set(a.clone(), b.clone()).unwrap();
        let bb = hom_set(b.clone(), b.clone()).unwrap();
        let all = hom_set(a, b).unwrap();
        for f in &ab {
            for g in &bb {
                assert!(all.contains(&g.compose(f).unwrap()));
            }
        }
    }
}
