//! Generating cofibrations and their Q-images, lifting problems, the
//! cofibrancy obstruction, and checks of the degeneracy pushout squares and
//! of pushouts along `Q` of horn inclusions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::adjunctions::{apply_int, apply_int_map, apply_q, apply_q_map, representable_iso, unit_with, CoendPresentation};
use crate::boxcat::{BoxMap, SimplexMap};
use crate::error::{Error, Result};
use crate::presheaf::{is_pushout_square, pushout, subobject, CellRef, MapSearch, Presheaf, PresheafMap};
use crate::qshape::{pi, q_map};
use crate::site::{Flavor, Generator};

/// The standard subobjects of representables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `∂Δ^n`.
    BoundarySimplex { n: usize },
    /// `Λ^n_i`: every face of `Δ^n` but the `i`-th.
    Horn { n: usize, i: usize },
    /// `∂□^n`.
    BoundaryCube { n: usize },
    /// `⊓^n_{i,ε}`: every face of `□^n` but `∂_{i,ε}`.
    OpenBox { n: usize, i: usize, sign: u8 },
}

impl Shape {
    pub fn flavor(&self) -> Flavor {
        match self {
            Shape::BoundarySimplex { .. } | Shape::Horn { .. } => Flavor::Simplicial,
            _ => Flavor::Cubical,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Shape::BoundarySimplex { n } | Shape::Horn { n, .. } | Shape::BoundaryCube { n } | Shape::OpenBox { n, .. } => n,
        }
    }

    fn check(&self) -> Result<()> {
        let bad = |detail: String| Err(Error::Range { kind: "shape", detail });
        match *self {
            Shape::Horn { n, i } if n == 0 || i > n => bad(format!("horn Λ^{n}_{i}")),
            Shape::OpenBox { n, i, sign } if n == 0 || i == 0 || i > n || sign > 1 => {
                bad(format!("open box ⊓^{n}_{{{i},{sign}}}"))
            }
            _ => Ok(()),
        }
    }

    /// The codimension-one faces of the top cell that generate the subobject.
    fn faces(&self) -> Vec<Generator> {
        match *self {
            Shape::BoundarySimplex { n: 0 } => Vec::new(),
            Shape::BoundarySimplex { n } => (0..=n).map(|j| Generator::simplex_face(n, j)).collect(),
            Shape::Horn { n, i } => (0..=n).filter(|&j| j != i).map(|j| Generator::simplex_face(n, j)).collect(),
            Shape::BoundaryCube { n } => {
                (1..=n).flat_map(|j| [0, 1].map(|e| Generator::cube_face(n, j, e))).collect()
            }
            Shape::OpenBox { n, i, sign } => (1..=n)
                .flat_map(|j| [0, 1].map(|e| (j, e)))
                .filter(|&f| f != (i, sign))
                .map(|(j, e)| Generator::cube_face(n, j, e))
                .collect(),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Shape::BoundarySimplex { n } => write!(f, "∂Δ^{n}"),
            Shape::Horn { n, i } => write!(f, "Λ^{n}_{i}"),
            Shape::BoundaryCube { n } => write!(f, "∂□^{n}"),
            Shape::OpenBox { n, i, sign } => write!(f, "⊓^{n}_{{{i},{sign}}}"),
        }
    }
}

/// The shape as a subobject of `Δ^n` or `□^n`, with its inclusion.
pub fn shape_subobject(shape: Shape, truncation: usize) -> Result<(Arc<Presheaf>, PresheafMap)> {
    shape.check()?;
    let n = shape.n();
    if truncation < n {
        return Err(Error::Truncation(format!("{shape} needs truncation at least {n}")));
    }
    let ambient = Arc::new(Presheaf::representable(shape.flavor(), n, truncation));
    let top = ambient.nondegenerate(n)[0];
    let gens: Vec<CellRef> = shape.faces().iter().map(|g| CellRef::new(n - 1, ambient.act(g, top))).collect();
    subobject(ambient, &gens)
}

/// `Q` of a boundary or horn inclusion, identified with a map into `Q^n`.
#[derive(Clone, Debug)]
pub struct QGenerator {
    pub shape: Shape,
    /// `Q` of the simplicial shape.
    pub source: CoendPresentation,
    /// The inclusion `QA → Q^n`.
    pub map: PresheafMap,
}

pub fn q_generator(shape: Shape, truncation: usize) -> Result<QGenerator> {
    if shape.flavor() != Flavor::Simplicial {
        return Err(Error::Precondition(format!("{shape} is not a simplicial shape")));
    }
    let n = shape.n();
    let (a, incl) = shape_subobject(shape, n)?;
    let qa = apply_q(a, truncation)?;
    let qd = apply_q(incl.target().clone(), truncation)?;
    let map = representable_iso(&qd, n)?.compose(&apply_q_map(&incl, &qa, &qd)?)?;
    Ok(QGenerator { shape, source: qa, map })
}

/// A commuting square `p ∘ base = over ∘ i`, asking for `ℓ : B → X` with
/// `ℓ ∘ i = base` and `p ∘ ℓ = over`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub i: PresheafMap,
    pub p: PresheafMap,
    pub base: PresheafMap,
    pub over: PresheafMap,
}

impl LiftingProblem {
    pub fn new(i: PresheafMap, p: PresheafMap, base: PresheafMap, over: PresheafMap) -> Result<LiftingProblem> {
        let top = p.compose(&base)?;
        let bottom = over.compose(&i)?;
        if top != bottom {
            return Err(Error::Precondition("the lifting square does not commute".into()));
        }
        Ok(LiftingProblem { i, p, base, over })
    }

    /// Whether `l` is a diagonal filler.
    pub fn is_lift(&self, l: &PresheafMap) -> bool {
        l.compose(&self.i).is_ok_and(|li| li == self.base) && self.p.compose(l).is_ok_and(|pl| pl == self.over)
    }

    fn search(&self) -> Option<MapSearch<'_>> {
        let b = self.i.target();
        let mut prescribed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for d in 0..=self.i.source().truncation() {
            for a in 0..self.i.source().count(d) {
                let v = self.base.apply(d, a);
                if *prescribed.entry((d, self.i.apply(d, a))).or_insert(v) != v {
                    return None;
                }
            }
        }
        let mut s = MapSearch::new(b.clone(), self.base.target().clone())
            .ok()?
            .admissible(move |d, cell, value| self.p.apply(d, value) == self.over.apply(d, cell));
        for ((d, cell), v) in prescribed {
            s = s.fix(d, cell, v);
        }
        Some(s)
    }

    /// The first diagonal in search order, if any.
    pub fn solve(&self) -> Option<PresheafMap> {
        let l = self.search()?.first()?;
        debug_assert!(self.is_lift(&l));
        Some(l)
    }

    /// Every diagonal.
    pub fn all_lifts(&self) -> Vec<PresheafMap> {
        self.search().map(|s| s.all()).unwrap_or_default()
    }
}

/// Every 2-cell of `X` whose four faces are all nondegenerate.
///
/// A nonempty answer shows `X` is not cofibrant; an empty one proves nothing.
pub fn cofibrancy_obstruction(x: &Presheaf) -> Result<Vec<usize>> {
    if x.flavor() != Flavor::Cubical {
        return Err(Error::Mismatch("the obstruction is cubical".into()));
    }
    if x.truncation() < 2 {
        return Err(Error::Truncation("the obstruction reads 2-cells".into()));
    }
    let faces: Vec<Generator> = [(1, 0), (1, 1), (2, 0), (2, 1)].map(|(i, e)| Generator::cube_face(2, i, e)).to_vec();
    Ok((0..x.count(2)).filter(|&c| faces.iter().all(|g| !x.is_degenerate(1, x.act(g, c)))).collect())
}

/// A pair of subsets `A, B ⊆ {1, …, k}` and the degeneracies between the
/// cubes they leave.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracySquare {
    pub k: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

fn union(x: &[usize], y: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = x.iter().chain(y).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

fn minus(x: &[usize], y: &[usize]) -> Vec<usize> {
    x.iter().copied().filter(|i| !y.contains(i)).collect()
}

impl DegeneracySquare {
    pub fn new(k: usize, mut a: Vec<usize>, mut b: Vec<usize>) -> Result<DegeneracySquare> {
        for s in [&mut a, &mut b] {
            s.sort_unstable();
            s.dedup();
            if s.iter().any(|&i| i == 0 || i > k) {
                return Err(Error::Range { kind: "subset", detail: format!("{s:?} ⊄ {{1..{k}}}") });
            }
        }
        Ok(DegeneracySquare { k, a, b })
    }

    pub fn m(&self) -> usize {
        self.k - self.a.len()
    }

    pub fn n(&self) -> usize {
        self.k - self.b.len()
    }

    pub fn l(&self) -> usize {
        self.k - union(&self.a, &self.b).len()
    }

    /// `{min A △ B, …, k} ∪ A ∪ B` when `A ≠ B`, else `A`.
    pub fn c(&self) -> Vec<usize> {
        if self.a == self.b {
            return self.a.clone();
        }
        let sym = union(&minus(&self.a, &self.b), &minus(&self.b, &self.a));
        union(&(sym[0]..=self.k).collect::<Vec<_>>(), &union(&self.a, &self.b))
    }

    pub fn r(&self) -> usize {
        self.k - self.c().len()
    }

    /// The degeneracy forgetting `drop` out of the coordinates `{1..k} \ present`.
    fn sigma(&self, present_gone: &[usize], drop: &[usize]) -> BoxMap {
        let kept: Vec<usize> = (1..=self.k).filter(|i| !present_gone.contains(i)).collect();
        let positions: Vec<usize> =
            kept.iter().enumerate().filter(|(_, i)| drop.contains(i)).map(|(p, _)| p + 1).collect();
        BoxMap::projection(kept.len(), &positions).expect("positions in range")
    }

    /// The square `σ_A, σ_B, σ_{B∖A}, σ_{A∖B}` on cubes.
    pub fn cube_square(&self, truncation: usize) -> [PresheafMap; 4] {
        let sa = self.sigma(&[], &self.a);
        let sb = self.sigma(&[], &self.b);
        let sba = self.sigma(&self.a, &minus(&self.b, &self.a));
        let sab = self.sigma(&self.b, &minus(&self.a, &self.b));
        [sa, sb, sba, sab].map(|u| crate::qshape::cube_map(&u, truncation))
    }

    /// The square `π_m σ_A, π_n σ_B, σ̄_{C∖A}, σ̄_{C∖B}` into `Q`-objects.
    pub fn q_square(&self, truncation: usize) -> Result<[PresheafMap; 4]> {
        let c = self.c();
        let f = pi(self.m(), truncation).compose(&crate::qshape::cube_map(&self.sigma(&[], &self.a), truncation))?;
        let g = pi(self.n(), truncation).compose(&crate::qshape::cube_map(&self.sigma(&[], &self.b), truncation))?;
        let h = q_map(&self.sigma(&self.a, &minus(&c, &self.a)), truncation)?;
        let k = q_map(&self.sigma(&self.b, &minus(&c, &self.b)), truncation)?;
        Ok([f, g, h, k])
    }
}

/// What [`verify_degeneracy_pushouts`] found.
#[derive(Clone, Debug, Default)]
pub struct PushoutReport {
    pub squares: usize,
    pub factorizations: usize,
    pub failures: Vec<String>,
}

impl PushoutReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << k).map(|bits| (1..=k).filter(|i| bits >> (i - 1) & 1 == 1).collect()).collect()
}

/// Checks both degeneracy squares for every `A, B ⊆ {1..k}`, and that every
/// box map out of `[1]^k` splits as a descending map after `σ_A`, so any
/// square `□^k → Q^m, Q^n` routes through one of the checked ones.
pub fn verify_degeneracy_pushouts(k: usize, truncation: usize) -> PushoutReport {
    let mut report = PushoutReport::default();
    let subs = subsets(k);
    for a in &subs {
        for b in &subs {
            let sq = DegeneracySquare::new(k, a.clone(), b.clone()).expect("subsets in range");
            report.squares += 1;
            let [f, g, h, kk] = sq.cube_square(truncation);
            match is_pushout_square(&f, &g, &h, &kk) {
                Ok(true) => {}
                Ok(false) => report.failures.push(format!("cube square A={a:?} B={b:?} is not a pushout")),
                Err(e) => report.failures.push(format!("cube square A={a:?} B={b:?}: {e}")),
            }
            match sq.q_square(truncation).and_then(|[f, g, h, kk]| is_pushout_square(&f, &g, &h, &kk)) {
                Ok(true) => {}
                Ok(false) => report.failures.push(format!("Q square A={a:?} B={b:?} C={:?} is not a pushout", sq.c())),
                Err(e) => report.failures.push(format!("Q square A={a:?} B={b:?}: {e}")),
            }
        }
    }
    for m in 0..=k {
        for u in BoxMap::enumerate(k, m) {
            report.factorizations += 1;
            let mut nf = u.normal_form();
            let a = nf.degeneracies.clone();
            nf.degeneracies.clear();
            nf.dom = k - a.len();
            let rest = nf.evaluate();
            let sigma = BoxMap::projection(k, &a).expect("indices in range");
            if rest.compose(&sigma).ok().as_ref() != Some(&u) {
                report.failures.push(format!("{u} does not split off σ_{a:?}"));
                continue;
            }
            let routed = q_map(&rest, truncation).and_then(|qr| {
                let f = pi(nf.dom, truncation).compose(&crate::qshape::cube_map(&sigma, truncation))?;
                let direct = pi(m, truncation).compose(&crate::qshape::cube_map(&u, truncation))?;
                Ok(qr.compose(&f)? == direct)
            });
            match routed {
                Ok(true) => {}
                Ok(false) => report.failures.push(format!("π∘{u} differs from the routed composite")),
                Err(e) => report.failures.push(format!("{rest} after σ_{a:?}: {e}")),
            }
        }
    }
    report
}

/// What [`verify_ac_pushout`] found.
#[derive(Clone, Debug)]
pub struct AcPushoutReport {
    /// `∫` of the cubical pushout square is a pushout.
    pub int_preserves: bool,
    /// `∫Y ≅ Δ^n ∪_{Λ^n_i} ∫X` through the explicit comparison map.
    pub comparison_iso: bool,
    /// The pushout `Y`.
    pub object: Arc<Presheaf>,
}

impl AcPushoutReport {
    pub fn passed(&self) -> bool {
        self.int_preserves && self.comparison_iso
    }
}

/// Forms `Y = Q^n ∪_{QΛ^n_i} X` along `attach` and compares `∫Y` with
/// `Δ^n ∪_{Λ^n_i} ∫X`.
pub fn verify_ac_pushout(n: usize, i: usize, attach: &PresheafMap) -> Result<AcPushoutReport> {
    let x = attach.target();
    let t = x.truncation();
    let j = q_generator(Shape::Horn { n, i }, t)?;
    if **attach.source() != *j.source.object {
        return Err(Error::Precondition(format!("attaching map must start at QΛ^{n}_{i}")));
    }
    let attach = PresheafMap::new(j.map.source().clone(), x.clone(), attach.components().to_vec())?;
    let y = pushout(&j.map, &attach)?;

    let int_lambda = apply_int(j.map.source().clone(), t)?;
    let int_q = apply_int(j.map.target().clone(), t)?;
    let int_x = apply_int(x.clone(), t)?;
    let int_y = apply_int(y.object.clone(), t)?;
    let ij = apply_int_map(&j.map, &int_lambda, &int_q)?;
    let ia = apply_int_map(&attach, &int_lambda, &int_x)?;
    let ib = apply_int_map(&y.in_b, &int_q, &int_y)?;
    let ic = apply_int_map(&y.in_c, &int_x, &int_y)?;
    let int_preserves = is_pushout_square(&ij, &ia, &ib, &ic)?;

    // Δ^n ← Λ^n_i → ∫X, the second map being the adjunct of `attach`.
    let (lambda, horn) = shape_subobject(Shape::Horn { n, i }, t)?;
    let qlambda = apply_q(lambda.clone(), t)?;
    if *qlambda.object != *j.source.object {
        return Err(Error::Precondition("QΛ was computed inconsistently".into()));
    }
    let eta = unit_with(&qlambda, &int_lambda)?;
    let adjunct = ia.compose(&eta)?;
    let top = int_y.simplex(n, y.in_b.apply(n, j.map.target().nondegenerate(n)[0]));
    let top = top.ok_or_else(|| Error::Precondition("the top cell of Q^n does not descend".into()))?;
    let delta = horn.target().clone();
    let simplex = PresheafMap::from_fn(delta.clone(), int_y.object.clone(), |d, c| {
        let alpha = SimplexMap::enumerate(d, n).swap_remove(c);
        int_y.object.act_simplex(&alpha, top).expect("dimensions within truncation")
    })?;
    let comparison_iso = is_pushout_square(&horn, &adjunct, &simplex, &ic)?;
    Ok(AcPushoutReport { int_preserves, comparison_iso, object: y.object })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qshape::q_object;

    #[test]
    fn shapes() {
        let (b, _) = shape_subobject(Shape::OpenBox { n: 2, i: 1, sign: 0 }, 2).unwrap();
        assert_eq!(b.count(0), 4);
        assert_eq!(b.nondegenerate(1).len(), 3);
        let (s, _) = shape_subobject(Shape::BoundarySimplex { n: 2 }, 3).unwrap();
        assert_eq!(s.nondegenerate_counts(), vec![3, 3, 0, 0]);
        let (h, _) = shape_subobject(Shape::Horn { n: 2, i: 1 }, 3).unwrap();
        assert_eq!(h.nondegenerate_counts(), vec![3, 2, 0, 0]);
        let (e, _) = shape_subobject(Shape::BoundarySimplex { n: 0 }, 1).unwrap();
        assert!(e.is_empty());
        let (c, _) = shape_subobject(Shape::BoundaryCube { n: 2 }, 2).unwrap();
        assert_eq!(c.nondegenerate_counts(), vec![4, 4, 0]);
        assert!(shape_subobject(Shape::Horn { n: 2, i: 3 }, 2).is_err());
        assert!(shape_subobject(Shape::OpenBox { n: 2, i: 0, sign: 0 }, 2).is_err());
    }

    #[test]
    fn generators_are_mono() {
        let g = q_generator(Shape::BoundarySimplex { n: 2 }, 3).unwrap();
        assert!(g.map.is_mono() && !g.map.is_epi());
        assert_eq!(**g.map.target(), q_object(2, 3));
        let g = q_generator(Shape::BoundarySimplex { n: 0 }, 2).unwrap();
        assert!(g.map.source().is_empty());
        let g = q_generator(Shape::Horn { n: 1, i: 0 }, 2).unwrap();
        assert_eq!(g.map.source().counts(), vec![1, 1, 1]);
        assert!(g.map.is_mono());
    }

    #[test]
    fn c_examples() {
        let sq = DegeneracySquare::new(3, vec![1], vec![2]).unwrap();
        assert_eq!(sq.c(), vec![1, 2, 3]);
        assert_eq!(sq.r(), 0);
        let sq = DegeneracySquare::new(2, vec![1], vec![1]).unwrap();
        assert_eq!(sq.c(), vec![1]);
        let sq = DegeneracySquare::new(2, vec![1], vec![2]).unwrap();
        assert_eq!(sq.l(), 0);
    }

    #[test]
    fn degeneracy_squares_small() {
        let r = verify_degeneracy_pushouts(2, 2);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.squares, 16);
    }

    #[test]
    fn point_lifting() {
        let pt = Arc::new(Presheaf::representable(Flavor::Cubical, 0, 1));
        let e = Arc::new(Presheaf::empty(Flavor::Cubical, 1));
        let i = PresheafMap::from_empty(pt.clone());
        let interval = Arc::new(Presheaf::representable(Flavor::Cubical, 1, 1));
        let p = PresheafMap::from_fn(interval.clone(), pt.clone(), |_, _| 0).unwrap();
        let base = PresheafMap::from_empty(interval.clone());
        let over = PresheafMap::identity(pt.clone());
        let prob = LiftingProblem::new(i.clone(), p, base, over.clone()).unwrap();
        assert_eq!(prob.all_lifts().len(), 2);
        let p = PresheafMap::from_empty(pt.clone());
        let prob = LiftingProblem::new(i, p, PresheafMap::from_empty(e.clone()), over).unwrap();
        assert!(prob.solve().is_none());
    }

    #[test]
    fn obstruction_examples() {
        assert_eq!(cofibrancy_obstruction(&Presheaf::representable(Flavor::Cubical, 2, 2)).unwrap().len(), 1);
        assert!(cofibrancy_obstruction(&q_object(2, 2)).unwrap().is_empty());
        assert!(cofibrancy_obstruction(&Presheaf::representable(Flavor::Cubical, 1, 2)).unwrap().is_empty());
    }

    #[test]
    fn ac_pushout_along_identity() {
        let j = q_generator(Shape::Horn { n: 2, i: 1 }, 3).unwrap();
        let id = PresheafMap::identity(j.map.source().clone());
        let r = verify_ac_pushout(2, 1, &id).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
