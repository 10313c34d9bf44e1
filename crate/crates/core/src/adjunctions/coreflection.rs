//! `Q : sSet → cSet` as a coend over nondegenerate simplices, and
//! `∫ : cSet → sSet` as the descending cells.

use std::collections::HashMap;
use std::sync::Arc;

use crate::boxcat::{BoxMap, SimplexMap};
use crate::error::{Error, Result};
use crate::presheaf::{action_dims, product, Presheaf, PresheafMap, Quotient};
use crate::qshape::{canonicalize, coface_inducer, q_cells, q_object, table_map, table_rep};
use crate::site::{Flavor, Op};

/// An element `(n, x, u)`: a nondegenerate `n`-simplex `x` and `u ∈ Q^n_m`.
type Element = (usize, usize, BoxMap);

/// `QX` together with the pairs that present it.
#[derive(Clone, Debug)]
pub struct CoendPresentation {
    pub object: Arc<Presheaf>,
    pub base: Arc<Presheaf>,
    elements: Vec<Vec<Element>>,
    index: Vec<HashMap<Element, usize>>,
    class_of: Vec<Vec<usize>>,
    reps: Vec<Vec<usize>>,
}

impl CoendPresentation {
    /// The cell of `QX` represented by `(x, u)` for any simplex `x` of `X`
    /// and any box map `u : [1]^m → [1]^dim`.
    pub fn class(&self, dim: usize, cell: usize, u: &BoxMap) -> usize {
        let (eta, y) = self.base.ez_decompose(dim, cell);
        let v = canonicalize(&table_map(&eta).compose_unchecked(u)).into_rep();
        let m = u.dom();
        let key = (eta.cod(), y, v);
        let e = *self.index[m].get(&key).unwrap_or_else(|| panic!("no element {key:?} in dimension {m}"));
        self.class_of[m][e]
    }

    /// The chosen representative of a cell of `QX`.
    pub fn representative(&self, m: usize, class: usize) -> (usize, usize, &BoxMap) {
        let (n, x, u) = &self.elements[m][self.reps[m][class]];
        (*n, *x, u)
    }
}

/// `QX` up to cubical dimension `truncation`.
///
/// Only the nondegenerate simplices of `X` up to its own truncation enter;
/// the caller must truncate `X` above its top nondegenerate dimension.
pub fn apply_q(x: impl Into<Arc<Presheaf>>, truncation: usize) -> Result<CoendPresentation> {
    let x = x.into();
    if x.flavor() != Flavor::Simplicial {
        return Err(Error::Mismatch("Q takes a simplicial presheaf".into()));
    }
    let nondeg: Vec<Vec<usize>> = (0..=x.truncation()).map(|n| x.nondegenerate(n)).collect();
    let mut shapes: HashMap<(usize, usize), Vec<BoxMap>> = HashMap::new();
    let mut elements: Vec<Vec<Element>> = Vec::with_capacity(truncation + 1);
    for m in 0..=truncation {
        let mut es = Vec::new();
        for (n, cells) in nondeg.iter().enumerate() {
            let us = shapes.entry((m, n)).or_insert_with(|| q_cells(m, n));
            for &c in cells {
                es.extend(us.iter().map(|u| (n, c, u.clone())));
            }
        }
        elements.push(es);
    }
    let index: Vec<HashMap<Element, usize>> =
        elements.iter().map(|es| es.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()).collect();

    let sizes: Vec<usize> = elements.iter().map(Vec::len).collect();
    let mut q = Quotient::new(Flavor::Cubical, truncation, &sizes);
    for (n, cells) in nondeg.iter().enumerate().skip(1) {
        for &c in cells {
            for i in 0..=n {
                let face = x.act(&crate::site::Generator::simplex_face(n, i), c);
                let (eta, y) = x.ez_decompose(n - 1, face);
                let delta = coface_inducer(n, i);
                let eta_box = table_map(&eta);
                for m in 0..=truncation {
                    for u in &shapes[&(m, n - 1)] {
                        let left = (n, c, canonicalize(&delta.compose_unchecked(u)).into_rep());
                        let right = (eta.cod(), y, canonicalize(&eta_box.compose_unchecked(u)).into_rep());
                        q.union(m, index[m][&left], index[m][&right]);
                    }
                }
            }
        }
    }
    let classes = q.finish(
        |g, e| {
            let (from, to) = action_dims(&g);
            let (n, c, u) = &elements[from][e];
            let v = canonicalize(&u.compose_unchecked(&g.box_map())).into_rep();
            index[to][&(*n, *c, v)]
        },
        |m, e| {
            let (n, c, u) = &elements[m][e];
            format!("{}|{}", x.name(*n, *c), u)
        },
    )?;
    Ok(CoendPresentation {
        object: Arc::new(classes.presheaf),
        base: x,
        elements,
        index,
        class_of: classes.class_of,
        reps: classes.reps,
    })
}

/// `Qf : QX → QY` between two presentations.
pub fn apply_q_map(f: &PresheafMap, qx: &CoendPresentation, qy: &CoendPresentation) -> Result<PresheafMap> {
    if **f.source() != *qx.base || **f.target() != *qy.base {
        return Err(Error::Mismatch("presentations do not match the map".into()));
    }
    let comps = (0..=qx.object.truncation())
        .map(|m| {
            (0..qx.object.count(m))
                .map(|k| {
                    let (n, c, u) = qx.representative(m, k);
                    qy.class(n, f.apply(n, c), u)
                })
                .collect()
        })
        .collect();
    PresheafMap::new(qx.object.clone(), qy.object.clone(), comps)
}

/// `∫X` with each simplex traced back to its cell of `X`.
#[derive(Clone, Debug)]
pub struct IntImage {
    pub object: Arc<Presheaf>,
    pub base: Arc<Presheaf>,
    cells: Vec<Vec<usize>>,
    position: Vec<HashMap<usize, usize>>,
}

impl IntImage {
    /// The cell of `X` underlying a simplex.
    pub fn cell(&self, dim: usize, simplex: usize) -> usize {
        self.cells[dim][simplex]
    }

    /// The simplex given by a descending cell of `X`.
    pub fn simplex(&self, dim: usize, cell: usize) -> Option<usize> {
        self.position[dim].get(&cell).copied()
    }
}

/// `∫X` up to simplicial dimension `truncation`: the `n`-simplices are the
/// descending `n`-cells of `X`.
pub fn apply_int(x: impl Into<Arc<Presheaf>>, truncation: usize) -> Result<IntImage> {
    let x = x.into();
    if x.flavor() != Flavor::Cubical {
        return Err(Error::Mismatch("∫ takes a cubical presheaf".into()));
    }
    if truncation > x.truncation() {
        return Err(Error::Truncation(format!(
            "∫ up to dimension {truncation} needs cells of X up to {truncation}, but X stops at {}",
            x.truncation()
        )));
    }
    let mut cells = Vec::with_capacity(truncation + 1);
    for n in 0..=truncation {
        let mut cs = Vec::new();
        for c in 0..x.count(n) {
            if crate::qshape::descends(&x, n, c)? {
                cs.push(c);
            }
        }
        cells.push(cs);
    }
    let reps: HashMap<crate::site::Generator, BoxMap> = Flavor::Simplicial
        .generators_upto(truncation)
        .into_iter()
        .map(|g| {
            let a = match g.op {
                Op::Face => SimplexMap::coface(g.dim, g.index),
                _ => SimplexMap::codegeneracy(g.dim - 1, g.index),
            }
            .expect("generator in range");
            (g, table_rep(&a))
        })
        .collect();
    let object = Presheaf::from_fn(
        Flavor::Simplicial,
        truncation,
        cells.clone(),
        |n, &c| x.name(n, c).to_string(),
        |g, &c| x.act_box(&reps[&g], c).expect("dimensions within truncation"),
    )?;
    let position = cells.iter().map(|cs| cs.iter().enumerate().map(|(i, &c)| (c, i)).collect()).collect();
    Ok(IntImage { object: Arc::new(object), base: x, cells, position })
}

/// `∫f : ∫X → ∫Y` between two images.
pub fn apply_int_map(f: &PresheafMap, ix: &IntImage, iy: &IntImage) -> Result<PresheafMap> {
    if **f.source() != *ix.base || **f.target() != *iy.base {
        return Err(Error::Mismatch("images do not match the map".into()));
    }
    let comps = (0..=ix.object.truncation())
        .map(|n| {
            (0..ix.object.count(n))
                .map(|s| {
                    let t = f.apply(n, ix.cell(n, s));
                    iy.simplex(n, t).expect("maps preserve descending cells")
                })
                .collect()
        })
        .collect();
    PresheafMap::new(ix.object.clone(), iy.object.clone(), comps)
}

/// `η_X : X → ∫QX` for given images of `X`.
pub fn unit_with(qx: &CoendPresentation, iqx: &IntImage) -> Result<PresheafMap> {
    let x = &qx.base;
    if *iqx.base != *qx.object {
        return Err(Error::Mismatch("∫ image is not taken of QX".into()));
    }
    let comps = (0..=x.truncation().min(iqx.object.truncation()))
        .map(|n| {
            (0..x.count(n))
                .map(|c| {
                    let cell = qx.class(n, c, &BoxMap::identity(n));
                    iqx.simplex(n, cell).expect("Q of a simplex descends")
                })
                .collect()
        })
        .collect();
    PresheafMap::new(x.clone(), iqx.object.clone(), comps)
}

/// `η_X : X → ∫QX`, computed up to the truncation of `X`.
pub fn unit(x: impl Into<Arc<Presheaf>>) -> Result<PresheafMap> {
    let x = x.into();
    let n = x.truncation();
    let qx = apply_q(x, n)?;
    let iqx = apply_int(qx.object.clone(), n)?;
    unit_with(&qx, &iqx)
}

/// `ε_X : Q∫X → X` for given images of `X`.
pub fn counit_with(ix: &IntImage, qix: &CoendPresentation) -> Result<PresheafMap> {
    let x = &ix.base;
    if *qix.base != *ix.object {
        return Err(Error::Mismatch("Q image is not taken of ∫X".into()));
    }
    let comps = (0..=qix.object.truncation())
        .map(|m| {
            (0..qix.object.count(m))
                .map(|k| {
                    let (n, s, u) = qix.representative(m, k);
                    x.act_box(u, ix.cell(n, s))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PresheafMap::new(qix.object.clone(), x.clone(), comps)
}

/// `ε_X : Q∫X → X`, with `∫X` read up to the truncation of `X`.
pub fn counit(x: impl Into<Arc<Presheaf>>) -> Result<PresheafMap> {
    let x = x.into();
    let n = x.truncation();
    let ix = apply_int(x, n)?;
    let qix = apply_q(ix.object.clone(), n)?;
    counit_with(&ix, &qix)
}

/// The isomorphism `QΔ^n → Q^n` sending `(α, u)` to `Q^α(u)`.
pub fn representable_iso(qd: &CoendPresentation, n: usize) -> Result<PresheafMap> {
    let target = Arc::new(q_object(n, qd.object.truncation()));
    let comps = (0..=qd.object.truncation())
        .map(|m| {
            (0..qd.object.count(m))
                .map(|k| {
                    let (d, a, u) = qd.representative(m, k);
                    let alpha = SimplexMap::enumerate(d, n)
                        .into_iter()
                        .nth(a)
                        .ok_or_else(|| Error::Precondition(format!("source is not Δ^{n}")))?;
                    let v = canonicalize(&table_map(&alpha).compose_unchecked(u)).into_rep();
                    target
                        .index_of(m, &v.to_string())
                        .ok_or_else(|| Error::Precondition(format!("no cell {v} in Q^{n}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = PresheafMap::new(qd.object.clone(), target, comps)?;
    if !iso.is_iso() {
        return Err(Error::Precondition(format!("source is not QΔ^{n}")));
    }
    Ok(iso)
}

/// The comparison `Q(A × B) → QA × QB` induced by the two projections.
pub fn product_comparison(
    a: impl Into<Arc<Presheaf>>,
    b: impl Into<Arc<Presheaf>>,
    truncation: usize,
) -> Result<PresheafMap> {
    let p = product(a, b)?;
    let qp = apply_q(p.object.clone(), truncation)?;
    let qa = apply_q(p.proj_x.target().clone(), truncation)?;
    let qb = apply_q(p.proj_y.target().clone(), truncation)?;
    let pa = apply_q_map(&p.proj_x, &qp, &qa)?;
    let pb = apply_q_map(&p.proj_y, &qp, &qb)?;
    let target = product(qa.object.clone(), qb.object.clone())?;
    let comps = (0..=truncation)
        .map(|m| {
            let width = qb.object.count(m);
            (0..qp.object.count(m)).map(|k| pa.apply(m, k) * width + pb.apply(m, k)).collect()
        })
        .collect();
    PresheafMap::new(qp.object, target.object, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::find_isomorphism;

    #[test]
    fn q_of_representables() {
        for n in 0..=3 {
            let d = Presheaf::representable(Flavor::Simplicial, n, n.max(1));
            let qd = apply_q(d, 3).unwrap();
            assert!(representable_iso(&qd, n).is_ok(), "QΔ^{n}");
        }
    }

    #[test]
    fn q_of_empty() {
        let e = Presheaf::empty(Flavor::Simplicial, 2);
        assert!(apply_q(e, 3).unwrap().object.is_empty());
    }

    #[test]
    fn int_of_interval() {
        let i = Presheaf::representable(Flavor::Cubical, 1, 3);
        let ii = apply_int(i, 3).unwrap();
        assert_eq!(ii.object.count(2), 4);
        let d1 = Presheaf::representable(Flavor::Simplicial, 1, 3);
        assert!(find_isomorphism(ii.object.as_ref().clone(), d1).unwrap().is_some());
        let pt = apply_int(Presheaf::representable(Flavor::Cubical, 0, 2), 2).unwrap();
        let d0 = Presheaf::representable(Flavor::Simplicial, 0, 2);
        assert!(find_isomorphism(pt.object.as_ref().clone(), d0).unwrap().is_some());
        assert!(apply_int(Presheaf::representable(Flavor::Cubical, 0, 2), 3).is_err());
    }

    #[test]
    fn unit_on_simplex_is_iso() {
        let d2 = Presheaf::representable(Flavor::Simplicial, 2, 3);
        assert!(unit(d2).unwrap().is_iso());
    }

    #[test]
    fn counit_on_square() {
        let sq = Presheaf::representable(Flavor::Cubical, 2, 3);
        let e = counit(sq.clone()).unwrap();
        assert!(e.is_mono());
        let (d, t) = e.epi_failure().unwrap();
        assert!(d <= 2, "missed {} in dimension {d}", sq.name(d, t));
        let top = sq.index_of(2, "(max{1}, max{2})").unwrap();
        assert!(!e.components()[2].contains(&top));
    }

    #[test]
    fn comparison_for_points() {
        let pt = Presheaf::representable(Flavor::Simplicial, 0, 2);
        let d1 = Presheaf::representable(Flavor::Simplicial, 1, 2);
        assert!(product_comparison(pt.clone(), pt.clone(), 2).unwrap().is_iso());
        assert!(product_comparison(d1.clone(), pt, 2).unwrap().is_iso());
        let c = product_comparison(d1.clone(), d1, 2).unwrap();
        assert!(c.is_mono() && !c.is_epi());
    }
}
