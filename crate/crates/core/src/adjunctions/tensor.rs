//! The geometric product of cubical presheaves, as a coend over pairs of
//! cells and box maps into the summed dimension.

use std::collections::HashMap;

use crate::boxcat::BoxMap;
use crate::error::{Error, Result};
use crate::presheaf::{action_dims, Presheaf, Quotient};
use crate::site::Flavor;

/// `(a, x, b, y, w)` with `x ∈ X_a`, `y ∈ Y_b` and `w : [1]^p → [1]^{a+b}`.
type Element = (usize, usize, usize, usize, BoxMap);

/// `X ⊗ Y` up to dimension `truncation`.
///
/// Pairs of cells with `a + b ≤ bound` enter the coend. Every element of
/// dimension `p` is equivalent to one with `a + b ≤ p`, so `bound =
/// truncation` already reaches every class; a larger bound only adds
/// relations, which the tests check make no difference on small inputs.
pub fn geometric_product(x: &Presheaf, y: &Presheaf, truncation: usize, bound: usize) -> Result<Presheaf> {
    if x.flavor() != Flavor::Cubical || y.flavor() != Flavor::Cubical {
        return Err(Error::Mismatch("the geometric product is cubical".into()));
    }
    if bound > x.truncation() || bound > y.truncation() {
        return Err(Error::Truncation(format!(
            "bound {bound} needs both factors truncated at least that high, got {} and {}",
            x.truncation(),
            y.truncation()
        )));
    }
    let shapes: Vec<Vec<Vec<BoxMap>>> =
        (0..=truncation).map(|p| (0..=bound).map(|s| BoxMap::enumerate(p, s)).collect()).collect();
    let mut elements: Vec<Vec<Element>> = Vec::with_capacity(truncation + 1);
    for ws in &shapes {
        let mut es = Vec::new();
        for a in 0..=bound {
            for b in 0..=bound - a {
                for xc in 0..x.count(a) {
                    for yc in 0..y.count(b) {
                        es.extend(ws[a + b].iter().map(|w| (a, xc, b, yc, w.clone())));
                    }
                }
            }
        }
        elements.push(es);
    }
    let index: Vec<HashMap<&Element, usize>> =
        elements.iter().map(|es| es.iter().enumerate().map(|(i, e)| (e, i)).collect()).collect();
    let sizes: Vec<usize> = elements.iter().map(Vec::len).collect();
    let mut q = Quotient::new(Flavor::Cubical, truncation, &sizes);

    // (X(v)x, y, w) ~ (x, y, (v ⊗ 1)w) and symmetrically in the second slot.
    for g in Flavor::Cubical.generators_upto(bound) {
        let v = g.box_map();
        let (vd, vc) = (v.dom(), v.cod());
        let (from, _) = action_dims(&g);
        debug_assert_eq!(from, vc);
        for other in 0..=bound.saturating_sub(vd.max(vc)) {
            let left = v.tensor(&BoxMap::identity(other));
            let right = BoxMap::identity(other).tensor(&v);
            for p in 0..=truncation {
                for w in &shapes[p][vd + other] {
                    let lw = left.compose_unchecked(w);
                    let rw = right.compose_unchecked(w);
                    for c in 0..x.count(vc) {
                        let xc = x.act(&g, c);
                        for o in 0..y.count(other) {
                            let e1 = index[p][&(vd, xc, other, o, w.clone())];
                            let e2 = index[p][&(vc, c, other, o, lw.clone())];
                            q.union(p, e1, e2);
                        }
                    }
                    for c in 0..y.count(vc) {
                        let yc = y.act(&g, c);
                        for o in 0..x.count(other) {
                            let e1 = index[p][&(other, o, vd, yc, w.clone())];
                            let e2 = index[p][&(other, o, vc, c, rw.clone())];
                            q.union(p, e1, e2);
                        }
                    }
                }
            }
        }
    }
    let classes = q.finish(
        |g, e| {
            let (from, to) = action_dims(&g);
            let (a, xc, b, yc, w) = &elements[from][e];
            index[to][&(*a, *xc, *b, *yc, w.compose_unchecked(&g.box_map()))]
        },
        |p, e| {
            let (a, xc, b, yc, w) = &elements[p][e];
            format!("{}⊗{}|{}", x.name(*a, *xc), y.name(*b, *yc), w)
        },
    )?;
    Ok(classes.presheaf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::find_isomorphism;

    fn cube(n: usize, t: usize) -> Presheaf {
        Presheaf::representable(Flavor::Cubical, n, t)
    }

    #[test]
    fn point_is_a_unit() {
        let sq = cube(2, 3);
        let p = geometric_product(&cube(0, 3), &sq, 3, 3).unwrap();
        assert!(find_isomorphism(p, sq.clone()).unwrap().is_some());
        let p = geometric_product(&sq, &cube(0, 3), 3, 3).unwrap();
        assert!(find_isomorphism(p, sq).unwrap().is_some());
    }

    #[test]
    fn intervals_make_a_square() {
        let i = cube(1, 2);
        let p = geometric_product(&i, &i, 2, 2).unwrap();
        assert_eq!(p.counts(), cube(2, 2).counts());
        assert!(find_isomorphism(p, cube(2, 2)).unwrap().is_some());
    }

    #[test]
    fn empty_factor() {
        let e = Presheaf::empty(Flavor::Cubical, 2);
        assert!(geometric_product(&e, &cube(1, 2), 2, 2).unwrap().is_empty());
    }

    #[test]
    fn bound_is_checked() {
        assert!(geometric_product(&cube(1, 1), &cube(1, 2), 2, 2).is_err());
    }
}
