use std::sync::Arc;

use super::quotient::Quotient;
use super::{Presheaf, PresheafMap};
use crate::error::{Error, Result};

/// A pushout object with its two coprojections.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<Presheaf>,
    pub in_b: PresheafMap,
    pub in_c: PresheafMap,
}

/// The pushout of `B ← A → C`, computed degreewise.
///
/// A class containing cells of `B` is named after its first `B` cell.
pub fn pushout(f: &PresheafMap, g: &PresheafMap) -> Result<Pushout> {
    if *f.source() != *g.source() {
        return Err(Error::Mismatch("the two legs of a span must share their source".into()));
    }
    let (a, b, c) = (f.source(), f.target(), g.target());
    b.same_shape(c)?;
    let n = a.truncation();
    let offsets: Vec<usize> = (0..=n).map(|d| b.count(d)).collect();
    let sizes: Vec<usize> = (0..=n).map(|d| b.count(d) + c.count(d)).collect();
    let mut q = Quotient::new(a.flavor(), n, &sizes);
    for d in 0..=n {
        for x in 0..a.count(d) {
            q.union(d, f.apply(d, x), offsets[d] + g.apply(d, x));
        }
    }
    let classes = q.finish(
        |gen, e| {
            let (from, to) = super::action_dims(&gen);
            if e < offsets[from] {
                b.act(&gen, e)
            } else {
                offsets[to] + c.act(&gen, e - offsets[from])
            }
        },
        |d, e| if e < offsets[d] { b.name(d, e).to_string() } else { c.name(d, e - offsets[d]).to_string() },
    )?;
    let object = Arc::new(classes.presheaf);
    let in_b = (0..=n).map(|d| classes.class_of[d][..offsets[d]].to_vec()).collect();
    let in_c = (0..=n).map(|d| classes.class_of[d][offsets[d]..].to_vec()).collect();
    Ok(Pushout {
        in_b: PresheafMap::new_unchecked(b.clone(), object.clone(), in_b),
        in_c: PresheafMap::new_unchecked(c.clone(), object.clone(), in_c),
        object,
    })
}

/// The map from the pushout of `f, g` to the corner of a commuting square
/// `h ∘ f = k ∘ g`.
pub fn pushout_comparison(f: &PresheafMap, g: &PresheafMap, h: &PresheafMap, k: &PresheafMap) -> Result<PresheafMap> {
    let hf = h.compose(f)?;
    let kg = k.compose(g)?;
    if *hf.target() != *kg.target() {
        return Err(Error::Precondition("the square has two different corners".into()));
    }
    if hf.components() != kg.components() {
        return Err(Error::Precondition("the square does not commute".into()));
    }
    let p = pushout(f, g)?;
    let d = h.target();
    let n = d.truncation();
    let mut comps: Vec<Vec<usize>> = (0..=n).map(|dim| vec![usize::MAX; p.object.count(dim)]).collect();
    for dim in 0..=n {
        for (x, &cls) in p.in_b.components()[dim].iter().enumerate() {
            comps[dim][cls] = h.apply(dim, x);
        }
        for (x, &cls) in p.in_c.components()[dim].iter().enumerate() {
            comps[dim][cls] = k.apply(dim, x);
        }
    }
    PresheafMap::new(p.object, d.clone(), comps)
}

/// Whether a commuting square is a pushout: the comparison map from the
/// computed pushout is an isomorphism.
pub fn is_pushout_square(f: &PresheafMap, g: &PresheafMap, h: &PresheafMap, k: &PresheafMap) -> Result<bool> {
    Ok(pushout_comparison(f, g, h, k)?.is_iso())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::site::Flavor;

    fn endpoint(e: u8) -> PresheafMap {
        let pt = Arc::new(Presheaf::representable(Flavor::Cubical, 0, 2));
        let i = Arc::new(Presheaf::representable(Flavor::Cubical, 1, 2));
        let name = format!("({e})");
        PresheafMap::from_fn(pt, i.clone(), |d, _| i.index_of(d, &name).unwrap()).unwrap()
    }

    #[test]
    fn wedge_of_two_intervals() {
        let p = pushout(&endpoint(1), &endpoint(0)).unwrap();
        assert_eq!(p.object.count(0), 3);
        assert_eq!(p.object.nondegenerate(1).len(), 2);
        assert!(p.in_b.is_mono() && p.in_c.is_mono());
        assert!(p.object.validate().is_empty());
    }

    #[test]
    fn pushout_along_identity() {
        let f = endpoint(0);
        let id = PresheafMap::identity(f.source().clone());
        let p = pushout(&id, &f).unwrap();
        assert_eq!(p.object.counts(), f.target().counts());
        assert!(p.in_c.is_iso());
    }

    #[test]
    fn pushout_of_empty_is_coproduct() {
        let b = Arc::new(Presheaf::representable(Flavor::Cubical, 1, 2));
        let c = Arc::new(Presheaf::representable(Flavor::Cubical, 0, 2));
        let p = pushout(&PresheafMap::from_empty(b.clone()), &PresheafMap::from_empty(c.clone())).unwrap();
        let sum: Vec<usize> = b.counts().iter().zip(c.counts()).map(|(x, y)| x + y).collect();
        assert_eq!(p.object.counts(), sum);
    }

    #[test]
    fn square_with_extra_point_is_not_a_pushout() {
        let (f, g) = (endpoint(1), endpoint(0));
        let p = pushout(&f, &g).unwrap();
        assert!(is_pushout_square(&f, &g, &p.in_b, &p.in_c).unwrap());
        let pt = Arc::new(Presheaf::representable(Flavor::Cubical, 0, 2));
        let bigger = pushout(&PresheafMap::from_empty(p.object.clone()), &PresheafMap::from_empty(pt)).unwrap();
        let h = bigger.in_b.compose(&p.in_b).unwrap();
        let k = bigger.in_b.compose(&p.in_c).unwrap();
        assert!(!is_pushout_square(&f, &g, &h, &k).unwrap());
        // in_b ∘ f and in_b ∘ g pick different endpoints.
        assert!(matches!(pushout_comparison(&f, &g, &p.in_b, &p.in_b), Err(Error::Precondition(_))));
    }
}
