use std::sync::Arc;

use super::{action_dims, CellRef, Presheaf, PresheafMap};
use crate::error::{Error, Result};
use crate::site::Flavor;

/// A cartesian product with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: Arc<Presheaf>,
    pub proj_x: PresheafMap,
    pub proj_y: PresheafMap,
}

/// The pointwise product; cells are pairs in lexicographic order.
pub fn product(x: impl Into<Arc<Presheaf>>, y: impl Into<Arc<Presheaf>>) -> Result<Product> {
    let (x, y) = (x.into(), y.into());
    x.same_shape(&y)?;
    let n = x.truncation();
    let cells: Vec<Vec<(usize, usize)>> =
        (0..=n).map(|d| (0..x.count(d)).flat_map(|a| (0..y.count(d)).map(move |b| (a, b))).collect()).collect();
    let object = Arc::new(Presheaf::from_fn(
        x.flavor(),
        n,
        cells.clone(),
        |d, &(a, b)| format!("<{}|{}>", x.name(d, a), y.name(d, b)),
        |g, &(a, b)| (x.act(&g, a), y.act(&g, b)),
    )?);
    let proj_x = cells.iter().map(|cs| cs.iter().map(|p| p.0).collect()).collect();
    let proj_y = cells.iter().map(|cs| cs.iter().map(|p| p.1).collect()).collect();
    Ok(Product {
        proj_x: PresheafMap::new_unchecked(object.clone(), x, proj_x),
        proj_y: PresheafMap::new_unchecked(object.clone(), y, proj_y),
        object,
    })
}

/// The terminal presheaf: one cell in every dimension.
pub fn terminal(flavor: Flavor, truncation: usize) -> Presheaf {
    let cells = vec![vec![()]; truncation + 1];
    Presheaf::from_fn(flavor, truncation, cells, |_, _| "*".to_string(), |_, _| ())
        .expect("a point is closed under every action")
}

/// The smallest sub-presheaf containing the given cells, with its inclusion.
///
/// Surviving cells keep their names and relative order.
pub fn subobject(x: impl Into<Arc<Presheaf>>, generators: &[CellRef]) -> Result<(Arc<Presheaf>, PresheafMap)> {
    let x = x.into();
    let n = x.truncation();
    let mut keep: Vec<Vec<bool>> = (0..=n).map(|d| vec![false; x.count(d)]).collect();
    let mut stack = Vec::new();
    for c in generators {
        if c.dim > n || c.index >= x.count(c.dim) {
            return Err(Error::Precondition(format!("no cell {} in dimension {}", c.index, c.dim)));
        }
        stack.push(*c);
    }
    while let Some(c) = stack.pop() {
        if std::mem::replace(&mut keep[c.dim][c.index], true) {
            continue;
        }
        for (g, table) in x.actions() {
            let (from, to) = action_dims(g);
            if from == c.dim && !keep[to][table[c.index]] {
                stack.push(CellRef::new(to, table[c.index]));
            }
        }
    }
    let kept: Vec<Vec<usize>> =
        keep.iter().map(|k| k.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()).collect();
    let mut position: Vec<Vec<usize>> = (0..=n).map(|d| vec![usize::MAX; x.count(d)]).collect();
    for (d, ks) in kept.iter().enumerate() {
        for (p, &c) in ks.iter().enumerate() {
            position[d][c] = p;
        }
    }
    let names = kept.iter().enumerate().map(|(d, ks)| ks.iter().map(|&c| x.name(d, c).to_string()).collect()).collect();
    let actions = x
        .actions()
        .iter()
        .map(|(g, table)| {
            let (from, to) = action_dims(g);
            (*g, kept[from].iter().map(|&c| position[to][table[c]]).collect())
        })
        .collect();
    let s = Arc::new(Presheaf::from_tables(x.flavor(), n, names, actions)?);
    let inclusion = PresheafMap::new_unchecked(s.clone(), x, kept);
    Ok((s, inclusion))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_interval_counts() {
        let d1 = Presheaf::representable(Flavor::Simplicial, 1, 3);
        let p = product(d1.clone(), d1).unwrap();
        assert_eq!(p.object.count(1), 9);
        assert_eq!(p.object.nondegenerate_counts(), vec![4, 5, 2, 0]);
        assert!(p.object.validate().is_empty());
    }

    #[test]
    fn product_with_terminal() {
        let sq = Presheaf::representable(Flavor::Cubical, 2, 2);
        let p = product(sq.clone(), terminal(Flavor::Cubical, 2)).unwrap();
        assert!(p.proj_x.is_iso());
    }

    #[test]
    fn open_box_from_three_edges() {
        let sq = Arc::new(Presheaf::representable(Flavor::Cubical, 2, 2));
        let edges: Vec<CellRef> = ["(0, max{1})", "(1, max{1})", "(max{1}, 0)"]
            .iter()
            .map(|n| CellRef::new(1, sq.index_of(1, n).unwrap()))
            .collect();
        let (s, inc) = subobject(sq, &edges).unwrap();
        assert_eq!(s.count(0), 4);
        assert_eq!(s.nondegenerate(1).len(), 3);
        assert!(s.nondegenerate(2).is_empty());
        assert!(inc.is_mono());
        assert!(s.validate().is_empty());
    }
}
