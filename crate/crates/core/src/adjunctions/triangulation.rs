//! Triangulation `T : cSet → sSet` and its right adjoint `U`, both through the
//! nerves `(Δ^1)^n` of the posets `[1]^n`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::boxcat::BoxMap;
use crate::error::{Error, Result};
use crate::presheaf::{action_dims, MapSearch, Presheaf, Quotient};
use crate::site::{Flavor, Generator};

/// A chain `p_0 ≤ … ≤ p_k` of points of `[1]^n`, as bitmasks.
type Chain = Vec<u32>;

fn chains(n: usize, k: usize) -> Vec<Chain> {
    fn extend(n: usize, len: usize, acc: &mut Chain, out: &mut Vec<Chain>) {
        if acc.len() == len {
            out.push(acc.clone());
            return;
        }
        let last = acc.last().copied();
        for p in 0..1u32 << n {
            if last.is_none_or(|q| q & p == q) {
                acc.push(p);
                extend(n, len, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n, k + 1, &mut Vec::new(), &mut out);
    out
}

fn chain_name(n: usize, c: &Chain) -> String {
    let points: Vec<String> = c
        .iter()
        .map(|p| if n == 0 { "*".to_string() } else { (0..n).map(|i| if p >> i & 1 == 1 { '1' } else { '0' }).collect() })
        .collect();
    format!("[{}]", points.join(","))
}

/// Precomposes a chain with a simplicial generator.
fn restrict(c: &Chain, g: Generator) -> Chain {
    g.simplex_map().images().iter().map(|&v| c[v]).collect()
}

/// The nerve `(Δ^1)^n` of `[1]^n`, truncated at `truncation`.
pub fn cube_nerve(n: usize, truncation: usize) -> Presheaf {
    let cells = (0..=truncation).map(|k| chains(n, k)).collect();
    Presheaf::from_fn(Flavor::Simplicial, truncation, cells, |_, c| chain_name(n, c), |g, c| restrict(c, g))
        .expect("chains are closed under faces and repeats")
}

/// `(a, x, c)` with `x ∈ X_a` and `c` a chain in `[1]^a`.
type Element = (usize, usize, Chain);

/// `TX` up to simplicial dimension `truncation`, using every cell of `X`.
///
/// Cells of `X` above its truncation are not seen; when they are all
/// degenerate they add no new classes.
pub fn triangulate(x: &Presheaf, truncation: usize) -> Result<Presheaf> {
    if x.flavor() != Flavor::Cubical {
        return Err(Error::Mismatch("triangulation takes a cubical presheaf".into()));
    }
    let top = x.truncation();
    let shapes: Vec<Vec<Vec<Chain>>> = (0..=truncation).map(|k| (0..=top).map(|a| chains(a, k)).collect()).collect();
    let elements: Vec<Vec<Element>> = shapes
        .iter()
        .map(|cs| {
            (0..=top)
                .flat_map(|a| (0..x.count(a)).flat_map(move |xc| cs[a].iter().map(move |c| (a, xc, c.clone()))))
                .collect()
        })
        .collect();
    let index: Vec<HashMap<&Element, usize>> =
        elements.iter().map(|es| es.iter().enumerate().map(|(i, e)| (e, i)).collect()).collect();
    let sizes: Vec<usize> = elements.iter().map(Vec::len).collect();
    let mut q = Quotient::new(Flavor::Simplicial, truncation, &sizes);

    // (X(v)x, c) ~ (x, v∘c).
    for g in Flavor::Cubical.generators_upto(top) {
        let v: BoxMap = g.box_map();
        let (vd, vc) = (v.dom(), v.cod());
        for (k, cs) in shapes.iter().enumerate() {
            for c in &cs[vd] {
                let pushed: Chain = c.iter().map(|&p| v.apply(p)).collect();
                for xc in 0..x.count(vc) {
                    let e1 = index[k][&(vd, x.act(&g, xc), c.clone())];
                    let e2 = index[k][&(vc, xc, pushed.clone())];
                    q.union(k, e1, e2);
                }
            }
        }
    }
    let classes = q.finish(
        |g, e| {
            let (from, to) = action_dims(&g);
            let (a, xc, c) = &elements[from][e];
            index[to][&(*a, *xc, restrict(c, g))]
        },
        |k, e| {
            let (a, xc, c) = &elements[k][e];
            format!("{}:{}", x.name(*a, *xc), chain_name(*a, c))
        },
    )?;
    Ok(classes.presheaf)
}

/// `UX` up to cubical dimension `truncation`: the `n`-cells are the maps
/// `(Δ^1)^n → X`.
///
/// Maps are computed between truncations at the truncation of `X`, which must
/// be at least `truncation` for them to be the honest ones.
pub fn u_functor(x: impl Into<Arc<Presheaf>>, truncation: usize) -> Result<Presheaf> {
    let x = x.into();
    if x.flavor() != Flavor::Simplicial {
        return Err(Error::Mismatch("U takes a simplicial presheaf".into()));
    }
    if truncation > x.truncation() {
        return Err(Error::Truncation(format!(
            "U up to dimension {truncation} needs X truncated at least that high, got {}",
            x.truncation()
        )));
    }
    let t = x.truncation();
    let nerves: Vec<Arc<Presheaf>> = (0..=truncation).map(|n| Arc::new(cube_nerve(n, t))).collect();
    let cells: Vec<Vec<Vec<Vec<usize>>>> = nerves
        .iter()
        .map(|nv| MapSearch::new(nv.clone(), x.clone()).map(|s| s.all().into_iter().map(|f| f.components().to_vec()).collect()))
        .collect::<Result<_>>()?;
    // A map out of (Δ^1)^n is determined by its maximal chains.
    let maximal: Vec<Vec<usize>> =
        nerves.iter().enumerate().map(|(n, nv)| if n <= t { nv.nondegenerate(n) } else { Vec::new() }).collect();
    // Pushing chains forward along each generator, as index tables.
    let push: HashMap<Generator, Vec<Vec<usize>>> = Flavor::Cubical
        .generators_upto(truncation)
        .into_iter()
        .map(|g| {
            let v = g.box_map();
            let (vd, vc) = (v.dom(), v.cod());
            let table = (0..=t)
                .map(|k| {
                    chains(vd, k)
                        .iter()
                        .map(|c| {
                            let pushed: Chain = c.iter().map(|&p| v.apply(p)).collect();
                            nerves[vc].index_of(k, &chain_name(vc, &pushed)).expect("pushed chain exists")
                        })
                        .collect()
                })
                .collect();
            (g, table)
        })
        .collect();
    Presheaf::from_fn(
        Flavor::Cubical,
        truncation,
        cells,
        |n, comps| {
            let names: Vec<&str> = maximal[n].iter().map(|&c| x.name(n, comps[n][c])).collect();
            format!("<{}>", names.join(","))
        },
        |g, comps| push[&g].iter().enumerate().map(|(k, tab)| tab.iter().map(|&c| comps[k][c]).collect()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::find_isomorphism;

    #[test]
    fn nerve_counts() {
        // Multichains of length k + 1 in [1]^n: (k + 2)^n.
        for n in 0..=3 {
            let nv = cube_nerve(n, 3);
            for k in 0..=3 {
                assert_eq!(nv.count(k), (k + 2).pow(n as u32));
            }
            assert_eq!(nv.top_dimension(), Some(n));
            assert!(nv.validate().is_empty());
        }
        assert_eq!(cube_nerve(2, 2).nondegenerate_counts(), vec![4, 5, 2]);
    }

    #[test]
    fn triangulated_cubes_are_nerves() {
        for n in 0..=2 {
            let t = triangulate(&Presheaf::representable(Flavor::Cubical, n, n), 3).unwrap();
            assert!(find_isomorphism(t, cube_nerve(n, 3)).unwrap().is_some(), "T□^{n}");
        }
    }

    #[test]
    fn u_of_point_is_terminal() {
        let u = u_functor(Presheaf::representable(Flavor::Simplicial, 0, 2), 2).unwrap();
        assert_eq!(u.counts(), vec![1, 1, 1]);
    }

    #[test]
    fn u_of_interval() {
        let u = u_functor(Presheaf::representable(Flavor::Simplicial, 1, 2), 1).unwrap();
        // Vertices and monotone maps [1] → [1].
        assert_eq!(u.counts(), vec![2, 3]);
    }
}
