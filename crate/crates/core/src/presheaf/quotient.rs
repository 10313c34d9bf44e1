//! Presheaves presented as quotients of graded sets by a congruence.

use std::collections::HashSet;

use petgraph::unionfind::UnionFind;

use super::{action_dims, Presheaf};
use crate::error::Result;
use crate::site::Flavor;
use crate::site::Generator;

/// Graded elements with a union–find partition per dimension.
pub(crate) struct Quotient {
    flavor: Flavor,
    truncation: usize,
    parts: Vec<UnionFind<usize>>,
}

/// The cells of a finished quotient and the class of every element.
pub(crate) struct Classes {
    pub presheaf: Presheaf,
    pub class_of: Vec<Vec<usize>>,
    pub reps: Vec<Vec<usize>>,
}

impl Quotient {
    pub fn new(flavor: Flavor, truncation: usize, sizes: &[usize]) -> Quotient {
        assert_eq!(sizes.len(), truncation + 1);
        Quotient { flavor, truncation, parts: sizes.iter().map(|&n| UnionFind::new(n)).collect() }
    }

    pub fn union(&mut self, dim: usize, a: usize, b: usize) {
        self.parts[dim].union(a, b);
    }

    /// Closes the partition into a congruence for `act` and builds the
    /// quotient presheaf. Cells are ordered by their first element and named
    /// after it; clashing names get primes appended.
    pub fn finish<A, N>(mut self, act: A, name: N) -> Result<Classes>
    where
        A: Fn(Generator, usize) -> usize,
        N: Fn(usize, usize) -> String,
    {
        let gens = self.flavor.generators_upto(self.truncation);
        loop {
            let mut changed = false;
            for &g in &gens {
                let (from, to) = action_dims(&g);
                let mut image = vec![usize::MAX; self.parts[from].len()];
                for e in 0..self.parts[from].len() {
                    let r = self.parts[from].find_mut(e);
                    let t = act(g, e);
                    if image[r] == usize::MAX {
                        image[r] = t;
                    } else if self.parts[to].union(image[r], t) {
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        let mut class_of = Vec::with_capacity(self.parts.len());
        let mut reps = Vec::with_capacity(self.parts.len());
        for part in &mut self.parts {
            let mut slot = vec![usize::MAX; part.len()];
            let mut cls = Vec::with_capacity(part.len());
            let mut rs = Vec::new();
            for e in 0..part.len() {
                let r = part.find_mut(e);
                if slot[r] == usize::MAX {
                    slot[r] = rs.len();
                    rs.push(e);
                }
                cls.push(slot[r]);
            }
            class_of.push(cls);
            reps.push(rs);
        }

        let names = reps
            .iter()
            .enumerate()
            .map(|(d, rs)| {
                let mut seen = HashSet::new();
                rs.iter()
                    .map(|&e| {
                        let mut n = name(d, e);
                        while !seen.insert(n.clone()) {
                            n.push('\'');
                        }
                        n
                    })
                    .collect()
            })
            .collect();
        let actions = gens
            .iter()
            .map(|&g| {
                let (from, to) = action_dims(&g);
                (g, reps[from].iter().map(|&e| class_of[to][act(g, e)]).collect())
            })
            .collect();
        let presheaf = Presheaf::from_tables(self.flavor, self.truncation, names, actions)?;
        Ok(Classes { presheaf, class_of, reps })
    }
}
