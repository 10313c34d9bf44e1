//! Monotone maps `[m] → [n]` of the simplex category.

use std::fmt;

use crate::error::{Error, Result};
use crate::site::Generator;

/// A monotone map `[dom] → [cod]`, stored by its images of `0..=dom`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexMap {
    dom: usize,
    cod: usize,
    images: Vec<usize>,
}

impl SimplexMap {
    pub fn new(cod: usize, images: Vec<usize>) -> Result<SimplexMap> {
        if images.is_empty() {
            return Err(Error::InvalidMap("a simplex map needs at least one image".into()));
        }
        if images.iter().any(|&v| v > cod) || !images.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::InvalidMap(format!("{images:?} is not a monotone map into [{cod}]")));
        }
        Ok(SimplexMap { dom: images.len() - 1, cod, images })
    }

    pub fn identity(n: usize) -> SimplexMap {
        SimplexMap { dom: n, cod: n, images: (0..=n).collect() }
    }

    /// The coface `d^i : [n-1] → [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Result<SimplexMap> {
        if n == 0 || i > n {
            return Err(Error::Range { kind: "face", detail: format!("d^{i} into [{n}]") });
        }
        let images = (0..n).map(|v| if v < i { v } else { v + 1 }).collect();
        Ok(SimplexMap { dom: n - 1, cod: n, images })
    }

    /// The codegeneracy `s^i : [n+1] → [n]` hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Result<SimplexMap> {
        if i > n {
            return Err(Error::Range { kind: "degeneracy", detail: format!("s^{i} onto [{n}]") });
        }
        let images = (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
        Ok(SimplexMap { dom: n + 1, cod: n, images })
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn is_injective(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.images[0] == 0
            && *self.images.last().unwrap() == self.cod
            && self.images.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &SimplexMap) -> Result<SimplexMap> {
        if f.cod != self.dom {
            return Err(Error::Composition(format!(
                "inner map lands in [{}] but outer map starts at [{}]",
                f.cod, self.dom
            )));
        }
        Ok(SimplexMap { dom: f.dom, cod: self.cod, images: f.images.iter().map(|&v| self.images[v]).collect() })
    }

    /// All monotone maps `[m] → [n]` in lexicographic order of images.
    pub fn enumerate(m: usize, n: usize) -> Vec<SimplexMap> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(m + 1);
        fn rec(m: usize, n: usize, lo: usize, current: &mut Vec<usize>, out: &mut Vec<SimplexMap>) {
            if current.len() == m + 1 {
                out.push(SimplexMap { dom: m, cod: n, images: current.clone() });
                return;
            }
            for v in lo..=n {
                current.push(v);
                rec(m, n, v, current, out);
                current.pop();
            }
        }
        rec(m, n, 0, &mut current, &mut out);
        out
    }

    /// Splits into a surjection followed by an injection, `self = δ ∘ η`.
    pub fn ez_split(&self) -> (SimplexMap, SimplexMap) {
        let mut distinct = self.images.clone();
        distinct.dedup();
        let k = distinct.len() - 1;
        let mut eta = Vec::with_capacity(self.dom + 1);
        let mut level = 0;
        for (p, &v) in self.images.iter().enumerate() {
            if p > 0 && v != self.images[p - 1] {
                level += 1;
            }
            eta.push(level);
        }
        (
            SimplexMap { dom: self.dom, cod: k, images: eta },
            SimplexMap { dom: k, cod: self.cod, images: distinct },
        )
    }

    /// Cofaces and codegeneracies in application order.
    pub fn word(&self) -> Vec<Generator> {
        let (eta, delta) = self.ez_split();
        let mut word = Vec::new();
        // η = s^{j_1} ∘ … ∘ s^{j_r} with j ascending: apply the largest first.
        let repeats: Vec<usize> =
            (0..eta.dom).filter(|&p| eta.images[p] == eta.images[p + 1]).collect();
        let mut dim = eta.dom;
        for &j in repeats.iter().rev() {
            word.push(Generator::simplex_deg(dim, j));
            dim -= 1;
        }
        // δ inserts the missing values in ascending order.
        let missing: Vec<usize> = (0..=delta.cod).filter(|v| !delta.images.contains(v)).collect();
        for &v in &missing {
            dim += 1;
            word.push(Generator::simplex_face(dim, v));
        }
        word
    }

    pub fn from_word(dom: usize, word: &[Generator]) -> Result<SimplexMap> {
        let mut acc = SimplexMap::identity(dom);
        for g in word {
            g.check(crate::Flavor::Simplicial)?;
            acc = g.simplex_map().compose(&acc)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] -> [{}] {}", self.dom, self.cod, self)
    }
}
