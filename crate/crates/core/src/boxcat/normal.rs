//! Unique factorization of box maps as faces after connections after
//! degeneracies.
//!
//! The three index lists read as follows:
//!
//! * `degeneracies` lists the forgotten domain coordinates in descending
//!   order. They are applied in that order, so each index still refers to the
//!   original coordinate when its degeneracy runs.
//! * `connections` is ascending; the connections are applied from the last
//!   entry to the first.
//! * `faces` is descending; the faces are applied from the last entry to the
//!   first, so the final constant coordinates sit exactly at the listed
//!   positions.

use std::fmt;

use super::cube::{BoxMap, Coord};
use crate::error::{Error, Result};
use crate::site::{render_word, Generator};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub dom: usize,
    pub cod: usize,
    pub faces: Vec<(usize, u8)>,
    pub connections: Vec<usize>,
    pub degeneracies: Vec<usize>,
}

impl NormalForm {
    /// Validates orderings and index ranges.
    pub fn new(
        dom: usize,
        cod: usize,
        faces: Vec<(usize, u8)>,
        connections: Vec<usize>,
        degeneracies: Vec<usize>,
    ) -> Result<NormalForm> {
        let nf = NormalForm { dom, cod, faces, connections, degeneracies };
        nf.check()?;
        Ok(nf)
    }

    fn check(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidMap(format!("normal form {self}: {what}")));
        if !self.degeneracies.windows(2).all(|w| w[0] > w[1]) {
            return bad("degeneracy indices must strictly decrease");
        }
        if self.degeneracies.iter().any(|&i| i == 0 || i > self.dom) {
            return bad("degeneracy index out of range");
        }
        let after_degs = self.dom - self.degeneracies.len();
        if !self.connections.windows(2).all(|w| w[0] < w[1]) {
            return bad("connection indices must strictly increase");
        }
        if self.connections.iter().any(|&j| j == 0 || j >= after_degs) {
            return bad("connection index out of range");
        }
        let after_conns = after_degs - self.connections.len();
        if !self.faces.windows(2).all(|w| w[0].0 > w[1].0) {
            return bad("face indices must strictly decrease");
        }
        if self.faces.iter().any(|&(k, e)| k == 0 || k > self.cod || e > 1) {
            return bad("face index or sign out of range");
        }
        if after_conns + self.faces.len() != self.cod {
            return bad("dimension count does not add up");
        }
        Ok(())
    }

    /// The factorization as generators in application order.
    pub fn word(&self) -> Vec<Generator> {
        let mut word = Vec::new();
        let mut dim = self.dom;
        for &i in &self.degeneracies {
            word.push(Generator::cube_deg(dim, i));
            dim -= 1;
        }
        for &j in self.connections.iter().rev() {
            word.push(Generator::cube_conn(dim, j));
            dim -= 1;
        }
        for &(k, e) in self.faces.iter().rev() {
            dim += 1;
            word.push(Generator::cube_face(dim, k, e));
        }
        word
    }

    /// Composes the factorization back into coordinate form.
    pub fn evaluate(&self) -> BoxMap {
        self.word()
            .iter()
            .fold(BoxMap::identity(self.dom), |acc, g| g.box_map().compose_unchecked(&acc))
    }

    /// Every well-formed normal form between the given dimensions.
    pub fn all(m: usize, n: usize) -> Vec<NormalForm> {
        let mut out = Vec::new();
        for degs in subsets(m) {
            let after_degs = m - degs.len();
            let conn_pool = after_degs.saturating_sub(1);
            for conns in subsets(conn_pool) {
                let after_conns = after_degs - conns.len();
                if after_conns > n {
                    continue;
                }
                let t = n - after_conns;
                for faces in subsets(n).into_iter().filter(|f| f.len() == t) {
                    for signs in 0u32..(1 << t) {
                        let mut fs: Vec<(usize, u8)> = faces
                            .iter()
                            .enumerate()
                            .map(|(q, &k)| (k, ((signs >> q) & 1) as u8))
                            .collect();
                        fs.reverse();
                        let mut ds = degs.clone();
                        ds.reverse();
                        out.push(NormalForm { dom: m, cod: n, faces: fs, connections: conns.clone(), degeneracies: ds });
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// All subsets of `{1..n}` as ascending lists.
fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .map(|bits| (1..=n).filter(|i| bits & (1 << (i - 1)) != 0).collect())
        .collect()
}

impl BoxMap {
    /// Reads the factorization off the coordinates.
    pub fn normal_form(&self) -> NormalForm {
        let used = self.coords().iter().fold(0u32, |acc, c| match c {
            Coord::Max(a) => acc | a.bits(),
            _ => acc,
        });
        let mut degeneracies: Vec<usize> = (1..=self.dom()).filter(|i| used & (1 << (i - 1)) == 0).collect();
        degeneracies.reverse();

        // After forgetting unused coordinates the supports tile 1..=D in order.
        let mut connections = Vec::new();
        let mut next = 1usize;
        for c in self.coords() {
            if let Coord::Max(a) = c {
                let size = a.len();
                connections.extend(next..next + size - 1);
                next += size;
            }
        }

        let mut faces: Vec<(usize, u8)> = self
            .coords()
            .iter()
            .enumerate()
            .filter_map(|(j, c)| match c {
                Coord::Const0 => Some((j + 1, 0)),
                Coord::Const1 => Some((j + 1, 1)),
                Coord::Max(_) => None,
            })
            .collect();
        faces.reverse();

        let nf = NormalForm { dom: self.dom(), cod: self.cod(), faces, connections, degeneracies };
        debug_assert_eq!(&nf.evaluate(), self, "normal form does not reproduce {self}");
        nf
    }

    /// Writes a box map as the composite of a word given in application order.
    pub fn from_word(dom: usize, word: &[Generator]) -> Result<BoxMap> {
        let mut acc = BoxMap::identity(dom);
        for g in word {
            g.check(crate::Flavor::Cubical)?;
            acc = g.box_map().compose(&acc)?;
        }
        Ok(acc)
    }

    /// Parses an applicative word such as `d1^1 g1 s2` acting on `[1]^dom`.
    ///
    /// The rightmost generator is applied first; superscripts are inferred.
    pub fn parse_word(dom: usize, text: &str) -> Result<BoxMap> {
        let tokens: Vec<&str> = text.split_whitespace().filter(|t| *t != "id").collect();
        let mut dim = dom;
        let mut word = Vec::with_capacity(tokens.len());
        for tok in tokens.iter().rev() {
            let bad = || Error::parse(*tok, "expected d{i}^{e}, s{i} or g{i}");
            let split = tok.chars().next().map_or(0, char::len_utf8);
            let (head, rest) = tok.split_at(split);
            let g = match head {
                "d" => {
                    let (i, e) = rest.split_once('^').ok_or_else(bad)?;
                    let i: usize = i.parse().map_err(|_| bad())?;
                    let e: u8 = e.parse().map_err(|_| bad())?;
                    dim += 1;
                    Generator::cube_face(dim, i, e)
                }
                "s" | "g" => {
                    let i: usize = rest.parse().map_err(|_| bad())?;
                    if dim == 0 {
                        return Err(Error::Range { kind: if head == "s" { "degeneracy" } else { "connection" }, detail: format!("{tok} on [1]^0") });
                    }
                    let g = if head == "s" { Generator::cube_deg(dim, i) } else { Generator::cube_conn(dim, i) };
                    dim -= 1;
                    g
                }
                _ => return Err(bad()),
            };
            word.push(g);
        }
        BoxMap::from_word(dom, &word)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_word(&self.word()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn single_connection() {
        let nf = BoxMap::connection(2, 1).unwrap().normal_form();
        assert!(nf.faces.is_empty());
        assert_eq!(nf.connections, vec![1]);
        assert!(nf.degeneracies.is_empty());
    }

    #[test]
    fn composite_connections() {
        let f = BoxMap::connection(3, 2).unwrap().compose(&BoxMap::connection(4, 1).unwrap()).unwrap();
        let nf = f.normal_form();
        assert_eq!(nf.connections, vec![1, 3]);
        assert!(nf.faces.is_empty() && nf.degeneracies.is_empty());
    }

    #[test]
    fn constant_one_on_interval() {
        let f = BoxMap::parse(1, "(1)").unwrap();
        let nf = f.normal_form();
        assert_eq!(nf.faces, vec![(1, 1)]);
        assert!(nf.connections.is_empty());
        assert_eq!(nf.degeneracies, vec![1]);
    }

    // Every factorization of a map [1] -> [1] by strictly ordered generator
    // lists, found by exhausting the lists, yields exactly one per map.
    #[test]
    fn interval_factorizations_are_unique() {
        let mut hits: HashMap<BoxMap, usize> = HashMap::new();
        for nf in NormalForm::all(1, 1) {
            *hits.entry(nf.evaluate()).or_default() += 1;
        }
        assert_eq!(hits.len(), 3);
        assert!(hits.values().all(|&c| c == 1));
    }

    #[test]
    fn consecutive_degeneracies_exist() {
        let f = BoxMap::enumerate(2, 0).pop().unwrap();
        let nf = f.normal_form();
        assert_eq!(nf.degeneracies, vec![2, 1]);
        assert_eq!(nf.evaluate(), f);
    }

    #[test]
    fn invalid_normal_forms_rejected() {
        assert!(NormalForm::new(2, 0, vec![], vec![], vec![1, 2]).is_err());
        assert!(NormalForm::new(2, 1, vec![], vec![1], vec![]).is_ok());
        assert!(NormalForm::new(2, 1, vec![], vec![2], vec![]).is_err());
        assert!(NormalForm::new(1, 1, vec![(1, 1)], vec![], vec![1]).is_ok());
        assert!(NormalForm::new(1, 2, vec![(1, 1)], vec![], vec![1]).is_err());
    }

    #[test]
    fn word_syntax_round_trip() {
        for f in BoxMap::enumerate(2, 3) {
            let text = f.normal_form().to_string();
            assert_eq!(BoxMap::parse_word(2, &text).unwrap(), f, "{text}");
        }
        assert_eq!(BoxMap::parse_word(1, "d1^1 s1").unwrap().to_string(), "(1)");
        assert!(BoxMap::parse_word(0, "s1").is_err());
        assert!(BoxMap::parse_word(1, "x1").is_err());
    }
}
