//! Generating maps of the two sites, □ (with connections) and Δ.
//!
//! A [`Generator`] doubles as the key of an action table in a presheaf: for a
//! face the table goes from dimension `dim` down to `dim - 1`, for a
//! degeneracy or connection it goes from `dim - 1` up to `dim`.

use std::fmt;

use crate::boxcat::{BoxMap, SimplexMap};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Cubical,
    Simplicial,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Cubical => "cubical",
            Flavor::Simplicial => "simplicial",
        }
    }

    /// Every generator whose larger object has dimension `dim`.
    pub fn generators_at(self, dim: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        if dim == 0 {
            return out;
        }
        match self {
            Flavor::Cubical => {
                for i in 1..=dim {
                    out.push(Generator::cube_face(dim, i, 0));
                    out.push(Generator::cube_face(dim, i, 1));
                }
                for i in 1..=dim {
                    out.push(Generator::cube_deg(dim, i));
                }
                for i in 1..dim {
                    out.push(Generator::cube_conn(dim, i));
                }
            }
            Flavor::Simplicial => {
                for i in 0..=dim {
                    out.push(Generator::simplex_face(dim, i));
                }
                for i in 0..dim {
                    out.push(Generator::simplex_deg(dim, i));
                }
            }
        }
        out
    }

    /// All generators with larger dimension in `1..=max_dim`, in key order.
    pub fn generators_upto(self, max_dim: usize) -> Vec<Generator> {
        let mut all: Vec<Generator> = (1..=max_dim).flat_map(|n| self.generators_at(n)).collect();
        all.sort();
        all
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Face,
    Deg,
    Conn,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Face => "face",
            Op::Deg => "deg",
            Op::Conn => "conn",
        }
    }

    pub fn parse(s: &str) -> Option<Op> {
        match s {
            "face" => Some(Op::Face),
            "deg" => Some(Op::Deg),
            "conn" => Some(Op::Conn),
            _ => None,
        }
    }
}

/// A generating map of □ or Δ, named by the dimension of its larger end.
///
/// Cubical indices are 1-based and faces carry a sign; simplicial indices are
/// 0-based and carry no sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub op: Op,
    pub dim: usize,
    pub index: usize,
    pub sign: Option<u8>,
}

impl Generator {
    pub fn cube_face(dim: usize, index: usize, sign: u8) -> Self {
        Generator { op: Op::Face, dim, index, sign: Some(sign) }
    }

    pub fn cube_deg(dim: usize, index: usize) -> Self {
        Generator { op: Op::Deg, dim, index, sign: None }
    }

    pub fn cube_conn(dim: usize, index: usize) -> Self {
        Generator { op: Op::Conn, dim, index, sign: None }
    }

    pub fn simplex_face(dim: usize, index: usize) -> Self {
        Generator { op: Op::Face, dim, index, sign: None }
    }

    pub fn simplex_deg(dim: usize, index: usize) -> Self {
        Generator { op: Op::Deg, dim, index, sign: None }
    }

    /// Dimension of the domain of the generating map in the site.
    pub fn site_dom(&self) -> usize {
        match self.op {
            Op::Face => self.dim - 1,
            Op::Deg | Op::Conn => self.dim,
        }
    }

    /// Dimension of the codomain of the generating map in the site.
    pub fn site_cod(&self) -> usize {
        match self.op {
            Op::Face => self.dim,
            Op::Deg | Op::Conn => self.dim - 1,
        }
    }

    /// Checks the index ranges for the given site.
    pub fn check(&self, flavor: Flavor) -> Result<()> {
        let ok = match (flavor, self.op) {
            (_, _) if self.dim == 0 => false,
            (Flavor::Cubical, Op::Face) => {
                matches!(self.sign, Some(0 | 1)) && (1..=self.dim).contains(&self.index)
            }
            (Flavor::Cubical, Op::Deg) => self.sign.is_none() && (1..=self.dim).contains(&self.index),
            (Flavor::Cubical, Op::Conn) => self.sign.is_none() && (1..self.dim).contains(&self.index),
            (Flavor::Simplicial, Op::Face) => self.sign.is_none() && self.index <= self.dim,
            (Flavor::Simplicial, Op::Deg) => self.sign.is_none() && self.index < self.dim,
            (Flavor::Simplicial, Op::Conn) => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Range { kind: self.op.name(), detail: format!("{flavor} generator {self:?}") })
        }
    }

    /// The cubical generator as a coordinate-form map.
    pub fn box_map(&self) -> BoxMap {
        match self.op {
            Op::Face => BoxMap::face(self.dim, self.index, self.sign.unwrap_or(0)),
            Op::Deg => BoxMap::degeneracy(self.dim, self.index),
            Op::Conn => BoxMap::connection(self.dim, self.index),
        }
        .expect("generator indices are range-checked at construction")
    }

    /// The simplicial generator as a monotone map.
    pub fn simplex_map(&self) -> SimplexMap {
        match self.op {
            Op::Face => SimplexMap::coface(self.dim, self.index),
            _ => SimplexMap::codegeneracy(self.dim - 1, self.index),
        }
        .expect("generator indices are range-checked at construction")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.op, self.sign) {
            (Op::Face, Some(e)) => write!(f, "d{}^{}", self.index, e),
            (Op::Face, None) => write!(f, "d{}", self.index),
            (Op::Deg, _) => write!(f, "s{}", self.index),
            (Op::Conn, _) => write!(f, "g{}", self.index),
        }
    }
}

/// Renders a word given in application order as an applicative composite.
pub fn render_word(word: &[Generator]) -> String {
    if word.is_empty() {
        return "id".to_string();
    }
    word.iter().rev().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}
