//! Maps of the box category with connections in coordinate form.
//!
//! A map `[1]^m → [1]^n` is stored as its `n` coordinate functions. Each one is
//! a constant or the maximum over a nonempty set of input coordinates, and the
//! supports of successive `max` coordinates are strictly ordered. These are
//! exactly the monotone maps that lie in □.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest domain dimension representable by a [`Support`].
pub const MAX_DIM: usize = 32;

/// A nonempty set of 1-based coordinate indices, stored as a bit set.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Support(u32);

impl Support {
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Support> {
        let mut bits = 0u32;
        for i in indices {
            if i == 0 || i > MAX_DIM {
                return Err(Error::Range { kind: "support", detail: format!("index {i}") });
            }
            bits |= 1 << (i - 1);
        }
        if bits == 0 {
            return Err(Error::InvalidMap("empty max support".into()));
        }
        Ok(Support(bits))
    }

    pub(crate) fn from_bits(bits: u32) -> Support {
        debug_assert!(bits != 0);
        Support(bits)
    }

    /// A single index.
    pub fn singleton(i: usize) -> Support {
        debug_assert!((1..=MAX_DIM).contains(&i));
        Support(1 << (i - 1))
    }

    /// The contiguous range `lo..=hi`.
    pub fn range(lo: usize, hi: usize) -> Support {
        debug_assert!(1 <= lo && lo <= hi && hi <= MAX_DIM);
        let width = hi - lo + 1;
        let mask = if width == 32 { u32::MAX } else { (1u32 << width) - 1 };
        Support(mask << (lo - 1))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn min_index(self) -> usize {
        self.0.trailing_zeros() as usize + 1
    }

    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_DIM).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    /// Indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=MAX_DIM).filter(move |i| bits & (1 << (i - 1)) != 0)
    }
}

// Supports compare as their sorted index sequences.
impl Ord for Support {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for Support {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// One coordinate function `[1]^m → [1]`.
///
/// The derived order (`Const0 < Const1 < Max`, supports as sequences) is the
/// canonical enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Const0,
    Const1,
    Max(Support),
}

impl Coord {
    pub fn is_const(&self) -> bool {
        !matches!(self, Coord::Max(_))
    }

    pub fn eval(&self, point: u32) -> bool {
        match self {
            Coord::Const0 => false,
            Coord::Const1 => true,
            Coord::Max(a) => point & a.bits() != 0,
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Const0 => f.write_str("0"),
            Coord::Const1 => f.write_str("1"),
            Coord::Max(a) => write!(f, "max{a}"),
        }
    }
}

/// The kind argument of [`box_generator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Face,
    Degeneracy,
    Connection,
}

/// A morphism `[1]^dom → [1]^cod` of □ in coordinate form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxMap {
    dom: usize,
    coords: Vec<Coord>,
}

/// Checks the coordinate and interleaving conditions for a raw tuple.
pub fn box_is_valid(m: usize, n: usize, coords: &[Coord]) -> bool {
    if coords.len() != n || m > MAX_DIM {
        return false;
    }
    let mut last_max = 0usize;
    for c in coords {
        if let Coord::Max(a) = c {
            if a.is_empty() || a.max_index() > m || a.min_index() <= last_max {
                return false;
            }
            last_max = a.max_index();
        }
    }
    true
}

/// The generator of the given kind in coordinate form.
pub fn box_generator(kind: GenKind, n: usize, i: usize, sign: Option<u8>) -> Result<BoxMap> {
    match (kind, sign) {
        (GenKind::Face, Some(e)) => BoxMap::face(n, i, e),
        (GenKind::Face, None) => {
            Err(Error::Range { kind: "face", detail: "a face needs a sign".into() })
        }
        (GenKind::Degeneracy, None) => BoxMap::degeneracy(n, i),
        (GenKind::Connection, None) => BoxMap::connection(n, i),
        (GenKind::Degeneracy, Some(_)) => {
            Err(Error::Range { kind: "degeneracy", detail: "a degeneracy takes no sign".into() })
        }
        (GenKind::Connection, Some(_)) => {
            Err(Error::Range { kind: "connection", detail: "a connection takes no sign".into() })
        }
    }
}

impl BoxMap {
    pub fn new(dom: usize, coords: Vec<Coord>) -> Result<BoxMap> {
        if box_is_valid(dom, coords.len(), &coords) {
            Ok(BoxMap { dom, coords })
        } else {
            let shown = BoxMap { dom, coords };
            Err(Error::InvalidMap(format!("{shown} is not a map [1]^{dom} -> [1]^{}", shown.cod())))
        }
    }

    pub(crate) fn new_unchecked(dom: usize, coords: Vec<Coord>) -> BoxMap {
        debug_assert!(box_is_valid(dom, coords.len(), &coords), "invalid box map");
        BoxMap { dom, coords }
    }

    pub fn identity(n: usize) -> BoxMap {
        BoxMap::new_unchecked(n, (1..=n).map(|i| Coord::Max(Support::singleton(i))).collect())
    }

    /// `∂^n_{i,ε} : [1]^{n-1} → [1]^n`, inserting `ε` at position `i`.
    pub fn face(n: usize, i: usize, sign: u8) -> Result<BoxMap> {
        if !(1..=n).contains(&i) || sign > 1 || n > MAX_DIM + 1 {
            return Err(Error::Range { kind: "face", detail: format!("d{i}^{sign} in dimension {n}") });
        }
        let coords = (1..=n)
            .map(|j| match j.cmp(&i) {
                Ordering::Less => Coord::Max(Support::singleton(j)),
                Ordering::Equal => if sign == 0 { Coord::Const0 } else { Coord::Const1 },
                Ordering::Greater => Coord::Max(Support::singleton(j - 1)),
            })
            .collect();
        Ok(BoxMap::new_unchecked(n - 1, coords))
    }

    /// `σ^n_i : [1]^n → [1]^{n-1}`, forgetting coordinate `i`.
    pub fn degeneracy(n: usize, i: usize) -> Result<BoxMap> {
        if !(1..=n).contains(&i) || n > MAX_DIM {
            return Err(Error::Range { kind: "degeneracy", detail: format!("s{i} in dimension {n}") });
        }
        let coords = (1..n)
            .map(|j| Coord::Max(Support::singleton(if j < i { j } else { j + 1 })))
            .collect();
        Ok(BoxMap::new_unchecked(n, coords))
    }

    /// `γ^n_i : [1]^n → [1]^{n-1}`, merging coordinates `i` and `i+1` by max.
    pub fn connection(n: usize, i: usize) -> Result<BoxMap> {
        if !(1..n).contains(&i) || n > MAX_DIM {
            return Err(Error::Range { kind: "connection", detail: format!("g{i} in dimension {n}") });
        }
        let coords = (1..n)
            .map(|j| match j.cmp(&i) {
                Ordering::Less => Coord::Max(Support::singleton(j)),
                Ordering::Equal => Coord::Max(Support::range(i, i + 1)),
                Ordering::Greater => Coord::Max(Support::singleton(j + 1)),
            })
            .collect();
        Ok(BoxMap::new_unchecked(n, coords))
    }

    /// The constant map at a vertex, given as a bit pattern.
    pub fn vertex(dom: usize, cod: usize, bits: u32) -> BoxMap {
        let coords = (0..cod)
            .map(|j| if bits & (1 << j) != 0 { Coord::Const1 } else { Coord::Const0 })
            .collect();
        BoxMap::new_unchecked(dom, coords)
    }

    /// Map forgetting the (1-based) coordinates in `drop`; the rest keep their order.
    pub fn projection(dom: usize, drop: &[usize]) -> Result<BoxMap> {
        if drop.iter().any(|&i| i == 0 || i > dom) {
            return Err(Error::Range { kind: "degeneracy", detail: format!("{drop:?} in dimension {dom}") });
        }
        let coords = (1..=dom)
            .filter(|i| !drop.contains(i))
            .map(|i| Coord::Max(Support::singleton(i)))
            .collect();
        Ok(BoxMap::new_unchecked(dom, coords))
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Coord> {
        self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod()
            && self.coords.iter().enumerate().all(|(j, c)| *c == Coord::Max(Support::singleton(j + 1)))
    }

    /// Evaluates on a point of `[1]^dom`, encoded with coordinate `i` at bit `i-1`.
    pub fn apply(&self, point: u32) -> u32 {
        self.coords
            .iter()
            .enumerate()
            .fold(0, |acc, (j, c)| if c.eval(point) { acc | (1 << j) } else { acc })
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &BoxMap) -> Result<BoxMap> {
        if f.cod() != self.dom {
            return Err(Error::Composition(format!(
                "inner map lands in [1]^{} but outer map starts at [1]^{}",
                f.cod(),
                self.dom
            )));
        }
        Ok(self.compose_unchecked(f))
    }

    pub(crate) fn compose_unchecked(&self, f: &BoxMap) -> BoxMap {
        let coords = self
            .coords
            .iter()
            .map(|c| match c {
                Coord::Max(a) => {
                    let mut bits = 0u32;
                    let mut one = false;
                    for i in a.indices() {
                        match f.coords[i - 1] {
                            Coord::Const0 => {}
                            Coord::Const1 => one = true,
                            Coord::Max(b) => bits |= b.bits(),
                        }
                    }
                    if one {
                        Coord::Const1
                    } else if bits != 0 {
                        Coord::Max(Support::from_bits(bits))
                    } else {
                        Coord::Const0
                    }
                }
                constant => *constant,
            })
            .collect();
        BoxMap::new_unchecked(f.dom, coords)
    }

    /// The geometric product `self ⊗ other : [1]^{m+m'} → [1]^{n+n'}`.
    pub fn tensor(&self, other: &BoxMap) -> BoxMap {
        let shift = self.dom;
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().map(|c| match c {
            Coord::Max(a) => Coord::Max(Support::from_bits(a.bits() << shift)),
            constant => *constant,
        }));
        BoxMap::new_unchecked(self.dom + other.dom, coords)
    }

    /// All maps `[1]^m → [1]^n`, in canonical order.
    pub fn enumerate(m: usize, n: usize) -> Vec<BoxMap> {
        assert!(m <= MAX_DIM, "domain dimension {m} exceeds {MAX_DIM}");
        let mut supports: Vec<Support> =
            (1u64..(1u64 << m)).map(|bits| Support::from_bits(bits as u32)).collect();
        supports.sort();
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        enumerate_rec(m, n, 0, &supports, &mut current, &mut out);
        out
    }

    /// Parses the coordinate syntax `(1, max{1,2}, 0)` against a domain dimension.
    pub fn parse(dom: usize, text: &str) -> Result<BoxMap> {
        let body = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::parse(text, "expected a parenthesised coordinate list"))?;
        let mut coords = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("max{") {
                let close = r.find('}').ok_or_else(|| Error::parse(text, "unclosed max{...}"))?;
                let indices = r[..close]
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::parse(text, format!("bad support index: {e}")))?;
                coords.push(Coord::Max(Support::from_indices(indices)?));
                rest = r[close + 1..].trim_start();
            } else if let Some(r) = rest.strip_prefix('0') {
                coords.push(Coord::Const0);
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('1') {
                coords.push(Coord::Const1);
                rest = r.trim_start();
            } else {
                return Err(Error::parse(text, format!("unexpected input at `{rest}`")));
            }
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(Error::parse(text, "trailing comma"));
                }
            } else if !rest.is_empty() {
                return Err(Error::parse(text, format!("expected `,` before `{rest}`")));
            }
        }
        BoxMap::new(dom, coords)
    }
}

fn enumerate_rec(
    m: usize,
    n: usize,
    last_max: usize,
    supports: &[Support],
    current: &mut Vec<Coord>,
    out: &mut Vec<BoxMap>,
) {
    if current.len() == n {
        out.push(BoxMap::new_unchecked(m, current.clone()));
        return;
    }
    for c in [Coord::Const0, Coord::Const1] {
        current.push(c);
        enumerate_rec(m, n, last_max, supports, current, out);
        current.pop();
    }
    for &a in supports {
        if a.min_index() > last_max {
            current.push(Coord::Max(a));
            enumerate_rec(m, n, a.max_index(), supports, current, out);
            current.pop();
        }
    }
}

impl fmt::Display for BoxMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for BoxMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[1]^{} -> [1]^{} {}", self.dom, self.cod(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max(ix: &[usize]) -> Coord {
        Coord::Max(Support::from_indices(ix.iter().copied()).unwrap())
    }

    #[test]
    fn generator_coordinates() {
        let d = box_generator(GenKind::Face, 2, 1, Some(1)).unwrap();
        assert_eq!(d.coords(), &[Coord::Const1, max(&[1])]);
        assert_eq!(d.dom(), 1);
        let s = box_generator(GenKind::Degeneracy, 2, 1, None).unwrap();
        assert_eq!(s.coords(), &[max(&[2])]);
        let g = box_generator(GenKind::Connection, 2, 1, None).unwrap();
        assert_eq!(g.coords(), &[max(&[1, 2])]);
    }

    #[test]
    fn generator_range_errors_name_the_kind() {
        let err = box_generator(GenKind::Connection, 2, 2, None).unwrap_err();
        assert!(err.to_string().contains("connection"), "{err}");
        let err = box_generator(GenKind::Face, 2, 3, Some(0)).unwrap_err();
        assert!(err.to_string().contains("face"), "{err}");
        assert!(box_generator(GenKind::Face, 2, 1, None).is_err());
        assert!(box_generator(GenKind::Degeneracy, 2, 0, None).is_err());
        assert!(box_generator(GenKind::Degeneracy, 2, 1, Some(0)).is_err());
    }

    #[test]
    fn composition_examples() {
        let g = BoxMap::connection(2, 1).unwrap();
        let d = BoxMap::face(2, 1, 1).unwrap();
        let gd = g.compose(&d).unwrap();
        assert_eq!(gd.coords(), &[Coord::Const1]);
        let ds = BoxMap::face(1, 1, 1).unwrap().compose(&BoxMap::degeneracy(1, 1).unwrap()).unwrap();
        assert_eq!(gd, ds);

        let sd = BoxMap::degeneracy(1, 1).unwrap().compose(&BoxMap::face(1, 1, 0).unwrap()).unwrap();
        assert_eq!(sd, BoxMap::identity(0));

        assert!(matches!(g.compose(&g), Err(Error::Composition(_))));
    }

    #[test]
    fn validity_examples() {
        assert!(!box_is_valid(2, 2, &[max(&[1]), max(&[1])]));
        assert!(box_is_valid(5, 2, &[Coord::Const0, Coord::Const1]));
        assert!(!box_is_valid(2, 2, &[max(&[2]), max(&[1])]));
        assert!(box_is_valid(2, 2, &[max(&[1]), max(&[2])]));
        assert!(!box_is_valid(1, 1, &[max(&[2])]));
        assert!(!box_is_valid(1, 2, &[Coord::Const0]));
    }

    #[test]
    fn enumeration_small_counts() {
        assert_eq!(BoxMap::enumerate(1, 0).len(), 1);
        assert_eq!(BoxMap::enumerate(0, 1), vec![BoxMap::vertex(0, 1, 0), BoxMap::vertex(0, 1, 1)]);
        assert_eq!(BoxMap::enumerate(1, 1).len(), 3);
        assert_eq!(BoxMap::enumerate(1, 2).len(), 8);
        assert_eq!(BoxMap::enumerate(2, 1).len(), 5);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        for m in 0..=3 {
            for n in 0..=3 {
                let all = BoxMap::enumerate(m, n);
                assert!(all.windows(2).all(|w| w[0] < w[1]), "order at ({m},{n})");
            }
        }
    }

    #[test]
    fn support_order_is_sequence_order() {
        let mut s = vec![max(&[2]), max(&[1, 3]), max(&[1]), max(&[1, 2, 3]), max(&[1, 2])];
        s.sort();
        assert_eq!(s, vec![max(&[1]), max(&[1, 2]), max(&[1, 2, 3]), max(&[1, 3]), max(&[2])]);
        assert!(Coord::Const0 < Coord::Const1 && Coord::Const1 < max(&[1]));
    }

    #[test]
    fn render_and_parse() {
        let f = BoxMap::parse(2, "(1, max{1,2}, 0)").unwrap();
        assert_eq!(f.to_string(), "(1, max{1,2}, 0)");
        assert_eq!(BoxMap::parse(0, "()").unwrap(), BoxMap::identity(0));
        assert!(BoxMap::parse(1, "(max{1}, max{1})").is_err());
        assert!(BoxMap::parse(1, "(2)").is_err());
        assert!(BoxMap::parse(1, "(0,)").is_err());
    }

    #[test]
    fn tensor_of_identities() {
        assert_eq!(BoxMap::identity(1).tensor(&BoxMap::identity(2)), BoxMap::identity(3));
        let d = BoxMap::face(1, 1, 0).unwrap();
        let t = d.tensor(&BoxMap::identity(1));
        assert_eq!(t.to_string(), "(0, max{1})");
    }
}
