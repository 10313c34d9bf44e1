//! Integral homology of finite simplicial sets from normalized chains.

use std::fmt;

use crate::error::{Error, Result};
use crate::presheaf::Presheaf;
use crate::site::{Flavor, Generator};

/// A dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Mismatch(format!("{}×{} times {}×{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a.checked_mul(other.get(k, j)).and_then(|p| p.checked_add(out.get(i, j)));
                    out.set(i, j, v.ok_or(Error::Overflow("matrix product"))?);
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] -= q · row[src]`.
    fn sub_row(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for c in 0..self.cols {
            let v = q.checked_mul(self.get(src, c)).and_then(|p| self.get(dst, c).checked_sub(p));
            self.set(dst, c, v.ok_or(Error::Overflow("row reduction"))?);
        }
        Ok(())
    }

    /// `col[dst] -= q · col[src]`.
    fn sub_col(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for r in 0..self.rows {
            let v = q.checked_mul(self.get(r, src)).and_then(|p| self.get(r, dst).checked_sub(p));
            self.set(r, dst, v.ok_or(Error::Overflow("column reduction"))?);
        }
        Ok(())
    }
}

/// The nonzero invariant factors `d_1 | d_2 | …` of an integer matrix.
///
/// Pivots are always the entry of least absolute value in the remaining
/// block; all arithmetic is checked.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Vec<i64>> {
    let mut a = m.clone();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < a.rows.min(a.cols) {
        let Some((pr, pc)) = (t..a.rows)
            .flat_map(|r| (t..a.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| a.get(r, c) != 0)
            .min_by_key(|&(r, c)| a.get(r, c).unsigned_abs())
        else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        loop {
            let p = a.get(t, t);
            let mut dirty = false;
            for r in t + 1..a.rows {
                let q = a.get(r, t) / p;
                if q != 0 {
                    a.sub_row(r, t, q)?;
                }
                dirty |= a.get(r, t) != 0;
            }
            for c in t + 1..a.cols {
                let q = a.get(t, c) / p;
                if q != 0 {
                    a.sub_col(c, t, q)?;
                }
                dirty |= a.get(t, c) != 0;
            }
            if !dirty {
                // The pivot must divide the whole block before it is final.
                match (t + 1..a.rows).flat_map(|r| (t + 1..a.cols).map(move |c| (r, c))).find(|&(r, c)| a.get(r, c) % p != 0) {
                    None => break,
                    Some((r, _)) => {
                        for c in t..a.cols {
                            let v = a.get(t, c).checked_add(a.get(r, c)).ok_or(Error::Overflow("row reduction"))?;
                            a.set(t, c, v);
                        }
                        continue;
                    }
                }
            }
            // A remainder is smaller than the pivot; move the least one up.
            let (r, c) = (t..a.rows)
                .map(|r| (r, t))
                .chain((t..a.cols).map(|c| (t, c)))
                .filter(|&(r, c)| a.get(r, c) != 0)
                .min_by_key(|&(r, c)| a.get(r, c).unsigned_abs())
                .expect("the pivot itself is nonzero");
            a.swap_rows(t, r);
            a.swap_cols(t, c);
        }
        diag.push(a.get(t, t).checked_abs().ok_or(Error::Overflow("invariant factor"))?);
        t += 1;
    }
    Ok(diag)
}

/// Normalized chains: bases are the nondegenerate simplices.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `bases[n]` lists the nondegenerate `n`-simplices.
    pub bases: Vec<Vec<usize>>,
    /// `boundaries[n]` is `∂_n : C_n → C_{n-1}` for `n ≥ 1`; entry 0 is empty.
    pub boundaries: Vec<IntMatrix>,
}

pub fn chain_complex(x: &Presheaf) -> Result<ChainComplex> {
    if x.flavor() != Flavor::Simplicial {
        return Err(Error::Mismatch("chains are built on simplicial sets".into()));
    }
    let bases: Vec<Vec<usize>> = (0..=x.truncation()).map(|n| x.nondegenerate(n)).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, bases[0].len())];
    for n in 1..=x.truncation() {
        let pos: std::collections::HashMap<usize, usize> = bases[n - 1].iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut d = IntMatrix::zeros(bases[n - 1].len(), bases[n].len());
        for (col, &c) in bases[n].iter().enumerate() {
            for i in 0..=n {
                if let Some(&row) = pos.get(&x.act(&Generator::simplex_face(n, i), c)) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    d.set(row, col, d.get(row, col) + sign);
                }
            }
        }
        boundaries.push(d);
    }
    Ok(ChainComplex { bases, boundaries })
}

/// One homology group `Z^b ⊕ Z/d_1 ⊕ …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub dim: isize,
    pub betti: usize,
    pub torsion: Vec<i64>,
}

impl Group {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "H_{} = {}", self.dim, parts.join(" ⊕ "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub reduced: bool,
    pub groups: Vec<Group>,
}

impl HomologyResult {
    pub fn group(&self, dim: isize) -> Option<&Group> {
        self.groups.iter().find(|g| g.dim == dim)
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(Group::is_trivial)
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.groups {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Homology in dimensions below the truncation, which must lie above every
/// nondegenerate simplex. With `reduced`, the augmentation adds `H_{-1}`.
pub fn homology(x: &Presheaf, reduced: bool) -> Result<HomologyResult> {
    if x.flavor() == Flavor::Simplicial && x.top_dimension() == Some(x.truncation()) {
        return Err(Error::Truncation(format!(
            "nondegenerate simplices reach the truncation {}; homology there is unknown",
            x.truncation()
        )));
    }
    let cc = chain_complex(x)?;
    let top = x.truncation();
    let mut invariants: Vec<Vec<i64>> = cc.boundaries.iter().map(smith_normal_form).collect::<Result<_>>()?;
    if reduced {
        invariants[0] = smith_normal_form(&IntMatrix::from_rows(&[vec![1; cc.bases[0].len()]]))?;
    }
    let mut groups = Vec::new();
    if reduced {
        let rank = invariants[0].len();
        groups.push(Group { dim: -1, betti: 1 - rank, torsion: Vec::new() });
    }
    for n in 0..top {
        let rank_out = invariants[n].len();
        let into = &invariants[n + 1];
        groups.push(Group {
            dim: n as isize,
            betti: cc.bases[n].len() - rank_out - into.len(),
            torsion: into.iter().copied().filter(|&d| d > 1).collect(),
        });
    }
    Ok(HomologyResult { reduced, groups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::{subobject, CellRef};
    use std::sync::Arc;

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])).unwrap(), vec![2, 4]);
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)).unwrap(), vec![1, 1, 1]);
        assert!(smith_normal_form(&IntMatrix::zeros(2, 3)).unwrap().is_empty());
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])).unwrap(), vec![1, 6]);
    }

    #[test]
    fn overflow_is_reported() {
        let m = IntMatrix::from_rows(&[vec![i64::MAX, 1], vec![i64::MAX, i64::MAX]]);
        let sq = m.mul(&m);
        assert!(matches!(sq, Err(Error::Overflow(_))));
    }

    #[test]
    fn simplex_is_acyclic() {
        for n in 0..=3 {
            let d = Presheaf::representable(Flavor::Simplicial, n, n + 1);
            assert!(homology(&d, true).unwrap().is_acyclic(), "Δ^{n}");
        }
        let d = Presheaf::representable(Flavor::Simplicial, 2, 2);
        assert!(matches!(homology(&d, false), Err(Error::Truncation(_))));
    }

    #[test]
    fn triangle() {
        let d = Arc::new(Presheaf::representable(Flavor::Simplicial, 2, 3));
        let top = d.nondegenerate(2)[0];
        let gens: Vec<CellRef> = (0..3).map(|i| CellRef::new(1, d.act(&Generator::simplex_face(2, i), top))).collect();
        let (b, _) = subobject(d, &gens).unwrap();
        let cc = chain_complex(&b).unwrap();
        assert_eq!((cc.boundaries[1].rows(), cc.boundaries[1].cols()), (3, 3));
        assert!(cc.boundaries[1].mul(&cc.boundaries[2]).unwrap().is_zero());
        let h = homology(&b, false).unwrap();
        assert_eq!(h.to_string(), "H_0 = Z\nH_1 = Z\nH_2 = 0\n");
    }

    #[test]
    fn empty_reduced() {
        let h = homology(&Presheaf::empty(Flavor::Simplicial, 1), true).unwrap();
        assert_eq!(h.group(-1).unwrap().betti, 1);
    }
}
