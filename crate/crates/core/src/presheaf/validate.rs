use std::fmt;

use super::Presheaf;
use crate::boxcat::{cubical_identities, simplicial_identities, Identity};
use crate::site::{Flavor, Generator};

/// A failed identity instance, with the cell that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub dim: usize,
    pub witness: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at `{}` (dimension {}): {}", self.identity, self.witness, self.dim, self.detail)
    }
}

/// Dimension of the far end of a word in application order.
fn word_target(dom: usize, word: &[Generator]) -> usize {
    word.last().map_or(dom, Generator::site_cod)
}

impl Presheaf {
    /// Every instance of the site identities that fails on some cell.
    pub fn validate(&self) -> Vec<Violation> {
        let ids: Vec<Identity> = match self.flavor {
            Flavor::Cubical => cubical_identities(self.truncation),
            Flavor::Simplicial => simplicial_identities(self.truncation),
        };
        let mut out = Vec::new();
        for id in &ids {
            let from = word_target(id.dom, &id.lhs);
            debug_assert_eq!(from, word_target(id.dom, &id.rhs));
            for cell in 0..self.count(from) {
                let l = self.act_word(&id.lhs, cell);
                let r = self.act_word(&id.rhs, cell);
                if l != r {
                    out.push(Violation {
                        identity: id.to_string(),
                        dim: from,
                        witness: self.name(from, cell).to_string(),
                        detail: format!("`{}` vs `{}`", self.name(id.dom, l), self.name(id.dom, r)),
                    });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::Presheaf;

    #[test]
    fn representables_validate() {
        for flavor in [Flavor::Cubical, Flavor::Simplicial] {
            for n in 0..=3 {
                for t in 0..=3 {
                    let x = Presheaf::representable(flavor, n, t);
                    assert!(x.validate().is_empty(), "{x:?}");
                }
            }
        }
    }

    #[test]
    fn corrupted_face_is_named() {
        let x = Presheaf::representable(Flavor::Cubical, 1, 1);
        let mut actions = x.actions().clone();
        // Send the face of the degenerate edge on the 1-vertex to the 0-vertex.
        let v1 = x.index_of(0, "(1)").unwrap();
        let s = x.act(&Generator::cube_deg(1, 1), v1);
        actions.get_mut(&Generator::cube_face(1, 1, 0)).unwrap()[s] = x.index_of(0, "(0)").unwrap();
        let bad = Presheaf::from_tables(Flavor::Cubical, 1, vec![x.names(0).to_vec(), x.names(1).to_vec()], actions)
            .unwrap();
        let v = bad.validate();
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(v[0].identity.starts_with("sd"), "{}", v[0]);
        assert_eq!(v[0].witness, "(1)");
    }
}
