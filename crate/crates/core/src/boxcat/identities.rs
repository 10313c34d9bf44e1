//! The co-cubical and cosimplicial identities, instantiated at every legal
//! index choice up to a dimension bound.
//!
//! Both sides are words in application order acting on `[1]^dom` (or `[dom]`).
//! Two of the printed co-cubical identities for `γ_j ∂_{i,ε}` are stated here
//! in the form that holds for the generator formulas: `∂_{j,1} σ_j` when
//! `j ∈ {i-1, i}`, and `∂_{i,ε} γ_{j-1}` when `j > i`.

use std::fmt;

use crate::site::{render_word, Generator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: &'static str,
    pub dom: usize,
    pub lhs: Vec<Generator>,
    pub rhs: Vec<Generator>,
}

impl Identity {
    /// Largest object dimension either side passes through.
    pub fn ambient(&self) -> usize {
        self.lhs
            .iter()
            .chain(&self.rhs)
            .map(|g| g.dim)
            .max()
            .unwrap_or(self.dom)
            .max(self.dom)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {} on dim {}", self.name, render_word(&self.lhs), render_word(&self.rhs), self.dom)
    }
}

fn face(n: usize, i: usize, e: u8) -> Generator {
    Generator::cube_face(n, i, e)
}
fn deg(n: usize, i: usize) -> Generator {
    Generator::cube_deg(n, i)
}
fn conn(n: usize, i: usize) -> Generator {
    Generator::cube_conn(n, i)
}

/// Every instance of the co-cubical identities whose objects have dimension
/// at most `max_dim`.
pub fn cubical_identities(max_dim: usize) -> Vec<Identity> {
    let mut out = Vec::new();
    let mut push = |name, dom, lhs: Vec<Generator>, rhs: Vec<Generator>| {
        let id = Identity { name, dom, lhs, rhs };
        if id.ambient() <= max_dim {
            out.push(id);
        }
    };
    let signs = [0u8, 1u8];
    for p in 0..=max_dim {
        // ∂_{j,ε} ∂_{i,ε'} = ∂_{i+1,ε'} ∂_{j,ε}, j ≤ i; p → p+1 → p+2
        for i in 1..=p + 1 {
            for j in 1..=i {
                for e in signs {
                    for e2 in signs {
                        push(
                            "dd",
                            p,
                            vec![face(p + 1, i, e2), face(p + 2, j, e)],
                            vec![face(p + 1, j, e), face(p + 2, i + 1, e2)],
                        );
                    }
                }
            }
        }
        // σ_i σ_j = σ_j σ_{i+1}, j ≤ i; p → p-1 → p-2
        if p >= 2 {
            for i in 1..p {
                for j in 1..=i {
                    push("ss", p, vec![deg(p, j), deg(p - 1, i)], vec![deg(p, i + 1), deg(p - 1, j)]);
                }
            }
        }
        // γ_j γ_i = γ_i γ_{j+1} (j > i), γ_i γ_i = γ_i γ_{i+1}; p → p-1 → p-2
        if p >= 3 {
            for i in 1..p - 1 {
                for j in i..p - 1 {
                    push("gg", p, vec![conn(p, i), conn(p - 1, j)], vec![conn(p, j + 1), conn(p - 1, i)]);
                }
            }
        }
        // σ_j ∂_{i,ε}; p → p+1 → p
        for i in 1..=p + 1 {
            for j in 1..=p + 1 {
                for e in signs {
                    let lhs = vec![face(p + 1, i, e), deg(p + 1, j)];
                    let rhs = match j.cmp(&i) {
                        std::cmp::Ordering::Less => vec![deg(p, j), face(p, i - 1, e)],
                        std::cmp::Ordering::Equal => vec![],
                        std::cmp::Ordering::Greater => vec![deg(p, j - 1), face(p, i, e)],
                    };
                    push("sd", p, lhs, rhs);
                }
            }
        }
        // γ_j ∂_{i,ε}; p → p+1 → p
        for i in 1..=p + 1 {
            for j in 1..=p {
                for e in signs {
                    let lhs = vec![face(p + 1, i, e), conn(p + 1, j)];
                    let rhs = if j + 1 < i {
                        vec![conn(p, j), face(p, i - 1, e)]
                    } else if (j + 1 == i || j == i) && e == 0 {
                        vec![]
                    } else if j + 1 == i || j == i {
                        vec![deg(p, j), face(p, j, 1)]
                    } else {
                        vec![conn(p, j - 1), face(p, i, e)]
                    };
                    push("gd", p, lhs, rhs);
                }
            }
        }
        // σ_j γ_i; p → p-1 → p-2
        if p >= 2 {
            for i in 1..p {
                for j in 1..p {
                    let lhs = vec![conn(p, i), deg(p - 1, j)];
                    let rhs = match j.cmp(&i) {
                        std::cmp::Ordering::Less => vec![deg(p, j), conn(p - 1, i - 1)],
                        std::cmp::Ordering::Equal => vec![deg(p, i), deg(p - 1, i)],
                        std::cmp::Ordering::Greater => vec![deg(p, j + 1), conn(p - 1, i)],
                    };
                    push("sg", p, lhs, rhs);
                }
            }
        }
    }
    out
}

/// Every instance of the cosimplicial identities whose objects have
/// dimension at most `max_dim`.
pub fn simplicial_identities(max_dim: usize) -> Vec<Identity> {
    let face = Generator::simplex_face;
    let deg = Generator::simplex_deg;
    let mut out = Vec::new();
    let mut push = |name, dom, lhs: Vec<Generator>, rhs: Vec<Generator>| {
        let id = Identity { name, dom, lhs, rhs };
        if id.ambient() <= max_dim {
            out.push(id);
        }
    };
    for p in 0..=max_dim {
        // d^j d^i = d^i d^{j-1}, i < j; [p] → [p+1] → [p+2]
        for j in 1..=p + 2 {
            for i in 0..j {
                push("dd", p, vec![face(p + 1, i), face(p + 2, j)], vec![face(p + 1, j - 1), face(p + 2, i)]);
            }
        }
        // s^j d^i; [p] → [p+1] → [p]
        for i in 0..=p + 1 {
            for j in 0..=p {
                let lhs = vec![face(p + 1, i), deg(p + 1, j)];
                let rhs = if i < j {
                    vec![deg(p, j - 1), face(p, i)]
                } else if i == j || i == j + 1 {
                    vec![]
                } else {
                    vec![deg(p, j), face(p, i - 1)]
                };
                push("sd", p, lhs, rhs);
            }
        }
        // s^j s^i = s^i s^{j+1}, i ≤ j; [p] → [p-1] → [p-2]
        if p >= 2 {
            for j in 0..p - 1 {
                for i in 0..=j {
                    push("ss", p, vec![deg(p, i), deg(p - 1, j)], vec![deg(p, j + 1), deg(p - 1, i)]);
                }
            }
        }
    }
    out
}
