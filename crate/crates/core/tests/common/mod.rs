//! Oracles that recompute things from first principles, without the
//! coordinate form or the presheaf machinery.

#![allow(dead_code)]

use std::collections::HashSet;

use cubical::boxcat::BoxMap;
use cubical::presheaf::PresheafMap;
use cubical::{Generator, Op};

/// A map `[1]^m → [1]^n` as its values on the `2^m` points, coordinate `i`
/// at bit `i - 1`.
pub type Table = Vec<u32>;

pub fn identity_table(m: usize) -> Table {
    (0..1u32 << m).collect()
}

pub fn table_of(f: &BoxMap) -> Table {
    (0..1u32 << f.dom()).map(|p| f.apply(p)).collect()
}

fn insert_bit(p: u32, i: usize, bit: u32) -> u32 {
    let low = p & ((1 << (i - 1)) - 1);
    let high = p >> (i - 1);
    low | bit << (i - 1) | high << i
}

fn delete_bit(p: u32, i: usize) -> u32 {
    let low = p & ((1 << (i - 1)) - 1);
    let high = p >> i;
    low | high << (i - 1)
}

/// The point function of a cubical generator.
pub fn generator_fn(g: &Generator) -> impl Fn(u32) -> u32 + '_ {
    move |p| match g.op {
        Op::Face => insert_bit(p, g.index, u32::from(g.sign.unwrap())),
        Op::Deg => delete_bit(p, g.index),
        Op::Conn => {
            let merged = (p >> (g.index - 1) | p >> g.index) & 1;
            let rest = delete_bit(p, g.index + 1);
            rest & !(1 << (g.index - 1)) | merged << (g.index - 1)
        }
    }
}

/// All cubical generators whose objects have dimension at most `max`.
pub fn cubical_generators(max: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for n in 1..=max {
        for i in 1..=n {
            out.push(Generator::cube_face(n, i, 0));
            out.push(Generator::cube_face(n, i, 1));
            out.push(Generator::cube_deg(n, i));
        }
        for i in 1..n {
            out.push(Generator::cube_conn(n, i));
        }
    }
    out
}

/// A word in application order, evaluated on point tables.
pub fn eval_word(dom: usize, word: &[Generator]) -> Table {
    word.iter().fold(identity_table(dom), |t, g| {
        let f = generator_fn(g);
        t.into_iter().map(f).collect()
    })
}

/// Sets every coordinate after the first constant-1 coordinate to 1.
pub fn canonical_table(t: &Table, n: usize) -> Table {
    let all = t.iter().fold(u32::MAX, |acc, &v| acc & v);
    match (0..n).find(|&j| all >> j & 1 == 1) {
        None => t.clone(),
        Some(j) => {
            let mask = ((1u32 << n) - 1) & !((1u32 << (j + 1)) - 1);
            t.iter().map(|&v| v | mask).collect()
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The first dimension where a map repeats a value, by direct search.
pub fn not_injective(f: &PresheafMap) -> Option<usize> {
    f.components().iter().position(|c| c.iter().collect::<HashSet<_>>().len() != c.len())
}

/// The first dimension where a map misses a cell, by direct search.
pub fn not_surjective(f: &PresheafMap) -> Option<usize> {
    f.components()
        .iter()
        .enumerate()
        .position(|(d, c)| c.iter().collect::<HashSet<_>>().len() != f.target().count(d))
}

pub fn bijective(f: &PresheafMap) -> bool {
    not_injective(f).is_none() && not_surjective(f).is_none()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by cofactor expansion; fine for the small sizes used here.
pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Deterministic small integers in `-r..=r`.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self, r: i64) -> i64 {
        self.0 = self.0.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        ((self.0 >> 33) % (2 * r as u64 + 1)) as i64 - r
    }
}
