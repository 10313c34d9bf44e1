//! Differential checks: each library answer against a brute-force or
//! closed-form one.

mod common;

use std::sync::Arc;

use common::*;
use cubical::adjunctions::{
    apply_int, apply_int_map, apply_q, apply_q_map, counit_with, cube_nerve, geometric_product, triangulate, u_functor,
    unit_with,
};
use cubical::boxcat::BoxMap;
use cubical::homology::homology;
use cubical::model::{q_generator, shape_subobject, LiftingProblem, Shape};
use cubical::presheaf::{find_isomorphism, hom_set, pushout, Presheaf, PresheafMap};
use cubical::qshape::{cube_map, pi, q_object};
use cubical::Flavor;

fn simplex(k: usize, t: usize) -> Arc<Presheaf> {
    Arc::new(Presheaf::representable(Flavor::Simplicial, k, t))
}

fn cube(k: usize, t: usize) -> Arc<Presheaf> {
    Arc::new(Presheaf::representable(Flavor::Cubical, k, t))
}

fn sub(s: Shape, t: usize) -> Arc<Presheaf> {
    shape_subobject(s, t).unwrap().0
}

#[test]
fn coreflection_hom_bijection_and_triangles() {
    let t = 2;
    let xs = [simplex(0, t), simplex(1, t), sub(Shape::BoundarySimplex { n: 2 }, t), sub(Shape::Horn { n: 2, i: 1 }, t)];
    let ys = [cube(0, t), cube(1, t), Arc::new(q_object(2, t)), sub(Shape::OpenBox { n: 2, i: 1, sign: 1 }, t)];
    for x in &xs {
        let qx = apply_q(x.clone(), t).unwrap();
        let iqx = apply_int(qx.object.clone(), t).unwrap();
        let eta = unit_with(&qx, &iqx).unwrap();
        // ε_{QX} ∘ Q(η_X) = id.
        let qiqx = apply_q(iqx.object.clone(), t).unwrap();
        let q_eta = apply_q_map(&eta, &qx, &qiqx).unwrap();
        let eps_q = counit_with(&iqx, &qiqx).unwrap();
        assert_eq!(eps_q.compose(&q_eta).unwrap(), PresheafMap::identity(qx.object.clone()));
        for y in &ys {
            let iy = apply_int(y.clone(), t).unwrap();
            let qiy = apply_q(iy.object.clone(), t).unwrap();
            let eps = counit_with(&iy, &qiy).unwrap();
            let left = hom_set(qx.object.clone(), y.clone()).unwrap();
            let right = hom_set(x.clone(), iy.object.clone()).unwrap();
            assert_eq!(left.len(), right.len(), "|hom(QX, Y)| vs |hom(X, ∫Y)|");
            // φ(f) = ∫f ∘ η and ψ(g) = ε ∘ Qg are mutually inverse.
            for f in &left {
                let phi = apply_int_map(f, &iqx, &iy).unwrap().compose(&eta).unwrap();
                let back = eps.compose(&apply_q_map(&phi, &qx, &qiy).unwrap()).unwrap();
                assert_eq!(&back, f);
            }
            for g in &right {
                let psi = eps.compose(&apply_q_map(g, &qx, &qiy).unwrap()).unwrap();
                let back = apply_int_map(&psi, &iqx, &iy).unwrap().compose(&eta).unwrap();
                assert_eq!(&back, g);
            }
        }
    }
    // ∫ε_Y ∘ η_{∫Y} = id.
    for y in &ys {
        let iy = apply_int(y.clone(), t).unwrap();
        let qiy = apply_q(iy.object.clone(), t).unwrap();
        let iqiy = apply_int(qiy.object.clone(), t).unwrap();
        let eta = unit_with(&qiy, &iqiy).unwrap();
        let int_eps = apply_int_map(&counit_with(&iy, &qiy).unwrap(), &iqiy, &iy).unwrap();
        assert_eq!(int_eps.compose(&eta).unwrap(), PresheafMap::identity(iy.object.clone()));
    }
}

/// Every diagonal by filtering all maps `B → X`.
fn brute_lifts(i: &PresheafMap, p: &PresheafMap, top: &PresheafMap, bottom: &PresheafMap) -> usize {
    hom_set(i.target().clone(), p.source().clone())
        .unwrap()
        .iter()
        .filter(|l| l.compose(i).unwrap() == *top && p.compose(l).unwrap() == *bottom)
        .count()
}

#[test]
fn lifting_agrees_with_enumeration() {
    let t = 2;
    let (_, ends) = shape_subobject(Shape::BoundaryCube { n: 1 }, t).unwrap();
    let (_, open) = shape_subobject(Shape::OpenBox { n: 2, i: 1, sign: 0 }, t).unwrap();
    let g = q_generator(Shape::BoundarySimplex { n: 2 }, t).unwrap();
    let rights = [pi(2, t), g.map.clone(), PresheafMap::from_fn(Arc::new(q_object(2, t)), cube(0, t), |_, _| 0).unwrap()];
    let mut problems = 0;
    for i in [&ends, &open] {
        for p in &rights {
            if p.source().total_cells() > 60 {
                continue;
            }
            for top in hom_set(i.source().clone(), p.source().clone()).unwrap() {
                for bottom in hom_set(i.target().clone(), p.target().clone()).unwrap() {
                    let Ok(problem) = LiftingProblem::new(i.clone(), p.clone(), top.clone(), bottom.clone()) else {
                        continue;
                    };
                    problems += 1;
                    let all = problem.all_lifts();
                    assert_eq!(all.len(), brute_lifts(i, p, &top, &bottom));
                    assert!(all.iter().all(|l| problem.is_lift(l)));
                    assert_eq!(problem.solve().is_some(), !all.is_empty());
                }
            }
        }
    }
    assert!(problems > 10);
}

#[test]
fn pushout_universal_property() {
    let t = 1;
    let f = cube_map(&BoxMap::face(1, 1, 1).unwrap(), t);
    let g = cube_map(&BoxMap::face(1, 1, 0).unwrap(), t);
    let (_, ends) = shape_subobject(Shape::BoundaryCube { n: 1 }, t).unwrap();
    let squares = [(f.clone(), g.clone()), (ends.clone(), ends), (f.clone(), f)];
    let targets = [cube(1, t), Arc::new(q_object(2, t)), cube(0, t)];
    for (f, g) in &squares {
        let p = pushout(f, g).unwrap();
        assert!(p.in_b.compose(f).unwrap() == p.in_c.compose(g).unwrap());
        if f.source().count(0) > 0 && not_injective(f).is_none() && not_injective(g).is_none() {
            assert!(not_injective(&p.in_b).is_none() && not_injective(&p.in_c).is_none());
        }
        for z in &targets {
            assert!(z.total_cells() + p.object.total_cells() <= 60);
            let outs = hom_set(p.object.clone(), z.clone()).unwrap();
            for u in hom_set(f.target().clone(), z.clone()).unwrap() {
                for v in hom_set(g.target().clone(), z.clone()).unwrap() {
                    if u.compose(f).unwrap() != v.compose(g).unwrap() {
                        continue;
                    }
                    let factor = outs
                        .iter()
                        .filter(|w| w.compose(&p.in_b).unwrap() == u && w.compose(&p.in_c).unwrap() == v)
                        .count();
                    assert_eq!(factor, 1);
                }
            }
        }
    }
}

#[test]
fn geometric_product_is_associative() {
    let t = 3;
    for a in 0..=3 {
        for b in 0..=3 - a {
            for c in 0..=3 - a - b {
                let left = geometric_product(&geometric_product(&cube(a, t), &cube(b, t), t, t).unwrap(), &cube(c, t), t, t).unwrap();
                let right = geometric_product(&cube(a, t), &geometric_product(&cube(b, t), &cube(c, t), t, t).unwrap(), t, t).unwrap();
                assert!(find_isomorphism(left, right).unwrap().is_some(), "({a} ⊗ {b}) ⊗ {c}");
            }
        }
    }
}

#[test]
fn geometric_product_truncation_is_stable() {
    // Raising the bound and then truncating changes nothing.
    let pairs = [(1, 1), (2, 0), (1, 0)];
    for (a, b) in pairs {
        for n in 1..=2 {
            let small = geometric_product(&q_object(a, n), &q_object(b, n), n, n).unwrap();
            let big = geometric_product(&q_object(a, n + 1), &q_object(b, n + 1), n + 1, n + 1).unwrap();
            assert!(find_isomorphism(small, big.truncate(n).unwrap()).unwrap().is_some(), "Q^{a} ⊗ Q^{b} at {n}");
        }
    }
}

#[test]
fn triangulation_sees_enough_cells() {
    for n in 0..=2 {
        let a = triangulate(&q_object(n, n), n + 1).unwrap();
        let b = triangulate(&q_object(n, n + 1), n + 1).unwrap();
        assert!(find_isomorphism(a, b).unwrap().is_some(), "TQ^{n}");
    }
    // T□^n is the nerve of [1]^n.
    let t = triangulate(&cube(3, 3), 3).unwrap();
    assert!(find_isomorphism(t, cube_nerve(3, 3)).unwrap().is_some());
}

#[test]
fn u_of_interval_counts_monotone_functions() {
    // (UΔ^1)_n counts monotone maps [1]^n → [1]: the Dedekind numbers.
    let u = u_functor(simplex(1, 3), 3).unwrap();
    assert_eq!(u.counts(), vec![2, 3, 6, 20]);
    assert!(u.validate().is_empty());
}

#[test]
fn triangulation_adjunction_counts() {
    let t = 2;
    let ys = [simplex(1, t), sub(Shape::BoundarySimplex { n: 2 }, t), sub(Shape::Horn { n: 2, i: 0 }, t)];
    let xs = [cube(0, t), cube(1, t), sub(Shape::BoundaryCube { n: 2 }, t), Arc::new(q_object(2, t))];
    for y in &ys {
        let uy = Arc::new(u_functor(y.clone(), t).unwrap());
        for x in &xs {
            let tx = triangulate(x, t).unwrap();
            let left = hom_set(tx, y.clone()).unwrap().len();
            let right = hom_set(x.clone(), uy.clone()).unwrap().len();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn euler_characteristic_matches_betti_numbers() {
    let t = 3;
    let mut objects: Vec<Presheaf> = vec![
        sub(Shape::BoundarySimplex { n: 2 }, t).as_ref().clone(),
        sub(Shape::BoundarySimplex { n: 3 }, 4).as_ref().clone(),
        sub(Shape::Horn { n: 3, i: 1 }, t).as_ref().clone(),
        triangulate(&sub(Shape::BoundaryCube { n: 2 }, 2), 3).unwrap(),
        triangulate(&cube(2, 2), 3).unwrap(),
    ];
    objects.push(cubical::presheaf::product(simplex(1, t), sub(Shape::BoundarySimplex { n: 2 }, t)).unwrap().object.as_ref().clone());
    for x in &objects {
        let chi: i64 = x.nondegenerate_counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        let h = homology(x, false).unwrap();
        let betti: i64 = h.groups.iter().map(|g| if g.dim % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum();
        assert_eq!(chi, betti);
    }
}

#[test]
fn circle_and_sphere() {
    let b3 = sub(Shape::BoundarySimplex { n: 3 }, 4);
    let h = homology(&b3, false).unwrap();
    assert_eq!(h.groups.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![1, 0, 1, 0]);
    // The boundary of the square triangulates to a circle.
    let c = triangulate(&sub(Shape::BoundaryCube { n: 2 }, 2), 3).unwrap();
    assert_eq!(homology(&c, false).unwrap().to_string(), "H_0 = Z\nH_1 = Z\nH_2 = 0\n");
}
