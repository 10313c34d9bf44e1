//! Named verification suites over the standard small objects, with reports
//! that are deterministic for fixed bounds.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::adjunctions::{
    apply_int, apply_int_map, apply_q, apply_q_map, counit_with, geometric_product, product_comparison, triangulate, unit,
};
use crate::boxcat::{cubical_identities, simplicial_identities, BoxMap, NormalForm, SimplexMap};
use crate::error::{Error, Result};
use crate::homology::{homology, smith_normal_form, IntMatrix};
use crate::io::{parse_presheaf, serialize_presheaf};
use crate::model::{
    cofibrancy_obstruction, q_generator, shape_subobject, verify_ac_pushout, verify_degeneracy_pushouts, LiftingProblem,
    Shape,
};
use crate::presheaf::{find_isomorphism, hom_set, is_pushout_square, product, pushout, Presheaf, PresheafMap};
use crate::qshape::{cosimplicial_map, cube_map, pi, q_object};
use crate::site::{Flavor, Generator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub id: &'static str,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub duration: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// One `id<TAB>status<TAB>witness` line per check.
    pub fn machine(&self) -> String {
        self.checks.iter().map(|c| format!("{}\t{}\t{}\n", c.id, c.status, c.witness.replace(['\t', '\n'], " "))).collect()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {}: {}", c.status.to_string().to_uppercase(), c.id, c.witness)?;
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        write!(f, "{}: {} checks, {} failed", self.suite, self.checks.len(), failed)
    }
}

/// Deliberate corruption, to see that the checks notice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// One face of `Q^2` points at the wrong cell.
    CorruptQObject,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Truncation used for presheaves.
    pub max_dim: usize,
    /// Bound on the ambient dimension of degeneracy squares.
    pub k: usize,
    pub fault: Option<Fault>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_dim: 3, k: 3, fault: None }
    }
}

pub const SUITES: [&str; 6] = ["boxcat", "qshape", "coreflection", "model", "homology", "all"];

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = fn(&SuiteOptions) -> Result<Outcome>;

fn registry() -> Vec<(&'static str, &'static str, Check)> {
    vec![
        ("boxcat", "boxcat.closure", check_closure),
        ("boxcat", "boxcat.normal-forms", check_normal_forms),
        ("boxcat", "boxcat.identities", check_identities),
        ("qshape", "qshape.cosimplicial", check_cosimplicial),
        ("qshape", "qshape.census", check_census),
        ("qshape", "qshape.full-faithful", check_full_faithful),
        ("qshape", "qshape.serialization", check_serialization),
        ("coreflection", "coreflection.unit-iso", check_unit),
        ("coreflection", "coreflection.counit-mono", check_counit),
        ("coreflection", "coreflection.int-pushouts", check_int_pushouts),
        ("coreflection", "coreflection.q-monos", check_q_monos),
        ("coreflection", "coreflection.product", check_product),
        ("coreflection", "coreflection.geometric-product", check_geometric_product),
        ("model", "model.degeneracy-pushouts", check_degeneracy_pushouts),
        ("model", "model.no-lift", check_no_lift),
        ("model", "model.cofibrancy", check_cofibrancy),
        ("model", "model.ac-pushouts", check_ac_pushouts),
        ("homology", "homology.acyclicity", check_acyclicity),
        ("homology", "homology.kernel", check_kernel),
    ]
}

/// The ids registered for a suite, sorted. `pushout-squares` names the
/// degeneracy square check alone.
pub fn check_ids(name: &str) -> Result<Vec<&'static str>> {
    if name == "pushout-squares" {
        return Ok(vec!["model.degeneracy-pushouts"]);
    }
    if !SUITES.contains(&name) {
        return Err(Error::Precondition(format!("unknown suite `{name}`; expected one of {}", SUITES.join(", "))));
    }
    let mut ids: Vec<_> = registry().into_iter().filter(|(s, _, _)| name == "all" || *s == name).map(|(_, id, _)| id).collect();
    ids.sort_unstable();
    Ok(ids)
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let ids = check_ids(name)?;
    let start = Instant::now();
    let mut checks: Vec<CheckResult> = registry()
        .into_iter()
        .filter(|(_, id, _)| ids.contains(id))
        .map(|(_, id, check)| {
            let (status, witness) = match catch_unwind(AssertUnwindSafe(|| check(opts))) {
                Ok(Ok(Outcome::Pass(w))) => (Status::Pass, w),
                Ok(Ok(Outcome::Fail(w))) => (Status::Fail, w),
                Ok(Ok(Outcome::Skip(w))) => (Status::Skip, w),
                Ok(Err(e)) => (Status::Fail, format!("error: {e}")),
                Err(p) => {
                    let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
                    (Status::Fail, format!("panic: {}", msg.unwrap_or_default()))
                }
            };
            CheckResult { id, status, witness }
        })
        .collect();
    checks.sort_by_key(|c| c.id);
    Ok(SuiteReport { suite: name.to_string(), checks, duration: start.elapsed() })
}

// ---------------------------------------------------------------- objects

/// The simplicial objects the checks range over.
pub fn simplicial_objects(truncation: usize) -> Result<Vec<(String, Arc<Presheaf>)>> {
    let mut out = Vec::new();
    for k in 0..=3.min(truncation) {
        out.push((format!("Δ^{k}"), Arc::new(Presheaf::representable(Flavor::Simplicial, k, truncation))));
    }
    let mut shapes = vec![Shape::BoundarySimplex { n: 2 }, Shape::BoundarySimplex { n: 3 }];
    shapes.extend((0..=2).map(|i| Shape::Horn { n: 2, i }));
    shapes.extend((0..=3).map(|i| Shape::Horn { n: 3, i }));
    for s in shapes.into_iter().filter(|s| s.n() <= truncation) {
        out.push((s.to_string(), shape_subobject(s, truncation)?.0));
    }
    let d1 = Presheaf::representable(Flavor::Simplicial, 1, truncation);
    out.push(("Δ^1×Δ^1".into(), product(d1.clone(), d1)?.object));
    Ok(out)
}

fn q_object_with(n: usize, truncation: usize, fault: Option<Fault>) -> Presheaf {
    let q = q_object(n, truncation);
    if fault != Some(Fault::CorruptQObject) || n != 2 {
        return q;
    }
    let mut actions = q.actions().clone();
    let g = Generator::cube_face(1, 1, 0);
    let table = actions.get_mut(&g).expect("Q^2 has edges");
    table[0] = (table[0] + 1) % q.count(0);
    let names = (0..=truncation).map(|d| q.names(d).to_vec()).collect();
    Presheaf::from_tables(Flavor::Cubical, truncation, names, actions).expect("tables stay in range")
}

/// The cubical objects the checks range over, `Q`-images included.
pub fn cubical_objects(truncation: usize, fault: Option<Fault>) -> Result<Vec<(String, Arc<Presheaf>)>> {
    let mut out = Vec::new();
    for k in 0..=3.min(truncation) {
        out.push((format!("□^{k}"), Arc::new(Presheaf::representable(Flavor::Cubical, k, truncation))));
    }
    for k in 0..=3.min(truncation) {
        out.push((format!("Q^{k}"), Arc::new(q_object_with(k, truncation, fault))));
    }
    if truncation >= 2 {
        for i in 1..=2 {
            for sign in 0..=1 {
                let s = Shape::OpenBox { n: 2, i, sign };
                out.push((s.to_string(), shape_subobject(s, truncation)?.0));
            }
        }
        out.push(("∂□^2".into(), shape_subobject(Shape::BoundaryCube { n: 2 }, truncation)?.0));
    }
    for (name, x) in simplicial_objects(truncation)? {
        if x.top_dimension().is_some_and(|t| t > 2) || name.starts_with("Δ^") && !name.contains('×') {
            continue;
        }
        out.push((format!("Q({name})"), apply_q(x, truncation)?.object));
    }
    Ok(out)
}

fn first_violation(objects: &[(String, Arc<Presheaf>)]) -> Option<String> {
    objects.iter().find_map(|(name, x)| x.validate().first().map(|v| format!("{name}: {v}")))
}

fn verdict(failures: Vec<String>, pass: String) -> Outcome {
    match failures.into_iter().next() {
        None => Outcome::Pass(pass),
        Some(f) => Outcome::Fail(f),
    }
}

// ---------------------------------------------------------------- boxcat

const BOX_BOUND: usize = 3;

fn check_closure(_: &SuiteOptions) -> Result<Outcome> {
    let gens: Vec<BoxMap> = Flavor::Cubical.generators_upto(BOX_BOUND).iter().map(Generator::box_map).collect();
    let mut seen: HashSet<BoxMap> = (0..=BOX_BOUND).map(BoxMap::identity).collect();
    let mut frontier: Vec<BoxMap> = seen.iter().cloned().collect();
    while let Some(f) = frontier.pop() {
        for g in gens.iter().filter(|g| g.dom() == f.cod()) {
            let h = g.compose(&f)?;
            if seen.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    let mut failures = Vec::new();
    let mut total = 0;
    for m in 0..=BOX_BOUND {
        for n in 0..=BOX_BOUND {
            let listed: HashSet<BoxMap> = BoxMap::enumerate(m, n).into_iter().collect();
            let reached: HashSet<BoxMap> = seen.iter().filter(|f| f.dom() == m && f.cod() == n).cloned().collect();
            total += listed.len();
            if let Some(f) = listed.symmetric_difference(&reached).next() {
                failures.push(format!("□({m},{n}) disagrees at {f}"));
            }
        }
    }
    Ok(verdict(failures, format!("{total} maps, m,n ≤ {BOX_BOUND}")))
}

fn check_normal_forms(_: &SuiteOptions) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut total = 0;
    for m in 0..=BOX_BOUND {
        for n in 0..=BOX_BOUND {
            let maps = BoxMap::enumerate(m, n);
            let nfs: BTreeSet<NormalForm> = maps.iter().map(BoxMap::normal_form).collect();
            total += maps.len();
            if let Some(f) = maps.iter().find(|f| f.normal_form().evaluate() != **f) {
                failures.push(format!("{f} does not evaluate back from {}", f.normal_form()));
            }
            if nfs.len() != maps.len() {
                failures.push(format!("□({m},{n}): {} maps share {} normal forms", maps.len(), nfs.len()));
            }
            if nfs != NormalForm::all(m, n).into_iter().collect() {
                failures.push(format!("□({m},{n}): normal forms differ from the valid index lists"));
            }
        }
    }
    Ok(verdict(failures, format!("{total} maps round-trip")))
}

fn check_identities(_: &SuiteOptions) -> Result<Outcome> {
    let ids = cubical_identities(4);
    let mut failures = Vec::new();
    for id in &ids {
        if BoxMap::from_word(id.dom, &id.lhs)? != BoxMap::from_word(id.dom, &id.rhs)? {
            failures.push(id.to_string());
        }
    }
    Ok(verdict(failures, format!("{} instances, n ≤ 4", ids.len())))
}

// ---------------------------------------------------------------- qshape

fn check_cosimplicial(opts: &SuiteOptions) -> Result<Outcome> {
    let t = opts.max_dim.max(4);
    let mut cache: BTreeMap<Generator, PresheafMap> = BTreeMap::new();
    let mut induced = |word: &[Generator], dom: usize| -> PresheafMap {
        word.iter().fold(PresheafMap::identity(q_object(dom, t)), |acc, g| {
            let step = cache.entry(*g).or_insert_with(|| cosimplicial_map(&g.simplex_map(), t));
            step.compose(&acc).expect("words are composable")
        })
    };
    let ids = simplicial_identities(4);
    let mut failures = Vec::new();
    for id in &ids {
        if induced(&id.lhs, id.dom) != induced(&id.rhs, id.dom) {
            failures.push(id.to_string());
        }
    }
    Ok(verdict(failures, format!("{} instances, degreewise to {t}", ids.len())))
}

fn check_census(opts: &SuiteOptions) -> Result<Outcome> {
    if opts.max_dim < 2 {
        return Ok(Outcome::Skip("needs truncation 2".into()));
    }
    let q = q_object_with(2, opts.max_dim, opts.fault);
    let counts = q.nondegenerate_counts();
    let expected = [3, 3, 1];
    if counts[..3] == expected && counts[3..].iter().all(|&c| c == 0) {
        Ok(Outcome::Pass(format!("nondegenerate {counts:?}")))
    } else {
        Ok(Outcome::Fail(format!("Q^2 has nondegenerate counts {counts:?}")))
    }
}

fn check_full_faithful(opts: &SuiteOptions) -> Result<Outcome> {
    let t = opts.max_dim.max(3);
    let mut failures = Vec::new();
    for m in 0..=3 {
        for n in 0..=3 {
            let homs = hom_set(q_object(m, t), q_object(n, t))?;
            let expected = SimplexMap::enumerate(m, n);
            if homs.len() != expected.len() {
                failures.push(format!("|hom(Q^{m},Q^{n})| = {} but |Δ([{m}],[{n}])| = {}", homs.len(), expected.len()));
            }
            let induced: HashSet<Vec<Vec<usize>>> =
                expected.iter().map(|a| cosimplicial_map(a, t).components().to_vec()).collect();
            if induced.len() != expected.len() {
                failures.push(format!("two maps [{m}] → [{n}] induce the same Q^{m} → Q^{n}"));
            }
        }
    }
    Ok(verdict(failures, "m,n ≤ 3".into()))
}

fn check_serialization(opts: &SuiteOptions) -> Result<Outcome> {
    let mut objects = simplicial_objects(opts.max_dim)?;
    objects.extend(cubical_objects(opts.max_dim, None)?);
    let mut failures = Vec::new();
    for (name, x) in &objects {
        let text = serialize_presheaf(x);
        match parse_presheaf(&text) {
            Ok(y) if y == **x && serialize_presheaf(&y) == text => {}
            Ok(_) => failures.push(format!("{name} changes on a round trip")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    Ok(verdict(failures, format!("{} objects", objects.len())))
}

// ---------------------------------------------------------------- coreflection

fn check_unit(opts: &SuiteOptions) -> Result<Outcome> {
    let objects = simplicial_objects(opts.max_dim)?;
    let mut failures = Vec::new();
    for (name, x) in &objects {
        let eta = unit(x.clone())?;
        if !eta.is_iso() {
            failures.push(format!("η at {name} is not an isomorphism"));
        }
    }
    Ok(verdict(failures, format!("{} objects", objects.len())))
}

fn check_counit(opts: &SuiteOptions) -> Result<Outcome> {
    let t = opts.max_dim;
    let objects = cubical_objects(t, opts.fault)?;
    if let Some(w) = first_violation(&objects) {
        return Ok(Outcome::Fail(w));
    }
    let mut failures = Vec::new();
    for (name, x) in &objects {
        let ix = apply_int(x.clone(), t)?;
        let qix = apply_q(ix.object.clone(), t)?;
        let eps = counit_with(&ix, &qix)?;
        if let Some((d, a, b)) = eps.mono_failure() {
            failures.push(format!("ε at {name} identifies {} and {} in dimension {d}", qix.object.name(d, a), qix.object.name(d, b)));
        }
        let iqix = apply_int(qix.object.clone(), t)?;
        if !apply_int_map(&eps, &iqix, &ix)?.is_iso() {
            failures.push(format!("∫ε at {name} is not an isomorphism"));
        }
    }
    Ok(verdict(failures, format!("{} objects", objects.len())))
}

fn cube_face_map(n: usize, i: usize, sign: u8, t: usize) -> Result<PresheafMap> {
    Ok(cube_map(&BoxMap::face(n, i, sign)?, t))
}

fn check_int_pushouts(opts: &SuiteOptions) -> Result<Outcome> {
    let t = opts.max_dim;
    let (_, boundary) = shape_subobject(Shape::BoundaryCube { n: 2 }, t)?;
    let (_, open) = shape_subobject(Shape::OpenBox { n: 2, i: 1, sign: 0 }, t)?;
    let squares: Vec<(&str, PresheafMap, PresheafMap)> = vec![
        ("two intervals at a point", cube_face_map(1, 1, 1, t)?, cube_face_map(1, 1, 0, t)?),
        ("two squares along an edge", cube_face_map(2, 1, 1, t)?, cube_face_map(2, 1, 0, t)?),
        ("two squares along their boundary", boundary.clone(), boundary),
        ("a square and an open box", open.clone(), open),
        ("Q^2 and a square along an edge", cosimplicial_map(&SimplexMap::coface(2, 0)?, t), cube_face_map(2, 2, 0, t)?),
    ];
    let mut failures = Vec::new();
    for (name, f, g) in &squares {
        if !(f.is_mono() && g.is_mono()) {
            failures.push(format!("{name}: legs are not monic"));
            continue;
        }
        let p = pushout(f, g)?;
        let ia = apply_int(f.source().clone(), t)?;
        let ib = apply_int(f.target().clone(), t)?;
        let ic = apply_int(g.target().clone(), t)?;
        let ip = apply_int(p.object.clone(), t)?;
        let sq = [apply_int_map(f, &ia, &ib)?, apply_int_map(g, &ia, &ic)?, apply_int_map(&p.in_b, &ib, &ip)?, apply_int_map(&p.in_c, &ic, &ip)?];
        if !is_pushout_square(&sq[0], &sq[1], &sq[2], &sq[3])? {
            failures.push(format!("∫ does not preserve the pushout of {name}"));
        }
    }
    Ok(verdict(failures, format!("{} squares", squares.len())))
}

/// Inclusions between simplicial suite objects.
fn simplicial_inclusions(t: usize) -> Result<Vec<(String, PresheafMap)>> {
    let mut out = Vec::new();
    for n in 0..=3.min(t) {
        out.push((format!("∂Δ^{n} ⊂ Δ^{n}"), shape_subobject(Shape::BoundarySimplex { n }, t)?.1));
        for i in (0..=n).filter(|_| n > 0) {
            out.push((format!("Λ^{n}_{i} ⊂ Δ^{n}"), shape_subobject(Shape::Horn { n, i }, t)?.1));
        }
    }
    let d1 = Arc::new(Presheaf::representable(Flavor::Simplicial, 1, t));
    let sq = product(d1.clone(), d1.clone())?;
    let diagonal = PresheafMap::from_fn(d1.clone(), sq.object.clone(), |d, c| c * d1.count(d) + c)?;
    out.push(("Δ^1 ⊂ Δ^1×Δ^1 diagonally".into(), diagonal));
    Ok(out)
}

fn check_q_monos(opts: &SuiteOptions) -> Result<Outcome> {
    let t = opts.max_dim;
    let incs = simplicial_inclusions(t)?;
    let mut failures = Vec::new();
    for (name, f) in &incs {
        let qa = apply_q(f.source().clone(), t)?;
        let qb = apply_q(f.target().clone(), t)?;
        let qf = apply_q_map(f, &qa, &qb)?;
        if let Some((d, a, b)) = qf.mono_failure() {
            failures.push(format!("Q({name}) identifies {} and {} in dimension {d}", qa.object.name(d, a), qa.object.name(d, b)));
        }
    }
    Ok(verdict(failures, format!("{} inclusions", incs.len())))
}

fn check_product(opts: &SuiteOptions) -> Result<Outcome> {
    let t = opts.max_dim.min(2);
    let d1 = Presheaf::representable(Flavor::Simplicial, 1, t.max(2));
    let c = product_comparison(d1.clone(), d1, t.max(2))?;
    if let Some((d, a, _)) = c.mono_failure() {
        return Ok(Outcome::Fail(format!("not injective in dimension {d} at {}", c.source().name(d, a))));
    }
    match c.epi_failure() {
        Some((d, b)) => Ok(Outcome::Pass(format!("mono; misses {} in dimension {d}", c.target().name(d, b)))),
        None => Ok(Outcome::Fail("the comparison is surjective".into())),
    }
}

fn check_geometric_product(opts: &SuiteOptions) -> Result<Outcome> {
    let t = opts.max_dim.max(3);
    let cube = |n| Presheaf::representable(Flavor::Cubical, n, t);
    let mut failures = Vec::new();
    let mut count = 0;
    for m in 0..=3 {
        for n in 0..=3 - m {
            count += 1;
            let p = geometric_product(&cube(m), &cube(n), t, t)?;
            if find_isomorphism(p, cube(m + n))?.is_none() {
                failures.push(format!("□^{m} ⊗ □^{n} ≇ □^{}", m + n));
            }
        }
    }
    for (name, x) in cubical_objects(t, None)?.into_iter().filter(|(_, x)| x.total_cells() <= 200) {
        count += 1;
        let p = geometric_product(&cube(0), &x, t, t)?;
        if find_isomorphism(p, x.as_ref().clone())?.is_none() {
            failures.push(format!("□^0 ⊗ {name} ≇ {name}"));
        }
    }
    Ok(verdict(failures, format!("{count} products")))
}

// ---------------------------------------------------------------- model

fn check_degeneracy_pushouts(opts: &SuiteOptions) -> Result<Outcome> {
    let mut failures = Vec::new();
    let (mut squares, mut splits) = (0, 0);
    for k in 0..=opts.k {
        let r = verify_degeneracy_pushouts(k, k.max(1));
        squares += r.squares;
        splits += r.factorizations;
        failures.extend(r.failures.into_iter().map(|f| format!("k={k}: {f}")));
    }
    Ok(verdict(failures, format!("{squares} subset pairs, {splits} splittings, k ≤ {}", opts.k)))
}

/// The square asking for `□^n → Q(∂Δ^n)` over `π_n`.
pub fn no_lift_problem(n: usize, truncation: usize) -> Result<LiftingProblem> {
    let g = q_generator(Shape::BoundarySimplex { n }, truncation)?;
    let cube = Arc::new(Presheaf::representable(Flavor::Cubical, n, truncation));
    let i = PresheafMap::from_empty(cube);
    let base = PresheafMap::from_empty(g.map.source().clone());
    LiftingProblem::new(i, g.map.clone(), base, pi(n, truncation))
}

fn check_no_lift(opts: &SuiteOptions) -> Result<Outcome> {
    let mut failures = Vec::new();
    for n in [2, 3].into_iter().filter(|&n| n <= opts.max_dim) {
        if let Some(l) = no_lift_problem(n, opts.max_dim)?.solve() {
            failures.push(format!("found a lift □^{n} → Q(∂Δ^{n}): {l:?}"));
        }
    }
    Ok(verdict(failures, "no lift for n = 2, 3".into()))
}

fn check_cofibrancy(opts: &SuiteOptions) -> Result<Outcome> {
    let t = opts.max_dim;
    if t < 2 {
        return Ok(Outcome::Skip("needs truncation 2".into()));
    }
    let sq = Presheaf::representable(Flavor::Cubical, 2, t);
    let mut failures = Vec::new();
    if cofibrancy_obstruction(&sq)?.is_empty() {
        failures.push("□^2 shows no obstruction".into());
    }
    let mut clean: Vec<(String, Arc<Presheaf>)> =
        (0..=3).map(|n| (format!("Q^{n}"), Arc::new(q_object_with(n, t, opts.fault)))).collect();
    for (name, x) in simplicial_objects(t)? {
        clean.push((format!("Q({name})"), apply_q(x, t)?.object));
    }
    for (name, x) in &clean {
        if let Some(&c) = cofibrancy_obstruction(x)?.first() {
            failures.push(format!("{name} has the obstructed 2-cell {}", x.name(2, c)));
        }
    }
    Ok(verdict(failures, format!("□^2 obstructed; {} Q-objects clean", clean.len())))
}

/// The three attaching maps `QΛ^n_i → X` used for the horn pushout check.
pub fn ac_instances(truncation: usize) -> Result<Vec<(String, usize, usize, PresheafMap)>> {
    let mut out = Vec::new();
    let j = q_generator(Shape::Horn { n: 2, i: 1 }, truncation)?;
    out.push(("X = QΛ^2_1, identity".to_string(), 2, 1, PresheafMap::identity(j.map.source().clone())));
    let pt = Arc::new(Presheaf::representable(Flavor::Cubical, 0, truncation));
    out.push(("X = □^0".to_string(), 2, 1, PresheafMap::from_fn(j.map.source().clone(), pt, |_, _| 0)?));
    let j = q_generator(Shape::Horn { n: 1, i: 0 }, truncation)?;
    let interval = Arc::new(Presheaf::representable(Flavor::Cubical, 1, truncation));
    let vertex = PresheafMap::from_fn(j.map.source().clone(), interval.clone(), |d, _| {
        let corner = BoxMap::new(d, vec![crate::boxcat::Coord::Const1]).expect("constant maps are valid");
        interval.index_of(d, &corner.to_string()).expect("constant cells exist")
    })?;
    out.push(("n = 1, X = □^1 at an endpoint".to_string(), 1, 0, vertex));
    Ok(out)
}

fn check_ac_pushouts(opts: &SuiteOptions) -> Result<Outcome> {
    let mut failures = Vec::new();
    let instances = ac_instances(opts.max_dim)?;
    for (name, n, i, attach) in &instances {
        let r = verify_ac_pushout(*n, *i, attach)?;
        if !r.int_preserves {
            failures.push(format!("{name}: ∫ of the pushout square is not a pushout"));
        }
        if !r.comparison_iso {
            failures.push(format!("{name}: Δ^{n} ∪ ∫X → ∫Y is not an isomorphism"));
        }
    }
    Ok(verdict(failures, format!("{} instances", instances.len())))
}

// ---------------------------------------------------------------- homology

fn check_acyclicity(opts: &SuiteOptions) -> Result<Outcome> {
    let mut targets: Vec<(String, Presheaf)> = (0..=3).map(|n| (format!("Q^{n}"), q_object_with(n, n, opts.fault))).collect();
    for n in 1..=3 {
        for i in 0..=n {
            let (h, _) = shape_subobject(Shape::Horn { n, i }, n)?;
            targets.push((format!("QΛ^{n}_{i}"), apply_q(h, n)?.object.as_ref().clone()));
        }
    }
    let mut failures = Vec::new();
    for (name, x) in &targets {
        let tx = triangulate(x, x.truncation() + 1)?;
        let h = homology(&tx, true)?;
        if let Some(g) = h.groups.iter().find(|g| !g.is_trivial()) {
            failures.push(format!("T{name}: reduced {g}"));
        }
    }
    Ok(verdict(failures, format!("{} triangulations acyclic", targets.len())))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn check_kernel(_: &SuiteOptions) -> Result<Outcome> {
    let mut failures = Vec::new();
    // Small matrices from a fixed linear congruential sequence.
    let mut state: u64 = 0x2545_f491;
    let mut next = || {
        state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        ((state >> 33) % 13) as i64 - 6
    };
    for trial in 0..40 {
        let (r, c) = (2 + trial % 3, 2 + (trial / 3) % 3);
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| next()).collect()).collect();
        let m = IntMatrix::from_rows(&rows);
        let d = smith_normal_form(&m)?;
        if d.windows(2).any(|w| w[1] % w[0] != 0) || d.iter().any(|&x| x <= 0) {
            failures.push(format!("{rows:?}: invariants {d:?} are not a divisibility chain"));
        }
        let g1 = rows.iter().flatten().fold(0, |g, &x| gcd(g, x));
        if d.first().copied().unwrap_or(0) != g1 {
            failures.push(format!("{rows:?}: d_1 = {:?} but the entry gcd is {g1}", d.first()));
        }
        let mut g2 = 0;
        for a in 0..r {
            for b in a + 1..r {
                for x in 0..c {
                    for y in x + 1..c {
                        g2 = gcd(g2, rows[a][x] * rows[b][y] - rows[a][y] * rows[b][x]);
                    }
                }
            }
        }
        let d12 = if d.len() >= 2 { d[0] * d[1] } else { 0 };
        if d12 != g2 {
            failures.push(format!("{rows:?}: d_1 d_2 = {d12} but the 2×2 minor gcd is {g2}"));
        }
    }
    let (b, _) = shape_subobject(Shape::BoundarySimplex { n: 2 }, 3)?;
    let h = homology(&b, false)?;
    let expect = [(0, 1), (1, 1), (2, 0)];
    for (dim, betti) in expect {
        let g = h.group(dim).expect("dimension reported");
        if g.betti != betti || !g.torsion.is_empty() {
            failures.push(format!("∂Δ^2: {g}"));
        }
    }
    Ok(verdict(failures, "40 matrices; H(∂Δ^2) = (Z, Z)".into()))
}
