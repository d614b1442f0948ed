//! Seeded randomized property suites over the whole library.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::free_assoc::{words_of_bidegree, BiDegree, Gen, NcPoly, TensorPoly};
use crate::krv::{cocycle_check, delta, divergence, divergence_star, krv_component, DivMode};
use crate::lie::{flspace_basis, lyndon_words, partial_lie, FLElement};
use crate::linalg::{int, Rational};
use crate::poly_model::{cond_ii_quotient, kappa_poly, model_dimension, poly_of_tree, trace_of_bivar};
use crate::trace::TracePoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Leibniz,
    Euler,
    Cocycle,
    Roundtrip,
    Smallwheels,
    Crosscheck,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Leibniz, Suite::Euler, Suite::Cocycle, Suite::Roundtrip, Suite::Smallwheels, Suite::Crosscheck];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Leibniz => "leibniz",
            Suite::Euler => "euler",
            Suite::Cocycle => "cocycle",
            Suite::Roundtrip => "roundtrip",
            Suite::Smallwheels => "smallwheels",
            Suite::Crosscheck => "crosscheck",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }
}

/// Runs `suite` with `cases` random cases drawn from a ChaCha stream seeded
/// by `seed`. The crosscheck suite is exhaustive over degrees `1..=11` and
/// ignores both.
pub fn run_suite(suite: Suite, seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = match suite {
        Suite::Leibniz => (0..cases).map(|k| leibniz_case(&mut rng, k)).collect(),
        Suite::Euler => (0..cases).map(|k| euler_case(&mut rng, k)).collect(),
        Suite::Cocycle => cocycle_cases(&mut rng, cases),
        Suite::Roundtrip => (0..cases).map(|k| roundtrip_case(&mut rng, k)).collect(),
        Suite::Smallwheels => (0..cases).map(|k| smallwheels_case(&mut rng, k)).collect(),
        Suite::Crosscheck => crosscheck_cases(),
    };
    SuiteReport { suite, seed, cases }
}

fn coefficient(rng: &mut ChaCha8Rng) -> Rational {
    let c = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
    int(c)
}

fn random_bidegree(rng: &mut ChaCha8Rng, max_total: usize) -> BiDegree {
    let total = rng.gen_range(1..=max_total);
    let i = rng.gen_range(0..=total);
    BiDegree::new(i, total - i)
}

fn random_homogeneous(rng: &mut ChaCha8Rng, d: BiDegree) -> NcPoly {
    let words: Vec<_> = words_of_bidegree(d).collect();
    let mut out = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let w = *words.choose(rng).expect("nonempty");
        out.add_term(w, coefficient(rng));
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, max_total: usize) -> NcPoly {
    let mut out = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let d = random_bidegree(rng, max_total);
        out = &out + &random_homogeneous(rng, d);
    }
    if rng.gen_bool(0.2) {
        out.add_term(crate::free_assoc::Word::EMPTY, coefficient(rng));
    }
    out
}

fn random_lie(rng: &mut ChaCha8Rng, degree: usize) -> NcPoly {
    let words = lyndon_words(degree);
    let mut out = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let w = words.choose(rng).expect("nonempty");
        out.add_scaled(&w.bracketing(), &coefficient(rng));
    }
    out
}

fn random_lie_derivation(rng: &mut ChaCha8Rng, max_degree: usize) -> Derivation {
    let (nx, ny) = (rng.gen_range(1..=max_degree), rng.gen_range(1..=max_degree));
    let ux = random_lie(rng, nx);
    let uy = random_lie(rng, ny);
    Derivation::new(ux, uy)
}

fn random_fl(rng: &mut ChaCha8Rng, i: usize, j: usize) -> Option<FLElement> {
    let basis = flspace_basis(i, j).ok()?;
    if basis.is_empty() {
        return None;
    }
    let mut out = FLElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let g = basis.choose(rng).expect("nonempty");
        out = out.add(&g.scale(&coefficient(rng)));
    }
    (!out.is_zero()).then_some(out)
}

fn bideg(g: &FLElement) -> String {
    g.bidegree().map_or("mixed".to_string(), |d| d.to_string())
}

fn case(label: String, failures: Vec<String>, detail: String) -> CaseResult {
    let passed = failures.is_empty();
    CaseResult { label, passed, detail: if passed { detail } else { failures.join("; ") } }
}

fn leibniz_case(rng: &mut ChaCha8Rng, k: usize) -> CaseResult {
    let a = random_poly(rng, 4);
    let b = random_poly(rng, 4);
    let mut failures = Vec::new();
    for g in Gen::ALL {
        let lhs = (&a * &b).partial(g);
        let rhs = &a.partial(g).right_mul(&b) + &b.partial(g).left_mul(&a);
        if lhs != rhs {
            failures.push(format!("associative rule for d_{g} on ({a}, {b})"));
        }
    }
    let (nl, nm) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let l = random_lie(rng, nl);
    let m = random_lie(rng, nm);
    for g in Gen::ALL {
        let lhs = partial_lie(&l.commutator(&m), g);
        let rhs = &(&l * &partial_lie(&m, g)) - &(&m * &partial_lie(&l, g));
        if lhs != rhs {
            failures.push(format!("Lie rule for d_{g} on ([{l}], [{m}])"));
        }
    }
    let u = Derivation::new(random_poly(rng, 3), random_poly(rng, 3));
    if u.apply(&(&a * &b)) != &(&u.apply(&a) * &b) + &(&a * &u.apply(&b)) {
        failures.push(format!("derivation rule for {u}"));
    }
    if u.apply(&a) != u.apply_by_leibniz(&a) {
        failures.push(format!("diamond formula for {u} on {a}"));
    }
    let degree = |d: Option<usize>| d.map_or("mixed".to_string(), |d| d.to_string());
    let detail = format!("deg a = {}, deg l = {}", degree(a.total_degree()), degree(l.total_degree()));
    case(format!("leibniz #{k}"), failures, detail)
}

fn euler_case(rng: &mut ChaCha8Rng, k: usize) -> CaseResult {
    let d = random_bidegree(rng, 7);
    let a = random_homogeneous(rng, d);
    let mut failures = Vec::new();
    for g in Gen::ALL {
        let n = Rational::from_integer(d.of(g).into());
        if a.partial(g).diamond(&NcPoly::gen(g)) != a.scale(&n) {
            failures.push(format!("associative identity for {g} on {a}"));
        }
    }
    let f = TracePoly::tr(&a);
    if let Err(e) = f.euler_check() {
        failures.push(e.to_string());
    }
    let generic = random_poly(rng, 5);
    let mut lhs = TensorPoly::zero();
    for g in Gen::ALL {
        let m = &TensorPoly::simple(&NcPoly::gen(g), &NcPoly::one()) - &TensorPoly::simple(&NcPoly::one(), &NcPoly::gen(g));
        lhs = &lhs + &generic.partial(g).diamond_bimodule(&m);
    }
    let rhs = &TensorPoly::simple(&generic, &NcPoly::one()) - &TensorPoly::simple(&NcPoly::one(), &generic);
    if lhs != rhs {
        failures.push(format!("bimodule identity on {generic}"));
    }
    case(format!("euler #{k}"), failures, format!("bidegree ({}, {})", d.deg_x, d.deg_y))
}

fn krv_pool() -> Vec<FLElement> {
    let mut pool = Vec::new();
    for i in 1..=4 {
        for j in 1..=(8 - i) {
            if let Ok(c) = krv_component(i, j, DivMode::Strict) {
                pool.extend(c.basis);
            }
        }
    }
    pool
}

fn cocycle_cases(rng: &mut ChaCha8Rng, cases: usize) -> Vec<CaseResult> {
    let mut out = Vec::new();
    if cases == 0 {
        return out;
    }
    let d2 = Derivation::from_trace(delta(2).expect("delta").value());
    let d4 = Derivation::from_trace(delta(4).expect("delta").value());
    out.push(bracket_closure_case("closure [delta_2, delta_4]".into(), &d2, &d4));
    let pool = krv_pool();
    for k in 1..cases {
        if k % 4 == 0 {
            let a = pool.choose(rng).expect("nonempty pool");
            let b = pool.choose(rng).expect("nonempty pool");
            let (u, v) = (Derivation::from_trace(a.value()), Derivation::from_trace(b.value()));
            let label = format!("closure #{k} {} x {}", bideg(a), bideg(b));
            out.push(bracket_closure_case(label, &u, &v));
            continue;
        }
        let u = random_lie_derivation(rng, 4);
        let v = random_lie_derivation(rng, 4);
        let result = cocycle_check(&u, &v);
        let failures = match result {
            Ok(true) => vec![],
            Ok(false) => vec![format!("cocycle identity fails for {u} and {v}")],
            Err(e) => vec![e.to_string()],
        };
        out.push(case(format!("cocycle #{k}"), failures, format!("{u} / {v}")));
    }
    out
}

fn bracket_closure_case(label: String, u: &Derivation, v: &Derivation) -> CaseResult {
    let w = u.bracket(v);
    let mut failures = Vec::new();
    if !w.is_symplectic() {
        failures.push("bracket is not symplectic".into());
    }
    match divergence(&w) {
        Ok(d) if d.is_zero() => {}
        Ok(d) => failures.push(format!("divergence of bracket is {d}")),
        Err(e) => failures.push(e.to_string()),
    }
    match cocycle_check(u, v) {
        Ok(true) => {}
        Ok(false) => failures.push("cocycle identity fails".into()),
        Err(e) => failures.push(e.to_string()),
    }
    let detail = match w.degree() {
        Ok(Some(n)) => format!("bracket has degree {n}"),
        Ok(None) => "bracket vanishes".to_string(),
        Err(_) => "bracket is inhomogeneous".to_string(),
    };
    case(label, failures, detail)
}

fn roundtrip_case(rng: &mut ChaCha8Rng, k: usize) -> CaseResult {
    let mut failures = Vec::new();
    let d = random_bidegree(rng, 8);
    let f = TracePoly::tr(&random_homogeneous(rng, d));
    let u = Derivation::from_trace(&f);
    if !u.is_symplectic() {
        failures.push(format!("Phi_1({f}) is not symplectic"));
    }
    match u.to_trace() {
        Ok(g) if g == f => {}
        Ok(g) => failures.push(format!("trace -> derivation -> trace gave {g} for {f}")),
        Err(e) => failures.push(e.to_string()),
    }
    // A symplectic derivation built without Φ₁ on the outside.
    let (da, db) = (random_bidegree(rng, 4), random_bidegree(rng, 4));
    let a = Derivation::from_trace(&TracePoly::tr(&random_homogeneous(rng, da)));
    let b = Derivation::from_trace(&TracePoly::tr(&random_homogeneous(rng, db)));
    let w = a.bracket(&b);
    if !w.is_symplectic() {
        failures.push(format!("bracket {w} is not symplectic"));
    }
    match w.to_trace_graded() {
        Ok(g) if Derivation::from_trace(&g) == w => {}
        Ok(g) => failures.push(format!("derivation -> trace -> derivation gave {g} for {w}")),
        Err(e) => failures.push(e.to_string()),
    }
    case(format!("roundtrip #{k}"), failures, format!("f = {f}"))
}

fn smallwheels_case(rng: &mut ChaCha8Rng, k: usize) -> CaseResult {
    let mut failures = Vec::new();
    // Even total degree, x-degree at most 3.
    let gamma = loop {
        let i = rng.gen_range(1..=3);
        let total = 2 * rng.gen_range(1..=5);
        if total <= i {
            continue;
        }
        if let Some(g) = random_fl(rng, i, total - i) {
            break g;
        }
    };
    let u = Derivation::from_trace(gamma.value());
    match divergence(&u) {
        Ok(d) if d.is_zero() => {}
        Ok(d) => failures.push(format!("divergence {d} of {gamma}")),
        Err(e) => failures.push(e.to_string()),
    }
    // Formula agreement at any parity.
    let other = loop {
        let i = rng.gen_range(1..=3);
        let total = rng.gen_range(2..=10);
        if total <= i {
            continue;
        }
        if let Some(g) = random_fl(rng, i, total - i) {
            break g;
        }
    };
    let lhs = divergence(&Derivation::from_trace(other.value()));
    let rhs = divergence_star(&other);
    match (lhs, rhs) {
        (Ok(a), Ok(b)) if a == b => {}
        (Ok(a), Ok(b)) => failures.push(format!("div = {a} but tr(g - g*) = {b} for {other}")),
        (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
    }
    let detail = format!("{} and {}", bideg(&gamma), bideg(&other));
    case(format!("smallwheels #{k}"), failures, detail)
}

fn crosscheck_cases() -> Vec<CaseResult> {
    let mut out = Vec::new();
    for d in 1..=11u32 {
        let model = model_dimension(d);
        let algebra = krv_component(3, d as usize, DivMode::Strict).map(|c| c.dimension);
        let (passed, detail) = match (&model, &algebra) {
            (Ok(a), Ok(b)) => (a == b, format!("polynomial model {a}, krv {b}")),
            _ => (false, format!("{model:?} / {algebra:?}")),
        };
        out.push(CaseResult { label: format!("dimension (3,{d})"), passed, detail });
        if d % 2 == 1 {
            continue;
        }
        let mut failures = Vec::new();
        let basis = flspace_basis(3, d as usize).unwrap_or_default();
        for gamma in &basis {
            let check = || -> Result<bool> {
                let p = poly_of_tree(gamma.value())?;
                let eigen = kappa_poly(&p) == p.scale(&int(3));
                let div = divergence(&Derivation::from_trace(gamma.value()))?;
                let predicted = trace_of_bivar(&cond_ii_quotient(&p)?).scale(&int(-2));
                Ok(eigen && div == predicted)
            };
            match check() {
                Ok(true) => {}
                Ok(false) => failures.push(format!("dictionary mismatch for {gamma}")),
                Err(e) => failures.push(e.to_string()),
            }
        }
        let detail = format!("{} trees", basis.len());
        out.push(case(format!("divergence dictionary (3,{d})"), failures, detail));
    }
    out
}
