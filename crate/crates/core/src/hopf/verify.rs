//! Exhaustive identity checks on the PBW basis of the bosonization.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arith::Field;

use super::bosonization::{accumulate, Bosonization, BosonizedElement, TensorCube, TensorSquare};

/// Basis sizes up to this bound check the algebra-map laws on all pairs.
/// Larger algebras check `g·h` and `h·g` for generators `g` and basis `h`,
/// which implies the laws for all pairs by induction on word length.
pub const ALL_PAIRS_LIMIT: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// Number of basis elements (or pairs) examined.
    pub checked: usize,
    /// First failing basis index.
    pub counterexample: Option<usize>,
    pub detail: Option<String>,
}

impl AxiomCheck {
    fn run(name: &str, indices: impl IntoIterator<Item = usize>, mut holds: impl FnMut(usize) -> bool) -> Self {
        let mut checked = 0;
        for i in indices {
            checked += 1;
            if !holds(i) {
                return Self { name: name.into(), passed: false, checked, counterexample: Some(i), detail: None };
            }
        }
        Self { name: name.into(), passed: true, checked, counterexample: None, detail: None }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub n: u64,
    pub field: String,
    pub dimension: usize,
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn extend(&mut self, other: HopfReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for HopfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "H_{} over {} (dimension {})", self.n, self.field, self.dimension)?;
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{:<36} {status}  checked={}", c.name, c.checked)?;
            if let Some(i) = c.counterexample {
                write!(f, "  counterexample={i}")?;
            }
            if let Some(d) = &c.detail {
                write!(f, "  ({d})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn report<F: Field>(h: &Bosonization<F>, checks: Vec<AxiomCheck>) -> HopfReport {
    HopfReport {
        n: h.structure().n(),
        field: h.field().name(),
        dimension: h.dim(),
        checks,
    }
}

/// Generators `d_k` and `K` as basis indices.
fn generators<F: Field>(h: &Bosonization<F>) -> Vec<usize> {
    let s = h.structure();
    let mut out: Vec<usize> = (0..s.num_primes()).map(|k| h.basis_index(s.generator_index(k), 0)).collect();
    if s.root_order() > 1 {
        out.push(h.basis_index(0, 1));
    }
    out
}

fn apply_left<F: Field>(
    h: &Bosonization<F>,
    t: &TensorSquare<F::Elem>,
    map: impl Fn(usize) -> TensorSquare<F::Elem>,
) -> TensorCube<F::Elem> {
    let f = h.field();
    let mut out = BTreeMap::new();
    for ((x, y), c) in t {
        for ((a, b), d) in map(*x) {
            accumulate(f, &mut out, (a, b, *y), &f.mul(c, &d));
        }
    }
    out
}

fn apply_right<F: Field>(
    h: &Bosonization<F>,
    t: &TensorSquare<F::Elem>,
    map: impl Fn(usize) -> TensorSquare<F::Elem>,
) -> TensorCube<F::Elem> {
    let f = h.field();
    let mut out = BTreeMap::new();
    for ((x, y), c) in t {
        for ((a, b), d) in map(*y) {
            accumulate(f, &mut out, (*x, a, b), &f.mul(c, &d));
        }
    }
    out
}

fn unit_times_counit<F: Field>(h: &Bosonization<F>, index: usize) -> BosonizedElement<F::Elem> {
    if h.counit_basis(index) {
        h.one()
    } else {
        BosonizedElement::zero()
    }
}

/// Coassociativity, counit and antipode laws, multiplicativity of `Δ` and
/// `ε`, invertibility of `S`, and `Σ S⁻¹(h₂)h₁ = ε(h)1`.
pub fn verify_hopf_axioms<F: Field>(h: &Bosonization<F>) -> HopfReport {
    let f = h.field();
    let dim = h.dim();
    let basis = || 0..dim;
    let delta = |b: usize| -> TensorSquare<F::Elem> { h.coproduct(&h.basis_element(b)) };
    let mut checks = Vec::new();

    checks.push(relations(h));

    checks.push(AxiomCheck::run("coassociativity", basis(), |b| {
        let d = delta(b);
        apply_left(h, &d, delta) == apply_right(h, &d, delta)
    }));

    checks.push(AxiomCheck::run("left counit", basis(), |b| {
        let mut acc = BTreeMap::new();
        for ((x, y), c) in delta(b) {
            if h.counit_basis(x) {
                accumulate(f, &mut acc, y, &c);
            }
        }
        h.from_terms(acc) == h.basis_element(b)
    }));
    checks.push(AxiomCheck::run("right counit", basis(), |b| {
        let mut acc = BTreeMap::new();
        for ((x, y), c) in delta(b) {
            if h.counit_basis(y) {
                accumulate(f, &mut acc, x, &c);
            }
        }
        h.from_terms(acc) == h.basis_element(b)
    }));

    checks.push(AxiomCheck::run("left antipode", basis(), |b| {
        let mut acc = BosonizedElement::zero();
        for ((x, y), c) in delta(b) {
            let (sx, s) = h.antipode_basis(x);
            let term = h.multiply(&h.basis_element(sx), &h.basis_element(y));
            acc = h.add(&acc, &h.scale(&term, &f.mul(&c, s)));
        }
        acc == unit_times_counit(h, b)
    }));
    checks.push(AxiomCheck::run("right antipode", basis(), |b| {
        let mut acc = BosonizedElement::zero();
        for ((x, y), c) in delta(b) {
            let (sy, s) = h.antipode_basis(y);
            let term = h.multiply(&h.basis_element(x), &h.basis_element(sy));
            acc = h.add(&acc, &h.scale(&term, &f.mul(&c, s)));
        }
        acc == unit_times_counit(h, b)
    }));

    checks.push(AxiomCheck::run("coproduct unital", [0], |b| {
        delta(b) == [((0, 0), f.one())].into_iter().collect()
    }));
    checks.push(AxiomCheck::run("counit unital", [0], |b| h.counit_basis(b)));

    let deltas: Vec<TensorSquare<F::Elem>> = basis().map(delta).collect();
    let coproduct_respects = |x: usize, y: usize| -> bool {
        let lhs = h.coproduct(&h.multiply(&h.basis_element(x), &h.basis_element(y)));
        lhs == h.multiply_tensors(&deltas[x], &deltas[y])
    };
    let counit_respects = |x: usize, y: usize| -> bool {
        let lhs = h.counit(&h.multiply(&h.basis_element(x), &h.basis_element(y)));
        let rhs = h.counit_basis(x) && h.counit_basis(y);
        if rhs {
            f.is_one(&lhs)
        } else {
            f.is_zero(&lhs)
        }
    };
    let gens = generators(h);
    let (pair_check, pair_detail): (Box<dyn Fn(usize, &dyn Fn(usize, usize) -> bool) -> bool>, String) =
        if dim <= ALL_PAIRS_LIMIT {
            (Box::new(|x, law| basis().all(|y| law(x, y))), "all pairs".into())
        } else {
            let gens = gens.clone();
            (
                Box::new(move |x, law| gens.iter().all(|g| law(*g, x) && law(x, *g))),
                "generator times basis, both sides".into(),
            )
        };
    checks.push(
        AxiomCheck::run("coproduct multiplicative", basis(), |x| pair_check(x, &coproduct_respects))
            .with_detail(pair_detail.clone()),
    );
    checks.push(
        AxiomCheck::run("counit multiplicative", basis(), |x| pair_check(x, &counit_respects))
            .with_detail(pair_detail),
    );

    checks.push(AxiomCheck::run("antipode invertible", basis(), |b| {
        let e = h.basis_element(b);
        h.antipode(&h.antipode_inverse(&e)) == e && h.antipode_inverse(&h.antipode(&e)) == e
    }));
    checks.push(AxiomCheck::run("antipode anti-multiplicative", basis(), |x| {
        let ex = h.basis_element(x);
        gens.iter().all(|g| {
            let eg = h.basis_element(*g);
            let lhs = h.antipode(&h.multiply(&eg, &ex));
            lhs == h.multiply(&h.antipode(&ex), &h.antipode(&eg))
        })
    }));
    checks.push(AxiomCheck::run("inverse antipode identity", basis(), |b| {
        let mut acc = BosonizedElement::zero();
        for ((x, y), c) in delta(b) {
            let (sy, s) = h.antipode_inverse_basis(y);
            let term = h.multiply(&h.basis_element(sy), &h.basis_element(x));
            acc = h.add(&acc, &h.scale(&term, &f.mul(&c, s)));
        }
        acc == unit_times_counit(h, b)
    }));

    report(h, checks)
}

fn relations<F: Field>(h: &Bosonization<F>) -> AxiomCheck {
    let s = h.structure();
    let t = s.num_primes();
    let k = h.k_power(1);
    let mut ok = h.pow(&k, s.root_order() as u32) == h.one();
    for a in 0..t {
        let da = h.d(a);
        ok &= h.pow(&da, s.prime(a) as u32).is_zero();
        ok &= h.multiply(&k, &da) == h.scale(&h.multiply(&da, &k), &s.xi(a));
        for b in 0..t {
            let db = h.d(b);
            ok &= h.multiply(&da, &db) == h.multiply(&db, &da);
        }
    }
    AxiomCheck {
        name: "algebra relations".into(),
        passed: ok,
        checked: 1 + t + t * t,
        counterexample: None,
        detail: None,
    }
}

/// `ω` is group-like and `S²(h) = ω h ω⁻¹` on every basis element.
pub fn verify_spherical<F: Field>(h: &Bosonization<F>) -> HopfReport {
    let f = h.field();
    let omega = h.pivot();
    let omega_index = *omega.terms().keys().next().expect("ω is a monomial");
    let omega_inv = h.antipode(&omega);
    let mut checks = Vec::new();
    checks.push(AxiomCheck::run("pivot group-like", [omega_index], |b| {
        let delta = h.coproduct(&h.basis_element(b));
        delta == [((b, b), f.one())].into_iter().collect()
            && f.is_one(&h.counit(&omega))
            && h.multiply(&omega, &omega_inv) == h.one()
    }));
    checks.push(AxiomCheck::run("S^2 is conjugation by pivot", 0..h.dim(), |b| {
        let e = h.basis_element(b);
        let lhs = h.antipode(&h.antipode(&e));
        lhs == h.multiply(&h.multiply(&omega, &e), &omega_inv)
    }));
    report(h, checks)
}

/// Left integral, degree of `Λ`, non-degeneracy of the trace pairing, and
/// agreement of the right orthogonal pairing with it on `H_n`.
pub fn verify_integrals<F: Field>(h: &Bosonization<F>) -> HopfReport {
    let f = h.field();
    let s = h.structure();
    let lam = h.integral();
    let mut checks = Vec::new();
    checks.push(AxiomCheck::run("left integral", 0..h.dim(), |b| {
        let e = h.basis_element(b);
        h.multiply(&e, &lam) == h.scale(&lam, &h.counit(&e))
    }));
    let top = h.braided_integral();
    checks.push(AxiomCheck::run("integral degree", [s.top_index()], |a| {
        s.monomial_degree(a) == s.ell() && top.terms().keys().all(|b| h.basis_degree(*b) == s.ell())
    }));
    let hn: Vec<BosonizedElement<F::Elem>> =
        (0..s.hn_dim()).map(|a| h.basis_element(h.basis_index(a, 0))).collect();
    let gram = trace_gram(h);
    checks.push(AxiomCheck::run("trace pairing non-degenerate", 0..s.hn_dim(), |a| {
        let row = &gram[a];
        let ones = row.iter().filter(|c| f.is_one(c)).count();
        let zeros = row.iter().filter(|c| f.is_zero(c)).count();
        let column_ones = (0..s.hn_dim()).filter(|r| f.is_one(&gram[*r][a])).count();
        ones == 1 && zeros + 1 == row.len() && column_ones == 1
    }));
    checks.push(AxiomCheck::run("right orthogonal pairing on H_n", 0..s.hn_dim(), |a| {
        (0..s.hn_dim()).all(|b| h.right_orthogonal_pairing(&hn[a], &hn[b]) == gram[a][b])
    }));
    report(h, checks)
}

/// Gram matrix `Tr(d^a d^b)` on the PBW basis of `H_n`.
pub fn trace_gram<F: Field>(h: &Bosonization<F>) -> Vec<Vec<F::Elem>> {
    let s = h.structure();
    let hn: Vec<BosonizedElement<F::Elem>> =
        (0..s.hn_dim()).map(|a| h.basis_element(h.basis_index(a, 0))).collect();
    hn.iter()
        .map(|x| hn.iter().map(|y| h.trace_pairing(x, y).expect("inputs lie in H_n")).collect())
        .collect()
}

/// The three suites in one report.
pub fn verify_all<F: Field>(h: &Bosonization<F>) -> HopfReport {
    let mut out = verify_hopf_axioms(h);
    out.extend(verify_spherical(h));
    out.extend(verify_integrals(h));
    out
}
