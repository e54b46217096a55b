//! The acceptance checks for a single `n`, shared by the command-line
//! `all-checks` runner and the test suite.
//!
//! Every check draws its randomness from its own stream derived from the
//! configured seed, so running a subset reproduces the same modules.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{cyclotomic_polynomial, verify_cyclotomic_identities, Field};
use crate::gradedmod::{
    braiding_iso, dual, example_v, free, random_coefficient, ModuleBuilder, example_v_double_prime, example_v_prime, hom_dimension, hom_space,
    internal_hom, is_isomorphic, quotient, random_extension, random_hom, random_module, submodule, tensor,
    tensor_maps, trivial, v_k, GradedModule, HomogeneousVector, IsoOutcome, ModuleMap, RandomModules,
    TensorVariant,
};
use crate::hopf::{verify_hopf_axioms, verify_integrals, verify_spherical, HopfReport, Structure};
use crate::ideal::{
    closure_harness, is_in_i, is_in_ik, is_quasi_isomorphism, ClosureBounds, IdealSearch, Membership,
};
use crate::k0::{ideal_generated_by_strings, K0Ring};
use crate::linalg::{self, Echelon, Mat};
use crate::stable::{cone, null_homotopic_basis, rho, shift_times, stable_hom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub n: u64,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:>2}] {:<28} n={:<4} {}  {}", self.id, self.name, self.n, self.status, self.detail)
    }
}

/// Sample sizes and search parameters. The defaults are the acceptance
/// bounds.
#[derive(Clone, Debug, Serialize)]
pub struct CheckConfig {
    pub seed: u64,
    pub budget: usize,
    pub pairs: usize,
    pub triples: usize,
    pub morphisms: usize,
    pub members: usize,
    pub norm_modules: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { seed: 0, budget: 10_000, pairs: 200, triples: 100, morphisms: 50, members: 100, norm_modules: 100 }
    }
}

impl CheckConfig {
    fn rng(&self, id: u8) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (u64::from(id)).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn search(&self) -> IdealSearch {
        IdealSearch { seed: self.seed, budget: self.budget, ..IdealSearch::default() }
    }
}

type Probe = Result<(Status, String), Box<dyn Error>>;

fn verdict(ok: bool, detail: String) -> Probe {
    Ok((if ok { Status::Pass } else { Status::Fail }, detail))
}

fn finish(id: u8, name: &'static str, n: u64, probe: Probe) -> CheckResult {
    let (status, detail) = probe.unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
    CheckResult { id, name, n, status, detail }
}

fn hopf_summary(report: &HopfReport) -> String {
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        format!("{} checks over {} (dimension {})", report.checks.len(), report.field, report.dimension)
    } else {
        format!("failing: {}", failed.join(", "))
    }
}

/// Hopf axioms and the spherical structure.
pub fn hopf_axioms<F: Field>(s: &Structure<F>) -> CheckResult {
    let h = s.algebra();
    let mut report = verify_hopf_axioms(h);
    report.checks.extend(verify_spherical(h).checks);
    let ok = report.all_passed();
    finish(1, "hopf axioms", s.n(), verdict(ok, hopf_summary(&report)))
}

/// The left integral and the trace pairing.
pub fn integrals<F: Field>(s: &Structure<F>) -> CheckResult {
    let report = verify_integrals(s.algebra());
    let ok = report.all_passed();
    finish(2, "integrals", s.n(), verdict(ok, hopf_summary(&report)))
}

/// The cyclotomic identities and the gcd of the
/// string polynomials.
pub fn cyclotomic(n: u64) -> CheckResult {
    let probe = || -> Probe {
        let identities = verify_cyclotomic_identities(n)?;
        let gcd = ideal_generated_by_strings(n)?;
        let phi = cyclotomic_polynomial(n)?;
        verdict(
            identities.all_pass() && gcd == phi,
            format!("identities {}, gcd of strings = {gcd}", if identities.all_pass() { "hold" } else { "fail" }),
        )
    };
    finish(3, "cyclotomic identities", n, probe())
}

/// The graded dimension of `H_n` against the product formula.
pub fn graded_dimension<F: Field>(s: &Structure<F>) -> CheckResult {
    let direct = s.graded_dimension();
    let product = s.graded_dimension_product();
    let ok = direct == product;
    finish(4, "graded dimension", s.n(), verdict(ok, format!("dim_v H_n = {direct}")))
}

/// All degree-0 maps `g∘ρ_M` with `g: M ⊗ H_n{ℓ} → N`, as a span of
/// flattened maps.
fn maps_through_rho<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<Echelon<F::Elem>, Box<dyn Error>> {
    let f = m.field();
    let r = rho(m)?;
    let mut span = Echelon::new(ModuleMap::flat_len(m, n, 0));
    for g in hom_space(r.target(), n, 0)? {
        span.insert(f, &g.compose(&r)?.flatten());
    }
    Ok(span)
}

/// The same module after a random change of basis in every degree.
fn scrambled<F: Field>(m: &GradedModule<F>, rng: &mut ChaCha8Rng) -> Result<GradedModule<F>, Box<dyn Error>> {
    let s = m.structure();
    let f = m.field();
    let mut change = BTreeMap::new();
    for i in m.degrees() {
        let d = m.dim(i);
        loop {
            let p = Mat::from_fn(d, d, |_, _| random_coefficient(f, rng));
            if let Some(inv) = linalg::inverse(f, &p) {
                change.insert(i, (p, inv));
                break;
            }
        }
    }
    let mut builder = m.degrees().fold(ModuleBuilder::new(m.shared_structure().clone()), |b, i| b.dim(i, m.dim(i)));
    for k in 0..s.num_primes() {
        for (&i, a) in m.action_blocks(k) {
            if let (Some((_, inv)), Some((p, _))) = (change.get(&i), change.get(&(i + s.degree(k)))) {
                builder = builder.action(k, i, linalg::mat_mul(f, p, &linalg::mat_mul(f, a, inv)))?;
            }
        }
    }
    Ok(builder.build()?)
}

/// `H_n{shift}` plus up to `extra` more dimensions, in a random basis.
fn with_free_summand<F: Field>(
    s: &Structure<F>,
    shift: i64,
    extra: usize,
    rng: &mut ChaCha8Rng,
) -> Result<GradedModule<F>, Box<dyn Error>> {
    let mut m = free(s, shift);
    if extra > 0 {
        m = m.direct_sum(&random_module(s, &RandomModules::new(1, extra, 3), rng))?;
    }
    scrambled(&m, rng)
}

/// Null-homotopic maps are exactly those through `ρ_M`. Two thirds of the
/// pairs carry a free summand, hidden by a change of basis, on one side.
/// Its shift puts the generator (as source) or the socle (as target) on
/// the lowest degree of the other module.
pub fn stable_hom_oracle<F: Field>(s: &Structure<F>, config: &CheckConfig) -> CheckResult {
    let probe = || -> Probe {
        let mut rng = config.rng(5);
        let f = s.field();
        let h = s.hn_dim();
        let mut mismatches = 0;
        let mut nonzero = 0;
        for round in 0..config.pairs {
            let (m, n) = match round % 3 {
                1 if h < 12 => {
                    let n = random_module(s, &RandomModules::new(1, 12 - h, 3), &mut rng);
                    let low = n.degrees().next().unwrap_or(0);
                    let extra = rng.gen_range(0..=12 - h - n.total_dim());
                    (with_free_summand(s, -low, extra, &mut rng)?, n)
                }
                2 if h < 12 => {
                    let m = random_module(s, &RandomModules::new(1, 12 - h, 3), &mut rng);
                    let low = m.degrees().next().unwrap_or(0);
                    let extra = rng.gen_range(0..=12 - h - m.total_dim());
                    (m, with_free_summand(s, s.ell() - low, extra, &mut rng)?)
                }
                _ => {
                    let m = random_module(s, &RandomModules::new(1, 8, 3), &mut rng);
                    let n = random_module(s, &RandomModules::new(1, 12 - m.total_dim(), 3), &mut rng);
                    (m, n)
                }
            };
            let mut basis = Echelon::new(ModuleMap::flat_len(&m, &n, 0));
            for b in null_homotopic_basis(&m, &n, 0)? {
                basis.insert(f, &b.flatten());
            }
            if basis.rank() > 0 {
                nonzero += 1;
            }
            if !basis.same_span(f, &maps_through_rho(&m, &n)?) {
                mismatches += 1;
            }
        }
        verdict(
            mismatches == 0,
            format!("{} pairs, {nonzero} with nonzero null-homotopic space, {mismatches} mismatches", config.pairs),
        )
    };
    finish(5, "stable hom oracle", s.n(), probe())
}

/// The unit object survives in the stable category and is
/// not in the ideal.
pub fn unit_object<F: Field>(s: &Structure<F>, config: &CheckConfig) -> CheckResult {
    let probe = || -> Probe {
        let k = trivial(s, 0);
        let st = stable_hom(&k, &k)?;
        let membership = is_in_i(&k, &config.search())?;
        let obstruction = match &membership {
            Membership::NotMember(o) => o.to_string(),
            other => other.label().to_string(),
        };
        verdict(
            st.stable_dimension == 1 && matches!(membership, Membership::NotMember(_)),
            format!("stable End(k) has dimension {}; k: {obstruction}", st.stable_dimension),
        )
    };
    finish(6, "unit object", s.n(), probe())
}

/// `k[2] ≅ k{n}` in the Verdier quotient. For one prime the
/// stripped module is literally `k{n}`; otherwise a degree-0 map between
/// them is certified to have its cone in the ideal.
pub fn shift_square<F: Field>(s: &Structure<F>, config: &CheckConfig) -> CheckResult {
    let probe = || -> Probe {
        let n = s.n() as i64;
        let x = shift_times(&trivial(s, 0), 2)?;
        let kn = trivial(s, n);
        let literal = is_isomorphic(&x, &kn)?;
        if let IsoOutcome::Isomorphic(map) = &literal {
            return verdict(map.is_isomorphism(), "k[2] is isomorphic to k{n} as a module".into());
        }
        let search = config.search();
        let mut candidates = hom_space(&kn, &x, 0)?;
        candidates.extend(hom_space(&x, &kn, 0)?);
        let mut certified = false;
        for map in &candidates {
            if let Membership::Member(cert) = is_quasi_isomorphism(map, &search)? {
                certified = cert.replay(&cone(map)?.module).is_ok();
                break;
            }
        }
        verdict(
            certified,
            format!(
                "k[2] has dimension {} ({}); quasi-isomorphism with k{{n}} {}",
                x.total_dim(),
                if literal.is_certified_negative() { "not isomorphic as modules" } else { "module iso undecided" },
                if certified { "certified" } else { "not found" },
            ),
        )
    };
    finish(7, "shift square", s.n(), probe())
}

/// The three two-prime examples. Needs `6 | n`.
pub fn example_sequences<F: Field>(s: &Structure<F>, config: &CheckConfig) -> CheckResult {
    if s.n() % 6 != 0 {
        return finish(8, "example sequences", s.n(), Ok((Status::Skip, "needs 6 | n".into())));
    }
    let probe = || -> Probe {
        let c = (s.n() / 6) as i64;
        let f = s.field();
        let on = K0Ring::on(s.n())?;
        let search = config.search();
        let cases = [("V", example_v(s)?, -c), ("V'", example_v_prime(s)?, -3 * c), ("V''", example_v_double_prime(s)?, c)];
        let mut notes = Vec::new();
        let mut ok = true;
        for (name, m, sub_shift) in cases {
            let member = is_in_ik(&m, 1, &search)?;
            let replayed = member.certificate().is_some_and(|cert| cert.replay(&m).is_ok());
            let sub = submodule(&m, &[HomogeneousVector::new(-sub_shift, vec![f.one()])])?;
            let quo = quotient(&m, &sub.spaces)?;
            let sub_iso = is_isomorphic(&sub.module, &v_k(s, 1, sub_shift)?)?.is_isomorphic();
            let quo_iso = is_isomorphic(&quo.module, &v_k(s, 1, 0)?)?.is_isomorphic();
            let class_zero = on.class_of(&m)?.is_zero();
            let good = replayed && sub_iso && quo_iso && class_zero;
            ok &= good;
            notes.push(format!("{name}: {}", if good { "ok" } else { "failed" }));
        }
        verdict(ok, notes.join(", "))
    };
    finish(8, "example sequences", s.n(), probe())
}

/// The closure harness.
pub fn ideal_closure<F: Field>(s: &Structure<F>, config: &CheckConfig) -> CheckResult {
    let probe = || -> Probe {
        let mut rng = config.rng(9);
        let bounds = ClosureBounds { members: config.members, member_dim: 18, partner_dim: 6, window: 3 };
        let r = closure_harness(s, &bounds, &config.search(), &mut rng)?;
        let line = |c: &crate::ideal::ClosureCounts| format!("{}/{}", c.certified, c.total());
        verdict(
            r.all_certified(),
            format!(
                "tensor left {}, tensor right {}, duals {}, extensions {}",
                line(&r.tensor_left),
                line(&r.tensor_right),
                line(&r.duals),
                line(&r.extensions)
            ),
        )
    };
    finish(9, "ideal closure", s.n(), probe())
}

fn nonzero_hom<F: Field>(
    source: &GradedModule<F>,
    target: &GradedModule<F>,
    rng: &mut ChaCha8Rng,
) -> Result<Option<ModuleMap<F>>, Box<dyn Error>> {
    let map = random_hom(source, target, 0, rng)?;
    Ok((!map.is_zero()).then_some(map))
}

/// The braiding is an intertwining isomorphism and natural.
pub fn braiding<F: Field>(s: &Structure<F>, config: &CheckConfig) -> CheckResult {
    let probe = || -> Probe {
        let mut rng = config.rng(10);
        let sizes = RandomModules::new(1, 5, 3);
        let mut bad_iso = 0;
        for _ in 0..config.pairs {
            let v = random_module(s, &sizes, &mut rng);
            let w = random_module(s, &sizes, &mut rng);
            let psi = braiding_iso(&v, &w)?;
            if !(psi.is_intertwiner() && psi.is_isomorphism()) {
                bad_iso += 1;
            }
        }
        let mut squares = 0;
        let mut bad_squares = 0;
        let mut attempts = 0;
        while squares < config.morphisms && attempts < 50 * config.morphisms.max(1) {
            attempts += 1;
            let v = random_module(s, &sizes, &mut rng);
            let v2 = random_extension(&v, &random_module(s, &RandomModules::new(1, 2, 3), &mut rng), &mut rng)?.module;
            let w = random_module(s, &sizes, &mut rng);
            let Some(f) = nonzero_hom(&v, &v2, &mut rng)? else { continue };
            squares += 1;
            let id_w = ModuleMap::identity(&w);
            let left = braiding_iso(&v2, &w)?.compose(&tensor_maps(
                &f,
                &id_w,
                &tensor(&v, &w, TensorVariant::Q)?,
                &tensor(&v2, &w, TensorVariant::Q)?,
            )?)?;
            let right = tensor_maps(
                &id_w,
                &f,
                &tensor(&w, &v, TensorVariant::QInverse)?,
                &tensor(&w, &v2, TensorVariant::QInverse)?,
            )?
            .compose(&braiding_iso(&v, &w)?)?;
            if left.flatten() != right.flatten() {
                bad_squares += 1;
            }
        }
        verdict(
            bad_iso == 0 && bad_squares == 0 && squares >= config.morphisms,
            format!(
                "{} pairs ({bad_iso} failures), {squares} naturality squares ({bad_squares} failures)",
                config.pairs
            ),
        )
    };
    finish(10, "braiding", s.n(), probe())
}

/// `dim Hom^j(M ⊗ L, N) = dim Hom^j(L, Hom(M, N))` for every
/// degree where either side can be nonzero.
pub fn adjunction<F: Field>(s: &Structure<F>, config: &CheckConfig) -> CheckResult {
    let probe = || -> Probe {
        let mut rng = config.rng(11);
        let sizes = RandomModules::new(1, 3, 2);
        let mut degrees = 0;
        let mut bad = 0;
        for _ in 0..config.triples {
            let m = random_module(s, &sizes, &mut rng);
            let l = random_module(s, &sizes, &mut rng);
            let n = random_module(s, &sizes, &mut rng);
            let ml = tensor(&m, &l, TensorVariant::Q)?;
            let hom_mn = internal_hom(&m, &n)?;
            let span = |a: &GradedModule<F>, b: &GradedModule<F>| {
                let lo = b.degrees().next().unwrap_or(0) - a.degrees().last().unwrap_or(0);
                let hi = b.degrees().last().unwrap_or(0) - a.degrees().next().unwrap_or(0);
                (lo, hi)
            };
            let (lo1, hi1) = span(&ml, &n);
            let (lo2, hi2) = span(&l, &hom_mn);
            for j in lo1.min(lo2) - 1..=hi1.max(hi2) + 1 {
                degrees += 1;
                if hom_dimension(&ml, &n, j)? != hom_dimension(&l, &hom_mn, j)? {
                    bad += 1;
                }
            }
        }
        verdict(bad == 0, format!("{} triples, {degrees} degrees, {bad} mismatches", config.triples))
    };
    finish(11, "tensor-hom adjunction", s.n(), probe())
}

/// `class_of` is a ring map on both rings, duals conjugate,
/// and the norm identity.
pub fn k0_ring_map<F: Field>(s: &Structure<F>, config: &CheckConfig) -> CheckResult {
    let probe = || -> Probe {
        let mut rng = config.rng(12);
        let sizes = RandomModules::new(1, 6, 3);
        let rings = [K0Ring::stmod(s.n())?, K0Ring::on(s.n())?];
        let on = &rings[1];
        let mut bad = [0usize; 4];
        for _ in 0..config.pairs {
            let m = random_module(s, &sizes, &mut rng);
            let n = random_module(s, &sizes, &mut rng);
            let product = tensor(&m, &n, TensorVariant::Q)?;
            let ext = random_extension(&m, &n, &mut rng)?.module;
            for ring in &rings {
                let (cm, cn) = (ring.class_of(&m)?, ring.class_of(&n)?);
                if ring.class_of(&product)? != ring.mul(&cm, &cn)? {
                    bad[0] += 1;
                }
                if ring.class_of(&ext)? != ring.add(&cm, &cn)? {
                    bad[1] += 1;
                }
            }
            if on.class_of(&dual(&m))? != on.conjugate(&on.class_of(&m)?)? {
                bad[2] += 1;
            }
        }
        for _ in 0..config.norm_modules {
            if !on.norm_check(&random_module(s, &sizes, &mut rng))? {
                bad[3] += 1;
            }
        }
        verdict(
            bad.iter().all(|b| *b == 0),
            format!(
                "{} pairs: multiplicativity {}, additivity {}, duals {}; {} norm checks: {} failures",
                config.pairs, bad[0], bad[1], bad[2], config.norm_modules, bad[3]
            ),
        )
    };
    finish(12, "k0 ring map", s.n(), probe())
}

/// Runs every check for the structure's `n`, in criterion order.
pub fn run_all<F: Field>(s: &Structure<F>, config: &CheckConfig) -> Vec<CheckResult> {
    vec![
        hopf_axioms(s),
        integrals(s),
        cyclotomic(s.n()),
        graded_dimension(s),
        stable_hom_oracle(s, config),
        unit_object(s, config),
        shift_square(s, config),
        example_sequences(s, config),
        ideal_closure(s, config),
        braiding(s, config),
        adjunction(s, config),
        k0_ring_map(s, config),
    ]
}
