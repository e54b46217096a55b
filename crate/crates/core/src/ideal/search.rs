//! Budgeted depth-first search for `V_k` filtrations.
//!
//! Free summands are split off first and filtered by strings directly. The
//! rest is peeled bottom-up: at each stage a homogeneous `v` of the current
//! quotient with `d_l v = 0` for `l ≠ k` and `d_k^{p_k−1} v ≠ 0` generates a
//! copy of a shifted `V_k`, which is factored out.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{cyclotomic_polynomial, Field, LaurentPolynomial};
use crate::gradedmod::{quotient, submodule, GradedModule, HomogeneousVector, ModuleError, ModuleMap};
use crate::linalg::{self, Mat};
use crate::stable::{cone, strip_projectives};

use super::{FiltrationCertificate, FiltrationStep};

/// Search parameters. `budget` bounds the number of candidate generators
/// tried over the whole search.
#[derive(Clone, Debug)]
pub struct IdealSearch {
    pub seed: u64,
    pub budget: usize,
    /// Random combinations tried at a stage once all basis candidates fail.
    pub random_per_stage: usize,
}

impl Default for IdealSearch {
    fn default() -> Self {
        Self { seed: 0, budget: 10_000, random_per_stage: 8 }
    }
}

/// Proof that a module is not in the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NonMembership {
    /// `dim_ν M` is not divisible by the given polynomial.
    Divisibility { divisor: LaurentPolynomial, remainder: LaurentPolynomial },
    /// `d_k^{p_k−1}` has rank `rank` but freeness over `k[d_k]/(d_k^{p_k})` needs `needed`.
    Freeness { k: usize, rank: usize, needed: Option<usize> },
}

impl std::fmt::Display for NonMembership {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NonMembership::Divisibility { divisor, remainder } => {
                write!(f, "divisibility: graded dimension leaves remainder {remainder} modulo {divisor}")
            }
            NonMembership::Freeness { k, rank, needed: Some(needed) } => {
                write!(f, "freeness: rank of d{}^(p-1) is {rank}, free modules need {needed}", k + 1)
            }
            NonMembership::Freeness { k, rank, needed: None } => {
                write!(f, "freeness: dimension is not divisible by p{} (rank of top power {rank})", k + 1)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Membership<E> {
    Member(FiltrationCertificate<E>),
    NotMember(NonMembership),
    NotCertified { nodes: usize },
}

impl<E> Membership<E> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn certificate(&self) -> Option<&FiltrationCertificate<E>> {
        match self {
            Membership::Member(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Membership::Member(_) => "MEMBER",
            Membership::NotMember(_) => "NOT-MEMBER",
            Membership::NotCertified { .. } => "NOT-CERTIFIED",
        }
    }
}

/// `[n]_ν / [n_k]_ν = 1 + ν^{n_k} + … + ν^{(p_k−1)n_k}`, the graded dimension of `V_k`.
pub fn string_polynomial<F: Field>(m: &GradedModule<F>, k: usize) -> LaurentPolynomial {
    let s = m.structure();
    LaurentPolynomial::from_terms((0..s.prime(k) as i64).map(|j| (j * s.degree(k), 1)))
}

/// Rank criterion for freeness over `k[d_k]/(d_k^{p_k})`.
pub fn is_free_over_hnk<F: Field>(m: &GradedModule<F>, k: usize) -> bool {
    freeness_failure(m, k).is_none()
}

fn freeness_failure<F: Field>(m: &GradedModule<F>, k: usize) -> Option<NonMembership> {
    let p = m.structure().prime(k) as usize;
    let rank = m.power_rank(k, p as u32 - 1);
    if m.total_dim() % p != 0 {
        return Some(NonMembership::Freeness { k, rank, needed: None });
    }
    let needed = m.total_dim() / p;
    (rank != needed).then_some(NonMembership::Freeness { k, rank, needed: Some(needed) })
}

fn divisibility_failure(dim: &LaurentPolynomial, divisor: &LaurentPolynomial) -> Option<NonMembership> {
    let remainder = dim.reduce_mod(divisor);
    (!remainder.is_zero()).then(|| NonMembership::Divisibility { divisor: divisor.clone(), remainder })
}

/// Search state shared along one depth-first run.
struct Searcher<'a, F: Field> {
    rng: ChaCha8Rng,
    config: &'a IdealSearch,
    nodes: usize,
    exhausted: bool,
    primes: Vec<usize>,
    _field: std::marker::PhantomData<F>,
}

/// A quotient stage together with a linear lift of its coordinates to the
/// module being searched.
struct Stage<F: Field> {
    module: GradedModule<F>,
    lift: ModuleMap<F>,
}

impl<F: Field> Searcher<'_, F> {
    fn candidates(&mut self, q: &GradedModule<F>, k: usize) -> Vec<HomogeneousVector<F::Elem>> {
        let s = q.structure();
        let f = q.field();
        let p = s.prime(k) as u32;
        let mut basis_candidates = Vec::new();
        let mut spaces = Vec::new();
        for i in q.degrees() {
            let others: Vec<Mat<F::Elem>> = (0..s.num_primes()).filter(|l| *l != k).map(|l| q.action(l, i)).collect();
            let rows: usize = others.iter().map(|a| a.rows()).sum();
            let mut data = Vec::with_capacity(rows * q.dim(i));
            for a in &others {
                data.extend(a.data().iter().cloned());
            }
            let solutions = if rows == 0 {
                let id = linalg::identity(f, q.dim(i));
                (0..q.dim(i)).map(|c| id.column(c)).collect()
            } else {
                linalg::kernel(f, &Mat::from_rows(rows, q.dim(i), data))
            };
            let mut exps = vec![0u32; s.num_primes()];
            exps[k] = p - 1;
            let top = q.monomial_matrix(&exps, i);
            for v in &solutions {
                if linalg::mat_vec(f, &top, v).iter().any(|x| !f.is_zero(x)) {
                    basis_candidates.push(HomogeneousVector::new(i, v.clone()));
                }
            }
            if !solutions.is_empty() {
                spaces.push((i, solutions, top));
            }
        }
        for _ in 0..self.config.random_per_stage {
            if spaces.is_empty() {
                break;
            }
            let (i, solutions, top) = &spaces[self.rng.gen_range(0..spaces.len())];
            let mut v = vec![f.zero(); q.dim(*i)];
            for sol in solutions {
                let c = f.from_i64([1, 2, -1, 3][self.rng.gen_range(0..4)]);
                for (x, y) in v.iter_mut().zip(sol) {
                    f.mul_add_assign(x, &c, y);
                }
            }
            if linalg::mat_vec(f, top, &v).iter().any(|x| !f.is_zero(x)) {
                basis_candidates.push(HomogeneousVector::new(*i, v));
            }
        }
        basis_candidates
    }

    fn run(&mut self, stage: Stage<F>) -> Result<Option<Vec<FiltrationStep<F::Elem>>>, ModuleError> {
        let q = &stage.module;
        if q.is_zero() {
            return Ok(Some(Vec::new()));
        }
        for k in self.primes.clone() {
            if self.primes.len() == 1 && !is_free_over_hnk(q, k) {
                return Ok(None);
            }
            for v in self.candidates(q, k) {
                if self.nodes >= self.config.budget {
                    self.exhausted = true;
                    return Ok(None);
                }
                self.nodes += 1;
                let sub = submodule(q, std::slice::from_ref(&v))?;
                let quo = quotient(q, &sub.spaces)?;
                let lift = stage.lift.compose(&quo.section)?;
                let generator = HomogeneousVector::new(v.degree, stage.lift.apply(v.degree, &v.coords));
                if let Some(mut rest) = self.run(Stage { module: quo.module, lift })? {
                    rest.insert(0, FiltrationStep { k, shift: -v.degree, generator });
                    return Ok(Some(rest));
                }
                if self.exhausted {
                    return Ok(None);
                }
            }
        }
        Ok(None)
    }
}

/// Filtration steps for the free summands of `M`, by `d_k` strings.
fn free_steps<F: Field>(
    m: &GradedModule<F>,
    generators: &[HomogeneousVector<F::Elem>],
    k: usize,
) -> Vec<FiltrationStep<F::Elem>> {
    let s = m.structure();
    let mut order: Vec<usize> = (0..s.hn_dim()).filter(|a| s.exponents(*a)[k] == 0).collect();
    order.sort_by_key(|a| std::cmp::Reverse(s.exponents(*a).iter().sum::<u32>()));
    let mut steps = Vec::new();
    for g in generators {
        for a in &order {
            let degree = g.degree + s.monomial_degree(*a);
            let coords = m.apply_monomial(&s.exponents(*a), g.degree, &g.coords);
            steps.push(FiltrationStep { k, shift: -degree, generator: HomogeneousVector::new(degree, coords) });
        }
    }
    steps
}

fn search<F: Field>(m: &GradedModule<F>, primes: Vec<usize>, config: &IdealSearch) -> Result<Membership<F::Elem>, ModuleError> {
    let stripped = strip_projectives(m)?;
    let mut steps = free_steps(m, &stripped.generators, primes[0]);
    let reduced = &stripped.reduced;
    let mut searcher = Searcher {
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        config,
        nodes: 0,
        exhausted: false,
        primes,
        _field: std::marker::PhantomData,
    };
    let stage = Stage { module: reduced.clone(), lift: ModuleMap::identity(reduced) };
    match searcher.run(stage)? {
        Some(found) => {
            for step in found {
                let g = &step.generator;
                let coords = stripped.inclusion.apply(g.degree, &g.coords);
                steps.push(FiltrationStep { generator: HomogeneousVector::new(g.degree, coords), ..step });
            }
            let certificate = FiltrationCertificate { steps };
            certificate.replay(m).expect("search output replays");
            Ok(Membership::Member(certificate))
        }
        None => Ok(Membership::NotCertified { nodes: searcher.nodes }),
    }
}

/// Membership in `𝐈_k` (0-based `k`).
pub fn is_in_ik<F: Field>(m: &GradedModule<F>, k: usize, config: &IdealSearch) -> Result<Membership<F::Elem>, ModuleError> {
    let t = m.structure().num_primes();
    if k >= t {
        return Err(ModuleError::PrimeIndex { k: k + 1, t });
    }
    if let Some(obstruction) = divisibility_failure(&m.graded_dimension(), &string_polynomial(m, k)) {
        return Ok(Membership::NotMember(obstruction));
    }
    if let Some(obstruction) = freeness_failure(m, k) {
        return Ok(Membership::NotMember(obstruction));
    }
    search(m, vec![k], config)
}

/// Membership in `𝐈`, filtered by shifted `V_k` for any `k`.
pub fn is_in_i<F: Field>(m: &GradedModule<F>, config: &IdealSearch) -> Result<Membership<F::Elem>, ModuleError> {
    let s = m.structure();
    let phi = cyclotomic_polynomial(s.n())?;
    if let Some(obstruction) = divisibility_failure(&m.graded_dimension(), &phi) {
        return Ok(Membership::NotMember(obstruction));
    }
    search(m, (0..s.num_primes()).collect(), config)
}

/// Whether `f` becomes invertible modulo `𝐈`: its cone is searched for a
/// filtration after removing free summands.
pub fn is_quasi_isomorphism<F: Field>(map: &ModuleMap<F>, config: &IdealSearch) -> Result<Membership<F::Elem>, ModuleError> {
    let c = cone(map)?;
    is_in_i(&c.module, config)
}
