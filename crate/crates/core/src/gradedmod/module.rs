//! Graded `H_n`-modules stored as degreewise blocks.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{Field, LaurentPolynomial};
use crate::hopf::{Bosonization, HnStructure, Structure};
use crate::linalg::{self, Mat};

use super::ModuleError;

#[derive(Debug)]
struct ModuleData<F: Field> {
    structure: Structure<F>,
    /// Nonzero components only.
    dims: BTreeMap<i64, usize>,
    /// `actions[k][i]` maps degree `i` to degree `i + n_k`; absent blocks are zero.
    actions: Vec<BTreeMap<i64, Mat<F::Elem>>>,
}

/// A finite-dimensional graded `H_n`-module.
///
/// `A_k[i]` has shape `dim(i + n_k) × dim(i)` and acts on column vectors.
/// Cloning is cheap.
#[derive(Debug)]
pub struct GradedModule<F: Field> {
    data: Arc<ModuleData<F>>,
}

impl<F: Field> Clone for GradedModule<F> {
    fn clone(&self) -> Self {
        Self { data: self.data.clone() }
    }
}

impl<F: Field> PartialEq for GradedModule<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.dims == other.data.dims
                && self.data.actions == other.data.actions
                && self.data.structure.n() == other.data.structure.n())
    }
}

impl<F: Field> GradedModule<F> {
    /// Validates raw data: shapes, nilpotency `d_k^{p_k} = 0`, and
    /// commutation `d_k d_l = d_l d_k`.
    pub fn new(
        structure: Structure<F>,
        dims: BTreeMap<i64, usize>,
        actions: Vec<BTreeMap<i64, Mat<F::Elem>>>,
    ) -> Result<Self, ModuleError> {
        let t = structure.num_primes();
        if actions.len() != t {
            return Err(ModuleError::ActionCount { expected: t, found: actions.len() });
        }
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        let dim_at = |i: i64| dims.get(&i).copied().unwrap_or(0);
        let f = structure.field();
        let mut cleaned = Vec::with_capacity(t);
        for (k, blocks) in actions.into_iter().enumerate() {
            let nk = structure.degree(k);
            let mut kept = BTreeMap::new();
            for (i, m) in blocks {
                let expected = (dim_at(i + nk), dim_at(i));
                if m.shape() != expected {
                    if linalg::is_zero(f, &m) && (expected.0 == 0 || expected.1 == 0) {
                        continue;
                    }
                    return Err(ModuleError::ShapeMismatch {
                        k: k + 1,
                        degree: i,
                        expected,
                        found: m.shape(),
                    });
                }
                if expected.0 > 0 && expected.1 > 0 && !linalg::is_zero(f, &m) {
                    kept.insert(i, m);
                }
            }
            cleaned.push(kept);
        }
        let module = Self { data: Arc::new(ModuleData { structure, dims, actions: cleaned }) };
        module.check_relations()?;
        Ok(module)
    }

    fn check_relations(&self) -> Result<(), ModuleError> {
        let s = self.structure();
        let f = s.field();
        for k in 0..s.num_primes() {
            let p = s.prime(k) as usize;
            for &i in self.data.dims.keys() {
                let mut m = linalg::identity(f, self.dim(i));
                let mut deg = i;
                for _ in 0..p {
                    m = self.apply_block(k, deg, &m);
                    deg += s.degree(k);
                }
                if !linalg::is_zero(f, &m) {
                    return Err(ModuleError::NilpotencyViolation { k: k + 1, degree: i });
                }
            }
        }
        for k in 0..s.num_primes() {
            for l in (k + 1)..s.num_primes() {
                for &i in self.data.dims.keys() {
                    let id = linalg::identity(f, self.dim(i));
                    let kl = self.apply_block(l, i + s.degree(k), &self.apply_block(k, i, &id));
                    let lk = self.apply_block(k, i + s.degree(l), &self.apply_block(l, i, &id));
                    if kl != lk {
                        return Err(ModuleError::CommutationViolation { k: k + 1, l: l + 1, degree: i });
                    }
                }
            }
        }
        Ok(())
    }

    /// The zero module.
    pub fn zero(structure: Structure<F>) -> Self {
        let t = structure.num_primes();
        Self::new(structure, BTreeMap::new(), vec![BTreeMap::new(); t]).expect("zero module is valid")
    }

    pub fn structure(&self) -> &HnStructure<F> {
        &self.data.structure
    }

    pub fn shared_structure(&self) -> &Structure<F> {
        &self.data.structure
    }

    pub fn field(&self) -> &F {
        self.data.structure.field()
    }

    /// `dim M^i`.
    pub fn dim(&self, degree: i64) -> usize {
        self.data.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.data.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.dims.is_empty()
    }

    /// Degrees with nonzero components, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.data.dims.keys().copied()
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.data.dims
    }

    /// Stored blocks of `d_k` (0-based `k`), keyed by source degree.
    pub fn action_blocks(&self, k: usize) -> &BTreeMap<i64, Mat<F::Elem>> {
        &self.data.actions[k]
    }

    /// `A_k[i]` as a dense matrix (zero when no block is stored).
    pub fn action(&self, k: usize, degree: i64) -> Mat<F::Elem> {
        match self.data.actions[k].get(&degree) {
            Some(m) => m.clone(),
            None => linalg::zeros(self.field(), self.dim(degree + self.structure().degree(k)), self.dim(degree)),
        }
    }

    /// `A_k[i] · m` for a matrix `m` whose rows index `M^i`.
    pub fn apply_block(&self, k: usize, degree: i64, m: &Mat<F::Elem>) -> Mat<F::Elem> {
        let target = self.dim(degree + self.structure().degree(k));
        match self.data.actions[k].get(&degree) {
            Some(a) => linalg::mat_mul(self.field(), a, m),
            None => linalg::zeros(self.field(), target, m.cols()),
        }
    }

    /// `d_k v` for `v ∈ M^i`.
    pub fn apply(&self, k: usize, degree: i64, v: &[F::Elem]) -> Vec<F::Elem> {
        let target = self.dim(degree + self.structure().degree(k));
        match self.data.actions[k].get(&degree) {
            Some(a) => linalg::mat_vec(self.field(), a, v),
            None => vec![self.field().zero(); target],
        }
    }

    /// `d_k^e v`.
    pub fn apply_power(&self, k: usize, e: u32, degree: i64, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = v.to_vec();
        let mut deg = degree;
        for _ in 0..e {
            out = self.apply(k, deg, &out);
            deg += self.structure().degree(k);
        }
        out
    }

    /// `d^a v` for an exponent vector `a`.
    pub fn apply_monomial(&self, exponents: &[u32], degree: i64, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = v.to_vec();
        let mut deg = degree;
        for (k, e) in exponents.iter().enumerate() {
            out = self.apply_power(k, *e, deg, &out);
            deg += *e as i64 * self.structure().degree(k);
        }
        out
    }

    /// Matrix of `d^a` from degree `i` to degree `i + deg(a)`.
    pub fn monomial_matrix(&self, exponents: &[u32], degree: i64) -> Mat<F::Elem> {
        let f = self.field();
        let mut m = linalg::identity(f, self.dim(degree));
        let mut deg = degree;
        for (k, e) in exponents.iter().enumerate() {
            for _ in 0..*e {
                m = self.apply_block(k, deg, &m);
                deg += self.structure().degree(k);
            }
        }
        m
    }

    /// Action of a PBW basis element `d^a K^i` of the bosonization on `M^e`,
    /// with `K` acting by `q^e`.
    pub fn bosonization_action(&self, algebra: &Bosonization<F>, index: usize, degree: i64) -> Mat<F::Elem> {
        let (alpha, k_power) = algebra.split(index);
        let exps = self.structure().exponents(alpha);
        let scalar = self.structure().q_pow(k_power as i64 * degree);
        linalg::mat_scale(self.field(), &self.monomial_matrix(&exps, degree), &scalar)
    }

    /// Matrix of `Λ = d^top` from degree `i` to degree `i + ℓ`.
    pub fn integral_matrix(&self, degree: i64) -> Mat<F::Elem> {
        let s = self.structure();
        self.monomial_matrix(&s.exponents(s.top_index()), degree)
    }

    /// `dim_ν M = Σ dim M^i ν^i`.
    pub fn graded_dimension(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.data.dims.iter().map(|(i, d)| (*i, *d as i64)))
    }

    /// Offset of each degree in the concatenated coordinate vector.
    pub fn offsets(&self) -> BTreeMap<i64, usize> {
        let mut acc = 0;
        self.data
            .dims
            .iter()
            .map(|(i, d)| {
                let o = acc;
                acc += d;
                (*i, o)
            })
            .collect()
    }

    /// `M{b}` with `(M{b})^i = M^{i+b}`.
    pub fn shift(&self, b: i64) -> Self {
        let dims = self.data.dims.iter().map(|(i, d)| (i - b, *d)).collect();
        let actions = self
            .data
            .actions
            .iter()
            .map(|blocks| blocks.iter().map(|(i, m)| (i - b, m.clone())).collect())
            .collect();
        Self::new(self.data.structure.clone(), dims, actions).expect("shift preserves validity")
    }

    /// `M ⊕ N`, with `M` first in every degree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, ModuleError> {
        self.same_structure(other)?;
        let f = self.field();
        let s = self.structure();
        let mut dims = self.data.dims.clone();
        for (i, d) in other.dims() {
            *dims.entry(*i).or_insert(0) += d;
        }
        let mut actions = Vec::new();
        for k in 0..s.num_primes() {
            let mut blocks = BTreeMap::new();
            for &i in dims.keys() {
                let j = i + s.degree(k);
                let rows = dims.get(&j).copied().unwrap_or(0);
                if rows == 0 {
                    continue;
                }
                let (a, b) = (self.action(k, i), other.action(k, i));
                let (ra, ca) = (self.dim(j), self.dim(i));
                let m = Mat::from_fn(rows, dims[&i], |r, c| match (r < ra, c < ca) {
                    (true, true) => a.get(r, c).clone(),
                    (false, false) => b.get(r - ra, c - ca).clone(),
                    _ => f.zero(),
                });
                blocks.insert(i, m);
            }
            actions.push(blocks);
        }
        Self::new(self.shared_structure().clone(), dims, actions)
    }

    pub(crate) fn same_structure(&self, other: &Self) -> Result<(), ModuleError> {
        if self.structure().n() != other.structure().n() || self.structure().root_order() != other.structure().root_order() {
            return Err(ModuleError::StructureMismatch(self.structure().n(), other.structure().n()));
        }
        Ok(())
    }

    /// Sum over degrees of the rank of `d_k^e`; used as an isomorphism invariant.
    pub fn power_rank(&self, k: usize, e: u32) -> usize {
        let mut exps = vec![0; self.structure().num_primes()];
        exps[k] = e;
        self.degrees().map(|i| linalg::rank(self.field(), &self.monomial_matrix(&exps, i))).sum()
    }
}

/// Incremental construction of a module's raw data.
pub struct ModuleBuilder<F: Field> {
    structure: Structure<F>,
    dims: BTreeMap<i64, usize>,
    actions: Vec<BTreeMap<i64, Mat<F::Elem>>>,
}

impl<F: Field> ModuleBuilder<F> {
    pub fn new(structure: Structure<F>) -> Self {
        let t = structure.num_primes();
        Self { structure, dims: BTreeMap::new(), actions: vec![BTreeMap::new(); t] }
    }

    pub fn dim(mut self, degree: i64, dim: usize) -> Self {
        self.dims.insert(degree, dim);
        self
    }

    /// Sets `A_k[from_degree]` (0-based `k`).
    pub fn action(mut self, k: usize, from_degree: i64, matrix: Mat<F::Elem>) -> Result<Self, ModuleError> {
        if k >= self.actions.len() {
            return Err(ModuleError::PrimeIndex { k: k + 1, t: self.actions.len() });
        }
        self.actions[k].insert(from_degree, matrix);
        Ok(self)
    }

    pub fn build(self) -> Result<GradedModule<F>, ModuleError> {
        GradedModule::new(self.structure, self.dims, self.actions)
    }
}
