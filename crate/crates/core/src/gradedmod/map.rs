//! Homogeneous linear maps between graded modules and hom-space solving.

use std::collections::BTreeMap;

use crate::arith::Field;
use crate::linalg::{self, Mat, SparseEliminator};

use super::{GradedModule, ModuleError};

/// A homogeneous map of degree `j`: blocks `M^i → N^{i+j}`.
///
/// Absent blocks are zero.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    source: GradedModule<F>,
    target: GradedModule<F>,
    degree: i64,
    blocks: BTreeMap<i64, Mat<F::Elem>>,
}

impl<F: Field> PartialEq for ModuleMap<F> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.source == other.source
            && self.target == other.target
            && self.source.degrees().all(|i| self.block(i) == other.block(i))
    }
}

impl<F: Field> ModuleMap<F> {
    /// Checks block shapes; does not require the map to intertwine.
    pub fn new(
        source: GradedModule<F>,
        target: GradedModule<F>,
        degree: i64,
        blocks: BTreeMap<i64, Mat<F::Elem>>,
    ) -> Result<Self, ModuleError> {
        source.same_structure(&target)?;
        let f = source.field().clone();
        let mut kept = BTreeMap::new();
        for (i, m) in blocks {
            let expected = (target.dim(i + degree), source.dim(i));
            if m.shape() != expected {
                if linalg::is_zero(&f, &m) && (expected.0 == 0 || expected.1 == 0) {
                    continue;
                }
                return Err(ModuleError::MapShape { degree: i, expected, found: m.shape() });
            }
            if expected.0 > 0 && expected.1 > 0 {
                kept.insert(i, m);
            }
        }
        Ok(Self { source, target, degree, blocks: kept })
    }

    /// Checks shapes and that `f∘d_k = d_k∘f` for every `k`.
    pub fn intertwiner(
        source: GradedModule<F>,
        target: GradedModule<F>,
        degree: i64,
        blocks: BTreeMap<i64, Mat<F::Elem>>,
    ) -> Result<Self, ModuleError> {
        let map = Self::new(source, target, degree, blocks)?;
        if let Some((k, i)) = map.intertwining_failure() {
            return Err(ModuleError::NotIntertwiner { k: k + 1, degree: i });
        }
        Ok(map)
    }

    pub fn zero(source: GradedModule<F>, target: GradedModule<F>, degree: i64) -> Self {
        Self::new(source, target, degree, BTreeMap::new()).expect("empty blocks fit")
    }

    pub fn identity(module: &GradedModule<F>) -> Self {
        let f = module.field();
        let blocks = module.degrees().map(|i| (i, linalg::identity(f, module.dim(i)))).collect();
        Self::new(module.clone(), module.clone(), 0, blocks).expect("identity blocks fit")
    }

    pub fn source(&self) -> &GradedModule<F> {
        &self.source
    }

    pub fn target(&self) -> &GradedModule<F> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn blocks(&self) -> &BTreeMap<i64, Mat<F::Elem>> {
        &self.blocks
    }

    /// Block `M^i → N^{i+j}`, materialized as zero when absent.
    pub fn block(&self, i: i64) -> Mat<F::Elem> {
        match self.blocks.get(&i) {
            Some(m) => m.clone(),
            None => linalg::zeros(self.source.field(), self.target.dim(i + self.degree), self.source.dim(i)),
        }
    }

    pub fn apply(&self, i: i64, v: &[F::Elem]) -> Vec<F::Elem> {
        match self.blocks.get(&i) {
            Some(m) => linalg::mat_vec(self.source.field(), m, v),
            None => vec![self.source.field().zero(); self.target.dim(i + self.degree)],
        }
    }

    pub fn is_zero(&self) -> bool {
        let f = self.source.field();
        self.blocks.values().all(|m| linalg::is_zero(f, m))
    }

    /// First `(k, degree)` where `f∘d_k ≠ d_k∘f`.
    pub fn intertwining_failure(&self) -> Option<(usize, i64)> {
        let s = self.source.structure();
        let f = self.source.field();
        for k in 0..s.num_primes() {
            let nk = s.degree(k);
            for i in self.source.degrees() {
                let lhs = self.target.apply_block(k, i + self.degree, &self.block(i));
                let rhs = linalg::mat_mul(f, &self.block(i + nk), &self.source.action(k, i));
                if lhs != rhs {
                    return Some((k, i));
                }
            }
        }
        None
    }

    pub fn is_intertwiner(&self) -> bool {
        self.intertwining_failure().is_none()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Self) -> Result<Self, ModuleError> {
        if first.target != self.source {
            return Err(ModuleError::CompositionMismatch);
        }
        let f = self.source.field();
        let blocks = first
            .source
            .degrees()
            .map(|i| (i, linalg::mat_mul(f, &self.block(i + first.degree), &first.block(i))))
            .collect();
        Self::new(first.source.clone(), self.target.clone(), self.degree + first.degree, blocks)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ModuleError> {
        self.combine(other, |f, a, b| linalg::mat_add(f, a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ModuleError> {
        self.combine(other, |f, a, b| linalg::mat_sub(f, a, b))
    }

    fn combine(&self, other: &Self, op: impl Fn(&F, &Mat<F::Elem>, &Mat<F::Elem>) -> Mat<F::Elem>) -> Result<Self, ModuleError> {
        if self.degree != other.degree || self.source != other.source || self.target != other.target {
            return Err(ModuleError::CompositionMismatch);
        }
        let f = self.source.field();
        let blocks = self.source.degrees().map(|i| (i, op(f, &self.block(i), &other.block(i)))).collect();
        Self::new(self.source.clone(), self.target.clone(), self.degree, blocks)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.source.field();
        let blocks = self.blocks.iter().map(|(i, m)| (*i, linalg::mat_scale(f, m, c))).collect();
        Self::new(self.source.clone(), self.target.clone(), self.degree, blocks).expect("same shapes")
    }

    /// Linear combination `Σ c_i f_i` of maps with a common source, target and degree.
    pub fn combination(maps: &[Self], coeffs: &[F::Elem]) -> Option<Self> {
        let first = maps.first()?;
        let f = first.source.field();
        let blocks = first
            .source
            .degrees()
            .map(|i| {
                let mut acc = first.block(i);
                acc = linalg::mat_scale(f, &acc, &coeffs[0]);
                for (m, c) in maps.iter().zip(coeffs).skip(1) {
                    acc = linalg::mat_add(f, &acc, &linalg::mat_scale(f, &m.block(i), c));
                }
                (i, acc)
            })
            .collect();
        Self::new(first.source.clone(), first.target.clone(), first.degree, blocks).ok()
    }

    /// Inverse of a degree-0 map that is bijective in every degree.
    pub fn inverse(&self) -> Option<Self> {
        if self.degree != 0 || self.source.dims() != self.target.dims() {
            return None;
        }
        let f = self.source.field();
        let mut blocks = BTreeMap::new();
        for i in self.source.degrees() {
            blocks.insert(i, linalg::inverse(f, &self.block(i))?);
        }
        Self::new(self.target.clone(), self.source.clone(), 0, blocks).ok()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_intertwiner() && self.inverse().is_some()
    }

    /// Total rank over all degrees.
    pub fn rank(&self) -> usize {
        let f = self.source.field();
        self.blocks.values().map(|m| linalg::rank(f, m)).sum()
    }

    /// The map as one vector: blocks in ascending source degree, row-major.
    pub fn flatten(&self) -> Vec<F::Elem> {
        let mut out = Vec::new();
        for i in self.source.degrees() {
            out.extend(self.block(i).data().iter().cloned());
        }
        out
    }

    /// Length of [`flatten`](Self::flatten) for maps of `degree` between the modules.
    pub fn flat_len(source: &GradedModule<F>, target: &GradedModule<F>, degree: i64) -> usize {
        source.degrees().map(|i| source.dim(i) * target.dim(i + degree)).sum()
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn unflatten(source: &GradedModule<F>, target: &GradedModule<F>, degree: i64, flat: &[F::Elem]) -> Self {
        let mut blocks = BTreeMap::new();
        let mut pos = 0;
        for i in source.degrees() {
            let (r, c) = (target.dim(i + degree), source.dim(i));
            blocks.insert(i, Mat::from_rows(r, c, flat[pos..pos + r * c].to_vec()));
            pos += r * c;
        }
        Self::new(source.clone(), target.clone(), degree, blocks).expect("shapes follow the dims")
    }
}

/// Basis of `{f : M → N of degree j with f d_k = d_k f for all k}`.
pub fn hom_space<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, degree: i64) -> Result<Vec<ModuleMap<F>>, ModuleError> {
    m.same_structure(n)?;
    let f = m.field();
    let s = m.structure();
    // variable (i, r, c) is entry (r, c) of the block at source degree i
    let mut offset = BTreeMap::new();
    let mut total = 0;
    for i in m.degrees() {
        offset.insert(i, total);
        total += m.dim(i) * n.dim(i + degree);
    }
    let var = |i: i64, r: usize, c: usize| -> Option<usize> {
        let cols = m.dim(i);
        offset.get(&i).map(|o| o + r * cols + c).filter(|_| n.dim(i + degree) > 0)
    };
    let mut solver = SparseEliminator::new(total);
    for k in 0..s.num_primes() {
        let nk = s.degree(k);
        for i in m.degrees() {
            // (A^N_k[i+j] F_i − F_{i+n_k} A^M_k[i])[r, c] = 0
            let rows = n.dim(i + degree + nk);
            let cols = m.dim(i);
            if rows == 0 || cols == 0 {
                continue;
            }
            let an = n.action(k, i + degree);
            let am = m.action(k, i);
            for r in 0..rows {
                for c in 0..cols {
                    let mut eq = Vec::new();
                    for x in 0..an.cols() {
                        let a = an.get(r, x);
                        if !f.is_zero(a) {
                            if let Some(v) = var(i, x, c) {
                                eq.push((v, a.clone()));
                            }
                        }
                    }
                    for y in 0..am.rows() {
                        let a = am.get(y, c);
                        if !f.is_zero(a) {
                            if let Some(v) = var(i + nk, r, y) {
                                eq.push((v, f.neg(a)));
                            }
                        }
                    }
                    solver.add_row(f, eq);
                }
            }
        }
    }
    Ok(solver
        .kernel(f)
        .into_iter()
        .map(|flat| ModuleMap::unflatten(m, n, degree, &flat))
        .collect())
}

/// Dimension of the hom space of degree `j`.
pub fn hom_dimension<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, degree: i64) -> Result<usize, ModuleError> {
    Ok(hom_space(m, n, degree)?.len())
}
