//! Splitting off free summands.
//!
//! If `Λm ≠ 0` for a homogeneous `m ∈ M^i`, the cyclic module `H·m` is free
//! on `m`. Choosing `φ` with `φ(Λm) = 1`, the map
//! `r(x) = Σ_a φ(d^{top−a} x) d^a m` is an `H_n`-linear retraction onto
//! `H·m`, so `M = H·m ⊕ ker r`.

use std::collections::BTreeMap;

use crate::arith::{Field, LaurentPolynomial};
use crate::gradedmod::{free, submodule_from_spaces, GradedModule, HomogeneousVector, ModuleError, ModuleMap, Subspaces};
use crate::linalg::{self, Echelon, Mat};

/// `M ≅ H_n^{f(ν)} ⊕ reduced`, where `f(ν) = Σ ν^{deg g}` over the free generators `g`.
#[derive(Clone, Debug)]
pub struct StrippedModule<F: Field> {
    pub free_multiplicity: LaurentPolynomial,
    /// Free generators in the coordinates of the input module.
    pub generators: Vec<HomogeneousVector<F::Elem>>,
    pub reduced: GradedModule<F>,
    /// `reduced → M`.
    pub inclusion: ModuleMap<F>,
    /// `H{−deg g₁} ⊕ … ⊕ reduced → M`, an isomorphism.
    pub witness: ModuleMap<F>,
}

impl<F: Field> StrippedModule<F> {
    pub fn is_projective(&self) -> bool {
        self.reduced.is_zero()
    }
}

fn find_free_generator<F: Field>(m: &GradedModule<F>, spaces: &Subspaces<F::Elem>) -> Option<(i64, Vec<F::Elem>, Vec<F::Elem>)> {
    let f = m.field();
    for (i, space) in spaces {
        if space.rank() == 0 {
            continue;
        }
        let lambda = m.integral_matrix(*i);
        for b in space.basis() {
            let image = linalg::mat_vec(f, &lambda, b);
            if image.iter().any(|x| !f.is_zero(x)) {
                return Some((*i, b.clone(), image));
            }
        }
    }
    None
}

pub fn strip_projectives<F: Field>(m: &GradedModule<F>) -> Result<StrippedModule<F>, ModuleError> {
    let s = m.structure();
    let f = m.field();
    let top = s.exponents(s.top_index());
    let mut spaces: Subspaces<F::Elem> = m
        .degrees()
        .map(|i| {
            let mut e = Echelon::new(m.dim(i));
            for c in 0..m.dim(i) {
                let mut v = vec![f.zero(); m.dim(i)];
                v[c] = f.one();
                e.insert(f, &v);
            }
            (i, e)
        })
        .collect();
    let mut generators = Vec::new();
    while let Some((i, g, lambda_g)) = find_free_generator(m, &spaces) {
        // φ picks the first nonzero coordinate of Λg, scaled so that φ(Λg) = 1.
        let pos = lambda_g.iter().position(|x| !f.is_zero(x)).expect("nonzero");
        let scale = f.inv(&lambda_g[pos]).expect("nonzero");
        let mut next = BTreeMap::new();
        for (e, space) in &spaces {
            let monomials: Vec<usize> = (0..s.hn_dim()).filter(|a| s.monomial_degree(*a) == e - i).collect();
            let basis = space.basis();
            let mut kept = Echelon::new(m.dim(*e));
            if monomials.is_empty() {
                for b in basis {
                    kept.insert(f, b);
                }
            } else if !basis.is_empty() {
                let rows: Vec<Vec<F::Elem>> = monomials
                    .iter()
                    .map(|a| {
                        let ex = s.exponents(*a);
                        let co: Vec<u32> = top.iter().zip(&ex).map(|(t, x)| t - x).collect();
                        let mat = m.monomial_matrix(&co, *e);
                        basis.iter().map(|b| f.mul(&linalg::mat_vec(f, &mat, b)[pos], &scale)).collect()
                    })
                    .collect();
                let r = Mat::from_rows(rows.len(), basis.len(), rows.into_iter().flatten().collect());
                for combo in linalg::kernel(f, &r) {
                    let mut v = vec![f.zero(); m.dim(*e)];
                    for (c, b) in combo.iter().zip(basis) {
                        for (x, y) in v.iter_mut().zip(b) {
                            f.mul_add_assign(x, c, y);
                        }
                    }
                    kept.insert(f, &v);
                }
            }
            next.insert(*e, kept);
        }
        spaces = next;
        generators.push(HomogeneousVector::new(i, g));
    }
    let sub = submodule_from_spaces(m, spaces)?;
    let free_multiplicity = LaurentPolynomial::from_terms(generators.iter().map(|g| (g.degree, 1)));
    let witness = assemble_witness(m, &generators, &sub.module, &sub.inclusion)?;
    Ok(StrippedModule { free_multiplicity, generators, reduced: sub.module, inclusion: sub.inclusion, witness })
}

fn assemble_witness<F: Field>(
    m: &GradedModule<F>,
    generators: &[HomogeneousVector<F::Elem>],
    reduced: &GradedModule<F>,
    inclusion: &ModuleMap<F>,
) -> Result<ModuleMap<F>, ModuleError> {
    let s = m.shared_structure();
    let mut source = GradedModule::zero(s.clone());
    for g in generators {
        source = source.direct_sum(&free(s, -g.degree))?;
    }
    source = source.direct_sum(reduced)?;
    let mut blocks = BTreeMap::new();
    for e in source.degrees() {
        let mut columns = Vec::with_capacity(source.dim(e));
        for g in generators {
            for a in 0..s.hn_dim() {
                if s.monomial_degree(a) + g.degree == e {
                    columns.push(m.apply_monomial(&s.exponents(a), g.degree, &g.coords));
                }
            }
        }
        let inc = inclusion.block(e);
        for c in 0..inc.cols() {
            columns.push(inc.column(c));
        }
        blocks.insert(e, Mat::from_columns(m.dim(e), &columns));
    }
    ModuleMap::intertwiner(source, m.clone(), 0, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedmod::{example_v, tensor, trivial, TensorVariant};
    use crate::hopf::HnStructure;

    #[test]
    fn free_module_strips_completely() {
        for n in [2, 6, 12] {
            let s = HnStructure::rational(n).unwrap();
            let st = strip_projectives(&free(&s, 0)).unwrap();
            assert!(st.is_projective());
            assert_eq!(st.free_multiplicity, LaurentPolynomial::one());
            assert!(st.witness.is_isomorphism());
        }
    }

    #[test]
    fn trivial_module_has_no_free_part() {
        let s = HnStructure::rational(6).unwrap();
        let st = strip_projectives(&trivial(&s, 0)).unwrap();
        assert!(st.free_multiplicity.is_zero());
        assert_eq!(st.reduced.total_dim(), 1);
    }

    #[test]
    fn tensor_with_free_is_free() {
        let s = HnStructure::rational(6).unwrap();
        let v = example_v(&s).unwrap();
        let t = tensor(&free(&s, 0), &v, TensorVariant::Q).unwrap();
        let st = strip_projectives(&t).unwrap();
        assert!(st.is_projective());
        assert_eq!(st.free_multiplicity, v.graded_dimension());
        assert!(st.witness.is_isomorphism());
    }
}
