//! Null-homotopic maps and stable hom spaces.

use crate::arith::Field;
use crate::gradedmod::{
    free, hom_action, hom_space, hom_vector_as_map, tensor, GradedModule, HomLayout, ModuleError, ModuleMap,
    TensorLayout, TensorVariant,
};
use crate::linalg::{Echelon, Mat};

use std::collections::BTreeMap;

/// Degree-0 maps `M → N` split into all intertwiners and those factoring
/// through an injective.
#[derive(Clone, Debug)]
pub struct StableHom<F: Field> {
    pub total: Vec<ModuleMap<F>>,
    pub null_homotopic: Vec<ModuleMap<F>>,
    pub stable_dimension: usize,
}

/// `H_n{ℓ}`, which has `Λ` in degree 0.
pub fn injective_hull_factor<F: Field>(m: &GradedModule<F>) -> GradedModule<F> {
    free(m.shared_structure(), m.structure().ell())
}

/// `ρ_M: M → M ⊗ H_n{ℓ}`, `m ↦ m ⊗ Λ`.
pub fn rho<F: Field>(m: &GradedModule<F>) -> Result<ModuleMap<F>, ModuleError> {
    let f = m.field();
    let h = injective_hull_factor(m);
    let target = tensor(m, &h, TensorVariant::Q)?;
    let layout = TensorLayout::new(m, &h);
    let mut blocks = BTreeMap::new();
    for i in m.degrees() {
        let mut block = Mat::from_fn(target.dim(i), m.dim(i), |_, _| f.zero());
        for x in 0..m.dim(i) {
            block.set(layout.position(i, x, 0, 0), x, f.one());
        }
        blocks.insert(i, block);
    }
    ModuleMap::intertwiner(m.clone(), target, 0, blocks)
}

/// Basis of `Λ·Hom^{j−ℓ}(M, N)` inside the degree-`j` intertwiners, where
/// `(Λ·g)(m) = Σ Λ₂ g(S⁻¹(Λ₁) m)`.
pub fn null_homotopic_basis<F: Field>(
    m: &GradedModule<F>,
    n: &GradedModule<F>,
    degree: i64,
) -> Result<Vec<ModuleMap<F>>, ModuleError> {
    let s = m.structure();
    let f = m.field();
    let algebra = s.algebra();
    let lambda = algebra.basis_index(s.top_index(), 0);
    let layout = HomLayout::new(m, n);
    let action = hom_action(m, n, &layout, lambda, degree - s.ell());
    let mut image = Echelon::new(action.rows());
    for c in 0..action.cols() {
        image.insert(f, &action.column(c));
    }
    let maps: Vec<ModuleMap<F>> = image.basis().iter().map(|v| hom_vector_as_map(m, n, degree, v)).collect();
    for map in &maps {
        if let Some((k, i)) = map.intertwining_failure() {
            return Err(ModuleError::NotIntertwiner { k: k + 1, degree: i });
        }
    }
    Ok(maps)
}

pub fn stable_hom<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<StableHom<F>, ModuleError> {
    stable_hom_in_degree(m, n, 0)
}

pub fn stable_hom_in_degree<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, degree: i64) -> Result<StableHom<F>, ModuleError> {
    let total = hom_space(m, n, degree)?;
    let null_homotopic = null_homotopic_basis(m, n, degree)?;
    let stable_dimension = total.len() - null_homotopic.len();
    Ok(StableHom { total, null_homotopic, stable_dimension })
}

/// Whether a degree-`j` map lies in the span of the null-homotopic maps.
pub fn is_null_homotopic<F: Field>(map: &ModuleMap<F>) -> Result<bool, ModuleError> {
    let f = map.source().field();
    let basis = null_homotopic_basis(map.source(), map.target(), map.degree())?;
    let len = ModuleMap::flat_len(map.source(), map.target(), map.degree());
    let mut span = Echelon::new(len);
    for b in &basis {
        span.insert(f, &b.flatten());
    }
    Ok(span.contains(f, &map.flatten()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedmod::{trivial, v_k, ModuleMap};
    use crate::hopf::HnStructure;

    #[test]
    fn trivial_has_one_dimensional_stable_endomorphisms() {
        for n in [2, 3, 6] {
            let s = HnStructure::rational(n).unwrap();
            let k = trivial(&s, 0);
            let h = stable_hom(&k, &k).unwrap();
            assert_eq!((h.total.len(), h.null_homotopic.len(), h.stable_dimension), (1, 0, 1));
        }
    }

    #[test]
    fn identity_of_free_module_is_null_homotopic() {
        let s = HnStructure::rational(6).unwrap();
        let h = free(&s, 0);
        assert!(is_null_homotopic(&ModuleMap::identity(&h)).unwrap());
        assert_eq!(stable_hom(&h, &v_k(&s, 1, 0).unwrap()).unwrap().stable_dimension, 0);
    }

    #[test]
    fn string_endomorphisms() {
        let s = HnStructure::rational(6).unwrap();
        let v = v_k(&s, 1, 0).unwrap();
        assert_eq!(stable_hom(&v, &v).unwrap().stable_dimension, 1);
    }

    #[test]
    fn rho_is_injective() {
        let s = HnStructure::rational(6).unwrap();
        let v = v_k(&s, 0, 2).unwrap();
        let r = rho(&v).unwrap();
        assert_eq!(r.rank(), v.total_dim());
    }
}
