//! The shift functor and cones.

use std::collections::BTreeMap;

use crate::arith::Field;
use crate::gradedmod::{cokernel, dual, image_spaces, quotient, GradedModule, ModuleError, ModuleMap, Quotient};
use crate::linalg::{self, Mat};

use super::{rho, strip_projectives};

/// `coker(ρ_M)` before stripping.
pub fn suspension<F: Field>(m: &GradedModule<F>) -> Result<Quotient<F>, ModuleError> {
    cokernel(&rho(m)?)
}

/// `M[1]`: the cokernel of `ρ_M` with free summands removed.
pub fn shift_plus<F: Field>(m: &GradedModule<F>) -> Result<GradedModule<F>, ModuleError> {
    Ok(strip_projectives(&suspension(m)?.module)?.reduced)
}

/// `M[−1] = (M*[1])*`, with free summands removed.
pub fn shift_minus<F: Field>(m: &GradedModule<F>) -> Result<GradedModule<F>, ModuleError> {
    let up = shift_plus(&dual(m))?;
    Ok(strip_projectives(&dual(&up))?.reduced)
}

/// `M[r]` for any integer `r`; `r = 0` strips `M`.
pub fn shift_times<F: Field>(m: &GradedModule<F>, times: i64) -> Result<GradedModule<F>, ModuleError> {
    let mut out = strip_projectives(m)?.reduced;
    for _ in 0..times.unsigned_abs() {
        out = if times > 0 { shift_plus(&out)? } else { shift_minus(&out)? };
    }
    Ok(out)
}

/// `C_f = (M ⊗ H{ℓ} ⊕ N) / {(ρ(m), −f(m))}` with the structure map `N → C_f`.
#[derive(Clone, Debug)]
pub struct Cone<F: Field> {
    pub module: GradedModule<F>,
    pub from_target: ModuleMap<F>,
}

pub fn cone<F: Field>(map: &ModuleMap<F>) -> Result<Cone<F>, ModuleError> {
    if map.degree() != 0 {
        return Err(ModuleError::MapDegree { expected: 0, found: map.degree() });
    }
    if let Some((k, i)) = map.intertwining_failure() {
        return Err(ModuleError::NotIntertwiner { k: k + 1, degree: i });
    }
    let (m, n) = (map.source(), map.target());
    let f = m.field();
    let r = rho(m)?;
    let injective = r.target().clone();
    let sum = injective.direct_sum(n)?;
    let mut relation = BTreeMap::new();
    for i in m.degrees() {
        let (top, bottom) = (r.block(i), linalg::mat_scale(f, &map.block(i), &f.neg(&f.one())));
        let rows = sum.dim(i);
        let split = injective.dim(i);
        let block = Mat::from_fn(rows, m.dim(i), |row, c| {
            if row < split {
                top.get(row, c).clone()
            } else {
                bottom.get(row - split, c).clone()
            }
        });
        relation.insert(i, block);
    }
    let relation = ModuleMap::intertwiner(m.clone(), sum.clone(), 0, relation)?;
    let q = quotient(&sum, &image_spaces(&relation))?;
    let mut into_sum = BTreeMap::new();
    for i in n.degrees() {
        let split = injective.dim(i);
        into_sum.insert(i, Mat::from_fn(sum.dim(i), n.dim(i), |row, c| if row == split + c { f.one() } else { f.zero() }));
    }
    let into_sum = ModuleMap::new(n.clone(), sum, 0, into_sum)?;
    let from_target = q.projection.compose(&into_sum)?;
    Ok(Cone { module: q.module, from_target })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LaurentPolynomial;
    use crate::gradedmod::{example_v, free, is_isomorphic, submodule, trivial, v_k, HomogeneousVector};
    use crate::hopf::HnStructure;

    #[test]
    fn cone_of_identity_is_projective() {
        let s = HnStructure::rational(6).unwrap();
        let k = trivial(&s, 0);
        let c = cone(&ModuleMap::identity(&k)).unwrap();
        assert!(strip_projectives(&c.module).unwrap().is_projective());
        assert!(c.from_target.is_intertwiner());
    }

    #[test]
    fn cone_dimension_formula() {
        let s = HnStructure::rational(6).unwrap();
        let v = example_v(&s).unwrap();
        let g = HomogeneousVector::new(1, vec![s.field().one()]);
        let sub = submodule(&v, &[g]).unwrap();
        let c = cone(&sub.inclusion).unwrap();
        let h = free(&s, s.ell()).graded_dimension();
        let expected = &(&(&sub.module.graded_dimension() * &h) + &v.graded_dimension()) - &sub.module.graded_dimension();
        assert_eq!(c.module.graded_dimension(), expected);
        let reduced = strip_projectives(&c.module).unwrap().reduced;
        assert!(is_isomorphic(&reduced, &v_k(&s, 1, 0).unwrap()).unwrap().is_isomorphic());
    }

    #[test]
    fn shift_of_trivial_for_two() {
        let s = HnStructure::rational(2).unwrap();
        let k = trivial(&s, 0);
        assert_eq!(shift_plus(&k).unwrap().graded_dimension(), LaurentPolynomial::monomial(1, -1));
        assert!(is_isomorphic(&shift_minus(&shift_plus(&k).unwrap()).unwrap(), &k).unwrap().is_isomorphic());
        assert!(is_isomorphic(&shift_times(&k, 2).unwrap(), &trivial(&s, 2)).unwrap().is_isomorphic());
    }

    #[test]
    fn shift_round_trip_on_strings() {
        let s = HnStructure::rational(6).unwrap();
        let v = v_k(&s, 0, 1).unwrap();
        let back = shift_minus(&shift_plus(&v).unwrap()).unwrap();
        assert!(is_isomorphic(&back, &v).unwrap().is_isomorphic());
    }

    #[test]
    fn degree_and_intertwining_checked() {
        let s = HnStructure::rational(6).unwrap();
        let k = trivial(&s, 0);
        let shifted = ModuleMap::zero(k.clone(), trivial(&s, -1), 1);
        assert!(matches!(cone(&shifted), Err(ModuleError::MapDegree { .. })));
    }
}
