//! Filtration certificates and their replay.

use serde::{Deserialize, Serialize};

use crate::arith::Field;
use crate::gradedmod::{GradedModule, HomogeneousVector};
use crate::linalg::Echelon;

use std::collections::BTreeMap;

/// One filtration step: `F_r = F_{r−1} + span{d_k^j g}`, with
/// `F_r / F_{r−1} ≅ V_k{shift}`. Generators are written in the coordinates
/// of the certified module. `k` is 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep<E> {
    pub k: usize,
    pub shift: i64,
    pub generator: HomogeneousVector<E>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FiltrationCertificate<E> {
    pub steps: Vec<FiltrationStep<E>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("step {step}: prime index {k} out of range")]
    PrimeIndex { step: usize, k: usize },
    #[error("step {step}: generator has the wrong length or degree")]
    Generator { step: usize },
    #[error("step {step}: d{l} of the generator is not in the previous stage")]
    NotKilled { step: usize, l: usize },
    #[error("step {step}: top power of d{k} of the generator lies in the previous stage")]
    Degenerate { step: usize, k: usize },
    #[error("filtration ends at dimension {reached} but the module has dimension {total}")]
    Incomplete { reached: usize, total: usize },
}

/// Certificate steps in JSON form, with 1-based prime indices.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StepFile {
    pub k: usize,
    pub shift: i64,
    pub degree: i64,
    pub generator: Vec<String>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> FiltrationCertificate<E> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Primes used, 0-based, with multiplicity.
    pub fn primes(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.k).collect()
    }

    /// Checks every step against `M` and that the filtration exhausts it.
    pub fn replay<F: Field<Elem = E>>(&self, m: &GradedModule<F>) -> Result<(), ReplayError> {
        let s = m.structure();
        let f = m.field();
        let mut stage: BTreeMap<i64, Echelon<E>> = m.degrees().map(|i| (i, Echelon::new(m.dim(i)))).collect();
        let contains = |stage: &BTreeMap<i64, Echelon<E>>, degree: i64, v: &[E]| -> bool {
            match stage.get(&degree) {
                Some(e) => e.contains(f, v),
                None => v.iter().all(|x| f.is_zero(x)),
            }
        };
        for (r, step) in self.steps.iter().enumerate() {
            if step.k >= s.num_primes() {
                return Err(ReplayError::PrimeIndex { step: r, k: step.k + 1 });
            }
            let g = &step.generator;
            if g.coords.len() != m.dim(g.degree) || g.degree != -step.shift || m.dim(g.degree) == 0 {
                return Err(ReplayError::Generator { step: r });
            }
            for l in (0..s.num_primes()).filter(|l| *l != step.k) {
                if !contains(&stage, g.degree + s.degree(l), &m.apply(l, g.degree, &g.coords)) {
                    return Err(ReplayError::NotKilled { step: r, l: l + 1 });
                }
            }
            let p = s.prime(step.k) as u32;
            let nk = s.degree(step.k);
            let top = m.apply_power(step.k, p - 1, g.degree, &g.coords);
            if contains(&stage, g.degree + (p as i64 - 1) * nk, &top) {
                return Err(ReplayError::Degenerate { step: r, k: step.k + 1 });
            }
            let mut v = g.coords.clone();
            for j in 0..p as i64 {
                let deg = g.degree + j * nk;
                stage.get_mut(&deg).expect("nonzero vector lives in a degree of M").insert(f, &v);
                if j + 1 < p as i64 {
                    v = m.apply(step.k, deg, &v);
                }
            }
        }
        let reached: usize = stage.values().map(|e| e.rank()).sum();
        if reached != m.total_dim() {
            return Err(ReplayError::Incomplete { reached, total: m.total_dim() });
        }
        Ok(())
    }

    pub fn to_files<F: Field<Elem = E>>(&self, field: &F) -> Vec<StepFile> {
        self.steps
            .iter()
            .map(|s| StepFile {
                k: s.k + 1,
                shift: s.shift,
                degree: s.generator.degree,
                generator: s.generator.coords.iter().map(|x| field.format(x)).collect(),
            })
            .collect()
    }
}
