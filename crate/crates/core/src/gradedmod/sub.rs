//! Submodules, quotients, kernels and images.

use std::collections::BTreeMap;

use crate::arith::Field;
use crate::linalg::{self, Echelon, Mat};

use super::{GradedModule, ModuleError, ModuleMap};

/// A vector concentrated in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousVector<E> {
    pub degree: i64,
    pub coords: Vec<E>,
}

impl<E: Clone> HomogeneousVector<E> {
    pub fn new(degree: i64, coords: Vec<E>) -> Self {
        Self { degree, coords }
    }

    /// Splits a vector in concatenated coordinates (degrees ascending);
    /// fails unless exactly one degree carries nonzero entries.
    pub fn from_global<F: Field<Elem = E>>(module: &GradedModule<F>, global: &[E]) -> Result<Self, ModuleError> {
        let f = module.field();
        if global.len() != module.total_dim() {
            return Err(ModuleError::VectorLength { expected: module.total_dim(), found: global.len() });
        }
        let mut found = None;
        for (i, o) in module.offsets() {
            let part = &global[o..o + module.dim(i)];
            if part.iter().any(|x| !f.is_zero(x)) {
                if found.is_some() {
                    return Err(ModuleError::NotHomogeneous);
                }
                found = Some(Self::new(i, part.to_vec()));
            }
        }
        found.ok_or(ModuleError::NotHomogeneous)
    }
}

/// Degreewise subspaces of a module.
pub type Subspaces<E> = BTreeMap<i64, Echelon<E>>;

/// A submodule with its inclusion.
#[derive(Clone, Debug)]
pub struct Submodule<F: Field> {
    pub module: GradedModule<F>,
    pub inclusion: ModuleMap<F>,
    pub spaces: Subspaces<F::Elem>,
}

/// A quotient with its projection and a linear (not necessarily
/// equivariant) section picking the complement basis.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    pub module: GradedModule<F>,
    pub projection: ModuleMap<F>,
    pub section: ModuleMap<F>,
}

fn empty_spaces<F: Field>(m: &GradedModule<F>) -> Subspaces<F::Elem> {
    m.degrees().map(|i| (i, Echelon::new(m.dim(i)))).collect()
}

/// The smallest submodule containing `existing` and the generators.
pub fn close_under_action<F: Field>(
    m: &GradedModule<F>,
    existing: &Subspaces<F::Elem>,
    generators: &[HomogeneousVector<F::Elem>],
) -> Result<Subspaces<F::Elem>, ModuleError> {
    let f = m.field();
    let s = m.structure();
    let mut spaces = empty_spaces(m);
    for (i, e) in existing {
        spaces.insert(*i, e.clone());
    }
    let mut queue: Vec<HomogeneousVector<F::Elem>> = Vec::new();
    for g in generators {
        if g.coords.len() != m.dim(g.degree) {
            return Err(ModuleError::VectorLength { expected: m.dim(g.degree), found: g.coords.len() });
        }
        queue.push(g.clone());
    }
    while let Some(v) = queue.pop() {
        let Some(space) = spaces.get_mut(&v.degree) else { continue };
        if !space.insert(f, &v.coords) {
            continue;
        }
        for k in 0..s.num_primes() {
            let w = m.apply(k, v.degree, &v.coords);
            if w.iter().any(|x| !f.is_zero(x)) {
                queue.push(HomogeneousVector::new(v.degree + s.degree(k), w));
            }
        }
    }
    Ok(spaces)
}

/// Submodule generated by homogeneous vectors.
pub fn submodule<F: Field>(m: &GradedModule<F>, generators: &[HomogeneousVector<F::Elem>]) -> Result<Submodule<F>, ModuleError> {
    let spaces = close_under_action(m, &BTreeMap::new(), generators)?;
    submodule_from_spaces(m, spaces)
}

/// Wraps degreewise subspaces that are already closed under every `d_k`.
pub fn submodule_from_spaces<F: Field>(m: &GradedModule<F>, spaces: Subspaces<F::Elem>) -> Result<Submodule<F>, ModuleError> {
    let f = m.field();
    let s = m.structure();
    let dims: BTreeMap<i64, usize> = spaces.iter().map(|(i, e)| (*i, e.rank())).collect();
    let mut actions = Vec::with_capacity(s.num_primes());
    for k in 0..s.num_primes() {
        let nk = s.degree(k);
        let mut blocks = BTreeMap::new();
        for (i, space) in &spaces {
            if space.rank() == 0 {
                continue;
            }
            let target = spaces.get(&(i + nk));
            let mut columns = Vec::with_capacity(space.rank());
            for b in space.basis() {
                let image = m.apply(k, *i, b);
                let coords = match target {
                    Some(t) => t.coordinates(f, &image),
                    None if image.iter().all(|x| f.is_zero(x)) => Some(Vec::new()),
                    None => None,
                };
                columns.push(coords.ok_or(ModuleError::NotSubmodule { k: k + 1, degree: *i })?);
            }
            let rows = target.map(|t| t.rank()).unwrap_or(0);
            if rows > 0 {
                blocks.insert(*i, Mat::from_columns(rows, &columns));
            }
        }
        actions.push(blocks);
    }
    let module = GradedModule::new(m.shared_structure().clone(), dims, actions)?;
    let inclusion_blocks = spaces
        .iter()
        .filter(|(_, e)| e.rank() > 0)
        .map(|(i, e)| (*i, Mat::from_columns(m.dim(*i), e.basis())))
        .collect();
    let inclusion = ModuleMap::new(module.clone(), m.clone(), 0, inclusion_blocks)?;
    Ok(Submodule { module, inclusion, spaces })
}

/// `M / U` on the complement spanned by the standard basis vectors at the
/// non-pivot positions of each `U^i`.
pub fn quotient<F: Field>(m: &GradedModule<F>, spaces: &Subspaces<F::Elem>) -> Result<Quotient<F>, ModuleError> {
    let f = m.field();
    let s = m.structure();
    let complement: BTreeMap<i64, Vec<usize>> = m
        .degrees()
        .map(|i| {
            let pivots: Vec<usize> = spaces.get(&i).map(|e| e.pivots().to_vec()).unwrap_or_default();
            (i, (0..m.dim(i)).filter(|c| !pivots.contains(c)).collect())
        })
        .collect();
    let project = |i: i64, v: &[F::Elem]| -> Vec<F::Elem> {
        let reduced = match spaces.get(&i) {
            Some(e) => e.reduce(f, v),
            None => v.to_vec(),
        };
        complement[&i].iter().map(|c| reduced[*c].clone()).collect()
    };
    let dims: BTreeMap<i64, usize> = complement.iter().map(|(i, c)| (*i, c.len())).collect();
    let mut actions = Vec::with_capacity(s.num_primes());
    for k in 0..s.num_primes() {
        let nk = s.degree(k);
        let mut blocks = BTreeMap::new();
        for (i, cols) in &complement {
            let rows = dims.get(&(i + nk)).copied().unwrap_or(0);
            if rows == 0 || cols.is_empty() {
                continue;
            }
            let columns: Vec<Vec<F::Elem>> = cols
                .iter()
                .map(|c| {
                    let mut e = vec![f.zero(); m.dim(*i)];
                    e[*c] = f.one();
                    project(i + nk, &m.apply(k, *i, &e))
                })
                .collect();
            blocks.insert(*i, Mat::from_columns(rows, &columns));
        }
        actions.push(blocks);
    }
    let module = GradedModule::new(m.shared_structure().clone(), dims, actions)?;
    let mut projection_blocks = BTreeMap::new();
    let mut section_blocks = BTreeMap::new();
    for i in m.degrees() {
        let cols = &complement[&i];
        if cols.is_empty() {
            continue;
        }
        let proj_columns: Vec<Vec<F::Elem>> = (0..m.dim(i))
            .map(|c| {
                let mut e = vec![f.zero(); m.dim(i)];
                e[c] = f.one();
                project(i, &e)
            })
            .collect();
        projection_blocks.insert(i, Mat::from_columns(cols.len(), &proj_columns));
        section_blocks.insert(i, Mat::from_fn(m.dim(i), cols.len(), |r, c| if cols[c] == r { f.one() } else { f.zero() }));
    }
    let projection = ModuleMap::new(m.clone(), module.clone(), 0, projection_blocks)?;
    let section = ModuleMap::new(module.clone(), m.clone(), 0, section_blocks)?;
    Ok(Quotient { module, projection, section })
}

/// Kernel of an intertwiner as a submodule of its source.
pub fn kernel<F: Field>(map: &ModuleMap<F>) -> Result<Submodule<F>, ModuleError> {
    let m = map.source();
    let f = m.field();
    let mut spaces = BTreeMap::new();
    for i in m.degrees() {
        let mut e = Echelon::new(m.dim(i));
        for v in linalg::kernel(f, &map.block(i)) {
            e.insert(f, &v);
        }
        spaces.insert(i, e);
    }
    submodule_from_spaces(m, spaces)
}

/// Image of an intertwiner as degreewise subspaces of its target.
pub fn image_spaces<F: Field>(map: &ModuleMap<F>) -> Subspaces<F::Elem> {
    let n = map.target();
    let f = n.field();
    let mut spaces = empty_spaces(n);
    for i in map.source().degrees() {
        let block = map.block(i);
        if let Some(space) = spaces.get_mut(&(i + map.degree())) {
            for c in 0..block.cols() {
                space.insert(f, &block.column(c));
            }
        }
    }
    spaces
}

/// Cokernel of an intertwiner.
pub fn cokernel<F: Field>(map: &ModuleMap<F>) -> Result<Quotient<F>, ModuleError> {
    quotient(map.target(), &image_spaces(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedmod::{example_v, is_isomorphic, v_k};
    use crate::hopf::HnStructure;

    #[test]
    fn example_v_sequence() {
        let s = HnStructure::rational(6).unwrap();
        let f = s.field();
        let v = example_v(&s).unwrap();
        let g = HomogeneousVector::new(1, vec![f.one()]);
        let sub = submodule(&v, &[g]).unwrap();
        assert!(sub.inclusion.is_intertwiner());
        assert!(is_isomorphic(&sub.module, &v_k(&s, 1, -1).unwrap()).unwrap().is_isomorphic());
        let q = quotient(&v, &sub.spaces).unwrap();
        assert!(q.projection.is_intertwiner());
        assert!(is_isomorphic(&q.module, &v_k(&s, 1, 0).unwrap()).unwrap().is_isomorphic());
    }

    #[test]
    fn non_homogeneous_rejected() {
        let s = HnStructure::rational(6).unwrap();
        let f = s.field();
        let v = example_v(&s).unwrap();
        let mut global = vec![f.zero(); 6];
        global[0] = f.one();
        global[1] = f.one();
        assert!(matches!(HomogeneousVector::from_global(&v, &global), Err(ModuleError::NotHomogeneous)));
    }
}
