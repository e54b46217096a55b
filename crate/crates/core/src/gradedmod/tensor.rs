//! Tensor products, duals, internal homs and the weak braiding.

use std::collections::BTreeMap;

use crate::arith::Field;
use crate::linalg::{self, Mat};

use super::{GradedModule, ModuleError, ModuleMap};

/// Which coproduct the tensor product uses on `d_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TensorVariant {
    /// `d_k(x⊗y) = d_k x⊗y + ξ_k^{deg x} x⊗d_k y`.
    Q,
    /// `d_k(x⊗y) = d_k x⊗y + ξ_k^{−deg x} x⊗d_k y`.
    QInverse,
}

/// Position of `x⊗y` inside `(M⊗N)^i` for `x ∈ M^a`, `y ∈ N^{i−a}`.
///
/// Each total degree lists its `(a, offset)` pieces with `a` ascending and
/// `x` major, `y` minor within a piece.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    pieces: BTreeMap<i64, Vec<(i64, usize)>>,
    dims: BTreeMap<i64, usize>,
    right_dims: BTreeMap<i64, usize>,
}

impl TensorLayout {
    pub fn new<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Self {
        let mut pieces: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for a in m.degrees() {
            for b in n.degrees() {
                let total = dims.entry(a + b).or_insert(0);
                pieces.entry(a + b).or_default().push((a, *total));
                *total += m.dim(a) * n.dim(b);
            }
        }
        Self { pieces, dims, right_dims: n.dims().clone() }
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Index of `e_x ⊗ e_y` with `x ∈ M^a`, `y ∈ N^b`, within degree `a + b`.
    pub fn position(&self, a: i64, x: usize, b: i64, y: usize) -> usize {
        let offset = self.pieces[&(a + b)]
            .iter()
            .find(|(d, _)| *d == a)
            .map(|(_, o)| *o)
            .expect("degree pair present");
        offset + x * self.right_dims[&b] + y
    }

    /// `(a, offset)` pieces of total degree `i`.
    pub fn pieces(&self, i: i64) -> &[(i64, usize)] {
        self.pieces.get(&i).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// `M ⊗ N` with the chosen coproduct.
pub fn tensor<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, variant: TensorVariant) -> Result<GradedModule<F>, ModuleError> {
    m.same_structure(n)?;
    let s = m.structure();
    let f = m.field();
    let layout = TensorLayout::new(m, n);
    let dims = layout.dims().clone();
    let mut actions = Vec::with_capacity(s.num_primes());
    for k in 0..s.num_primes() {
        let nk = s.degree(k);
        let mut blocks: BTreeMap<i64, Mat<F::Elem>> = BTreeMap::new();
        for (&i, &cols) in &dims {
            let rows = dims.get(&(i + nk)).copied().unwrap_or(0);
            if rows == 0 {
                continue;
            }
            let mut block = linalg::zeros(f, rows, cols);
            for &(a, _) in layout.pieces(i) {
                let b = i - a;
                let am = m.action(k, a);
                let an = n.action(k, b);
                let twist = match variant {
                    TensorVariant::Q => s.q_pow(nk * a),
                    TensorVariant::QInverse => s.q_pow(-nk * a),
                };
                for x in 0..m.dim(a) {
                    for y in 0..n.dim(b) {
                        let col = layout.position(a, x, b, y);
                        for x2 in 0..am.rows() {
                            let c = am.get(x2, x);
                            if !f.is_zero(c) {
                                let row = layout.position(a + nk, x2, b, y);
                                f.add_assign(block.get_mut(row, col), c);
                            }
                        }
                        for y2 in 0..an.rows() {
                            let c = an.get(y2, y);
                            if !f.is_zero(c) {
                                let row = layout.position(a, x, b + nk, y2);
                                let v = f.mul(c, &twist);
                                f.add_assign(block.get_mut(row, col), &v);
                            }
                        }
                    }
                }
            }
            blocks.insert(i, block);
        }
        actions.push(blocks);
    }
    GradedModule::new(m.shared_structure().clone(), dims, actions)
}

/// `f ⊗ g` between tensor products built with the same variant.
pub fn tensor_maps<F: Field>(
    f_map: &ModuleMap<F>,
    g_map: &ModuleMap<F>,
    source: &GradedModule<F>,
    target: &GradedModule<F>,
) -> Result<ModuleMap<F>, ModuleError> {
    let fld = source.field();
    let (m, n) = (f_map.source(), g_map.source());
    let (m2, n2) = (f_map.target(), g_map.target());
    let src = TensorLayout::new(m, n);
    let dst = TensorLayout::new(m2, n2);
    let degree = f_map.degree() + g_map.degree();
    let mut blocks = BTreeMap::new();
    for (&i, &cols) in src.dims() {
        let rows = dst.dims().get(&(i + degree)).copied().unwrap_or(0);
        let mut block = linalg::zeros(fld, rows, cols);
        for &(a, _) in src.pieces(i) {
            let b = i - a;
            let fa = f_map.block(a);
            let gb = g_map.block(b);
            let (a2, b2) = (a + f_map.degree(), b + g_map.degree());
            for x in 0..m.dim(a) {
                for y in 0..n.dim(b) {
                    let col = src.position(a, x, b, y);
                    for x2 in 0..fa.rows() {
                        let c = fa.get(x2, x);
                        if fld.is_zero(c) {
                            continue;
                        }
                        for y2 in 0..gb.rows() {
                            let d = gb.get(y2, y);
                            if !fld.is_zero(d) {
                                let row = dst.position(a2, x2, b2, y2);
                                let v = fld.mul(c, d);
                                fld.add_assign(block.get_mut(row, col), &v);
                            }
                        }
                    }
                }
            }
        }
        blocks.insert(i, block);
    }
    ModuleMap::new(source.clone(), target.clone(), degree, blocks)
}

/// The dual `M*` with `(M*)^j = (M^{−j})*` and `(hφ)(v) = φ(S⁻¹(h)v)`.
pub fn dual<F: Field>(m: &GradedModule<F>) -> GradedModule<F> {
    let s = m.structure();
    let f = m.field();
    let algebra = s.algebra();
    let dims: BTreeMap<i64, usize> = m.dims().iter().map(|(i, d)| (-i, *d)).collect();
    let mut actions = Vec::with_capacity(s.num_primes());
    for k in 0..s.num_primes() {
        let nk = s.degree(k);
        let generator = algebra.basis_index(s.generator_index(k), 0);
        let (index, coeff) = algebra.antipode_inverse_basis(generator);
        let mut blocks = BTreeMap::new();
        for &j in dims.keys() {
            // φ ∈ (M*)^j pairs with M^{−j}; d_k φ pairs with M^y, y = −j − n_k.
            let y = -j - nk;
            if m.dim(y) == 0 {
                continue;
            }
            let t = linalg::mat_scale(f, &m.bosonization_action(algebra, index, y), coeff);
            blocks.insert(j, t.transpose());
        }
        actions.push(blocks);
    }
    GradedModule::new(m.shared_structure().clone(), dims, actions).expect("dual of a valid module is valid")
}

/// `Hom^•(M, N)` realized as `M* ⊗ N`.
pub fn internal_hom<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<GradedModule<F>, ModuleError> {
    tensor(&dual(m), n, TensorVariant::Q)
}

/// Index of the matrix units spanning `Hom^j(M, N)`: source degrees `i`
/// ascending, row-major within each block.
#[derive(Clone, Debug)]
pub struct HomLayout {
    offsets: BTreeMap<i64, BTreeMap<i64, usize>>,
    dims: BTreeMap<i64, usize>,
}

impl HomLayout {
    pub fn new<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Self {
        let mut offsets: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for i in m.degrees() {
            for b in n.degrees() {
                let j = b - i;
                let total = dims.entry(j).or_insert(0);
                offsets.entry(j).or_default().insert(i, *total);
                *total += m.dim(i) * n.dim(b);
            }
        }
        Self { offsets, dims }
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Flat index of entry `(r, c)` of the block `M^i → N^{i+j}`.
    pub fn position(&self, j: i64, i: i64, r: usize, c: usize, source_dim: usize) -> Option<usize> {
        self.offsets.get(&j)?.get(&i).map(|o| o + r * source_dim + c)
    }
}

/// Matrix of `f ↦ h·f = Σ h₂ ∘ f ∘ S⁻¹(h₁)` from `Hom^j(M, N)` to
/// `Hom^{j + deg h}(M, N)` for a basis element `h` of the bosonization,
/// in the coordinates of [`HomLayout`].
pub fn hom_action<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, layout: &HomLayout, h: usize, j: i64) -> Mat<F::Elem> {
    let s = m.structure();
    let f = m.field();
    let algebra = s.algebra();
    let shift = algebra.basis_degree(h);
    let cols = layout.dims().get(&j).copied().unwrap_or(0);
    let rows = layout.dims().get(&(j + shift)).copied().unwrap_or(0);
    let mut block = linalg::zeros(f, rows, cols);
    if rows == 0 || cols == 0 {
        return block;
    }
    for ((h1, h2), c) in algebra.coproduct_basis(h) {
        let (s1, sc) = algebra.antipode_inverse_basis(h1);
        let scale = f.mul(c, sc);
        let shift_in = algebra.basis_degree(s1);
        let shift_out = algebra.basis_degree(h2);
        // f ∈ Hom(M^i, N^{i+j}) becomes a map M^{i−shift_in} → N^{i+j+shift_out}.
        for i in m.degrees() {
            let b = i + j;
            let src = i - shift_in;
            let dst = b + shift_out;
            if n.dim(b) == 0 || m.dim(src) == 0 || n.dim(dst) == 0 {
                continue;
            }
            let pre = m.bosonization_action(algebra, s1, src);
            let post = n.bosonization_action(algebra, h2, b);
            for r in 0..n.dim(b) {
                for col in 0..m.dim(i) {
                    let from = layout.position(j, i, r, col, m.dim(i)).expect("in layout");
                    for r2 in 0..post.rows() {
                        let x = post.get(r2, r);
                        if f.is_zero(x) {
                            continue;
                        }
                        for c2 in 0..pre.cols() {
                            let y = pre.get(col, c2);
                            if f.is_zero(y) {
                                continue;
                            }
                            let to = layout.position(j + shift, src, r2, c2, m.dim(src)).expect("target block in layout");
                            let v = f.mul(&scale, &f.mul(x, y));
                            f.add_assign(block.get_mut(to, from), &v);
                        }
                    }
                }
            }
        }
    }
    block
}

/// `Hom^•(M, N)` built directly on maps, with
/// `(h·f) = Σ h₂ ∘ f ∘ S⁻¹(h₁)` for `Δ(h) = Σ h₁ ⊗ h₂`.
pub fn internal_hom_direct<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<GradedModule<F>, ModuleError> {
    m.same_structure(n)?;
    let s = m.structure();
    let algebra = s.algebra();
    let layout = HomLayout::new(m, n);
    let dims = layout.dims().clone();
    let mut actions = Vec::with_capacity(s.num_primes());
    for k in 0..s.num_primes() {
        let generator = algebra.basis_index(s.generator_index(k), 0);
        let nk = s.degree(k);
        let blocks = dims
            .keys()
            .filter(|j| dims.get(&(*j + nk)).copied().unwrap_or(0) > 0)
            .map(|&j| (j, hom_action(m, n, &layout, generator, j)))
            .collect();
        actions.push(blocks);
    }
    GradedModule::new(m.shared_structure().clone(), dims, actions)
}

/// Vector of the map `f` inside the degree-`deg f` component of
/// [`internal_hom_direct`].
pub fn map_as_hom_vector<F: Field>(map: &ModuleMap<F>) -> Vec<F::Elem> {
    let (m, n) = (map.source(), map.target());
    let f = m.field();
    let layout = HomLayout::new(m, n);
    let j = map.degree();
    let mut out = vec![f.zero(); layout.dims().get(&j).copied().unwrap_or(0)];
    for i in m.degrees() {
        let block = map.block(i);
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                if let Some(p) = layout.position(j, i, r, c, m.dim(i)) {
                    out[p] = block.get(r, c).clone();
                }
            }
        }
    }
    out
}

/// Inverse of [`map_as_hom_vector`].
pub fn hom_vector_as_map<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, j: i64, v: &[F::Elem]) -> ModuleMap<F> {
    let layout = HomLayout::new(m, n);
    let blocks = m
        .degrees()
        .map(|i| {
            let (rows, cols) = (n.dim(i + j), m.dim(i));
            let block = Mat::from_fn(rows, cols, |r, c| {
                let p = layout.position(j, i, r, c, cols).expect("in layout");
                v[p].clone()
            });
            (i, block)
        })
        .collect();
    ModuleMap::new(m.clone(), n.clone(), j, blocks).expect("blocks follow the dims")
}

/// `Ψ: V ⊗_q W → W ⊗_{q⁻¹} V`, `v⊗w ↦ q^{−deg v·deg w} w⊗v`.
pub fn braiding_iso<F: Field>(v: &GradedModule<F>, w: &GradedModule<F>) -> Result<ModuleMap<F>, ModuleError> {
    let s = v.structure();
    let f = v.field();
    let source = tensor(v, w, TensorVariant::Q)?;
    let target = tensor(w, v, TensorVariant::QInverse)?;
    let src = TensorLayout::new(v, w);
    let dst = TensorLayout::new(w, v);
    let mut blocks = BTreeMap::new();
    for (&i, &dim) in src.dims() {
        let mut block = linalg::zeros(f, dim, dim);
        for &(a, _) in src.pieces(i) {
            let b = i - a;
            let scalar = s.q_pow(-a * b);
            for x in 0..v.dim(a) {
                for y in 0..w.dim(b) {
                    block.set(dst.position(b, y, a, x), src.position(a, x, b, y), scalar.clone());
                }
            }
        }
        blocks.insert(i, block);
    }
    ModuleMap::intertwiner(source, target, 0, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedmod::{free, hom_space, is_isomorphic, trivial, v_k, example_v};
    use crate::hopf::HnStructure;

    #[test]
    fn tensor_with_trivial_is_shift() {
        let s = HnStructure::rational(6).unwrap();
        let v = example_v(&s).unwrap();
        let t = tensor(&v, &trivial(&s, 2), TensorVariant::Q).unwrap();
        assert!(is_isomorphic(&t, &v.shift(2)).unwrap().is_isomorphic());
    }

    #[test]
    fn graded_dimension_is_multiplicative() {
        let s = HnStructure::rational(6).unwrap();
        let a = v_k(&s, 0, 1).unwrap();
        let b = example_v(&s).unwrap();
        let t = tensor(&a, &b, TensorVariant::Q).unwrap();
        assert_eq!(t.graded_dimension(), &a.graded_dimension() * &b.graded_dimension());
    }

    #[test]
    fn dual_of_trivial_and_string() {
        let s = HnStructure::rational(6).unwrap();
        assert_eq!(dual(&trivial(&s, 3)), trivial(&s, -3));
        let v = v_k(&s, 1, 0).unwrap();
        let d = dual(&v);
        assert_eq!(d.graded_dimension(), v.graded_dimension().bar());
        assert!(is_isomorphic(&dual(&d), &v).unwrap().is_isomorphic());
    }

    #[test]
    fn identity_is_invariant_in_internal_end() {
        let s = HnStructure::rational(6).unwrap();
        let v = example_v(&s).unwrap();
        let hom = internal_hom_direct(&v, &v).unwrap();
        let id = map_as_hom_vector(&ModuleMap::identity(&v));
        for k in 0..2 {
            let image = hom.apply(k, 0, &id);
            assert!(image.iter().all(|x| s.field().is_zero(x)));
        }
    }

    #[test]
    fn both_internal_homs_agree() {
        let s = HnStructure::rational(6).unwrap();
        let a = example_v(&s).unwrap();
        let b = v_k(&s, 0, -1).unwrap();
        let direct = internal_hom_direct(&a, &b).unwrap();
        let via_dual = internal_hom(&a, &b).unwrap();
        assert!(is_isomorphic(&direct, &via_dual).unwrap().is_isomorphic());
    }

    #[test]
    fn braiding_on_one_dimensional_modules() {
        let s = HnStructure::rational(6).unwrap();
        let psi = braiding_iso(&trivial(&s, -2), &trivial(&s, -3)).unwrap();
        let block = psi.block(5);
        assert_eq!(block.get(0, 0), &s.q_pow(-6));
        let psi0 = braiding_iso(&trivial(&s, 0), &trivial(&s, 0)).unwrap();
        assert!(s.field().is_one(psi0.block(0).get(0, 0)));
    }

    #[test]
    fn free_tensor_is_free() {
        let s = HnStructure::rational(6).unwrap();
        let h = free(&s, 0);
        let v = v_k(&s, 1, 0).unwrap();
        let t = tensor(&h, &v, TensorVariant::Q).unwrap();
        let sum = free(&s, 0).direct_sum(&free(&s, -2)).unwrap().direct_sum(&free(&s, -4)).unwrap();
        assert!(is_isomorphic(&t, &sum).unwrap().is_isomorphic());
        assert_eq!(hom_space(&trivial(&s, 0), &h, 0).unwrap().len(), 0);
    }
}
