//! Seeded random modules built as iterated extensions of small pieces.
//!
//! An extension `0 → S → E → Q → 0` has `d_k = [[S_k, c_k], [0, Q_k]]` with
//! `c_k: Q → S` of degree `n_k`. Commutation and nilpotency of `E` are
//! linear conditions on the family `(c_k)`:
//!
//! * `S_k c_l + c_k Q_l = S_l c_k + c_l Q_k` for `k < l`,
//! * `Σ_j S_k^j c_k Q_k^{p_k−1−j} = 0`.
//!
//! A random element of their solution space gives a valid module.

use std::collections::BTreeMap;

use rand::Rng;

use crate::arith::Field;
use crate::linalg::{self, Mat};

use super::{hom_space, string_module, trivial, GradedModule, ModuleError, ModuleMap};

/// An extension together with its structure maps.
#[derive(Clone, Debug)]
pub struct Extension<F: Field> {
    pub module: GradedModule<F>,
    pub inclusion: ModuleMap<F>,
    pub projection: ModuleMap<F>,
}

/// `c_k` blocks keyed by `Q` degree, one map per prime.
type Cocycle<E> = Vec<BTreeMap<i64, Mat<E>>>;

/// A small coefficient in `[-2, 2]`.
pub fn random_coefficient<F: Field, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    field.from_i64(rng.gen_range(-2..=2))
}

fn cocycle_slots<F: Field>(sub: &GradedModule<F>, quo: &GradedModule<F>) -> Vec<(usize, i64, usize, usize)> {
    let s = sub.structure();
    let mut slots = Vec::new();
    for k in 0..s.num_primes() {
        for i in quo.degrees() {
            let rows = sub.dim(i + s.degree(k));
            if rows > 0 {
                slots.push((k, i, rows, quo.dim(i)));
            }
        }
    }
    slots
}

fn unflatten_cocycle<F: Field>(
    field: &F,
    slots: &[(usize, i64, usize, usize)],
    t: usize,
    flat: &[F::Elem],
) -> Cocycle<F::Elem> {
    let mut c: Cocycle<F::Elem> = vec![BTreeMap::new(); t];
    let mut pos = 0;
    for &(k, i, r, cols) in slots {
        let m = Mat::from_rows(r, cols, flat[pos..pos + r * cols].to_vec());
        pos += r * cols;
        if !linalg::is_zero(field, &m) {
            c[k].insert(i, m);
        }
    }
    c
}

fn block<F: Field>(field: &F, c: &Cocycle<F::Elem>, k: usize, i: i64, rows: usize, cols: usize) -> Mat<F::Elem> {
    c[k].get(&i).cloned().unwrap_or_else(|| linalg::zeros(field, rows, cols))
}

/// Residual of the cocycle conditions, flattened.
fn residual<F: Field>(sub: &GradedModule<F>, quo: &GradedModule<F>, c: &Cocycle<F::Elem>) -> Vec<F::Elem> {
    let s = sub.structure();
    let f = sub.field();
    let t = s.num_primes();
    let mut out = Vec::new();
    for i in quo.degrees() {
        for k in 0..t {
            let nk = s.degree(k);
            for l in k + 1..t {
                let nl = s.degree(l);
                let rows = sub.dim(i + nk + nl);
                if rows == 0 {
                    continue;
                }
                let ckl = sub.apply_block(k, i + nl, &block(f, c, l, i, sub.dim(i + nl), quo.dim(i)));
                let ck_ql = linalg::mat_mul(
                    f,
                    &block(f, c, k, i + nl, rows, quo.dim(i + nl)),
                    &quo.action(l, i),
                );
                let clk = sub.apply_block(l, i + nk, &block(f, c, k, i, sub.dim(i + nk), quo.dim(i)));
                let cl_qk = linalg::mat_mul(
                    f,
                    &block(f, c, l, i + nk, rows, quo.dim(i + nk)),
                    &quo.action(k, i),
                );
                let lhs = linalg::mat_add(f, &ckl, &ck_ql);
                let rhs = linalg::mat_add(f, &clk, &cl_qk);
                out.extend(linalg::mat_sub(f, &lhs, &rhs).data().iter().cloned());
            }
            let p = s.prime(k) as u32;
            let top = i + p as i64 * nk;
            let rows = sub.dim(top);
            if rows == 0 {
                continue;
            }
            let mut acc = linalg::zeros(f, rows, quo.dim(i));
            for j in 0..p {
                let mut q_exps = vec![0u32; t];
                q_exps[k] = p - 1 - j;
                let qpow = quo.monomial_matrix(&q_exps, i);
                let from = i + (p - 1 - j) as i64 * nk;
                let mid = linalg::mat_mul(f, &block(f, c, k, from, sub.dim(from + nk), quo.dim(from)), &qpow);
                let mut s_exps = vec![0u32; t];
                s_exps[k] = j;
                let spow = sub.monomial_matrix(&s_exps, from + nk);
                acc = linalg::mat_add(f, &acc, &linalg::mat_mul(f, &spow, &mid));
            }
            out.extend(acc.data().iter().cloned());
        }
    }
    out
}

/// The extension of `quo` by `sub` with the given cocycle.
pub fn extension<F: Field>(
    sub: &GradedModule<F>,
    quo: &GradedModule<F>,
    cocycle: &[BTreeMap<i64, Mat<F::Elem>>],
) -> Result<Extension<F>, ModuleError> {
    sub.same_structure(quo)?;
    let s = sub.structure();
    let f = sub.field();
    let mut dims: BTreeMap<i64, usize> = sub.dims().clone();
    for (i, d) in quo.dims() {
        *dims.entry(*i).or_insert(0) += d;
    }
    let dim_at = |i: i64| dims.get(&i).copied().unwrap_or(0);
    let mut actions = Vec::with_capacity(s.num_primes());
    for k in 0..s.num_primes() {
        let nk = s.degree(k);
        let mut blocks = BTreeMap::new();
        for i in dims.keys().copied() {
            let (rows, cols) = (dim_at(i + nk), dim_at(i));
            if rows == 0 {
                continue;
            }
            let (ss, sq) = (sub.dim(i + nk), sub.dim(i));
            let a_s = sub.action(k, i);
            let a_q = quo.action(k, i);
            let c = cocycle.get(k).and_then(|m| m.get(&i));
            let m = Mat::from_fn(rows, cols, |r, col| match (r < ss, col < sq) {
                (true, true) => a_s.get(r, col).clone(),
                (true, false) => c.map(|c| c.get(r, col - sq).clone()).unwrap_or_else(|| f.zero()),
                (false, true) => f.zero(),
                (false, false) => a_q.get(r - ss, col - sq).clone(),
            });
            blocks.insert(i, m);
        }
        actions.push(blocks);
    }
    let module = GradedModule::new(sub.shared_structure().clone(), dims.clone(), actions)?;
    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for (i, d) in &dims {
        let (a, b) = (sub.dim(*i), quo.dim(*i));
        inc.insert(*i, Mat::from_fn(*d, a, |r, c| if r == c { f.one() } else { f.zero() }));
        proj.insert(*i, Mat::from_fn(b, *d, |r, c| if c == r + a { f.one() } else { f.zero() }));
    }
    let inclusion = ModuleMap::new(sub.clone(), module.clone(), 0, inc)?;
    let projection = ModuleMap::new(module.clone(), quo.clone(), 0, proj)?;
    Ok(Extension { module, inclusion, projection })
}

/// The extension given by a random cocycle with small coefficients.
pub fn random_extension<F: Field, R: Rng>(
    sub: &GradedModule<F>,
    quo: &GradedModule<F>,
    rng: &mut R,
) -> Result<Extension<F>, ModuleError> {
    sub.same_structure(quo)?;
    let f = sub.field();
    let t = sub.structure().num_primes();
    let slots = cocycle_slots(sub, quo);
    let nvars: usize = slots.iter().map(|(_, _, r, c)| r * c).sum();
    if nvars == 0 {
        return extension(sub, quo, &vec![BTreeMap::new(); t]);
    }
    let mut columns = Vec::with_capacity(nvars);
    let mut unit = vec![f.zero(); nvars];
    for v in 0..nvars {
        unit[v] = f.one();
        columns.push(residual(sub, quo, &unflatten_cocycle(f, &slots, t, &unit)));
        unit[v] = f.zero();
    }
    let rows = columns[0].len();
    let solutions = if rows == 0 {
        (0..nvars)
            .map(|v| {
                let mut e = vec![f.zero(); nvars];
                e[v] = f.one();
                e
            })
            .collect()
    } else {
        linalg::kernel(f, &Mat::from_columns(rows, &columns))
    };
    let mut flat = vec![f.zero(); nvars];
    for sol in &solutions {
        let c = random_coefficient(f, rng);
        for (x, y) in flat.iter_mut().zip(sol) {
            f.mul_add_assign(x, &c, y);
        }
    }
    extension(sub, quo, &unflatten_cocycle(f, &slots, t, &flat))
}

/// A trivial module or a (possibly truncated) string in a random degree of
/// `[-window, window]`, of dimension at most `max_dim`.
pub fn random_piece<F: Field, R: Rng>(
    structure: &crate::hopf::Structure<F>,
    max_dim: usize,
    window: i64,
    rng: &mut R,
) -> GradedModule<F> {
    let shift = rng.gen_range(-window..=window);
    let t = structure.num_primes();
    let choice = rng.gen_range(0..=t);
    if choice == t || max_dim < 2 {
        return trivial(structure, shift);
    }
    let p = structure.prime(choice) as usize;
    let length = rng.gen_range(2..=p.min(max_dim));
    string_module(structure, choice, length, shift).expect("length within range")
}

/// Parameters for [`random_module`].
#[derive(Clone, Debug)]
pub struct RandomModules {
    pub min_dim: usize,
    pub max_dim: usize,
    /// Pieces are shifted by at most this amount.
    pub window: i64,
}

impl RandomModules {
    pub fn new(min_dim: usize, max_dim: usize, window: i64) -> Self {
        Self { min_dim, max_dim, window }
    }
}

/// A random module of total dimension in `[min_dim, max_dim]`, built by
/// extending random pieces on either side.
pub fn random_module<F: Field, R: Rng>(
    structure: &crate::hopf::Structure<F>,
    config: &RandomModules,
    rng: &mut R,
) -> GradedModule<F> {
    let target = rng.gen_range(config.min_dim.max(1)..=config.max_dim.max(1));
    let mut module = random_piece(structure, target, config.window, rng);
    while module.total_dim() < target {
        let piece = random_piece(structure, target - module.total_dim(), config.window, rng);
        let ext = if rng.gen_bool(0.5) {
            random_extension(&module, &piece, rng)
        } else {
            random_extension(&piece, &module, rng)
        };
        module = ext.expect("pieces share a structure").module;
    }
    module
}

/// A random intertwiner of the given degree (zero when the hom space is).
pub fn random_hom<F: Field, R: Rng>(
    source: &GradedModule<F>,
    target: &GradedModule<F>,
    degree: i64,
    rng: &mut R,
) -> Result<ModuleMap<F>, ModuleError> {
    let basis = hom_space(source, target, degree)?;
    let f = source.field();
    let coeffs: Vec<F::Elem> = basis.iter().map(|_| random_coefficient(f, rng)).collect();
    Ok(ModuleMap::combination(&basis, &coeffs)
        .unwrap_or_else(|| ModuleMap::zero(source.clone(), target.clone(), degree)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HnStructure;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_modules_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [6, 12, 30] {
            let s = HnStructure::rational(n).unwrap();
            for _ in 0..20 {
                let m = random_module(&s, &RandomModules::new(3, 9, 6), &mut rng);
                assert!((3..=9).contains(&m.total_dim()));
            }
        }
    }

    #[test]
    fn extensions_are_short_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = HnStructure::rational(6).unwrap();
        let a = random_module(&s, &RandomModules::new(2, 5, 3), &mut rng);
        let b = random_module(&s, &RandomModules::new(2, 5, 3), &mut rng);
        let e = random_extension(&a, &b, &mut rng).unwrap();
        assert!(e.inclusion.is_intertwiner());
        assert!(e.projection.is_intertwiner());
        assert!(e.projection.compose(&e.inclusion).unwrap().is_zero());
        assert_eq!(e.module.total_dim(), a.total_dim() + b.total_dim());
    }

    #[test]
    fn nontrivial_extension_of_strings_exists() {
        // The example module V is a nonsplit extension of V_2 by V_2{-1}.
        let s = HnStructure::rational(6).unwrap();
        let sub = crate::gradedmod::v_k(&s, 1, -1).unwrap();
        let quo = crate::gradedmod::v_k(&s, 1, 0).unwrap();
        assert!(!cocycle_slots(&sub, &quo).is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut saw_nonsplit = false;
        for _ in 0..10 {
            let e = random_extension(&sub, &quo, &mut rng).unwrap();
            if e.module.power_rank(0, 1) > 0 {
                saw_nonsplit = true;
            }
        }
        assert!(saw_nonsplit);
    }

    #[test]
    fn random_hom_intertwines() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = HnStructure::rational(6).unwrap();
        for _ in 0..10 {
            let a = random_module(&s, &RandomModules::new(1, 5, 2), &mut rng);
            let b = random_module(&s, &RandomModules::new(1, 5, 2), &mut rng);
            assert!(random_hom(&a, &b, 0, &mut rng).unwrap().is_intertwiner());
        }
    }
}
