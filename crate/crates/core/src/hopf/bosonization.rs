//! The bosonization `H_n ⋊ kC_N` with its PBW basis `d^a K^i`.

use std::collections::BTreeMap;

use crate::arith::{quantum_binomial, Field};

use super::{HnStructure, HopfError, Structure};

/// Coordinates in the PBW basis. The key of `d^a K^i` is `α·N + i`, where
/// `α` is the mixed-radix index of the exponent vector `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BosonizedElement<E> {
    terms: BTreeMap<usize, E>,
}

/// An element of the tensor square, keyed by pairs of PBW indices.
pub type TensorSquare<E> = BTreeMap<(usize, usize), E>;

/// An element of the tensor cube.
pub type TensorCube<E> = BTreeMap<(usize, usize, usize), E>;

impl<E> BosonizedElement<E> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> &BTreeMap<usize, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Option<&E> {
        self.terms.get(&index)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Which coproduct to use on PBW monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoproductRule {
    /// `Δ(d^a K^i) = Σ_b C(a,b) d^b K^{deg(a−b)+i} ⊗ d^{a−b} K^i`.
    Twisted,
    /// The same sum with the `K^{deg(a−b)}` factor dropped; not a Hopf
    /// structure, used as a negative control for the verifier.
    Untwisted,
}

/// One summand of `Δ(d^a)`: `coeff · d^left K^twist ⊗ d^right`.
#[derive(Clone, Debug)]
struct CoproductTerm<E> {
    left: usize,
    right: usize,
    twist: i64,
    coeff: E,
}

/// `H_n ⋊ kC_N` with precomputed structure tables.
#[derive(Debug)]
pub struct Bosonization<F: Field> {
    structure: Structure<F>,
    rule: CoproductRule,
    /// `sum[α][β]` is the index of `d^{a+b}`, or `None` if it vanishes.
    sum: Vec<Vec<Option<usize>>>,
    degree: Vec<i64>,
    coproduct: Vec<Vec<CoproductTerm<F::Elem>>>,
    antipode: Vec<(usize, F::Elem)>,
    antipode_inverse: Vec<(usize, F::Elem)>,
    /// Powers `q^e` for `0 ≤ e < N`.
    q_powers: Vec<F::Elem>,
}

impl<F: Field> Bosonization<F> {
    pub fn new(structure: Structure<F>) -> Self {
        Self::with_rule(structure, CoproductRule::Twisted)
    }

    pub fn with_rule(structure: Structure<F>, rule: CoproductRule) -> Self {
        let s = &*structure;
        let f = s.field();
        let m = s.hn_dim();
        let n_root = s.root_order() as i64;
        let q_powers: Vec<F::Elem> = (0..n_root).map(|e| s.q_pow(e)).collect();
        let exps: Vec<Vec<u32>> = (0..m).map(|a| s.exponents(a)).collect();
        let degree: Vec<i64> = (0..m).map(|a| s.monomial_degree(a)).collect();
        let sum = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        let total: Vec<u32> = exps[a].iter().zip(&exps[b]).map(|(x, y)| x + y).collect();
                        s.index_of(&total)
                    })
                    .collect()
            })
            .collect();

        // binom[k][a][b] = [a choose b] at q^{n_k²}
        let binom: Vec<Vec<Vec<F::Elem>>> = (0..s.num_primes())
            .map(|k| {
                let p = s.prime(k) as u64;
                let r = s.q_pow(s.degree(k) * s.degree(k));
                (0..p)
                    .map(|a| {
                        (0..=a)
                            .map(|b| {
                                let poly = quantum_binomial(a, b).expect("b <= a");
                                f.eval_laurent(&poly, &r).expect("r is invertible")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();

        let coproduct = (0..m)
            .map(|a| {
                let mut out = Vec::new();
                for b in 0..m {
                    let below = exps[b].iter().zip(&exps[a]).all(|(x, y)| x <= y);
                    if !below {
                        continue;
                    }
                    let diff: Vec<u32> = exps[a].iter().zip(&exps[b]).map(|(x, y)| x - y).collect();
                    let right = s.index_of(&diff).expect("difference is in range");
                    let mut coeff = f.one();
                    for (k, (x, y)) in exps[a].iter().zip(&exps[b]).enumerate() {
                        coeff = f.mul(&coeff, &binom[k][*x as usize][*y as usize]);
                    }
                    if f.is_zero(&coeff) {
                        continue;
                    }
                    let twist = match rule {
                        CoproductRule::Twisted => degree[right],
                        CoproductRule::Untwisted => 0,
                    };
                    out.push(CoproductTerm { left: b, right, twist, coeff });
                }
                out
            })
            .collect();

        let mut algebra = Self {
            structure: structure.clone(),
            rule,
            sum,
            degree,
            coproduct,
            antipode: Vec::new(),
            antipode_inverse: Vec::new(),
            q_powers,
        };
        algebra.antipode = algebra.build_antipode();
        algebra.antipode_inverse = algebra.invert_monomial_map(&algebra.antipode);
        algebra
    }

    pub fn structure(&self) -> &HnStructure<F> {
        &self.structure
    }

    pub fn shared_structure(&self) -> &Structure<F> {
        &self.structure
    }

    pub fn field(&self) -> &F {
        self.structure.field()
    }

    pub fn rule(&self) -> CoproductRule {
        self.rule
    }

    /// Dimension `m·N`.
    pub fn dim(&self) -> usize {
        self.structure.bosonization_dim()
    }

    fn root_order(&self) -> usize {
        self.structure.root_order() as usize
    }

    fn q(&self, e: i64) -> &F::Elem {
        &self.q_powers[e.rem_euclid(self.root_order() as i64) as usize]
    }

    /// Key of `d^α K^i`.
    pub fn basis_index(&self, alpha: usize, k_power: i64) -> usize {
        let n = self.root_order();
        alpha * n + k_power.rem_euclid(n as i64) as usize
    }

    /// Splits a key into `(α, i)`.
    pub fn split(&self, index: usize) -> (usize, usize) {
        let n = self.root_order();
        (index / n, index % n)
    }

    /// Internal degree of the basis element (the `K` part has degree 0).
    pub fn basis_degree(&self, index: usize) -> i64 {
        self.degree[self.split(index).0]
    }

    /// Human-readable name such as `d1^2*d2*K^3`.
    pub fn basis_name(&self, index: usize) -> String {
        let (alpha, i) = self.split(index);
        let mut parts: Vec<String> = self
            .structure
            .exponents(alpha)
            .iter()
            .enumerate()
            .filter(|(_, a)| **a > 0)
            .map(|(k, a)| if *a == 1 { format!("d{}", k + 1) } else { format!("d{}^{a}", k + 1) })
            .collect();
        if i > 0 {
            parts.push(if i == 1 { "K".to_string() } else { format!("K^{i}") });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (usize, F::Elem)>) -> BosonizedElement<F::Elem> {
        let f = self.field();
        let mut out = BTreeMap::new();
        for (b, c) in terms {
            accumulate(f, &mut out, b, &c);
        }
        BosonizedElement { terms: out }
    }

    pub fn basis_element(&self, index: usize) -> BosonizedElement<F::Elem> {
        self.from_terms([(index, self.field().one())])
    }

    pub fn one(&self) -> BosonizedElement<F::Elem> {
        self.basis_element(0)
    }

    /// `K^i`.
    pub fn k_power(&self, i: i64) -> BosonizedElement<F::Elem> {
        self.basis_element(self.basis_index(0, i))
    }

    /// The generator `d_k` (0-based `k`).
    pub fn d(&self, k: usize) -> BosonizedElement<F::Elem> {
        self.basis_element(self.basis_index(self.structure.generator_index(k), 0))
    }

    /// The PBW monomial `d^a K^i`, or an error when some `a_k ≥ p_k`.
    pub fn monomial(&self, exponents: &[u32], k_power: i64) -> Result<BosonizedElement<F::Elem>, HopfError> {
        if exponents.len() != self.structure.num_primes() {
            return Err(HopfError::ExponentLength {
                expected: self.structure.num_primes(),
                found: exponents.len(),
            });
        }
        let alpha = self
            .structure
            .index_of(exponents)
            .ok_or_else(|| HopfError::ExponentRange(exponents.to_vec()))?;
        Ok(self.basis_element(self.basis_index(alpha, k_power)))
    }

    pub fn add(&self, x: &BosonizedElement<F::Elem>, y: &BosonizedElement<F::Elem>) -> BosonizedElement<F::Elem> {
        let f = self.field();
        let mut out = x.terms.clone();
        for (b, c) in &y.terms {
            accumulate(f, &mut out, *b, c);
        }
        BosonizedElement { terms: out }
    }

    pub fn sub(&self, x: &BosonizedElement<F::Elem>, y: &BosonizedElement<F::Elem>) -> BosonizedElement<F::Elem> {
        self.add(x, &self.scale(y, &self.field().from_i64(-1)))
    }

    pub fn scale(&self, x: &BosonizedElement<F::Elem>, c: &F::Elem) -> BosonizedElement<F::Elem> {
        let f = self.field();
        if f.is_zero(c) {
            return BosonizedElement::zero();
        }
        BosonizedElement { terms: x.terms.iter().map(|(b, v)| (*b, f.mul(v, c))).collect() }
    }

    /// Product of two basis monomials as `(index, coefficient)`, or `None`
    /// when the product vanishes.
    pub fn multiply_basis(&self, x: usize, y: usize) -> Option<(usize, &F::Elem)> {
        let (a, i) = self.split(x);
        let (b, j) = self.split(y);
        let ab = self.sum[a][b]?;
        let coeff = self.q(i as i64 * self.degree[b]);
        Some((self.basis_index(ab, (i + j) as i64), coeff))
    }

    pub fn multiply(&self, x: &BosonizedElement<F::Elem>, y: &BosonizedElement<F::Elem>) -> BosonizedElement<F::Elem> {
        let f = self.field();
        let mut out = BTreeMap::new();
        for (bx, cx) in &x.terms {
            for (by, cy) in &y.terms {
                if let Some((b, q)) = self.multiply_basis(*bx, *by) {
                    let c = f.mul(&f.mul(cx, cy), q);
                    accumulate(f, &mut out, b, &c);
                }
            }
        }
        BosonizedElement { terms: out }
    }

    /// `x^e` for `e ≥ 0`.
    pub fn pow(&self, x: &BosonizedElement<F::Elem>, e: u32) -> BosonizedElement<F::Elem> {
        (0..e).fold(self.one(), |acc, _| self.multiply(&acc, x))
    }

    /// Coproduct of a basis monomial.
    pub fn coproduct_basis(&self, index: usize) -> impl Iterator<Item = ((usize, usize), &F::Elem)> + '_ {
        let (alpha, i) = self.split(index);
        let i = i as i64;
        self.coproduct[alpha].iter().map(move |t| {
            let left = self.basis_index(t.left, t.twist + i);
            let right = self.basis_index(t.right, i);
            ((left, right), &t.coeff)
        })
    }

    pub fn coproduct(&self, x: &BosonizedElement<F::Elem>) -> TensorSquare<F::Elem> {
        let f = self.field();
        let mut out = BTreeMap::new();
        for (b, c) in &x.terms {
            for (key, coeff) in self.coproduct_basis(*b) {
                accumulate(f, &mut out, key, &f.mul(c, coeff));
            }
        }
        out
    }

    pub fn counit_basis(&self, index: usize) -> bool {
        self.split(index).0 == 0
    }

    pub fn counit(&self, x: &BosonizedElement<F::Elem>) -> F::Elem {
        let f = self.field();
        let mut acc = f.zero();
        for (b, c) in &x.terms {
            if self.counit_basis(*b) {
                f.add_assign(&mut acc, c);
            }
        }
        acc
    }

    /// `S(d^a K^i) = coeff · basis`, as a monomial.
    pub fn antipode_basis(&self, index: usize) -> (usize, &F::Elem) {
        let (b, c) = &self.antipode[index];
        (*b, c)
    }

    pub fn antipode_inverse_basis(&self, index: usize) -> (usize, &F::Elem) {
        let (b, c) = &self.antipode_inverse[index];
        (*b, c)
    }

    pub fn antipode(&self, x: &BosonizedElement<F::Elem>) -> BosonizedElement<F::Elem> {
        self.apply_monomial_map(&self.antipode, x)
    }

    pub fn antipode_inverse(&self, x: &BosonizedElement<F::Elem>) -> BosonizedElement<F::Elem> {
        self.apply_monomial_map(&self.antipode_inverse, x)
    }

    fn apply_monomial_map(&self, table: &[(usize, F::Elem)], x: &BosonizedElement<F::Elem>) -> BosonizedElement<F::Elem> {
        let f = self.field();
        self.from_terms(x.terms.iter().map(|(b, c)| {
            let (target, s) = &table[*b];
            (*target, f.mul(c, s))
        }))
    }

    /// The antipode on every basis monomial, as an anti-homomorphism built
    /// from `S(K) = K⁻¹` and `S(d_k) = −K^{−n_k} d_k`.
    fn build_antipode(&self) -> Vec<(usize, F::Elem)> {
        let s = &*self.structure;
        let f = s.field();
        let m = s.hn_dim();
        let mut on_d: Vec<Option<BosonizedElement<F::Elem>>> = vec![None; m];
        on_d[0] = Some(self.one());
        for alpha in 1..m {
            let exps = s.exponents(alpha);
            let k = exps.iter().rposition(|a| *a > 0).expect("alpha > 0");
            let rest = alpha - s.stride(k);
            let s_dk = self.multiply(&self.k_power(-s.degree(k)), &self.d(k));
            let s_dk = self.scale(&s_dk, &f.from_i64(-1));
            // d^α = d^{rest}·d_k, so S(d^α) = S(d_k)·S(d^{rest})
            let value = self.multiply(&s_dk, on_d[rest].as_ref().expect("computed in order"));
            on_d[alpha] = Some(value);
        }
        (0..self.dim())
            .map(|index| {
                let (alpha, i) = self.split(index);
                let value = self.multiply(&self.k_power(-(i as i64)), on_d[alpha].as_ref().expect("filled"));
                let mut terms = value.terms.into_iter();
                let single = terms.next().expect("antipode of a monomial is a nonzero monomial");
                assert!(terms.next().is_none(), "antipode of a monomial is a monomial");
                single
            })
            .collect()
    }

    fn invert_monomial_map(&self, table: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
        let f = self.field();
        let mut out: Vec<Option<(usize, F::Elem)>> = vec![None; table.len()];
        for (source, (target, c)) in table.iter().enumerate() {
            let inv = f.inv(c).expect("antipode coefficients are units");
            assert!(out[*target].is_none(), "antipode permutes the monomials");
            out[*target] = Some((source, inv));
        }
        out.into_iter().map(|e| e.expect("antipode is bijective")).collect()
    }

    /// Left integral `Λ′ = Σ_i K^i d^top`.
    pub fn integral(&self) -> BosonizedElement<F::Elem> {
        let top = self.braided_integral();
        let n = self.root_order() as i64;
        (0..n).fold(BosonizedElement::zero(), |acc, i| {
            self.add(&acc, &self.multiply(&self.k_power(i), &top))
        })
    }

    /// `Λ = d_1^{p_1−1}⋯d_t^{p_t−1}`.
    pub fn braided_integral(&self) -> BosonizedElement<F::Elem> {
        self.basis_element(self.basis_index(self.structure.top_index(), 0))
    }

    /// The pivotal element `ω = K^{−Σ n_k}`.
    pub fn pivot(&self) -> BosonizedElement<F::Elem> {
        self.k_power(-self.structure.degrees().iter().sum::<i64>())
    }

    /// Restricts an element to `H_n`, failing on any nonzero `K` part.
    fn hn_part<'a>(&self, x: &'a BosonizedElement<F::Elem>) -> Result<impl Iterator<Item = (usize, &'a F::Elem)>, HopfError> {
        let n = self.root_order();
        if let Some(b) = x.terms.keys().find(|b| *b % n != 0) {
            return Err(HopfError::NotInHn(self.basis_name(*b)));
        }
        Ok(x.terms.iter().map(move |(b, c)| (b / n, c)))
    }

    /// `Tr` on `H_n`: the coefficient of the top monomial.
    pub fn trace(&self, x: &BosonizedElement<F::Elem>) -> Result<F::Elem, HopfError> {
        let top = self.structure.top_index();
        let f = self.field();
        Ok(self
            .hn_part(x)?
            .find(|(a, _)| *a == top)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| f.zero()))
    }

    /// `Tr(x·y)` for `x, y ∈ H_n`.
    pub fn trace_pairing(&self, x: &BosonizedElement<F::Elem>, y: &BosonizedElement<F::Elem>) -> Result<F::Elem, HopfError> {
        self.hn_part(x).map(drop)?;
        self.hn_part(y).map(drop)?;
        self.trace(&self.multiply(x, y))
    }

    /// The right orthogonal pairing `(d^a K^i, d^b K^j) = ⟨d^a d^b K^{i−j}, Λ⟩`.
    ///
    /// `Λ` has no `K` component, so the `K` exponents contribute `q^0 = 1`
    /// and the value is the top coefficient of `d^a d^b`.
    pub fn right_orthogonal_pairing(&self, x: &BosonizedElement<F::Elem>, y: &BosonizedElement<F::Elem>) -> F::Elem {
        let f = self.field();
        let n = self.root_order();
        let top = self.structure.top_index();
        let mut acc = f.zero();
        for (bx, cx) in &x.terms {
            for (by, cy) in &y.terms {
                if self.sum[bx / n][by / n] == Some(top) {
                    f.mul_add_assign(&mut acc, cx, cy);
                }
            }
        }
        acc
    }

    /// Multiplies the two legs of a tensor: `m(x ⊗ y)`.
    pub fn multiply_tensor(&self, t: &TensorSquare<F::Elem>) -> BosonizedElement<F::Elem> {
        let f = self.field();
        let mut out = BTreeMap::new();
        for ((x, y), c) in t {
            if let Some((b, q)) = self.multiply_basis(*x, *y) {
                accumulate(f, &mut out, b, &f.mul(c, q));
            }
        }
        BosonizedElement { terms: out }
    }

    /// Product in `A ⊗ A`.
    pub fn multiply_tensors(&self, s: &TensorSquare<F::Elem>, t: &TensorSquare<F::Elem>) -> TensorSquare<F::Elem> {
        let f = self.field();
        let mut out = BTreeMap::new();
        for ((a, b), c) in s {
            for ((x, y), d) in t {
                let Some((left, q1)) = self.multiply_basis(*a, *x) else { continue };
                let Some((right, q2)) = self.multiply_basis(*b, *y) else { continue };
                let coeff = f.mul(&f.mul(c, d), &f.mul(q1, q2));
                accumulate(f, &mut out, (left, right), &coeff);
            }
        }
        out
    }
}

pub(crate) fn accumulate<F: Field, K: Ord>(f: &F, map: &mut BTreeMap<K, F::Elem>, key: K, value: &F::Elem) {
    if f.is_zero(value) {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            f.add_assign(e.get_mut(), value);
            if f.is_zero(e.get()) {
                e.remove();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CyclotomicField;

    fn algebra(n: u64) -> Bosonization<CyclotomicField> {
        Bosonization::new(HnStructure::rational(n).unwrap())
    }

    #[test]
    fn k_commutes_past_d_with_xi() {
        let h = algebra(6);
        let f = h.field();
        for k in 0..2 {
            let lhs = h.multiply(&h.k_power(1), &h.d(k));
            let rhs = h.scale(&h.multiply(&h.d(k), &h.k_power(1)), &h.structure().xi(k));
            assert_eq!(lhs, rhs);
            let top = h.pow(&h.d(k), h.structure().prime(k) as u32);
            assert!(top.is_zero());
        }
        assert_eq!(h.pow(&h.k_power(1), 6), h.one());
        assert!(f.is_one(&h.counit(&h.k_power(1))));
        assert!(f.is_zero(&h.counit(&h.d(0))));
    }

    #[test]
    fn square_of_generator_sum() {
        let h = algebra(6);
        let x = h.add(&h.d(0), &h.d(1));
        let sq = h.multiply(&x, &x);
        let expected = h.add(
            &h.monomial(&[0, 2], 0).unwrap(),
            &h.scale(&h.monomial(&[1, 1], 0).unwrap(), &h.field().from_i64(2)),
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn coproduct_of_generator() {
        let h = algebra(12);
        let f = h.field();
        for k in 0..2 {
            let delta = h.coproduct(&h.d(k));
            let mut expected = BTreeMap::new();
            let dk = h.basis_index(h.structure().generator_index(k), 0);
            let kn = h.basis_index(0, h.structure().degree(k));
            expected.insert((dk, 0), f.one());
            expected.insert((kn, dk), f.one());
            assert_eq!(delta, expected);
        }
        let one = h.coproduct(&h.one());
        assert_eq!(one.len(), 1);
        assert!(one.contains_key(&(0, 0)));
    }

    #[test]
    fn power_coproduct_middle_terms_vanish() {
        let h = algebra(10);
        for k in 0..2 {
            let p = h.structure().prime(k) as u32;
            let dk = h.coproduct(&h.d(k));
            let mut power: TensorSquare<_> = [((0, 0), h.field().one())].into_iter().collect();
            for _ in 0..p {
                power = h.multiply_tensors(&power, &dk);
            }
            assert!(power.is_empty(), "Δ(d_k)^p must vanish in the truncated algebra");
        }
    }

    #[test]
    fn antipode_on_generators() {
        let h = algebra(6);
        let f = h.field();
        assert_eq!(h.antipode(&h.one()), h.one());
        assert_eq!(h.antipode(&h.k_power(1)), h.k_power(-1));
        for k in 0..2 {
            let expected = h.scale(&h.multiply(&h.k_power(-h.structure().degree(k)), &h.d(k)), &f.from_i64(-1));
            assert_eq!(h.antipode(&h.d(k)), expected);
        }
    }

    #[test]
    fn pivot_for_six_is_k() {
        let h = algebra(6);
        assert_eq!(h.pivot(), h.k_power(1));
    }

    #[test]
    fn trace_values() {
        let h = algebra(6);
        let f = h.field();
        assert!(f.is_one(&h.trace(&h.braided_integral()).unwrap()));
        assert!(f.is_zero(&h.trace(&h.one()).unwrap()));
        assert!(h.trace(&h.k_power(1)).is_err());
        assert_eq!(h.structure().monomial_degree(h.structure().top_index()), 7);
    }

    #[test]
    fn integral_absorbs_generators() {
        let h = algebra(6);
        let lam = h.integral();
        for k in 0..2 {
            assert!(h.multiply(&h.d(k), &lam).is_zero());
        }
        assert_eq!(h.multiply(&h.k_power(1), &lam), lam);
    }
}
