//! Trivial, free and string modules, and the worked two- and three-prime examples.

use std::collections::BTreeMap;

use crate::arith::Field;
use crate::hopf::Structure;
use crate::linalg::Mat;

use super::{GradedModule, ModuleError};

/// A module given by one-dimensional cells and arrows `d_k: cell → cell`
/// with coefficient 1.
fn from_cells<F: Field>(
    structure: &Structure<F>,
    cells: &[i64],
    arrows: &[(usize, usize, usize)],
) -> Result<GradedModule<F>, ModuleError> {
    let f = structure.field();
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    let mut slot = Vec::with_capacity(cells.len());
    for deg in cells {
        let d = dims.entry(*deg).or_insert(0);
        slot.push(*d);
        *d += 1;
    }
    let mut actions: Vec<BTreeMap<i64, Mat<F::Elem>>> = vec![BTreeMap::new(); structure.num_primes()];
    for &(k, from, to) in arrows {
        let (src, dst) = (cells[from], cells[to]);
        if dst != src + structure.degree(k) {
            return Err(ModuleError::ShapeMismatch {
                k: k + 1,
                degree: src,
                expected: (dims.get(&(src + structure.degree(k))).copied().unwrap_or(0), dims[&src]),
                found: (1, 1),
            });
        }
        let block = actions[k]
            .entry(src)
            .or_insert_with(|| Mat::from_fn(dims[&dst], dims[&src], |_, _| f.zero()));
        block.set(slot[to], slot[from], f.one());
    }
    GradedModule::new(structure.clone(), dims, actions)
}

/// `k{b}`: one dimension in degree `−b`, all `d_k` acting by zero.
pub fn trivial<F: Field>(structure: &Structure<F>, shift: i64) -> GradedModule<F> {
    from_cells(structure, &[-shift], &[]).expect("trivial module is valid")
}

/// The regular module `H_n{b}` with basis `d^a` in degree `deg(a) − b`.
pub fn free<F: Field>(structure: &Structure<F>, shift: i64) -> GradedModule<F> {
    let s = &**structure;
    let cells: Vec<i64> = (0..s.hn_dim()).map(|a| s.monomial_degree(a) - shift).collect();
    let mut arrows = Vec::new();
    for a in 0..s.hn_dim() {
        for k in 0..s.num_primes() {
            if let Some(b) = s.raise(a, k) {
                arrows.push((k, a, b));
            }
        }
    }
    from_cells(structure, &cells, &arrows).expect("regular module is valid")
}

/// A `d_k` string of `length` cells in degrees `j·n_k − b`, `d_k` the
/// identity along the string. `length` runs from 1 to `p_k`.
pub fn string_module<F: Field>(
    structure: &Structure<F>,
    k: usize,
    length: usize,
    shift: i64,
) -> Result<GradedModule<F>, ModuleError> {
    if k >= structure.num_primes() {
        return Err(ModuleError::PrimeIndex { k: k + 1, t: structure.num_primes() });
    }
    let p = structure.prime(k) as usize;
    if length == 0 || length > p {
        return Err(ModuleError::NilpotencyViolation { k: k + 1, degree: -shift });
    }
    let cells: Vec<i64> = (0..length).map(|j| j as i64 * structure.degree(k) - shift).collect();
    let arrows: Vec<_> = (0..length - 1).map(|j| (k, j, j + 1)).collect();
    from_cells(structure, &cells, &arrows)
}

/// The full string `V_k{b}` (0-based `k`) of length `p_k`.
pub fn v_k<F: Field>(structure: &Structure<F>, k: usize, shift: i64) -> Result<GradedModule<F>, ModuleError> {
    if k >= structure.num_primes() {
        return Err(ModuleError::PrimeIndex { k: k + 1, t: structure.num_primes() });
    }
    string_module(structure, k, structure.prime(k) as usize, shift)
}

/// `c = n/6` for the two-prime examples, requiring primes 2 and 3.
fn two_prime_unit<F: Field>(structure: &Structure<F>) -> Result<i64, ModuleError> {
    let n = structure.n();
    if n % 6 != 0 {
        return Err(ModuleError::IncompatibleN { n, required: "a multiple of 6" });
    }
    Ok((n / 6) as i64)
}

/// The six-cell module `V`: a string of `d_2` on top (degrees 0, 2c, 4c), a
/// second string below (degrees c, 3c, 5c), and `d_1` joining the first two
/// top cells to the last two bottom cells, where `c = n/6`.
pub fn example_v<F: Field>(structure: &Structure<F>) -> Result<GradedModule<F>, ModuleError> {
    let c = two_prime_unit(structure)?;
    let cells = [0, 2 * c, 4 * c, c, 3 * c, 5 * c];
    let arrows = [(1, 0, 1), (1, 1, 2), (1, 3, 4), (1, 4, 5), (0, 0, 4), (0, 1, 5)];
    from_cells(structure, &cells, &arrows)
}

/// `V′`: two `d_2` strings in degrees `0, 2c, 4c` and `3c, 5c, 7c` with `d_1`
/// joining each top cell to the cell below.
pub fn example_v_prime<F: Field>(structure: &Structure<F>) -> Result<GradedModule<F>, ModuleError> {
    let c = two_prime_unit(structure)?;
    let cells = [0, 2 * c, 4 * c, 3 * c, 5 * c, 7 * c];
    let arrows = [(1, 0, 1), (1, 1, 2), (1, 3, 4), (1, 4, 5), (0, 0, 3), (0, 1, 4), (0, 2, 5)];
    from_cells(structure, &cells, &arrows)
}

/// `V″`: two `d_2` strings in degrees `0, 2c, 4c` and `−c, c, 3c` with one
/// `d_1` arrow from degree 0 to degree `3c`.
pub fn example_v_double_prime<F: Field>(structure: &Structure<F>) -> Result<GradedModule<F>, ModuleError> {
    let c = two_prime_unit(structure)?;
    let cells = [0, 2 * c, 4 * c, -c, c, 3 * c];
    let arrows = [(1, 0, 1), (1, 1, 2), (1, 3, 4), (1, 4, 5), (0, 0, 5)];
    from_cells(structure, &cells, &arrows)
}

/// Seven-cell module for `30 | n`: a `d_3` string from degree `−4n_3` to 0
/// and a `d_2` string from degree `−n_1`, with `d_1` from its first cell to
/// degree 0.
pub fn example_three_primes<F: Field>(structure: &Structure<F>) -> Result<GradedModule<F>, ModuleError> {
    let n = structure.n();
    if n % 30 != 0 {
        return Err(ModuleError::IncompatibleN { n, required: "a multiple of 30" });
    }
    let (n1, n2, n3) = (structure.degree(0), structure.degree(1), structure.degree(2));
    let cells = [-4 * n3, -3 * n3, -2 * n3, -n3, 0, -n1, -n1 + n2, -n1 + 2 * n2];
    let arrows = [(2, 0, 1), (2, 1, 2), (2, 2, 3), (2, 3, 4), (1, 5, 6), (1, 6, 7), (0, 5, 4)];
    from_cells(structure, &cells, &arrows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LaurentPolynomial;
    use crate::hopf::HnStructure;

    fn poly(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn string_module_dimension() {
        let s = HnStructure::rational(6).unwrap();
        let v = v_k(&s, 1, 0).unwrap();
        assert_eq!(v.graded_dimension(), poly("1 + v^2 + v^4"));
        assert!(v_k(&s, 2, 0).is_err());
    }

    #[test]
    fn trivial_sits_in_negative_shift() {
        let s = HnStructure::rational(6).unwrap();
        assert_eq!(trivial(&s, 3).graded_dimension(), poly("v^-3"));
    }

    #[test]
    fn free_module_matches_product() {
        for n in [2, 6, 12, 30] {
            let s = HnStructure::rational(n).unwrap();
            let h = free(&s, 0);
            assert_eq!(h.graded_dimension(), s.graded_dimension_product());
        }
    }

    #[test]
    fn examples_have_expected_dimensions() {
        let s = HnStructure::rational(6).unwrap();
        assert_eq!(example_v(&s).unwrap().graded_dimension(), poly("1 + v + v^2 + v^3 + v^4 + v^5"));
        assert_eq!(example_v_prime(&s).unwrap().total_dim(), 6);
        assert_eq!(example_v_double_prime(&s).unwrap().graded_dimension(), poly("v^-1 + 1 + v + v^2 + v^3 + v^4"));
        assert!(example_three_primes(&s).is_err());
        let s30 = HnStructure::rational(30).unwrap();
        assert_eq!(example_three_primes(&s30).unwrap().total_dim(), 8);
        let s4 = HnStructure::rational(4).unwrap();
        assert!(example_v(&s4).is_err());
    }
}
