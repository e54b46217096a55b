//! Deciding whether two modules are isomorphic.
//!
//! An isomorphism is an invertible element of the degree-0 hom space. The
//! search tries basis elements, then seeded random combinations, then a
//! deterministic grid. Per degree `i` the determinant of `Σ c_j F_j^i` is a
//! polynomial of degree at most `dim M^i` in each `c_j`, so it vanishes
//! identically exactly when it vanishes on a grid with `dim M^i + 1` values
//! per variable.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Field;
use crate::linalg::{self, Echelon, Mat};

use super::{hom_space, GradedModule, ModuleError, ModuleMap};

/// Why two modules are certainly not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    GradedDimension,
    /// `rank(d^α)` differs in some degree; `exponents` is `α`.
    MonomialRank { exponents: Vec<u32>, degree: i64 },
    /// `dim Hom(M, N)` and `dim Hom(N, M)` differ in degree 0.
    HomDimension { forward: usize, backward: usize },
    /// The images of all degree-0 maps do not span `N^i`.
    SpanDeficient { degree: i64 },
    /// The determinant of the generic degree-0 map vanishes identically in degree `i`.
    DeterminantVanishes { degree: i64 },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::GradedDimension => write!(f, "graded dimensions differ"),
            Obstruction::MonomialRank { exponents, degree } => {
                write!(f, "rank of d^{exponents:?} differs in degree {degree}")
            }
            Obstruction::HomDimension { forward, backward } => {
                write!(f, "degree-0 hom dimensions differ ({forward} vs {backward})")
            }
            Obstruction::SpanDeficient { degree } => write!(f, "no degree-0 map is onto in degree {degree}"),
            Obstruction::DeterminantVanishes { degree } => {
                write!(f, "determinant of the generic map vanishes identically in degree {degree}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum IsoOutcome<F: Field> {
    Isomorphic(ModuleMap<F>),
    NotIsomorphic(Obstruction),
    Inconclusive(String),
}

impl<F: Field> IsoOutcome<F> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn is_certified_negative(&self) -> bool {
        matches!(self, IsoOutcome::NotIsomorphic(_))
    }

    pub fn map(&self) -> Option<&ModuleMap<F>> {
        match self {
            IsoOutcome::Isomorphic(m) => Some(m),
            _ => None,
        }
    }

    pub fn into_map(self) -> Option<ModuleMap<F>> {
        match self {
            IsoOutcome::Isomorphic(m) => Some(m),
            _ => None,
        }
    }
}

/// Search parameters.
#[derive(Clone, Debug)]
pub struct IsoSearch {
    pub seed: u64,
    pub random_attempts: usize,
    /// Maximum number of grid points evaluated per grid.
    pub grid_budget: usize,
}

impl Default for IsoSearch {
    fn default() -> Self {
        Self { seed: 0x5eed, random_attempts: 48, grid_budget: 50_000 }
    }
}

pub fn is_isomorphic<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Result<IsoOutcome<F>, ModuleError> {
    is_isomorphic_with(m, n, &IsoSearch::default())
}

pub fn is_isomorphic_with<F: Field>(
    m: &GradedModule<F>,
    n: &GradedModule<F>,
    search: &IsoSearch,
) -> Result<IsoOutcome<F>, ModuleError> {
    m.same_structure(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoOutcome::NotIsomorphic(Obstruction::GradedDimension));
    }
    if let Some(obstruction) = monomial_rank_mismatch(m, n) {
        return Ok(IsoOutcome::NotIsomorphic(obstruction));
    }
    if m.is_zero() {
        return Ok(IsoOutcome::Isomorphic(ModuleMap::identity(m)));
    }
    let basis = hom_space(m, n, 0)?;
    let backward = hom_space(n, m, 0)?.len();
    if basis.len() != backward {
        return Ok(IsoOutcome::NotIsomorphic(Obstruction::HomDimension { forward: basis.len(), backward }));
    }
    if let Some(degree) = span_deficiency(n, &basis) {
        return Ok(IsoOutcome::NotIsomorphic(Obstruction::SpanDeficient { degree }));
    }
    for b in &basis {
        if b.inverse().is_some() {
            return Ok(IsoOutcome::Isomorphic(b.clone()));
        }
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut radius = 2i64;
    for attempt in 0..search.random_attempts {
        if attempt % 8 == 7 {
            radius *= 4;
        }
        let coeffs: Vec<F::Elem> = basis.iter().map(|_| f.from_i64(rng.gen_range(-radius..=radius))).collect();
        let candidate = ModuleMap::combination(&basis, &coeffs).expect("nonempty basis");
        if candidate.inverse().is_some() {
            return Ok(IsoOutcome::Isomorphic(candidate));
        }
    }
    grid_certify(m, &basis, search)
}

fn monomial_rank_mismatch<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Option<Obstruction> {
    let s = m.structure();
    let f = m.field();
    for alpha in 1..s.hn_dim() {
        let exponents = s.exponents(alpha);
        for i in m.degrees() {
            let a = linalg::rank(f, &m.monomial_matrix(&exponents, i));
            let b = linalg::rank(f, &n.monomial_matrix(&exponents, i));
            if a != b {
                return Some(Obstruction::MonomialRank { exponents, degree: i });
            }
        }
    }
    None
}

fn span_deficiency<F: Field>(n: &GradedModule<F>, basis: &[ModuleMap<F>]) -> Option<i64> {
    let f = n.field();
    for i in n.degrees() {
        let mut span = Echelon::new(n.dim(i));
        for b in basis {
            let block = b.block(i);
            for c in 0..block.cols() {
                span.insert(f, &block.column(c));
            }
        }
        if span.rank() < n.dim(i) {
            return Some(i);
        }
    }
    None
}

/// Calls `visit` on each point of `values^vars` in mixed-radix order,
/// stopping when it returns true. Returns `None` if the grid exceeds `budget`.
fn walk_grid(vars: usize, values: usize, budget: usize, mut visit: impl FnMut(&[usize]) -> bool) -> Option<bool> {
    let total = (values as u128).checked_pow(vars as u32)?;
    if total > budget as u128 {
        return None;
    }
    let mut point = vec![0usize; vars];
    loop {
        if visit(&point) {
            return Some(true);
        }
        let mut k = 0;
        loop {
            if k == vars {
                return Some(false);
            }
            point[k] += 1;
            if point[k] < values {
                break;
            }
            point[k] = 0;
            k += 1;
        }
    }
}

fn grid_certify<F: Field>(
    m: &GradedModule<F>,
    basis: &[ModuleMap<F>],
    search: &IsoSearch,
) -> Result<IsoOutcome<F>, ModuleError> {
    let f = m.field();
    // Grid values 0..=D must be distinct field elements.
    let distinct = |d: usize| -> bool { (1..=d as i64).all(|v| !f.is_zero(&f.from_i64(v))) };
    let combine = |blocks: &[Mat<F::Elem>], point: &[usize]| -> Mat<F::Elem> {
        let mut acc = linalg::zeros(f, blocks[0].rows(), blocks[0].cols());
        for (b, v) in blocks.iter().zip(point) {
            if *v != 0 {
                acc = linalg::mat_add(f, &acc, &linalg::mat_scale(f, b, &f.from_i64(*v as i64)));
            }
        }
        acc
    };
    for i in m.degrees() {
        let d = m.dim(i);
        let blocks: Vec<Mat<F::Elem>> =
            basis.iter().map(|b| b.block(i)).filter(|b| !linalg::is_zero(f, b)).collect();
        if blocks.is_empty() {
            return Ok(IsoOutcome::NotIsomorphic(Obstruction::DeterminantVanishes { degree: i }));
        }
        if !distinct(d) {
            return Ok(IsoOutcome::Inconclusive(format!("field too small for a grid of size {} in degree {i}", d + 1)));
        }
        let found = walk_grid(blocks.len(), d + 1, search.grid_budget, |point| {
            linalg::rank(f, &combine(&blocks, point)) == d
        });
        match found {
            Some(false) => return Ok(IsoOutcome::NotIsomorphic(Obstruction::DeterminantVanishes { degree: i })),
            Some(true) => {}
            None => return Ok(IsoOutcome::Inconclusive(format!("grid in degree {i} exceeds the budget"))),
        }
    }
    let total = m.total_dim();
    if !distinct(total) {
        return Ok(IsoOutcome::Inconclusive(format!("field too small for a grid of size {}", total + 1)));
    }
    let mut found = None;
    let walked = walk_grid(basis.len(), total + 1, search.grid_budget, |point| {
        let coeffs: Vec<F::Elem> = point.iter().map(|v| f.from_i64(*v as i64)).collect();
        let candidate = ModuleMap::combination(basis, &coeffs).expect("nonempty basis");
        if candidate.inverse().is_some() {
            found = Some(candidate);
            true
        } else {
            false
        }
    });
    Ok(match (walked, found) {
        (_, Some(map)) => IsoOutcome::Isomorphic(map),
        // Every degree has a nonvanishing determinant, so their product has a
        // nonzero point on the full grid.
        (Some(false), None) => unreachable!("product of nonzero determinants vanished on the full grid"),
        _ => IsoOutcome::Inconclusive("global grid exceeds the budget".into()),
    })
}
