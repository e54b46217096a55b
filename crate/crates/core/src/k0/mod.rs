//! Grothendieck rings as quotients of `Z[ν, ν⁻¹]`.
//!
//! `K₀(stmod H_n) = Z[ν, ν⁻¹] / (∏_k [n]_ν/[n_k]_ν)` and
//! `K₀(O_n) = Z[ν, ν⁻¹] / (Φ_n(ν))`. Classes are stored as the canonical
//! remainder of degree below the modulus degree.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{cyclotomic_polynomial, factorize, string_quotient, ArithError, Field, LaurentPolynomial};
use crate::gradedmod::{internal_hom, GradedModule, ModuleError, ModuleMap};
use crate::stable::{cone, shift_plus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RingKind {
    /// `K₀` of the stable category.
    Stmod,
    /// `K₀(O_n)`, the cyclotomic integers.
    On,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Stmod => "stmod",
            RingKind::On => "on",
        })
    }
}

impl std::str::FromStr for RingKind {
    type Err = K0Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "stmod" => Ok(RingKind::Stmod),
            "on" | "o_n" => Ok(RingKind::On),
            other => Err(K0Error::UnknownRing(other.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum K0Error {
    #[error("operation needs the {expected} ring, got {found}")]
    RingMismatch { expected: RingKind, found: RingKind },
    #[error("classes live over n = {0} and n = {1}")]
    StructureMismatch(u64, u64),
    #[error("unknown ring {0:?} (expected stmod or on)")]
    UnknownRing(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// A class with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct K0Class {
    pub ring: RingKind,
    pub n: u64,
    pub rep: LaurentPolynomial,
}

impl K0Class {
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// One of the two rings for a fixed `n`. The stable modulus is kept as its
/// string factors and expanded on first use.
#[derive(Debug)]
pub struct K0Ring {
    kind: RingKind,
    n: u64,
    factors: Vec<LaurentPolynomial>,
    modulus: OnceLock<LaurentPolynomial>,
}

impl K0Ring {
    pub fn new(kind: RingKind, n: u64) -> Result<Self, K0Error> {
        if n < 2 {
            return Err(ArithError::TooSmall { n, min: 2 }.into());
        }
        let factors = match kind {
            RingKind::Stmod => factorize(n).iter().map(|(p, _)| string_quotient(n, *p)).collect(),
            RingKind::On => vec![cyclotomic_polynomial(n)?],
        };
        Ok(Self { kind, n, factors, modulus: OnceLock::new() })
    }

    pub fn stmod(n: u64) -> Result<Self, K0Error> {
        Self::new(RingKind::Stmod, n)
    }

    pub fn on(n: u64) -> Result<Self, K0Error> {
        Self::new(RingKind::On, n)
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[LaurentPolynomial] {
        &self.factors
    }

    pub fn modulus(&self) -> &LaurentPolynomial {
        self.modulus
            .get_or_init(|| self.factors.iter().fold(LaurentPolynomial::one(), |acc, p| &acc * p))
    }

    pub fn class(&self, p: &LaurentPolynomial) -> K0Class {
        K0Class { ring: self.kind, n: self.n, rep: p.reduce_mod(self.modulus()) }
    }

    pub fn class_of<F: Field>(&self, m: &GradedModule<F>) -> Result<K0Class, K0Error> {
        if m.structure().n() != self.n {
            return Err(K0Error::StructureMismatch(m.structure().n(), self.n));
        }
        Ok(self.class(&m.graded_dimension()))
    }

    fn check(&self, c: &K0Class) -> Result<(), K0Error> {
        if c.ring != self.kind {
            return Err(K0Error::RingMismatch { expected: self.kind, found: c.ring });
        }
        if c.n != self.n {
            return Err(K0Error::StructureMismatch(c.n, self.n));
        }
        Ok(())
    }

    pub fn add(&self, a: &K0Class, b: &K0Class) -> Result<K0Class, K0Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.class(&(&a.rep + &b.rep)))
    }

    pub fn sub(&self, a: &K0Class, b: &K0Class) -> Result<K0Class, K0Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.class(&(&a.rep - &b.rep)))
    }

    pub fn mul(&self, a: &K0Class, b: &K0Class) -> Result<K0Class, K0Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.class(&(&a.rep * &b.rep)))
    }

    /// `ν ↦ ν⁻¹` on `K₀(O_n)`.
    pub fn conjugate(&self, c: &K0Class) -> Result<K0Class, K0Error> {
        if self.kind != RingKind::On {
            return Err(K0Error::RingMismatch { expected: RingKind::On, found: self.kind });
        }
        self.check(c)?;
        Ok(self.class(&c.rep.bar()))
    }

    /// `[Hom(M, M)] = conj[M]·[M]` in `K₀(O_n)`.
    pub fn norm_check<F: Field>(&self, m: &GradedModule<F>) -> Result<bool, K0Error> {
        let c = self.class_of(m)?;
        let end = self.class_of(&internal_hom(m, m)?)?;
        Ok(end == self.mul(&self.conjugate(&c)?, &c)?)
    }

    /// `[N] − [C_f] + [M[1]] = 0` for a degree-0 intertwiner `f: M → N`.
    pub fn triangle_relation_check<F: Field>(&self, f: &ModuleMap<F>) -> Result<bool, K0Error> {
        let c = cone(f)?;
        let n = self.class_of(f.target())?;
        let cf = self.class_of(&c.module)?;
        let m1 = self.class_of(&shift_plus(f.source())?)?;
        Ok(self.add(&self.sub(&n, &cf)?, &m1)?.is_zero())
    }
}

/// `gcd_k [n]_ν / [n_k]_ν` over `Z[ν]`, normalized.
pub fn ideal_generated_by_strings(n: u64) -> Result<LaurentPolynomial, K0Error> {
    if n < 2 {
        return Err(ArithError::TooSmall { n, min: 2 }.into());
    }
    Ok(factorize(n)
        .iter()
        .map(|(p, _)| string_quotient(n, *p))
        .fold(LaurentPolynomial::zero(), |g, s| g.gcd(&s)))
}
