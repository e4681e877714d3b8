//! Exact coefficient field ℚ(p₁,…,p_m) and its complexification.

mod complex;
pub mod gcd;
mod params;
mod poly;
mod scalar;

use std::collections::BTreeSet;

use thiserror::Error;

pub use complex::CScalar;
pub use params::{Assignment, Params};
pub use poly::{Monomial, Poly};
pub use scalar::{Scalar, ScalarDisplay};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("denominator vanishes at {point}")]
    DenominatorVanishes { point: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("no value given for parameter `{0}`")]
    MissingParameter(String),
}

/// Polynomials whose vanishing is excluded by a generic computation.
///
/// Each entry is monic and non-constant; a rank or inverse computed over the
/// rational function field is valid off the union of their zero sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Locus {
    polys: BTreeSet<Poly>,
}

impl Locus {
    pub fn new() -> Self {
        Locus::default()
    }

    /// Records the factors of `s` that may vanish (numerator and denominator).
    pub fn exclude_scalar(&mut self, s: &Scalar) {
        self.exclude(s.numer());
        self.exclude(s.denom());
    }

    pub fn exclude(&mut self, p: &Poly) {
        if !p.is_constant() {
            self.polys.insert(p.monic());
        }
    }

    pub fn extend(&mut self, other: &Locus) {
        self.polys.extend(other.polys.iter().cloned());
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly> {
        self.polys.iter()
    }

    /// True if some excluded polynomial vanishes at the (complete) point.
    pub fn contains(&self, at: &Assignment) -> bool {
        self.polys.iter().any(|p| {
            p.eval(at.values())
                .is_some_and(|v| num_traits::Zero::is_zero(&v))
        })
    }

    /// Human-readable `p ≠ 0` conditions.
    pub fn describe(&self, names: &[String]) -> Vec<String> {
        self.polys
            .iter()
            .map(|p| format!("{} != 0", p.display(names)))
            .collect()
    }
}
