//! Checkers for complex, lcs, lcK and Vaisman structures on Lie algebras.

mod biinvariant;
mod complex;
mod lck;
mod lcs;
mod metric;

use thiserror::Error;

use crate::exterior::ExteriorError;
use crate::lie::LieError;
use crate::scalars::ScalarError;

pub use biinvariant::{biinvariant_identities, check_ad_invariant, BiinvariantReport};
pub use complex::{
    j_to_subalgebra, nijenhuis, subalgebra_to_j, CVector, ComplexStructure, Nijenhuis, SubalgebraJ,
};
pub use lck::{
    assemble_lck, is_vaisman_pair, lee_field, lee_field_derivatives, lxi_identity_holds,
    vaisman_check, LckData, VaismanReport,
};
pub use lcs::{lcs_check, LcsData};
pub use metric::{
    compatibility_check, levi_civita, metric_from, signature_at, signature_of, Compatibility,
    Connection, Convention, Metric, Signature,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("J^2 != -Id: {witness}")]
    NotAlmostComplex { witness: String },
    #[error("span and its conjugate intersect: the real and imaginary parts are dependent")]
    NotTransverse,
    #[error("expected {expected} vectors or entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("form is not in the relative complex: {witness}")]
    NotInRelativeComplex { witness: String },
    #[error("degenerate: rank {rank} on quotient of dimension {quotient_dim}")]
    Degenerate { rank: usize, quotient_dim: usize },
    #[error("no 1-form lambda solves d(omega) = lambda ^ omega")]
    NoLeeForm,
    #[error("the Lee form is not closed")]
    LeeFormNotClosed,
    #[error("omega is not J-invariant: {witness}")]
    NotCompatible { witness: String },
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("metric is degenerate at {point}")]
    DegenerateAtPoint { point: String },
    #[error("bilinear form is not ad-invariant: {witness}")]
    NotAdInvariant { witness: String },
    #[error("bilinear form is degenerate or not symmetric")]
    DegenerateB,
    #[error("B^-1 lambda is isotropic")]
    IsotropicLeeVector,
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
