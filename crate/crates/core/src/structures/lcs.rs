use crate::exterior::{relative_basis, KForm};
use crate::lie::{LieAlgebra, Subspace};
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::{Locus, Scalar};

use super::StructureError;

/// A verified lcs form with its Lee form and Reeb vector.
#[derive(Clone, Debug)]
pub struct LcsData {
    pub omega: KForm,
    pub lambda: KForm,
    /// Reeb vector: ω(Z,·) = ½λ, modulo 𝔥.
    pub z: Vector,
    /// Basis indices spanning the chosen complement of 𝔥.
    pub complement: Vec<usize>,
    /// Top power ω^m on the complement, m = half its dimension.
    pub top_power: KForm,
    pub nondegenerate_locus: Locus,
    pub proper: bool,
}

impl LcsData {
    /// Exact identities every lcs datum must satisfy: dω = λ∧ω, dλ = 0,
    /// ω(Z,·) = ½λ, λ(Z) = 0, L_Zω = 0.
    pub fn identities(&self, g: &LieAlgebra) -> Vec<(&'static str, bool)> {
        let half = Scalar::from_ratio(1, 2);
        let iz = self.omega.interior(&self.z).expect("2-form");
        vec![
            (
                "d(omega) = lambda ^ omega",
                self.omega.d(g) == self.lambda.wedge(&self.omega),
            ),
            ("d(lambda) = 0", self.lambda.d(g).is_zero()),
            ("omega(Z,.) = lambda/2", iz == self.lambda.scale(&half)),
            (
                "lambda(Z) = 0",
                linalg::dot(&self.lambda.to_covector(), &self.z).is_zero(),
            ),
            (
                "L_Z omega = 0",
                self.omega.lie_derivative(g, &self.z).is_zero(),
            ),
        ]
    }
}

fn check_relative(g: &LieAlgebra, form: &KForm) -> Result<(), StructureError> {
    for (k, x) in g.h_subalgebra().iter().enumerate() {
        if !form.interior(x)?.is_zero() {
            return Err(StructureError::NotInRelativeComplex {
                witness: format!("does not vanish on h-vector {}", g.format_vector(x)),
            });
        }
        if !form.lie_derivative(g, x).is_zero() {
            return Err(StructureError::NotInRelativeComplex {
                witness: format!("not invariant under h-vector #{k}"),
            });
        }
    }
    Ok(())
}

/// Complement of 𝔥 spanned by basis vectors, chosen by pivoting on basis order.
fn complement_indices(g: &LieAlgebra) -> Vec<usize> {
    let n = g.dim();
    let mut chosen: Vec<Vector> = g.h_subalgebra().to_vec();
    let mut out = Vec::new();
    for i in 0..n {
        let e = linalg::unit_vector(n, i);
        if !Subspace::span(n, &chosen).contains(&e) {
            chosen.push(e);
            out.push(i);
        }
    }
    out
}

/// Verifies that ω is an lcs form on 𝔤/𝔥 and extracts λ and Z.
pub fn lcs_check(g: &LieAlgebra, omega: &KForm) -> Result<LcsData, StructureError> {
    let n = g.dim();
    if omega.degree() != 2 || omega.ambient_dim() != n {
        return Err(StructureError::DimensionMismatch {
            expected: n,
            got: omega.ambient_dim(),
        });
    }
    check_relative(g, omega)?;

    let complement = complement_indices(g);
    let m = complement.len();
    let full = omega.to_matrix();
    let restricted = Matrix::from_rows(
        complement
            .iter()
            .map(|&i| complement.iter().map(|&j| full[(i, j)].clone()).collect())
            .collect(),
    );
    let (rank, _) = restricted.rank();
    if rank < m || m % 2 == 1 {
        return Err(StructureError::Degenerate {
            rank,
            quotient_dim: m,
        });
    }
    let mut top_power = KForm::constant(n, Scalar::one());
    for _ in 0..m / 2 {
        top_power = top_power.wedge(omega);
    }
    let mut nondegenerate_locus = Locus::new();
    nondegenerate_locus.exclude_scalar(&top_power.coeff(&complement));

    // λ∧ω = dω within the relative 1-cochains.
    let domega = omega.d(g);
    let c1 = relative_basis(g, 1);
    let cols: Vec<Vector> = c1.iter().map(|b| b.wedge(omega).to_coords()).collect();
    let lambda = if cols.is_empty() {
        if !domega.is_zero() {
            return Err(StructureError::NoLeeForm);
        }
        KForm::zero(n, 1)
    } else {
        let (x, _) = Matrix::from_columns(&cols)
            .solve(&domega.to_coords())
            .ok_or(StructureError::NoLeeForm)?;
        c1.iter()
            .zip(&x)
            .fold(KForm::zero(n, 1), |acc, (b, c)| &acc + &b.scale(c))
    };
    if !lambda.d(g).is_zero() {
        return Err(StructureError::LeeFormNotClosed);
    }

    // ω(Z,·) = ½λ, i.e. (−Ω) Z = ½λ with Ω the matrix of ω.
    let half_lambda = linalg::scale_vector(&lambda.to_covector(), &Scalar::from_ratio(1, 2));
    let (z, _) = (-&full)
        .solve(&half_lambda)
        .ok_or(StructureError::Degenerate {
            rank,
            quotient_dim: m,
        })?;

    Ok(LcsData {
        omega: omega.clone(),
        lambda,
        z,
        complement,
        top_power,
        nondegenerate_locus,
        proper: !domega.is_zero(),
    })
}
