//! Kirillov-Kostant forms, coadjoint stabilizers and the construction of lcs
//! structures on derivation extensions 𝔤(D) = ℝD + 𝔤′.

use thiserror::Error;

use crate::exterior::KForm;
use crate::lie::{Derivation, LieAlgebra, LieError, Subspace};
use crate::linalg::{self, Matrix, Vector};
use crate::report::StructureReport;
use crate::structures::{lcs_check, LcsData, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("the 1-form is zero")]
    ZeroForm,
    #[error("the orbit is conical: phi vanishes on its stabilizer")]
    ConicalOrbit,
    #[error(transparent)]
    NotADerivation(LieError),
    #[error("omega is degenerate on the quotient: rank {rank} of {quotient_dim}")]
    DegenerateOnQuotient { rank: usize, quotient_dim: usize },
    #[error(transparent)]
    Structure(StructureError),
}

impl From<StructureError> for ConstructionError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Degenerate { rank, quotient_dim } => {
                ConstructionError::DegenerateOnQuotient { rank, quotient_dim }
            }
            other => ConstructionError::Structure(other),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitData {
    pub g_prime: LieAlgebra,
    pub phi_prime: KForm,
    /// Stabilizer {X : φ′∘ad_X = 0}.
    pub k: Subspace,
    /// 𝔨 ∩ ker φ′.
    pub h: Subspace,
    /// ω_Q(X,Y) = φ′([X,Y]).
    pub omega_q: KForm,
    pub non_conical: bool,
}

pub fn coadjoint_stabilizer(g: &LieAlgebra, phi: &KForm) -> Result<OrbitData, ConstructionError> {
    let n = g.dim();
    if phi.is_zero() {
        return Err(ConstructionError::ZeroForm);
    }
    assert_eq!(phi.degree(), 1, "coadjoint data needs a 1-form");
    let covector = phi.to_covector();
    let mut m = Matrix::zeros(n, n);
    let mut omega_q = KForm::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            let c = linalg::dot(&covector, g.bracket_basis(i, j));
            if i < j && !c.is_zero() {
                omega_q = &omega_q + &KForm::monomial(n, &[i, j], c.clone());
            }
            m[(i, j)] = c;
        }
    }
    let (kernel, locus) = m.nullspace();
    let k = Subspace::span(n, &kernel);
    let _ = locus;
    let ker_phi = {
        let (basis, _) = Matrix::from_rows(vec![covector.clone()]).nullspace();
        Subspace::span(n, &basis)
    };
    let h = k.intersection(&ker_phi);
    let non_conical = k
        .vectors()
        .iter()
        .any(|x| !linalg::dot(&covector, x).is_zero());
    Ok(OrbitData {
        g_prime: g.clone(),
        phi_prime: phi.clone(),
        k,
        h,
        omega_q,
        non_conical,
    })
}

/// Output of the orbit construction.
#[derive(Clone, Debug)]
pub struct OrbitLcs {
    pub algebra: LieAlgebra,
    pub phi: KForm,
    pub lcs: LcsData,
    pub report: StructureReport,
}

/// Builds ω = −λ∧φ + dφ on 𝔤(D), with φ(D) = 0 and λ dual to D, and verifies it.
pub fn lcs_from_orbit(
    orbit: &OrbitData,
    d: &Matrix,
    name: &str,
) -> Result<OrbitLcs, ConstructionError> {
    if !orbit.non_conical {
        return Err(ConstructionError::ConicalOrbit);
    }
    let g = &orbit.g_prime;
    let der = Derivation::new(g, d.clone()).map_err(ConstructionError::NotADerivation)?;
    let with_h = g
        .clone()
        .with_h(orbit.h.vectors().to_vec())
        .map_err(|e| ConstructionError::Structure(e.into()))?;
    let (ext, lambda) = with_h
        .extend_by_derivation(&der, name)
        .map_err(ConstructionError::NotADerivation)?;
    let mut lifted: Vector = vec![crate::scalars::Scalar::zero()];
    lifted.extend(orbit.phi_prime.to_covector());
    let phi = KForm::from_covector(&lifted);
    let omega = &phi.d(&ext) - &lambda.wedge(&phi);
    let lcs = lcs_check(&ext, &omega)?;

    let mut report = StructureReport::new(format!("orbit construction on {name} + g'"));
    report.check(
        "Lee form is dual to D",
        lcs.lambda == lambda,
        "lambda(D) = 1, lambda(g') = 0",
        || "extracted Lee form differs from the dual of D".into(),
    );
    for (check, ok) in lcs.identities(&ext) {
        report.check(check, ok, "exact", || "identity fails".into());
    }
    let phi_z = linalg::dot(&phi.to_covector(), &lcs.z);
    report.check(
        "omega(Z,.) = phi(Z) lambda",
        omega.interior(&lcs.z).expect("2-form") == lambda.scale(&phi_z),
        "exact",
        || "identity fails".into(),
    );
    let k_lifted: Vec<Vector> = orbit
        .k
        .vectors()
        .iter()
        .map(|x| {
            let mut v = vec![crate::scalars::Scalar::zero()];
            v.extend(x.iter().cloned());
            v
        })
        .collect();
    report.check(
        "phi does not vanish on k",
        k_lifted
            .iter()
            .any(|x| !linalg::dot(&phi.to_covector(), x).is_zero()),
        "non-conical",
        || "phi vanishes on the stabilizer".into(),
    );
    report.note("closedness of the subgroups generated by h and k is assumed, not checked");
    Ok(OrbitLcs {
        algebra: ext,
        phi,
        lcs,
        report,
    })
}

/// ker ω_Q = 𝔨, certified by rank.
pub fn kernel_matches_stabilizer(orbit: &OrbitData) -> bool {
    let n = orbit.g_prime.dim();
    let (rank, _) = orbit.omega_q.to_matrix().rank();
    n - rank == orbit.k.dim()
        && orbit.k.vectors().iter().all(|x| {
            orbit
                .omega_q
                .interior(x)
                .map(|f| f.is_zero())
                .unwrap_or(false)
        })
}
