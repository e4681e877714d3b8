use crate::exterior::{solve_potential, KForm};
use crate::lie::LieAlgebra;
use crate::linalg::{self, is_zero_vector, Vector};
use crate::scalars::{Locus, Poly, Scalar};

use super::{
    compatibility_check, lcs_check, levi_civita, metric_from, ComplexStructure, Connection,
    Convention, LcsData, Metric, StructureError,
};

/// All fields derived from a compatible pair (ω, J).
#[derive(Clone, Debug)]
pub struct LckData {
    pub lcs: LcsData,
    pub j: ComplexStructure,
    /// Metric in the requested convention.
    pub metric: Metric,
    /// g = ω(·, J·); the Lee field is always taken with respect to this one.
    pub metric_def: Metric,
    /// Lee field: g_def(ξ,·) = −½λ.
    pub xi: Vector,
    /// Reeb form θ = ½J*λ, i.e. θ(X) = ½λ(JX).
    pub theta: KForm,
    /// Canonical 1-form: d_λφ = ω and φ(ξ) = 0.
    pub phi: KForm,
    pub phi_kernel_dim: usize,
    /// f with φ = f·θ, when φ and θ are proportional.
    pub phi_factor: Option<Scalar>,
    pub locus: Locus,
}

impl LckData {
    pub fn lambda_of_xi(&self) -> Scalar {
        linalg::dot(&self.lcs.lambda.to_covector(), &self.xi)
    }

    pub fn theta_of_z(&self) -> Scalar {
        linalg::dot(&self.theta.to_covector(), &self.lcs.z)
    }

    pub fn g_xi_xi(&self) -> Scalar {
        self.metric_def.eval(&self.xi, &self.xi)
    }

    /// Exact identities expected of every lcK datum, by name.
    pub fn identities(&self, g: &LieAlgebra) -> Vec<(&'static str, bool)> {
        let lambda = &self.lcs.lambda;
        let omega = &self.lcs.omega;
        vec![
            ("Z = J xi", self.j.apply(&self.xi) == self.lcs.z),
            (
                "phi(xi) = 0",
                linalg::dot(&self.phi.to_covector(), &self.xi).is_zero(),
            ),
            (
                "d_lambda phi = omega",
                self.phi.twisted_d(g, lambda) == *omega,
            ),
            (
                "L_xi omega = lambda(xi) omega - lambda ^ theta + d theta",
                lxi_identity_holds(g, self),
            ),
        ]
    }

    /// ω(Z,·) = φ(Z)λ.
    pub fn fundamental_identity(&self) -> bool {
        let phi_z = linalg::dot(&self.phi.to_covector(), &self.lcs.z);
        self.lcs.omega.interior(&self.lcs.z).expect("2-form") == self.lcs.lambda.scale(&phi_z)
    }
}

/// L_ξω = λ(ξ)ω − λ∧θ + dθ.
pub fn lxi_identity_holds(g: &LieAlgebra, lck: &LckData) -> bool {
    let omega = &lck.lcs.omega;
    let lhs = omega.lie_derivative(g, &lck.xi);
    let rhs =
        &(&omega.scale(&lck.lambda_of_xi()) - &lck.lcs.lambda.wedge(&lck.theta)) + &lck.theta.d(g);
    lhs == rhs
}

pub fn assemble_lck(
    g: &LieAlgebra,
    omega: &KForm,
    j: &ComplexStructure,
    convention: Convention,
) -> Result<LckData, StructureError> {
    let lcs = lcs_check(g, omega)?;
    let compat = compatibility_check(omega, j);
    if let Some((r, c)) = compat.witness {
        let b = g.basis_names();
        return Err(StructureError::NotCompatible {
            witness: format!(
                "omega(J{0}, J{1}) - omega({0}, {1}) = {2}",
                b[r],
                b[c],
                compat.defect[(r, c)].display(g.params().names())
            ),
        });
    }
    let metric_def = metric_from(omega, j, Convention::Def)?;
    let metric = metric_from(omega, j, convention)?;
    let (xi, mut locus) = lee_field(&metric_def, &lcs.lambda)?;
    let lambda_vec = lcs.lambda.to_covector();
    let theta = KForm::from_covector(&linalg::scale_vector(
        &j.matrix().transpose().mul_vec(&lambda_vec),
        &Scalar::from_ratio(1, 2),
    ));
    let potential = solve_potential(g, omega, &lcs.lambda, Some(&xi))?;
    locus.extend(&potential.locus);
    let phi_factor = proportionality(&potential.phi, &theta);
    Ok(LckData {
        lcs,
        j: j.clone(),
        metric,
        metric_def,
        xi,
        theta,
        phi: potential.phi,
        phi_kernel_dim: potential.kernel_dim,
        phi_factor,
        locus,
    })
}

/// ξ = −½g⁻¹λ.
pub fn lee_field(metric: &Metric, lambda: &KForm) -> Result<(Vector, Locus), StructureError> {
    let (ginv, locus) = metric
        .matrix
        .inverse()
        .ok_or(StructureError::DegenerateMetric)?;
    let xi = linalg::scale_vector(
        &ginv.mul_vec(&lambda.to_covector()),
        &Scalar::from_ratio(-1, 2),
    );
    Ok((xi, locus))
}

/// ∇_{eᵢ}ξ for the Levi-Civita connection of `metric`, with the monic
/// numerators whose common zero set is the parallel locus.
pub fn lee_field_derivatives(
    g: &LieAlgebra,
    metric: &Metric,
    xi: &[Scalar],
) -> Result<(Vec<Vector>, Vec<Poly>, Connection), StructureError> {
    let conn = levi_civita(g, metric)?;
    let nabla_xi: Vec<Vector> = (0..g.dim())
        .map(|i| conn.nabla(&g.basis_vector(i), xi))
        .collect();
    let mut conditions: Vec<Poly> = Vec::new();
    for c in nabla_xi.iter().flatten() {
        if !c.is_zero() {
            let p = c.numer().monic();
            if !conditions.contains(&p) {
                conditions.push(p);
            }
        }
    }
    Ok((nabla_xi, conditions, conn))
}

/// Vaisman test that needs only (ω, J): no canonical 1-form, so no gauge.
pub fn is_vaisman_pair(
    g: &LieAlgebra,
    omega: &KForm,
    j: &ComplexStructure,
) -> Result<bool, StructureError> {
    let lcs = lcs_check(g, omega)?;
    let compat = compatibility_check(omega, j);
    if !compat.compatible {
        return Err(StructureError::NotCompatible {
            witness: "omega(J., J.) != omega".into(),
        });
    }
    let metric = metric_from(omega, j, Convention::Def)?;
    let (xi, _) = lee_field(&metric, &lcs.lambda)?;
    let (nabla_xi, _, _) = lee_field_derivatives(g, &metric, &xi)?;
    Ok(nabla_xi.iter().all(|v| is_zero_vector(v)))
}

/// f with a = f·b, if one exists (b ≠ 0).
fn proportionality(a: &KForm, b: &KForm) -> Option<Scalar> {
    let bv = b.to_covector();
    let av = a.to_covector();
    let k = bv.iter().position(|x| !x.is_zero())?;
    let f = &av[k] / &bv[k];
    (a == &b.scale(&f)).then_some(f)
}

/// ∇ξ on basis directions with the induced Vaisman conditions.
#[derive(Clone, Debug)]
pub struct VaismanReport {
    pub vaisman: bool,
    /// ∇_{eᵢ}ξ for each i.
    pub nabla_xi: Vec<Vector>,
    /// ∇ξ = 0 exactly where all of these vanish (off the recorded locus).
    pub conditions: Vec<Poly>,
    pub g_xi_xi: Scalar,
    pub lambda_xi: Scalar,
    pub lxi_omega_zero: bool,
    pub torsion_free: bool,
    pub metric_compatible: bool,
    pub locus: Locus,
}

pub fn vaisman_check(g: &LieAlgebra, lck: &LckData) -> Result<VaismanReport, StructureError> {
    let (nabla_xi, conditions, conn) = lee_field_derivatives(g, &lck.metric_def, &lck.xi)?;
    let mut locus = conn.locus.clone();
    locus.extend(&lck.locus);
    Ok(VaismanReport {
        vaisman: nabla_xi.iter().all(|v| is_zero_vector(v)),
        conditions,
        nabla_xi,
        g_xi_xi: lck.g_xi_xi(),
        lambda_xi: lck.lambda_of_xi(),
        lxi_omega_zero: lck.lcs.omega.lie_derivative(g, &lck.xi).is_zero(),
        torsion_free: conn.is_torsion_free(g),
        metric_compatible: conn.is_metric(&lck.metric_def),
        locus,
    })
}
