use crate::lie::{LieAlgebra, Subspace};
use crate::linalg::{self, is_zero_vector, Matrix, Vector};
use crate::scalars::Scalar;

use super::{LckData, StructureError};

/// B symmetric with B([X,Y],W) + B(Y,[X,W]) = 0 on basis triples.
pub fn check_ad_invariant(g: &LieAlgebra, b: &Matrix) -> Result<(), StructureError> {
    let n = g.dim();
    if b.rows() != n || b.cols() != n {
        return Err(StructureError::DimensionMismatch {
            expected: n,
            got: b.rows(),
        });
    }
    if !b.is_symmetric() {
        return Err(StructureError::DegenerateB);
    }
    let names = g.basis_names();
    for x in 0..n {
        for y in 0..n {
            for w in y..n {
                let lhs = linalg::dot(g.bracket_basis(x, y), &b.column(w));
                let rhs = linalg::dot(&b.column(y), g.bracket_basis(x, w));
                if !(&lhs + &rhs).is_zero() {
                    return Err(StructureError::NotAdInvariant {
                        witness: format!("({}, {}, {})", names[x], names[y], names[w]),
                    });
                }
            }
        }
    }
    Ok(())
}

/// The identities behind the centralizer bound, for φ = Bv.
#[derive(Clone, Debug)]
pub struct BiinvariantReport {
    pub v: Vector,
    /// dφ(X,Y) = B(−ad_v X, Y) on all basis pairs.
    pub dphi_is_minus_ad_v: bool,
    /// A_g ξ with g = B∘A_g.
    pub a_g_xi: Vector,
    pub a_g_xi_central: bool,
    /// B(B⁻¹λ, B⁻¹λ).
    pub lee_vector_norm: Scalar,
    pub rank_ad_v: usize,
    pub centralizer_dim: usize,
    /// Dimension of the centralizer of v in [𝔤,𝔤].
    pub centralizer_derived_dim: usize,
    pub z_in_ker_dphi: bool,
    pub xi_in_ker_dphi: bool,
}

pub fn biinvariant_identities(
    g: &LieAlgebra,
    b: &Matrix,
    lck: &LckData,
) -> Result<BiinvariantReport, StructureError> {
    check_ad_invariant(g, b)?;
    let (binv, _) = b.inverse().ok_or(StructureError::DegenerateB)?;
    let n = g.dim();

    let lambda = lck.lcs.lambda.to_covector();
    let u = binv.mul_vec(&lambda);
    let lee_vector_norm = linalg::dot(&u, &lambda);
    if lee_vector_norm.is_zero() {
        return Err(StructureError::IsotropicLeeVector);
    }

    let v = binv.mul_vec(&lck.phi.to_covector());
    let dphi = lck.phi.d(g);
    let ad_v = g.ad(&v);
    let mut dphi_is_minus_ad_v = true;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let minus_ad = linalg::scale_vector(&ad_v.column(i), &Scalar::from_int(-1));
            let rhs = linalg::dot(&minus_ad, &b.column(j));
            if dphi.coeff(&[i, j]) != rhs {
                dphi_is_minus_ad_v = false;
                break 'outer;
            }
        }
    }

    let a_g = &binv * &lck.metric_def.matrix;
    let a_g_xi = a_g.mul_vec(&lck.xi);
    let center = g.center();

    let (rank_ad_v, centralizer) = if is_zero_vector(&v) {
        (0, Subspace::whole(n))
    } else {
        (ad_v.rank().0, g.centralizer(&v)?)
    };
    let centralizer_derived_dim = centralizer.intersection(&g.derived_algebra()).dim();

    Ok(BiinvariantReport {
        a_g_xi_central: center.contains(&a_g_xi),
        a_g_xi,
        dphi_is_minus_ad_v,
        lee_vector_norm,
        rank_ad_v,
        centralizer_dim: centralizer.dim(),
        centralizer_derived_dim,
        z_in_ker_dphi: dphi.interior(&lck.lcs.z)?.is_zero(),
        xi_in_ker_dphi: dphi.interior(&lck.xi)?.is_zero(),
        v,
    })
}
