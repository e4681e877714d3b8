use crate::lie::LieAlgebra;
use crate::linalg::{self, is_zero_vector, Matrix, Vector};
use crate::scalars::{CScalar, Locus, Poly, Scalar};

use super::StructureError;

pub type CVector = Vec<CScalar>;

/// Endomorphism with J² = −Id. Column j of the matrix is J eⱼ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    j: Matrix,
}

impl ComplexStructure {
    pub fn new(j: Matrix) -> Result<Self, StructureError> {
        if !j.is_square() {
            return Err(StructureError::DimensionMismatch {
                expected: j.rows(),
                got: j.cols(),
            });
        }
        let sq = &(&j * &j) + &Matrix::identity(j.rows());
        for r in 0..sq.rows() {
            for c in 0..sq.cols() {
                if !sq[(r, c)].is_zero() {
                    return Err(StructureError::NotAlmostComplex {
                        witness: format!("entry ({r}, {c}) of J^2 + Id is {}", sq[(r, c)]),
                    });
                }
            }
        }
        Ok(ComplexStructure { j })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.j.mul_vec(v)
    }
}

/// Nonzero values of the Nijenhuis tensor on basis pairs.
#[derive(Clone, Debug)]
pub struct Nijenhuis {
    pub entries: Vec<((usize, usize), Vector)>,
}

impl Nijenhuis {
    pub fn is_integrable(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Vector> {
        self.entries
            .iter()
            .find(|((a, b), _)| (*a, *b) == (i, j))
            .map(|(_, v)| v)
    }

    /// Integrability holds exactly where all of these vanish (off denominators).
    pub fn vanishing_conditions(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for (_, v) in &self.entries {
            for c in v {
                if !c.is_zero() {
                    let p = c.numer().monic();
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

/// N(X,Y) = [JX,JY] − J[JX,Y] − J[X,JY] − [X,Y] on basis pairs i < j.
pub fn nijenhuis(g: &LieAlgebra, j: &ComplexStructure) -> Result<Nijenhuis, StructureError> {
    let n = g.dim();
    if j.dim() != n {
        return Err(StructureError::DimensionMismatch {
            expected: n,
            got: j.dim(),
        });
    }
    let mut entries = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let x = g.basis_vector(a);
            let y = g.basis_vector(b);
            let jx = j.apply(&x);
            let jy = j.apply(&y);
            let t1 = g.bracket(&jx, &jy);
            let t2 = j.apply(&g.bracket(&jx, &y));
            let t3 = j.apply(&g.bracket(&x, &jy));
            let t4 = g.bracket_basis(a, b);
            let v = linalg::sub_vectors(
                &linalg::sub_vectors(&linalg::sub_vectors(&t1, &t2), &t3),
                t4,
            );
            if !is_zero_vector(&v) {
                entries.push(((a, b), v));
            }
        }
    }
    Ok(Nijenhuis { entries })
}

/// J recovered from a complex subspace ℓ with 𝔤^ℂ = ℓ ⊕ ρℓ.
#[derive(Clone, Debug)]
pub struct SubalgebraJ {
    pub j: ComplexStructure,
    /// Whether ℓ is closed under the bracket, i.e. J is integrable.
    pub is_subalgebra: bool,
    /// A pair of spanning vectors whose bracket leaves ℓ.
    pub witness: Option<(usize, usize)>,
    pub locus: Locus,
}

fn real_part(w: &CVector) -> Vector {
    w.iter().map(|z| z.re.clone()).collect()
}

fn imag_part(w: &CVector) -> Vector {
    w.iter().map(|z| z.im.clone()).collect()
}

/// For w = u + iv ∈ ℓ = Eig(J, i): Ju = −v and Jv = u.
pub fn subalgebra_to_j(g: &LieAlgebra, span: &[CVector]) -> Result<SubalgebraJ, StructureError> {
    let n = g.dim();
    if 2 * span.len() != n {
        return Err(StructureError::DimensionMismatch {
            expected: n / 2,
            got: span.len(),
        });
    }
    for w in span {
        if w.len() != n {
            return Err(StructureError::DimensionMismatch {
                expected: n,
                got: w.len(),
            });
        }
    }
    let mut p_cols = Vec::with_capacity(n);
    let mut q_cols = Vec::with_capacity(n);
    for w in span {
        let u = real_part(w);
        let v = imag_part(w);
        q_cols.push(v.iter().map(|x| -x).collect::<Vector>());
        q_cols.push(u.clone());
        p_cols.push(u);
        p_cols.push(v);
    }
    let p = Matrix::from_columns(&p_cols);
    let q = Matrix::from_columns(&q_cols);
    let (p_inv, mut locus) = p.inverse().ok_or(StructureError::NotTransverse)?;
    let det = p.det();
    locus.exclude_scalar(&det);
    let j = ComplexStructure::new(&q * &p_inv)?;

    let mut witness = None;
    'outer: for (r, wr) in span.iter().enumerate() {
        for (s, ws) in span.iter().enumerate().skip(r + 1) {
            let x = complex_bracket(g, wr, ws);
            let (pr, qi) = (real_part(&x), imag_part(&x));
            let in_l =
                j.apply(&pr) == qi.iter().map(|t| -t).collect::<Vector>() && j.apply(&qi) == pr;
            if !in_l {
                witness = Some((r, s));
                break 'outer;
            }
        }
    }
    Ok(SubalgebraJ {
        j,
        is_subalgebra: witness.is_none(),
        witness,
        locus,
    })
}

/// Complex-bilinear extension of the bracket.
pub fn complex_bracket(g: &LieAlgebra, x: &CVector, y: &CVector) -> CVector {
    let (xr, xi, yr, yi) = (real_part(x), imag_part(x), real_part(y), imag_part(y));
    let re = linalg::sub_vectors(&g.bracket(&xr, &yr), &g.bracket(&xi, &yi));
    let im = linalg::add_vectors(&g.bracket(&xr, &yi), &g.bracket(&xi, &yr));
    re.into_iter()
        .zip(im)
        .map(|(a, b)| CScalar::new(a, b))
        .collect()
}

/// A basis of ℓ_J = {x − iJx}, picked greedily along the standard basis.
pub fn j_to_subalgebra(j: &ComplexStructure) -> Vec<CVector> {
    let n = j.dim();
    let mut real_span: Vec<Vector> = Vec::new();
    let mut out = Vec::new();
    for i in 0..n {
        if out.len() * 2 == n {
            break;
        }
        let x = linalg::unit_vector(n, i);
        let jx = j.apply(&x);
        let mut trial = real_span.clone();
        trial.push(x.clone());
        trial.push(jx.clone());
        if Matrix::from_columns(&trial).rank().0 == trial.len() {
            real_span = trial;
            out.push(
                x.into_iter()
                    .zip(jx)
                    .map(|(a, b)| CScalar::new(a, -b))
                    .collect(),
            );
        }
    }
    out
}
