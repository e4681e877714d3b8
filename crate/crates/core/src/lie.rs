//! Finite-dimensional Lie algebras over ℚ(p) given by structure constants.

use std::fmt;

use thiserror::Error;

use crate::exterior::KForm;
use crate::linalg::{self, is_zero_vector, zero_vector, Matrix, Vector};
use crate::scalars::{Assignment, Locus, Params, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("zero vector")]
    ZeroVector,
    #[error("not a derivation: Leibniz rule fails on ({0}, {1})")]
    NotADerivation(String, String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("distinguished subspace is not a subalgebra: bracket of spanning vectors {0} and {1} leaves it")]
    NotASubalgebra(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Why a structure table fails to define a Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobiViolation {
    /// [eᵢ,eⱼ] + [eⱼ,eᵢ] ≠ 0 (including [eᵢ,eᵢ] ≠ 0 when i = j).
    Antisymmetry {
        i: usize,
        j: usize,
        residual: Vector,
    },
    /// [eᵢ,[eⱼ,eₖ]] + cyclic ≠ 0.
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        residual: Vector,
    },
}

impl JacobiViolation {
    pub fn describe(&self, g: &LieAlgebra) -> String {
        let b = g.basis_names();
        match self {
            JacobiViolation::Antisymmetry { i, j, .. } => {
                format!("antisymmetry fails on ({}, {})", b[*i], b[*j])
            }
            JacobiViolation::Jacobi { i, j, k, .. } => {
                format!("Jacobi identity fails on ({}, {}, {})", b[*i], b[*j], b[*k])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: Vec<String>,
    params: Params,
    table: Vec<Vector>,
    h: Vec<Vector>,
}

impl LieAlgebra {
    /// Abelian algebra on the given basis; brackets are filled in afterwards.
    pub fn new<S: Into<String>>(basis: impl IntoIterator<Item = S>, params: Params) -> Self {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        let n = basis.len();
        LieAlgebra {
            basis,
            params,
            table: vec![zero_vector(n); n * n],
            h: Vec::new(),
        }
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra::new((0..n).map(|i| format!("e{i}")), Params::empty())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn with_params(mut self, params: Params) -> Self {
        self.params = params;
        self
    }

    /// Sets [eᵢ,eⱼ] = v and [eⱼ,eᵢ] = −v.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vector) {
        let n = self.dim();
        assert_eq!(v.len(), n, "bracket vector has wrong length");
        self.table[j * n + i] = v.iter().map(|x| -x).collect();
        self.table[i * n + j] = v;
    }

    /// Sets only [eᵢ,eⱼ]; used to load tables that may not be antisymmetric.
    pub fn set_bracket_raw(&mut self, i: usize, j: usize, v: Vector) {
        let n = self.dim();
        assert_eq!(v.len(), n, "bracket vector has wrong length");
        self.table[i * n + j] = v;
    }

    /// Sets [eᵢ,eⱼ] from integer coefficients, antisymmetrically.
    pub fn set_bracket_ints(&mut self, i: usize, j: usize, coeffs: &[i64]) {
        self.set_bracket(i, j, coeffs.iter().map(|&c| Scalar::from_int(c)).collect());
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, b) in self.bracket_basis(i, j).iter().enumerate() {
                    if !b.is_zero() {
                        out[k] = &out[k] + &(&c * b);
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad_x: column j is [x, eⱼ].
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n)
            .map(|j| self.bracket(x, &linalg::unit_vector(n, j)))
            .collect();
        Matrix::from_columns(&cols)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        linalg::unit_vector(self.dim(), i)
    }

    pub fn check_jacobi(&self) -> Result<(), JacobiViolation> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let s = linalg::add_vectors(self.bracket_basis(i, j), self.bracket_basis(j, i));
                if !is_zero_vector(&s) {
                    return Err(JacobiViolation::Antisymmetry { i, j, residual: s });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (
                        self.basis_vector(i),
                        self.basis_vector(j),
                        self.basis_vector(k),
                    );
                    let a = self.bracket(&ei, self.bracket_basis(j, k));
                    let b = self.bracket(&ej, self.bracket_basis(k, i));
                    let c = self.bracket(&ek, self.bracket_basis(i, j));
                    let s = linalg::add_vectors(&linalg::add_vectors(&a, &b), &c);
                    if !is_zero_vector(&s) {
                        return Err(JacobiViolation::Jacobi {
                            i,
                            j,
                            k,
                            residual: s,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Kernel of ad_v.
    pub fn centralizer(&self, v: &[Scalar]) -> Result<Subspace, LieError> {
        self.check_len(v.len())?;
        if is_zero_vector(v) {
            return Err(LieError::ZeroVector);
        }
        let (basis, locus) = self.ad(v).nullspace();
        Ok(Subspace::from_basis(self.dim(), basis, locus))
    }

    /// Common kernel of all ad_{eᵢ}.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            rows.extend(self.ad(&self.basis_vector(i)).to_rows());
        }
        if rows.is_empty() {
            return Subspace::zero(n);
        }
        let (basis, locus) = Matrix::from_rows(rows).nullspace();
        Subspace::from_basis(n, basis, locus)
    }

    /// [𝔤,𝔤].
    pub fn derived_algebra(&self) -> Subspace {
        let n = self.dim();
        let mut spanning = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                spanning.push(self.bracket_basis(i, j).clone());
            }
        }
        Subspace::span(n, &spanning)
    }

    /// Checks D[x,y] = [Dx,y] + [x,Dy] on basis pairs.
    pub fn is_derivation(&self, d: &Matrix) -> Result<(), LieError> {
        let n = self.dim();
        if d.rows() != n || d.cols() != n {
            return Err(LieError::DimensionMismatch {
                expected: n,
                got: d.rows().max(d.cols()),
            });
        }
        for i in 0..n {
            for j in i..n {
                let lhs = d.mul_vec(self.bracket_basis(i, j));
                let rhs = linalg::add_vectors(
                    &self.bracket(&d.column(i), &self.basis_vector(j)),
                    &self.bracket(&self.basis_vector(i), &d.column(j)),
                );
                if lhs != rhs {
                    return Err(LieError::NotADerivation(
                        self.basis[i].clone(),
                        self.basis[j].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The algebra ℝD ⊕ 𝔤 with [D,x] = Dx, basis (D, e₁,…,eₙ), and the 1-form
    /// λ with λ(D) = 1, λ(𝔤) = 0. The distinguished subalgebra is carried over.
    pub fn extend_by_derivation(
        &self,
        d: &Derivation,
        name: &str,
    ) -> Result<(LieAlgebra, KForm), LieError> {
        self.is_derivation(d.matrix())?;
        let n = self.dim();
        let mut basis = vec![name.to_string()];
        basis.extend(self.basis.iter().cloned());
        let mut ext = LieAlgebra::new(basis, self.params.clone());
        let lift = |v: &Vector| {
            let mut w = vec![Scalar::zero()];
            w.extend(v.iter().cloned());
            w
        };
        for i in 0..n {
            ext.set_bracket(0, i + 1, lift(&d.matrix().column(i)));
            for j in i + 1..n {
                ext.set_bracket(i + 1, j + 1, lift(self.bracket_basis(i, j)));
            }
        }
        ext.h = self.h.iter().map(lift).collect();
        let lambda = KForm::basis_1form(n + 1, 0);
        debug_assert!(lambda.d(&ext).is_zero());
        Ok((ext, lambda))
    }

    /// 𝔤 ⊕ 𝔨 with the second basis appended.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim();
        let m = other.dim();
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        let mut params = self.params.clone();
        if params.is_empty() {
            params = other.params.clone();
        }
        let mut s = LieAlgebra::new(basis, params);
        for i in 0..n {
            for j in i + 1..n {
                let mut v = self.bracket_basis(i, j).clone();
                v.extend(zero_vector(m));
                s.set_bracket(i, j, v);
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                let mut v = zero_vector(n);
                v.extend(other.bracket_basis(i, j).iter().cloned());
                s.set_bracket(n + i, n + j, v);
            }
        }
        s
    }

    pub fn h_subalgebra(&self) -> &[Vector] {
        &self.h
    }

    /// Declares 𝔥; fails if the span is not closed under the bracket.
    pub fn with_h(mut self, h: Vec<Vector>) -> Result<Self, LieError> {
        for v in &h {
            self.check_len(v.len())?;
        }
        let sub = Subspace::span(self.dim(), &h);
        for (a, x) in h.iter().enumerate() {
            for (b, y) in h.iter().enumerate().skip(a + 1) {
                if !sub.contains(&self.bracket(x, y)) {
                    return Err(LieError::NotASubalgebra(a, b));
                }
            }
        }
        self.h = sub.vectors().to_vec();
        Ok(self)
    }

    /// Specializes parameters in every structure constant.
    pub fn substitute(&self, at: &Assignment) -> Result<LieAlgebra, ScalarError> {
        let sub = |v: &Vector| -> Result<Vector, ScalarError> {
            v.iter().map(|x| x.substitute(at)).collect()
        };
        Ok(LieAlgebra {
            basis: self.basis.clone(),
            params: self.params.clone(),
            table: self.table.iter().map(sub).collect::<Result<_, _>>()?,
            h: self.h.iter().map(sub).collect::<Result<_, _>>()?,
        })
    }

    fn check_len(&self, got: usize) -> Result<(), LieError> {
        if got != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                got,
            });
        }
        Ok(())
    }

    /// Formats a vector as a combination of basis names.
    pub fn format_vector(&self, v: &[Scalar]) -> String {
        format_combination(v, &self.basis, self.params.names())
    }
}

pub(crate) fn format_combination(v: &[Scalar], names: &[String], params: &[String]) -> String {
    let mut parts = Vec::new();
    for (c, name) in v.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            parts.push(name.clone());
        } else if (-c).is_one() {
            parts.push(format!("-{name}"));
        } else if c.is_constant() || c.numer().num_terms() == 1 && c.denom().is_one() {
            parts.push(format!("{}*{name}", c.display(params)));
        } else {
            parts.push(format!("({})*{name}", c.display(params)));
        }
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        write!(f, "Lie algebra on ({})", self.basis.join(", "))?;
        for i in 0..n {
            for j in i + 1..n {
                let v = self.bracket_basis(i, j);
                if !is_zero_vector(v) {
                    write!(
                        f,
                        "\n  [{}, {}] = {}",
                        self.basis[i],
                        self.basis[j],
                        self.format_vector(v)
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// Linear subspace given by a basis of column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    locus: Locus,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            locus: Locus::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient)
                .map(|i| linalg::unit_vector(ambient, i))
                .collect(),
            locus: Locus::new(),
        }
    }

    fn from_basis(ambient: usize, basis: Vec<Vector>, locus: Locus) -> Self {
        Subspace {
            ambient,
            basis,
            locus,
        }
    }

    /// Span of arbitrary vectors, reduced to an independent subset.
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let nonzero: Vec<Vector> = vectors
            .iter()
            .filter(|v| !is_zero_vector(v))
            .cloned()
            .collect();
        if nonzero.is_empty() {
            return Subspace::zero(ambient);
        }
        let rref = Matrix::from_columns(&nonzero).rref();
        let basis = rref.pivots.iter().map(|&p| nonzero[p].clone()).collect();
        Subspace {
            ambient,
            basis,
            locus: rref.locus,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.basis
    }

    /// Where the generic dimension count may fail.
    pub fn locus(&self) -> &Locus {
        &self.locus
    }

    /// Membership by rank comparison.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        if is_zero_vector(v) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        let mut cols = self.basis.clone();
        cols.push(v.to_vec());
        Matrix::from_columns(&cols).rank().0 == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.basis.is_empty() || other.basis.is_empty() {
            return Subspace::zero(self.ambient);
        }
        // Solve Σ xᵢuᵢ − Σ yⱼwⱼ = 0.
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let (kernel, locus) = Matrix::from_columns(&cols).nullspace();
        let vecs: Vec<Vector> = kernel
            .iter()
            .map(|k| {
                let mut v = zero_vector(self.ambient);
                for (x, u) in k.iter().zip(&self.basis) {
                    v = linalg::add_vectors(&v, &linalg::scale_vector(u, x));
                }
                v
            })
            .collect();
        let mut s = Subspace::span(self.ambient, &vecs);
        s.locus.extend(&locus);
        s
    }
}

/// A matrix checked to satisfy the Leibniz rule on a given algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation(Matrix);

impl Derivation {
    pub fn new(g: &LieAlgebra, m: Matrix) -> Result<Self, LieError> {
        g.is_derivation(&m)?;
        Ok(Derivation(m))
    }

    pub fn zero(g: &LieAlgebra) -> Self {
        Derivation(Matrix::zeros(g.dim(), g.dim()))
    }

    pub fn inner(g: &LieAlgebra, x: &[Scalar]) -> Self {
        Derivation(g.ad(x))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su2() -> LieAlgebra {
        let mut g = LieAlgebra::new(["e1", "e2", "e3"], Params::empty());
        g.set_bracket_ints(0, 1, &[0, 0, -1]);
        g.set_bracket_ints(1, 2, &[-1, 0, 0]);
        g.set_bracket_ints(2, 0, &[0, -1, 0]);
        g
    }

    #[test]
    fn su2_is_a_lie_algebra_with_trivial_center() {
        let g = su2();
        assert!(g.check_jacobi().is_ok());
        assert_eq!(g.center().dim(), 0);
        assert_eq!(g.derived_algebra().dim(), 3);
    }

    #[test]
    fn inner_derivations_pass_and_identity_fails() {
        let g = su2();
        let x = vec![Scalar::one(), Scalar::from_int(2), Scalar::zero()];
        assert!(g.is_derivation(&g.ad(&x)).is_ok());
        assert_eq!(
            g.is_derivation(&Matrix::identity(3)),
            Err(LieError::NotADerivation("e1".into(), "e2".into()))
        );
    }

    #[test]
    fn affine_algebra_from_identity_derivation() {
        let g = LieAlgebra::abelian(1);
        let d = Derivation::new(&g, Matrix::identity(1)).unwrap();
        let (ext, lambda) = g.extend_by_derivation(&d, "D").unwrap();
        assert_eq!(
            ext.bracket_basis(0, 1),
            &vec![Scalar::zero(), Scalar::one()]
        );
        assert!(ext.check_jacobi().is_ok());
        assert!(lambda.d(&ext).is_zero());
    }

    #[test]
    fn subspace_intersection() {
        let a = Subspace::span(
            3,
            &[
                vec![1.into(), 0.into(), 0.into()],
                vec![0.into(), 1.into(), 0.into()],
            ],
        );
        let b = Subspace::span(
            3,
            &[
                vec![0.into(), 1.into(), 0.into()],
                vec![0.into(), 0.into(), 1.into()],
            ],
        );
        let c = a.intersection(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[0.into(), 5.into(), 0.into()]));
    }
}
