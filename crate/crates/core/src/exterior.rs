//! Alternating forms on a Lie algebra and the Chevalley-Eilenberg calculus.
//!
//! Conventions: the wedge product is the shuffle (determinant) product, so
//! `(e^i ∧ e^j)(e_i, e_j) = 1`, and the differential is
//! `dα(X₀,…,X_k) = Σ_{i<j} (−1)^{i+j} α([Xᵢ,Xⱼ], X₀,…,X̂ᵢ,…,X̂ⱼ,…,X_k)`,
//! which on 1-forms reads `dα = −α∘[·,·]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::{Assignment, Locus, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("forms live on algebras of different dimension ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("interior product of a 0-form")]
    DegreeZero,
    #[error("expected a form of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("the Lee form is not closed")]
    NonClosedLambda,
    #[error("the form is not d_lambda-exact on the relative complex")]
    NoSolution,
    #[error("gauge cannot be imposed: every d_lambda-closed 1-form vanishes on the gauge vector")]
    GaugeUnresolvable,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Alternating k-form on an n-dimensional algebra, keyed by increasing index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KForm {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Scalar>,
}

impl KForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        KForm {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut f = KForm::zero(n, 0);
        f.add_term(Vec::new(), c);
        f
    }

    /// The dual basis covector eⁱ.
    pub fn basis_1form(n: usize, i: usize) -> Self {
        KForm::monomial(n, &[i], Scalar::one())
    }

    /// c·e^{i₁}∧…∧e^{i_k} for indices in any order.
    pub fn monomial(n: usize, indices: &[usize], c: Scalar) -> Self {
        assert!(indices.iter().all(|&i| i < n), "index out of range");
        let mut f = KForm::zero(n, indices.len());
        if let Some((sorted, sign)) = sort_with_sign(indices) {
            f.add_term(sorted, if sign < 0 { -c } else { c });
        }
        f
    }

    pub fn from_covector(v: &[Scalar]) -> Self {
        let n = v.len();
        let mut f = KForm::zero(n, 1);
        for (i, c) in v.iter().enumerate() {
            f.add_term(vec![i], c.clone());
        }
        f
    }

    /// Coefficients of a 1-form in the dual basis.
    pub fn to_covector(&self) -> Vector {
        assert_eq!(self.degree, 1, "not a 1-form");
        (0..self.n).map(|i| self.coeff(&[i])).collect()
    }

    /// Builds a form from coordinates in the increasing-tuple basis of Λᵏ.
    pub fn from_coords(n: usize, degree: usize, coords: &[Scalar]) -> Self {
        let tuples = basis_tuples(n, degree);
        assert_eq!(
            tuples.len(),
            coords.len(),
            "coordinate vector has wrong length"
        );
        let mut f = KForm::zero(n, degree);
        for (t, c) in tuples.into_iter().zip(coords) {
            f.add_term(t, c.clone());
        }
        f
    }

    pub fn to_coords(&self) -> Vector {
        basis_tuples(self.n, self.degree)
            .iter()
            .map(|t| self.coeffs.get(t).cloned().unwrap_or_default())
            .collect()
    }

    fn add_term(&mut self, key: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&key) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.coeffs.remove(&key);
                }
            }
            None => {
                self.coeffs.insert(key, c);
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.coeffs.iter()
    }

    /// Coefficient of e^{i₁…i_k}, with the sign of the sorting permutation.
    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        match sort_with_sign(indices) {
            None => Scalar::zero(),
            Some((sorted, sign)) => {
                let c = self.coeffs.get(&sorted).cloned().unwrap_or_default();
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Value of a 0-form.
    pub fn as_scalar(&self) -> Scalar {
        assert_eq!(self.degree, 0, "not a 0-form");
        self.coeff(&[])
    }

    pub fn scale(&self, s: &Scalar) -> KForm {
        let mut f = KForm::zero(self.n, self.degree);
        if s.is_zero() {
            return f;
        }
        for (k, c) in &self.coeffs {
            f.add_term(k.clone(), c * s);
        }
        f
    }

    pub fn checked_add(&self, other: &KForm) -> Result<KForm, ExteriorError> {
        self.same_ambient(other)?;
        if self.degree != other.degree {
            return Err(ExteriorError::WrongDegree {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut f = self.clone();
        for (k, c) in &other.coeffs {
            f.add_term(k.clone(), c.clone());
        }
        Ok(f)
    }

    pub fn checked_wedge(&self, other: &KForm) -> Result<KForm, ExteriorError> {
        self.same_ambient(other)?;
        let mut f = KForm::zero(self.n, self.degree + other.degree);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let mut idx = a.clone();
                idx.extend(b.iter().copied());
                if let Some((sorted, sign)) = sort_with_sign(&idx) {
                    let c = ca * cb;
                    f.add_term(sorted, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(f)
    }

    /// Shuffle-convention wedge; panics on mismatched ambient dimension.
    pub fn wedge(&self, other: &KForm) -> KForm {
        self.checked_wedge(other)
            .expect("wedge of forms on different algebras")
    }

    fn same_ambient(&self, other: &KForm) -> Result<(), ExteriorError> {
        if self.n != other.n {
            return Err(ExteriorError::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// α(v₁,…,v_k) = Σ_I α_I det(vⱼ[Iₗ]).
    pub fn evaluate(&self, vectors: &[Vector]) -> Scalar {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        if self.degree == 0 {
            return self.coeff(&[]);
        }
        let mut acc = Scalar::zero();
        for (idx, c) in &self.coeffs {
            let rows: Vec<Vector> = idx
                .iter()
                .map(|&i| vectors.iter().map(|v| v[i].clone()).collect())
                .collect();
            let det = Matrix::from_rows(rows).det();
            acc = &acc + &(c * &det);
        }
        acc
    }

    /// Chevalley-Eilenberg differential, applied to monomials by the Leibniz rule.
    pub fn d(&self, g: &LieAlgebra) -> KForm {
        assert_eq!(g.dim(), self.n, "form and algebra differ in dimension");
        let mut out = KForm::zero(self.n, self.degree + 1);
        if self.degree == 0 {
            return out;
        }
        let de: Vec<KForm> = (0..self.n).map(|i| d_basis(g, i)).collect();
        for (idx, c) in &self.coeffs {
            // d(e^{i₁}∧…∧e^{i_k}) = Σₗ (−1)^l e^{i₁…i_{l−1}} ∧ de^{iₗ} ∧ e^{i_{l+1}…}
            for (l, &i) in idx.iter().enumerate() {
                for (pair, dc) in &de[i].coeffs {
                    let mut full = idx[..l].to_vec();
                    full.extend(pair.iter().copied());
                    full.extend(idx[l + 1..].iter().copied());
                    if let Some((sorted, sign)) = sort_with_sign(&full) {
                        let sign = if l % 2 == 1 { -sign } else { sign };
                        let t = c * dc;
                        out.add_term(sorted, if sign < 0 { -t } else { t });
                    }
                }
            }
        }
        out
    }

    /// d_λα = dα − λ∧α.
    pub fn twisted_d(&self, g: &LieAlgebra, lambda: &KForm) -> KForm {
        &self.d(g) - &lambda.wedge(self)
    }

    pub fn interior(&self, v: &[Scalar]) -> Result<KForm, ExteriorError> {
        if self.degree == 0 {
            return Err(ExteriorError::DegreeZero);
        }
        if v.len() != self.n {
            return Err(ExteriorError::AmbientMismatch(self.n, v.len()));
        }
        let mut out = KForm::zero(self.n, self.degree - 1);
        for (idx, c) in &self.coeffs {
            for (l, &i) in idx.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(l);
                let t = c * &v[i];
                out.add_term(rest, if l % 2 == 1 { -t } else { t });
            }
        }
        Ok(out)
    }

    /// L_v = d∘ι_v + ι_v∘d.
    pub fn lie_derivative(&self, g: &LieAlgebra, v: &[Scalar]) -> KForm {
        let d_iota = match self.interior(v) {
            Ok(f) => f.d(g),
            Err(_) => KForm::zero(self.n, self.degree),
        };
        let iota_d = self
            .d(g)
            .interior(v)
            .expect("d raises degree so the interior product is defined");
        &d_iota + &iota_d
    }

    /// (A*α)(X₁,…) = α(AX₁,…).
    pub fn pullback(&self, a: &Matrix) -> KForm {
        assert!(
            a.is_square() && a.rows() == self.n,
            "pullback matrix has wrong size"
        );
        let pulled: Vec<KForm> = (0..self.n)
            .map(|i| KForm::from_covector(&a.row(i)))
            .collect();
        let mut out = KForm::zero(self.n, self.degree);
        for (idx, c) in &self.coeffs {
            let mut term = KForm::constant(self.n, c.clone());
            for &i in idx {
                term = term.wedge(&pulled[i]);
            }
            out = &out + &term;
        }
        out
    }

    /// Matrix of a 2-form: M[i][j] = α(eᵢ,eⱼ).
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.degree, 2, "not a 2-form");
        let mut m = Matrix::zeros(self.n, self.n);
        for (idx, c) in &self.coeffs {
            m[(idx[0], idx[1])] = c.clone();
            m[(idx[1], idx[0])] = -c;
        }
        m
    }

    pub fn substitute(&self, at: &Assignment) -> Result<KForm, ScalarError> {
        let mut f = KForm::zero(self.n, self.degree);
        for (k, c) in &self.coeffs {
            f.add_term(k.clone(), c.substitute(at)?);
        }
        Ok(f)
    }

    /// Renders in dual-basis names, e.g. `e0^e1 + e2^e3`.
    pub fn display<'a>(&'a self, basis: &'a [String], params: &'a [String]) -> FormDisplay<'a> {
        FormDisplay {
            form: self,
            basis,
            params,
        }
    }
}

/// de^i = −Σ_{a<b} c_{ab}^i e^a∧e^b.
fn d_basis(g: &LieAlgebra, i: usize) -> KForm {
    let n = g.dim();
    let mut f = KForm::zero(n, 2);
    for a in 0..n {
        for b in a + 1..n {
            let c = &g.bracket_basis(a, b)[i];
            if !c.is_zero() {
                f.add_term(vec![a, b], -c);
            }
        }
    }
    f
}

/// Sorts indices, returning the sign of the permutation, or `None` on a repeat.
fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Increasing k-tuples from 0..n in lexicographic order.
pub fn basis_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

impl Add<&KForm> for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        self.checked_add(rhs).expect("adding incompatible forms")
    }
}

impl Sub<&KForm> for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self.checked_add(&-rhs)
            .expect("subtracting incompatible forms")
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        -&self
    }
}

pub struct FormDisplay<'a> {
    form: &'a KForm,
    basis: &'a [String],
    params: &'a [String],
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.is_zero() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.form.coeffs.iter().enumerate() {
            let word = if idx.is_empty() {
                None
            } else {
                Some(
                    idx.iter()
                        .map(|&i| self.basis[i].as_str())
                        .collect::<Vec<_>>()
                        .join("^"),
                )
            };
            let neg_c = -c;
            let (neg, mag) = if c.numer().leading_coeff() < num_traits::Zero::zero() {
                (true, &neg_c)
            } else {
                (false, c)
            };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let s = mag.display(self.params).to_string();
            match word {
                None => write!(f, "{s}")?,
                Some(w) if mag.is_one() => write!(f, "{w}")?,
                Some(w) => {
                    let simple = mag.numer().num_terms() == 1;
                    if simple {
                        write!(f, "{s}*{w}")?
                    } else {
                        write!(f, "({s})*{w}")?
                    }
                }
            }
        }
        Ok(())
    }
}

/// Dimension of a relative cohomology group with its genericity locus.
#[derive(Clone, Debug)]
pub struct CohomologyDim {
    pub degree: usize,
    pub dim: usize,
    pub cochains: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub locus: Locus,
}

/// Solution of d_λφ = ω.
#[derive(Clone, Debug)]
pub struct Potential {
    pub phi: KForm,
    /// Dimension of the kernel of d_λ on relative 1-cochains.
    pub kernel_dim: usize,
    pub locus: Locus,
}

/// Basis of C^k(𝔤,𝔥) = {α : ι_Xα = 0, L_Xα = 0 for X ∈ 𝔥}.
pub fn relative_basis(g: &LieAlgebra, k: usize) -> Vec<KForm> {
    relative_basis_with_locus(g, k).0
}

fn relative_basis_with_locus(g: &LieAlgebra, k: usize) -> (Vec<KForm>, Locus) {
    let n = g.dim();
    let tuples = basis_tuples(n, k);
    let h = g.h_subalgebra();
    if h.is_empty() {
        let forms = tuples
            .into_iter()
            .map(|t| KForm::monomial(n, &t, Scalar::one()))
            .collect();
        return (forms, Locus::new());
    }
    let monomials: Vec<KForm> = tuples
        .iter()
        .map(|t| KForm::monomial(n, t, Scalar::one()))
        .collect();
    let mut rows: Vec<Vector> = Vec::new();
    for x in h {
        let mut blocks: Vec<Vec<Vector>> = Vec::new();
        if k > 0 {
            blocks.push(
                monomials
                    .iter()
                    .map(|m| m.interior(x).unwrap().to_coords())
                    .collect(),
            );
        }
        blocks.push(
            monomials
                .iter()
                .map(|m| m.lie_derivative(g, x).to_coords())
                .collect(),
        );
        for cols in blocks {
            let m = Matrix::from_columns(&cols);
            rows.extend(m.to_rows());
        }
    }
    let (kernel, locus) = Matrix::from_rows(rows).nullspace();
    let forms = kernel
        .iter()
        .map(|coords| KForm::from_coords(n, k, coords))
        .collect();
    (forms, locus)
}

fn twisted_rank(g: &LieAlgebra, lambda: &KForm, basis: &[KForm]) -> (usize, Locus) {
    if basis.is_empty() {
        return (0, Locus::new());
    }
    let cols: Vec<Vector> = basis
        .iter()
        .map(|b| b.twisted_d(g, lambda).to_coords())
        .collect();
    Matrix::from_columns(&cols).rank()
}

/// dim H^k_λ(𝔤,𝔥) = dim Cᵏ − rank(d_λ|Cᵏ) − rank(d_λ|Cᵏ⁻¹).
pub fn twisted_cohomology_dim(
    g: &LieAlgebra,
    lambda: &KForm,
    k: usize,
) -> Result<CohomologyDim, ExteriorError> {
    check_lambda(g, lambda)?;
    let (ck, mut locus) = relative_basis_with_locus(g, k);
    let (rank_out, l1) = twisted_rank(g, lambda, &ck);
    locus.extend(&l1);
    let rank_in = if k == 0 {
        0
    } else {
        let (cprev, l2) = relative_basis_with_locus(g, k - 1);
        locus.extend(&l2);
        let (r, l3) = twisted_rank(g, lambda, &cprev);
        locus.extend(&l3);
        r
    };
    Ok(CohomologyDim {
        degree: k,
        dim: ck.len() - rank_out - rank_in,
        cochains: ck.len(),
        rank_out,
        rank_in,
        locus,
    })
}

fn check_lambda(g: &LieAlgebra, lambda: &KForm) -> Result<(), ExteriorError> {
    if lambda.degree() != 1 {
        return Err(ExteriorError::WrongDegree {
            expected: 1,
            got: lambda.degree(),
        });
    }
    if lambda.ambient_dim() != g.dim() {
        return Err(ExteriorError::AmbientMismatch(
            g.dim(),
            lambda.ambient_dim(),
        ));
    }
    if !lambda.d(g).is_zero() {
        return Err(ExteriorError::NonClosedLambda);
    }
    Ok(())
}

/// Finds φ ∈ C¹(𝔤,𝔥) with d_λφ = ω. With a gauge vector ξ, the solution is
/// shifted along ker d_λ so that φ(ξ) = 0.
pub fn solve_potential(
    g: &LieAlgebra,
    omega: &KForm,
    lambda: &KForm,
    gauge: Option<&[Scalar]>,
) -> Result<Potential, ExteriorError> {
    check_lambda(g, lambda)?;
    if omega.degree() != 2 {
        return Err(ExteriorError::WrongDegree {
            expected: 2,
            got: omega.degree(),
        });
    }
    if omega.ambient_dim() != g.dim() {
        return Err(ExteriorError::AmbientMismatch(g.dim(), omega.ambient_dim()));
    }
    let (c1, mut locus) = relative_basis_with_locus(g, 1);
    if c1.is_empty() {
        return if omega.is_zero() {
            Ok(Potential {
                phi: KForm::zero(g.dim(), 1),
                kernel_dim: 0,
                locus,
            })
        } else {
            Err(ExteriorError::NoSolution)
        };
    }
    let cols: Vec<Vector> = c1
        .iter()
        .map(|b| b.twisted_d(g, lambda).to_coords())
        .collect();
    let m = Matrix::from_columns(&cols);
    let (x, l1) = m
        .solve(&omega.to_coords())
        .ok_or(ExteriorError::NoSolution)?;
    locus.extend(&l1);
    let combine = |coeffs: &[Scalar]| {
        c1.iter()
            .zip(coeffs)
            .fold(KForm::zero(g.dim(), 1), |acc, (b, c)| &acc + &b.scale(c))
    };
    let mut phi = combine(&x);
    let (kernel, l2) = m.nullspace();
    locus.extend(&l2);
    let kernel_forms: Vec<KForm> = kernel.iter().map(|k| combine(k)).collect();

    if let Some(xi) = gauge {
        let at_xi = |f: &KForm| linalg::dot(&f.to_covector(), xi);
        let value = at_xi(&phi);
        match kernel_forms.iter().find(|k| !at_xi(k).is_zero()) {
            Some(k) => {
                let kv = at_xi(k);
                locus.exclude_scalar(&kv);
                let t = &value / &kv;
                phi = &phi - &k.scale(&t);
            }
            None if kernel_forms.is_empty() && value.is_zero() => {}
            None => return Err(ExteriorError::GaugeUnresolvable),
        }
    }
    Ok(Potential {
        phi,
        kernel_dim: kernel_forms.len(),
        locus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Params;

    fn u2() -> LieAlgebra {
        let mut g = LieAlgebra::new(["e0", "e1", "e2", "e3"], Params::empty());
        g.set_bracket_ints(1, 2, &[0, 0, 0, -1]);
        g.set_bracket_ints(2, 3, &[0, -1, 0, 0]);
        g.set_bracket_ints(3, 1, &[0, 0, -1, 0]);
        g
    }

    fn e(i: usize) -> KForm {
        KForm::basis_1form(4, i)
    }

    #[test]
    fn wedge_conventions() {
        let v = |i| linalg::unit_vector(4, i);
        assert_eq!(e(2).wedge(&e(3)).evaluate(&[v(2), v(3)]), Scalar::one());
        assert!(e(0).wedge(&e(0)).is_zero());
        let top = e(0).wedge(&e(1)).wedge(&e(2).wedge(&e(3)));
        assert_eq!(top.evaluate(&[v(0), v(1), v(2), v(3)]), Scalar::one());
    }

    #[test]
    fn differential_on_u2() {
        let g = u2();
        assert_eq!(e(1).d(&g), e(2).wedge(&e(3)));
        assert_eq!(e(2).d(&g), e(3).wedge(&e(1)));
        assert!(e(0).d(&g).is_zero());
    }

    #[test]
    fn interior_products() {
        let e01 = e(0).wedge(&e(1));
        assert_eq!(e01.interior(&linalg::unit_vector(4, 0)).unwrap(), e(1));
        assert!(e01.interior(&linalg::unit_vector(4, 2)).unwrap().is_zero());
        assert_eq!(
            KForm::constant(4, Scalar::one()).interior(&linalg::unit_vector(4, 0)),
            Err(ExteriorError::DegreeZero)
        );
    }

    #[test]
    fn twisted_differential_of_constant() {
        let g = u2();
        let lambda = -e(0);
        let one = KForm::constant(4, Scalar::one());
        assert_eq!(one.twisted_d(&g, &lambda), -&lambda);
    }

    #[test]
    fn gauge_fixed_potential() {
        let g = u2();
        let lambda = -e(0);
        let omega = &e(0).wedge(&e(1)) + &e(2).wedge(&e(3));
        let p = solve_potential(&g, &omega, &lambda, Some(&linalg::unit_vector(4, 0))).unwrap();
        assert_eq!(p.phi, e(1));
        assert_eq!(p.kernel_dim, 1);
    }

    #[test]
    fn basis_tuple_counts() {
        assert_eq!(basis_tuples(4, 2).len(), 6);
        assert_eq!(basis_tuples(4, 0), vec![Vec::<usize>::new()]);
        assert!(basis_tuples(2, 3).is_empty());
    }
}
