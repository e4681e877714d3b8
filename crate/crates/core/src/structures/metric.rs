use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exterior::KForm;
use crate::lie::LieAlgebra;
use crate::linalg::{self, zero_vector, Matrix, Vector};
use crate::scalars::{Assignment, Locus, Poly, Scalar};

use super::{ComplexStructure, StructureError};

/// Which sign convention turned (ω, J) into a metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// g(X,Y) = ω(X, JY).
    Def,
    /// g(X,Y) = ω(JX, Y); the negative of `Def` on compatible pairs.
    Thm,
}

impl FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "def" => Ok(Convention::Def),
            "thm" => Ok(Convention::Thm),
            other => Err(format!(
                "unknown convention `{other}` (expected def or thm)"
            )),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Def => "def: g = omega(., J.)",
            Convention::Thm => "thm: g = omega(J., .)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    pub matrix: Matrix,
    pub convention: Convention,
}

impl Metric {
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        linalg::dot(x, &self.matrix.mul_vec(y))
    }
}

/// Result of testing ω(JX,JY) = ω(X,Y).
#[derive(Clone, Debug)]
pub struct Compatibility {
    pub compatible: bool,
    /// Matrix of ω(J·,J·) − ω.
    pub defect: Matrix,
    pub witness: Option<(usize, usize)>,
    /// Compatibility holds exactly where all of these vanish (off denominators).
    pub conditions: Vec<Poly>,
}

pub fn compatibility_check(omega: &KForm, j: &ComplexStructure) -> Compatibility {
    let w = omega.to_matrix();
    let jm = j.matrix();
    let defect = &(&(&jm.transpose() * &w) * jm) - &w;
    let n = defect.rows();
    let mut witness = None;
    let mut conditions: Vec<Poly> = Vec::new();
    for r in 0..n {
        for c in r + 1..n {
            let e = &defect[(r, c)];
            if e.is_zero() {
                continue;
            }
            witness.get_or_insert((r, c));
            let p = e.numer().monic();
            if !conditions.contains(&p) {
                conditions.push(p);
            }
        }
    }
    Compatibility {
        compatible: witness.is_none(),
        defect,
        witness,
        conditions,
    }
}

pub fn metric_from(
    omega: &KForm,
    j: &ComplexStructure,
    convention: Convention,
) -> Result<Metric, StructureError> {
    let w = omega.to_matrix();
    let m = match convention {
        Convention::Def => &w * j.matrix(),
        Convention::Thm => &j.matrix().transpose() * &w,
    };
    let n = m.rows();
    for r in 0..n {
        for c in r + 1..n {
            if m[(r, c)] != m[(c, r)] {
                return Err(StructureError::NotCompatible {
                    witness: format!("g({r},{c}) != g({c},{r})"),
                });
            }
        }
    }
    Ok(Metric {
        matrix: m,
        convention,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_definite(&self) -> bool {
        self.zero == 0 && (self.positive == 0 || self.negative == 0)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.zero == 0 && self.negative == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)?;
        if self.zero > 0 {
            write!(f, " with {}-dimensional radical", self.zero)?;
        }
        Ok(())
    }
}

/// Inertia of a rational symmetric matrix by congruence diagonalization.
pub fn signature_of(m: &[Vec<BigRational>]) -> Signature {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // Replace e_k by e_k + e_j: the new diagonal entry is 2a_kj.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                sig.zero += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
        for j in k + 1..n {
            a[k][j] = BigRational::zero();
        }
        for i in k + 1..n {
            a[i][k] = BigRational::zero();
        }
    }
    sig
}

/// Exact signature at a parameter point; a radical is an error.
pub fn signature_at(gm: &Metric, at: &Assignment) -> Result<Signature, StructureError> {
    let n = gm.matrix.rows();
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            row.push(gm.matrix[(r, c)].eval(at)?);
        }
        rows.push(row);
    }
    let sig = signature_of(&rows);
    if sig.zero > 0 {
        return Err(StructureError::DegenerateAtPoint {
            point: at.to_string(),
        });
    }
    Ok(sig)
}

/// Levi-Civita connection of a left-invariant metric: table of ∇_{eᵢ}eⱼ.
#[derive(Clone, Debug)]
pub struct Connection {
    n: usize,
    table: Vec<Vector>,
    pub locus: Locus,
}

impl Connection {
    pub fn nabla_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.n + j]
    }

    pub fn nabla(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                out = linalg::add_vectors(&out, &linalg::scale_vector(self.nabla_basis(i, j), &c));
            }
        }
        out
    }

    /// ∇_XY − ∇_YX − [X,Y] = 0 on basis pairs.
    pub fn is_torsion_free(&self, g: &LieAlgebra) -> bool {
        (0..self.n).all(|i| {
            (i + 1..self.n).all(|j| {
                let t = linalg::sub_vectors(
                    &linalg::sub_vectors(self.nabla_basis(i, j), self.nabla_basis(j, i)),
                    g.bracket_basis(i, j),
                );
                linalg::is_zero_vector(&t)
            })
        })
    }

    /// g(∇_XY, W) + g(Y, ∇_XW) = 0 on basis triples.
    pub fn is_metric(&self, gm: &Metric) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (y..n).all(|w| {
                    let a = gm.eval(self.nabla_basis(x, y), &linalg::unit_vector(n, w));
                    let b = gm.eval(&linalg::unit_vector(n, y), self.nabla_basis(x, w));
                    (&a + &b).is_zero()
                })
            })
        })
    }
}

/// Koszul formula 2g(∇_XY,W) = g([X,Y],W) − g([Y,W],X) + g([W,X],Y).
pub fn levi_civita(g: &LieAlgebra, gm: &Metric) -> Result<Connection, StructureError> {
    let n = g.dim();
    let (ginv, locus) = gm
        .matrix
        .inverse()
        .ok_or(StructureError::DegenerateMetric)?;
    let half = Scalar::from_ratio(1, 2);
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let ei = g.basis_vector(i);
            let ej = g.basis_vector(j);
            let rhs: Vector = (0..n)
                .map(|l| {
                    let el = g.basis_vector(l);
                    let t = &(&gm.eval(g.bracket_basis(i, j), &el)
                        - &gm.eval(g.bracket_basis(j, l), &ei))
                        + &gm.eval(g.bracket_basis(l, i), &ej);
                    &t * &half
                })
                .collect();
            table.push(ginv.mul_vec(&rhs));
        }
    }
    Ok(Connection { n, table, locus })
}
