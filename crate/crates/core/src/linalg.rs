//! Dense matrices over the scalar field.
//!
//! Rank and determinant use fraction-free (Bareiss) elimination on a
//! denominator-cleared copy; echelon forms, kernels and solves use
//! Gauss-Jordan over ℚ(p). Either way, every non-constant pivot is recorded in
//! a [`Locus`], so a generic answer comes with the set where it may fail.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::scalars::{gcd, Locus, Poly, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(v: &[Scalar], s: &Scalar) -> Vector {
    v.iter().map(|x| x * s).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub locus: Locus,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Entry-wise map, e.g. parameter substitution.
    pub fn try_map<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<Matrix, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// Gauss-Jordan elimination over ℚ(p). Constant pivots are preferred so
    /// the recorded locus stays small.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut locus = Locus::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = choose_pivot((r..m.rows).map(|i| (i, &m[(i, c)]))) else {
                continue;
            };
            m.swap_rows(r, p);
            let piv = m[(r, c)].clone();
            locus.exclude_scalar(&piv);
            let inv = piv.inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let t = &f * &m[(r, j)];
                    m[(i, j)] = &m[(i, j)] - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            pivots,
            locus,
        }
    }

    /// Generic rank by fraction-free elimination.
    pub fn rank(&self) -> (usize, Locus) {
        let b = self.bareiss();
        (b.rank, b.locus)
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return Scalar::one();
        }
        let b = self.bareiss();
        if b.rank < self.rows {
            return Scalar::zero();
        }
        let last = Scalar::from_poly(b.last_pivot);
        let d = &last / &Scalar::from_poly(b.row_scale);
        if b.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    fn bareiss(&self) -> Bareiss {
        let mut locus = Locus::new();
        let mut row_scale = Poly::one();
        let mut a: Vec<Vec<Poly>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut l = Poly::one();
                for x in &row {
                    l = gcd::lcm(&l, x.denom());
                }
                // Row i scaled by l: entries x·l are polynomials.
                let scaled = row
                    .iter()
                    .map(|x| x.numer() * &l.div_exact(x.denom()).expect("denominator divides lcm"))
                    .collect();
                row_scale = &row_scale * &l;
                scaled
            })
            .collect();
        let mut prev = Poly::one();
        let mut rank = 0;
        let mut swaps = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let pick = (rank..self.rows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| (!a[i][c].is_constant(), a[i][c].num_terms()));
            let Some(p) = pick else { continue };
            if p != rank {
                a.swap(p, rank);
                swaps += 1;
            }
            let piv = a[rank][c].clone();
            locus.exclude(&piv);
            for i in rank + 1..self.rows {
                let f = a[i][c].clone();
                for j in c + 1..self.cols {
                    let t = &(&piv * &a[i][j]) - &(&f * &a[rank][j]);
                    a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][c] = Poly::zero();
            }
            prev = piv;
            rank += 1;
        }
        Bareiss {
            rank,
            last_pivot: prev,
            row_scale,
            swaps,
            locus,
        }
    }

    /// Basis of the right kernel.
    pub fn nullspace(&self) -> (Vec<Vector>, Locus) {
        let Rref {
            matrix,
            pivots,
            locus,
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = zero_vector(self.cols);
                v[f] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&matrix[(r, f)];
                }
                v
            })
            .collect();
        (basis, locus)
    }

    /// One solution of `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<(Vector, Locus)> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Rref {
            matrix,
            pivots,
            locus,
        } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(r, self.cols)].clone();
        }
        Some((x, locus))
    }

    pub fn inverse(&self) -> Option<(Matrix, Locus)> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let Rref {
            matrix,
            pivots,
            locus,
        } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = matrix[(i, n + j)].clone();
            }
        }
        Some((inv, locus))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> MatrixDisplay<'a> {
        MatrixDisplay { m: self, names }
    }
}

struct Bareiss {
    rank: usize,
    last_pivot: Poly,
    row_scale: Poly,
    swaps: usize,
    locus: Locus,
}

fn choose_pivot<'a>(candidates: impl Iterator<Item = (usize, &'a Scalar)>) -> Option<usize> {
    candidates
        .filter(|(_, s)| !s.is_zero())
        .min_by_key(|(_, s)| {
            (
                !s.is_constant(),
                s.numer().num_terms() + s.denom().num_terms(),
            )
        })
        .map(|(i, _)| i)
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if rhs[(k, j)].is_zero() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + &(a * &rhs[(k, j)]);
                }
            }
        }
        out
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&Scalar::from_int(-1))
    }
}

pub struct MatrixDisplay<'a> {
    m: &'a Matrix,
    names: &'a [String],
}

impl fmt::Display for MatrixDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.m.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.m.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.m[(i, j)].display(self.names))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: usize) -> Scalar {
        Scalar::param(i)
    }

    #[test]
    fn det_of_integer_matrix() {
        let m = Matrix::from_ints(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(m.det(), Scalar::from_int(6));
        let swapped = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(swapped.det(), Scalar::from_int(-1));
    }

    #[test]
    fn symbolic_rank_records_pivot_locus() {
        // [[a, 1], [1, b]] has generic rank 2, dropping on ab − 1 = 0.
        let m = Matrix::from_rows(vec![vec![p(0), Scalar::one()], vec![Scalar::one(), p(1)]]);
        let (rank, locus) = m.rank();
        assert_eq!(rank, 2);
        let ab1 = &(&Poly::var(0) * &Poly::var(1)) - &Poly::one();
        assert!(locus.polys().any(|q| *q == ab1));
        assert_eq!(m.det(), &(&p(0) * &p(1)) - &Scalar::one());
    }

    #[test]
    fn inverse_and_kernel() {
        let m = Matrix::from_rows(vec![vec![p(0), Scalar::one()], vec![Scalar::zero(), p(1)]]);
        let (inv, _) = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        let sing = Matrix::from_rows(vec![vec![p(0), p(1)], vec![&p(0) * &p(0), &p(0) * &p(1)]]);
        let (ker, _) = sing.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(is_zero_vector(&sing.mul_vec(&ker[0])));
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn inconsistent_solve() {
        let m = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[Scalar::one(), Scalar::one()]).is_none());
        let (x, _) = m.solve(&[Scalar::one(), Scalar::from_int(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Scalar::one(), Scalar::from_int(2)]);
    }
}
