use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::forward_owned_binop;
use super::Scalar;

/// Element of ℚ(p₁,…,p_m)(i).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl CScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        CScalar { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        CScalar {
            re,
            im: Scalar::zero(),
        }
    }

    pub fn zero() -> Self {
        CScalar::default()
    }

    pub fn one() -> Self {
        CScalar::real(Scalar::one())
    }

    pub fn i() -> Self {
        CScalar::new(Scalar::zero(), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> CScalar {
        CScalar::new(self.re.clone(), -&self.im)
    }

    /// re² + im²; nonzero whenever `self` is, since the base field is formally real.
    pub fn norm_sqr(&self) -> Scalar {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Option<CScalar> {
        let n = self.norm_sqr().inv()?;
        Some(CScalar::new(&self.re * &n, -&(&self.im * &n)))
    }

    pub fn scale(&self, s: &Scalar) -> CScalar {
        CScalar::new(&self.re * s, &self.im * s)
    }
}

impl From<Scalar> for CScalar {
    fn from(s: Scalar) -> Self {
        CScalar::real(s)
    }
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i*({})", self.re, self.im)
    }
}

impl Add<&CScalar> for &CScalar {
    type Output = CScalar;
    fn add(self, rhs: &CScalar) -> CScalar {
        CScalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&CScalar> for &CScalar {
    type Output = CScalar;
    fn sub(self, rhs: &CScalar) -> CScalar {
        CScalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&CScalar> for &CScalar {
    type Output = CScalar;
    fn mul(self, rhs: &CScalar) -> CScalar {
        CScalar::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar::new(-&self.re, -&self.im)
    }
}

forward_owned_binop!(Add, add, CScalar);
forward_owned_binop!(Sub, sub, CScalar);
forward_owned_binop!(Mul, mul, CScalar);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&CScalar::i() * &CScalar::i(), -&CScalar::one());
    }

    #[test]
    fn inverse_of_symbolic_value() {
        let z = CScalar::new(Scalar::param(0), Scalar::param(1));
        assert_eq!(&z * &z.inv().unwrap(), CScalar::one());
        assert!((&z * &z.conj()).im.is_zero());
    }
}
