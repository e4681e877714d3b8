use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::params::Assignment;
use super::poly::{forward_owned_binop, Monomial, Poly};
use super::ScalarError;

/// Element of ℚ(p₁,…,p_m).
///
/// Kept in lowest terms with a monic denominator, so the representation is
/// canonical. Equality is still decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_poly(Poly::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::from_poly(Poly::constant(q))
    }

    pub fn param(index: usize) -> Self {
        Scalar::from_poly(Poly::var(index))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            return Scalar {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Scalar::normalised(num, den)
    }

    /// Makes the denominator monic; `num / den` must already be in lowest terms.
    fn normalised(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The rational value if no parameter occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        let inv = rhs.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, exp: i32) -> Result<Scalar, ScalarError> {
        if exp >= 0 {
            let e = exp as u32;
            Ok(Scalar {
                num: self.num.pow(e),
                den: self.den.pow(e),
            })
        } else {
            let inv = self.inv().ok_or(ScalarError::DivisionByZero)?;
            inv.pow(-exp)
        }
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }

    /// Exact value at a complete parameter point.
    pub fn eval(&self, at: &Assignment) -> Result<BigRational, ScalarError> {
        let missing = |p: &Poly| {
            (0..p.arity())
                .find(|&i| at.value(i).is_none() && p.degree_in(i) > 0)
                .map(|i| {
                    ScalarError::MissingParameter(
                        at.name(i).map(str::to_string).unwrap_or(format!("p{i}")),
                    )
                })
        };
        let den = match self.den.eval(at.values()) {
            Some(d) => d,
            None => return Err(missing(&self.den).unwrap()),
        };
        let num = match self.num.eval(at.values()) {
            Some(n) => n,
            None => return Err(missing(&self.num).unwrap()),
        };
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes {
                point: at.to_string(),
            });
        }
        Ok(num / den)
    }

    /// Specializes the assigned parameters and leaves the others symbolic.
    pub fn substitute(&self, at: &Assignment) -> Result<Scalar, ScalarError> {
        let den = self.den.substitute(at.values());
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes {
                point: at.to_string(),
            });
        }
        Ok(Scalar::reduced(self.num.substitute(at.values()), den))
    }

    /// Replaces parameter `index` by an arbitrary scalar.
    pub fn substitute_var(&self, index: usize, value: &Scalar) -> Result<Scalar, ScalarError> {
        let compose = |p: &Poly| -> Scalar {
            p.terms()
                .map(|(mono, c)| {
                    let rest = Poly::monomial(
                        Monomial::from_exponents(
                            (0..mono.exponents().len())
                                .map(|v| if v == index { 0 } else { mono.exponent(v) })
                                .collect(),
                        ),
                        c.clone(),
                    );
                    let k = mono.exponent(index);
                    let mut term = Scalar::from_poly(rest);
                    for _ in 0..k {
                        term = &term * value;
                    }
                    term
                })
                .sum()
        };
        compose(&self.num).checked_div(&compose(&self.den))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> ScalarDisplay<'a> {
        ScalarDisplay { s: self, names }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Eq for Scalar {}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<Poly> for Scalar {
    fn from(p: Poly) -> Self {
        Scalar::from_poly(p)
    }
}

pub struct ScalarDisplay<'a> {
    s: &'a Scalar,
    names: &'a [String],
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.s.num.display(self.names);
        if self.s.den.is_one() {
            return write!(f, "{num}");
        }
        let den = self.s.den.display(self.names);
        let wrap_num = self.s.num.num_terms() > 1;
        let wrap_den = self.s.den.num_terms() > 1 || !self.s.den.leading_coeff().is_one();
        match (wrap_num, wrap_den) {
            (true, true) => write!(f, "({num})/({den})"),
            (true, false) => write!(f, "({num})/{den}"),
            (false, true) => write!(f, "{num}/({den})"),
            (false, false) => write!(f, "{num}/{den}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&[]))
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num + &rhs.num);
        }
        // Both operands are reduced, so only factors of gcd(b, d) can cancel.
        let g = gcd(&self.den, &rhs.den);
        let b = exact(&self.den, &g);
        let d = exact(&rhs.den, &g);
        let t = &(&self.num * &d) + &(&rhs.num * &b);
        if t.is_zero() {
            return Scalar::zero();
        }
        let g2 = gcd(&t, &g);
        Scalar::normalised(exact(&t, &g2), &b * &exact(&rhs.den, &g2))
    }
}

fn exact(p: &Poly, d: &Poly) -> Poly {
    if d.is_one() {
        return p.clone();
    }
    p.div_exact(d).expect("gcd divides")
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        Scalar::normalised(
            &exact(&self.num, &g1) * &exact(&rhs.num, &g2),
            &exact(&self.den, &g2) * &exact(&rhs.den, &g1),
        )
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

forward_owned_binop!(Add, add, Scalar);
forward_owned_binop!(Sub, sub, Scalar);
forward_owned_binop!(Mul, mul, Scalar);
forward_owned_binop!(Div, div, Scalar);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Params;

    fn c_of_ab() -> Scalar {
        // −(1+a²)/b
        let a = Scalar::param(0);
        let b = Scalar::param(1);
        -(&(&Scalar::one() + &(&a * &a)) / &b)
    }

    fn at(a: i64, b: i64) -> Assignment {
        Params::new(["a", "b"]).full_assignment(&[
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        ])
    }

    #[test]
    fn eval_at_regular_points() {
        assert_eq!(
            c_of_ab().eval(&at(0, 1)).unwrap(),
            BigRational::from_integer((-1).into())
        );
        assert_eq!(
            c_of_ab().eval(&at(1, -1)).unwrap(),
            BigRational::from_integer(2.into())
        );
    }

    #[test]
    fn eval_on_excluded_locus() {
        let err = c_of_ab().eval(&at(0, 0)).unwrap_err();
        assert!(matches!(err, ScalarError::DenominatorVanishes { .. }));
        assert!(err.to_string().contains("b=0"));
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let a = Scalar::param(0);
        let b = Scalar::param(1);
        let s = &(&(&a * &a) - &(&b * &b)) / &(&a - &b);
        assert_eq!(s.denom(), &Poly::one());
        assert_eq!(s, &a + &b);
    }

    #[test]
    fn display_with_names() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(c_of_ab().display(&names).to_string(), "(-a^2 - 1)/b");
    }
}
