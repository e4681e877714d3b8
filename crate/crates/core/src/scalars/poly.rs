//! Sparse multivariate polynomials over ℚ.
//!
//! Terms are keyed by exponent vectors ordered graded-lexicographically, with
//! parameter 0 the most significant variable. Exponent vectors are stored with
//! trailing zeros trimmed, so a constant created without a parameter list
//! combines freely with polynomials in any declared parameter list.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = exp;
        Monomial::from_exponents(v)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| self.exponent(i) + other.exponent(i))
            .collect();
        Monomial::from_exponents(v)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (i, e) in other.0.iter().enumerate() {
            if v[i] < *e {
                return None;
            }
            v[i] -= e;
        }
        Some(Monomial::from_exponents(v))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        Monomial::from_exponents((0..n).map(|i| self.0[i].min(other.0[i])).collect())
    }

    fn with_exponent(&self, var: usize, exp: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = exp;
        Monomial::from_exponents(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with exact rational coefficients. No zero coefficient is stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(index: usize) -> Self {
        Poly::monomial(Monomial::var(index, 1), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Leading term under graded lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    /// Smallest variable index occurring in the polynomial.
    pub fn min_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.exponents().iter().position(|&e| e > 0))
            .min()
    }

    /// One past the largest variable index occurring.
    pub fn arity(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.exponents().len())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Multiplies by −1 if the leading coefficient is negative.
    pub fn with_positive_lead(&self) -> Poly {
        if self.leading_coeff().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading_term()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(dm)?;
            let c = rc / dc;
            rem = &rem - &d.mul_monomial(&m, &c);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Evaluates at a point; `None` if a needed variable has no value.
    pub fn eval(&self, values: &[Option<BigRational>]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values.get(i)?.as_ref()?;
                t *= v.pow(e as i32);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Substitutes the variables that have a value, leaving the others free.
    pub fn substitute(&self, values: &[Option<BigRational>]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exponents().to_vec();
            for (i, e) in exps.iter_mut().enumerate() {
                if *e == 0 {
                    continue;
                }
                if let Some(Some(v)) = values.get(i) {
                    coeff *= v.pow(*e as i32);
                    *e = 0;
                }
            }
            out.add_term(Monomial::from_exponents(exps), coeff);
        }
        out
    }

    /// Coefficients of `self` viewed as a polynomial in `var`, lowest degree first.
    pub(crate) fn to_univariate(&self, var: usize) -> Vec<Poly> {
        let mut coeffs = vec![Poly::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            coeffs[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        coeffs
    }

    pub(crate) fn from_univariate(coeffs: &[Poly], var: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                out.add_term(m.with_exponent(var, e as u32), v.clone());
            }
        }
        out
    }

    /// Renders with the given parameter names; unnamed variables print as `p<i>`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

pub(crate) fn write_monomial(
    f: &mut fmt::Formatter<'_>,
    m: &Monomial,
    names: &[String],
) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        match names.get(i) {
            Some(n) => write!(f, "{n}")?,
            None => write!(f, "p{i}")?,
        }
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m, self.names)?;
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident, $ty:ty) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}
pub(crate) use forward_owned_binop;

forward_owned_binop!(Add, add, Poly);
forward_owned_binop!(Sub, sub, Poly);
forward_owned_binop!(Mul, mul, Poly);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn grlex_orders_by_degree_then_first_variable() {
        let a = Monomial::var(0, 1);
        let b2 = Monomial::var(1, 2);
        let ab = a.mul(&Monomial::var(1, 1));
        assert!(b2 > a);
        assert!(ab > b2);
        assert!(Monomial::var(0, 2) > ab);
    }

    #[test]
    fn exact_division_detects_non_divisors() {
        let a = Poly::var(0);
        let b = Poly::var(1);
        let p = &(&a + &b) * &(&a - &b);
        assert_eq!(p.div_exact(&(&a + &b)), Some(&a - &b));
        assert_eq!(p.div_exact(&(&a + &Poly::one())), None);
    }

    #[test]
    fn substitution_keeps_free_variables() {
        let a = Poly::var(0);
        let b = Poly::var(1);
        let p = &(&a * &b) + &b;
        let s = p.substitute(&[Some(q(2)), None]);
        assert_eq!(s, b.scale(&q(3)));
    }

    #[test]
    fn display_is_descending_grlex() {
        let a = Poly::var(0);
        let p = &(&a * &a).scale(&q(-1)) - &Poly::one();
        assert_eq!(p.display(&["a".into()]).to_string(), "-a^2 - 1");
    }
}
