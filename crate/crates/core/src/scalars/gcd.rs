//! Multivariate polynomial GCD over ℚ by recursive primitive pseudo-remainder
//! sequences. Results are monic under graded lex order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.is_monomial() || b.is_monomial() {
        let (m, other) = if a.is_monomial() { (a, b) } else { (b, a) };
        let mut g = m.leading_term().unwrap().0.clone();
        for (t, _) in other.terms() {
            g = g.gcd(t);
            if g.is_one() {
                break;
            }
        }
        return Poly::monomial(g, BigRational::from_integer(1.into()));
    }
    if a == b {
        return a.monic();
    }

    let var = match (a.min_var(), b.min_var()) {
        (Some(x), Some(y)) => x.min(y),
        _ => return Poly::one(),
    };
    let da = a.degree_in(var);
    let db = b.degree_in(var);
    if da == 0 {
        return gcd(a, &content(b, var));
    }
    if db == 0 {
        return gcd(&content(a, var), b);
    }

    let ca = content(a, var);
    let cb = content(b, var);
    let c = gcd(&ca, &cb);
    if coprime_in(a, b, var) {
        return c;
    }
    let mut p = a.to_univariate(var);
    let mut q = b.to_univariate(var);
    p = integer_primitive(primitive(&p, &ca));
    q = integer_primitive(primitive(&q, &cb));
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_remainder(&p, &q);
        if r.iter().all(Poly::is_zero) {
            break;
        }
        if r.len() == 1 {
            return c.monic();
        }
        let rc = univariate_content(&r);
        p = q;
        q = integer_primitive(primitive(&r, &rc));
    }
    let g = Poly::from_univariate(&q, var);
    (&g * &c).monic()
}

/// Sufficient test that gcd(a, b) has degree 0 in `var`: specialise the other
/// variables at a point where both leading coefficients survive and check that
/// the univariate images over ℚ are coprime.
fn coprime_in(a: &Poly, b: &Poly, var: usize) -> bool {
    let n = a.arity().max(b.arity());
    let ua = a.to_univariate(var);
    let ub = b.to_univariate(var);
    for shift in 0..4i64 {
        let point: Vec<Option<BigRational>> = (0..n as i64)
            .map(|i| {
                Some(BigRational::from_integer(BigInt::from(
                    2 + 3 * i + 7 * shift,
                )))
            })
            .collect();
        let image = |coeffs: &[Poly]| -> Vec<BigRational> {
            coeffs
                .iter()
                .map(|c| c.eval(&point).expect("every variable is specialised"))
                .collect()
        };
        let (ia, ib) = (image(&ua), image(&ub));
        if ia.last().is_some_and(Zero::is_zero) || ib.last().is_some_and(Zero::is_zero) {
            continue;
        }
        return rational_gcd_degree(ia, ib) == 0;
    }
    false
}

fn rational_gcd_degree(mut p: Vec<BigRational>, mut q: Vec<BigRational>) -> usize {
    let strip = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    };
    strip(&mut p);
    strip(&mut q);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let lq = q.last().unwrap().clone();
        while p.len() >= q.len() {
            let f = p.last().unwrap() / &lq;
            let shift = p.len() - q.len();
            for (i, c) in q.iter().enumerate() {
                p[i + shift] = &p[i + shift] - &(&f * c);
            }
            p.pop();
            strip(&mut p);
        }
        std::mem::swap(&mut p, &mut q);
    }
    p.len().saturating_sub(1)
}

/// GCD of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content(p: &Poly, var: usize) -> Poly {
    univariate_content(&p.to_univariate(var))
}

fn univariate_content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs.iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(coeffs: &[Poly], content: &Poly) -> Vec<Poly> {
    if content.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| {
            c.div_exact(content)
                .expect("content divides every coefficient")
        })
        .collect()
}

/// Rescales so that all rational coefficients are coprime integers.
fn integer_primitive(coeffs: Vec<Poly>) -> Vec<Poly> {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in coeffs.iter().flat_map(Poly::terms) {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() || (den.is_one() && num.is_one()) {
        return coeffs;
    }
    let factor = BigRational::new(den, num);
    coeffs.iter().map(|c| c.scale(&factor)).collect()
}

fn trim(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.len() > 1 && v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials with
/// polynomial coefficients; `b` must be nonzero with degree ≤ deg `a`.
fn pseudo_remainder(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = b.len() - 1;
    let lb = &b[n];
    let mut r = trim(a.to_vec());
    while r.len() > n && !(r.len() == 1 && r[0].is_zero()) {
        let m = r.len() - 1;
        let lr = r[m].clone();
        let shift = m - n;
        let mut next: Vec<Poly> = r.iter().map(|c| c * lb).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(&lr * bc);
        }
        debug_assert!(next[m].is_zero());
        next.pop();
        r = trim(next);
        if r.is_empty() {
            r.push(Poly::zero());
        }
    }
    r
}

/// Least common multiple, monic.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let a = &v(0) + &Poly::one();
        let b = &(&v(0) * &v(1)) - &v(2);
        let c = &v(1) + &v(2).scale(&BigRational::from_integer(3.into()));
        let d = &v(0) - &v(1);
        let g = gcd(&(&(&a * &b) * &c), &(&(&a * &b) * &d));
        assert_eq!(g, (&a * &b).monic());
    }

    #[test]
    fn coprime_inputs_give_one() {
        let a = &(&v(0) * &v(0)) + &Poly::one();
        let b = &v(1) - &v(0);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn monomial_against_polynomial() {
        let m = &(&v(0) * &v(0)) * &v(1);
        let p = &(&v(0) * &v(1)) + &(&v(0) * &v(2));
        assert_eq!(gcd(&m, &p), v(0));
    }

    #[test]
    fn unlucky_specialisation_falls_back() {
        // At p1 = 2 both images acquire the factor p0.
        let two = Poly::from_int(2);
        let a = &(&v(0) * &(&v(1) - &two)) + &Poly::one();
        let b = &(&(&v(0) * &v(0)) * &(&v(1) - &two)) + &v(1);
        assert!(gcd(&a, &b).is_one());
        let c = &(&v(0) * &v(1)) + &Poly::from_int(5);
        assert_eq!(gcd(&(&a * &c), &(&b * &c)), c.monic());
    }

    #[test]
    fn rational_coefficients_stay_bounded() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let a = &(&v(0).pow(5).scale(&q(3, 7)) + &(&v(0) * &v(1)).scale(&q(-5, 11)))
            + &Poly::constant(q(1, 13));
        let b = &v(0).pow(4).scale(&q(2, 9)) + &v(1).pow(3).scale(&q(7, 3));
        let c = &v(0) + &v(1).scale(&q(1, 2));
        assert_eq!(gcd(&(&a * &c), &(&b * &c)), c.monic());
    }
}
