use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::ExactError;
use crate::rational::{rational_display, Rational};

/// Dense univariate polynomial over the rationals.
///
/// Coefficients are stored lowest degree first with trailing zeros trimmed,
/// so the zero polynomial is the empty vector and `coeffs.last()` is always
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::new(vec![c])
    }

    pub fn x() -> Self {
        PolyQ::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        if c.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        PolyQ { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = -Rational::one();
        coeffs[n] = Rational::one();
        PolyQ { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => PolyQ::zero(),
            Some(lc) => {
                let inv = Rational::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = PolyQ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &PolyQ) -> Result<(PolyQ, PolyQ), ExactError> {
        let d_deg = divisor.degree().ok_or(ExactError::DivisionByZero)?;
        let lc_inv = Rational::one() / divisor.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return Ok((PolyQ::zero(), self.clone()));
        }
        let q_len = rem.len() - d_deg;
        let mut quot = vec![Rational::zero(); q_len];
        for k in (0..q_len).rev() {
            let factor = &rem[k + d_deg] * &lc_inv;
            if !factor.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    let delta = dc * &factor;
                    rem[k + j] -= delta;
                }
            }
            quot[k] = factor;
        }
        Ok((PolyQ::new(quot), PolyQ::new(rem)))
    }

    /// Exact division; errors with `NotAnnihilating` semantics left to the
    /// caller, here it simply reports a nonzero remainder.
    pub fn exact_div(&self, divisor: &PolyQ) -> Result<PolyQ, ExactError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ExactError::NotAnnihilating)
        }
    }

    pub fn rem(&self, modulus: &PolyQ) -> Result<PolyQ, ExactError> {
        Ok(self.div_rem(modulus)?.1)
    }

    /// Extended gcd: returns `(g, s, t)` with `g = s * self + t * other`,
    /// `g` monic (or zero when both inputs are zero).
    pub fn extended_gcd(&self, other: &PolyQ) -> (PolyQ, PolyQ, PolyQ) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = PolyQ::one();
        let mut s1 = PolyQ::zero();
        let mut t0 = PolyQ::zero();
        let mut t1 = PolyQ::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.leading_coeff() {
            None => (PolyQ::zero(), PolyQ::zero(), PolyQ::zero()),
            Some(lc) => {
                let inv = Rational::one() / lc.clone();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        self.extended_gcd(other).0
    }

    /// Substitutes `x -> x^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return if self.is_zero() {
                PolyQ::zero()
            } else {
                PolyQ::constant(self.eval(&Rational::one()))
            };
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        PolyQ::new(coeffs)
    }

    /// Derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PolyQ::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(i.into()))
            .collect();
        PolyQ::new(coeffs)
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        PolyQ::new(coeffs)
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        PolyQ::new(coeffs)
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyQ::new(coeffs)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", rational_display(c))?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{}*", rational_display(c))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(coeffs: &[i64]) -> PolyQ {
        PolyQ::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, PolyQ::zero());
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn division_by_zero_rejected() {
        assert_eq!(
            p(&[1]).div_rem(&PolyQ::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn exact_division() {
        let a = &p(&[-1, 0, 0, 0, 0, 0, 1]) * &p(&[2, 1]);
        assert_eq!(
            a.exact_div(&p(&[2, 1])).unwrap(),
            p(&[-1, 0, 0, 0, 0, 0, 1])
        );
        assert!(p(&[1, 1]).exact_div(&p(&[0, 1])).is_err());
    }

    #[test]
    fn extended_gcd_bezout_identity() {
        let a = &p(&[-1, 1]) * &p(&[1, 1]);
        let b = &p(&[-1, 1]) * &p(&[2, 1]);
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let (g, s, t) = p(&[0, 1]).extended_gcd(&p(&[-1, 1]));
        assert!(g.is_one());
        assert_eq!(&(&s * &p(&[0, 1])) + &(&t * &p(&[-1, 1])), PolyQ::one());
    }

    #[test]
    fn eval_horner() {
        let a = p(&[1, -3, 2]);
        assert_eq!(a.eval(&rat_int(2)), rat_int(3));
        assert_eq!(a.eval(&rat(1, 2)), rat_int(0));
    }

    #[test]
    fn compose_power_substitutes() {
        let a = p(&[1, 1]);
        assert_eq!(a.compose_power(3), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[5]).compose_power(4), p(&[5]));
    }

    #[test]
    fn monic_normalization() {
        let a = PolyQ::new(vec![rat_int(2), rat_int(4)]);
        assert_eq!(a.monic(), PolyQ::new(vec![rat(1, 2), rat_int(1)]));
    }

    #[test]
    fn derivative_rule() {
        assert_eq!(p(&[7, 3, 0, 5]).derivative(), p(&[3, 0, 15]));
        assert_eq!(p(&[7]).derivative(), PolyQ::zero());
    }
}
