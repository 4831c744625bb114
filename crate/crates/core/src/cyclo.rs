use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, Mutex};

use num_traits::{One, Zero};

use crate::error::ExactError;
use crate::poly::PolyQ;
use crate::rational::{lcm_u64, Rational};

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n > 0, "euler_phi(0)");
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors(0)");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

static CYCLO_CACHE: LazyLock<Mutex<HashMap<u64, PolyQ>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The n-th cyclotomic polynomial, computed by exact division of `x^n - 1`
/// by the cyclotomic polynomials of the proper divisors of `n`. Results are
/// cached for the lifetime of the process.
pub fn cyclotomic_polynomial(n: u64) -> PolyQ {
    assert!(n > 0, "cyclotomic_polynomial(0)");
    if let Some(p) = CYCLO_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let proper: Vec<u64> = divisors(n).into_iter().filter(|&d| d < n).collect();
    let mut denom = PolyQ::one();
    for d in proper {
        denom = &denom * &cyclotomic_polynomial(d);
    }
    let phi = PolyQ::x_pow_minus_one(n as usize)
        .exact_div(&denom)
        .expect("cyclotomic division is exact");
    CYCLO_CACHE.lock().unwrap().insert(n, phi.clone());
    phi
}

/// An element of the cyclotomic field Q(zeta_n), stored as the canonical
/// residue modulo the n-th cyclotomic polynomial (degree < phi(n)).
///
/// Equality compares across orders by lifting both sides into the compositum
/// Q(zeta_lcm). Arithmetic requires equal orders; use [`CycloElement::unify`]
/// or the `try_*` methods when orders may differ.
#[derive(Debug, Clone)]
pub struct CycloElement {
    order: u64,
    residue: PolyQ,
}

impl CycloElement {
    pub fn new(order: u64, value: PolyQ) -> Result<Self, ExactError> {
        if order == 0 {
            return Err(ExactError::ZeroOrder);
        }
        let modulus = cyclotomic_polynomial(order);
        let residue = value.rem(&modulus)?;
        Ok(CycloElement { order, residue })
    }

    pub fn zero(order: u64) -> Self {
        CycloElement {
            order,
            residue: PolyQ::zero(),
        }
    }

    pub fn one(order: u64) -> Self {
        CycloElement {
            order,
            residue: PolyQ::one(),
        }
    }

    pub fn from_rational(order: u64, r: Rational) -> Self {
        CycloElement {
            order,
            residue: PolyQ::constant(r),
        }
    }

    /// zeta_order raised to the k-th power, k taken modulo the order.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        assert!(order > 0, "root_of_unity at order 0");
        let k = k.rem_euclid(order as i64) as usize;
        CycloElement::new(order, PolyQ::monomial(Rational::one(), k)).expect("positive order")
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn residue(&self) -> &PolyQ {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.residue.is_one()
    }

    /// Returns the value as a rational if it lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.residue.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.residue.coeff(0)),
            Some(_) => None,
        }
    }

    /// Reinterprets the element in Q(zeta_m) for a multiple m of the current
    /// order, substituting zeta_n = zeta_m^(m/n).
    pub fn lift_to(&self, new_order: u64) -> Result<Self, ExactError> {
        if new_order == self.order {
            return Ok(self.clone());
        }
        if new_order == 0 || new_order % self.order != 0 {
            return Err(ExactError::NotAMultiple {
                from: self.order,
                to: new_order,
            });
        }
        let k = (new_order / self.order) as usize;
        CycloElement::new(new_order, self.residue.compose_power(k))
    }

    /// Lifts both elements into the compositum Q(zeta_lcm).
    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = lcm_u64(a.order, b.order);
        (
            a.lift_to(m).expect("lcm is a multiple"),
            b.lift_to(m).expect("lcm is a multiple"),
        )
    }

    fn require_same_order(&self, other: &Self) -> Result<(), ExactError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(ExactError::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.require_same_order(other)?;
        Ok(CycloElement {
            order: self.order,
            residue: &self.residue + &other.residue,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.require_same_order(other)?;
        Ok(CycloElement {
            order: self.order,
            residue: &self.residue - &other.residue,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.require_same_order(other)?;
        let product = &self.residue * &other.residue;
        CycloElement::new(self.order, product)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("cyclotomic order mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("cyclotomic order mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("cyclotomic order mismatch")
    }

    pub fn neg(&self) -> Self {
        CycloElement {
            order: self.order,
            residue: -&self.residue,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycloElement {
            order: self.order,
            residue: self.residue.scale(c),
        }
    }

    /// Multiplicative inverse via the extended gcd with the cyclotomic
    /// modulus, which is constant because the modulus is irreducible.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let modulus = cyclotomic_polynomial(self.order);
        let (g, s, _) = self.residue.extended_gcd(&modulus);
        debug_assert!(g.is_one(), "cyclotomic modulus is irreducible");
        CycloElement::new(self.order, s)
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        self.require_same_order(other)?;
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycloElement::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.residue == other.residue;
        }
        let (a, b) = CycloElement::unify(self, other);
        a.residue == b.residue
    }
}

impl Eq for CycloElement {}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod Phi_{})", self.residue, self.order)
    }
}
