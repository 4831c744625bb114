use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Wire form of a rational: a `[numerator, denominator]` pair of decimal
/// strings, always in lowest terms with a positive denominator.
pub fn rational_to_wire(r: &Rational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

pub fn rational_from_wire(pair: &[String; 2]) -> Result<Rational, String> {
    let numer: BigInt = pair[0]
        .parse()
        .map_err(|_| format!("bad integer literal {:?}", pair[0]))?;
    let denom: BigInt = pair[1]
        .parse()
        .map_err(|_| format!("bad integer literal {:?}", pair[1]))?;
    if denom.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(Rational::new(numer, denom))
}

/// Renders `r` the way a human would write it: `3`, `-3`, or `3/4`.
pub fn rational_display(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac_part(r: &Rational) -> Rational {
    let floor = r.floor();
    r - floor
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Nonnegative gcd of two signed integers.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// True when `r` is an integer multiple of `1/m`, i.e. `m * r` is integral.
pub fn has_denominator_dividing(r: &Rational, m: u64) -> bool {
    (r * Rational::from_integer(BigInt::from(m)))
        .denom()
        .is_one()
}

pub fn abs(r: &Rational) -> Rational {
    if r.is_negative() {
        -r.clone()
    } else {
        r.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_round_trip_preserves_lowest_terms() {
        let r = rat(-6, 4);
        let wire = rational_to_wire(&r);
        assert_eq!(wire, ["-3".to_string(), "2".to_string()]);
        assert_eq!(rational_from_wire(&wire).unwrap(), r);
    }

    #[test]
    fn wire_rejects_zero_denominator() {
        let wire = ["1".to_string(), "0".to_string()];
        assert!(rational_from_wire(&wire).is_err());
    }

    #[test]
    fn frac_part_of_negative() {
        assert_eq!(frac_part(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac_part(&rat(7, 3)), rat(1, 3));
        assert_eq!(frac_part(&rat_int(5)), rat_int(0));
    }

    #[test]
    fn display_forms() {
        assert_eq!(rational_display(&rat(3, 1)), "3");
        assert_eq!(rational_display(&rat(-3, 4)), "-3/4");
    }
}
