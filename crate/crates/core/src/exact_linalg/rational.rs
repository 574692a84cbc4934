use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::LinalgError;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator (maintained by `Ratio::new`).
pub type Rational = BigRational;

/// Parse a rational literal `"a/b"` or `"a"`, with an optional leading minus.
/// This is the wire format used by the JSON input schema.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(LinalgError::InvalidRational(s.to_string()));
    }
    t.parse::<BigRational>()
        .map_err(|_| LinalgError::InvalidRational(s.to_string()))
}

/// Format a rational as `"a/b"`, or `"a"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn parse_and_normalize() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("-7").unwrap()), "-7");
        assert_eq!(parse_rational(" 2/6 ").unwrap(), rat(1, 3));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn lowest_terms_invariant() {
        use num_integer::Integer;
        for (n, d) in [(4i64, 6i64), (-10, 5), (0, 7), (9, -12)] {
            let r = rat(n, d);
            assert!(r.denom() > &BigInt::zero());
            assert!(r.numer().gcd(r.denom()).is_one() || r.numer().is_zero());
        }
    }
}
