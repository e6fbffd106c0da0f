use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact reduced fraction with arbitrary-precision numerator and
/// denominator (denominator always positive).
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `p/q` with an explicit denominator, also for integers (`1/1`, `0/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`; rejects a zero denominator.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p
        .parse()
        .map_err(|_| format!("bad numerator in `{s}`"))?;
    let q: BigInt = q
        .parse()
        .map_err(|_| format!("bad denominator in `{s}`"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(p, q))
}

pub(crate) fn abs_le_one(r: &Rational) -> bool {
    r.abs() <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["1/1", "-3/4", "0/1", "12345678901234567890123/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("3/-6").unwrap(), frac(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }
}
