//! Exact rational helpers on top of `num-rational`'s arbitrary precision type.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always normalized (lowest terms, positive denominator).
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `num/den`, or just `num` when the denominator is one.
pub fn to_fraction_string(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses the output of [`to_fraction_string`]. Rejects zero denominators.
pub fn parse_fraction(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
    }
}

/// Decimal rendering rounded (half away from zero) to `digits` significant digits,
/// trailing zeros stripped. Exact: no floating point is involved.
pub fn to_decimal_string(value: &Rational, digits: u32) -> String {
    assert!(digits > 0);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let magnitude = value.abs();

    // exponent e with 10^e <= |v| < 10^(e+1)
    let mut exp = estimate_exponent(&magnitude);
    let ten = BigInt::from(10);
    while pow10(exp) > magnitude {
        exp -= 1;
    }
    while pow10(exp + 1) <= magnitude {
        exp += 1;
    }

    let shift = digits as i64 - 1 - exp;
    let scaled = magnitude * pow10(shift);
    let mut mantissa = round_half_away(&scaled);
    let mut point = exp; // position of the leading digit
    if mantissa >= ten.pow(digits) {
        mantissa /= &ten;
        point += 1;
    }

    let digits_str = mantissa.to_string();
    debug_assert_eq!(digits_str.len(), digits as usize);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if point < 0 {
        out.push_str("0.");
        for _ in 0..(-point - 1) {
            out.push('0');
        }
        out.push_str(digits_str.trim_end_matches('0'));
    } else {
        let int_len = point as usize + 1;
        if int_len >= digits_str.len() {
            out.push_str(&digits_str);
            for _ in 0..(int_len - digits_str.len()) {
                out.push('0');
            }
        } else {
            let (int_part, frac_part) = digits_str.split_at(int_len);
            out.push_str(int_part);
            let frac = frac_part.trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        }
    }
    out
}

fn pow10(exp: i64) -> Rational {
    let p = BigInt::from(10).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn estimate_exponent(magnitude: &Rational) -> i64 {
    let n = magnitude.numer().to_string().len() as i64;
    let d = magnitude.denom().to_string().len() as i64;
    n - d
}

fn round_half_away(value: &Rational) -> BigInt {
    let (q, r) = value.numer().div_rem(value.denom());
    if BigInt::from(2) * r >= *value.denom() {
        q + 1
    } else {
        q
    }
}

/// Least common multiple of all denominators.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigUint {
    values.into_iter().fold(BigUint::one(), |acc, v| {
        let d = v.denom().magnitude().clone();
        acc.lcm(&d)
    })
}

/// Converts an integral, nonnegative rational to `u64`.
pub fn to_u64(value: &Rational) -> Option<u64> {
    if !value.is_integer() || value.numer().sign() == Sign::Minus {
        return None;
    }
    value.numer().to_u64()
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_strings() {
        assert_eq!(to_fraction_string(&ratio(2, 10)), "1/5");
        assert_eq!(to_fraction_string(&int(0)), "0");
        assert_eq!(to_fraction_string(&ratio(-3, 6)), "-1/2");
        assert_eq!(parse_fraction("2/5"), Some(ratio(2, 5)));
        assert_eq!(parse_fraction("4/10"), Some(ratio(2, 5)));
        assert_eq!(parse_fraction("7"), Some(int(7)));
        assert_eq!(parse_fraction("1/0"), None);
        assert_eq!(parse_fraction("x"), None);
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal_string(&ratio(1, 5), 12), "0.2");
        assert_eq!(to_decimal_string(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal_string(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal_string(&int(0), 12), "0");
        assert_eq!(to_decimal_string(&int(1), 12), "1");
        assert_eq!(to_decimal_string(&int(20000), 12), "20000");
        assert_eq!(to_decimal_string(&ratio(5, 2), 12), "2.5");
        assert_eq!(to_decimal_string(&ratio(1, 800), 12), "0.00125");
        assert_eq!(to_decimal_string(&ratio(-1, 8), 2), "-0.13");
        // rounding carries into a new leading digit
        assert_eq!(to_decimal_string(&ratio(9999, 1000), 3), "10");
        assert_eq!(to_decimal_string(&int(123456), 3), "123000");
    }

    #[test]
    fn lcm() {
        let v = [ratio(1, 6), ratio(1, 10), ratio(11, 15), int(0)];
        assert_eq!(lcm_of_denominators(v.iter()), BigUint::from(30u32));
    }

    #[test]
    fn u64_conversion() {
        assert_eq!(to_u64(&int(8000)), Some(8000));
        assert_eq!(to_u64(&ratio(1, 2)), None);
        assert_eq!(to_u64(&int(-1)), None);
    }
}
