//! Rational and Gaussian-rational scalars: construction, parsing, formatting.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Gaussian rational (complex number with rational real and imaginary parts).
pub type CRat = Complex<Rat>;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn crat(re: Rat, im: Rat) -> CRat {
    Complex::new(re, im)
}

pub fn creal(re: Rat) -> CRat {
    Complex::new(re, Rat::zero())
}

/// Purely imaginary Gaussian rational `i*t`.
pub fn cimag(t: Rat) -> CRat {
    Complex::new(Rat::zero(), t)
}

pub fn cint(re: i64, im: i64) -> CRat {
    Complex::new(rint(re), rint(im))
}

/// Parses `"p/q"` or `"p"` with optional sign into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| format!("invalid rational numerator: {s:?}"))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| format!("invalid rational denominator: {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in rational: {s:?}"));
    }
    Ok(Rat::new(num, den))
}

/// Formats a rational as `"p"` or `"p/q"` in lowest terms.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Exact integer power of a rational, with negative exponents allowed.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let positive = base.pow(i32::try_from(exp.unsigned_abs()).expect("exponent fits in i32"));
    if exp > 0 {
        positive
    } else {
        positive.recip()
    }
}

/// Floor of a rational as a big integer.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Absolute-value bound `|re| + |im|` used as an exact magnitude for
/// Gaussian rationals; zero exactly when the value is zero.
pub fn cabs_bound(z: &CRat) -> Rat {
    z.re.abs() + z.im.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-7", "1/2", "-9/4", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn rational_powers() {
        assert_eq!(rat_pow(&rat(2, 1), -4), rat(1, 16));
        assert_eq!(rat_pow(&rat(3, 2), 0), rint(1));
        assert_eq!(rat_pow(&rat(3, 2), 3), rat(27, 8));
    }

    #[test]
    fn floor_matches_integer_division() {
        assert_eq!(rat_floor(&rat(3, 2)), BigInt::from(1));
        assert_eq!(rat_floor(&rat(-3, 2)), BigInt::from(-2));
        assert_eq!(rat_floor(&rint(5)), BigInt::from(5));
    }
}
