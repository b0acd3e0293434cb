//! Compact exact rationals on 128-bit integers for the operator engine.
//!
//! The polynomial operator checks multiply many small exact coefficients;
//! fixed-width rationals with checked arithmetic keep those loops fast while
//! preserving exactness. Overflow panics rather than wrapping, so a result is
//! either exact or the run aborts loudly.

use crate::rational::Rat;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Q128 {
    num: i128,
    den: i128, // always positive
}

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q128 {
    pub const ZERO: Q128 = Q128 { num: 0, den: 1 };
    pub const ONE: Q128 = Q128 { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Q128 {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd128(num, den).max(1);
        Q128 {
            num: sign * (num / g),
            den: (den / g).abs(),
        }
    }

    pub fn from_int(n: i128) -> Q128 {
        Q128 { num: n, den: 1 }
    }

    pub fn from_rat(r: &Rat) -> Option<Q128> {
        Some(Q128::new(r.numer().to_i128()?, r.denom().to_i128()?))
    }

    pub fn to_rat(self) -> Rat {
        Rat::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn abs(self) -> Q128 {
        Q128 {
            num: self.num.abs(),
            den: self.den,
        }
    }

    fn check(v: Option<i128>) -> i128 {
        v.expect("exact rational overflow in operator engine")
    }

    pub fn add(self, other: Q128) -> Q128 {
        let g = gcd128(self.den, other.den).max(1);
        let da = self.den / g;
        let db = other.den / g;
        let num = Self::check(
            Self::check(self.num.checked_mul(db)).checked_add(Self::check(other.num.checked_mul(da))),
        );
        let den = Self::check(self.den.checked_mul(db));
        Q128::new(num, den)
    }

    pub fn sub(self, other: Q128) -> Q128 {
        self.add(other.neg())
    }

    pub fn neg(self) -> Q128 {
        Q128 {
            num: -self.num,
            den: self.den,
        }
    }

    pub fn mul(self, other: Q128) -> Q128 {
        // Cross-reduce before multiplying to keep magnitudes small.
        let g1 = gcd128(self.num, other.den).max(1);
        let g2 = gcd128(other.num, self.den).max(1);
        let num = Self::check((self.num / g1).checked_mul(other.num / g2));
        let den = Self::check((self.den / g2).checked_mul(other.den / g1));
        Q128::new(num, den)
    }

    pub fn div(self, other: Q128) -> Q128 {
        assert!(!other.is_zero(), "division by zero");
        self.mul(Q128 {
            num: other.den * other.num.signum(),
            den: other.num.abs(),
        })
    }

    pub fn cmp_abs(self, other: Q128) -> std::cmp::Ordering {
        // Compare |self| and |other| exactly via cross multiplication.
        let lhs = Self::check(self.num.abs().checked_mul(other.den));
        let rhs = Self::check(other.num.abs().checked_mul(self.den));
        lhs.cmp(&rhs)
    }
}

/// Gaussian rational on 128-bit rationals.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CQ128 {
    pub re: Q128,
    pub im: Q128,
}

impl CQ128 {
    pub const ZERO: CQ128 = CQ128 {
        re: Q128::ZERO,
        im: Q128::ZERO,
    };
    pub const ONE: CQ128 = CQ128 {
        re: Q128::ONE,
        im: Q128::ZERO,
    };

    pub fn new(re: Q128, im: Q128) -> CQ128 {
        CQ128 { re, im }
    }

    pub fn real(re: Q128) -> CQ128 {
        CQ128 {
            re,
            im: Q128::ZERO,
        }
    }

    pub fn imag(im: Q128) -> CQ128 {
        CQ128 {
            re: Q128::ZERO,
            im,
        }
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(self, o: CQ128) -> CQ128 {
        CQ128 {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub fn sub(self, o: CQ128) -> CQ128 {
        CQ128 {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    pub fn neg(self) -> CQ128 {
        CQ128 {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(self, o: CQ128) -> CQ128 {
        CQ128 {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn scale(self, s: Q128) -> CQ128 {
        CQ128 {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }

    /// Exact magnitude bound `|re| + |im|`; zero exactly when the value is.
    pub fn abs_bound(self) -> Q128 {
        self.re.abs().add(self.im.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn arithmetic_and_reduction() {
        let a = Q128::new(2, 4);
        assert_eq!(a, Q128::new(1, 2));
        assert_eq!(a.add(Q128::new(1, 3)), Q128::new(5, 6));
        assert_eq!(a.mul(Q128::new(4, 3)), Q128::new(2, 3));
        assert_eq!(a.div(Q128::new(1, 4)), Q128::from_int(2));
        assert_eq!(Q128::new(-3, -6), Q128::new(1, 2));
        assert_eq!(Q128::new(3, -6), Q128::new(-1, 2));
    }

    #[test]
    fn rat_round_trip() {
        let r = rat(-7, 12);
        let q = Q128::from_rat(&r).unwrap();
        assert_eq!(q.to_rat(), r);
    }

    #[test]
    fn complex_multiplication() {
        let i = CQ128::imag(Q128::ONE);
        assert_eq!(i.mul(i), CQ128::real(Q128::from_int(-1)));
        let z = CQ128::new(Q128::new(1, 2), Q128::new(1, 3));
        let w = z.mul(z.neg()).abs_bound();
        assert!(!w.is_zero());
    }
}
