//! Arbitrary-precision rationals.
//!
//! A thin wrapper over `BigRational` that fixes the textual form used by
//! every other module: `p/q` with a positive denominator.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational number, always reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Fallible constructor from big integers.
    pub fn from_parts(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, e: i32) -> Result<Self, Error> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let mut acc = BigRational::one();
        let mut base = self.0.clone();
        let mut k = e as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc *= &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(Rational(acc))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Always `p/q`, including integers (`3/1`).
    pub fn to_fraction_string(&self) -> String {
        let mut s = self.0.numer().to_string();
        s.push('/');
        s.push_str(&self.0.denom().to_string());
        s
    }

    /// Decimal rendering rounded to `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let neg = self.is_negative();
        let num = self.0.numer().abs();
        let den = self.0.denom().clone();
        // decimal exponent e such that 10^e <= |x| < 10^(e+1)
        let ten = BigInt::from(10);
        let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
        loop {
            let (lo_n, lo_d) = scale_pow10(&num, &den, -e);
            if lo_n < lo_d {
                e -= 1;
                continue;
            }
            if lo_n >= &lo_d * &ten {
                e += 1;
                continue;
            }
            break;
        }
        let shift = digits as i64 - 1 - e;
        let (n, d) = scale_pow10(&num, &den, shift);
        let (mut q, r) = n.div_rem(&d);
        if &r * BigInt::from(2) >= d {
            q += 1;
        }
        let mut mant = q.to_string();
        let mut e = e;
        if mant.len() > digits {
            // rounding carried into a new digit
            mant.truncate(digits);
            e += 1;
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let point = e + 1;
        if e >= 0 && (e as usize) < digits + 10 {
            let p = point as usize;
            if p >= mant.len() {
                out.push_str(&mant);
                for _ in mant.len()..p {
                    out.push('0');
                }
            } else {
                out.push_str(&mant[..p]);
                let frac = mant[p..].trim_end_matches('0');
                if !frac.is_empty() {
                    out.push('.');
                    out.push_str(frac);
                }
            }
        } else if e < 0 && e > -10 {
            out.push_str("0.");
            for _ in 0..(-e - 1) {
                out.push('0');
            }
            out.push_str(mant.trim_end_matches('0'));
        } else {
            out.push_str(&mant[..1]);
            let frac = mant[1..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
            out.push('e');
            out.push_str(&e.to_string());
        }
        out
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

fn scale_pow10(num: &BigInt, den: &BigInt, k: i64) -> (BigInt, BigInt) {
    let p = num_traits::pow(BigInt::from(10), k.unsigned_abs() as usize);
    if k >= 0 {
        (num * p, den.clone())
    } else {
        (num.clone(), den * p)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` and `-p/q` with optional surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(alloc::format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::checked_div`] otherwise.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

/// gcd of numerators over lcm of denominators: the positive rational `c`
/// such that every input divided by `c` is an integer with overall gcd 1.
pub fn rational_content<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> Rational {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for r in it {
        g = g.gcd(r.numer());
        l = l.lcm(r.denom());
    }
    if g.is_zero() {
        return Rational::one();
    }
    Rational(BigRational::new(g, l))
}

/// Parses a comma separated list of rationals.
pub fn parse_list(s: &str) -> Result<Vec<Rational>, Error> {
    s.split(',').map(Rational::from_str).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_fraction_string(), "-3/2");
        assert_eq!(Rational::zero().to_fraction_string(), "0/1");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["3/7", "-5/2", "0", "12", " 4 / 6 "] {
            let r: Rational = s.parse().unwrap();
            let back: Rational = r.to_fraction_string().parse().unwrap();
            assert_eq!(r, back);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn pow_negative() {
        let r = Rational::new(2, 3);
        assert_eq!(r.pow(-2).unwrap(), Rational::new(9, 4));
        assert!(Rational::zero().pow(-1).is_err());
    }

    #[test]
    fn decimal() {
        assert_eq!(Rational::new(-5, 2).to_decimal(30), "-2.5");
        assert_eq!(Rational::new(1, 3).to_decimal(5), "0.33333");
        assert_eq!(Rational::new(2, 3).to_decimal(3), "0.667");
        assert_eq!(Rational::from_int(1).to_decimal(30), "1");
        assert_eq!(Rational::new(999, 1000).to_decimal(2), "1");
        assert_eq!(Rational::from_int(1234).to_decimal(2), "1200");
    }

    #[test]
    fn content() {
        let v = [Rational::new(2, 3), Rational::new(4, 5)];
        assert_eq!(rational_content(v.iter()), Rational::new(2, 15));
    }
}
