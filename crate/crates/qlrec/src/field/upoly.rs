//! Polynomials in `x` with rational-function coefficients.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Dense ascending coefficients; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Default)]
pub struct PolyValue {
    coeffs: Vec<RatFunc>,
}

impl PolyValue {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyValue { coeffs }
    }

    pub fn zero() -> Self {
        PolyValue { coeffs: Vec::new() }
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::new(alloc::vec![c])
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(alloc::vec![RatFunc::zero(), RatFunc::one()])
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(c x)`.
    pub fn dilate(&self, c: &RatFunc) -> Self {
        let mut pw = RatFunc::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw = &pw * c;
        }
        Self::new(out)
    }

    /// `p(x) / x`; fails unless the constant term vanishes.
    pub fn div_x(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(Self::zero()),
            Some(c) if c.is_zero() => Ok(Self::new(self.coeffs[1..].to_vec())),
            Some(_) => Err(Error::Invalid("constant term does not vanish".into())),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    /// Reads a rational function as a polynomial in `var`; its denominator
    /// must not involve `var` and no negative powers may occur.
    pub fn from_ratfunc(r: &RatFunc, var: &str) -> Result<Self> {
        if r.den_factors().iter().any(|(f, _)| f.has_var(var)) {
            return Err(Error::Invalid(alloc::format!("denominator depends on {var}")));
        }
        let parts = r.numer().collect_in(var);
        if parts.first().is_some_and(|(d, _)| *d < 0) {
            return Err(Error::Invalid(alloc::format!("negative power of {var}")));
        }
        let top = parts.last().map(|(d, _)| *d as usize + 1).unwrap_or(0);
        let den = RatFunc::new(MultiPoly::one(), r.denom())?;
        let mut out = alloc::vec![RatFunc::zero(); top];
        for (d, c) in parts {
            out[d as usize] = &RatFunc::from_poly(c) * &den;
        }
        Ok(Self::new(out))
    }

    /// `sum c_k var^k` as a single rational function.
    pub fn to_ratfunc(&self, var: &str) -> RatFunc {
        self.eval(&RatFunc::var(var))
    }

    /// Applies `f` to every coefficient.
    pub fn map<F: FnMut(&RatFunc) -> Result<RatFunc>>(&self, mut f: F) -> Result<Self> {
        Ok(Self::new(self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>>>()?))
    }
}

/// Scales rational functions by a common factor so that all become
/// polynomials in `var`: the product of the `var`-dependent denominator
/// factors (highest multiplicity) times a power of `var`.
pub fn common_polys(rs: &[RatFunc], var: &str) -> Result<Vec<PolyValue>> {
    let mut facs: Vec<(MultiPoly, u32)> = Vec::new();
    for r in rs {
        for (f, m) in r.den_factors() {
            if !f.has_var(var) {
                continue;
            }
            match facs.iter_mut().find(|(g, _)| g == f) {
                Some(e) => e.1 = e.1.max(*m),
                None => facs.push((f.clone(), *m)),
            }
        }
    }
    let mut l = MultiPoly::one();
    for (f, m) in &facs {
        l = &l * &f.pow(*m);
    }
    let scaled: Vec<RatFunc> = rs.iter().map(|r| r.mul_poly(&l)).collect();
    let low = scaled.iter().filter(|r| !r.is_zero()).map(|r| r.numer().degree_range(var).1).min().unwrap_or(0);
    scaled
        .iter()
        .map(|r| {
            let r = if low < 0 { r.shift(&[(var, -low)]) } else { r.clone() };
            PolyValue::from_ratfunc(&r, var)
        })
        .collect()
}

impl Add<&PolyValue> for &PolyValue {
    type Output = PolyValue;
    fn add(self, rhs: &PolyValue) -> PolyValue {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyValue::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub<&PolyValue> for &PolyValue {
    type Output = PolyValue;
    fn sub(self, rhs: &PolyValue) -> PolyValue {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyValue::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul<&PolyValue> for &PolyValue {
    type Output = PolyValue;
    fn mul(self, rhs: &PolyValue) -> PolyValue {
        if self.is_zero() || rhs.is_zero() {
            return PolyValue::zero();
        }
        let mut out = alloc::vec![RatFunc::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        PolyValue::new(out)
    }
}

impl Neg for &PolyValue {
    type Output = PolyValue;
    fn neg(self) -> PolyValue {
        PolyValue::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for PolyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*x^{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratfunc::rq;

    #[test]
    fn common_denominator_is_cleared() {
        let x = crate::field::ratfunc::rsym("x");
        let a = (&x + &rq(1, 1)).recip().unwrap();
        let b = x.recip().unwrap();
        let c = &(&x - &rq(1, 1)) * &(&x + &rq(1, 1)).pow(-2).unwrap();
        let p = common_polys(&[a, b, c], "x").unwrap();
        // x (x+1)^2 times each
        assert_eq!(p[0].degree(), Some(2));
        assert_eq!(p[1].degree(), Some(2));
        assert_eq!(p[2].degree(), Some(2));
        assert_eq!(p[2].eval(&rq(2, 1)), rq(2, 1));
    }

    #[test]
    fn product_and_eval() {
        let x = PolyValue::x();
        let p = &(&x + &PolyValue::one()) * &(&x - &PolyValue::one());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&rq(3, 1)), rq(8, 1));
        assert_eq!(p.dilate(&rq(2, 1)).eval(&rq(1, 1)), rq(3, 1));
    }
}
