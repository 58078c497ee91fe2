//! Rational functions with a factored denominator.
//!
//! The denominator is a multiset of normalized factors: each factor is a
//! primitive, monomial-free polynomial with positive leading coefficient.
//! Monomials and rational constants always live in the (Laurent) numerator.
//! Sums use the least common multiple of the factor multisets, so
//! denominators built from products of simple binomials stay small without
//! a multivariate gcd.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Exact quotient of multivariate Laurent polynomials.
#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: Vec<(MultiPoly, u32)>,
}

type Factors = BTreeMap<MultiPoly, u32>;

/// `p = scale * monomial * rest` with `rest` normalized (or `None` if `p` is a monomial).
fn split_factor(p: &MultiPoly) -> (MultiPoly, Option<MultiPoly>) {
    let (mono, rest) = p.split_monomial();
    let (c, prim) = rest.primitive();
    let pw: Vec<(&str, i32)> = mono.iter().map(|(s, e)| (s.as_str(), *e)).collect();
    let unit = MultiPoly::monomial(c, &pw);
    if prim.is_constant() {
        (&unit * &prim, None)
    } else {
        (unit, Some(prim))
    }
}

const PRIME: u64 = (1 << 61) - 1;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn invm(a: u64) -> u64 {
    powm(a, PRIME - 2)
}

fn rational_mod(c: &Rational) -> Option<u64> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let p = BigInt::from(PRIME);
    let n = c.numer().mod_floor(&p).to_u64()?;
    let d = c.denom().mod_floor(&p).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(mulm(n, invm(d)))
}

/// Fixed nonzero residue for a symbol other than the kept one.
fn point(v: &str) -> u64 {
    let h = v.bytes().fold(0x9e37_79b9_7f4a_7c15u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    h % (PRIME - 2) + 2
}

/// Image mod `PRIME` of `p` with every symbol but `v` evaluated, as dense
/// ascending coefficients in `v` with the lowest occurring power stripped.
/// `None` when a coefficient has `PRIME` in its denominator.
fn mod_image(p: &MultiPoly, v: &str) -> Option<Vec<u64>> {
    let vars = p.vars();
    let vals: Vec<Option<(u64, u64)>> =
        vars.iter().map(|w| if w == v { None } else { let x = point(w); Some((x, invm(x))) }).collect();
    let jv = vars.iter().position(|w| w == v);
    let (hi, lo) = p.degree_range(v);
    let mut out = alloc::vec![0u64; (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        let mut t = rational_mod(c)?;
        for (j, val) in vals.iter().enumerate() {
            if let Some((x, xi)) = val {
                if e[j] > 0 {
                    t = mulm(t, powm(*x, e[j] as u64));
                } else if e[j] < 0 {
                    t = mulm(t, powm(*xi, (-e[j]) as u64));
                }
            }
        }
        let d = jv.map_or(0, |j| e[j]) - lo;
        let slot = &mut out[d as usize];
        *slot = (*slot + t) % PRIME;
    }
    let first = out.iter().position(|c| *c != 0).unwrap_or(out.len());
    out.drain(..first);
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

fn uni_divides_mod(d: &[u64], n: &[u64]) -> bool {
    if n.is_empty() {
        return true;
    }
    if d.len() > n.len() {
        return false;
    }
    let mut r = n.to_vec();
    let li = invm(d[d.len() - 1]);
    for i in (0..=(n.len() - d.len())).rev() {
        let c = mulm(r[i + d.len() - 1], li);
        if c == 0 {
            continue;
        }
        for j in 0..d.len() {
            r[i + j] = (r[i + j] + PRIME - mulm(d[j], c)) % PRIME;
        }
    }
    r.iter().all(|x| *x == 0)
}

/// Cheap necessary condition for `f | n`: divisibility of univariate images
/// modulo a prime.
fn may_divide(f: &MultiPoly, n: &MultiPoly) -> bool {
    if n.is_zero() {
        return true;
    }
    if n.is_monomial() {
        return false;
    }
    for v in f.vars() {
        if !n.has_var(v) {
            return false;
        }
        let (fh, fl) = f.degree_range(v);
        let (nh, nl) = n.degree_range(v);
        if fh - fl > nh - nl {
            return false;
        }
    }
    let v = f
        .vars()
        .iter()
        .max_by_key(|v| {
            let (h, l) = f.degree_range(v);
            h - l
        })
        .expect("nonconstant factor")
        .clone();
    let (fh, fl) = f.degree_range(&v);
    let (Some(fi), Some(ni)) = (mod_image(f, &v), mod_image(n, &v)) else { return true };
    // a vanishing leading or trailing image says nothing
    if fi.len() as i32 != fh - fl + 1 {
        return true;
    }
    uni_divides_mod(&fi, &ni)
}

fn try_div(n: &MultiPoly, f: &MultiPoly) -> Option<MultiPoly> {
    if !may_divide(f, n) {
        return None;
    }
    n.div_exact(f)
}

/// Replaces factors divisible by other factors until no factor of the
/// basis divides another. Every multiset in `sets` is rewritten in place.
fn refine(sets: &mut [&mut Factors]) {
    loop {
        let mut basis: Vec<MultiPoly> = Vec::new();
        for s in sets.iter() {
            for k in s.keys() {
                if !basis.contains(k) {
                    basis.push(k.clone());
                }
            }
        }
        let mut split: Option<(MultiPoly, MultiPoly, Option<MultiPoly>)> = None;
        'outer: for f in &basis {
            for g in &basis {
                if f == g || g.nterms() > f.nterms() && g.total_degree() >= f.total_degree() {
                    continue;
                }
                if let Some(h) = try_div(f, g) {
                    let (_, hn) = split_factor(&h);
                    split = Some((f.clone(), g.clone(), hn));
                    break 'outer;
                }
            }
        }
        match split {
            None => return,
            Some((f, g, h)) => {
                for s in sets.iter_mut() {
                    if let Some(m) = s.remove(&f) {
                        *s.entry(g.clone()).or_insert(0) += m;
                        if let Some(h) = &h {
                            *s.entry(h.clone()).or_insert(0) += m;
                        }
                    }
                }
            }
        }
    }
}

fn factor_product(f: &Factors) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for (p, m) in f {
        acc = &acc * &p.pow(*m);
    }
    acc
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: MultiPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        RatFunc { num: MultiPoly::one(), den: Vec::new() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(r))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: Vec::new() }
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    /// `c * prod v^e`.
    pub fn monomial(c: Rational, powers: &[(&str, i32)]) -> Self {
        Self::from_poly(MultiPoly::monomial(c, powers))
    }

    /// `num / den`; fails on a zero denominator.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut f = Factors::new();
        let (unit, rest) = split_factor(&den);
        let num = num.div_exact(&unit).expect("monomial division");
        if let Some(r) = rest {
            f.insert(r, 1);
        }
        Ok(Self::from_factors(num, f))
    }

    fn from_factors(num: MultiPoly, den: Factors) -> Self {
        let mut r = RatFunc { num, den: den.into_iter().filter(|(_, m)| *m > 0).collect() };
        r.reduce();
        r
    }

    fn factors_map(&self) -> Factors {
        self.den.iter().cloned().collect()
    }

    /// Cancels denominator factors that divide the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        if self.den.is_empty() || self.num.is_monomial() {
            return;
        }
        let mut den = core::mem::take(&mut self.den);
        for (f, m) in den.iter_mut() {
            while *m > 0 {
                match try_div(&self.num, f) {
                    Some(q) => {
                        self.num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|(_, m)| *m > 0);
        self.den = den;
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    /// Denominator factors with multiplicities.
    pub fn den_factors(&self) -> &[(MultiPoly, u32)] {
        &self.den
    }

    /// Expanded denominator (a product of the factors).
    pub fn denom(&self) -> MultiPoly {
        factor_product(&self.factors_map())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// All symbols occurring in numerator or denominator.
    pub fn vars(&self) -> Vec<String> {
        let mut v: Vec<String> = self.num.vars().to_vec();
        for (f, _) in &self.den {
            for x in f.vars() {
                if !v.contains(x) {
                    v.push(x.clone());
                }
            }
        }
        v.sort();
        v
    }

    pub fn has_var(&self, v: &str) -> bool {
        self.num.has_var(v) || self.den.iter().any(|(f, _)| f.has_var(v))
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = factor_product(&self.factors_map());
        RatFunc::new(num, self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let num = self.num.pow(e as u32);
        let den = self.den.iter().map(|(f, m)| (f.clone(), m * e as u32)).collect();
        Ok(RatFunc::from_factors(num, den))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: if c.is_zero() { Vec::new() } else { self.den.clone() } }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RatFunc {
        let mut r = RatFunc { num: &self.num * p, den: self.den.clone() };
        r.reduce();
        r
    }

    fn add_impl(&self, other: &RatFunc, sign: bool) -> RatFunc {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign { other.clone() } else { -other };
        }
        let rhs_num = if sign { other.num.clone() } else { -&other.num };
        if self.den == other.den {
            let mut r = RatFunc { num: &self.num + &rhs_num, den: self.den.clone() };
            r.reduce();
            return r;
        }
        let mut fa = self.factors_map();
        let mut fb = other.factors_map();
        let mut na = self.num.clone();
        let mut nb = rhs_num;
        // splitting a factor into smaller ones leaves each product unchanged
        refine(&mut [&mut fa, &mut fb]);
        let mut lcm = fa.clone();
        for (k, m) in &fb {
            let e = lcm.entry(k.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        for (k, m) in &lcm {
            let ma = fa.get(k).copied().unwrap_or(0);
            let mb = fb.get(k).copied().unwrap_or(0);
            if *m > ma {
                na = &na * &k.pow(m - ma);
            }
            if *m > mb {
                nb = &nb * &k.pow(m - mb);
            }
        }
        RatFunc::from_factors(&na + &nb, lcm)
    }

    fn mul_impl(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let num = &self.num * &other.num;
        if other.den.is_empty() && self.den.is_empty() {
            return RatFunc { num, den: Vec::new() };
        }
        let mut f = self.factors_map();
        for (k, m) in &other.den {
            *f.entry(k.clone()).or_insert(0) += m;
        }
        RatFunc::from_factors(num, f)
    }

    /// Numeric value with every symbol bound.
    pub fn eval(&self, vals: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut d = Rational::one();
        for (f, m) in &self.den {
            let v = f.eval(vals)?;
            if v.is_zero() {
                return Err(Error::DivisionByZero);
            }
            d *= &v.pow(*m as i32)?;
        }
        self.num.eval(vals)?.checked_div(&d)
    }

    /// Binds some symbols to rationals.
    pub fn eval_partial(&self, vals: &BTreeMap<String, Rational>) -> Result<RatFunc> {
        let num = self.num.eval_partial(vals)?;
        let mut out = RatFunc::from_poly(num);
        for (f, m) in &self.den {
            let fe = f.eval_partial(vals)?;
            if fe.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let d = RatFunc::new(MultiPoly::one(), fe)?;
            out = &out * &d.pow(*m as i32)?;
        }
        Ok(out)
    }

    /// Substitutes rational functions for symbols.
    pub fn substitute(&self, bindings: &BTreeMap<String, RatFunc>) -> Result<RatFunc> {
        let num = substitute(&self.num, bindings)?;
        let mut out = num;
        for (f, m) in &self.den {
            let fe = substitute(f, bindings)?;
            if fe.is_zero() {
                return Err(Error::DivisionByZero);
            }
            out = out.checked_div(&fe.pow(*m as i32)?)?;
        }
        Ok(out)
    }

    /// Replaces `var` by `c * prod w^e`.
    pub fn subst_monomial(&self, var: &str, c: &Rational, mono: &[(&str, i32)]) -> Result<RatFunc> {
        if !self.has_var(var) {
            return Ok(self.clone());
        }
        let num = self.num.subst_monomial(var, c, mono)?;
        let mut out = RatFunc::from_poly(num);
        for (f, m) in &self.den {
            let fe = f.subst_monomial(var, c, mono)?;
            if fe.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let d = RatFunc::new(MultiPoly::one(), fe)?;
            out = &out * &d.pow(*m as i32)?;
        }
        Ok(out)
    }

    /// Multiplies by the Laurent monomial `prod v^e`.
    pub fn shift(&self, powers: &[(&str, i32)]) -> RatFunc {
        RatFunc { num: self.num.shift(powers), den: self.den.clone() }
    }

    /// Number of monomials in the numerator.
    pub fn nterms(&self) -> usize {
        self.num.nterms()
    }
}

/// Substitutes rational functions into a polynomial.
pub fn substitute(p: &MultiPoly, bindings: &BTreeMap<String, RatFunc>) -> Result<RatFunc> {
    let relevant: Vec<&String> = p.vars().iter().filter(|v| bindings.contains_key(*v)).collect();
    if relevant.is_empty() {
        return Ok(RatFunc::from_poly(p.clone()));
    }
    if relevant.iter().all(|v| bindings[*v].as_constant().is_some()) {
        let vals: BTreeMap<String, Rational> =
            relevant.iter().map(|v| ((*v).clone(), bindings[*v].as_constant().unwrap())).collect();
        return Ok(RatFunc::from_poly(p.eval_partial(&vals)?));
    }
    let vars: Vec<String> = p.vars().to_vec();
    let mut cache: Vec<BTreeMap<i32, RatFunc>> = alloc::vec![BTreeMap::new(); vars.len()];
    let mut acc = RatFunc::zero();
    for (e, c) in p.terms() {
        let mut free: Vec<(&str, i32)> = Vec::new();
        let mut term = RatFunc::from_rational(c.clone());
        for (j, v) in vars.iter().enumerate() {
            if e[j] == 0 {
                continue;
            }
            match bindings.get(v) {
                None => free.push((v.as_str(), e[j])),
                Some(b) => {
                    if !cache[j].contains_key(&e[j]) {
                        let pw = b.pow(e[j])?;
                        cache[j].insert(e[j], pw);
                    }
                    term = &term * &cache[j][&e[j]];
                }
            }
        }
        if !free.is_empty() {
            term = term.shift(&free);
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Equality by cross-multiplication semantics: the difference has zero numerator.
pub fn ratfunc_eq(a: &RatFunc, b: &RatFunc) -> bool {
    (a - b).is_zero()
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        ratfunc_eq(self, other)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(r: Rational) -> Self {
        RatFunc::from_rational(r)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

macro_rules! ops {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $body(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                $body(&self, &rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $body(&self, rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                $body(self, &rhs)
            }
        }
    };
}

ops!(Add, add, |a: &RatFunc, b: &RatFunc| a.add_impl(b, true));
ops!(Sub, sub, |a: &RatFunc, b: &RatFunc| a.add_impl(b, false));
ops!(Mul, mul, |a: &RatFunc, b: &RatFunc| a.mul_impl(b));
ops!(Div, div, |a: &RatFunc, b: &RatFunc| a.checked_div(b).expect("division by zero"));

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.nterms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, " / ")?;
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(p, m)| if *m == 1 { alloc::format!("({p})") } else { alloc::format!("({p})^{m}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for a symbol as a rational function.
pub fn rsym(name: &str) -> RatFunc {
    RatFunc::var(name)
}

/// Shorthand for a rational constant `n/d`.
pub fn rq(n: i64, d: i64) -> RatFunc {
    RatFunc::from_rational(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::{int, sym};

    #[test]
    fn cancel_common_factor() {
        let x = sym("X");
        let a = RatFunc::new(&x.pow(2) - &int(1), &x - &int(1)).unwrap();
        assert!(a.is_polynomial());
        assert_eq!(a, RatFunc::from_poly(&x + &int(1)));
    }

    #[test]
    fn monomial_denominator_is_laurent() {
        let t = sym("t");
        let a = RatFunc::new(t.pow(2), t.clone()).unwrap();
        assert!(a.is_polynomial());
        assert_eq!(a, rsym("t"));
        let b = RatFunc::new(int(1), sym("X")).unwrap();
        assert!(b.is_polynomial());
        assert!(!ratfunc_eq(&b, &rsym("X")));
    }

    #[test]
    fn sums_share_denominators() {
        let t = rsym("t");
        let one = RatFunc::one();
        let d1 = (&one - &t.pow(2).unwrap()).recip().unwrap();
        let d2 = (&one - &t).recip().unwrap();
        let s = &d1 - &d2;
        // 1/(1-t^2) - 1/(1-t) = -t/(1-t^2)
        let expect = (&(-&t) * &d1).clone();
        assert_eq!(s, expect);
        assert!(s.den_factors().iter().all(|(f, _)| f.nterms() == 2));
    }

    #[test]
    fn substitute_value() {
        let t = sym("t");
        let p = &t - &t.shift(&[("t", -2)]);
        let mut b = BTreeMap::new();
        b.insert("t".into(), rq(2, 3));
        let v = substitute(&p, &b).unwrap();
        assert_eq!(v.as_constant().unwrap(), Rational::new(-5, 6));
        let mut b = BTreeMap::new();
        b.insert("X".into(), rq(1, 2));
        let v = substitute(&(&sym("X") + &int(1)), &b).unwrap();
        assert_eq!(v.as_constant().unwrap(), Rational::new(3, 2));
    }

    #[test]
    fn substitute_division_by_zero() {
        let r = RatFunc::new(int(1), &sym("t") - &int(2)).unwrap();
        let mut b = BTreeMap::new();
        b.insert("t".into(), RatFunc::from_int(2));
        assert_eq!(r.substitute(&b).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn examples_eq() {
        let x = sym("X");
        let a = RatFunc::new(&x.pow(2) - &int(1), &x - &int(1)).unwrap();
        assert!(ratfunc_eq(&a, &RatFunc::from_poly(&x + &int(1))));
        let t = sym("t");
        assert!(ratfunc_eq(&RatFunc::from_poly(t.clone()), &RatFunc::new(t.pow(2), t.clone()).unwrap()));
        let inv = RatFunc::new(int(1), x.clone()).unwrap();
        assert!(!ratfunc_eq(&inv, &RatFunc::from_poly(x)));
    }

    #[test]
    fn refinement_splits_factors() {
        let t = rsym("t");
        let one = RatFunc::one();
        let a = (&one - &t.pow(4).unwrap()).recip().unwrap();
        let b = (&one - &t.pow(2).unwrap()).recip().unwrap();
        let s = &a + &b;
        let total: u32 = s.den_factors().iter().map(|(_, m)| m).sum();
        assert_eq!(total, 2);
    }
}
