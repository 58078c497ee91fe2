//! q-numbers, lattice geometry, generalized powers and difference operators.
//!
//! Half-integer powers of `q` are integer powers of `t = q^(1/2)`. A point
//! of the lattice is passed by its coordinate: `q^s` on the q-linear
//! lattice and `s` on the linear one.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{MultiPoly, PolyValue, RatFunc, Rational};

/// `t = q^(1/2)`.
pub const T: &str = "t";
/// `u = q^(ν/2)` for the symbolic exponent.
pub const U: &str = "u";
/// `X = q^z`.
pub const X: &str = "X";
/// `S = q^s`.
pub const S: &str = "S";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    QLinear,
    Linear,
}

/// `x(s) = c1 q^s + c2` or `x(s) = c1 s + c2`.
#[derive(Clone, Debug)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub c1: RatFunc,
    pub c2: RatFunc,
}

impl LatticeSpec {
    pub fn new(kind: LatticeKind, c1: RatFunc, c2: RatFunc) -> Result<Self> {
        if c1.is_zero() {
            return Err(Error::Invalid("lattice scale c1 must be nonzero".into()));
        }
        Ok(LatticeSpec { kind, c1, c2 })
    }

    /// `x(s) = q^s`.
    pub fn q_canonical() -> Self {
        LatticeSpec { kind: LatticeKind::QLinear, c1: RatFunc::one(), c2: RatFunc::zero() }
    }

    /// `x(s) = s`.
    pub fn linear_canonical() -> Self {
        LatticeSpec { kind: LatticeKind::Linear, c1: RatFunc::one(), c2: RatFunc::zero() }
    }

    pub fn is_canonical_q(&self) -> bool {
        self.kind == LatticeKind::QLinear && self.c1.is_one() && self.c2.is_zero()
    }
}

/// An exponent `ν = sym·ν₀ + off` with `q^(ν/2) = u^sym t^off`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nu {
    pub sym: i32,
    pub off: i64,
}

impl Nu {
    pub fn int(n: i64) -> Self {
        Nu { sym: 0, off: n }
    }

    /// The symbolic exponent itself.
    pub fn symbolic() -> Self {
        Nu { sym: 1, off: 0 }
    }

    pub fn plus(self, k: i64) -> Self {
        Nu { sym: self.sym, off: self.off + k }
    }

    pub fn neg(self) -> Self {
        Nu { sym: -self.sym, off: -self.off }
    }

    pub fn as_int(self) -> Option<i64> {
        (self.sym == 0).then_some(self.off)
    }

    /// `q^(ν/2)`.
    pub fn half_power(self) -> RatFunc {
        RatFunc::monomial(Rational::one(), &[(U, self.sym), (T, self.off as i32)])
    }

    /// `q^ν`.
    pub fn power(self) -> RatFunc {
        RatFunc::monomial(Rational::one(), &[(U, 2 * self.sym), (T, 2 * self.off as i32)])
    }
}

impl From<i64> for Nu {
    fn from(n: i64) -> Self {
        Nu::int(n)
    }
}

pub fn t() -> RatFunc {
    RatFunc::var(T)
}

/// `q = t²`.
pub fn q() -> RatFunc {
    t_pow(2)
}

/// `t^k`.
pub fn t_pow(k: i64) -> RatFunc {
    RatFunc::monomial(Rational::one(), &[(T, k as i32)])
}

/// `t − 1/t`.
pub fn t_diff() -> RatFunc {
    RatFunc::from_poly(&MultiPoly::var(T) - &MultiPoly::monomial(Rational::one(), &[(T, -1)]))
}

/// Symmetric q-number `[ν]_q`.
pub fn q_number(nu: Nu) -> RatFunc {
    if let Some(n) = nu.as_int() {
        // telescoped: t^(n-1) + t^(n-3) + ... + t^(1-n)
        let m = n.unsigned_abs() as i64;
        let terms: Vec<(Vec<i32>, Rational)> =
            (0..m).map(|j| (alloc::vec![(m - 1 - 2 * j) as i32], Rational::one())).collect();
        let p = RatFunc::from_poly(MultiPoly::from_terms(&[T], terms));
        return if n < 0 { -p } else { p };
    }
    let w = nu.half_power();
    let wi = nu.neg().half_power();
    (&w - &wi).checked_div(&t_diff()).expect("t - 1/t is nonzero")
}

/// `α_q(ν) = (q^(ν/2) + q^(−ν/2))/2`.
pub fn alpha_q(nu: Nu) -> RatFunc {
    (&nu.half_power() + &nu.neg().half_power()).scale(&Rational::new(1, 2))
}

/// `x_ν(s) = x(s + ν/2)` at the lattice coordinate `s`.
pub fn x_shifted(l: &LatticeSpec, nu: i64, s: &RatFunc) -> RatFunc {
    match l.kind {
        LatticeKind::QLinear => &(&(&l.c1 * &t_pow(nu)) * s) + &l.c2,
        LatticeKind::Linear => &(&l.c1 * &(s + &RatFunc::from_rational(Rational::new(nu, 2)))) + &l.c2,
    }
}

/// Shifts a lattice coordinate by `j` steps: `s ↦ s + j`.
pub fn shift_coord(l: &LatticeSpec, s: &RatFunc, j: i64) -> RatFunc {
    match l.kind {
        LatticeKind::QLinear => s * &t_pow(2 * j),
        LatticeKind::Linear => s + &RatFunc::from_int(j),
    }
}

/// Generalized power `[x_k(s) − x_k(z)]^(n)` for a nonnegative integer order.
pub fn gen_power_int(l: &LatticeSpec, k: impl Into<Nu>, s: &RatFunc, z: &RatFunc, n: u32) -> Result<RatFunc> {
    let n64 = n as i64;
    let k: Nu = k.into();
    match l.kind {
        LatticeKind::QLinear => {
            let sign = if n % 2 == 0 { RatFunc::one() } else { -RatFunc::one() };
            let pre = &(&(&sign * &l.c1.pow(n as i32)?) * &t_pow(-n64 * (n64 - 1))) * &k.half_power().pow(n as i32)?;
            let zn = z.pow(n as i32)?;
            let ratio = s.checked_div(z)?;
            Ok(&(&pre * &zn) * &q_pochhammer(&ratio, n))
        }
        LatticeKind::Linear => {
            let mut acc = l.c1.pow(n as i32)?;
            let d = s - z;
            for j in 0..n64 {
                acc = &acc * &(&d + &RatFunc::from_int(j));
            }
            Ok(acc)
        }
    }
}

/// `(a; base)_n`.
pub fn q_pochhammer_base(a: &RatFunc, base: &RatFunc, n: u32) -> RatFunc {
    let mut acc = RatFunc::one();
    let mut cur = a.clone();
    let one = RatFunc::one();
    for _ in 0..n {
        acc = &acc * &(&one - &cur);
        cur = &cur * base;
    }
    acc
}

/// `(a; q)_n` with `q = t²`.
pub fn q_pochhammer(a: &RatFunc, n: u32) -> RatFunc {
    q_pochhammer_base(a, &q(), n)
}

/// `[n]_q!`.
pub fn q_factorial(n: u32) -> RatFunc {
    (1..=n as i64).fold(RatFunc::one(), |acc, m| &acc * &q_number(Nu::int(m)))
}

fn require_canonical(l: &LatticeSpec) -> Result<()> {
    if l.is_canonical_q() {
        Ok(())
    } else {
        Err(Error::UnsupportedLattice("difference operators need x(s) = q^s".into()))
    }
}

/// `(f(qx) − f(x)) / ((q − 1) x)` on polynomials in `x = q^s`.
pub fn delta_q(p: &PolyValue) -> PolyValue {
    // x^k ↦ [k]-like factor (q^k − 1)/(q − 1) · x^(k−1)
    let qq = q();
    let mut out = Vec::with_capacity(p.coeffs().len());
    let mut qk = qq.clone();
    let mut sum = RatFunc::one();
    for c in p.coeffs().iter().skip(1) {
        out.push(c * &sum);
        sum = &sum + &qk;
        qk = &qk * &qq;
    }
    PolyValue::new(out)
}

/// `(f(x) − f(x/q)) / ((1 − 1/q) x)`.
pub fn nabla_q(p: &PolyValue) -> PolyValue {
    let qi = t_pow(-2);
    let mut out = Vec::with_capacity(p.coeffs().len());
    let mut qk = qi.clone();
    let mut sum = RatFunc::one();
    for c in p.coeffs().iter().skip(1) {
        out.push(c * &sum);
        sum = &sum + &qk;
        qk = &qk * &qi;
    }
    PolyValue::new(out)
}

/// `Δ^(k) = (Δ/Δx_{k−1}) ··· (Δ/Δx)`; step `j` divides by `Δx_j(s) = t^j (q − 1) x`.
pub fn k_delta(p: &PolyValue, k: u32, l: &LatticeSpec) -> Result<PolyValue> {
    require_canonical(l)?;
    let mut cur = p.clone();
    for j in 0..k {
        cur = delta_q(&cur).scale(&t_pow(-(j as i64)));
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rq, rsym};
    use alloc::collections::BTreeMap;

    fn at_t(r: &RatFunc, t: Rational) -> Rational {
        let mut m = BTreeMap::new();
        m.insert(T.into(), t);
        r.eval(&m).unwrap()
    }

    #[test]
    fn q_number_examples() {
        assert!(q_number(Nu::int(0)).is_zero());
        assert_eq!(q_number(Nu::int(2)), &t() + &t_pow(-1));
        assert_eq!(q_number(Nu::int(-3)), -q_number(Nu::int(3)));
        let sym = q_number(Nu::symbolic());
        let mut b = BTreeMap::new();
        b.insert(U.into(), t_pow(4));
        assert_eq!(sym.substitute(&b).unwrap(), q_number(Nu::int(4)));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_q(Nu::int(0)), RatFunc::one());
        assert_eq!(alpha_q(Nu::int(1)), (&t() + &t_pow(-1)).scale(&Rational::new(1, 2)));
        assert_eq!(alpha_q(Nu::int(-3)), alpha_q(Nu::int(3)));
    }

    #[test]
    fn x_shifted_examples() {
        let l = LatticeSpec::q_canonical();
        let s = rsym(S);
        assert_eq!(x_shifted(&l, 0, &s), s);
        assert_eq!(x_shifted(&l, 2, &s), &t_pow(2) * &s);
        assert_eq!(at_t(&x_shifted(&l, 1, &RatFunc::one()), Rational::new(2, 3)), Rational::new(2, 3));
        let lin = LatticeSpec::linear_canonical();
        assert_eq!(x_shifted(&lin, 1, &rq(2, 1)), rq(5, 2));
    }

    #[test]
    fn gen_power_examples() {
        let l = LatticeSpec::q_canonical();
        let (s, z) = (rsym(S), rsym(X));
        assert_eq!(gen_power_int(&l, 3, &s, &z, 0).unwrap(), RatFunc::one());
        let g1 = gen_power_int(&l, 3, &s, &z, 1).unwrap();
        assert_eq!(g1, &x_shifted(&l, 3, &s) - &x_shifted(&l, 3, &z));
        // q = 1/4, s = 3, z = 1, k = 0
        let t = Rational::new(1, 2);
        let qv = Rational::new(1, 4);
        let g = gen_power_int(&l, 0, &RatFunc::from_rational(qv.pow(3).unwrap()), &RatFunc::from_rational(qv.clone()), 2)
            .unwrap();
        let x = |k: i32| qv.pow(k).unwrap();
        let expect = &(&x(3) - &x(1)) * &(&x(3) - &x(0));
        assert_eq!(at_t(&g, t), expect);
    }

    #[test]
    fn linear_gen_power() {
        let l = LatticeSpec::linear_canonical();
        let g = gen_power_int(&l, 0, &rq(5, 1), &rq(2, 1), 3).unwrap();
        assert_eq!(g, rq(60, 1));
    }

    #[test]
    fn pochhammer_and_factorial() {
        assert_eq!(q_pochhammer(&rsym("a"), 0), RatFunc::one());
        let qq = q();
        let expect = &(&RatFunc::one() - &qq) * &(&RatFunc::one() - &qq.pow(2).unwrap());
        assert_eq!(q_pochhammer(&qq, 2), expect);
        assert!(q_pochhammer(&RatFunc::one(), 3).is_zero());
        assert_eq!(q_factorial(0), RatFunc::one());
        assert_eq!(q_factorial(1), RatFunc::one());
        assert_eq!(q_factorial(3), &q_number(Nu::int(2)) * &q_number(Nu::int(3)));
    }

    #[test]
    fn k_delta_examples() {
        let l = LatticeSpec::q_canonical();
        let c = PolyValue::constant(rq(3, 1));
        assert!(k_delta(&c, 1, &l).unwrap().is_zero());
        assert_eq!(k_delta(&PolyValue::x(), 1, &l).unwrap(), PolyValue::one());
        let x2 = &PolyValue::x() * &PolyValue::x();
        let d = k_delta(&x2, 1, &l).unwrap();
        assert_eq!(d, PolyValue::x().scale(&(&q() + &RatFunc::one())));
        assert!(k_delta(&x2, 1, &LatticeSpec::linear_canonical()).is_err());
    }
}
