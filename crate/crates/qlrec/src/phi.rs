//! Finite sums `Φ_{ν,μ}(z)` over weight tables on `x(s) = q^s`.
//!
//! Everything here is numeric: `t = q^(1/2)` is a rational and the free
//! point `z` enters through `X = q^z`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::hyper::HyperSpec;
use crate::lattice::{Nu, T};

/// Values at consecutive integer `s` starting at `start`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    pub start: i64,
    pub values: Vec<Rational>,
}

impl GridFunction {
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64
    }

    pub fn get(&self, s: i64) -> Option<&Rational> {
        if s < self.start {
            return None;
        }
        self.values.get((s - self.start) as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightSource {
    Pearson,
    User,
}

/// `ρ_ν` on `s = a..b−1` at a fixed rational `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightTable {
    pub nu: i64,
    pub grid: GridFunction,
    pub source: WeightSource,
    pub t: Rational,
    /// `σ(b)ρ_ν(b) = ρ_ν(b−1)φ_ν(b−1)` for Pearson tables.
    pub tail: Option<Rational>,
}

impl WeightTable {
    /// Arbitrary weights; no Pearson structure assumed.
    pub fn from_values(nu: i64, start: i64, values: Vec<Rational>, t: Rational) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("empty weight table".into()));
        }
        check_t(&t)?;
        Ok(WeightTable { nu, grid: GridFunction { start, values }, source: WeightSource::User, t, tail: None })
    }

    pub fn q(&self) -> Rational {
        &self.t * &self.t
    }

    /// `x_k(s) = t^k q^s`.
    pub fn x(&self, k: i64, s: i64) -> Rational {
        self.t.pow((k + 2 * s) as i32).expect("nonzero t")
    }
}

fn check_t(t: &Rational) -> Result<()> {
    if t.is_zero() || t.abs().is_one() {
        return Err(Error::Invalid("t must differ from 0 and ±1".into()));
    }
    Ok(())
}

/// Numeric bindings with `t` added.
fn with_t(vals: &BTreeMap<String, Rational>, t: &Rational) -> BTreeMap<String, Rational> {
    let mut m = vals.clone();
    m.insert(T.into(), t.clone());
    m
}

/// `[x_k(s) − x_k(z)]^(n)` at `S = q^s`, `X = q^z`; negative orders are
/// reciprocals `1/[x_k(s) − x_k(z − n)]^(−n)`.
pub fn gen_power_value(t: &Rational, k: i64, s_val: &Rational, x_val: &Rational, n: i64) -> Result<Rational> {
    let q = t * t;
    let tk = t.pow(k as i32)?;
    let mut acc = Rational::one();
    if n >= 0 {
        for j in 0..n {
            let xz = &x_val.clone() * &q.pow(-(j as i32))?;
            acc = &acc * &(&tk * &(s_val - &xz));
        }
        Ok(acc)
    } else {
        for j in 1..=(-n) {
            let xz = &x_val.clone() * &q.pow(j as i32)?;
            acc = &acc * &(&tk * &(s_val - &xz));
        }
        acc.recip()
    }
}

/// `ρ_ν(a) = seed`, then `ρ_ν(s+1) = ρ_ν(s) φ_ν(s)/σ(s+1)`.
pub fn weight_from_pearson(
    h: &HyperSpec,
    nu: i64,
    a: i64,
    b: i64,
    seed: Rational,
    t: &Rational,
    params: &BTreeMap<String, Rational>,
) -> Result<WeightTable> {
    if b <= a {
        return Err(Error::Invalid("weight grid needs b > a".into()));
    }
    check_t(t)?;
    let vals = with_t(params, t);
    let ev = |r: &crate::field::RatFunc| r.eval(&vals);
    let phi = h.phi_nu_coeffs(Nu::int(nu))?;
    let (f, g, c) = (ev(&phi.f)?, ev(&phi.g)?, ev(&phi.h)?);
    let (sa, sb, sc) = (ev(&h.a)?, ev(&h.b)?, ev(&h.c)?);
    let q = t * t;
    let quad = |x2: &Rational, x1: &Rational, x0: &Rational, s: i64| -> Rational {
        let y = q.pow(s as i32).expect("nonzero q");
        &(&(x2 * &(&y * &y)) + &(x1 * &y)) + x0
    };
    let mut values = alloc::vec![seed];
    for s in a..b - 1 {
        let den = quad(&sa, &sb, &sc, s + 1);
        if den.is_zero() {
            return Err(Error::PoleOnGrid(s + 1));
        }
        let next = &(values.last().unwrap() * &quad(&f, &g, &c, s)) / &den;
        values.push(next);
    }
    let tail = values.last().unwrap() * &quad(&f, &g, &c, b - 1);
    Ok(WeightTable {
        nu,
        grid: GridFunction { start: a, values },
        source: WeightSource::Pearson,
        t: t.clone(),
        tail: Some(tail),
    })
}

/// `ρ_{ν0+k}(s) = ρ_{ν0}(s) φ(s+ν0) ··· φ(s+ν0+k−1)` with `φ = φ_0`.
pub fn shift_weights(h: &HyperSpec, w: &WeightTable, k: u32, params: &BTreeMap<String, Rational>) -> Result<WeightTable> {
    let vals = with_t(params, &w.t);
    let (f, g) = h.phi0_fg();
    let (f, g, c) = (f.eval(&vals)?, g.eval(&vals)?, h.c.eval(&vals)?);
    let phi0 = |s: i64| -> Rational {
        let y = w.x(0, s);
        &(&(&f * &(&y * &y)) + &(&g * &y)) + &c
    };
    let mut values = Vec::with_capacity(w.grid.values.len());
    for (i, r) in w.grid.values.iter().enumerate() {
        let s = w.grid.start + i as i64;
        let mut v = r.clone();
        for m in 0..k as i64 {
            v = &v * &phi0(s + w.nu + m);
        }
        values.push(v);
    }
    Ok(WeightTable {
        nu: w.nu + k as i64,
        grid: GridFunction { start: w.grid.start, values },
        source: WeightSource::User,
        t: w.t.clone(),
        tail: None,
    })
}

/// `Φ_{ν,μ}(z) = Σ_s ρ_ν(s) ∇x_{ν+1}(s) / [x_ν(s) − x_ν(z)]^(μ+1)`.
pub fn phi_sum(w: &WeightTable, mu: i64, x_z: &Rational) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (i, r) in w.grid.values.iter().enumerate() {
        let s = w.grid.start + i as i64;
        let nab = &w.x(w.nu + 1, s) - &w.x(w.nu + 1, s - 1);
        let gp = gen_power_value(&w.t, w.nu, &w.x(0, s), x_z, mu + 1).map_err(|_| Error::DenominatorZero(s))?;
        if gp.is_zero() {
            return Err(Error::DenominatorZero(s));
        }
        acc += &(&(r * &nab) / &gp);
    }
    Ok(acc)
}

/// `Φ_{ν,μ}(z) − Φ_{ν,μ}(z−1) = [μ+1]_q ∇x_{ν−μ}(z) Φ_{ν,μ+1}(z)`.
pub fn check_nabla_identity(w: &WeightTable, mu: i64, x_z: &Rational) -> Result<bool> {
    let q = w.q();
    let lhs = &phi_sum(w, mu, x_z)? - &phi_sum(w, mu, &(x_z / &q))?;
    let tk = w.t.pow((w.nu - mu) as i32)?;
    let nab = &(&tk * x_z) * &(&Rational::one() - &q.recip()?);
    let rhs = &(&q_number_value(&w.t, mu + 1)? * &nab) * &phi_sum(w, mu + 1, x_z)?;
    Ok(lhs == rhs)
}

/// `Φ_{ν,μ}(z+1) − Φ_{ν,μ}(z) = [μ+1]_q Δx_{ν−μ}(z) Φ_{ν,μ+1}(z+1)`.
pub fn check_delta_identity(w: &WeightTable, mu: i64, x_z: &Rational) -> Result<bool> {
    let q = w.q();
    let xz1 = x_z * &q;
    let lhs = &phi_sum(w, mu, &xz1)? - &phi_sum(w, mu, x_z)?;
    let tk = w.t.pow((w.nu - mu) as i32)?;
    let del = &(&tk * x_z) * &(&q - &Rational::one());
    let rhs = &(&q_number_value(&w.t, mu + 1)? * &del) * &phi_sum(w, mu + 1, &xz1)?;
    Ok(lhs == rhs)
}

/// `[n]_q` at a numeric `t`.
pub fn q_number_value(t: &Rational, n: i64) -> Result<Rational> {
    (&t.pow(n as i32)? - &t.pow(-n as i32)?).checked_div(&(t - &t.recip()?))
}

/// Endpoint condition: `x^k(s) σ(s) ρ_{ν0}(s) / [x_{ν0−1}(s) − x_{ν0−1}(z)]^(μ0)`
/// vanishes at `s = a` and `s = b` for `k = 0..=k_max`.
pub fn check_boundary(
    h: &HyperSpec,
    w: &WeightTable,
    mu0: i64,
    x_z: &Rational,
    k_max: u32,
    params: &BTreeMap<String, Rational>,
) -> Result<bool> {
    let tail = match (w.source, &w.tail) {
        (WeightSource::Pearson, Some(t)) => t.clone(),
        _ => return Err(Error::Invalid("boundary check needs a Pearson-generated table".into())),
    };
    let vals = with_t(params, &w.t);
    let sig = |s: i64| -> Result<Rational> {
        let y = w.x(0, s);
        Ok(&(&(&h.a.eval(&vals)? * &(&y * &y)) + &(&h.b.eval(&vals)? * &y)) + &h.c.eval(&vals)?)
    };
    let a = w.grid.start;
    let b = w.grid.end();
    let ends = [(a, &sig(a)? * &w.grid.values[0]), (b, tail)];
    for (s, num) in ends {
        let gp = gen_power_value(&w.t, w.nu - 1, &w.x(0, s), x_z, mu0).map_err(|_| Error::DenominatorZero(s))?;
        if gp.is_zero() {
            return Err(Error::DenominatorZero(s));
        }
        for k in 0..=k_max {
            let v = &(&w.x(0, s).pow(k as i32)? * &num) / &gp;
            if !v.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RatFunc;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn table(vals: &[i64]) -> WeightTable {
        WeightTable::from_values(2, -1, vals.iter().map(|&v| r(v, 3)).collect(), r(3, 5)).unwrap()
    }

    #[test]
    fn single_entry_pearson() {
        let h = HyperSpec::symbolic();
        let mut p = BTreeMap::new();
        for (k, v) in [("a", 2), ("b", 3), ("c", 5), ("d", 7), ("e", 11)] {
            p.insert(String::from(k), r(v, 1));
        }
        let w = weight_from_pearson(&h, 0, 1, 2, r(4, 1), &r(1, 2), &p).unwrap();
        assert_eq!(w.grid.values, alloc::vec![r(4, 1)]);
        let w2 = weight_from_pearson(&h, 0, 1, 3, r(1, 1), &r(1, 2), &p).unwrap();
        let vals = with_t(&p, &r(1, 2));
        let ratio = h.pearson_ratio(Nu::int(0)).unwrap();
        let mut v2 = vals.clone();
        v2.insert("S".into(), r(1, 4));
        assert_eq!(w2.grid.values[1], ratio.eval(&v2).unwrap());
    }

    #[test]
    fn pole_on_grid() {
        // σ(x) = (x − 1/16)(x − 3), t = 1/2 so x(2) = 1/16
        let q = r(1, 4);
        let root = q.pow(2).unwrap();
        let h = HyperSpec::from_rationals([r(1, 1), -(&root + &r(3, 1)), &root * &r(3, 1), r(1, 1), r(1, 1)]).unwrap();
        let e = weight_from_pearson(&h, 0, 0, 4, r(1, 1), &r(1, 2), &BTreeMap::new()).unwrap_err();
        assert_eq!(e, Error::PoleOnGrid(2));
    }

    #[test]
    fn mu_minus_one_and_single_point() {
        let w = table(&[1, 2, 4]);
        let xz = r(7, 2);
        let direct: Rational = (0..3)
            .map(|i| {
                let s = -1 + i as i64;
                &w.grid.values[i] * &(&w.x(3, s) - &w.x(3, s - 1))
            })
            .fold(Rational::zero(), |a, b| &a + &b);
        assert_eq!(phi_sum(&w, -1, &xz).unwrap(), direct);
        let one = WeightTable::from_values(1, 2, alloc::vec![r(5, 1)], r(2, 3)).unwrap();
        let gp = gen_power_value(&one.t, 1, &one.x(0, 2), &xz, 2).unwrap();
        let expect = &(&r(5, 1) * &(&one.x(2, 2) - &one.x(2, 1))) / &gp;
        assert_eq!(phi_sum(&one, 1, &xz).unwrap(), expect);
    }

    #[test]
    fn nabla_identity_and_negative_control() {
        let w = table(&[1, -2, 5, 7, 3, 1]);
        for mu in -1..3 {
            assert!(check_nabla_identity(&w, mu, &r(11, 7)).unwrap());
            assert!(check_delta_identity(&w, mu, &r(11, 7)).unwrap());
        }
        let lhs = &phi_sum(&w, 1, &r(11, 7)).unwrap() + &r(1, 1000);
        let rhs = phi_sum(&w, 1, &r(11, 7)).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn denominator_zero_reports_s() {
        let w = WeightTable::from_values(0, 0, alloc::vec![r(1, 1), r(1, 1)], r(1, 2)).unwrap();
        // X = q^1 hits s = 1 with μ + 1 = 1
        let e = phi_sum(&w, 0, &r(1, 4)).unwrap_err();
        assert_eq!(e, Error::DenominatorZero(1));
    }

    #[test]
    fn gen_power_matches_closed_form() {
        use crate::lattice::{gen_power_int, LatticeSpec};
        let l = LatticeSpec::q_canonical();
        let t = r(2, 5);
        let (sv, xv) = (r(3, 7), r(5, 2));
        for k in -2..3 {
            for n in 0..5u32 {
                let g = gen_power_int(&l, k, &RatFunc::from_rational(sv.clone()), &RatFunc::from_rational(xv.clone()), n)
                    .unwrap();
                let mut m = BTreeMap::new();
                m.insert(String::from(T), t.clone());
                assert_eq!(g.eval(&m).unwrap(), gen_power_value(&t, k, &sv, &xv, n as i64).unwrap());
            }
        }
    }

    #[test]
    fn negative_order_is_reciprocal_shift() {
        let t = r(2, 3);
        let q = &t * &t;
        let (sv, xv) = (r(1, 3), r(5, 7));
        for n in 1..4i64 {
            let neg = gen_power_value(&t, 1, &sv, &xv, -n).unwrap();
            let pos = gen_power_value(&t, 1, &sv, &(&xv * &q.pow(n as i32).unwrap()), n).unwrap();
            assert_eq!(neg, pos.recip().unwrap());
            // [..]^(n) [..(z−n)]^(−n) = 1
            let a = gen_power_value(&t, 1, &sv, &xv, n).unwrap();
            let b = gen_power_value(&t, 1, &sv, &(&xv / &q.pow(n as i32).unwrap()), -n).unwrap();
            assert_eq!(&a * &b, Rational::one());
        }
    }
}
