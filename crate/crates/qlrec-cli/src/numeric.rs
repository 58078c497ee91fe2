//! Exact evaluation at a numeric `q`, with `t^(2k)` read as `q^k`.

use std::collections::BTreeMap;

use qlrec::families::Family;
use qlrec::field::{MultiPoly, RatFunc, Rational};
use qlrec::lattice::T;

fn eval_poly(p: &MultiPoly, q: &Rational, vals: &BTreeMap<String, Rational>) -> Result<Rational, String> {
    let mut acc = Rational::zero();
    for (exps, c) in p.terms() {
        let mut term = c.clone();
        for (v, &e) in p.vars().iter().zip(exps) {
            let f = if v == T {
                if e % 2 != 0 {
                    return Err(format!("odd power t^{e} has no rational value"));
                }
                q.pow(e / 2)
            } else {
                vals.get(v).ok_or_else(|| format!("parameter {v} is not set"))?.pow(e)
            };
            term = &term * &f.map_err(|e| e.to_string())?;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Value of `r` at `q` and the given parameters.
pub fn eval_q(r: &RatFunc, q: &Rational, vals: &BTreeMap<String, Rational>) -> Result<Rational, String> {
    let num = eval_poly(r.numer(), q, vals)?;
    let den = eval_poly(&r.denom(), q, vals)?;
    if den.is_zero() {
        return Err("denominator vanishes at these values".into());
    }
    num.checked_div(&den).map_err(|e| e.to_string())
}

/// `P_n(x)` by running the recurrence with numeric `β_k, γ_k`.
pub fn eval_family(f: &Family, n: u32, x: &Rational, q: &Rational, vals: &BTreeMap<String, Rational>) -> Result<Rational, String> {
    if q.is_zero() || q.is_one() {
        return Err("q must differ from 0 and 1".into());
    }
    for p in &f.data.parameters {
        if !vals.contains_key(p) {
            return Err(format!("parameter {p} is not set"));
        }
    }
    let mut prev = Rational::zero();
    let mut cur = Rational::one();
    for k in 0..n as i64 {
        let b = eval_q(&f.beta(k).map_err(|e| e.to_string())?, q, vals)?;
        let mut next = &(x - &b) * &cur;
        if k > 0 {
            let g = eval_q(&f.gamma(k).map_err(|e| e.to_string())?, q, vals)?;
            next = &next - &(&g * &prev);
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qlrec::field::parse_ratfunc;

    #[test]
    fn t_powers_halve() {
        let q = Rational::new(1, 3);
        let r = parse_ratfunc("t^4*a + t^-2").unwrap();
        let vals = BTreeMap::from([("a".to_string(), Rational::from_int(2))]);
        assert_eq!(eval_q(&r, &q, &vals).unwrap(), Rational::new(2, 9) + Rational::from_int(3));
        assert!(eval_q(&parse_ratfunc("t").unwrap(), &q, &vals).is_err());
        assert!(eval_q(&parse_ratfunc("b").unwrap(), &q, &vals).is_err());
        assert!(eval_q(&parse_ratfunc("1/(t^2-1/3)").unwrap(), &q, &vals).is_err());
    }
}
