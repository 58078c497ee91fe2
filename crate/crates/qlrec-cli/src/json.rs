//! Canonical JSON forms. Rationals are always `"p/q"` strings.

use qlrec::field::{MultiPoly, PolyValue, RatFunc, Rational};
use qlrec::relation::DerivedRelation;
use serde_json::{json, Value};

pub const SCHEMA: &str = "qlattice-rec/1";

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_fraction_string())
}

/// `{"vars":[...], "terms":[[[e1,e2,...],"p/q"],...]}` in the polynomial's canonical order.
pub fn multipoly(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!([e, rational(c)])).collect();
    json!({ "vars": p.vars(), "terms": terms })
}

pub fn ratfunc(r: &RatFunc) -> Value {
    json!({ "num": multipoly(r.numer()), "den": multipoly(&r.denom()) })
}

/// A polynomial in `var` as a single rational function.
pub fn poly_in(p: &PolyValue, var: &str) -> Value {
    ratfunc(&p.to_ratfunc(var))
}

pub fn triples(t: &[(i64, i64); 3]) -> Value {
    json!(t.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>())
}

pub fn derived_relation(rel: &DerivedRelation) -> Value {
    json!({
        "triples": triples(&rel.triples),
        "A": rel.a.iter().map(|a| poly_in(a, qlrec::lattice::X)).collect::<Vec<_>>(),
        "Q": poly_in(&rel.q, qlrec::lattice::S),
        "normalization": rel.normalization.tag(),
    })
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|_| format!("bad rational {s:?}"))
}

/// Deterministic pretty rendering with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use qlrec::field::parse_ratfunc;

    #[test]
    fn rational_strings() {
        assert_eq!(rational(&Rational::new(-6, 4)), json!("-3/2"));
        assert_eq!(rational(&Rational::from_int(3)), json!("3/1"));
        assert_eq!(parse_rational(" -3/2 ").unwrap(), Rational::new(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn poly_form_is_stable() {
        let r = parse_ratfunc("2*x^2*y - 1/3").unwrap();
        let a = render(&ratfunc(&r));
        let b = render(&ratfunc(&parse_ratfunc("-1/3 + y*2*x^2").unwrap()));
        assert_eq!(a, b);
        assert!(a.contains("\"-1/3\""));
    }
}
