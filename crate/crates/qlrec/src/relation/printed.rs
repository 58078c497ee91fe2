//! Published closed forms for five relations with generic `σ, τ`.
//!
//! Symbols: `f, g, c` are the coefficients of `φ_0(s) = f q^(2s) + g q^s + c`,
//! `u = q^(ν/2)`, `t = q^(1/2)`. Inside the strings `q = t^2`, `qn = q^ν`,
//! `h = c`, `F = f`, `G = g`, `d, e` are the `τ` coefficients and
//! `br1 = [ν]_q`, `br2 = [2ν]_q`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::Triples;
use crate::error::Result;
use crate::field::{common_polys, parse_ratfunc, PolyValue, RatFunc};
use crate::lattice::{q_number, t_diff, t_pow, Nu, T, U, X};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// As printed.
    Printed,
    /// With the sign fixes found by the oracles; equal to `Printed` when none.
    Corrected,
}

#[derive(Clone, Debug)]
pub struct PrintedRelation {
    pub triples: Triples,
    printed: [&'static str; 3],
    corrected: Option<[&'static str; 3]>,
}

const EX_A: [&str; 3] = [
    "-e*u + G/F*(d*u + a*br1) + (d*u^2 + a*br2)*u*X",
    "c*(d*u^2 + a*br2)/F + G/(t - 1/t)*(u^2 + a/(u^2*F))*X + (d*u^2 + a*br2)*X^2",
    "-(d*u + a*br1)/F",
];

const EX_A_FIX: [&str; 3] = [
    EX_A[0],
    "c*(d*u^2 + a*br2)/F + G/(t - 1/t)*(u^2 - a/(u^2*F))*X + (d*u^2 + a*br2)*X^2",
    EX_A[2],
];

const EX_B: [&str; 3] = [
    "f*(a - f*qn^2)*X + a*g*q - f*b*qn*q",
    "1/(u*q)*(a - f*qn^2)*(f*X^2 + g*X*q + h*q^2)",
    "t*(a*q - f*qn)",
];

const EX_B_FIX: [&str; 3] = [EX_B[0], EX_B[1], "-t*(a*q - f*qn)"];

const EX_C: [&str; 3] = [
    "1/(t*qn)*( f*X^2*(-a^2*h*q^4 + a*g*b*qn*q^4 - qn^2*q^2*(a*g^2*q - 2*f*a*h + f*b^2) - f*g*b*qn^3*q*(q^2 - q - 1) + f*qn^4*(g^2*(q - 1)*q - f*h)) \
     + g*X*q*(-a^2*h*q^5 + a*qn*q^2*(g*b*q^3 + f*h*q^2 - f*h) - qn^2*q^2*((f*a*h + f*g*b + a*g^2)*q^2 - f*(2*a*h - b^2 + g*b)*q - f*a*h) + f*qn^3*(q^2*(g^2*q - f*h + g*b - g^2) + f*h) + f^2*h*qn^4*(q^2 - q - 1)) \
     - a^2*h^2*q^6 + a*g*h*qn*q^5*(b*q + g*q - g) + f*g*h*qn^3*q^4*(g*q + b - g) - f^2*h^2*qn^4*q^2 \
     - h*qn^2*q^3*(a*g^2*q^3 + f*g*b*q^2 + f*g^2*q^2 - 2*f*a*h*q + f*b^2*q - 2*f*g^2*q - f*g*b + f*g^2))",
    "(1/u - u)*(f*X^2 + g*X*q + h*q^2)*(f*X*(f*qn^2 - a*q^2) + f*qn*q*(g*q + b - g) - a*g*q^3)",
    "f*(f*qn - a*q)*((f*X^2 + h*q^2)*(f*qn^2 - a*q^2) + g*X*q*(f*qn*(qn + q - 1) - a*q^3))",
];

const EX_D: [&str; 3] = [
    "a^2*h*q^4 - a*g*b*qn*q^3 + qn^2*q^2*(f*b^2 - 2*f*a*h + a*g^2) - f*g*b*qn^3*q + f^2*h*qn^4",
    "1/t*(f*qn - a*q^2)*(f*X*qn^2 - a*X*q^2 + g*qn^2*q - b*qn*q^2)",
    "-(u/t^3)*(f*qn^2 - a*q^2)*(qn*q - 1)*(g*X*q + f*X^2 + h*q^2)",
];

const EX_E: [&str; 3] = [
    "u*t*(f*X*qn*(f*qn^2 - g*qn + b - a) - f*(h - b)*qn^2*q - a*q*(g*qn - h))",
    "1/X*qn*t*(X*(f*qn^2 - a) + qn*(g*qn - b))*(f*X^2 + g*X*q + h*q^2)",
    "X^2*(f*qn - a*q) + X*qn*(q*(g*qn - a*q - b) - f*qn*(qn*q - q - 1)) + qn*q*((h - b)*qn*q + g*qn - h)",
];

/// All five, in publication order.
pub fn printed_relations() -> Vec<PrintedRelation> {
    alloc::vec![
        PrintedRelation { triples: [(0, -1), (0, 0), (1, 0)], printed: EX_A, corrected: Some(EX_A_FIX) },
        PrintedRelation { triples: [(0, 0), (0, 1), (1, 1)], printed: EX_B, corrected: Some(EX_B_FIX) },
        PrintedRelation { triples: [(-1, -1), (0, -1), (0, 0)], printed: EX_C, corrected: None },
        PrintedRelation { triples: [(-1, -1), (0, 0), (0, 1)], printed: EX_D, corrected: None },
        PrintedRelation { triples: [(0, -1), (0, 0), (1, 1)], printed: EX_E, corrected: None },
    ]
}

/// `dν=(…),dμ=(…)`.
pub fn signature(tr: &Triples) -> String {
    alloc::format!(
        "dnu=({},{},{}),dmu=({},{},{})",
        tr[0].0,
        tr[1].0,
        tr[2].0,
        tr[0].1,
        tr[1].1,
        tr[2].1
    )
}

fn bindings() -> BTreeMap<String, RatFunc> {
    let td = t_diff();
    let (a, b) = (RatFunc::var("a"), RatFunc::var("b"));
    let (f, g) = (RatFunc::var("f"), RatFunc::var("g"));
    let mut m = BTreeMap::new();
    m.insert("q".into(), t_pow(2));
    m.insert("qn".into(), Nu::symbolic().power());
    m.insert("h".into(), RatFunc::var("c"));
    m.insert("F".into(), f.clone());
    m.insert("G".into(), g.clone());
    m.insert("d".into(), (&f - &a).checked_div(&td).expect("nonzero"));
    m.insert("e".into(), (&g - &b).checked_div(&td).expect("nonzero"));
    m.insert("br1".into(), q_number(Nu::symbolic()));
    m.insert("br2".into(), q_number(Nu { sym: 2, off: 0 }));
    m
}

impl PrintedRelation {
    pub fn name(&self) -> String {
        signature(&self.triples)
    }

    pub fn has_correction(&self) -> bool {
        self.corrected.is_some()
    }

    /// `A_1, A_2, A_3` as polynomials in `X` over `t, u, a, b, c, f, g`,
    /// multiplied by a common factor if needed.
    pub fn coefficients(&self, form: Form) -> Result<[PolyValue; 3]> {
        let src = match form {
            Form::Corrected => self.corrected.unwrap_or(self.printed),
            Form::Printed => self.printed,
        };
        let b = bindings();
        let mut r: Vec<RatFunc> = Vec::with_capacity(3);
        for s in src {
            r.push(parse_ratfunc(s)?.substitute(&b)?);
        }
        let p = common_polys(&r, X)?;
        Ok([p[0].clone(), p[1].clone(), p[2].clone()])
    }
}

/// Symbols appearing in the coefficients.
pub fn symbols() -> [&'static str; 7] {
    [T, U, "a", "b", "c", "f", "g"]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcriptions_parse() {
        for p in printed_relations() {
            let c = p.coefficients(Form::Printed).unwrap();
            assert!(c.iter().all(|e| !e.is_zero()), "{}", p.name());
            for e in c.iter().flat_map(|e| e.coeffs()) {
                for v in e.vars() {
                    assert!(symbols().contains(&v.as_str()), "{v}");
                }
            }
        }
    }

    #[test]
    fn negative_x_power_is_cleared() {
        let e = &printed_relations()[4];
        let c = e.coefficients(Form::Printed).unwrap();
        assert_eq!(c[1].degree(), Some(3));
        assert_eq!(c[2].degree(), Some(3));
    }
}
