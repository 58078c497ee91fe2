//! Tabulated data of the three q-classical families and their published relations.
//!
//! Every entry is an expression string for [`crate::field::parse_with`] in
//! `t`, `x`, the family parameters and the integer `n`, with `q = t²` bound.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Raw family record, exactly as tabulated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyData {
    pub name: String,
    pub parameters: Vec<String>,
    /// `a, b, c` of `σ(x) = a x² + b x + c`.
    pub sigma: [String; 3],
    /// `d, e` of `τ(x) = d x + e`.
    pub tau: [String; 2],
    pub lambda: String,
    pub beta: String,
    /// `γ_n` as used by the recurrence.
    pub gamma: String,
    /// Printed `γ_n`, when it differs from `gamma`.
    pub gamma_printed: Option<String>,
    pub b_n: String,
    /// Tabulated `τ_n(x) = d_n x + e_n`, if given.
    pub tau_n: Option<[String; 2]>,
    pub notes: String,
}

fn s(v: &str) -> String {
    v.to_string()
}

pub fn builtin_families() -> Vec<FamilyData> {
    alloc::vec![
        FamilyData {
            name: s("alsalam1"),
            parameters: alloc::vec![s("a")],
            sigma: [s("1"), s("-(1+a)"), s("a")],
            tau: [s("t/(1-q)"), s("-t*(1+a)/(1-q)")],
            lambda: s("-t^(3-2*n)*(1-q^n)/(1-q)^2"),
            beta: s("(1+a)*q^n"),
            gamma: s("-a*q^(n-1)*(1-q^n)"),
            gamma_printed: None,
            b_n: s("t^(n*(3*n-5)/2)*(1-q)^n"),
            tau_n: Some([s("t^(1-n)/(1-q)"), s("-t^(1-n)*(1+a)/(1-q)")]),
            notes: s("Al-Salam-Carlitz I, monic U_n^(a)(x;q)"),
        },
        FamilyData {
            name: s("alt-q-charlier"),
            parameters: alloc::vec![s("a")],
            sigma: [s("-1/q"), s("1/q"), s("0")],
            tau: [s("-(1+a*q)/(t*(1-q))"), s("1/(t*(1-q))")],
            lambda: s("t^(1-2*n)*(1-q^n)*(1+a*q^n)/(1-q)^2"),
            beta: s("q^n*(1+a*q^(n-1)+a*q^n-a*q^(2*n))/((1+a*q^(2*n-1))*(1+a*q^(2*n+1)))"),
            gamma: s("a*q^(3*n-2)*(1-q^n)*(1+a*q^(n-1))/((1+a*q^(2*n-2))*(1+a*q^(2*n-1))^2*(1+a*q^(2*n)))"),
            gamma_printed: None,
            b_n: s("(-1)^n*t^(n*(3*n-1)/2)*(1-q)^n/poch(-a*q^n, n)"),
            tau_n: Some([s("-t^(-n-1)*(1+a*q^(1+2*n))/(1-q)"), s("t^(-n-1)/(1-q)")]),
            notes: s("alternative q-Charlier, monic K_n(x;a;q)"),
        },
        FamilyData {
            name: s("big-q-jacobi"),
            parameters: alloc::vec![s("a"), s("b"), s("c")],
            sigma: [s("1/q"), s("-(a+c)"), s("a*c*q")],
            tau: [s("t*(1-a*b*q^2)/(q*(1-q))"), s("t*(a*(b+c)*q-(a+c))/(1-q)")],
            lambda: s("-t^(1-2*n)*(1-a*b*q^(1+n))*(1-q^n)/(1-q)^2"),
            beta: s(
                "(c+a^2*b*q^n*((1+b+c)*q^(1+n)-q-1)+a*(1+b+c-q^n*(b*(1+q)+c*(1+q+b+b*q-b*q^(1+n)))))\
                 /(q^(-1-n)*(1-a*b*q^(2*n))*(1-a*b*q^(2*n+2)))"
            ),
            gamma: s(
                "-a*(1-q^n)*(1-a*q^n)*(1-b*q^n)*(1-c*q^n)*(c-a*b*q^n)*(1-a*b*q^n)\
                 /(q^(-1-n)*(1-a*b*q^(2*n-1))*(1-a*b*q^(2*n))^2*(1-a*b*q^(2*n+1)))"
            ),
            gamma_printed: Some(s(
                "-a*(1-q^n)*(1-a*q^n)*(1-b*q^n)*(1-c*q^n)*(c-a*b*q^n)\
                 /(q^(-1-n)*(1-a*b*q^(2*n-1))*(1-a*b*q^(2*n))^2*(1-a*b*q^(2*n+1)))"
            )),
            b_n: s("(1-q)^n*t^(n*(3*n-1)/2)/poch(a*b*q^(1+n), n)"),
            tau_n: Some([
                s("t^(1-n)*(1-a*b*q^(2+2*n))/(q*(1-q))"),
                s("t^(1-n)*(a*(b+c)*q^(1+n)-(a+c))/(1-q)"),
            ]),
            notes: s("big q-Jacobi, monic p_n(x;a,b,c;q); gamma_n carries the factor (1-abq^n) missing from the printed table"),
        },
    ]
}

/// The operator applied to `P_{n+offset}` in one term of a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Id,
    /// `Δ^(k)`.
    Delta(u32),
    /// `∇/∇x`.
    Nabla,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub offset: i64,
    pub op: Op,
}

impl Term {
    pub const fn p(offset: i64) -> Self {
        Term { offset, op: Op::Id }
    }

    pub const fn d(offset: i64) -> Self {
        Term { offset, op: Op::Delta(1) }
    }
}

/// A published closed-form relation `Σ A_i(x) op_i P_{n+offset_i} = 0`.
#[derive(Clone, Debug)]
pub struct PublishedRelation {
    pub family: &'static str,
    pub label: &'static str,
    pub terms: [Term; 3],
    /// Named subexpressions, evaluated in order.
    pub defs: Vec<(&'static str, String)>,
    pub coeffs: [String; 3],
    /// Smallest `n` for which every `P_{n+offset}` exists.
    pub n_min: i64,
}

const BQJ_BR: &str = "(c + a*(1+b+c+b*(c+a*(1+b+c))*q^(2*n+1) - (c+b*(1+a+c))*q^n*(1+q)))";

fn bqj_n(variant: &str) -> String {
    alloc::format!(
        "a*q^2*(1-q^n)*(1-a*q^n)*(1-b*q^n)*(1-c*q^n)*(c-a*b*q^n)/((1-a*b*q^(2*n))^2*(1-{variant}*q^(2*n+1))) \
         - (q*(-c+a*(-1+(b+c)*q^n))/(1-a*b*q^(2*n)) + t^(1-n)*x) \
         * ((c + a^2*b*q^n*(-1-q+(1+b+c)*q^(n+1)) + a*(1-(b+c)*(-1+q^n+q^(n+1)) - b*c*q^n*(1+q-q^(n+1)))) \
            /(q^(-n-1)*(1-a*b*q^(2*n))*(1-a*b*q^(2*n+2))) - x)"
    )
}

const BQJ_D: &str = "a*q*(1-q^n)*(1-a*q^n)*(1-b*q^n)*(1-c*q^n)*(c-a*b*q^n)/(1-a*b*q^(2*n+1)) \
     + (1-t^n)/(1-a*b*q^(2*n+2)) \
     * ((-c + a^2*b*t^(3*n)*(-1-q+(b+c)*q^(n+1)-t^(2+n)) + a*(-1+(b+c)*(t^n+q^n+q^(n+1)) - b*c*(t^(3*n)+t^(2+3*n)+q^(2*n+1)))) \
        * ((c+a)*t^(2+n) - a*(b+c)*t^(2+3*n) - t*(1-a*b*q^(2*n))*x))";

const BQJ_COM: &str = "(1-x)*(c-b*x)*(c-(b+c)*x+b*x^2)";

const BQJ_A: [&str; 3] = [
    "a*t^(2*n-1)*(1-a*b*q^(n+1))*com/(1-a*b*q^(2*n-1)) \
     * ((1-q)*t^n*(1-a*b*q^(2*n+2))*(br/(q^(-(n+1))*(1-a*b*q^(2*n))*(1-a*b*q^(2*n+2))) - x)*D \
        - (1-q)*q^n*(1-a*b*q^(2*n))*((1-a*b*q^(2*n))*(-c+a*(-1+(b+c)*q^(n+1))) + t^n*br)*N)",
    "a*(1-q)*q^n*(1-a*b*q^(2*n))^2*(1-a*b*q^(2*n+2))*com*N",
    "(1-a*b*q^(n+1))*(1-a*b*q^(2*n+2))*(1-x)*(c-b*x)*D \
     + t^(-2-n)*(1-t^n)*(1+a*b*t^(2+3*n))*(1-a*b*q^(2*n))^2*(1-a*b*q^(2*n+2))*(c-(b+c)*x+b*x^2)*N",
];

const CH52_BRACE: &str =
    "(a*q^n*(1-q^(n+1)) + t^(-n-1)*(1+a*q^(2*n+1))*((1+a*q^(n+1)) - t^(-n-1)*(1+a*q^(2*n+2)))*x)";

const CH51_DEN: &str = "(q^(3*n)*(1+a*q^n)*(1+a*q^(2*n))*(1+a*q^(2*n+1)))";

/// The published relations, with the big q-Jacobi one in both `N(x)` readings.
pub fn published_relations() -> Vec<PublishedRelation> {
    let lower = [Term::d(-1), Term::d(0), Term::p(1)];
    let upper = [Term::p(-1), Term::p(0), Term::d(1)];
    let bqj = |label: &'static str, variant: &str| PublishedRelation {
        family: "big-q-jacobi",
        label,
        terms: lower,
        defs: alloc::vec![("br", s(BQJ_BR)), ("N", bqj_n(variant)), ("D", s(BQJ_D)), ("com", s(BQJ_COM))],
        coeffs: [s(BQJ_A[0]), s(BQJ_A[1]), s(BQJ_A[2])],
        n_min: 1,
    };
    alloc::vec![
        PublishedRelation {
            family: "alsalam1",
            label: "delta-lower",
            terms: lower,
            defs: alloc::vec![("den", s("(a*t^(-5)*(1+t^n) - q*(1+a)*(t^(n+3)*(1+a)-q^(2-n)*x))"))],
            coeffs: [
                s("a*q^n*(1+t^n)*((1+a)-t^(-n)*x)/den"),
                s("(-a*t^(-7)*(1-q^n) - ((1+a)*q^n-x)*(t^3*(1+a)-t^(4-3*n)*x))/((1-t^n)*den)"),
                s("(a+t^(11-4*n)*x^2+t^(-n)*(a-(1+a)*q^5*x))/(a*(1-q)*(a*q^n+t^(3*n)*(a-(1+a)^2*q^5)+(1+a)*t^11*x))"),
            ],
            n_min: 1,
        },
        PublishedRelation {
            family: "alt-q-charlier",
            label: "delta-lower",
            terms: lower,
            defs: alloc::vec![("den", s(CH51_DEN))],
            coeffs: [
                s("a*(1+a*t^n)*((1+a*q^(2*n+1))*x-t^(-n))*x/(q^2*(1+a*q^(2*n-2))*(1+a*q^(2*n-1))*(1+a*q^(2*n))*(1+a*q^(2*n+1)))"),
                s("(-t^(3*n+1)*(1+a*q^n)*x + (1+a*q^(2*n))*(t^(2+n)*(1+a*q^(2*n+1)) + a*t^(4*n+1)*(1+q) + t^(3*n)*(1-a*q^(2*n)))*x^2)/den \
                   - t^3*(1+a*q^(2*n-1))*(1+a*q^(2*n+1))*x^3/den"),
                s("(t^(n+1) + a*q^(2*n)*(t^n+1+t) - t^3*(1-a*t^(3*n))*(1+a*q^(2*n-1))*x)/(t^(9*n)*(1+a*q^n))"),
            ],
            n_min: 1,
        },
        bqj("delta-lower", "a"),
        bqj("delta-lower-ab", "a*b"),
        PublishedRelation {
            family: "alsalam1",
            label: "delta-upper",
            terms: upper,
            defs: Vec::new(),
            coeffs: [
                s("a*q^(n-1)*(1-q^n)*x"),
                s("a*(1+t^(n+1))*q^n - ((1+a)*q^n-x)*x"),
                s("-a*(1-q)/(1-t^(n+1))*t^(3*n+1)"),
            ],
            n_min: 1,
        },
        PublishedRelation {
            family: "alt-q-charlier",
            label: "delta-upper",
            terms: upper,
            defs: alloc::vec![("brace", s(CH52_BRACE))],
            coeffs: [
                s("a*(1-q^n)*(1+a*q^(n-1))*brace/(q^(2-3*n)*(1+a*q^(2*n-2))*(1+a*q^(2*n-1))*(1+a*q^(2*n)))"),
                s("-x*brace + (a^2*q^(3*n-1)*(1-q^n)*(1-q^(n+1)) + t^(n-1)*(1+a*q^(n-1)+a*q^n-a*q^(2*n))*(1+a*q^(2*n+1)) \
                   *((1+a*q^(n+1))-t^(-n-1)*(1+a*q^(2*n+2)))*x)/((1+a*q^(2*n-1))*(1+a*q^(2*n+1)))"),
                s("a*(1-q)*t^(n+1)*(1+a*q^(2*n+1))*x^2"),
            ],
            n_min: 1,
        },
    ]
}

/// The printed linear system for the Al-Salam-Carlitz I lower relation,
/// rows `(coef A_1, coef A_2, coef A_3, right-hand side)`.
pub fn alsalam_printed_system() -> [[String; 4]; 3] {
    [
        [s("0"), s("q*(t^(-n)-1)"), s("a*(1-q)*q^n"), s("1")],
        [s("t^(-n-5)"), s("t^(n+2)*(1+a)*(1-t^n)"), s("0"), s("(1+a)*q^n-x")],
        [s("t^(n+3)*(1+a)-q^(2-n)*x"), s("a*q^n*(1-q^n)"), s("0"), s("a*q^(n-1)*(q^n-1)")],
    ]
}
