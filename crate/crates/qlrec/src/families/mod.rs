//! q-classical polynomial families: recurrences, the first-difference formula,
//! ladder relations and their exact verification.

pub mod data;
pub mod ladder;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{parse_with, PolyValue, RatFunc};
use crate::hyper::HyperSpec;
use crate::lattice::{delta_q, nabla_q, q_factorial, q_number, t_pow, Nu};

pub use data::{builtin_families, published_relations, FamilyData, Op, PublishedRelation, Term};
pub use ladder::*;

/// Which tabulated `γ_n` drives the recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaForm {
    Printed,
    Corrected,
}

/// A registered family with parsed `σ`, `τ`.
#[derive(Clone, Debug)]
pub struct Family {
    pub data: FamilyData,
    pub hyper: HyperSpec,
    pub gamma_form: GammaForm,
    /// Parameter values substituted everywhere; empty for symbolic parameters.
    pub params: BTreeMap<String, RatFunc>,
}

fn env(n: i64) -> BTreeMap<String, RatFunc> {
    let mut m = BTreeMap::new();
    m.insert("q".into(), t_pow(2));
    m.insert("n".into(), RatFunc::from_int(n));
    m
}

impl Family {
    pub fn from_data(data: FamilyData) -> Result<Self> {
        Self::with_params(data, BTreeMap::new())
    }

    /// Family with some parameters fixed to the given values.
    pub fn with_params(data: FamilyData, params: BTreeMap<String, RatFunc>) -> Result<Self> {
        for k in params.keys() {
            if !data.parameters.contains(k) {
                return Err(Error::Invalid(alloc::format!("{} has no parameter {k}", data.name)));
            }
        }
        let mut e = env(0);
        e.extend(params.clone());
        let p = |s: &str| parse_with(s, &e);
        let hyper = HyperSpec::new(p(&data.sigma[0])?, p(&data.sigma[1])?, p(&data.sigma[2])?, p(&data.tau[0])?, p(&data.tau[1])?)?;
        Ok(Family { data, hyper, gamma_form: GammaForm::Corrected, params })
    }

    /// Bindings for `q`, `n` and any fixed parameters.
    pub fn env(&self, n: i64) -> BTreeMap<String, RatFunc> {
        let mut e = env(n);
        e.extend(self.params.clone());
        e
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn with_gamma(mut self, g: GammaForm) -> Self {
        self.gamma_form = g;
        self
    }

    /// Evaluates an `n`-dependent expression.
    pub fn eval(&self, expr: &str, n: i64) -> Result<RatFunc> {
        parse_with(expr, &self.env(n))
    }

    pub fn lambda(&self, n: i64) -> Result<RatFunc> {
        self.eval(&self.data.lambda, n)
    }

    pub fn alpha(&self, _n: i64) -> RatFunc {
        RatFunc::one()
    }

    pub fn beta(&self, n: i64) -> Result<RatFunc> {
        self.eval(&self.data.beta, n)
    }

    pub fn gamma(&self, n: i64) -> Result<RatFunc> {
        match (self.gamma_form, &self.data.gamma_printed) {
            (GammaForm::Printed, Some(g)) => self.eval(g, n),
            _ => self.eval(&self.data.gamma, n),
        }
    }

    pub fn b_n(&self, n: i64) -> Result<RatFunc> {
        self.eval(&self.data.b_n, n)
    }

    /// `C_n = [n]_q! B_n`.
    pub fn c_n(&self, n: i64) -> Result<RatFunc> {
        Ok(&q_factorial(n as u32) * &self.b_n(n)?)
    }

    /// Tabulated `(d_n, e_n)`.
    pub fn tau_n_table(&self, n: i64) -> Option<Result<(RatFunc, RatFunc)>> {
        self.data.tau_n.as_ref().map(|[d, e]| Ok((self.eval(d, n)?, self.eval(e, n)?)))
    }

    /// `φ(x) = σ(x) + τ(x)Δx(s − ½)` as a polynomial in `x`.
    pub fn phi(&self) -> PolyValue {
        let (f, g) = self.hyper.phi0_fg();
        PolyValue::new(alloc::vec![self.hyper.c.clone(), g, f])
    }

    /// `φ(s + m)` as a polynomial in `x = q^s`.
    pub fn phi_shift(&self, m: i64) -> PolyValue {
        self.phi().dilate(&t_pow(2 * m))
    }

    pub fn sigma(&self) -> PolyValue {
        self.hyper.sigma_poly()
    }

    pub fn tau(&self) -> PolyValue {
        self.hyper.tau_poly()
    }
}

/// `λ_n` from the table agrees with the one computed from `σ, τ`.
pub fn lambda_matches(f: &Family, n: i64) -> Result<bool> {
    Ok(f.lambda(n)? == f.hyper.lambda_nu(Nu::int(n)))
}

/// `τ_n` from the table agrees with the computed one; `None` without a table.
pub fn tau_matches(f: &Family, n: i64) -> Result<Option<bool>> {
    match f.tau_n_table(n) {
        None => Ok(None),
        Some(t) => {
            let (d, e) = t?;
            let (dn, en) = f.hyper.tau_nu_coeffs(Nu::int(n))?;
            Ok(Some(d == dn && e == en))
        }
    }
}

const REGISTRATION_CHECK: i64 = 6;

/// Parses a record and runs the registration cross-checks.
pub fn register(data: FamilyData) -> Result<Family> {
    check_registration(Family::from_data(data)?)
}

/// Runs the registration cross-checks on an already built family.
pub fn check_registration(f: Family) -> Result<Family> {
    for n in 0..=REGISTRATION_CHECK {
        if !lambda_matches(&f, n)? {
            return Err(Error::RegistrationFailure(alloc::format!("{}: lambda_{n}", f.name())));
        }
        if tau_matches(&f, n)? == Some(false) {
            return Err(Error::RegistrationFailure(alloc::format!("{}: tau_{n}", f.name())));
        }
    }
    Ok(f)
}

pub fn registry() -> Result<Vec<Family>> {
    builtin_families().into_iter().map(register).collect()
}

pub fn family(name: &str) -> Result<Family> {
    let d = builtin_families()
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::Invalid(alloc::format!("unknown family {name}")))?;
    register(d)
}

/// `P_0, …, P_{n_max}` from `P_{n+1} = (x − β_n)P_n − γ_n P_{n−1}`.
pub fn ttrr_list(f: &Family, n_max: usize) -> Result<Vec<PolyValue>> {
    let mut out = alloc::vec![PolyValue::one()];
    let mut prev = PolyValue::zero();
    for n in 0..n_max {
        let cur = out[n].clone();
        let lin = PolyValue::new(alloc::vec![-f.beta(n as i64)?, RatFunc::one()]);
        let mut next = &lin * &cur;
        if n > 0 {
            next = &next - &prev.scale(&f.gamma(n as i64)?);
        }
        prev = cur;
        out.push(next);
    }
    Ok(out)
}

pub fn ttrr_eval(f: &Family, n: usize) -> Result<PolyValue> {
    Ok(ttrr_list(f, n)?.pop().expect("nonempty"))
}

/// `σ Δ(∇P/∇x)/Δx(s−½) + τ ΔP/Δx + λ_n P`.
pub fn difeq_residual_of(f: &Family, n: i64, p: &PolyValue) -> Result<PolyValue> {
    // Δg/Δx(s−½) = t Δ_q g since Δx(s−½) = (t − 1/t)x
    let first = &(&f.sigma() * &delta_q(&nabla_q(p))) * &PolyValue::constant(t_pow(1));
    let second = &f.tau() * &delta_q(p);
    Ok(&(&first + &second) + &p.scale(&f.lambda(n)?))
}

pub fn difeq_residual(f: &Family, n: usize) -> Result<PolyValue> {
    difeq_residual_of(f, n as i64, &ttrr_eval(f, n)?)
}

/// Reading of `τ'_n` in the first-difference formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Delta1Convention {
    /// `τ'_n = d_n`, the leading coefficient in `x`.
    Printed,
    /// `τ'_n = d_n q^(−n/2)`, the derivative with respect to `x_n(s)`.
    Corrected,
}

/// `(α̂_n, β̂_n, γ̂_n)` with `φ Δ^(1)P_n = α̂_n P_{n+1} + β̂_n P_n + γ̂_n P_{n−1}`.
pub fn delta1_formula(f: &Family, n: i64, conv: Delta1Convention) -> Result<(RatFunc, RatFunc, RatFunc)> {
    let (dn, en) = f.hyper.tau_nu_coeffs(Nu::int(n))?;
    if dn.is_zero() {
        return Err(Error::DegenerateTau(n));
    }
    let tp = match conv {
        Delta1Convention::Printed => dn,
        Delta1Convention::Corrected => &dn * &t_pow(-n),
    };
    let qn = q_number(Nu::int(n));
    let pre = f.lambda(n)?.checked_div(&qn)?;
    let w = t_pow(-n);
    let ratio = f.b_n(n)?.checked_div(&(&tp * &f.b_n(n + 1)?))?;
    let ah = &pre * &(&(&w * &f.alpha(n)) - &ratio);
    let bh = &pre * &(&(&w * &f.beta(n)?) + &en.checked_div(&tp)?);
    let gh = &(&pre * &w) * &f.gamma(n)?;
    Ok((ah, bh, gh))
}

/// `C_ν^(k)/C_ν = ∏_{m<k} (α_q(ν+m−1) τ̃' + [ν+m−1]_q σ̃''/2)`.
pub fn c_nu_k(h: &HyperSpec, nu: i64, k: u32) -> RatFunc {
    (0..k as i64).fold(RatFunc::one(), |acc, m| &acc * &h.lambda_bracket(Nu::int(nu + m)))
}
