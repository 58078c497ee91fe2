//! Difference-equation data `(σ, τ)` and the quantities derived from it.
//!
//! `σ(s) = a q^(2s) + b q^s + c` and `τ(s) = d q^s + e` on `x(s) = q^s`.
//! Everything is a rational function of `t`, `u` and the coefficient symbols;
//! polynomials in `s` are polynomials in `S = q^s`.

use alloc::string::String;

use crate::error::{Error, Result};
use crate::field::{PolyValue, RatFunc, Rational};
use crate::lattice::{self, alpha_q, q_number, t_diff, t_pow, LatticeSpec, Nu, S, U, X};

#[derive(Clone, Debug)]
pub struct HyperSpec {
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
    pub e: RatFunc,
    pub lattice: LatticeSpec,
}

/// `φ_ν(s) = f q^(2s) + g q^s + h`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiCoeffs {
    pub f: RatFunc,
    pub g: RatFunc,
    pub h: RatFunc,
    pub nu: Nu,
}

/// Coefficients of `σ̃(x)` and `τ̃(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TildeSplit {
    pub sigma_tilde_2: RatFunc,
    pub sigma_tilde_1: RatFunc,
    pub sigma_tilde_0: RatFunc,
    pub tau_tilde_1: RatFunc,
    pub tau_tilde_0: RatFunc,
}

fn half() -> Rational {
    Rational::new(1, 2)
}

impl HyperSpec {
    /// Validated constructor on the canonical q-lattice.
    pub fn new(a: RatFunc, b: RatFunc, c: RatFunc, d: RatFunc, e: RatFunc) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::DegenerateSigma);
        }
        for (name, v) in [("a", &a), ("b", &b), ("c", &c), ("d", &d), ("e", &e)] {
            for bad in [S, X, U] {
                if v.has_var(bad) {
                    return Err(Error::Invalid(alloc::format!("coefficient {name} depends on {bad}")));
                }
            }
        }
        Ok(HyperSpec { a, b, c, d, e, lattice: LatticeSpec::q_canonical() })
    }

    /// Fully symbolic spec with coefficients `a, b, c, d, e`.
    pub fn symbolic() -> Self {
        HyperSpec::new(RatFunc::var("a"), RatFunc::var("b"), RatFunc::var("c"), RatFunc::var("d"), RatFunc::var("e"))
            .expect("symbolic spec is valid")
    }

    pub fn from_rationals(v: [Rational; 5]) -> Result<Self> {
        let [a, b, c, d, e] = v.map(RatFunc::from_rational);
        HyperSpec::new(a, b, c, d, e)
    }

    /// `σ` as a polynomial in `x`.
    pub fn sigma_poly(&self) -> PolyValue {
        PolyValue::new(alloc::vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    /// `τ` as a polynomial in `x`.
    pub fn tau_poly(&self) -> PolyValue {
        PolyValue::new(alloc::vec![self.e.clone(), self.d.clone()])
    }

    /// `σ(s)` at the lattice coordinate `S`.
    pub fn sigma_at(&self, s: &RatFunc) -> RatFunc {
        self.sigma_poly().eval(s)
    }

    pub fn tau_at(&self, s: &RatFunc) -> RatFunc {
        self.tau_poly().eval(s)
    }

    fn require_q(&self) -> Result<()> {
        if self.lattice.is_canonical_q() {
            Ok(())
        } else {
            Err(Error::UnsupportedLattice("derived quantities use x(s) = q^s".into()))
        }
    }

    /// `(d_ν, e_ν)` with `τ_ν(s) = d_ν q^s + e_ν`.
    pub fn tau_nu_coeffs(&self, nu: Nu) -> Result<(RatFunc, RatFunc)> {
        self.require_q()?;
        let one = RatFunc::one();
        let qn = nu.power();
        let q2n = qn.pow(2)?;
        let td = t_diff();
        let pre = (&t_pow(1) * &nu.neg().half_power()).checked_div(&(&lattice::q() - &one))?;
        let dn = &pre * &(&(&self.a * &(&q2n - &one)) + &(&(&self.d * &q2n) * &td));
        let en = &pre * &(&(&self.b * &(&qn - &one)) + &(&(&self.e * &qn) * &td));
        Ok((dn, en))
    }

    /// Coefficients of `φ_ν = σ + τ_ν Δx_ν(s − ½)`.
    pub fn phi_nu_coeffs(&self, nu: Nu) -> Result<PhiCoeffs> {
        let (dn, en) = self.tau_nu_coeffs(nu)?;
        let w = &nu.half_power() * &t_diff();
        Ok(PhiCoeffs { f: &self.a + &(&dn * &w), g: &self.b + &(&en * &w), h: self.c.clone(), nu })
    }

    /// `(f, g)` of `φ_0`: `a + d(t − 1/t)`, `b + e(t − 1/t)`.
    pub fn phi0_fg(&self) -> (RatFunc, RatFunc) {
        let td = t_diff();
        (&self.a + &(&self.d * &td), &self.b + &(&self.e * &td))
    }

    pub fn tilde_split(&self) -> TildeSplit {
        let td = t_diff().scale(&half());
        TildeSplit {
            sigma_tilde_2: &self.a + &(&self.d * &td),
            sigma_tilde_1: &self.b + &(&self.e * &td),
            sigma_tilde_0: self.c.clone(),
            tau_tilde_1: self.d.clone(),
            tau_tilde_0: self.e.clone(),
        }
    }

    /// `α_q(ν−1) τ̃' + [ν−1]_q σ̃''/2`.
    pub fn lambda_bracket(&self, nu: Nu) -> RatFunc {
        let ts = self.tilde_split();
        &(&alpha_q(nu.plus(-1)) * &ts.tau_tilde_1) + &(&q_number(nu.plus(-1)) * &ts.sigma_tilde_2)
    }

    /// `λ_ν = −[ν]_q (α_q(ν−1) τ̃' + [ν−1]_q σ̃''/2)`.
    pub fn lambda_nu(&self, nu: Nu) -> RatFunc {
        -(&q_number(nu) * &self.lambda_bracket(nu))
    }

    /// `φ_ν(s)` as a polynomial in `S`.
    pub fn phi_nu_at(&self, nu: Nu, s: &RatFunc) -> Result<RatFunc> {
        let p = self.phi_nu_coeffs(nu)?;
        Ok(PolyValue::new(alloc::vec![p.h, p.g, p.f]).eval(s))
    }

    /// `ρ_ν(s+1)/ρ_ν(s) = φ_ν(s)/σ(s+1)` as a function of `S`.
    pub fn pearson_ratio(&self, nu: Nu) -> Result<RatFunc> {
        let s = RatFunc::var(S);
        let sig1 = self.sigma_at(&(&s * &lattice::q()));
        if sig1.is_zero() {
            return Err(Error::DegenerateSigma);
        }
        self.phi_nu_at(nu, &s)?.checked_div(&sig1)
    }

    /// `φ_0(s + m)` at the lattice coordinate `s`, where `q^m = shift`.
    pub fn phi0_shifted(&self, s: &RatFunc, shift: &RatFunc) -> RatFunc {
        let (f, g) = self.phi0_fg();
        let y = s * shift;
        PolyValue::new(alloc::vec![self.c.clone(), g, f]).eval(&y)
    }

    /// `ρ_{ν0+k}(s)/ρ_{ν0}(s) = φ(s+ν0) ··· φ(s+ν0+k−1)` as a function of `S`.
    pub fn rho_shift_product(&self, nu0: Nu, k: u32) -> RatFunc {
        let s = RatFunc::var(S);
        let mut acc = RatFunc::one();
        for m in 0..k {
            acc = &acc * &self.phi0_shifted(&s, &nu0.plus(m as i64).power());
        }
        acc
    }

    /// Symbols occurring in the coefficients.
    pub fn symbols(&self) -> alloc::vec::Vec<String> {
        let mut v = alloc::vec::Vec::new();
        for c in [&self.a, &self.b, &self.c, &self.d, &self.e] {
            for s in c.vars() {
                if !v.contains(&s) {
                    v.push(s);
                }
            }
        }
        v.sort();
        v
    }
}

/// `τ_ν` straight from its defining quotient
/// `[σ(s+ν) − σ(s) + τ(s+ν)Δx(s+ν−½)] / Δx_{ν−1}(s)`, as a polynomial in `S`.
pub fn tau_nu_by_quotient(h: &HyperSpec, nu: Nu) -> Result<RatFunc> {
    let s = RatFunc::var(S);
    let sn = &s * &nu.power();
    let td = t_diff();
    let dx = &sn * &td;
    let num = &(&h.sigma_at(&sn) - &h.sigma_at(&s)) + &(&h.tau_at(&sn) * &dx);
    let one = RatFunc::one();
    let den = &(&(&s * &nu.half_power()) * &t_pow(-1)) * &(&lattice::q() - &one);
    num.checked_div(&den)
}

/// `φ_ν` straight from `σ(s) + τ_ν(s) Δx_ν(s − ½)`, with `τ_ν` from the quotient.
pub fn phi_nu_by_expansion(h: &HyperSpec, nu: Nu) -> Result<RatFunc> {
    let s = RatFunc::var(S);
    let tau = tau_nu_by_quotient(h, nu)?;
    Ok(&h.sigma_at(&s) + &(&tau * &(&(&s * &nu.half_power()) * &t_diff())))
}
