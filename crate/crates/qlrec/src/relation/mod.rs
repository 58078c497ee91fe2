//! Three-term relations `Σ A_i(z) Φ_{ν_i,μ_i}(z) = 0` between Φ sums.
//!
//! The coefficients are found by writing `Π(s)` with unknown `A_i`, making
//! the ansatz polynomial `Q(s)` and equating powers of `S = q^s` in
//!
//! `φ_{ν0}(s)[x_{ν0−μ0}(s) − x_{ν0−μ0}(z)]Q(s+1) − σ(s)[x_{ν0−μ0}(s+μ0) − x_{ν0−μ0}(z)]Q(s) = ∇x_{ν0+1}(s)Π(s)`.

pub mod compare;
pub mod printed;
pub mod weights;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{nullspace, MultiPoly, PolyValue, RatFunc};
use crate::hyper::HyperSpec;
use crate::lattice::{gen_power_int, t_diff, x_shifted, LatticeSpec, Nu, S, X};

pub use compare::{compare_up_to_factor, Sampler};
pub use weights::{verify_on_weights, WeightGrid};

/// Offsets `(dν_i, dμ_i)` from the common base `ν`.
pub type Triples = [(i64, i64); 3];

#[derive(Clone, Debug)]
pub struct RelationSpec {
    pub triples: Triples,
    pub hyper: HyperSpec,
    /// The common base, symbolic (`u`) or an integer.
    pub base: Nu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `Q` was a nonzero constant and is scaled to 1.
    K1,
    /// Primitive, with positive leading rational on `A_3`.
    Primitive,
}

impl Normalization {
    pub fn tag(self) -> &'static str {
        match self {
            Normalization::K1 => "k=1",
            Normalization::Primitive => "primitive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DerivedRelation {
    pub triples: Triples,
    pub base: Nu,
    /// `A_1, A_2, A_3` as polynomials in `X = q^z`.
    pub a: [PolyValue; 3],
    /// `Q` as a polynomial in `S`.
    pub q: PolyValue,
    /// `Π_i` with `Π = Σ A_i Π_i`, polynomials in `S`.
    pub pi: [PolyValue; 3],
    pub deg_pi: usize,
    pub normalization: Normalization,
}

/// `σ`, `τ` with `φ_0 = f q^(2s) + g q^s + c` kept as the symbols `f`, `g`:
/// `d = (f − a)/(t − 1/t)`, `e = (g − b)/(t − 1/t)`.
pub fn symbolic_fg_spec() -> HyperSpec {
    let td = t_diff();
    let (a, b) = (RatFunc::var("a"), RatFunc::var("b"));
    let d = (&RatFunc::var("f") - &a).checked_div(&td).expect("nonzero");
    let e = (&RatFunc::var("g") - &b).checked_div(&td).expect("nonzero");
    HyperSpec::new(a, b, RatFunc::var("c"), d, e).expect("valid")
}

impl RelationSpec {
    pub fn new(triples: Triples, hyper: HyperSpec, base: Nu) -> Result<Self> {
        for i in 0..3 {
            for j in i + 1..3 {
                if triples[i] == triples[j] {
                    return Err(Error::DegenerateSpec(alloc::format!(
                        "triples {} and {} coincide, so Π vanishes for A_{} = −A_{}",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(RelationSpec { triples, hyper, base })
    }

    /// Generic `σ`, `τ` in terms of `a, b, c, f, g` and symbolic `ν`.
    pub fn symbolic(triples: Triples) -> Result<Self> {
        Self::new(triples, symbolic_fg_spec(), Nu::symbolic())
    }

    pub fn nu0(&self) -> i64 {
        self.triples.iter().map(|t| t.0).min().unwrap()
    }

    pub fn mu0(&self) -> i64 {
        self.triples.iter().map(|t| t.1).max().unwrap()
    }

    fn nu(&self, off: i64) -> Nu {
        self.base.plus(off)
    }
}

fn poly_s(r: &RatFunc) -> PolyValue {
    PolyValue::from_ratfunc(r, S).expect("polynomial in S")
}

/// `Π_i(s) = q^(μ_i(ν0−ν_i)/2) [x_{ν0}(s) − x_{ν0}(z−μ_i−1)]^(μ0−μ_i) φ(s+ν0)···φ(s+ν_i−1)`.
pub fn build_pi(spec: &RelationSpec) -> [PolyValue; 3] {
    let l = LatticeSpec::q_canonical();
    let (n0, m0) = (spec.nu0(), spec.mu0());
    let s = RatFunc::var(S);
    let x = RatFunc::var(X);
    let mut out: [PolyValue; 3] = Default::default();
    for (i, &(dn, dm)) in spec.triples.iter().enumerate() {
        let k = (dn - n0) as i32;
        let pre = spec.nu(dm).neg().half_power().pow(k).expect("monomial");
        let z_shift = x.checked_div(&spec.nu(dm + 1).power()).expect("monomial");
        let gp = gen_power_int(&l, spec.nu(n0), &s, &z_shift, (m0 - dm) as u32).expect("generalized power");
        let rho = spec.hyper.rho_shift_product(spec.nu(n0), k as u32);
        out[i] = poly_s(&(&(&pre * &gp) * &rho));
    }
    out
}

fn degree(p: &PolyValue) -> usize {
    p.degree().unwrap_or(0)
}

/// Pieces of the linear system: `L(S)` multiplying `Q(qS)`, `R(S)` multiplying `Q(S)`, and `∇x_{ν0+1}/S`.
struct System {
    lq: PolyValue,
    rq: PolyValue,
    nab: RatFunc,
}

fn system(spec: &RelationSpec) -> Result<System> {
    let (n0, m0) = (spec.nu0(), spec.mu0());
    let h = &spec.hyper;
    let s = RatFunc::var(S);
    let x = RatFunc::var(X);
    let l = LatticeSpec::q_canonical();
    let k = n0 - m0;
    let phi = poly_s(&h.phi_nu_at(spec.nu(n0), &s)?);
    let lin1 = poly_s(&(&x_shifted(&l, k, &s) - &x_shifted(&l, k, &x)));
    let s_mu = &s * &spec.nu(m0).power();
    let lin2 = poly_s(&(&x_shifted(&l, k, &s_mu) - &x_shifted(&l, k, &x)));
    let nab = &spec.nu(n0).half_power() * &t_diff();
    Ok(System { lq: &phi * &lin1, rq: &h.sigma_poly() * &lin2, nab })
}

/// Columns: `A_1, A_2, A_3, q_0, …, q_D`; rows: powers of `S`.
fn matrix(sys: &System, pi: &[PolyValue; 3], deg_q: usize) -> Vec<Vec<RatFunc>> {
    let qq = crate::lattice::q();
    let mut cols: Vec<PolyValue> = Vec::new();
    for p in pi {
        // −∇x·S·Π_i
        let mut c = alloc::vec![RatFunc::zero()];
        c.extend(p.coeffs().iter().map(|v| -&(v * &sys.nab)));
        cols.push(PolyValue::new(c));
    }
    let mut qj = RatFunc::one();
    for j in 0..=deg_q {
        let shifted = sys.lq.scale(&qj);
        let diff = &shifted - &sys.rq;
        let mut c = alloc::vec![RatFunc::zero(); j];
        c.extend(diff.coeffs().iter().cloned());
        cols.push(PolyValue::new(c));
        qj = &qj * &qq;
    }
    let rows = cols.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    (0..rows).map(|r| cols.iter().map(|c| c.coeff(r)).collect()).collect()
}

fn x_degree(v: &[RatFunc]) -> i64 {
    v.iter().map(|e| e.numer().degree_range(X).0 as i64).sum()
}

fn to_x_poly(r: &RatFunc) -> PolyValue {
    PolyValue::from_ratfunc(r, X).expect("polynomial in X")
}

/// Solves for `A_1, A_2, A_3` and `Q`, escalating `deg Q` from `max(0, deg Π − 2)` to `deg Π`.
pub fn solve_relation(spec: &RelationSpec) -> Result<DerivedRelation> {
    let pi = build_pi(spec);
    let deg_pi = pi.iter().map(degree).max().unwrap_or(0);
    let sys = system(spec)?;
    let lo = deg_pi.saturating_sub(2);
    for deg_q in lo..=deg_pi.max(lo) {
        let m = matrix(&sys, &pi, deg_q);
        let ns = nullspace(&m)?;
        let mut cands: Vec<Vec<RatFunc>> = ns.into_iter().filter(|v| v[..3].iter().any(|e| !e.is_zero())).collect();
        if cands.is_empty() {
            continue;
        }
        // smallest total X-degree, then canonical order of the A entries
        cands.sort_by(|a, b| {
            x_degree(&a[..3]).cmp(&x_degree(&b[..3])).then_with(|| {
                let ka: Vec<&MultiPoly> = a[..3].iter().map(|e| e.numer()).collect();
                let kb: Vec<&MultiPoly> = b[..3].iter().map(|e| e.numer()).collect();
                ka.cmp(&kb)
            })
        });
        let v = cands.swap_remove(0);
        return Ok(finish(spec, v, pi, deg_pi));
    }
    Err(Error::NoRelation(deg_pi))
}

fn finish(spec: &RelationSpec, v: Vec<RatFunc>, pi: [PolyValue; 3], deg_pi: usize) -> DerivedRelation {
    let qcoef = &v[3..];
    let q_const = qcoef.iter().skip(1).all(|e| e.is_zero()) && !qcoef[0].is_zero() && !qcoef[0].has_var(X);
    let (scale, normalization) = if q_const {
        (qcoef[0].recip().expect("nonzero"), Normalization::K1)
    } else {
        let lead = v[..3]
            .iter()
            .rev()
            .find(|e| !e.is_zero())
            .map(|e| to_x_poly(e))
            .and_then(|p| p.coeffs().last().cloned())
            .map(|c| c.numer().leading_coeff())
            .expect("nonzero A");
        let sign = if lead.is_negative() { -RatFunc::one() } else { RatFunc::one() };
        (sign, Normalization::Primitive)
    };
    let a: Vec<PolyValue> = v[..3].iter().map(|e| to_x_poly(&(e * &scale))).collect();
    let q = PolyValue::new(qcoef.iter().map(|e| e * &scale).collect());
    DerivedRelation {
        triples: spec.triples,
        base: spec.base,
        a: [a[0].clone(), a[1].clone(), a[2].clone()],
        q,
        pi,
        deg_pi,
        normalization,
    }
}

/// Residual of the defining equation with `rel` substituted, as a polynomial in `S`.
pub fn residual(rel: &DerivedRelation, spec: &RelationSpec) -> Result<PolyValue> {
    let l = LatticeSpec::q_canonical();
    let (n0, m0) = (spec.nu0(), spec.mu0());
    let h = &spec.hyper;
    let s = RatFunc::var(S);
    let x = RatFunc::var(X);
    let k = n0 - m0;
    let qs = rel.q.to_ratfunc(S);
    let qs1 = rel.q.eval(&(&s * &crate::lattice::q()));
    let phi = h.phi_nu_at(spec.nu(n0), &s)?;
    let lhs1 = &(&phi * &(&x_shifted(&l, k, &s) - &x_shifted(&l, k, &x))) * &qs1;
    let s_mu = &s * &spec.nu(m0).power();
    let lhs2 = &(&h.sigma_at(&s) * &(&x_shifted(&l, k, &s_mu) - &x_shifted(&l, k, &x))) * &qs;
    let nab = &(&spec.nu(n0 + 1).half_power() * &s) * &(&RatFunc::one() - &crate::lattice::t_pow(-2));
    let pi = build_pi(spec);
    let mut pis = RatFunc::zero();
    for i in 0..3 {
        pis = &pis + &(&rel.a[i].to_ratfunc(X) * &pi[i].to_ratfunc(S));
    }
    let r = &(&lhs1 - &lhs2) - &(&nab * &pis);
    PolyValue::from_ratfunc(&r, S)
}

/// True iff the residual vanishes identically.
pub fn residual_check(rel: &DerivedRelation, spec: &RelationSpec) -> bool {
    residual(rel, spec).map(|p| p.is_zero()).unwrap_or(false)
}

impl DerivedRelation {
    /// Substitutes symbols in every coefficient.
    pub fn substitute(&self, b: &BTreeMap<String, RatFunc>) -> Result<DerivedRelation> {
        let sub = |p: &PolyValue| p.map(|c| c.substitute(b));
        Ok(DerivedRelation {
            triples: self.triples,
            base: self.base,
            a: [sub(&self.a[0])?, sub(&self.a[1])?, sub(&self.a[2])?],
            q: sub(&self.q)?,
            pi: [sub(&self.pi[0])?, sub(&self.pi[1])?, sub(&self.pi[2])?],
            deg_pi: self.deg_pi,
            normalization: self.normalization,
        })
    }

    pub fn deg_q(&self) -> usize {
        self.q.degree().unwrap_or(0)
    }
}

/// Bindings `u ↦ t^n`.
pub fn base_binding(n: i64) -> BTreeMap<String, RatFunc> {
    let mut b = BTreeMap::new();
    b.insert(crate::lattice::U.into(), crate::lattice::t_pow(n));
    b
}

/// Bindings `f ↦ a + d(t − 1/t)`, `g ↦ b + e(t − 1/t)` from a spec.
pub fn fg_binding(h: &HyperSpec) -> BTreeMap<String, RatFunc> {
    let (f, g) = h.phi0_fg();
    let mut b = BTreeMap::new();
    b.insert("f".into(), f);
    b.insert("g".into(), g);
    b.insert("a".into(), h.a.clone());
    b.insert("b".into(), h.b.clone());
    b.insert("c".into(), h.c.clone());
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_triples_are_degenerate() {
        let e = RelationSpec::symbolic([(0, 0), (0, 0), (0, 0)]).unwrap_err();
        assert!(matches!(e, Error::DegenerateSpec(_)));
    }

    #[test]
    fn pi_for_phi_products() {
        let spec = RelationSpec::symbolic([(0, 0), (1, 0), (2, 0)]).unwrap();
        let pi = build_pi(&spec);
        let s = RatFunc::var(S);
        let nu = Nu::symbolic();
        let h = &spec.hyper;
        let phi0 = h.phi0_shifted(&s, &nu.power());
        let phi1 = h.phi0_shifted(&s, &nu.plus(1).power());
        assert_eq!(pi[0].to_ratfunc(S), RatFunc::one());
        let w = nu.neg().half_power();
        assert_eq!(pi[1].to_ratfunc(S), &w * &phi0);
        assert_eq!(pi[2].to_ratfunc(S), &(&w.pow(2).unwrap() * &phi0) * &phi1);
    }

    #[test]
    fn solves_first_example() {
        let spec = RelationSpec::symbolic([(0, -1), (0, 0), (1, 0)]).unwrap();
        let rel = solve_relation(&spec).unwrap();
        assert_eq!(rel.deg_pi, 2);
        assert_eq!(rel.normalization, Normalization::K1);
        assert!(residual_check(&rel, &spec));
        let mut bad = rel.clone();
        bad.a[0] = &bad.a[0] + &PolyValue::one();
        assert!(!residual_check(&bad, &spec));
    }
}
