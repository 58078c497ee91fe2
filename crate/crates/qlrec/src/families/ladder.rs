//! Relations `Σ B_i(x) op_i P_{n+offset_i} = 0` and their exact verification.

use alloc::string::String;
use alloc::vec::Vec;

use super::data::{published_relations, Op, PublishedRelation, Term};
use super::{c_nu_k, delta1_formula, env, ttrr_list, Delta1Convention, Family};
use crate::error::{Error, Result};
use crate::field::{common_polys, nullspace, parse_with, PolyValue, RatFunc};
use crate::lattice::{k_delta, nabla_q, q_number, t_pow, LatticeSpec, Nu};
use crate::relation::{compare_up_to_factor, solve_relation, DerivedRelation, RelationSpec, Triples};

/// Polynomial variable of the family relations.
pub const XV: &str = "x";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LadderKind {
    Ttrr,
    DeltaRaise,
    DeltaLower,
    NablaRaise,
    NablaLower,
    /// `(Δ P_{n−1}, Δ P_n, P_{n+1})`.
    LowerSystem,
    /// `(P_{n−1}, P_n, Δ P_{n+1})`.
    UpperSystem,
    Generic,
}

impl LadderKind {
    pub fn tag(self) -> String {
        match self {
            LadderKind::Ttrr => "ttrr".into(),
            LadderKind::DeltaRaise => "delta-raise".into(),
            LadderKind::DeltaLower => "delta-lower".into(),
            LadderKind::NablaRaise => "nabla-raise".into(),
            LadderKind::NablaLower => "nabla-lower".into(),
            LadderKind::LowerSystem => "lower-system".into(),
            LadderKind::UpperSystem => "upper-system".into(),
            LadderKind::Generic => "generic".into(),
        }
    }
}

/// One instance (fixed `n`) of a relation between polynomials of a family.
#[derive(Clone, Debug)]
pub struct LadderRelation {
    pub kind: LadderKind,
    pub n: i64,
    pub terms: [Term; 3],
    pub coeffs: [PolyValue; 3],
}

impl LadderRelation {
    pub fn new(kind: LadderKind, n: i64, terms: [Term; 3], coeffs: [PolyValue; 3]) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid("all coefficients vanish".into()));
        }
        Ok(LadderRelation { kind, n, terms, coeffs })
    }

    /// Largest index `n + offset` that is needed.
    pub fn max_index(&self) -> i64 {
        self.terms.iter().map(|t| self.n + t.offset).max().unwrap_or(self.n)
    }
}

/// `op P_m` with `P_m` taken from `polys`.
pub fn apply_term(polys: &[PolyValue], m: i64, op: Op) -> Result<PolyValue> {
    if m < 0 {
        return Ok(PolyValue::zero());
    }
    let p = polys
        .get(m as usize)
        .ok_or_else(|| Error::IndexMismatch(alloc::format!("P_{m} not available")))?;
    match op {
        Op::Id => Ok(p.clone()),
        Op::Delta(k) => k_delta(p, k, &LatticeSpec::q_canonical()),
        Op::Nabla => Ok(nabla_q(p)),
    }
}

/// `Σ B_i op_i P_{n+offset_i}`.
pub fn relation_residual(lr: &LadderRelation, polys: &[PolyValue]) -> Result<PolyValue> {
    let mut acc = PolyValue::zero();
    for (c, t) in lr.coeffs.iter().zip(lr.terms.iter()) {
        acc = &acc + &(c * &apply_term(polys, lr.n + t.offset, t.op)?);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyEntry {
    pub n: i64,
    pub pass: bool,
    /// Monomials left in the residual numerators; 0 on pass.
    pub residual_terms: usize,
}

pub fn check_relation(lr: &LadderRelation, polys: &[PolyValue]) -> Result<VerifyEntry> {
    let r = relation_residual(lr, polys)?;
    let terms = r.coeffs().iter().map(|c| c.nterms()).sum();
    Ok(VerifyEntry { n: lr.n, pass: r.is_zero(), residual_terms: terms })
}

/// Builds the relation for each `n` and checks it against the recurrence polynomials.
pub fn verify_poly_relation<F>(f: &Family, ns: &[i64], mut build: F) -> Result<Vec<VerifyEntry>>
where
    F: FnMut(i64) -> Result<LadderRelation>,
{
    let mut rels = Vec::with_capacity(ns.len());
    for &n in ns {
        rels.push(build(n)?);
    }
    let top = rels.iter().map(|r| r.max_index()).max().unwrap_or(0).max(0);
    let polys = ttrr_list(f, top as usize)?;
    rels.iter().map(|r| check_relation(r, &polys)).collect()
}

/// Solves the relation for `triples` with the family's `σ, τ` and base `n`.
pub fn family_relation(f: &Family, triples: Triples, n: i64) -> Result<(RelationSpec, DerivedRelation)> {
    let spec = RelationSpec::new(triples, f.hyper.clone(), Nu::int(n))?;
    let rel = solve_relation(&spec)?;
    Ok((spec, rel))
}

/// Coefficients of `X` re-read as polynomials in `x`, after instantiating a
/// symbolic base at `n`.
fn a_in_x(rel: &DerivedRelation, n: i64) -> Result<[PolyValue; 3]> {
    let rel = if rel.base.as_int().is_some() { rel.clone() } else { rel.substitute(&crate::relation::base_binding(n))? };
    Ok(rel.a)
}

/// Maps a Φ relation to one between polynomials: `B_i = A_i (C_{ν_i}^{(k_i)})^{-1} φ(s+k_0)···φ(s+k_i−1)`.
pub fn relation_a_to_b(rel: &DerivedRelation, k: [u32; 3], f: &Family, n: i64) -> Result<LadderRelation> {
    let k0 = *k.iter().min().expect("three");
    let a = a_in_x(rel, n)?;
    let mut coeffs: [PolyValue; 3] = Default::default();
    let mut terms = [Term::p(0); 3];
    for i in 0..3 {
        let (dn, dm) = rel.triples[i];
        if dm != dn - k[i] as i64 {
            return Err(Error::IndexMismatch(alloc::format!("term {}: mu offset {dm} is not {dn} - {}", i + 1, k[i])));
        }
        let nu = n + dn;
        if nu < k[i] as i64 {
            return Err(Error::IndexMismatch(alloc::format!("term {}: order {} exceeds degree {nu}", i + 1, k[i])));
        }
        let c = (&f.c_n(nu)? * &c_nu_k(&f.hyper, nu, k[i])).recip()?;
        let mut b = a[i].scale(&c);
        for m in k0..k[i] {
            b = &b * &f.phi_shift(m as i64);
        }
        coeffs[i] = b;
        terms[i] = Term { offset: dn, op: if k[i] == 0 { Op::Id } else { Op::Delta(k[i]) } };
    }
    LadderRelation::new(LadderKind::Generic, n, terms, coeffs)
}

/// Triples `(dν_i, dν_i − k_i)`.
pub fn triples_for(dnu: [i64; 3], k: [u32; 3]) -> Triples {
    [(dnu[0], dnu[0] - k[0] as i64), (dnu[1], dnu[1] - k[1] as i64), (dnu[2], dnu[2] - k[2] as i64)]
}

/// Derives and maps in one step.
pub fn family_ladder(f: &Family, dnu: [i64; 3], k: [u32; 3], n: i64, kind: LadderKind) -> Result<LadderRelation> {
    let (_, rel) = family_relation(f, triples_for(dnu, k), n)?;
    let mut lr = relation_a_to_b(&rel, k, f, n)?;
    lr.kind = kind;
    Ok(lr)
}

/// The tabulated recurrence as coefficients of `(P_{n+1}, P_n, P_{n−1})`: `(1, β_n − x, γ_n)`.
pub fn ttrr_arrangement(f: &Family, n: i64) -> Result<[PolyValue; 3]> {
    Ok([
        PolyValue::one(),
        PolyValue::new(alloc::vec![f.beta(n)?, -RatFunc::one()]),
        PolyValue::constant(f.gamma(n)?),
    ])
}

/// The derived `(1, 0, −1)` relation is proportional to the tabulated recurrence.
pub fn ttrr_recovered(f: &Family, n: i64, seed: u64) -> Result<bool> {
    let lr = family_ladder(f, [1, 0, -1], [0, 0, 0], n, LadderKind::Ttrr)?;
    compare_up_to_factor(&lr.coeffs, &ttrr_arrangement(f, n)?, 5, seed)
}

/// `C_1 y_ν + C_2 ∇y_ν/∇x + C_3 y_{ν+m} = 0` from the `(ν,ν), (ν,ν+1), (ν+m,ν+m)` relation.
pub fn nabla_ladder(f: &Family, n: i64, m: i64) -> Result<LadderRelation> {
    let (_, rel) = family_relation(f, [(0, 0), (0, 1), (m, m)], n)?;
    let a: Vec<RatFunc> = a_in_x(&rel, n)?.iter().map(|p| p.to_ratfunc(XV)).collect();
    let x = RatFunc::var(XV);
    let sigma = f.sigma().to_ratfunc(XV);
    let phim = f.phi_shift(-1).to_ratfunc(XV);
    let nabla_x = &x * &(&RatFunc::one() - &t_pow(-2));
    let br = q_number(Nu::int(n + 1));
    let ratio = f.c_n(n)?.checked_div(&f.c_n(n + m)?)?;
    let c1 = &(&(&a[0] * &br) * &phim) - &(&a[1] * &(&sigma - &phim)).checked_div(&nabla_x)?;
    let c2 = &a[1] * &sigma;
    let c3 = &(&(&br * &ratio) * &a[2]) * &phim;
    let p = common_polys(&[c1, c2, c3], XV)?;
    let kind = if m > 0 { LadderKind::NablaRaise } else { LadderKind::NablaLower };
    let terms = [Term::p(0), Term { offset: 0, op: Op::Nabla }, Term::p(m)];
    LadderRelation::new(kind, n, terms, [p[0].clone(), p[1].clone(), p[2].clone()])
}

/// Which linear system `derive_family_relation` sets up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// Unknowns multiply `(Δ P_{n−1}, Δ P_n, P_{n+1})`.
    Lower,
    /// Unknowns multiply `(P_{n−1}, P_n, Δ P_{n+1})`.
    Upper,
}

impl Pattern {
    pub fn terms(self) -> [Term; 3] {
        match self {
            Pattern::Lower => [Term::d(-1), Term::d(0), Term::p(1)],
            Pattern::Upper => [Term::p(-1), Term::p(0), Term::d(1)],
        }
    }

    pub fn n_min(self) -> i64 {
        match self {
            Pattern::Lower => 2,
            Pattern::Upper => 1,
        }
    }
}

/// The solved system: `A_i` as rational functions in `x` and the factor `K`
/// multiplying the recurrence (`K = 1` when the system is inhomogeneous).
#[derive(Clone, Debug)]
pub struct SystemSolution {
    pub a: [RatFunc; 3],
    pub k: RatFunc,
    pub relation: LadderRelation,
}

/// Rows `(coef A_1, coef A_2, coef A_3, right-hand side)` of the comparison
/// with the recurrence.
pub fn family_system(f: &Family, pattern: Pattern, n: i64, conv: Delta1Convention) -> Result<[[RatFunc; 4]; 3]> {
    if n < pattern.n_min() {
        return Err(Error::Invalid(alloc::format!("n = {n} is below {}", pattern.n_min())));
    }
    let x = RatFunc::var(XV);
    let phi = f.phi().to_ratfunc(XV);
    let z = RatFunc::zero();
    let one = RatFunc::one();
    match pattern {
        Pattern::Lower => {
            let (a1, b1, g1) = delta1_formula(f, n - 1, conv)?;
            let (a0, b0, g0) = delta1_formula(f, n, conv)?;
            let gm = f.gamma(n - 1)?;
            let r = &g1.checked_div(&gm)?;
            Ok([
                [z.clone(), a0, phi, one],
                [&a1 - r, b0, z.clone(), &f.beta(n)? - &x],
                [&b1 + &(r * &(&x - &f.beta(n - 1)?)), g0, z, f.gamma(n)?],
            ])
        }
        Pattern::Upper => {
            let (ah, bh, gh) = delta1_formula(f, n + 1, conv)?;
            Ok([
                [z.clone(), z.clone(), &(&ah * &(&x - &f.beta(n + 1)?)) + &bh, one],
                [z.clone(), phi.clone(), &gh - &(&ah * &f.gamma(n + 1)?), &f.beta(n)? - &x],
                [phi, z.clone(), z, f.gamma(n)?],
            ])
        }
    }
}

/// Solves the comparison system as a homogeneous system in `(A_1, A_2, A_3, K)`.
pub fn solve_system(rows: &[[RatFunc; 4]; 3]) -> Result<([RatFunc; 3], RatFunc)> {
    let m: Vec<Vec<RatFunc>> = rows.iter().map(|r| alloc::vec![r[0].clone(), r[1].clone(), r[2].clone(), -&r[3]]).collect();
    if let Some(v) = sparse_kernel(m.clone())? {
        let v: Vec<RatFunc> = v.iter().map(|e| e.checked_div(&v[3])).collect::<Result<_>>()?;
        return Ok(([v[0].clone(), v[1].clone(), v[2].clone()], v[3].clone()));
    }
    let ns = nullspace(&m)?;
    let v = match ns.as_slice() {
        [v] => v.clone(),
        [] => return Err(Error::SingularSystem("only the trivial solution".into())),
        _ => return Err(Error::SingularSystem(alloc::format!("{}-dimensional solution space", ns.len()))),
    };
    let v = if v[3].is_zero() { v } else { v.iter().map(|e| e.checked_div(&v[3])).collect::<Result<Vec<_>>>()? };
    Ok(([v[0].clone(), v[1].clone(), v[2].clone()], v[3].clone()))
}

/// Gauss-Jordan over rational functions, pivoting on the sparsest entry.
/// Returns the kernel vector when it is one-dimensional with nonzero last entry.
fn sparse_kernel(mut a: Vec<Vec<RatFunc>>) -> Result<Option<Vec<RatFunc>>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut free_rows: Vec<usize> = (0..a.len()).collect();
    loop {
        let used: Vec<usize> = pivots.iter().map(|p| p.1).collect();
        let pick = free_rows
            .iter()
            .flat_map(|&r| (0..cols).filter(|c| !used.contains(c)).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by_key(|&(r, c)| (a[r][c].nterms() + a[r][c].den_factors().len(), c));
        let Some((pr, pc)) = pick else { break };
        let inv = a[pr][pc].recip()?;
        a[pr] = a[pr].iter().map(|e| e * &inv).collect();
        for r in 0..a.len() {
            if r == pr || a[r][pc].is_zero() {
                continue;
            }
            let f = a[r][pc].clone();
            for c in 0..cols {
                if !a[pr][c].is_zero() {
                    a[r][c] = &a[r][c] - &(&f * &a[pr][c]);
                }
            }
        }
        free_rows.retain(|&r| r != pr);
        pivots.push((pr, pc));
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.iter().any(|p| p.1 == *c)).collect();
    let [f] = free.as_slice() else { return Ok(None) };
    let mut v = alloc::vec![RatFunc::zero(); cols];
    v[*f] = RatFunc::one();
    for &(r, c) in &pivots {
        v[c] = -&a[r][*f];
    }
    Ok(if v[cols - 1].is_zero() { None } else { Some(v) })
}

pub fn derive_family_relation(f: &Family, pattern: Pattern, n: i64, conv: Delta1Convention) -> Result<SystemSolution> {
    let rows = family_system(f, pattern, n, conv)?;
    let (a, k) = solve_system(&rows)?;
    let p = common_polys(&a, XV)?;
    let kind = match pattern {
        Pattern::Lower => LadderKind::LowerSystem,
        Pattern::Upper => LadderKind::UpperSystem,
    };
    let relation = LadderRelation::new(kind, n, pattern.terms(), [p[0].clone(), p[1].clone(), p[2].clone()])?;
    Ok(SystemSolution { a, k, relation })
}

/// Evaluates a published relation at `n`: raw coefficients as rational functions in `x`.
pub fn published_coeffs(r: &PublishedRelation, f: &Family, n: i64) -> Result<[RatFunc; 3]> {
    let mut e = f.env(n);
    for (name, expr) in &r.defs {
        let v = parse_with(expr, &e)?;
        e.insert((*name).into(), v);
    }
    Ok([parse_with(&r.coeffs[0], &e)?, parse_with(&r.coeffs[1], &e)?, parse_with(&r.coeffs[2], &e)?])
}

/// The published relation at `n` as a polynomial relation.
pub fn published_ladder(r: &PublishedRelation, f: &Family, n: i64) -> Result<LadderRelation> {
    let c = published_coeffs(r, f, n)?;
    let p = common_polys(&c, XV)?;
    let kind = if r.terms[2].op == Op::Id { LadderKind::LowerSystem } else { LadderKind::UpperSystem };
    LadderRelation::new(kind, n, r.terms, [p[0].clone(), p[1].clone(), p[2].clone()])
}

pub fn published(family: &str, label: &str) -> Option<PublishedRelation> {
    published_relations().into_iter().find(|r| r.family == family && r.label == label)
}

/// The printed Al-Salam-Carlitz I system, solved.
pub fn alsalam_printed_solution(n: i64) -> Result<[RatFunc; 3]> {
    let e = env(n);
    let raw = super::data::alsalam_printed_system();
    let mut rows: [[RatFunc; 4]; 3] = Default::default();
    for (i, r) in raw.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            rows[i][j] = parse_with(s, &e)?;
        }
    }
    Ok(solve_system(&rows)?.0)
}

#[cfg(test)]
mod tests {
    use super::super::family;
    use super::*;

    #[test]
    fn ttrr_shape_from_pipeline() {
        let f = family("alsalam1").unwrap();
        let lr = family_ladder(&f, [0, 1, -1], [0, 0, 0], 3, LadderKind::Ttrr).unwrap();
        let e = verify_poly_relation(&f, &[3], |_| Ok(lr.clone())).unwrap();
        assert!(e[0].pass);
    }

    #[test]
    fn delta_ladder_alsalam() {
        let f = family("alsalam1").unwrap();
        let e = verify_poly_relation(&f, &[2, 3], |n| family_ladder(&f, [0, 0, 1], [0, 1, 0], n, LadderKind::DeltaRaise)).unwrap();
        assert!(e.iter().all(|v| v.pass), "{e:?}");
    }

    #[test]
    fn wrong_mu_offsets_are_rejected() {
        let f = family("alsalam1").unwrap();
        let (_, rel) = family_relation(&f, [(0, 0), (0, 1), (1, 1)], 3).unwrap();
        assert!(matches!(relation_a_to_b(&rel, [0, 1, 0], &f, 3), Err(Error::IndexMismatch(_))));
    }

    #[test]
    fn upper_system_alsalam() {
        let f = family("alsalam1").unwrap();
        let s = derive_family_relation(&f, Pattern::Upper, 2, Delta1Convention::Corrected).unwrap();
        let e = verify_poly_relation(&f, &[2], |_| Ok(s.relation.clone())).unwrap();
        assert!(e[0].pass);
    }

    #[test]
    fn printed_alsalam_system_matches_its_display() {
        let r = published("alsalam1", "delta-lower").unwrap();
        for n in [2, 3] {
            let a = alsalam_printed_solution(n).unwrap();
            assert_eq!(a, published_coeffs(&r, &family("alsalam1").unwrap(), n).unwrap());
        }
    }
}
