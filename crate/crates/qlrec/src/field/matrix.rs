//! Exact linear algebra over rational functions.
//!
//! Rows are cleared of denominators first so elimination runs over
//! polynomials with the fraction-free Bareiss scheme.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::rational::{rational_content, Rational};
use crate::error::Result;

pub type RFMatrix = Vec<Vec<RatFunc>>;

fn clear_row(row: &[RatFunc]) -> Vec<MultiPoly> {
    let mut lcm: BTreeMap<MultiPoly, u32> = BTreeMap::new();
    for e in row {
        for (f, m) in e.den_factors() {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*m);
        }
    }
    let mut l = MultiPoly::one();
    for (f, m) in &lcm {
        l = &l * &f.pow(*m);
    }
    let lr = RatFunc::from_poly(l);
    row.iter()
        .map(|e| {
            let p = e * &lr;
            match p.as_poly() {
                Some(p) => p.clone(),
                // factors of different rows may overlap without being equal
                None => {
                    let d = p.denom();
                    p.numer().div_exact(&d).expect("row denominator cleared")
                }
            }
        })
        .collect()
}

/// Fraction-free row echelon form; returns the pivot columns.
fn bareiss(a: &mut [Vec<MultiPoly>]) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut prev = MultiPoly::one();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pick = (rank..rows)
            .filter(|&r| !a[r][c].is_zero())
            .min_by_key(|&r| a[r][c].nterms());
        let Some(p) = pick else { continue };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        for i in rank + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let v = &(&piv * &a[i][j]) - &(&lead * &a[rank][j]);
                a[i][j] = if prev.is_one() {
                    v
                } else {
                    match v.div_exact(&prev) {
                        Some(q) => q,
                        None => v,
                    }
                };
            }
            a[i][c] = MultiPoly::zero();
        }
        prev = piv;
        pivots.push(c);
        rank += 1;
    }
    pivots
}

/// Makes a polynomial vector primitive and strips the common monomial.
fn normalize(v: &mut [MultiPoly]) {
    let nz: Vec<&MultiPoly> = v.iter().filter(|p| !p.is_zero()).collect();
    if nz.is_empty() {
        return;
    }
    let mut mins: Option<BTreeMap<alloc::string::String, i32>> = None;
    for p in &nz {
        let me: BTreeMap<_, _> = p.min_exponents().into_iter().collect();
        mins = Some(match mins {
            None => me,
            Some(m) => {
                let mut out = BTreeMap::new();
                let keys: Vec<_> = m.keys().chain(me.keys()).cloned().collect();
                for k in keys {
                    let a = m.get(&k).copied().unwrap_or(0);
                    let b = me.get(&k).copied().unwrap_or(0);
                    out.insert(k, a.min(b));
                }
                out
            }
        });
    }
    let shift: Vec<(alloc::string::String, i32)> =
        mins.unwrap_or_default().into_iter().filter(|(_, e)| *e != 0).map(|(k, e)| (k, -e)).collect();
    let coeffs: Vec<Rational> = nz.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
    let mut c = rational_content(coeffs.iter());
    let first = nz[0].leading_coeff();
    if first.is_negative() {
        c = -c;
    }
    let inv = c.recip().expect("nonzero content");
    let sh: Vec<(&str, i32)> = shift.iter().map(|(k, e)| (k.as_str(), *e)).collect();
    for p in v.iter_mut() {
        if !p.is_zero() {
            *p = p.shift(&sh).scale(&inv);
        }
    }
}

/// Basis of the right nullspace `{x : M x = 0}`.
///
/// Each basis vector is polynomial, primitive and free of a common monomial
/// factor; its first nonzero entry has positive leading coefficient.
pub fn nullspace(m: &[Vec<RatFunc>]) -> Result<Vec<Vec<RatFunc>>> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut a: Vec<Vec<MultiPoly>> = m.iter().filter(|r| r.iter().any(|e| !e.is_zero())).map(|r| clear_row(r)).collect();
    let pivots = bareiss(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut x: Vec<MultiPoly> = alloc::vec![MultiPoly::zero(); cols];
        x[f] = match pivots.last() {
            Some(&pc) => a[pivots.len() - 1][pc].clone(),
            None => MultiPoly::one(),
        };
        for i in (0..pivots.len()).rev() {
            let pc = pivots[i];
            let mut s = MultiPoly::zero();
            for j in pc + 1..cols {
                if !x[j].is_zero() && !a[i][j].is_zero() {
                    s = &s + &(&a[i][j] * &x[j]);
                }
            }
            let s = -s;
            let d = &a[i][pc];
            match s.div_exact(d) {
                Some(v) => x[pc] = v,
                None => {
                    for xj in x.iter_mut() {
                        if !xj.is_zero() {
                            *xj = &*xj * d;
                        }
                    }
                    x[pc] = s;
                }
            }
        }
        normalize(&mut x);
        out.push(x.into_iter().map(RatFunc::from_poly).collect());
    }
    Ok(out)
}

/// `M x` for a rational-function matrix.
pub fn mat_vec(m: &[Vec<RatFunc>], x: &[RatFunc]) -> Vec<RatFunc> {
    m.iter()
        .map(|r| {
            let mut acc = RatFunc::zero();
            for (a, b) in r.iter().zip(x) {
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
        .collect()
}

/// Rank of a rational-function matrix.
pub fn rank(m: &[Vec<RatFunc>]) -> usize {
    let mut a: Vec<Vec<MultiPoly>> = m.iter().map(|r| clear_row(r)).collect();
    bareiss(&mut a).len()
}
