//! Proportionality of coefficient triples by random exact instantiation.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{PolyValue, Rational};
use crate::lattice::X;

/// Seeded source of small random rationals.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn below(&mut self, n: u32) -> i64 {
        (self.rng.next_u32() % n) as i64
    }

    /// Nonzero `p/d` with `|p| ≤ 40`, `1 ≤ d ≤ 40`.
    pub fn rational(&mut self) -> Rational {
        let p = self.below(40) + 1;
        let p = if self.below(2) == 0 { p } else { -p };
        let d = self.below(40) + 1;
        Rational::new(p, d)
    }

    /// One value per symbol.
    pub fn point(&mut self, vars: &[String]) -> BTreeMap<String, Rational> {
        vars.iter().map(|v| (v.clone(), self.rational())).collect()
    }
}

/// Free symbols of a set of polynomials in `X`, including `X`.
pub fn free_symbols(polys: &[&PolyValue]) -> Vec<String> {
    let mut v: Vec<String> = alloc::vec![String::from(X)];
    for p in polys {
        for c in p.coeffs() {
            for s in c.vars() {
                if !v.contains(&s) {
                    v.push(s);
                }
            }
        }
    }
    v.sort();
    v
}

/// Evaluates a polynomial in `X` at a full numeric point.
pub fn eval_point(p: &PolyValue, pt: &BTreeMap<String, Rational>) -> Result<Rational> {
    let x = pt.get(X).cloned().unwrap_or_else(Rational::zero);
    let mut acc = Rational::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &x) + &c.eval(pt)?;
    }
    Ok(acc)
}

/// True iff `lhs` and `rhs` are proportional: every 2×2 cross product
/// `lhs_i rhs_j − lhs_j rhs_i` vanishes at `samples` random points.
pub fn compare_up_to_factor(lhs: &[PolyValue], rhs: &[PolyValue], samples: usize, seed: u64) -> Result<bool> {
    if lhs.len() != rhs.len() {
        return Err(Error::Invalid("coefficient lists differ in length".into()));
    }
    let all: Vec<&PolyValue> = lhs.iter().chain(rhs.iter()).collect();
    let vars = free_symbols(&all);
    let mut sampler = Sampler::new(seed);
    let budget = 10 * samples.max(1);
    let mut good = 0;
    for _ in 0..budget {
        if good == samples {
            break;
        }
        let pt = sampler.point(&vars);
        let l: Result<Vec<Rational>> = lhs.iter().map(|p| eval_point(p, &pt)).collect();
        let r: Result<Vec<Rational>> = rhs.iter().map(|p| eval_point(p, &pt)).collect();
        let (l, r) = match (l, r) {
            (Ok(l), Ok(r)) => (l, r),
            _ => continue,
        };
        if l.iter().all(|v| v.is_zero()) || r.iter().all(|v| v.is_zero()) {
            continue;
        }
        good += 1;
        for i in 0..l.len() {
            for j in i + 1..l.len() {
                if &l[i] * &r[j] != &l[j] * &r[i] {
                    return Ok(false);
                }
            }
        }
    }
    if good < samples {
        return Err(Error::AllSamplesDegenerate(budget));
    }
    Ok(true)
}
