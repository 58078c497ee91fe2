//! Multivariate Laurent polynomials over [`Rational`].
//!
//! Terms are kept in a flat exponent buffer sorted by descending graded
//! lexicographic order, and the variable list holds exactly the symbols that
//! occur, so structural equality is mathematical equality.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::packed;
use super::rational::{rational_content, Rational};
use crate::error::{Error, Result};

/// Exact multivariate Laurent polynomial.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    exps: Vec<i32>,
    coeffs: Vec<Rational>,
}

fn grlex(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Exponent vector ordered by graded lexicographic order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Mono {
    deg: i64,
    e: Vec<i32>,
}

impl Mono {
    fn new(e: Vec<i32>) -> Self {
        Mono { deg: e.iter().map(|&x| x as i64).sum(), e }
    }
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { vars: Arc::from(Vec::<String>::new()), exps: Vec::new(), coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { vars: Arc::from(Vec::<String>::new()), exps: Vec::new(), coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(Rational::one(), &[(name, 1)])
    }

    /// `c * prod name^exp`; repeated names are combined.
    pub fn monomial(c: Rational, powers: &[(&str, i32)]) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut m: BTreeMap<String, i32> = BTreeMap::new();
        for (n, e) in powers {
            *m.entry(n.to_string()).or_insert(0) += *e;
        }
        m.retain(|_, e| *e != 0);
        let vars: Vec<String> = m.keys().cloned().collect();
        let exps: Vec<i32> = m.values().copied().collect();
        MultiPoly { vars: Arc::from(vars), exps, coeffs: vec![c] }
    }

    /// Builds a canonical polynomial from arbitrary terms over `vars`.
    pub fn from_terms(vars: &[&str], terms: Vec<(Vec<i32>, Rational)>) -> Self {
        let mut idx: Vec<usize> = (0..vars.len()).collect();
        idx.sort_by(|&a, &b| vars[a].cmp(vars[b]));
        let mut sorted: Vec<String> = Vec::new();
        let mut col = vec![0usize; vars.len()];
        for &i in &idx {
            if sorted.last().map(|s| s == vars[i]) != Some(true) {
                sorted.push(vars[i].to_string());
            }
            col[i] = sorted.len() - 1;
        }
        let k = sorted.len();
        let mut exps = Vec::with_capacity(terms.len() * k);
        let mut coeffs = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            let mut row = vec![0i32; k];
            for (i, x) in e.iter().enumerate() {
                row[col[i]] += *x;
            }
            exps.extend_from_slice(&row);
            coeffs.push(c);
        }
        Self::canonical(Arc::from(sorted), exps, coeffs)
    }

    fn canonical(vars: Arc<[String]>, exps: Vec<i32>, coeffs: Vec<Rational>) -> Self {
        let k = vars.len();
        let n = coeffs.len();
        let mut order: Vec<usize> = (0..n).collect();
        if k > 0 {
            order.sort_by(|&a, &b| grlex(&exps[b * k..(b + 1) * k], &exps[a * k..(a + 1) * k]));
        }
        let mut out_e: Vec<i32> = Vec::with_capacity(exps.len());
        let mut out_c: Vec<Rational> = Vec::with_capacity(n);
        let mut coeffs: Vec<Option<Rational>> = coeffs.into_iter().map(Some).collect();
        for &i in &order {
            let c = coeffs[i].take().unwrap();
            let e = &exps[i * k..(i + 1) * k];
            if let Some(last) = out_c.last_mut() {
                let m = out_e.len() - k;
                if &out_e[m..] == e {
                    *last += &c;
                    continue;
                }
            }
            if let Some(last) = out_c.last() {
                if last.is_zero() {
                    out_c.pop();
                    out_e.truncate(out_e.len() - k);
                }
            }
            out_e.extend_from_slice(e);
            out_c.push(c);
        }
        if let Some(last) = out_c.last() {
            if last.is_zero() {
                out_c.pop();
                out_e.truncate(out_e.len() - k);
            }
        }
        Self::pruned(vars, out_e, out_c)
    }

    /// Drops variables that no longer occur; input must already be sorted.
    fn pruned(vars: Arc<[String]>, exps: Vec<i32>, coeffs: Vec<Rational>) -> Self {
        let k = vars.len();
        if coeffs.is_empty() {
            return Self::zero();
        }
        let mut used = vec![false; k];
        for row in exps.chunks(k.max(1)) {
            for (j, &e) in row.iter().enumerate().take(k) {
                if e != 0 {
                    used[j] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return MultiPoly { vars, exps, coeffs };
        }
        let keep: Vec<usize> = (0..k).filter(|&j| used[j]).collect();
        let nv: Vec<String> = keep.iter().map(|&j| vars[j].clone()).collect();
        let mut ne = Vec::with_capacity(coeffs.len() * keep.len());
        for row in exps.chunks(k) {
            for &j in &keep {
                ne.push(row[j]);
            }
        }
        MultiPoly { vars: Arc::from(nv), exps: ne, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn nterms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn has_var(&self, v: &str) -> bool {
        self.vars.iter().any(|x| x == v)
    }

    fn var_index(&self, v: &str) -> Option<usize> {
        self.vars.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    /// Iterates terms in descending graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        let k = self.vars.len();
        self.coeffs.iter().enumerate().map(move |(i, c)| (&self.exps[i * k..(i + 1) * k], c))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree of the leading term.
    pub fn total_degree(&self) -> i64 {
        self.terms().map(|(e, _)| e.iter().map(|&x| x as i64).sum::<i64>()).max().unwrap_or(0)
    }

    /// Max and min exponent of `v` (both 0 if absent or zero).
    pub fn degree_range(&self, v: &str) -> (i32, i32) {
        match self.var_index(v) {
            None => (0, 0),
            Some(j) => {
                let k = self.vars.len();
                let mut hi = i32::MIN;
                let mut lo = i32::MAX;
                for row in self.exps.chunks(k) {
                    hi = hi.max(row[j]);
                    lo = lo.min(row[j]);
                }
                (hi, lo)
            }
        }
    }

    pub fn degree_in(&self, v: &str) -> i32 {
        self.degree_range(v).0
    }

    fn embed(&self, target: &[String]) -> Vec<i32> {
        let k = self.vars.len();
        let kt = target.len();
        if k == kt {
            return self.exps.clone();
        }
        let map: Vec<usize> =
            self.vars.iter().map(|v| target.binary_search(v).expect("var in union")).collect();
        let mut out = vec![0i32; self.coeffs.len() * kt];
        for (i, row) in self.exps.chunks(k.max(1)).enumerate().take(self.coeffs.len()) {
            for (j, &e) in row.iter().enumerate().take(k) {
                out[i * kt + map[j]] = e;
            }
        }
        out
    }

    fn common_vars(&self, other: &MultiPoly) -> Arc<[String]> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return self.vars.clone();
        }
        if other.vars.is_empty() {
            return self.vars.clone();
        }
        if self.vars.is_empty() {
            return other.vars.clone();
        }
        Arc::from(union_vars(&self.vars, &other.vars))
    }

    fn add_scaled(&self, other: &MultiPoly, sign: bool) -> MultiPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign { other.clone() } else { -other };
        }
        let vars = self.common_vars(other);
        let k = vars.len();
        let ea = self.embed(&vars);
        let eb = other.embed(&vars);
        let (na, nb) = (self.coeffs.len(), other.coeffs.len());
        let mut exps = Vec::with_capacity(ea.len() + eb.len());
        let mut coeffs = Vec::with_capacity(na + nb);
        let (mut i, mut j) = (0, 0);
        while i < na || j < nb {
            let ord = if i == na {
                Ordering::Less
            } else if j == nb {
                Ordering::Greater
            } else {
                grlex(&ea[i * k..(i + 1) * k], &eb[j * k..(j + 1) * k])
            };
            match ord {
                Ordering::Greater => {
                    exps.extend_from_slice(&ea[i * k..(i + 1) * k]);
                    coeffs.push(self.coeffs[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    exps.extend_from_slice(&eb[j * k..(j + 1) * k]);
                    coeffs.push(if sign { other.coeffs[j].clone() } else { -&other.coeffs[j] });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign {
                        &self.coeffs[i] + &other.coeffs[j]
                    } else {
                        &self.coeffs[i] - &other.coeffs[j]
                    };
                    if !c.is_zero() {
                        exps.extend_from_slice(&ea[i * k..(i + 1) * k]);
                        coeffs.push(c);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::pruned(vars, exps, coeffs)
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_constant() {
            return self.scale(&other.coeffs[0]);
        }
        if self.is_constant() {
            return other.scale(&self.coeffs[0]);
        }
        let vars = self.common_vars(other);
        let k = vars.len();
        let ea = self.embed(&vars);
        let eb = other.embed(&vars);
        let (na, nb) = (self.coeffs.len(), other.coeffs.len());
        if na == 1 || nb == 1 {
            // monomial times polynomial keeps the order
            let (mono_e, mono_c, pe, pc) = if na == 1 {
                (&ea[..], &self.coeffs[0], &eb, &other.coeffs)
            } else {
                (&eb[..], &other.coeffs[0], &ea, &self.coeffs)
            };
            let mut exps = Vec::with_capacity(pe.len());
            for row in pe.chunks(k) {
                for j in 0..k {
                    exps.push(row[j] + mono_e[j]);
                }
            }
            let coeffs: Vec<Rational> = pc.iter().map(|c| c * mono_c).collect();
            return Self::pruned(vars, exps, coeffs);
        }
        if let Some(p) = Self::mul_packed(&vars, &ea, &self.coeffs, &eb, &other.coeffs) {
            return p;
        }
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        let mut buf = vec![0i32; k];
        for i in 0..na {
            let ra = &ea[i * k..(i + 1) * k];
            for j in 0..nb {
                let rb = &eb[j * k..(j + 1) * k];
                for l in 0..k {
                    buf[l] = ra[l] + rb[l];
                }
                let c = &self.coeffs[i] * &other.coeffs[j];
                let key = Mono::new(buf.clone());
                match acc.get_mut(&key) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(key, c);
                    }
                }
            }
        }
        Self::from_map(vars, acc)
    }

    /// Integer image of a coefficient list: `(L, c_i * L)` with `L` the
    /// least common denominator.
    fn integer_coeffs(cs: &[Rational]) -> (BigInt, Vec<BigInt>) {
        let l = cs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = cs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        (l, ints)
    }

    fn mul_packed(vars: &Arc<[String]>, ea: &[i32], ca: &[Rational], eb: &[i32], cb: &[Rational]) -> Option<MultiPoly> {
        let (da, ia) = Self::integer_coeffs(ca);
        let (db, ib) = Self::integer_coeffs(cb);
        let (exps, ints) = packed::mul(vars.len(), ea, &ia, eb, &ib)?;
        let den = da * db;
        let coeffs = ints.into_iter().map(|c| Rational::from_parts(c, den.clone()).expect("nonzero denominator")).collect();
        Some(Self::pruned(vars.clone(), exps, coeffs))
    }

    fn from_map(vars: Arc<[String]>, acc: BTreeMap<Mono, Rational>) -> MultiPoly {
        let k = vars.len();
        let mut exps = Vec::with_capacity(acc.len() * k);
        let mut coeffs = Vec::with_capacity(acc.len());
        for (m, c) in acc.into_iter().rev() {
            if !c.is_zero() {
                exps.extend_from_slice(&m.e);
                coeffs.push(c);
            }
        }
        Self::pruned(vars, exps, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            exps: self.exps.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by the Laurent monomial `prod v^e`.
    pub fn shift(&self, powers: &[(&str, i32)]) -> MultiPoly {
        self * &MultiPoly::monomial(Rational::one(), powers)
    }

    /// Componentwise minimum exponent over all terms, as `(var, exp)` pairs.
    pub fn min_exponents(&self) -> Vec<(String, i32)> {
        let k = self.vars.len();
        let mut lo = vec![i32::MAX; k];
        for row in self.exps.chunks(k.max(1)).take(self.coeffs.len()) {
            for j in 0..k {
                lo[j] = lo[j].min(row[j]);
            }
        }
        self.vars.iter().cloned().zip(lo).filter(|(_, e)| *e != i32::MAX).collect()
    }

    /// Splits off the monomial content: `self = m * rest` with `rest`
    /// having zero minimum exponent in every variable.
    pub fn split_monomial(&self) -> (Vec<(String, i32)>, MultiPoly) {
        if self.is_zero() {
            return (Vec::new(), Self::zero());
        }
        let lo = self.min_exponents();
        if lo.iter().all(|(_, e)| *e == 0) {
            return (Vec::new(), self.clone());
        }
        let k = self.vars.len();
        let mut exps = self.exps.clone();
        for row in exps.chunks_mut(k) {
            for j in 0..k {
                row[j] -= lo[j].1;
            }
        }
        let rest = Self::pruned(self.vars.clone(), exps, self.coeffs.clone());
        (lo.into_iter().filter(|(_, e)| *e != 0).collect(), rest)
    }

    /// Positive rational content (gcd of numerators / lcm of denominators).
    pub fn content(&self) -> Rational {
        rational_content(self.coeffs.iter())
    }

    /// `self / content`, with the sign chosen so the leading coefficient is positive.
    pub fn primitive(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), Self::zero());
        }
        let mut c = self.content();
        if self.coeffs[0].is_negative() {
            c = -c;
        }
        let inv = c.recip().expect("nonzero content");
        (c, self.scale(&inv))
    }

    /// Exact quotient `self / d` in the Laurent ring, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_monomial() {
            let inv = d.coeffs[0].recip().ok()?;
            let powers: Vec<(String, i32)> =
                d.vars.iter().cloned().zip(d.exps.iter().map(|e| -e)).collect();
            let pw: Vec<(&str, i32)> = powers.iter().map(|(s, e)| (s.as_str(), *e)).collect();
            return Some(self.shift(&pw).scale(&inv));
        }
        let (mp, p) = self.split_monomial();
        let (md, dd) = d.split_monomial();
        let vars = p.common_vars(&dd);
        if dd.vars.iter().any(|v| !p.has_var(v)) {
            return None;
        }
        for v in dd.vars.iter() {
            if dd.degree_in(v) > p.degree_in(v) {
                return None;
            }
        }
        if dd.nterms() > p.nterms() && p.nterms() == 1 {
            return None;
        }
        let k = vars.len();
        let ep = p.embed(&vars);
        let ed = dd.embed(&vars);
        if let Some(r) = Self::div_packed(k, &ep, &p.coeffs, &ed, &dd.coeffs) {
            let (exps, coeffs) = r?;
            return Some(Self::pruned(vars, exps, coeffs).shift_owned(&Self::quotient_shift(&mp, md)));
        }
        let lt_d: Vec<i32> = ed[..k].to_vec();
        let lc_inv = dd.coeffs[0].recip().ok()?;
        let mut rem: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (i, c) in p.coeffs.iter().enumerate() {
            rem.insert(Mono::new(ep[i * k..(i + 1) * k].to_vec()), c.clone());
        }
        let mut quot: Vec<(Vec<i32>, Rational)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let mut qe = Vec::with_capacity(k);
            for j in 0..k {
                let e = m.e[j] - lt_d[j];
                if e < 0 {
                    return None;
                }
                qe.push(e);
            }
            let qc = &c * &lc_inv;
            for i in 1..dd.coeffs.len() {
                let mut e = Vec::with_capacity(k);
                for j in 0..k {
                    e.push(ed[i * k + j] + qe[j]);
                }
                let key = Mono::new(e);
                let delta = &dd.coeffs[i] * &qc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= &delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quot.push((qe, qc));
        }
        let mut exps = Vec::with_capacity(quot.len() * k);
        let mut coeffs = Vec::with_capacity(quot.len());
        for (e, c) in quot {
            exps.extend_from_slice(&e);
            coeffs.push(c);
        }
        let q = Self::pruned(vars, exps, coeffs);
        Some(q.shift_owned(&Self::quotient_shift(&mp, md)))
    }

    fn quotient_shift(mp: &[(String, i32)], md: Vec<(String, i32)>) -> Vec<(String, i32)> {
        let mut shift = mp.to_vec();
        shift.extend(md.into_iter().map(|(v, e)| (v, -e)));
        shift
    }

    fn shift_owned(&self, sh: &[(String, i32)]) -> MultiPoly {
        let pw: Vec<(&str, i32)> = sh.iter().map(|(s, e)| (s.as_str(), *e)).collect();
        self.shift(&pw)
    }

    /// Exact division with packed keys and integer coefficients. `None` if the
    /// keys do not fit; `Some(None)` if `d` does not divide.
    #[allow(clippy::type_complexity)]
    fn div_packed(k: usize, ep: &[i32], pc: &[Rational], ed: &[i32], dc: &[Rational]) -> Option<Option<(Vec<i32>, Vec<Rational>)>> {
        let (lp, ip) = Self::integer_coeffs(pc);
        let (ld, id) = Self::integer_coeffs(dc);
        let g = id.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let id: Vec<BigInt> = id.iter().map(|c| c / &g).collect();
        let Some((exps, quot)) = packed::div(k, ep, &ip, ed, &id)? else { return Some(None) };
        let den = &g * &lp;
        let coeffs = quot.into_iter().map(|c| Rational::from_parts(c * &ld, den.clone()).expect("nonzero")).collect();
        Some(Some((exps, coeffs)))
    }

    /// Evaluates with every variable bound; unbound variables are an error.
    pub fn eval(&self, vals: &BTreeMap<String, Rational>) -> Result<Rational> {
        let k = self.vars.len();
        let mut pows: Vec<BTreeMap<i32, Rational>> = vec![BTreeMap::new(); k];
        let mut base: Vec<&Rational> = Vec::with_capacity(k);
        for v in self.vars.iter() {
            base.push(
                vals.get(v).ok_or_else(|| Error::Invalid(alloc::format!("unbound symbol {v}")))?,
            );
        }
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            let mut term = c.clone();
            for j in 0..k {
                if e[j] == 0 {
                    continue;
                }
                if !pows[j].contains_key(&e[j]) {
                    let p = base[j].pow(e[j])?;
                    pows[j].insert(e[j], p);
                }
                term *= &pows[j][&e[j]];
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// Substitutes rationals for some variables, keeping the rest symbolic.
    pub fn eval_partial(&self, vals: &BTreeMap<String, Rational>) -> Result<MultiPoly> {
        let k = self.vars.len();
        let bound: Vec<Option<&Rational>> = self.vars.iter().map(|v| vals.get(v)).collect();
        if bound.iter().all(|b| b.is_none()) {
            return Ok(self.clone());
        }
        let mut pows: Vec<BTreeMap<i32, Rational>> = vec![BTreeMap::new(); k];
        let mut exps = Vec::with_capacity(self.exps.len());
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.terms() {
            let mut term = c.clone();
            for j in 0..k {
                if let Some(b) = bound[j] {
                    if e[j] != 0 {
                        if !pows[j].contains_key(&e[j]) {
                            let p = b.pow(e[j])?;
                            pows[j].insert(e[j], p);
                        }
                        term *= &pows[j][&e[j]];
                    }
                    exps.push(0);
                } else {
                    exps.push(e[j]);
                }
            }
            coeffs.push(term);
        }
        Ok(Self::canonical(self.vars.clone(), exps, coeffs))
    }

    /// Replaces `var` by the monomial `c * prod w^e`.
    pub fn subst_monomial(&self, var: &str, c: &Rational, mono: &[(&str, i32)]) -> Result<MultiPoly> {
        let j = match self.var_index(var) {
            None => return Ok(self.clone()),
            Some(j) => j,
        };
        let mut names: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        for (n, _) in mono {
            names.push(n);
        }
        let k = self.vars.len();
        let mut cp: BTreeMap<i32, Rational> = BTreeMap::new();
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (e, coef) in self.terms() {
            let d = e[j];
            let mut row: Vec<i32> = e.to_vec();
            row[j] = 0;
            for (_, me) in mono {
                row.push(me * d);
            }
            if !cp.contains_key(&d) {
                cp.insert(d, c.pow(d)?);
            }
            terms.push((row, coef * &cp[&d]));
        }
        debug_assert_eq!(names.len(), k + mono.len());
        Ok(Self::from_terms(&names, terms))
    }

    /// Coefficients with respect to `v`: pairs `(exponent, coefficient)` in ascending exponent.
    pub fn collect_in(&self, v: &str) -> Vec<(i32, MultiPoly)> {
        let j = match self.var_index(v) {
            None => {
                return if self.is_zero() { Vec::new() } else { vec![(0, self.clone())] };
            }
            Some(j) => j,
        };
        let k = self.vars.len();
        let mut groups: BTreeMap<i32, (Vec<i32>, Vec<Rational>)> = BTreeMap::new();
        for (e, c) in self.terms() {
            let g = groups.entry(e[j]).or_default();
            for (l, x) in e.iter().enumerate() {
                g.0.push(if l == j { 0 } else { *x });
            }
            g.1.push(c.clone());
        }
        let _ = k;
        groups
            .into_iter()
            .map(|(d, (exps, coeffs))| (d, Self::pruned(self.vars.clone(), exps, coeffs)))
            .collect()
    }

    /// Dense ascending coefficients in `v`, requiring nonnegative exponents.
    pub fn dense_in(&self, v: &str) -> Result<Vec<MultiPoly>> {
        let parts = self.collect_in(v);
        let mut out = Vec::new();
        for (d, p) in parts {
            if d < 0 {
                return Err(Error::Invalid(alloc::format!("negative power of {v}")));
            }
            let d = d as usize;
            if out.len() <= d {
                out.resize(d + 1, MultiPoly::zero());
            }
            out[d] = p;
        }
        Ok(out)
    }

    /// Inverse of [`MultiPoly::dense_in`].
    pub fn from_dense(v: &str, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &c.shift(&[(v, i as i32)]);
            }
        }
        acc
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.exps == other.exps && self.coeffs == other.coeffs
    }
}

impl Eq for MultiPoly {}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPoly {
    /// Canonical total order used to sort denominator factors.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.vars.cmp(&other.vars))
            .then_with(|| self.exps.cmp(&other.exps))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Default for MultiPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_scaled(rhs, true)
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_scaled(rhs, false)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_impl(rhs)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        self.add_scaled(&rhs, true)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self.add_scaled(&rhs, false)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.mul_impl(&rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            exps: self.exps.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e.iter())
                .filter(|(_, &x)| x != 0)
                .map(|(v, &x)| if x == 1 { v.clone() } else { alloc::format!("{v}^{x}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for a symbol.
pub fn sym(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}

/// Shorthand for an integer constant.
pub fn int(n: i64) -> MultiPoly {
    MultiPoly::from_int(n)
}
