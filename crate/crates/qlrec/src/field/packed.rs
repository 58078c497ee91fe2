//! Heap-based multiplication and exact division of integer polynomials whose
//! exponent rows pack into one machine key.
//!
//! A row `e` is packed in mixed radix as the digits `(deg e, e_1, …, e_k)`
//! taken relative to a bounding box, so key order is graded lexicographic
//! order and packing is additive. Coefficients run in `i128` with checked
//! arithmetic and fall back to `BigInt` on overflow.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

trait Coef: Clone + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `acc + a*b`, `None` on overflow.
    fn mul_add(acc: &Self, a: &Self, b: &Self, sign: bool) -> Option<Self>;
    /// Exact quotient; `Some(None)` if not exact.
    fn div(&self, d: &Self) -> Option<Option<Self>>;
}

impl Coef for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_add(acc: &Self, a: &Self, b: &Self, sign: bool) -> Option<Self> {
        let p = a.checked_mul(*b)?;
        if sign {
            acc.checked_add(p)
        } else {
            acc.checked_sub(p)
        }
    }
    fn div(&self, d: &Self) -> Option<Option<Self>> {
        if *d == -1 {
            return self.checked_neg().map(Some);
        }
        Some(if self % d == 0 { Some(self / d) } else { None })
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_add(acc: &Self, a: &Self, b: &Self, sign: bool) -> Option<Self> {
        let p = a * b;
        Some(if sign { acc + p } else { acc - p })
    }
    fn div(&self, d: &Self) -> Option<Option<Self>> {
        let (q, r) = self.div_rem(d);
        Some(if Zero::is_zero(&r) { Some(q) } else { None })
    }
}

/// Per-coordinate bounds of `(deg, e_1, …, e_k)` over some rows.
fn bounds(k: usize, rows: &[i32]) -> (Vec<i64>, Vec<i64>) {
    let mut lo = vec![i64::MAX; k + 1];
    let mut hi = vec![i64::MIN; k + 1];
    for row in rows.chunks(k) {
        let d: i64 = row.iter().map(|&x| x as i64).sum();
        for (j, v) in core::iter::once(d).chain(row.iter().map(|&x| x as i64)).enumerate() {
            lo[j] = lo[j].min(v);
            hi[j] = hi[j].max(v);
        }
    }
    (lo, hi)
}

struct Packing {
    k: usize,
    lo: Vec<i64>,
    width: Vec<i128>,
}

impl Packing {
    /// `reach` bounds the absolute value of every coordinate that is packed.
    fn new(k: usize, lo: Vec<i64>, hi: &[i64], reach: i64) -> Option<Packing> {
        let width: Vec<i128> = (0..=k).map(|j| (hi[j] - lo[j] + 1) as i128).collect();
        let total = width.iter().try_fold(1i128, |acc, w| acc.checked_mul(*w))?;
        total.checked_mul(k as i128 + 2)?.checked_mul(reach as i128 + 1)?.checked_mul(4)?;
        Some(Packing { k, lo, width })
    }

    /// Linear key without the box offset, defined for any row.
    fn linear(&self, e: &[i32]) -> i128 {
        let d: i64 = e.iter().map(|&x| x as i64).sum();
        let mut key = d as i128;
        for j in 0..self.k {
            key = key * self.width[j + 1] + e[j] as i128;
        }
        key
    }

    fn origin(&self) -> i128 {
        let mut key = self.lo[0] as i128;
        for j in 0..self.k {
            key = key * self.width[j + 1] + self.lo[j + 1] as i128;
        }
        key
    }

    /// Row of a linear key that lies in the box.
    fn decode(&self, key: i128, out: &mut [i32]) {
        let mut rest = key - self.origin();
        for j in (0..self.k).rev() {
            out[j] = (rest.rem_euclid(self.width[j + 1]) as i64 + self.lo[j + 1]) as i32;
            rest = rest.div_euclid(self.width[j + 1]);
        }
    }
}

fn reach(bs: &[&[i64]]) -> i64 {
    bs.iter().flat_map(|b| b.iter()).map(|v| v.abs()).max().unwrap_or(0)
}

fn small(cs: &[BigInt]) -> Option<Vec<i128>> {
    cs.iter().map(|c| c.to_i128()).collect()
}

fn bits(cs: &[BigInt]) -> u64 {
    cs.iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Merges the streams `a_i * b` in descending key order.
fn heap_mul<C: Coef>(ka: &[i128], ca: &[C], kb: &[i128], cb: &[C]) -> Option<(Vec<i128>, Vec<C>)> {
    let mut heap: BinaryHeap<(i128, usize, usize)> = BinaryHeap::with_capacity(ka.len());
    for i in 0..ka.len() {
        heap.push((ka[i] + kb[0], i, 0));
    }
    let mut keys = Vec::new();
    let mut coeffs = Vec::new();
    while let Some(&(key, _, _)) = heap.peek() {
        let mut acc = C::zero();
        while let Some(&(k2, i, j)) = heap.peek() {
            if k2 != key {
                break;
            }
            heap.pop();
            acc = C::mul_add(&acc, &ca[i], &cb[j], true)?;
            if j + 1 < kb.len() {
                heap.push((ka[i] + kb[j + 1], i, j + 1));
            }
        }
        if !acc.is_zero() {
            keys.push(key);
            coeffs.push(acc);
        }
    }
    Some((keys, coeffs))
}

/// Largest number of pairwise products materialized by `sort_mul`.
const SORT_LIMIT: usize = 1 << 21;

/// All pairwise products sorted by key and merged. The caller guarantees
/// that no partial sum overflows.
fn sort_mul(ka: &[i128], ca: &[i128], kb: &[i128], cb: &[i128]) -> (Vec<i128>, Vec<i128>) {
    let mut terms: Vec<(i128, i128)> = Vec::with_capacity(ka.len() * kb.len());
    for (x, a) in ka.iter().zip(ca) {
        for (y, b) in kb.iter().zip(cb) {
            terms.push((x + y, a * b));
        }
    }
    terms.sort_unstable_by(|s, t| t.0.cmp(&s.0));
    let mut keys = Vec::new();
    let mut coeffs = Vec::new();
    let mut it = terms.into_iter().peekable();
    while let Some((key, mut acc)) = it.next() {
        while let Some(&(k2, c)) = it.peek() {
            if k2 != key {
                break;
            }
            acc += c;
            it.next();
        }
        if acc != 0 {
            keys.push(key);
            coeffs.push(acc);
        }
    }
    (keys, coeffs)
}

/// Product of two polynomials given as descending rows with integer
/// coefficients. `None` when the keys do not fit.
pub(crate) fn mul(k: usize, ea: &[i32], ia: &[BigInt], eb: &[i32], ib: &[BigInt]) -> Option<(Vec<i32>, Vec<BigInt>)> {
    let (la, ha) = bounds(k, ea);
    let (lb, hb) = bounds(k, eb);
    let lo: Vec<i64> = la.iter().zip(&lb).map(|(a, b)| a + b).collect();
    let hi: Vec<i64> = ha.iter().zip(&hb).map(|(a, b)| a + b).collect();
    let r = reach(&[&la, &ha, &lb, &hb, &lo, &hi]);
    let pk = Packing::new(k, lo, &hi, r)?;
    // the smaller factor drives the heap
    let (ea, ia, eb, ib) = if ia.len() <= ib.len() { (ea, ia, eb, ib) } else { (eb, ib, ea, ia) };
    let ka: Vec<i128> = ea.chunks(k).map(|r| pk.linear(r)).collect();
    let kb: Vec<i128> = eb.chunks(k).map(|r| pk.linear(r)).collect();
    let fits = bits(ia) + bits(ib) + 64 - (ia.len().min(ib.len()) as u64).leading_zeros() as u64 <= 125;
    let (keys, coeffs) = match (fits, small(ia), small(ib)) {
        (true, Some(sa), Some(sb)) => {
            let (keys, cs) = if ka.len().saturating_mul(kb.len()) <= SORT_LIMIT {
                sort_mul(&ka, &sa, &kb, &sb)
            } else {
                heap_mul(&ka, &sa, &kb, &sb)?
            };
            (keys, cs.into_iter().map(BigInt::from).collect())
        }
        _ => heap_mul(&ka, ia, &kb, ib)?,
    };
    let mut exps = vec![0i32; keys.len() * k];
    for (key, row) in keys.iter().zip(exps.chunks_mut(k)) {
        pk.decode(*key, row);
    }
    Some((exps, coeffs))
}

enum Div<C> {
    Quot(Vec<Vec<i32>>, Vec<C>),
    NotExact,
    Overflow,
}

/// Monagan-Pearce division: the remainder is never stored, its next term is
/// the larger of the next dividend term and the top of the heap of
/// `q_i * d_j` products.
fn heap_div<C: Coef>(pk: &Packing, kp: &[i128], cp: &[C], ed: &[i32], kd: &[i128], cd: &[C], qbox: &(Vec<i64>, Vec<i64>)) -> Div<C> {
    let k = pk.k;
    let lt = &ed[..k];
    let mut heap: BinaryHeap<(i128, usize, usize)> = BinaryHeap::new();
    let mut qrows: Vec<Vec<i32>> = Vec::new();
    let mut qkeys: Vec<i128> = Vec::new();
    let mut qcs: Vec<C> = Vec::new();
    let mut ip = 0;
    let mut m = vec![0i32; k];
    loop {
        let top = heap.peek().map(|t| t.0);
        let key = match (kp.get(ip), top) {
            (None, None) => break,
            (Some(&a), None) => a,
            (None, Some(b)) => b,
            (Some(&a), Some(b)) => a.max(b),
        };
        let mut c = C::zero();
        if kp.get(ip) == Some(&key) {
            c = cp[ip].clone();
            ip += 1;
        }
        while let Some(&(k2, i, j)) = heap.peek() {
            if k2 != key {
                break;
            }
            heap.pop();
            c = match C::mul_add(&c, &qcs[i], &cd[j], false) {
                Some(v) => v,
                None => return Div::Overflow,
            };
            if j + 1 < kd.len() {
                heap.push((qkeys[i] + kd[j + 1], i, j + 1));
            }
        }
        if c.is_zero() {
            continue;
        }
        pk.decode(key, &mut m);
        let mut qe = vec![0i32; k];
        let d: i64 = m.iter().zip(lt).map(|(a, b)| (a - b) as i64).sum();
        if d < qbox.0[0] || d > qbox.1[0] {
            return Div::NotExact;
        }
        for j in 0..k {
            qe[j] = m[j] - lt[j];
            let v = qe[j] as i64;
            if qe[j] < 0 || v < qbox.0[j + 1] || v > qbox.1[j + 1] {
                return Div::NotExact;
            }
        }
        let qc = match c.div(&cd[0]) {
            None => return Div::Overflow,
            Some(None) => return Div::NotExact,
            Some(Some(q)) => q,
        };
        let qk = pk.linear(&qe);
        if kd.len() > 1 {
            heap.push((qk + kd[1], qrows.len(), 1));
        }
        qrows.push(qe);
        qkeys.push(qk);
        qcs.push(qc);
    }
    Div::Quot(qrows, qcs)
}

/// Exact quotient of integer polynomials given as descending rows.
/// `None` when the keys do not fit, `Some(None)` when `d` does not divide.
#[allow(clippy::type_complexity)]
pub(crate) fn div(k: usize, ep: &[i32], ip: &[BigInt], ed: &[i32], id: &[BigInt]) -> Option<Option<(Vec<i32>, Vec<BigInt>)>> {
    let (lo, hi) = bounds(k, ep);
    let (dlo, dhi) = bounds(k, ed);
    // every term of an exact quotient times every divisor term stays in the box
    let qbox: (Vec<i64>, Vec<i64>) = (
        lo.iter().zip(&dlo).map(|(a, b)| a - b).collect(),
        hi.iter().zip(&dhi).map(|(a, b)| a - b).collect(),
    );
    let r = reach(&[&lo, &hi, &dlo, &dhi, &qbox.0, &qbox.1]);
    let pk = Packing::new(k, lo, &hi, r)?;
    let kp: Vec<i128> = ep.chunks(k).map(|r| pk.linear(r)).collect();
    let kd: Vec<i128> = ed.chunks(k).map(|r| pk.linear(r)).collect();
    let finish = |rows: Vec<Vec<i32>>, cs: Vec<BigInt>| Some(Some((rows.concat(), cs)));
    if let (Some(sp), Some(sd)) = (small(ip), small(id)) {
        match heap_div(&pk, &kp, &sp, ed, &kd, &sd, &qbox) {
            Div::Quot(rows, cs) => return finish(rows, cs.into_iter().map(BigInt::from).collect()),
            Div::NotExact => return Some(None),
            Div::Overflow => {}
        }
    }
    match heap_div(&pk, &kp, ip, ed, &kd, id, &qbox) {
        Div::Quot(rows, cs) => finish(rows, cs),
        _ => Some(None),
    }
}
