//! Checking a derived relation directly on finite Φ sums.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::compare::eval_point;
use super::{DerivedRelation, RelationSpec};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::lattice::{T, U, X};
use crate::phi::{check_boundary, phi_sum, shift_weights, weight_from_pearson};

/// A numeric instance: grid `s = lo..hi−1`, rational `t`, coefficient values
/// and the integer base `ν`.
#[derive(Clone, Debug)]
pub struct WeightGrid {
    pub lo: i64,
    pub hi: i64,
    pub t: Rational,
    pub n: i64,
    pub params: BTreeMap<String, Rational>,
}

impl WeightGrid {
    /// Values of `a, b, c, f, g` making `σ(lo) = 0` and `φ_{ν0}(hi − 1) = 0`,
    /// so `σρ_{ν0}` vanishes at both ends of the grid.
    pub fn engineered(spec: &RelationSpec, n: i64, lo: i64, hi: i64, t: Rational) -> Self {
        let q = &t * &t;
        let nu0 = n + spec.nu0();
        let a = Rational::from_int(3);
        let r1 = q.pow(lo as i32).expect("nonzero q");
        let r2 = Rational::new(7, 2);
        let b = -(&a * &(&r1 + &r2));
        let c = &(&a * &r1) * &r2;
        let root = q.pow((hi - 1 + nu0) as i32).expect("nonzero q");
        let f = Rational::new(-5, 3);
        let g = -(&(&c + &(&f * &(&root * &root))) / &root);
        let mut params = BTreeMap::new();
        for (k, v) in [("a", a), ("b", b), ("c", c), ("f", f), ("g", g)] {
            params.insert(String::from(k), v);
        }
        WeightGrid { lo, hi, t, n, params }
    }

    fn point(&self, x: &Rational) -> BTreeMap<String, Rational> {
        let mut pt = self.params.clone();
        pt.insert(T.into(), self.t.clone());
        pt.insert(U.into(), self.t.pow(self.n as i32).expect("nonzero t"));
        pt.insert(X.into(), x.clone());
        pt
    }
}

/// `Σ A_i(z) Φ_{ν_i,μ_i}(z)` at each `X = q^z`; boundary violations are errors.
pub fn relation_sums(rel: &DerivedRelation, spec: &RelationSpec, grid: &WeightGrid, x_points: &[Rational]) -> Result<Vec<Rational>> {
    let h = &spec.hyper;
    let n = grid.n;
    let nu0 = n + spec.nu0();
    let mu0 = n + spec.mu0();
    let w0 = weight_from_pearson(h, nu0, grid.lo, grid.hi, Rational::one(), &grid.t, &grid.params)?;
    let tables = spec
        .triples
        .iter()
        .map(|&(dn, _)| shift_weights(h, &w0, (dn - spec.nu0()) as u32, &grid.params))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(x_points.len());
    for x in x_points {
        if !check_boundary(h, &w0, mu0, x, rel.deg_q() as u32, &grid.params)? {
            return Err(Error::BoundaryViolated(alloc::format!("X = {x}")));
        }
        let pt = grid.point(x);
        let mut acc = Rational::zero();
        for (i, &(_, dm)) in spec.triples.iter().enumerate() {
            let ai = eval_point(&rel.a[i], &pt)?;
            acc += &(&ai * &phi_sum(&tables[i], n + dm, x)?);
        }
        out.push(acc);
    }
    Ok(out)
}

/// True iff the relation holds exactly at every point.
pub fn verify_on_weights(rel: &DerivedRelation, spec: &RelationSpec, grid: &WeightGrid, x_points: &[Rational]) -> Result<bool> {
    Ok(relation_sums(rel, spec, grid, x_points)?.iter().all(|v| v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::solve_relation;

    #[test]
    fn derived_relation_holds_on_engineered_grid() {
        let spec = RelationSpec::symbolic([(0, -1), (0, 0), (1, 0)]).unwrap();
        let rel = solve_relation(&spec).unwrap();
        let t = Rational::new(2, 3);
        let grid = WeightGrid::engineered(&spec, 3, 1, 5, t.clone());
        let q = &t * &t;
        let xs: Vec<Rational> = (7..10).map(|k| q.pow(-k).unwrap()).collect();
        assert!(verify_on_weights(&rel, &spec, &grid, &xs).unwrap());
    }

    #[test]
    fn boundary_violation_is_reported() {
        let spec = RelationSpec::symbolic([(0, -1), (0, 0), (1, 0)]).unwrap();
        let rel = solve_relation(&spec).unwrap();
        let t = Rational::new(2, 3);
        let mut grid = WeightGrid::engineered(&spec, 3, 1, 5, t.clone());
        // shorter grid: φ root now lies outside, ρ(hi) ≠ 0
        grid.hi = 4;
        let xs = [t.pow(-14).unwrap()];
        assert!(matches!(verify_on_weights(&rel, &spec, &grid, &xs), Err(Error::BoundaryViolated(_))));
    }
}
