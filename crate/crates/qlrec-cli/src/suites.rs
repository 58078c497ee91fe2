//! Verification suites. Every check is independent; results come back in
//! the order the checks were listed.

use qlrec::families::*;
use qlrec::field::Rational;
use qlrec::lattice::LatticeSpec;
use qlrec::relation::printed::{printed_relations, Form};
use qlrec::relation::{compare_up_to_factor, residual, solve_relation, verify_on_weights, RelationSpec, WeightGrid};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

pub const SUITES: [&str; 5] = ["examples31", "difeq", "families", "ladders", "all"];

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub n: Option<i64>,
    pub check: Option<&'static str>,
    pub pass: bool,
    pub residual_terms: usize,
}

impl Entry {
    fn at(v: VerifyEntry) -> Self {
        Entry { n: Some(v.n), check: None, pass: v.pass, residual_terms: v.residual_terms }
    }

    fn flag(n: i64, pass: bool) -> Self {
        Entry { n: Some(n), check: None, pass, residual_terms: 0 }
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        if let Some(n) = self.n {
            m.insert("n".into(), json!(n));
        }
        if let Some(c) = self.check {
            m.insert("check".into(), json!(c));
        }
        m.insert("pass".into(), json!(self.pass));
        m.insert("residual_terms".into(), json!(self.residual_terms));
        Value::Object(m)
    }
}

/// One named check with its per-`n` results. `published` records the
/// comparison with a printed closed form; a mismatch there is reported as a
/// discrepancy and does not decide `pass`.
#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub relation: String,
    pub family: Option<String>,
    pub results: Vec<Entry>,
    pub published: Option<Value>,
    pub discrepancy: bool,
    pub error: Option<String>,
}

impl Check {
    fn new(suite: &'static str, relation: impl Into<String>, family: Option<&str>) -> Self {
        Check {
            suite,
            relation: relation.into(),
            family: family.map(str::to_owned),
            results: Vec::new(),
            published: None,
            discrepancy: false,
            error: None,
        }
    }

    pub fn pass(&self) -> bool {
        self.error.is_none() && !self.results.is_empty() && self.results.iter().all(|e| e.pass)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), json!(self.suite));
        m.insert("relation".into(), json!(self.relation));
        m.insert("family".into(), json!(self.family));
        m.insert("pass".into(), json!(self.pass()));
        m.insert("results".into(), json!(self.results.iter().map(Entry::to_json).collect::<Vec<_>>()));
        if let Some(p) = &self.published {
            m.insert("published".into(), p.clone());
            m.insert("discrepancy".into(), json!(self.discrepancy));
        }
        if let Some(e) = &self.error {
            m.insert("error".into(), json!(e));
        }
        Value::Object(m)
    }

    /// Failing `n` values, for diagnostics.
    pub fn failing(&self) -> Vec<String> {
        self.results
            .iter()
            .filter(|e| !e.pass)
            .map(|e| match (e.n, e.check) {
                (Some(n), _) => format!("n={n}"),
                (None, Some(c)) => c.to_owned(),
                _ => "?".into(),
            })
            .collect()
    }
}

type Job = Box<dyn Fn() -> Check + Send + Sync>;

fn guarded(mut c: Check, f: impl FnOnce(&mut Check) -> qlrec::Result<()>) -> Check {
    if let Err(e) = f(&mut c) {
        c.error = Some(e.to_string());
    }
    c
}

fn verify_entries(f: &Family, ns: &[i64], build: impl FnMut(i64) -> qlrec::Result<LadderRelation>) -> qlrec::Result<Vec<Entry>> {
    Ok(verify_poly_relation(f, ns, build)?.into_iter().map(Entry::at).collect())
}

fn examples_jobs(seed: u64) -> Vec<Job> {
    printed_relations()
        .into_iter()
        .map(|p| -> Job {
            Box::new(move || {
                guarded(Check::new("examples31", p.name(), None), |c| {
                    let spec = RelationSpec::symbolic(p.triples)?;
                    let rel = solve_relation(&spec)?;
                    let r = residual(&rel, &spec)?;
                    let terms = r.coeffs().iter().map(|x| x.nterms()).sum();
                    c.results.push(Entry { n: None, check: Some("residual"), pass: r.is_zero(), residual_terms: terms });
                    let t = Rational::new(2, 3);
                    let q = &t * &t;
                    let xs: Vec<Rational> = (7..10).map(|k| q.pow(-k)).collect::<qlrec::Result<_>>()?;
                    let grid = WeightGrid::engineered(&spec, 3, 1, 5, t);
                    let w = verify_on_weights(&rel, &spec, &grid, &xs)?;
                    c.results.push(Entry { n: None, check: Some("weights"), pass: w, residual_terms: 0 });
                    let printed = compare_up_to_factor(&rel.a, &p.coefficients(Form::Printed)?, 5, seed)?;
                    let mut pubv = json!({ "printed": printed });
                    let mut ok = printed;
                    if p.has_correction() {
                        let corr = compare_up_to_factor(&rel.a, &p.coefficients(Form::Corrected)?, 5, seed)?;
                        pubv["corrected"] = json!(corr);
                        ok = corr;
                    }
                    c.discrepancy = !printed;
                    pubv["matches_derived"] = json!(ok);
                    c.published = Some(pubv);
                    Ok(())
                })
            })
        })
        .collect()
}

fn cap(f: &Family, n_max: i64, bqj: i64) -> i64 {
    if f.name() == "big-q-jacobi" { n_max.min(bqj) } else { n_max }
}

fn difeq_jobs(fams: &[Family], n_max: i64) -> Vec<Job> {
    fams.iter()
        .map(|f| -> Job {
            let f = f.clone();
            Box::new(move || {
                guarded(Check::new("difeq", "difference-equation", Some(f.name())), |c| {
                    let polys = ttrr_list(&f, n_max as usize)?;
                    for (n, p) in polys.iter().enumerate() {
                        let r = difeq_residual_of(&f, n as i64, p)?;
                        let terms = r.coeffs().iter().map(|x| x.nterms()).sum();
                        c.results.push(Entry { n: Some(n as i64), check: None, pass: r.is_zero(), residual_terms: terms });
                    }
                    Ok(())
                })
            })
        })
        .collect()
}

fn delta1_check(f: &Family, n_max: i64) -> Check {
    guarded(Check::new("families", "first-difference", Some(f.name())), |c| {
        let polys = ttrr_list(f, n_max as usize + 1)?;
        let l = LatticeSpec::q_canonical();
        for n in 1..=n_max as usize {
            let (ah, bh, gh) = delta1_formula(f, n as i64, Delta1Convention::Corrected)?;
            let lhs = &f.phi() * &qlrec::lattice::k_delta(&polys[n], 1, &l)?;
            let rhs = &(&polys[n + 1].scale(&ah) + &polys[n].scale(&bh)) + &polys[n - 1].scale(&gh);
            let r = &lhs - &rhs;
            let terms = r.coeffs().iter().map(|x| x.nterms()).sum();
            c.results.push(Entry { n: Some(n as i64), check: None, pass: r.is_zero(), residual_terms: terms });
        }
        Ok(())
    })
}

fn pattern_of(terms: &[Term; 3]) -> Pattern {
    if terms[2].op == Op::Id { Pattern::Lower } else { Pattern::Upper }
}

fn families_jobs(fams: &[Family], n_max: i64) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for f in fams {
        let f1 = f.clone();
        jobs.push(Box::new(move || {
            guarded(Check::new("families", "lambda", Some(f1.name())), |c| {
                for n in 0..=n_max {
                    c.results.push(Entry::flag(n, lambda_matches(&f1, n)?));
                }
                Ok(())
            })
        }));
        if f.data.tau_n.is_some() {
            let f2 = f.clone();
            jobs.push(Box::new(move || {
                guarded(Check::new("families", "tau_n", Some(f2.name())), |c| {
                    for n in 0..=n_max {
                        c.results.push(Entry::flag(n, tau_matches(&f2, n)? == Some(true)));
                    }
                    Ok(())
                })
            }));
        }
        let f3 = f.clone();
        jobs.push(Box::new(move || delta1_check(&f3, cap(&f3, n_max, 6))));
    }
    for r in published_relations() {
        let Some(f) = fams.iter().find(|f| f.name() == r.family).cloned() else { continue };
        jobs.push(Box::new(move || {
            guarded(Check::new("families", r.label, Some(r.family)), |c| {
                let pat = pattern_of(&r.terms);
                let top = cap(&f, n_max, 6);
                let ns: Vec<i64> = (r.n_min.max(pat.n_min())..=top).collect();
                c.results = verify_entries(&f, &ns, |n| Ok(derive_family_relation(&f, pat, n, Delta1Convention::Corrected)?.relation))?;
                let pn: Vec<i64> = (r.n_min..=top).collect();
                let printed = verify_entries(&f, &pn, |n| published_ladder(&r, &f, n))?;
                c.discrepancy = printed.iter().any(|e| !e.pass);
                c.published = Some(json!({ "results": printed.iter().map(Entry::to_json).collect::<Vec<_>>() }));
                Ok(())
            })
        }));
    }
    jobs
}

fn ladder_jobs(fams: &[Family], n_max: i64, seed: u64) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for f in fams {
        let f1 = f.clone();
        jobs.push(Box::new(move || {
            guarded(Check::new("ladders", "ttrr-recovery", Some(f1.name())), |c| {
                for n in 1..=cap(&f1, n_max, 4) {
                    c.results.push(Entry::flag(n, ttrr_recovered(&f1, n, seed)?));
                }
                Ok(())
            })
        }));
    }
    let patterns: [(&str, [i64; 3], [u32; 3], i64); 5] = [
        ("alsalam1", [0, 0, 1], [0, 1, 0], 1),
        ("alsalam1", [0, 0, -1], [0, 1, 0], 2),
        ("alsalam1", [-1, 0, 1], [1, 1, 0], 2),
        ("alt-q-charlier", [0, 0, 1], [0, 1, 0], 1),
        ("alt-q-charlier", [0, 0, -1], [0, 1, 0], 2),
    ];
    for (name, dnu, k, lo) in patterns {
        let Some(f) = fams.iter().find(|f| f.name() == name).cloned() else { continue };
        let label = format!("delta-ladder dnu=({},{},{}),k=({},{},{})", dnu[0], dnu[1], dnu[2], k[0], k[1], k[2]);
        jobs.push(Box::new(move || {
            guarded(Check::new("ladders", label.clone(), Some(name)), |c| {
                let ns: Vec<i64> = (lo..=n_max).collect();
                c.results = verify_entries(&f, &ns, |n| family_ladder(&f, dnu, k, n, LadderKind::Generic))?;
                Ok(())
            })
        }));
    }
    for name in ["alsalam1", "alt-q-charlier"] {
        let Some(f) = fams.iter().find(|f| f.name() == name).cloned() else { continue };
        for m in [1i64, -1] {
            let f = f.clone();
            let label = if m > 0 { "nabla-raise" } else { "nabla-lower" };
            jobs.push(Box::new(move || {
                guarded(Check::new("ladders", label, Some(name)), |c| {
                    let ns: Vec<i64> = (2..=n_max).collect();
                    c.results = verify_entries(&f, &ns, |n| nabla_ladder(&f, n, m))?;
                    Ok(())
                })
            }));
        }
    }
    jobs
}

pub fn jobs(suite: &str, fams: &[Family], n_max: i64, seed: u64) -> Option<Vec<Job>> {
    Some(match suite {
        "examples31" => examples_jobs(seed),
        "difeq" => difeq_jobs(fams, n_max),
        "families" => families_jobs(fams, n_max),
        "ladders" => ladder_jobs(fams, n_max, seed),
        "all" => {
            let mut v = examples_jobs(seed);
            v.extend(difeq_jobs(fams, n_max));
            v.extend(families_jobs(fams, n_max));
            v.extend(ladder_jobs(fams, n_max, seed));
            v
        }
        _ => return None,
    })
}

/// Runs the jobs on `threads` workers (all cores when `None`), keeping list order.
pub fn run(jobs: Vec<Job>, threads: Option<usize>) -> Vec<Check> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build().expect("thread pool");
    pool.install(|| jobs.par_iter().map(|j| j()).collect())
}
