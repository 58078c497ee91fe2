//! Argument handling and the three commands. `run` returns the exit code and
//! the text for stdout; the binary only prints it.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qlrec::families::{check_registration, Family};
use qlrec::field::{RatFunc, Rational};
use qlrec::lattice::Nu;
use qlrec::relation::{residual_check, solve_relation, RelationSpec, Triples};
use qlrec::Error;
use serde_json::{json, Map, Value};

use crate::json::{self, SCHEMA};
use crate::numeric::eval_family;
use crate::resource;
use crate::suites;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qlrec", version, about = "Exact recurrence relations and ladder operators on q-linear lattices")]
pub struct Cli {
    /// Machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// JSON file with defaults for any flag (flags win).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized proportionality checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Family,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Derive the relation between three Φ sums.
    Derive {
        /// Offsets `(dν,dμ)` from the base, e.g. "(0,-1),(0,0),(1,0)".
        #[arg(long)]
        triples: Option<String>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        /// Write the JSON document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        n_max: Option<i64>,
        /// Fix family parameters, `a=1/2,b=3`.
        #[arg(long)]
        param: Vec<String>,
    },
    /// Evaluate `P_n(x)` exactly at a rational `q`.
    Eval {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        param: Vec<String>,
    },
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

/// Config-file values, consulted for flags left unset.
#[derive(Default)]
struct Config(Map<String, Value>);

impl Config {
    fn load(path: &Option<PathBuf>) -> Result<Self, String> {
        let Some(p) = path else { return Ok(Config::default()) };
        let s = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
        match serde_json::from_str(&s).map_err(|e| format!("{}: {e}", p.display()))? {
            Value::Object(m) => Ok(Config(m)),
            _ => Err(format!("{}: expected a JSON object", p.display())),
        }
    }

    fn str(&self, k: &str) -> Option<String> {
        self.0.get(k).map(|v| v.as_str().map(str::to_owned).unwrap_or_else(|| v.to_string()))
    }

    fn int(&self, k: &str) -> Result<Option<i64>, String> {
        match self.0.get(k) {
            None => Ok(None),
            Some(v) => v.as_i64().map(Some).ok_or_else(|| format!("config key {k:?} must be an integer")),
        }
    }

    fn flag(&self, k: &str) -> bool {
        self.0.get(k).and_then(Value::as_bool).unwrap_or(false)
    }

    fn params(&self) -> Vec<String> {
        match self.0.get("params") {
            Some(Value::Object(m)) => m.iter().map(|(k, v)| format!("{k}={}", v.as_str().map(str::to_owned).unwrap_or_else(|| v.to_string()))).collect(),
            Some(Value::String(s)) => vec![s.clone()],
            _ => Vec::new(),
        }
    }
}

pub fn parse_triples(s: &str) -> Result<Triples, String> {
    let bad = || format!("malformed triples {s:?}; expected \"(a,b),(c,d),(e,f)\"");
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
    let pairs: Vec<(i64, i64)> = inner
        .split("),(")
        .map(|p| {
            let (a, b) = p.split_once(',').ok_or_else(bad)?;
            Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        })
        .collect::<Result<_, String>>()?;
    pairs.try_into().map_err(|_| bad())
}

pub fn parse_params(items: &[String]) -> Result<BTreeMap<String, Rational>, String> {
    let mut m = BTreeMap::new();
    for it in items {
        for kv in it.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| format!("parameter {kv:?} is not name=value"))?;
            m.insert(k.trim().to_owned(), json::parse_rational(v)?);
        }
    }
    Ok(m)
}

fn status(pass: bool) -> &'static str {
    if pass { "pass" } else { "fail" }
}

fn doc(command: &str, status: &str, payload: Value, diagnostics: Vec<String>) -> Value {
    json!({ "schema": SCHEMA, "command": command, "status": status, "payload": payload, "diagnostics": diagnostics })
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let cfg = match Config::load(&cli.config) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    let as_json = cli.json || cfg.flag("json");
    let seed = match cfg.int("seed") {
        Ok(s) => cli.seed.unwrap_or(s.unwrap_or(0) as u64),
        Err(e) => return Outcome::usage(e),
    };
    let r = match cli.cmd {
        Cmd::Derive { triples, mode, family, n, out } => derive(&cfg, triples, mode, family, n, out, as_json),
        Cmd::Verify { suite, n_max, param } => verify(&cfg, suite, n_max, param, seed, as_json),
        Cmd::Eval { family, n, x, q, param } => eval(&cfg, family, n, x, q, param, as_json),
    };
    r.unwrap_or_else(Outcome::usage)
}

fn or_cfg(v: Option<String>, cfg: &Config, k: &str) -> Option<String> {
    v.or_else(|| cfg.str(k))
}

fn int_or_cfg(v: Option<i64>, cfg: &Config, k: &str) -> Result<Option<i64>, String> {
    Ok(match v {
        Some(v) => Some(v),
        None => cfg.int(k)?,
    })
}

fn family_with(name: &str, params: &BTreeMap<String, Rational>) -> Result<Family, String> {
    let base = resource::find(name)?;
    let own: BTreeMap<String, RatFunc> = params
        .iter()
        .filter(|(k, _)| base.data.parameters.contains(k))
        .map(|(k, v)| (k.clone(), RatFunc::from_rational(v.clone())))
        .collect();
    if own.is_empty() {
        return Ok(base);
    }
    Family::with_params(base.data, own).and_then(check_registration).map_err(|e| e.to_string())
}

fn derive(cfg: &Config, triples: Option<String>, mode: Option<Mode>, family: Option<String>, n: Option<i64>, out: Option<PathBuf>, as_json: bool) -> Result<Outcome, String> {
    let triples = parse_triples(&or_cfg(triples, cfg, "triples").ok_or("--triples is required")?)?;
    let mode = match (mode, cfg.str("mode").as_deref()) {
        (Some(m), _) => m,
        (None, None | Some("symbolic")) => Mode::Symbolic,
        (None, Some("family")) => Mode::Family,
        (None, Some(m)) => return Err(format!("unknown mode {m:?}")),
    };
    let spec = match mode {
        Mode::Symbolic => RelationSpec::symbolic(triples),
        Mode::Family => {
            let name = or_cfg(family, cfg, "family").ok_or("--family is required in family mode")?;
            let n = int_or_cfg(n, cfg, "n")?.ok_or("--n is required in family mode")?;
            let f = family_with(&name, &parse_params(&cfg.params())?)?;
            RelationSpec::new(triples, f.hyper.clone(), Nu::int(n))
        }
    };
    let solved = spec.and_then(|s| solve_relation(&s).map(|r| (s, r)));
    let (doc_v, code) = match solved {
        Ok((s, rel)) => {
            let ok = residual_check(&rel, &s);
            let mut p = json::derived_relation(&rel);
            p["residual_check"] = json!(ok);
            p["deg_pi"] = json!(rel.deg_pi);
            p["deg_q"] = json!(rel.deg_q());
            (doc("derive", status(ok), p, vec![]), if ok { EXIT_PASS } else { EXIT_FAIL })
        }
        Err(e @ (Error::Parse(_) | Error::Invalid(_))) => return Err(e.to_string()),
        Err(e) => (doc("derive", "error", Value::Null, vec![e.to_string()]), EXIT_FAIL),
    };
    let text = if as_json { json::render(&doc_v) } else { derive_text(&doc_v) };
    if let Some(p) = out {
        std::fs::write(&p, json::render(&doc_v)).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(Outcome { code, stdout: text, stderr: String::new() })
}

fn derive_text(d: &Value) -> String {
    let mut s = format!("status: {}\n", d["status"].as_str().unwrap_or("?"));
    for m in d["diagnostics"].as_array().into_iter().flatten() {
        s.push_str(&format!("error: {}\n", m.as_str().unwrap_or("")));
    }
    let p = &d["payload"];
    if p.is_object() {
        s.push_str(&format!("triples: {}\nnormalization: {}\ndeg Pi: {}, deg Q: {}\nresidual check: {}\n", p["triples"], p["normalization"].as_str().unwrap_or(""), p["deg_pi"], p["deg_q"], p["residual_check"]));
    }
    s
}

fn verify(cfg: &Config, suite: Option<String>, n_max: Option<i64>, param: Vec<String>, seed: u64, as_json: bool) -> Result<Outcome, String> {
    let suite = or_cfg(suite, cfg, "suite").unwrap_or_else(|| "all".into());
    let n_max = int_or_cfg(n_max, cfg, "n_max")?.unwrap_or(6);
    if n_max < 1 {
        return Err("--n-max must be at least 1".into());
    }
    let mut items = cfg.params();
    items.extend(param);
    let params = parse_params(&items)?;
    let fams = resource::load(resource::FAMILIES_JSON)?
        .iter()
        .map(|d| family_with(&d.name, &params))
        .collect::<Result<Vec<_>, _>>()?;
    let jobs = suites::jobs(&suite, &fams, n_max, seed).ok_or_else(|| format!("unknown suite {suite:?}; one of {}", suites::SUITES.join(", ")))?;
    let threads = std::env::var("QLREC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&t| t > 0);
    let checks = suites::run(jobs, threads);
    let pass = checks.iter().all(|c| c.pass());
    let mut diags = Vec::new();
    for c in &checks {
        let fam = c.family.as_deref().unwrap_or("-");
        if let Some(e) = &c.error {
            diags.push(format!("error in {} / {fam}: {e}", c.relation));
        } else if !c.pass() {
            diags.push(format!("failed {} / {fam} at {}", c.relation, c.failing().join(", ")));
        }
        if c.discrepancy {
            diags.push(format!("published form of {} / {fam} differs from the derived relation", c.relation));
        }
    }
    let payload = json!({
        "suite": suite,
        "n_max": n_max,
        "seed": seed,
        "params": params.iter().map(|(k, v)| (k.clone(), json::rational(v))).collect::<Map<_, _>>(),
        "checks": checks.iter().map(suites::Check::to_json).collect::<Vec<_>>(),
    });
    let d = doc("verify", status(pass), payload, diags.clone());
    let text = if as_json {
        json::render(&d)
    } else {
        let mut s = String::new();
        for c in &checks {
            let ns: Vec<i64> = c.results.iter().filter_map(|e| e.n).collect();
            let range = match (ns.first(), ns.last()) {
                (Some(a), Some(b)) => format!("n={a}..{b}"),
                _ => c.results.iter().filter_map(|e| e.check).collect::<Vec<_>>().join(","),
            };
            let note = if c.discrepancy { "  [published form differs]" } else { "" };
            s.push_str(&format!("{:4}  {:10}  {:44}  {:15}  {}{}\n", if c.pass() { "PASS" } else { "FAIL" }, c.suite, c.relation, c.family.as_deref().unwrap_or("-"), range, note));
        }
        for m in &diags {
            s.push_str(&format!("note: {m}\n"));
        }
        s.push_str(&format!("status: {} ({} checks)\n", status(pass), checks.len()));
        s
    };
    Ok(Outcome { code: if pass { EXIT_PASS } else { EXIT_FAIL }, stdout: text, stderr: String::new() })
}

fn eval(cfg: &Config, family: Option<String>, n: Option<u32>, x: Option<String>, q: Option<String>, param: Vec<String>, as_json: bool) -> Result<Outcome, String> {
    let name = or_cfg(family, cfg, "family").ok_or("--family is required")?;
    let n = match n {
        Some(n) => n,
        None => cfg.int("n")?.ok_or("--n is required")?.try_into().map_err(|_| "--n must be non-negative")?,
    };
    let x = json::parse_rational(&or_cfg(x, cfg, "x").ok_or("--x is required")?)?;
    let q = json::parse_rational(&or_cfg(q, cfg, "q").ok_or("--q is required")?)?;
    let mut items = cfg.params();
    items.extend(param);
    let params = parse_params(&items)?;
    let f = resource::find(&name)?;
    let v = eval_family(&f, n, &x, &q, &params)?;
    let dec = v.to_decimal(30);
    let d = doc(
        "eval",
        "pass",
        json!({
            "family": name,
            "n": n,
            "x": json::rational(&x),
            "q": json::rational(&q),
            "params": params.iter().map(|(k, v)| (k.clone(), json::rational(v))).collect::<Map<_, _>>(),
            "value": json::rational(&v),
            "decimal": dec,
        }),
        vec![],
    );
    let text = if as_json { json::render(&d) } else { format!("P_{n}({x}) = {v}\n          ~ {dec}\n") };
    Ok(Outcome { code: EXIT_PASS, stdout: text, stderr: String::new() })
}
