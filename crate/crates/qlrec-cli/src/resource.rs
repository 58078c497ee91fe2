//! The family registry shipped as `resources/families.json`.

use qlrec::families::{register, Family, FamilyData};
use serde_json::{json, Map, Value};

pub const FAMILIES_JSON: &str = include_str!("../resources/families.json");

pub fn family_to_json(d: &FamilyData) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(d.name));
    m.insert("parameters".into(), json!(d.parameters));
    m.insert("sigma".into(), json!(d.sigma));
    m.insert("tau".into(), json!(d.tau));
    m.insert("lambda".into(), json!(d.lambda));
    m.insert("beta".into(), json!(d.beta));
    m.insert("gamma".into(), json!(d.gamma));
    if let Some(g) = &d.gamma_printed {
        m.insert("gamma_printed".into(), json!(g));
    }
    m.insert("b_n".into(), json!(d.b_n));
    if let Some(t) = &d.tau_n {
        m.insert("tau_n".into(), json!(t));
    }
    m.insert("notes".into(), json!(d.notes));
    Value::Object(m)
}

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value, String> {
    v.get(k).ok_or_else(|| format!("family record lacks {k:?}"))
}

fn string(v: &Value, k: &str) -> Result<String, String> {
    field(v, k)?.as_str().map(str::to_owned).ok_or_else(|| format!("{k:?} must be a string"))
}

fn strings<const N: usize>(v: &Value, k: &str) -> Result<[String; N], String> {
    let a = field(v, k)?.as_array().ok_or_else(|| format!("{k:?} must be an array"))?;
    let s: Vec<String> = a.iter().map(|e| e.as_str().map(str::to_owned)).collect::<Option<_>>().ok_or_else(|| format!("{k:?} must hold strings"))?;
    s.try_into().map_err(|_| format!("{k:?} must have {N} entries"))
}

pub fn family_from_json(v: &Value) -> Result<FamilyData, String> {
    let params = field(v, "parameters")?
        .as_array()
        .and_then(|a| a.iter().map(|e| e.as_str().map(str::to_owned)).collect::<Option<Vec<_>>>())
        .ok_or("\"parameters\" must be an array of strings")?;
    Ok(FamilyData {
        name: string(v, "name")?,
        parameters: params,
        sigma: strings(v, "sigma")?,
        tau: strings(v, "tau")?,
        lambda: string(v, "lambda")?,
        beta: string(v, "beta")?,
        gamma: string(v, "gamma")?,
        gamma_printed: v.get("gamma_printed").map(|_| string(v, "gamma_printed")).transpose()?,
        b_n: string(v, "b_n")?,
        tau_n: v.get("tau_n").map(|_| strings(v, "tau_n")).transpose()?,
        notes: string(v, "notes")?,
    })
}

pub fn load(src: &str) -> Result<Vec<FamilyData>, String> {
    let v: Value = serde_json::from_str(src).map_err(|e| e.to_string())?;
    v.get("families").and_then(Value::as_array).ok_or("expected {\"families\": [...]}")?.iter().map(family_from_json).collect()
}

pub fn dump(ds: &[FamilyData]) -> String {
    crate::json::render(&json!({ "families": ds.iter().map(family_to_json).collect::<Vec<_>>() }))
}

/// Shipped families, registered (cross-checked) in file order.
pub fn families() -> Result<Vec<Family>, String> {
    load(FAMILIES_JSON)?.into_iter().map(|d| register(d).map_err(|e| e.to_string())).collect()
}

pub fn find(name: &str) -> Result<Family, String> {
    let d = load(FAMILIES_JSON)?.into_iter().find(|d| d.name == name).ok_or_else(|| format!("unknown family {name:?}"))?;
    register(d).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qlrec::families::builtin_families;

    #[test]
    fn resource_equals_builtin_table() {
        assert_eq!(load(FAMILIES_JSON).unwrap(), builtin_families());
        assert_eq!(dump(&builtin_families()), FAMILIES_JSON);
    }

    #[test]
    fn malformed_records_are_rejected() {
        assert!(load("{}").is_err());
        assert!(load(r#"{"families":[{"name":"x"}]}"#).is_err());
    }
}
