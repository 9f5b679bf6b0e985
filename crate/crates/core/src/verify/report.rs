use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::boundary::BoundaryItem;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

/// A graph worth reporting: a violation, a boundary observation or an
/// unresolved comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub m: usize,
    pub graph6: String,
    pub rho: f64,
    pub threshold: f64,
    pub family: Option<String>,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityCase {
    pub m: usize,
    pub graph6: String,
    pub family: Option<String>,
    /// Member of the stated equality family.
    pub expected: bool,
    pub certificate: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerM {
    pub m: usize,
    pub graphs: usize,
    pub in_hypothesis: bool,
    pub threshold: Option<f64>,
    pub max_rho: Option<f64>,
    pub max_rho_graph6: Option<String>,
    pub above: usize,
    pub equal: usize,
    pub unresolved: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub wall_time_ms: u64,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub kind: String,
    pub id: String,
    pub m_range: [usize; 2],
    pub mode: String,
    pub status: Status,
    pub graphs_checked: usize,
    pub per_m: Vec<PerM>,
    pub violations: Vec<Finding>,
    pub equality_cases: Vec<EqualityCase>,
    pub boundary_findings: Vec<Finding>,
    pub unresolved: Vec<Finding>,
    pub items: Vec<BoundaryItem>,
    pub notes: Vec<String>,
    pub metadata: Metadata,
}

impl Report {
    pub(crate) fn new(kind: &str, id: String, m_range: [usize; 2], mode: &str) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            kind: kind.into(),
            id,
            m_range,
            mode: mode.into(),
            status: Status::Pass,
            graphs_checked: 0,
            per_m: vec![],
            violations: vec![],
            equality_cases: vec![],
            boundary_findings: vec![],
            unresolved: vec![],
            items: vec![],
            notes: vec![],
            metadata: Metadata {
                wall_time_ms: 0,
                tool_version: TOOL_VERSION.into(),
            },
        }
    }

    pub(crate) fn finish(&mut self, started: std::time::Instant) {
        self.status = if self.violations.is_empty() { Status::Pass } else { Status::Fail };
        self.metadata.wall_time_ms = started.elapsed().as_millis() as u64;
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One JSON line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }

    /// JSON with the metadata block removed, for reproducibility checks.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serialises");
        if let Value::Object(map) = &mut v {
            map.remove("metadata");
        }
        serde_json::to_string(&v).expect("value serialises")
    }
}

/// Check a parsed report line against the schema: required keys and types,
/// status consistent with violations, graph6 fields parseable and every
/// equality case carrying a certificate.
pub fn validate_report(v: &Value) -> Result<()> {
    let mut errs: Vec<String> = Vec::new();
    let obj = match v.as_object() {
        Some(o) => o,
        None => return Err(Error::InvalidArgument("report is not a JSON object".into())),
    };
    let want = |key: &str, ok: fn(&Value) -> bool, errs: &mut Vec<String>| match obj.get(key) {
        None => errs.push(format!("missing key {key}")),
        Some(x) if !ok(x) => errs.push(format!("key {key} has the wrong type")),
        _ => {}
    };
    want("schema_version", |x| x.as_u64() == Some(SCHEMA_VERSION as u64), &mut errs);
    want("kind", Value::is_string, &mut errs);
    want("id", Value::is_string, &mut errs);
    want("mode", Value::is_string, &mut errs);
    want("status", |x| matches!(x.as_str(), Some("PASS" | "FAIL")), &mut errs);
    want("graphs_checked", Value::is_u64, &mut errs);
    want(
        "m_range",
        |x| x.as_array().is_some_and(|a| a.len() == 2 && a.iter().all(Value::is_u64)),
        &mut errs,
    );
    for key in ["per_m", "violations", "equality_cases", "boundary_findings", "unresolved", "items", "notes"] {
        want(key, Value::is_array, &mut errs);
    }
    want(
        "metadata",
        |x| x.get("wall_time_ms").is_some_and(Value::is_u64) && x.get("tool_version").is_some_and(Value::is_string),
        &mut errs,
    );
    if errs.is_empty() {
        let violations = obj["violations"].as_array().unwrap();
        let pass = obj["status"] == "PASS";
        if pass != violations.is_empty() {
            errs.push("status disagrees with the violation list".into());
        }
        for key in ["violations", "boundary_findings", "unresolved"] {
            for (i, f) in obj[key].as_array().unwrap().iter().enumerate() {
                if let Err(e) = serde_json::from_value::<Finding>(f.clone()) {
                    errs.push(format!("{key}[{i}]: {e}"));
                } else if crate::graph6::parse(f["graph6"].as_str().unwrap()).is_err() {
                    errs.push(format!("{key}[{i}]: graph6 does not parse"));
                }
            }
        }
        for (i, e) in obj["equality_cases"].as_array().unwrap().iter().enumerate() {
            match serde_json::from_value::<EqualityCase>(e.clone()) {
                Err(err) => errs.push(format!("equality_cases[{i}]: {err}")),
                Ok(case) => {
                    if crate::graph6::parse(&case.graph6).is_err() {
                        errs.push(format!("equality_cases[{i}]: graph6 does not parse"));
                    }
                    if case.certificate.get("char_poly_root") != Some(&Value::Bool(true)) {
                        errs.push(format!("equality_cases[{i}]: certificate lacks an exact root"));
                    }
                }
            }
        }
        for (i, p) in obj["per_m"].as_array().unwrap().iter().enumerate() {
            if let Err(e) = serde_json::from_value::<PerM>(p.clone()) {
                errs.push(format!("per_m[{i}]: {e}"));
            }
        }
        for (i, p) in obj["items"].as_array().unwrap().iter().enumerate() {
            if let Err(e) = serde_json::from_value::<BoundaryItem>(p.clone()) {
                errs.push(format!("items[{i}]: {e}"));
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("schema: {}", errs.join("; "))))
    }
}
