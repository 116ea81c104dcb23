use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when `value <= tolerance`.
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: value <= tolerance,
            value,
            tolerance,
        }
    }

    /// Passes when `value >= -tolerance`.
    pub fn at_least_zero(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: value >= -tolerance,
            value,
            tolerance,
        }
    }

    pub fn flag(name: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            pass,
            value: if pass { 1.0 } else { 0.0 },
            tolerance: 0.0,
        }
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub seed: u64,
    /// Wall time; the only field that differs between identical runs.
    pub duration_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn to_json<T: Serialize>(value: &T, indent: usize) -> String {
    if indent == 0 {
        return serde_json::to_string(value).expect("report serializes");
    }
    let pad = vec![b' '; indent];
    let mut buf = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value.serialize(&mut ser).expect("report serializes");
    String::from_utf8(buf).expect("JSON is UTF-8")
}
