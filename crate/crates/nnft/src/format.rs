//! Circuit JSON files.
//!
//! ```json
//! {"schema": "circuit", "version": 1, "width": 2, "length": 5,
//!  "classical_bits": [], "timesteps": [[{"kind": "H", "targets": [[0, 0]]}]]}
//! ```
//!
//! `classical_controls` may be omitted on a gate. The `schema` key is written
//! for self-description and ignored on input.

use nnft_core::circuit::{Circuit, CircuitError, Gate, GateKind, Site};
use serde_json::{json, Map, Value};

pub const VERSION: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("invalid circuit: {0}")]
    Circuit(#[from] CircuitError),
}

fn field(path: &str, message: impl Into<String>) -> FormatError {
    FormatError::Field { path: path.to_string(), message: message.into() }
}

pub fn to_value(c: &Circuit) -> Value {
    let steps: Vec<Value> = c
        .timesteps
        .iter()
        .map(|step| {
            Value::Array(
                step.iter()
                    .map(|g| {
                        let mut m = Map::new();
                        m.insert("kind".into(), json!(g.kind.name()));
                        m.insert("targets".into(), json!(g.targets.iter().map(|s| [s.row, s.col]).collect::<Vec<_>>()));
                        if !g.classical_controls.is_empty() {
                            m.insert("classical_controls".into(), json!(g.classical_controls));
                        }
                        Value::Object(m)
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "schema": "circuit",
        "version": VERSION,
        "width": c.width,
        "length": c.length,
        "classical_bits": c.classical_bits,
        "timesteps": steps,
    })
}

pub fn to_json(c: &Circuit) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(c)).expect("values serialize");
    s.push('\n');
    s
}

fn get<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| field(&join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn as_u32(v: &Value, path: &str) -> Result<u32, FormatError> {
    v.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| field(path, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array().ok_or_else(|| field(path, "expected an array"))
}

fn strings(v: &Value, path: &str) -> Result<Vec<String>, FormatError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, s)| s.as_str().map(str::to_string).ok_or_else(|| field(&format!("{path}[{i}]"), "expected a string")))
        .collect()
}

fn parse_gate(v: &Value, path: &str) -> Result<Gate, FormatError> {
    let obj = v.as_object().ok_or_else(|| field(path, "expected an object"))?;
    let kind_v = get(obj, path, "kind")?;
    let kind_path = join(path, "kind");
    let name = kind_v.as_str().ok_or_else(|| field(&kind_path, "expected a string"))?;
    let kind = GateKind::from_name(name).ok_or_else(|| field(&kind_path, format!("unknown gate kind `{name}`")))?;
    let tpath = join(path, "targets");
    let mut targets = Vec::new();
    for (i, t) in as_array(get(obj, path, "targets")?, &tpath)?.iter().enumerate() {
        let p = format!("{tpath}[{i}]");
        let pair = as_array(t, &p)?;
        if pair.len() != 2 {
            return Err(field(&p, "expected [row, col]"));
        }
        targets.push(Site::new(as_u32(&pair[0], &format!("{p}[0]"))?, as_u32(&pair[1], &format!("{p}[1]"))?));
    }
    let classical_controls = match obj.get("classical_controls") {
        Some(v) => strings(v, &join(path, "classical_controls"))?,
        None => Vec::new(),
    };
    Ok(Gate { kind, targets, classical_controls })
}

/// Parses and checks a circuit file.
pub fn parse(text: &str) -> Result<Circuit, FormatError> {
    let root: Value = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = root.as_object().ok_or_else(|| field("$", "expected an object"))?;
    let version = get(obj, "", "version")?.as_u64().ok_or_else(|| field("version", "expected an integer"))?;
    if version != VERSION {
        return Err(field("version", format!("unsupported version {version}, expected {VERSION}")));
    }
    let width = as_u32(get(obj, "", "width")?, "width")?;
    let length = as_u32(get(obj, "", "length")?, "length")?;
    let classical_bits = strings(get(obj, "", "classical_bits")?, "classical_bits")?;
    let mut c = Circuit::new(width, length);
    c.classical_bits = classical_bits;
    for (t, step) in as_array(get(obj, "", "timesteps")?, "timesteps")?.iter().enumerate() {
        let p = format!("timesteps[{t}]");
        let gates = as_array(step, &p)?
            .iter()
            .enumerate()
            .map(|(i, g)| parse_gate(g, &format!("{p}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        c.timesteps.push(gates);
    }
    c.check()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nnft_core::expand;

    #[test]
    fn empty_round_trip() {
        let c = Circuit::new(1, 1);
        assert_eq!(parse(&to_json(&c)).unwrap(), c);
    }

    #[test]
    fn swap_round_trip() {
        let c = expand::logical_swap(7).circuit;
        assert_eq!(parse(&to_json(&c)).unwrap(), c);
    }

    #[test]
    fn missing_version_is_named() {
        let err = parse(r#"{"width": 1, "length": 1, "classical_bits": [], "timesteps": []}"#).unwrap_err();
        assert_eq!(err.to_string(), "version: missing field");
    }

    #[test]
    fn errors_name_the_element() {
        let text = r#"{"version": 1, "width": 1, "length": 3, "classical_bits": [],
            "timesteps": [[{"kind": "H", "targets": [[0, 0]]}], [{"kind": "TOFFOLI", "targets": []}]]}"#;
        let err = parse(text).unwrap_err().to_string();
        assert!(err.starts_with("timesteps[1][0].kind"), "{err}");

        let text = r#"{"version": 1, "width": 1, "length": 3, "classical_bits": [],
            "timesteps": [[{"kind": "H", "targets": [[0, 7]]}]]}"#;
        assert!(matches!(parse(text), Err(FormatError::Circuit(CircuitError::OutOfBounds { .. }))));

        let err = parse("{\n  \"version\": 1,\n  oops\n}").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 3, .. }), "{err}");

        let text = r#"{"version": 2, "width": 1, "length": 1, "classical_bits": [], "timesteps": []}"#;
        assert!(parse(text).unwrap_err().to_string().contains("unsupported version 2"));
    }
}
