//! Shipped JSON schemas and a structural checker for the subset of JSON
//! Schema they use: `type`, `required`, `properties`, `items`, `enum`,
//! `const`, `minimum`.

use serde_json::Value;

pub const SCHEMAS: [(&str, &str); 10] = [
    (
        "presentation",
        include_str!("../schemas/presentation.schema.json"),
    ),
    ("complex", include_str!("../schemas/complex.schema.json")),
    ("cycles", include_str!("../schemas/cycles.schema.json")),
    ("verify", include_str!("../schemas/verify.schema.json")),
    (
        "hom-count",
        include_str!("../schemas/hom-count.schema.json"),
    ),
    ("homology", include_str!("../schemas/homology.schema.json")),
    ("prove", include_str!("../schemas/prove.schema.json")),
    (
        "invariants",
        include_str!("../schemas/invariants.schema.json"),
    ),
    (
        "irregularity",
        include_str!("../schemas/irregularity.schema.json"),
    ),
    ("sweep", include_str!("../schemas/sweep.schema.json")),
];

pub fn schema(name: &str) -> Option<Value> {
    SCHEMAS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| serde_json::from_str(text).expect("shipped schema parses"))
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        _ => false,
    }
}

fn walk(s: &Value, v: &Value, path: &str, out: &mut Vec<String>) {
    let Some(s) = s.as_object() else { return };
    if let Some(t) = s.get("type") {
        let ok = match t {
            Value::String(t) => type_matches(t, v),
            Value::Array(ts) => ts
                .iter()
                .filter_map(Value::as_str)
                .any(|t| type_matches(t, v)),
            _ => true,
        };
        if !ok {
            out.push(format!("{path}: expected type {t}"));
            return;
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            out.push(format!("{path}: expected {c}"));
        }
    }
    if let Some(Value::Array(options)) = s.get("enum") {
        if !options.contains(v) {
            out.push(format!("{path}: {v} not in enum"));
        }
    }
    if let (Some(min), Some(x)) = (s.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            out.push(format!("{path}: {x} below minimum {min}"));
        }
    }
    if let Value::Object(obj) = v {
        if let Some(Value::Array(req)) = s.get("required") {
            for k in req.iter().filter_map(Value::as_str) {
                if !obj.contains_key(k) {
                    out.push(format!("{path}: missing `{k}`"));
                }
            }
        }
        if let Some(Value::Object(props)) = s.get("properties") {
            for (k, sub) in props {
                if let Some(x) = obj.get(k) {
                    walk(sub, x, &format!("{path}.{k}"), out);
                }
            }
        }
    }
    if let (Value::Array(items), Some(sub)) = (v, s.get("items")) {
        for (i, x) in items.iter().enumerate() {
            walk(sub, x, &format!("{path}[{i}]"), out);
        }
    }
}

/// Violations of `schema` by `value`; empty when it conforms.
pub fn check(schema: &Value, value: &Value) -> Vec<String> {
    let mut out = Vec::new();
    walk(schema, value, "$", &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn every_schema_parses() {
        for (name, _) in SCHEMAS {
            assert!(schema(name).unwrap().is_object(), "{name}");
        }
    }

    #[test]
    fn checker_reports_violations() {
        let s = json!({
            "type": "object",
            "required": ["a", "b"],
            "properties": {
                "a": {"type": "integer", "minimum": 0},
                "b": {"type": "array", "items": {"enum": ["x", "y"]}},
                "c": {"const": "v1"}
            }
        });
        assert!(check(&s, &json!({"a": 1, "b": ["x"], "c": "v1"})).is_empty());
        assert_eq!(check(&s, &json!({"a": -1, "b": ["z"], "c": "v2"})).len(), 3);
        assert_eq!(
            check(&s, &json!({"b": "x"})),
            ["$: missing `a`", "$.b: expected type \"array\""]
        );
    }
}
