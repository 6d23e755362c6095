use crate::config::RunConfig;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use variety_model::{descriptor_to_json, VarietyDescriptor};

pub const SCHEMA: u32 = 1;

/// SHA-256 of the canonical JSON form of the descriptor.
pub fn descriptor_hash(v: &VarietyDescriptor) -> String {
    let text = descriptor_to_json(v).to_string();
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn envelope(config: &RunConfig, descriptor: Option<&VarietyDescriptor>, pass: bool, result: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "tool": "maninlab",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config.to_json(),
        "descriptor_sha256": descriptor.map(descriptor_hash),
        "pass": pass,
        "result": result,
    })
}

/// Does the value contain a floating-point number anywhere?
pub fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(o) => o.values().any(has_float),
        _ => false,
    }
}
