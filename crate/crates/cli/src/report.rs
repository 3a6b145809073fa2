use std::path::Path;

use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use jetmetric::artin::ArtinAlgebra;
use jetmetric::metric::DistanceVerdict;
use jetmetric::Error;

pub const SCHEMA: &str = "jetmetric/1";

/// An input file: its name (not the full path, so reports do not depend on
/// the working directory) and content hash.
pub struct Input {
    pub name: String,
    pub text: String,
    pub sha256: String,
}

impl Input {
    pub fn read(path: &Path) -> std::io::Result<Input> {
        let bytes = std::fs::read(path)?;
        let name = path
            .file_name()
            .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        Ok(Input {
            name,
            sha256: hex::encode(Sha256::digest(&bytes)),
            text: String::from_utf8_lossy(&bytes).into_owned(),
        })
    }

    fn json(&self) -> Value {
        json!({ "file": self.name, "sha256": self.sha256 })
    }
}

pub struct Report {
    pub subcommand: &'static str,
    pub inputs: Vec<Value>,
    pub parameters: Map<String, Value>,
}

impl Report {
    pub fn new(subcommand: &'static str, inputs: &[&Input]) -> Self {
        Report {
            subcommand,
            inputs: inputs.iter().map(|i| i.json()).collect(),
            parameters: Map::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.into(), value.into());
    }

    fn envelope(self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA.into());
        m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        m.insert("subcommand".into(), self.subcommand.into());
        m.insert("inputs".into(), Value::Array(self.inputs));
        m.insert("parameters".into(), Value::Object(self.parameters));
        m
    }

    pub fn success(self, result: Value) -> Value {
        let mut m = self.envelope();
        m.insert("result".into(), result);
        Value::Object(m)
    }

    pub fn failure(self, err: &Error) -> Value {
        let mut m = self.envelope();
        m.insert("error".into(), json!({ "kind": err.kind(), "message": err.to_string() }));
        Value::Object(m)
    }
}

/// Integers as JSON numbers, other rationals as `"a/b"` strings.
pub fn rational(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Ok(v) = i64::try_from(r.to_integer()) {
            return v.into();
        }
    }
    r.to_string().into()
}

/// `2^-k` as an exact fraction string.
pub fn power_of_half(k: u32) -> Value {
    if k == 0 {
        "1".into()
    } else {
        format!("1/{}", num_bigint::BigInt::from(1) << k as usize).into()
    }
}

pub fn algebra(a: &ArtinAlgebra) -> Value {
    let (length, hf) = a.hilbert_function();
    let mut m = Map::new();
    m.insert("field".into(), a.field().to_string().into());
    m.insert("length".into(), length.into());
    m.insert("hf".into(), json!(hf));
    if !a.is_zero_ring() {
        let nilp = a.nilpotency_index().expect("nonzero");
        m.insert("nilpotency".into(), nilp.into());
        m.insert("embdim".into(), a.embdim().into());
        m.insert("socle_dim".into(), a.socle().expect("nonzero").0.into());
        m.insert("ball_radius".into(), power_of_half(nilp - 1));
    }
    m.insert("origin".into(), json!(a.origin()));
    m.insert(
        "basis".into(),
        Value::Array(a.basis().iter().map(|b| b.format(a.vars()).into()).collect()),
    );
    Value::Object(m)
}

pub fn distance(d: &DistanceVerdict) -> Value {
    let mut v = serde_json::to_value(d).expect("serializable");
    let obj = v.as_object_mut().expect("object");
    obj.insert("lower".into(), d.lower_exp.map_or_else(|| "0".into(), power_of_half));
    obj.insert("upper".into(), power_of_half(d.upper_exp));
    v
}
