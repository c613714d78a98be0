//! JSON encodings. Rationals are `"p/q"` strings; object keys come out sorted.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::cliffweights::WeightConfig;
use crate::error::{Error, Result};
use crate::exact::{GramMatrix, Vector};
use crate::rootsys::RootSet;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RootSetFile {
    basis_gram: GramMatrix,
    vectors: Vec<Vector>,
    // written by `root_set_to_json`; ignored on input
    #[serde(default)]
    #[allow(dead_code)]
    norms: Option<Value>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Reads `{"basis_gram": [[..]], "vectors": [[..], ..]}`.
pub fn parse_root_set(text: &str) -> Result<RootSet> {
    let file: RootSetFile = serde_json::from_str(text).map_err(parse_error)?;
    RootSet::new(file.basis_gram, file.vectors)
}

pub fn parse_weight_config(text: &str) -> Result<WeightConfig> {
    let cfg: WeightConfig = serde_json::from_str(text).map_err(parse_error)?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn gram_to_json(g: &GramMatrix) -> Value {
    serde_json::to_value(g).expect("gram matrices serialize")
}

/// Norm multiset as `[{"norm": "1/2", "count": 8}, ..]`, ascending.
pub fn norms_summary(s: &RootSet) -> Value {
    Value::Array(
        s.norm_histogram()
            .into_iter()
            .map(|(norm, count)| json!({ "norm": norm.to_string(), "count": count }))
            .collect(),
    )
}

pub fn root_set_to_json(s: &RootSet) -> Value {
    json!({
        "basis_gram": gram_to_json(s.form()),
        "vectors": s.vectors(),
        "norms": norms_summary(s),
    })
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values print")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"basis_gram": [["1/2", 0], [0, "1/2"]], "vectors": [[1, 0], [-1, 0], [0, 1], [0, -1]]}"#;
        let s = parse_root_set(text).unwrap();
        let back = parse_root_set(&root_set_to_json(&s).to_string()).unwrap();
        assert_eq!(s.vectors(), back.vectors());
        assert_eq!(norms_summary(&s), json!([{ "norm": "1/2", "count": 4 }]));
    }

    #[test]
    fn errors_carry_location() {
        let err = parse_root_set("{\n \"basis_gram\": [[1]],\n \"vectors\": [[0.5]]\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }
}
