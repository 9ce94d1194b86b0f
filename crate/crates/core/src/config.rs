//! Quiver spec files.
//!
//! ```json
//! { "type": "A4", "vertices": ["1", "2", "3", "4"],
//!   "arrows": [["1", "2"], ["2", "3"], ["1", "4"]],
//!   "height": {"1": 3, "2": 2, "3": 1, "4": 2} }
//! ```
//!
//! `height` is optional; without it the canonical height function (minimum 0)
//! is used.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DynkinQuiver, DynkinType, HeightFunction};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    #[serde(rename = "type")]
    pub dynkin_type: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<BTreeMap<String, i64>>,
}

/// Deserializes `T`, naming the offending field on failure.
pub fn from_json_str<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse { field: if path == "." { "<root>".into() } else { path }, message: e.into_inner().to_string() }
    })
}

impl QuiverSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json_str(text)
    }

    pub fn build(&self) -> Result<(DynkinQuiver, HeightFunction)> {
        let ty = DynkinType::parse(&self.dynkin_type).map_err(|e| Error::Parse { field: "type".into(), message: e.to_string() })?;
        let q = DynkinQuiver::new(ty, &self.vertices, &self.arrows)?;
        let xi = match &self.height {
            None => HeightFunction::canonical(&q),
            Some(h) => {
                if let Some(k) = h.keys().find(|k| q.index_of(k).is_none()) {
                    return Err(Error::Parse { field: format!("height.{k}"), message: "unknown vertex".into() });
                }
                let mut values = Vec::with_capacity(q.len());
                for name in q.names() {
                    let v = h.get(name).ok_or_else(|| Error::Parse { field: format!("height.{name}"), message: "missing value".into() })?;
                    values.push(*v);
                }
                let xi = HeightFunction(values);
                xi.validate(&q)?;
                xi
            }
        };
        Ok((q, xi))
    }

    pub fn of(q: &DynkinQuiver, xi: &HeightFunction) -> Self {
        QuiverSpec {
            dynkin_type: q.dynkin_type().to_string(),
            vertices: q.names().to_vec(),
            arrows: q.arrows().iter().map(|&(s, t)| (q.name(s).to_string(), q.name(t).to_string())).collect(),
            height: Some(q.names().iter().cloned().zip(xi.0.iter().copied()).collect()),
        }
    }
}

pub fn load_quiver(text: &str) -> Result<(DynkinQuiver, HeightFunction)> {
    QuiverSpec::from_json(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    const A4: &str = r#"{"type": "A4", "vertices": ["1", "2", "3", "4"],
        "arrows": [["1", "2"], ["2", "3"], ["1", "4"]], "height": {"1": 3, "2": 2, "3": 1, "4": 2}}"#;

    #[test]
    fn loads_a4() {
        let (q, xi) = load_quiver(A4).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(xi.0, vec![3, 2, 1, 2]);
        let again = QuiverSpec::of(&q, &xi);
        assert_eq!(again, QuiverSpec::from_json(A4).unwrap());
    }

    #[test]
    fn errors_name_the_field() {
        let field = |text: &str| match load_quiver(text) {
            Err(Error::Parse { field, .. }) => field,
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(field(r#"{"type": "A2", "vertices": ["1", 2], "arrows": []}"#), "vertices[1]");
        assert_eq!(field(r#"{"type": "A2", "vertices": ["1", "2"], "arrows": [["1"]]}"#), "arrows[0]");
        assert_eq!(field(r#"{"type": "Q2", "vertices": ["1", "2"], "arrows": [["1", "2"]]}"#), "type");
        assert_eq!(field(r#"{"type": "A2", "vertices": ["1", "2"], "arrows": [["1", "2"]], "height": {"1": 1}}"#), "height.2");
        assert!(matches!(
            load_quiver(r#"{"type": "A2", "vertices": ["1", "2"], "arrows": [["1", "2"]], "height": {"1": 1, "2": 1}}"#),
            Err(Error::HeightMismatch { .. })
        ));
    }
}
