//! JSON curve files.
//!
//! ```json
//! {"kind": "closed_form", "domain": [0, 1], "form": "alpha_n", "params": {"n": 2}}
//! {"kind": "sampled", "domain": [0, 1], "samples": [[0.0, 0.0, 1.0], ...]}
//! ```
//!
//! Registered closed forms: `alpha_n {n}`, `klein_normal`,
//! `segment {origin, velocity}`, `circle {radius, omega, phase}`.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{ClosedForm, LutzCurve};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    ClosedForm,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub kind: CurveKind,
    pub domain: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Map<String, Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<[f64; 3]>>,
}

impl CurveDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::field("curve", e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn closed_form(form: ClosedForm, domain: [f64; 2]) -> Self {
        let mut obj = match serde_json::to_value(form) {
            Ok(Value::Object(m)) => m,
            _ => unreachable!("closed forms serialize to objects"),
        };
        let name = match obj.remove("form") {
            Some(Value::String(s)) => s,
            _ => unreachable!("closed forms carry a tag"),
        };
        CurveDoc {
            kind: CurveKind::ClosedForm,
            domain,
            form: Some(name),
            params: (!obj.is_empty()).then_some(obj),
            samples: None,
        }
    }

    pub fn sampled(samples: Vec<[f64; 3]>) -> Self {
        let domain = [
            samples.first().map_or(0.0, |s| s[0]),
            samples.last().map_or(0.0, |s| s[0]),
        ];
        CurveDoc {
            kind: CurveKind::Sampled,
            domain,
            form: None,
            params: None,
            samples: Some(samples),
        }
    }

    pub fn to_curve(&self) -> Result<LutzCurve> {
        let [lo, hi] = self.domain;
        match self.kind {
            CurveKind::ClosedForm => {
                if self.samples.is_some() {
                    return Err(Error::field("samples", "not allowed for closed_form curves"));
                }
                let name = self
                    .form
                    .as_ref()
                    .ok_or_else(|| Error::field("form", "missing for closed_form curve"))?;
                let mut obj = self.params.clone().unwrap_or_default();
                obj.insert("form".into(), Value::String(name.clone()));
                let form: ClosedForm = serde_json::from_value(Value::Object(obj))
                    .map_err(|e| Error::field("params", format!("form {name:?}: {e}")))?;
                LutzCurve::closed_form(form, lo, hi)
            }
            CurveKind::Sampled => {
                if self.form.is_some() || self.params.is_some() {
                    return Err(Error::field("form", "not allowed for sampled curves"));
                }
                let samples = self
                    .samples
                    .clone()
                    .ok_or_else(|| Error::field("samples", "missing for sampled curve"))?;
                let curve = LutzCurve::sampled(samples)?;
                if curve.domain() != (lo, hi) {
                    return Err(Error::field(
                        "domain",
                        format!(
                            "[{lo}, {hi}] does not match sample range {:?}",
                            curve.domain()
                        ),
                    ));
                }
                Ok(curve)
            }
        }
    }
}

impl LutzCurve {
    pub fn from_json(text: &str) -> Result<Self> {
        CurveDoc::from_json(text)?.to_curve()
    }

    /// Closed forms keep their registry entry; everything else is written as
    /// samples on a 2000-interval grid.
    pub fn to_doc(&self) -> Result<CurveDoc> {
        let (lo, hi) = self.domain();
        Ok(match (self.closed_form_kind(), self.samples()) {
            (Some(form), _) => CurveDoc::closed_form(form, [lo, hi]),
            (None, Some(s)) => CurveDoc::sampled(s.to_vec()),
            (None, None) => CurveDoc::sampled(self.tabulate(2000)?),
        })
    }
}
