//! JSON instance documents: `{g, r, d, points: [{id, mults, weights?}], options}`.

use serde::{Deserialize, Serialize};

use parmod_core::shift::ShiftAmount;
use parmod_core::{Error, MarkedPoint, ParabolicData, Rational, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDocument {
    pub id: String,
    pub mults: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(rename = "fixedDet", default = "yes")]
    pub fixed_det: bool,
}

fn yes() -> bool {
    true
}

impl Default for Options {
    fn default() -> Self {
        Options { fixed_det: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub g: i64,
    pub r: u32,
    pub d: i64,
    #[serde(default)]
    pub points: Vec<PointDocument>,
    #[serde(default)]
    pub options: Options,
}

impl InstanceDocument {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| {
            Error::Invalid(vec![Violation::new("$", format!("malformed instance: {e}"))])
        })
    }

    pub fn to_json(&self) -> String {
        // round-trip through Value for sorted keys
        let value = serde_json::to_value(self).expect("documents always serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values always serialize");
        s.push('\n');
        s
    }

    /// Parses weights and validates everything, collecting all problems.
    pub fn to_data(&self) -> Result<ParabolicData, Error> {
        let mut bad = Vec::new();
        let mut points = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let weights = p.weights.as_ref().map(|ws| {
                ws.iter()
                    .enumerate()
                    .filter_map(|(k, s)| match s.parse::<Rational>() {
                        Ok(x) => Some(x),
                        Err(e) => {
                            bad.push(Violation::new(format!("points.{}.weights[{k}]", p.id), e.to_string()));
                            None
                        }
                    })
                    .collect::<Vec<_>>()
            });
            points.push(MarkedPoint {
                id: p.id.clone(),
                mults: p.mults.clone(),
                weights,
            });
        }
        if !bad.is_empty() {
            return Err(Error::Invalid(bad));
        }
        ParabolicData::new(self.g, self.r, self.d, points)
    }

    pub fn from_data(data: &ParabolicData, options: Options) -> Self {
        InstanceDocument {
            g: data.genus(),
            r: data.rank(),
            d: data.degree(),
            points: data
                .points()
                .iter()
                .map(|p| PointDocument {
                    id: p.id.clone(),
                    mults: p.mults.clone(),
                    weights: p
                        .weights
                        .as_ref()
                        .map(|w| w.iter().map(ToString::to_string).collect()),
                })
                .collect(),
            options,
        }
    }
}

/// Parses `--eta`: comma-separated items, each either a bare rational (the
/// default for every point, 0 when absent) or `id=rational`.
pub fn parse_eta(amounts: &str, data: &ParabolicData) -> Result<ShiftAmount, Error> {
    let mut default = Rational::zero();
    let mut overrides: Vec<(String, Rational)> = Vec::new();
    let mut bad = Vec::new();
    for (k, item) in amounts.split(',').map(str::trim).enumerate() {
        let path = format!("eta[{k}]");
        match item.split_once('=') {
            Some((id, value)) => match value.trim().parse::<Rational>() {
                Ok(x) => {
                    let id = id.trim();
                    if data.points().iter().any(|p| p.id == id) {
                        overrides.push((id.to_string(), x));
                    } else {
                        bad.push(Violation::new(path, format!("unknown point {id:?}")));
                    }
                }
                Err(e) => bad.push(Violation::new(path, e.to_string())),
            },
            None => match item.parse::<Rational>() {
                Ok(x) => default = x,
                Err(e) => bad.push(Violation::new(path, e.to_string())),
            },
        }
    }
    if !bad.is_empty() {
        return Err(Error::Invalid(bad));
    }
    Ok(ShiftAmount(
        data.points()
            .iter()
            .map(|p| {
                overrides
                    .iter()
                    .rev()
                    .find(|(id, _)| id == &p.id)
                    .map_or_else(|| default.clone(), |(_, x)| x.clone())
            })
            .collect(),
    ))
}
