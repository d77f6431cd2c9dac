//! Input formats: polygon text and JSON, fan JSON, trigonal model JSON.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{FanError, ParseError};
use crate::fan::{smooth_refine, validate_fan, Fan, ToricDivisor};
use crate::gaps::TrigonalModel;
use crate::lattice::{LatticePoint, COORD_LIMIT};
use crate::polygon::LatticePolygon;

/// Bound on ray coordinates in fan input.
pub const RAY_LIMIT: i64 = 256;
/// Bound on divisor coefficients in fan input. Together with
/// [`RAY_LIMIT`] this keeps every polygon vertex below [`COORD_LIMIT`].
pub const COEFF_LIMIT: i64 = 4096;

/// One `z w` pair per line (space or comma separated); `#` starts a comment.
pub fn parse_polygon_text(s: &str) -> Result<LatticePolygon, ParseError> {
    let mut pts = Vec::new();
    for (i, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty()).collect();
        if fields.len() != 2 {
            return Err(ParseError::Text { line: i + 1, msg: format!("expected two integers, got {}", fields.len()) });
        }
        let mut xy = [0i64; 2];
        for (slot, f) in xy.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| ParseError::Text { line: i + 1, msg: format!("`{f}` is not an integer") })?;
        }
        pts.push(checked_point(xy)?);
    }
    polygon_from(&pts)
}

/// `{"vertices": [[z, w], ...]}` or a bare `[[z, w], ...]`.
pub fn parse_polygon_json(s: &str) -> Result<LatticePolygon, ParseError> {
    let v: Value = serde_json::from_str(s).map_err(json_err)?;
    polygon_from_value(v)
}

fn polygon_from_value(v: Value) -> Result<LatticePolygon, ParseError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        vertices: Vec<[i64; 2]>,
    }
    let raw: Vec<[i64; 2]> = match v {
        Value::Array(_) => serde_json::from_value(v).map_err(json_err)?,
        _ => serde_json::from_value::<Raw>(v).map_err(json_err)?.vertices,
    };
    let pts = raw.into_iter().map(checked_point).collect::<Result<Vec<_>, _>>()?;
    polygon_from(&pts)
}

/// Text or JSON, decided by the first non-blank character.
pub fn parse_polygon(s: &str) -> Result<LatticePolygon, ParseError> {
    if looks_like_json(s) {
        parse_polygon_json(s)
    } else {
        parse_polygon_text(s)
    }
}

fn checked_point(xy: [i64; 2]) -> Result<LatticePoint, ParseError> {
    let p = LatticePoint::from(xy);
    if p.within_limit() {
        Ok(p)
    } else {
        Err(ParseError::OutOfRange(if xy[0].abs() > COORD_LIMIT { xy[0] } else { xy[1] }))
    }
}

fn polygon_from(pts: &[LatticePoint]) -> Result<LatticePolygon, ParseError> {
    LatticePolygon::from_points(pts).map_err(|_| ParseError::Empty)
}

fn json_err(e: serde_json::Error) -> ParseError {
    ParseError::Json(e.to_string())
}

fn looks_like_json(s: &str) -> bool {
    matches!(s.trim_start().chars().next(), Some('{') | Some('['))
}

/// `{"rays": [[x, y], ...], "coeffs": [n, ...]}` as given; validation is
/// left to [`FanInput::fan`] so errors can name the rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanInput {
    pub rays: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<i64>>,
}

impl FanInput {
    /// The validated smooth fan.
    pub fn fan(&self) -> Result<Fan, FanError> {
        validate_fan(&self.rays)
    }

    /// The smooth refinement of the (possibly singular) fan.
    pub fn refined(&self) -> Result<Fan, FanError> {
        smooth_refine(&self.rays)
    }

    /// The divisor with coefficients matched to rays, whatever order the
    /// rays were listed in. `None` without coefficients.
    pub fn divisor(&self) -> Result<Option<ToricDivisor>, FanError> {
        let Some(coeffs) = &self.coeffs else { return Ok(None) };
        let fan = self.fan()?;
        if coeffs.len() != self.rays.len() {
            return Err(FanError::CoefficientCount { rays: self.rays.len(), coeffs: coeffs.len() });
        }
        let stored = fan
            .rays()
            .iter()
            .map(|r| {
                let i = self.rays.iter().position(|&[x, y]| (x, y) == (r.x(), r.y())).expect("ray from input");
                coeffs[i]
            })
            .collect();
        ToricDivisor::new(fan, stored).map(Some)
    }
}

pub fn parse_fan_json(s: &str) -> Result<FanInput, ParseError> {
    let f: FanInput = serde_json::from_str(s).map_err(json_err)?;
    check_fan_ranges(&f)?;
    Ok(f)
}

fn check_fan_ranges(f: &FanInput) -> Result<(), ParseError> {
    if let Some(&v) = f.rays.iter().flatten().find(|v| v.abs() > RAY_LIMIT) {
        return Err(ParseError::OutOfRange(v));
    }
    if let Some(&v) = f.coeffs.iter().flatten().find(|v| v.abs() > COEFF_LIMIT) {
        return Err(ParseError::OutOfRange(v));
    }
    Ok(())
}

/// `{"case": "i", "m": 1, ...}`; invariants are checked later by
/// [`TrigonalModel::validate`].
pub fn parse_model_json(s: &str) -> Result<TrigonalModel, ParseError> {
    serde_json::from_str(s).map_err(json_err)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Polygon(LatticePolygon),
    Fan(FanInput),
    Model(TrigonalModel),
}

/// Detects the kind of input: a JSON object with `rays` is a fan, one with
/// `case` a trigonal model, anything else a polygon (JSON or text).
pub fn parse_input(s: &str) -> Result<Input, ParseError> {
    if !looks_like_json(s) {
        return parse_polygon_text(s).map(Input::Polygon);
    }
    let v: Value = serde_json::from_str(s).map_err(json_err)?;
    match &v {
        Value::Object(m) if m.contains_key("rays") => {
            let f: FanInput = serde_json::from_value(v).map_err(json_err)?;
            check_fan_ranges(&f)?;
            Ok(Input::Fan(f))
        }
        Value::Object(m) if m.contains_key("case") => serde_json::from_value(v).map(Input::Model).map_err(json_err),
        _ => polygon_from_value(v).map(Input::Polygon),
    }
}
