//! JSON instance files.
//!
//! Rationals are written as strings (`"p/q"` or `"p"`) so values survive a
//! round trip exactly. A file carries exactly one payload: a face instance
//! (`n`, `k`, `points`), a planar problem (`triangle`, `feet`) or a surface
//! triple (`d`, `e`, `f`, optional `x`).

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projective::{IndexSet, ProjectivePoint};
use crate::{Instance, Point, Rational};

pub const SCHEMA_VERSION: u32 = 1;

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

fn parse_all(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse_rational(s)).collect()
}

fn format_all(items: &[Rational]) -> Vec<String> {
    items.iter().map(format_rational).collect()
}

fn parse_point(items: &[String], dim: usize, what: &str) -> Result<Point> {
    if items.len() != dim + 1 {
        return Err(Error::Parse(format!(
            "{what}: expected {} coordinates, got {}",
            dim + 1,
            items.len()
        )));
    }
    ProjectivePoint::new(parse_all(items)?)
        .map_err(|_| Error::Parse(format!("{what}: all coordinates are zero")))
}

fn parse_pair(items: &[String; 2]) -> Result<[Rational; 2]> {
    Ok([parse_rational(&items[0])?, parse_rational(&items[1])?])
}

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Payload {
    Face(Instance),
    Planar {
        triangle: [[Rational; 2]; 3],
        feet: [[Rational; 2]; 3],
    },
    Surface {
        d: Point,
        e: Point,
        f: Point,
        x: Option<Point>,
    },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Face(_) => "face",
            Self::Planar { .. } => "planar",
            Self::Surface { .. } => "surface",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub payload: Payload,
}

#[derive(Serialize, Deserialize)]
struct WirePoint {
    subset: Vec<usize>,
    coords: Vec<String>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Wire {
    #[serde(default)]
    schema_version: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<WirePoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    triangle: Option<[[String; 2]; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    feet: Option<[[String; 2]; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    e: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<Vec<String>>,
}

impl Wire {
    fn payload(self) -> Result<Payload> {
        let face = self.n.is_some() || self.k.is_some() || self.points.is_some();
        let planar = self.triangle.is_some() || self.feet.is_some();
        let surface = self.d.is_some() || self.e.is_some() || self.f.is_some() || self.x.is_some();
        match (face, planar, surface) {
            (true, false, false) => {
                let missing = || Error::Parse("face payload needs n, k and points".into());
                let (n, k) = (self.n.ok_or_else(missing)?, self.k.ok_or_else(missing)?);
                let points = self
                    .points
                    .ok_or_else(missing)?
                    .into_iter()
                    .map(|wp| {
                        let face = IndexSet::new(wp.subset, n)?;
                        let p = parse_point(
                            &wp.coords,
                            face.len().saturating_sub(1),
                            &format!("point for {face}"),
                        )?;
                        Ok((face, p))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Payload::Face(Instance::new(n, k, points)?))
            }
            (false, true, false) => {
                let missing = || Error::Parse("planar payload needs triangle and feet".into());
                let (t, f) = (
                    self.triangle.ok_or_else(missing)?,
                    self.feet.ok_or_else(missing)?,
                );
                let pairs = |raw: &[[String; 2]; 3]| -> Result<[[Rational; 2]; 3]> {
                    Ok([
                        parse_pair(&raw[0])?,
                        parse_pair(&raw[1])?,
                        parse_pair(&raw[2])?,
                    ])
                };
                Ok(Payload::Planar {
                    triangle: pairs(&t)?,
                    feet: pairs(&f)?,
                })
            }
            (false, false, true) => {
                let missing = || Error::Parse("surface payload needs d, e and f".into());
                Ok(Payload::Surface {
                    d: parse_point(&self.d.ok_or_else(missing)?, 1, "d")?,
                    e: parse_point(&self.e.ok_or_else(missing)?, 1, "e")?,
                    f: parse_point(&self.f.ok_or_else(missing)?, 1, "f")?,
                    x: self.x.map(|x| parse_point(&x, 2, "x")).transpose()?,
                })
            }
            (false, false, false) => Err(Error::Parse("no payload".into())),
            _ => Err(Error::Parse("more than one payload kind present".into())),
        }
    }

    fn from_payload(version: u32, payload: &Payload) -> Self {
        let mut w = Wire {
            schema_version: Some(version),
            ..Wire::default()
        };
        match payload {
            Payload::Face(inst) => {
                w.n = Some(inst.n());
                w.k = Some(inst.k());
                w.points = Some(
                    inst.points()
                        .map(|(face, p)| WirePoint {
                            subset: face.members().to_vec(),
                            coords: format_all(p.coords()),
                        })
                        .collect(),
                );
            }
            Payload::Planar { triangle, feet } => {
                let pairs =
                    |raw: &[[Rational; 2]; 3]| raw.clone().map(|p| p.map(|c| format_rational(&c)));
                w.triangle = Some(pairs(triangle));
                w.feet = Some(pairs(feet));
            }
            Payload::Surface { d, e, f, x } => {
                w.d = Some(format_all(d.coords()));
                w.e = Some(format_all(e.coords()));
                w.f = Some(format_all(f.coords()));
                w.x = x.as_ref().map(|x| format_all(x.coords()));
            }
        }
        w
    }
}

impl InstanceFile {
    pub fn new(payload: Payload) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            payload,
        }
    }

    pub fn face(inst: Instance) -> Self {
        Self::new(Payload::Face(inst))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let version = wire.schema_version.unwrap_or(SCHEMA_VERSION);
        if version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {version}"
            )));
        }
        Ok(Self {
            schema_version: version,
            payload: wire.payload()?,
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let wire = Wire::from_payload(self.schema_version, &self.payload);
        let mut out = serde_json::to_string_pretty(&wire).expect("wire types always serialise");
        out.push('\n');
        out
    }
}
