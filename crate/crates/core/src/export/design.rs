use std::collections::BTreeMap;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use super::SvgStyle;
use crate::cmap::{map_curve, ComplexMap};
use crate::curves::{sample, CurveDef, PlaneCurve, DEFAULT_SAMPLES_PER_TURN};
use crate::frame::FrameSpec;
use crate::solids::{SchlafliPair, Spanning};
use crate::stitch::{circle_stitch, multiplier_stitch, two_rail_stitch, StitchPattern};
use crate::surfaces::{combine, CombineMode, ImplicitSurface, ParametricSurfaceDef, ViewAxis, DEFAULT_RESOLUTION};

pub const DESIGN_VERSION: u32 = 1;
/// Pins per rail when a two-rail entry leaves `n` out.
pub const PRESET_STITCH_PINS: usize = 60;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocError {
    #[error("design document: {path}: {message}")]
    Json { path: String, message: String },
    #[error("unsupported design document version {0}, expected {DESIGN_VERSION}")]
    Version(u32),
    #[error("entry {entry:?} references missing entry {reference:?}")]
    DanglingReference { entry: String, reference: String },
    #[error("entry {entry:?} references {reference:?}, which is not a {expected}")]
    WrongKind { entry: String, reference: String, expected: &'static str },
    #[error("entry {0:?} depends on itself")]
    Cycle(String),
    #[error("no entry named {0:?}")]
    Missing(String),
    #[error("entry {entry:?}: {message}")]
    Build { entry: String, message: String },
}

/// A two-rail pattern names its rails; they must be curve or map entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "pattern", rename_all = "snake_case", deny_unknown_fields)]
pub enum StitchSpec {
    TwoRail {
        rail_a: String,
        rail_b: String,
        #[serde(default = "preset_pins")]
        n: usize,
        #[serde(default = "yes")]
        reversed: bool,
    },
    Circle {
        pins: usize,
        step: usize,
        #[serde(default = "unit")]
        radius: f64,
    },
    Multiplier {
        pins: usize,
        factor: usize,
        #[serde(default = "unit")]
        radius: f64,
    },
}

fn preset_pins() -> usize {
    PRESET_STITCH_PINS
}
fn yes() -> bool {
    true
}
fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolidSpec {
    pub schlafli: SchlafliPair,
    #[serde(default)]
    pub elevate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub net: Option<Spanning>,
    #[serde(default)]
    pub tabs: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Entry {
    Curve {
        def: CurveDef,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<usize>,
    },
    /// The image of another curve or map entry.
    Map { map: ComplexMap, source: String },
    Surface { surface: ImplicitSurface },
    /// Two surface entries combined.
    Combine {
        a: String,
        b: String,
        mode: CombineMode,
        #[serde(default)]
        s: f64,
    },
    Radial { surface: ParametricSurfaceDef },
    Stitch { stitch: StitchSpec },
    Solid { solid: SolidSpec },
    Frame { frame: FrameSpec },
}

impl Entry {
    pub fn kind(&self) -> &'static str {
        match self {
            Entry::Curve { .. } => "curve",
            Entry::Map { .. } => "map",
            Entry::Surface { .. } => "surface",
            Entry::Combine { .. } => "combine",
            Entry::Radial { .. } => "radial",
            Entry::Stitch { .. } => "stitch",
            Entry::Solid { .. } => "solid",
            Entry::Frame { .. } => "frame",
        }
    }

    /// Names of other entries this one reads.
    pub fn references(&self) -> Vec<&str> {
        match self {
            Entry::Map { source, .. } => vec![source],
            Entry::Combine { a, b, .. } => vec![a, b],
            Entry::Stitch { stitch: StitchSpec::TwoRail { rail_a, rail_b, .. } } => vec![rail_a, rail_b],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderSettings {
    pub width: usize,
    pub height: usize,
    pub view: ViewAxis,
    pub resolution: usize,
    pub samples: usize,
    pub svg: SvgStyle,
}

impl Default for RenderSettings {
    fn default() -> Self {
        RenderSettings {
            width: 512,
            height: 512,
            view: ViewAxis::PosZ,
            resolution: DEFAULT_RESOLUTION,
            samples: DEFAULT_SAMPLES_PER_TURN,
            svg: SvgStyle::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignDoc {
    pub version: u32,
    #[serde(deserialize_with = "unique_entries")]
    pub entries: BTreeMap<String, Entry>,
    #[serde(default)]
    pub render: RenderSettings,
}

fn unique_entries<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Entry>, D::Error> {
    struct Unique;
    impl<'de> Visitor<'de> for Unique {
        type Value = BTreeMap<String, Entry>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map of named entries")
        }
        fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some(name) = map.next_key::<String>()? {
                if out.contains_key(&name) {
                    return Err(serde::de::Error::custom(format!("duplicate entry name {name:?}")));
                }
                let entry = map.next_value()?;
                out.insert(name, entry);
            }
            Ok(out)
        }
    }
    d.deserialize_map(Unique)
}

impl Default for DesignDoc {
    fn default() -> Self {
        DesignDoc { version: DESIGN_VERSION, entries: BTreeMap::new(), render: RenderSettings::default() }
    }
}

impl DesignDoc {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, entry: Entry) -> Self {
        self.entries.insert(name.into(), entry);
        self
    }

    /// Version and cross-reference checks.
    pub fn validate(&self) -> Result<(), DocError> {
        if self.version != DESIGN_VERSION {
            return Err(DocError::Version(self.version));
        }
        for (name, entry) in &self.entries {
            for r in entry.references() {
                let target = self.entries.get(r).ok_or_else(|| DocError::DanglingReference {
                    entry: name.clone(),
                    reference: r.to_string(),
                })?;
                let expected = match entry {
                    Entry::Combine { .. } => ["surface", "combine"],
                    _ => ["curve", "map"],
                };
                if !expected.contains(&target.kind()) {
                    return Err(DocError::WrongKind {
                        entry: name.clone(),
                        reference: r.to_string(),
                        expected: if expected[0] == "surface" { "surface" } else { "curve" },
                    });
                }
            }
        }
        for name in self.entries.keys() {
            self.check_acyclic(name, &mut Vec::new())?;
        }
        Ok(())
    }

    fn check_acyclic<'a>(&'a self, name: &'a str, stack: &mut Vec<&'a str>) -> Result<(), DocError> {
        if stack.contains(&name) {
            return Err(DocError::Cycle(name.to_string()));
        }
        stack.push(name);
        if let Some(e) = self.entries.get(name) {
            for r in e.references() {
                self.check_acyclic(r, stack)?;
            }
        }
        stack.pop();
        Ok(())
    }

    fn entry(&self, name: &str) -> Result<&Entry, DocError> {
        self.entries.get(name).ok_or_else(|| DocError::Missing(name.to_string()))
    }

    /// Samples a curve entry, or maps its source for a map entry.
    pub fn curve(&self, name: &str) -> Result<PlaneCurve, DocError> {
        let build = |e: String| DocError::Build { entry: name.to_string(), message: e };
        match self.entry(name)? {
            Entry::Curve { def, samples } => {
                sample(def, samples.unwrap_or(self.render.samples)).map_err(|e| build(e.to_string()))
            }
            Entry::Map { map, source } => {
                let base = self.curve(source)?;
                map_curve(map, &base).map_err(|e| build(e.to_string()))
            }
            other => Err(build(format!("a {} entry is not a curve", other.kind()))),
        }
    }

    pub fn surface(&self, name: &str) -> Result<ImplicitSurface, DocError> {
        let build = |e: String| DocError::Build { entry: name.to_string(), message: e };
        match self.entry(name)? {
            Entry::Surface { surface } => Ok(surface.clone()),
            Entry::Combine { a, b, mode, s } => {
                let (a, b) = (self.surface(a)?, self.surface(b)?);
                combine(&a, &b, *mode, *s).map_err(|e| build(e.to_string()))
            }
            other => Err(build(format!("a {} entry is not a surface", other.kind()))),
        }
    }

    pub fn stitch(&self, name: &str) -> Result<StitchPattern, DocError> {
        let build = |e: String| DocError::Build { entry: name.to_string(), message: e };
        let Entry::Stitch { stitch } = self.entry(name)? else {
            return Err(build("not a stitch entry".into()));
        };
        let r = match stitch {
            StitchSpec::TwoRail { rail_a, rail_b, n, reversed } => {
                two_rail_stitch(&self.curve(rail_a)?, &self.curve(rail_b)?, *n, *reversed)
            }
            StitchSpec::Circle { pins, step, radius } => circle_stitch(*pins, *step, *radius),
            StitchSpec::Multiplier { pins, factor, radius } => multiplier_stitch(*pins, *factor, *radius),
        };
        r.map_err(|e| build(e.to_string()))
    }
}

/// Pretty-printed JSON with entries in name order.
pub fn save_design(doc: &DesignDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("design documents serialize");
    s.push('\n');
    s
}

/// Parses and validates a document. Schema errors carry the JSON path of
/// the offending field, e.g. `entries.flower.def.shape.radius`.
pub fn load_design(text: &str) -> Result<DesignDoc, DocError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: DesignDoc = serde_path_to_error::deserialize(de).map_err(|e| DocError::Json {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    doc.validate()?;
    Ok(doc)
}
