use std::fmt::Write as _;
use std::time::{Duration, Instant};

use hypercore::text::render_edge;
use hypercore::{Edge, GraphFile, Hypergraph, Vertex, VertexMap};
use serde::{Deserialize, Serialize};

/// What a report is about: one of the six properties or a supporting fact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Check {
    I,
    II,
    III,
    IV,
    V,
    VI,
    #[serde(rename = "missing1edge")]
    MissingOneEdge,
    #[serde(rename = "uniquerg")]
    UniqueRg,
    #[serde(rename = "observation42")]
    Observation42,
    /// Every monomorphism of a two-edge deletion fixes `z`.
    #[serde(rename = "zFixed")]
    ZFixed,
    /// Fixing `r` and `g` as edges forces the identity.
    #[serde(rename = "rgFixed")]
    RgFixed,
    /// With `e_94` and `e_59` present, `v9` is fixed.
    #[serde(rename = "v9Fixed")]
    V9Fixed,
    /// With a length-5 tight path present, only six permutations occur.
    #[serde(rename = "tightPathPermutations")]
    TightPathPermutations,
}

impl Check {
    pub const PROPERTIES: [Check; 6] = [
        Check::I,
        Check::II,
        Check::III,
        Check::IV,
        Check::V,
        Check::VI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::I => "I",
            Check::II => "II",
            Check::III => "III",
            Check::IV => "IV",
            Check::V => "V",
            Check::VI => "VI",
            Check::MissingOneEdge => "missing1edge",
            Check::UniqueRg => "uniquerg",
            Check::Observation42 => "observation42",
            Check::ZFixed => "zFixed",
            Check::RgFixed => "rgFixed",
            Check::V9Fixed => "v9Fixed",
            Check::TightPathPermutations => "tightPathPermutations",
        }
    }
}

/// Evidence in plain serialized form: edges as space-separated ids, maps as
/// `(from, to)` pairs and graphs in the line format, so a failure can be
/// re-checked without this crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<VertexMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
}

impl Witness {
    pub fn new(detail: impl Into<String>) -> Witness {
        Witness {
            detail: detail.into(),
            ..Witness::default()
        }
    }

    pub fn with_vertices(mut self, vs: impl IntoIterator<Item = Vertex>) -> Witness {
        self.vertices = vs.into_iter().collect();
        self
    }

    pub fn with_edges<'a>(mut self, es: impl IntoIterator<Item = &'a Edge>) -> Witness {
        self.edges = es.into_iter().map(render_edge).collect();
        self
    }

    pub fn with_map(mut self, m: &VertexMap) -> Witness {
        self.map = Some(m.clone());
        self
    }

    pub fn with_graph(mut self, h: &Hypergraph, z: Option<Vertex>) -> Witness {
        self.graph = Some(
            GraphFile {
                graph: h.clone(),
                z,
            }
            .render(),
        );
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyReport {
    pub property: Check,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Milliseconds.
    #[serde(with = "millis")]
    pub elapsed: Duration,
}

impl PropertyReport {
    pub(crate) fn timed(property: Check, f: impl FnOnce() -> (bool, Option<Witness>)) -> Self {
        let t0 = Instant::now();
        let (holds, witness) = f();
        debug_assert!(
            holds || witness.is_some(),
            "{property:?} failed without a witness"
        );
        PropertyReport {
            property,
            holds,
            witness,
            elapsed: t0.elapsed(),
        }
    }
}

/// Monomorphisms of `H` minus one or two edges back into `H`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RigidityResult {
    /// The deleted edges.
    pub pair: Vec<String>,
    pub monomorphism_count: usize,
    pub all_identity: bool,
    /// Every map found, when some map is not the identity.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub non_identity: Vec<VertexMap>,
    #[serde(with = "millis")]
    pub elapsed: Duration,
}

/// `verify_all` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FullReport {
    pub draw_sufficient: bool,
    /// Property (iv) ran on a subset of pairs.
    pub partial: bool,
    pub properties: Vec<PropertyReport>,
    pub supporting: Vec<PropertyReport>,
    pub rigidity: Vec<RigidityResult>,
}

impl FullReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in self.properties.iter().chain(&self.supporting) {
            write!(
                out,
                "{:<22} {:<5} {:>10.3} ms",
                r.property.name(),
                if r.holds { "ok" } else { "FAIL" },
                r.elapsed.as_secs_f64() * 1e3
            )
            .unwrap();
            if let Some(w) = &r.witness {
                write!(out, "  {}", w.detail).unwrap();
            }
            out.push('\n');
        }
        for p in &self.rigidity {
            writeln!(
                out,
                "pair {:<28} maps {:<3} identity {:<5} {:>9.3} ms",
                p.pair.join(" | "),
                p.monomorphism_count,
                p.all_identity,
                p.elapsed.as_secs_f64() * 1e3
            )
            .unwrap();
        }
        writeln!(
            out,
            "verdict: {}",
            if self.draw_sufficient {
                "draw-sufficient"
            } else {
                "not shown draw-sufficient"
            }
        )
        .unwrap();
        out
    }
}

mod millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let ms = f64::deserialize(d)?;
        Duration::try_from_secs_f64(ms / 1e3).map_err(serde::de::Error::custom)
    }
}
