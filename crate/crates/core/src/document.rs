//! Versioned JSON documents for diagrams, placements and reports.
//!
//! Every exact number is a string: integers as `"12"`, rationals as `"3/2"`.
//! Documents produced by [`DiagramDocument::from_parts`] parse back to equal
//! values, and [`DiagramDocument::diagram`] rebuilds and revalidates the
//! diagram they describe.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{ConvexPolygon, IntMatrix, IntVector, Rational, RationalPoint, Side, UnimodularMap};
use crate::atf::{AtfError, BaseDiagram, Corner, CornerKind, MutationStep, MutationTrace, SeedOptions};
use crate::markov::MarkovTriple;
use crate::packing::{
    CapacityReport, DiamondPlacement, ExclusionSet, GluingCertificate, ModelShape, Region, Transition, TrianglePlacement,
};
use crate::polytope::WeightedPolytopeData;

pub const DOCUMENT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document version {0}, expected {DOCUMENT_VERSION}")]
    Version(u32),
    #[error("bad value at {field}: {message}")]
    Value { field: String, message: String },
    #[error("document describes an invalid diagram: {0}")]
    Diagram(#[from] AtfError),
}

type Result<T> = std::result::Result<T, DocError>;

fn bad(field: &str, message: impl Into<String>) -> DocError {
    DocError::Value { field: field.into(), message: message.into() }
}

pub type Pair = [String; 2];

fn rat(field: &str, s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| bad(field, format!("'{s}' is not a rational: {e}")))
}

fn int(field: &str, s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|e| bad(field, format!("'{s}' is not an integer: {e}")))
}

fn pt_doc(p: &RationalPoint) -> Pair {
    [p.x.to_string(), p.y.to_string()]
}

fn pt_parse(field: &str, p: &Pair) -> Result<RationalPoint> {
    Ok(RationalPoint::new(rat(field, &p[0])?, rat(field, &p[1])?))
}

fn vec_doc(v: &IntVector) -> Pair {
    [v.x.to_string(), v.y.to_string()]
}

fn vec_parse(field: &str, p: &Pair) -> Result<IntVector> {
    Ok(IntVector::new(int(field, &p[0])?, int(field, &p[1])?))
}

fn poly_doc(p: &ConvexPolygon) -> Vec<Pair> {
    p.vertices().iter().map(pt_doc).collect()
}

fn poly_parse(field: &str, v: &[Pair]) -> Result<ConvexPolygon> {
    let pts = v.iter().map(|p| pt_parse(field, p)).collect::<Result<Vec<_>>>()?;
    ConvexPolygon::new(pts).map_err(|e| bad(field, e.to_string()))
}

fn matrix_doc(m: &IntMatrix) -> [String; 4] {
    [m.a.to_string(), m.b.to_string(), m.c.to_string(), m.d.to_string()]
}

fn matrix_parse(field: &str, m: &[String; 4]) -> Result<IntMatrix> {
    Ok(IntMatrix { a: int(field, &m[0])?, b: int(field, &m[1])?, c: int(field, &m[2])?, d: int(field, &m[3])? })
}

fn triple_doc(t: &MarkovTriple) -> [String; 3] {
    t.entries().map(|x| x.to_string())
}

fn triple_parse(field: &str, t: &[String; 3]) -> Result<MarkovTriple> {
    MarkovTriple::new(int(field, &t[0])?, int(field, &t[1])?, int(field, &t[2])?).map_err(|e| bad(field, e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerDoc {
    pub weight: String,
    pub kind: String,
    pub cut_direction: Pair,
    pub node_params: Vec<String>,
    pub lens_label: Pair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    /// Row-major `[a, b, c, d]` for `[[a, b], [c, d]]`.
    pub linear: [String; 4],
    pub translation: Pair,
}

impl MapDoc {
    fn from_map(g: &UnimodularMap) -> Self {
        MapDoc { linear: matrix_doc(&g.linear), translation: pt_doc(&g.translation) }
    }

    fn to_map(&self, field: &str) -> Result<UnimodularMap> {
        UnimodularMap::new(matrix_parse(field, &self.linear)?, pt_parse(field, &self.translation)?)
            .map_err(|e| bad(field, e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub corner: usize,
    pub exponent: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionDoc {
    Triangle {
        map: MapDoc,
        side: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_edge: Option<usize>,
    },
    Diamond {
        psi: [String; 4],
        center: Pair,
        d: String,
    },
    Glued {
        pieces: Vec<Vec<Pair>>,
        transitions: Vec<TransitionDoc>,
        /// `"triangle"` or `"diamond"`.
        shape: String,
        size: String,
        model: Vec<Pair>,
    },
}

impl RegionDoc {
    pub fn from_region(r: &Region) -> Self {
        match r {
            Region::Triangle(t) => RegionDoc::Triangle { map: MapDoc::from_map(&t.map), side: t.side.to_string(), base_edge: t.base_edge },
            Region::Diamond(dm) => RegionDoc::Diamond { psi: matrix_doc(&dm.psi), center: pt_doc(&dm.center), d: dm.d.to_string() },
            Region::Glued(g) => {
                let (shape, size) = match &g.shape {
                    ModelShape::Triangle { side } => ("triangle", side),
                    ModelShape::Diamond { d } => ("diamond", d),
                };
                RegionDoc::Glued {
                    pieces: g.pieces.iter().map(poly_doc).collect(),
                    transitions: g.transitions.iter().map(|t| TransitionDoc { corner: t.corner, exponent: t.exponent }).collect(),
                    shape: shape.into(),
                    size: size.to_string(),
                    model: poly_doc(&g.model),
                }
            }
        }
    }

    pub fn to_region(&self, field: &str) -> Result<Region> {
        Ok(match self {
            RegionDoc::Triangle { map, side, base_edge } => Region::Triangle(TrianglePlacement {
                map: map.to_map(field)?,
                side: rat(field, side)?,
                base_edge: *base_edge,
            }),
            RegionDoc::Diamond { psi, center, d } => Region::Diamond(DiamondPlacement {
                psi: matrix_parse(field, psi)?,
                center: pt_parse(field, center)?,
                d: rat(field, d)?,
            }),
            RegionDoc::Glued { pieces, transitions, shape, size, model } => {
                let size = rat(field, size)?;
                let shape = match shape.as_str() {
                    "triangle" => ModelShape::Triangle { side: size },
                    "diamond" => ModelShape::Diamond { d: size },
                    other => return Err(bad(field, format!("unknown model shape '{other}'"))),
                };
                Region::Glued(GluingCertificate {
                    pieces: pieces.iter().map(|p| poly_parse(field, p)).collect::<Result<_>>()?,
                    transitions: transitions.iter().map(|t| Transition { corner: t.corner, exponent: t.exponent }).collect(),
                    shape,
                    model: poly_parse(field, model)?,
                })
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub corner: usize,
    /// `"left"` or `"right"` of the cut direction.
    pub kept_side: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub start: [String; 3],
    pub trade_all: bool,
    pub node_param: String,
    pub steps: Vec<StepDoc>,
    pub hash: String,
}

impl TraceDoc {
    pub fn from_trace(t: &MutationTrace) -> Self {
        TraceDoc {
            start: triple_doc(&t.start),
            trade_all: t.seed.trade_all,
            node_param: t.seed.node_param.to_string(),
            steps: t
                .steps
                .iter()
                .map(|s| StepDoc {
                    corner: s.corner,
                    kept_side: match s.kept_side {
                        Side::Left => "left".into(),
                        Side::Right => "right".into(),
                    },
                })
                .collect(),
            hash: t.hash.clone(),
        }
    }

    pub fn to_trace(&self) -> Result<MutationTrace> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let kept_side = match s.kept_side.as_str() {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    other => return Err(bad("trace.steps", format!("unknown side '{other}'"))),
                };
                Ok(MutationStep { corner: s.corner, kept_side })
            })
            .collect::<Result<_>>()?;
        Ok(MutationTrace {
            start: triple_parse("trace.start", &self.start)?,
            seed: SeedOptions { trade_all: self.trade_all, node_param: rat("trace.node_param", &self.node_param)? },
            steps,
            hash: self.hash.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub label: String,
    pub regions: usize,
    pub size: String,
    pub capacity_over_pi: String,
    pub excluded: String,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rejection: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundDoc {
    pub statement: String,
    pub value_over_pi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_over_pi: Option<String>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub entries: Vec<EntryDoc>,
    pub bounds: Vec<BoundDoc>,
    pub notes: Vec<String>,
}

impl ReportDoc {
    pub fn from_report(r: &CapacityReport) -> Self {
        use crate::packing::Verdict;
        ReportDoc {
            entries: r
                .entries
                .iter()
                .map(|e| EntryDoc {
                    label: e.label.clone(),
                    regions: e.regions,
                    size: e.size.to_string(),
                    capacity_over_pi: e.capacity_over_pi.to_string(),
                    excluded: e.excluded.to_string(),
                    verified: e.verdict.is_accepted(),
                    rejection: match &e.verdict {
                        Verdict::Rejected(why) => Some(why.clone()),
                        Verdict::Accepted => None,
                    },
                })
                .collect(),
            bounds: r
                .bounds
                .iter()
                .map(|b| BoundDoc {
                    statement: b.statement.clone(),
                    value_over_pi: b.value_over_pi.to_string(),
                    limit_over_pi: b.limit_over_pi.as_ref().map(|l| l.to_string()),
                    verified: b.verified,
                })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub version: u32,
    pub triple: [String; 3],
    pub polygon: Vec<Pair>,
    pub corners: Vec<CornerDoc>,
    pub fiber: Pair,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<RegionDoc>,
    /// Comma-separated excluded sets the regions are checked against.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excluded: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDoc>,
}

impl DiagramDocument {
    pub fn from_diagram(d: &BaseDiagram) -> Self {
        DiagramDocument::from_parts(d, &[], None)
    }

    pub fn from_parts(d: &BaseDiagram, regions: &[Region], excluded: Option<&ExclusionSet>) -> Self {
        DiagramDocument {
            version: DOCUMENT_VERSION,
            triple: triple_doc(&d.triple),
            polygon: poly_doc(&d.polygon),
            corners: d
                .corners
                .iter()
                .map(|c| CornerDoc {
                    weight: c.weight.to_string(),
                    kind: c.kind.to_string(),
                    cut_direction: vec_doc(&c.cut_direction),
                    node_params: c.node_params.iter().map(|t| t.to_string()).collect(),
                    lens_label: [c.lens_label.0.to_string(), c.lens_label.1.to_string()],
                })
                .collect(),
            fiber: pt_doc(&d.fiber),
            regions: regions.iter().map(RegionDoc::from_region).collect(),
            excluded: excluded.map(|e| e.to_string()),
            trace: None,
            report: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: DiagramDocument = serde_json::from_str(text)?;
        if doc.version != DOCUMENT_VERSION {
            return Err(DocError::Version(doc.version));
        }
        Ok(doc)
    }

    /// Rebuilds the diagram and checks every invariant.
    pub fn diagram(&self) -> Result<BaseDiagram> {
        let triple = triple_parse("triple", &self.triple)?;
        let polygon = poly_parse("polygon", &self.polygon)?;
        let corners = self
            .corners
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let field = format!("corners[{i}]");
                let kind = match c.kind.as_str() {
                    "delzant" => CornerKind::Delzant,
                    "cut" => CornerKind::Cut,
                    other => return Err(bad(&field, format!("unknown corner kind '{other}'"))),
                };
                Ok(Corner {
                    weight: int(&field, &c.weight)?,
                    kind,
                    cut_direction: vec_parse(&field, &c.cut_direction)?,
                    node_params: c.node_params.iter().map(|t| rat(&field, t)).collect::<Result<_>>()?,
                    lens_label: (int(&field, &c.lens_label[0])?, int(&field, &c.lens_label[1])?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let fiber = pt_parse("fiber", &self.fiber)?;
        let d = BaseDiagram { triple, polygon, corners, fiber };
        d.validate()?;
        Ok(d)
    }

    pub fn regions(&self) -> Result<Vec<Region>> {
        self.regions.iter().enumerate().map(|(i, r)| r.to_region(&format!("regions[{i}]"))).collect()
    }

    pub fn exclusion_set(&self) -> Result<ExclusionSet> {
        match &self.excluded {
            Some(s) => ExclusionSet::from_str(s).map_err(|e| bad("excluded", e)),
            None => Ok(ExclusionSet::default()),
        }
    }
}

/// Plain data of the unnormalized moment triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub version: u32,
    pub triple: [String; 3],
    pub l: [String; 3],
    pub vertices: Vec<Pair>,
    pub edge_vectors: Vec<Pair>,
    pub normals: Vec<Pair>,
    pub offsets: [String; 3],
    pub eigenrays: Vec<Pair>,
    pub lens_labels: Vec<Pair>,
    pub barycenter: Pair,
}

impl PolytopeDocument {
    pub fn from_data(d: &WeightedPolytopeData, barycenter: &RationalPoint) -> Self {
        PolytopeDocument {
            version: DOCUMENT_VERSION,
            triple: triple_doc(&d.triple),
            l: [d.l1.to_string(), d.l2.to_string(), d.l3.to_string()],
            vertices: poly_doc(&d.triangle),
            edge_vectors: d.edge_vectors.iter().map(vec_doc).collect(),
            normals: d.normals.iter().map(vec_doc).collect(),
            offsets: d.offsets.clone().map(|x| x.to_string()),
            eigenrays: d.eigenrays.iter().map(vec_doc).collect(),
            lens_labels: d.lens_labels.iter().map(|(p, q)| [p.to_string(), q.to_string()]).collect(),
            barycenter: pt_doc(barycenter),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atf::seed_diagram;
    use crate::packing::five_monotone_triangles;

    #[test]
    fn diagram_round_trip() {
        let d = seed_diagram(&MarkovTriple::new(1, 2, 5).unwrap()).unwrap();
        let doc = DiagramDocument::from_diagram(&d);
        let text = doc.to_json();
        let back = DiagramDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.diagram().unwrap(), d);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn regions_round_trip() {
        let p = five_monotone_triangles(&seed_diagram(&MarkovTriple::root()).unwrap()).unwrap();
        let doc = DiagramDocument::from_parts(&p.diagram, &p.regions, Some(&ExclusionSet::fiber_and_nodes()));
        let back = DiagramDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back.regions().unwrap(), p.regions);
        assert_eq!(back.exclusion_set().unwrap(), ExclusionSet::fiber_and_nodes());
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = DiagramDocument::parse("{\"version\": 1,\n  \"triple\": [1, 2]").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let mut doc = DiagramDocument::from_diagram(&seed_diagram(&MarkovTriple::root()).unwrap());
        doc.fiber = ["1".into(), "x".into()];
        assert!(matches!(doc.diagram(), Err(DocError::Value { .. })));
    }
}
