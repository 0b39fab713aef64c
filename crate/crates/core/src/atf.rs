//! Almost toric base diagrams of CP² and the surgeries acting on them.
//!
//! A diagram is a normalized moment triangle (area 9/2) with a marked
//! monotone fiber. Each corner either is a smooth (Delzant) corner or carries
//! a cut: a primitive direction pointing from the vertex toward the fiber,
//! with one node on the open segment between them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::affine::{
    convex_hull, lattice_length, monodromy, primitive_decomposition, q, side_of, AffineError, Closure,
    ConvexPolygon, IntMatrix, IntVector, Rational, RationalPoint, Side, UnimodularMap,
};
use crate::markov::{self, MarkovTriple, Slot};
use crate::polytope::{self, lens_parameter, PolytopeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtfError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error("corner index {0} out of range")]
    NoSuchCorner(usize),
    #[error("corner {0} already carries a cut")]
    AlreadyCut(usize),
    #[error("corner {0} has no cut")]
    NoCut(usize),
    #[error("corner {0} must carry exactly one node, found {1}")]
    NodeCount(usize, usize),
    #[error("node parameter {0} must lie in the open interval (0, 1)")]
    BadNodeParameter(String),
    #[error("clustering radius must be positive, got {0}")]
    BadRadius(String),
    #[error("diagram invariant violated: {0}")]
    Invariant(String),
}

type Result<T> = std::result::Result<T, AtfError>;

fn invariant(msg: impl Into<String>) -> AtfError {
    AtfError::Invariant(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CornerKind {
    Delzant,
    Cut,
}

impl fmt::Display for CornerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CornerKind::Delzant => "delzant",
            CornerKind::Cut => "cut",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corner {
    /// `k` with the corner determinant equal to `k²`.
    pub weight: BigInt,
    pub kind: CornerKind,
    /// Primitive direction from the vertex toward the fiber. Kept for Delzant
    /// corners too, where it is the direction a nodal trade would use.
    pub cut_direction: IntVector,
    /// Node positions `t` in `(0, 1)` along the segment from vertex to fiber.
    pub node_params: Vec<Rational>,
    /// `(k², k l − 1)`.
    pub lens_label: (BigInt, BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseDiagram {
    pub triple: MarkovTriple,
    pub polygon: ConvexPolygon,
    /// One record per polygon vertex, same order.
    pub corners: Vec<Corner>,
    pub fiber: RationalPoint,
}

/// Options for [`seed_diagram_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedOptions {
    /// Also trade the weight-1 corners, so every corner carries a cut.
    pub trade_all: bool,
    pub node_param: Rational,
}

impl Default for SeedOptions {
    fn default() -> Self {
        SeedOptions { trade_all: false, node_param: q(1, 2) }
    }
}

impl BaseDiagram {
    pub fn corner(&self, i: usize) -> Result<&Corner> {
        self.corners.get(i).ok_or(AtfError::NoSuchCorner(i))
    }

    pub fn vertex(&self, i: usize) -> &RationalPoint {
        self.polygon.vertex(i)
    }

    /// All nodes, as `(corner index, point)`.
    pub fn nodes(&self) -> Vec<(usize, RationalPoint)> {
        let mut out = Vec::new();
        for (i, c) in self.corners.iter().enumerate() {
            for t in &c.node_params {
                out.push((i, self.vertex(i).lerp(&self.fiber, t)));
            }
        }
        out
    }

    /// The cut segment `[vertex, node]` of every cut corner.
    pub fn cut_segments(&self) -> Vec<(usize, RationalPoint, RationalPoint)> {
        self.nodes().into_iter().map(|(i, n)| (i, self.vertex(i).clone(), n)).collect()
    }

    /// Segments from the fiber to each vertex.
    pub fn skeleton(&self) -> Vec<(RationalPoint, RationalPoint)> {
        self.polygon.vertices().iter().map(|v| (self.fiber.clone(), v.clone())).collect()
    }

    pub fn cut_corners(&self) -> Vec<usize> {
        (0..self.corners.len()).filter(|&i| self.corners[i].kind == CornerKind::Cut).collect()
    }

    /// Global monodromy `x -> x + det(v, x) v` of the cut at corner `i`.
    pub fn cut_monodromy(&self, i: usize) -> Result<IntMatrix> {
        let c = self.corner(i)?;
        if c.kind != CornerKind::Cut {
            return Err(AtfError::NoCut(i));
        }
        Ok(monodromy(&c.cut_direction.x, &c.cut_direction.y)?)
    }

    /// Exponent `s` of the monodromy used when a region crosses a cut into
    /// the given side of its eigenline (oriented along the cut direction).
    pub fn crossing_exponent(into: Side) -> i32 {
        -into.sign()
    }

    /// Transition `A^s` about the vertex for continuing a region across the
    /// cut at corner `i` into side `into`. It fixes the eigenline pointwise and
    /// maps the part of the diagram on that side into the chart of the other.
    pub fn cut_transition(&self, i: usize, into: Side) -> Result<UnimodularMap> {
        let a = self.cut_monodromy(i)?;
        Ok(UnimodularMap::about(self.vertex(i), a.pow(Self::crossing_exponent(into))?)?)
    }

    /// Checks every structural invariant exactly.
    pub fn validate(&self) -> Result<()> {
        let n = self.polygon.len();
        if self.corners.len() != n {
            return Err(invariant("corner records do not match vertices"));
        }
        if self.polygon.area() != q(9, 2) {
            return Err(invariant(format!("area is {}, expected 9/2", self.polygon.area())));
        }
        if !self.triple.is_canonical() {
            return Err(invariant("triple is not canonical"));
        }
        if !self.polygon.contains_point(&self.fiber, Closure::Open) {
            return Err(invariant("fiber is not in the open polygon"));
        }
        let mut weights: Vec<BigInt> = Vec::new();
        for (i, c) in self.corners.iter().enumerate() {
            let v = self.vertex(i);
            let (dir, _) = primitive_decomposition(&(&self.fiber - v))?;
            if dir != c.cut_direction {
                return Err(invariant(format!("corner {i}: cut direction does not point at the fiber")));
            }
            let (k, l) = corner_frame(&self.polygon, i, &c.cut_direction)?;
            if k != c.weight {
                return Err(invariant(format!("corner {i}: weight {} but geometry gives {k}", c.weight)));
            }
            if c.lens_label != (&k * &k, &k * &l - BigInt::one()) {
                return Err(invariant(format!("corner {i}: stale lens label")));
            }
            match c.kind {
                CornerKind::Delzant => {
                    if !c.weight.is_one() || !c.node_params.is_empty() {
                        return Err(invariant(format!("corner {i}: Delzant corners have weight 1 and no nodes")));
                    }
                }
                CornerKind::Cut => {
                    if c.node_params.len() != 1 {
                        return Err(invariant(format!("corner {i}: expected one node")));
                    }
                    let t = &c.node_params[0];
                    if !t.is_positive() || t >= &Rational::one() {
                        return Err(invariant(format!("corner {i}: node parameter {t} outside (0, 1)")));
                    }
                    // Monodromy in the corner frame, conjugated back, must
                    // agree with the global formula and fix the direction.
                    let m = local_frame_matrix(&self.polygon, i)?;
                    let local = m.apply_int(&c.cut_direction);
                    let back = m.unimodular_inverse()?.mul(&monodromy(&local.x, &local.y)?).mul(&m);
                    let global = monodromy(&c.cut_direction.x, &c.cut_direction.y)?;
                    if back != global || global.apply_int(&c.cut_direction) != c.cut_direction {
                        return Err(invariant(format!("corner {i}: monodromy mismatch")));
                    }
                }
            }
            weights.push(c.weight.clone());
        }
        weights.sort();
        if weights != self.triple.entries().iter().map(|x| (*x).clone()).collect::<Vec<_>>() {
            return Err(invariant("corner weights differ from the triple"));
        }
        Ok(())
    }

    /// Deterministic hex digest, invariant under integral-affine motions.
    pub fn hash(&self) -> String {
        let mut key = String::new();
        for p in self.polygon.normal_form() {
            key.push_str(&format!("{},{};", p.x, p.y));
        }
        let mut corners: Vec<String> = self
            .corners
            .iter()
            .map(|c| {
                let ts: Vec<String> = c.node_params.iter().map(|t| t.to_string()).collect();
                format!("{}|{}|{}", c.weight, c.kind, ts.join(","))
            })
            .collect();
        corners.sort();
        key.push_str(&corners.join(";"));
        Sha256::digest(key.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Determinant-one matrix sending the edge toward the previous vertex to `(0, 1)`.
fn local_frame_matrix(poly: &ConvexPolygon, i: usize) -> Result<IntMatrix> {
    use num_integer::Integer;
    let n = poly.len();
    let (p, _) = primitive_decomposition(&(poly.vertex(i + n - 1) - poly.vertex(i)))?;
    let eg = p.x.extended_gcd(&p.y);
    let sign = if eg.gcd.is_negative() { -BigInt::one() } else { BigInt::one() };
    Ok(IntMatrix { a: p.y.clone(), b: -p.x.clone(), c: &eg.x * &sign, d: &eg.y * &sign })
}

/// `(k, l)` at corner `i` for the given inward direction.
fn corner_frame(poly: &ConvexPolygon, i: usize, cut: &IntVector) -> Result<(BigInt, BigInt)> {
    let n = poly.len();
    let (p, _) = primitive_decomposition(&(poly.vertex(i + n - 1) - poly.vertex(i)))?;
    Ok(lens_parameter(&p, cut)?)
}

/// `k` with `det(edges at corner i) = k²`.
pub fn corner_weight(poly: &ConvexPolygon, i: usize) -> Result<BigInt> {
    let n = poly.len();
    let (p, _) = primitive_decomposition(&(poly.vertex(i + n - 1) - poly.vertex(i)))?;
    let (w, _) = primitive_decomposition(&(poly.vertex(i + 1) - poly.vertex(i)))?;
    let det = w.det(&p);
    let k = det.sqrt();
    if &k * &k != det {
        return Err(invariant(format!("corner {i} determinant {det} is not a square")));
    }
    Ok(k)
}

fn make_corner(poly: &ConvexPolygon, i: usize, fiber: &RationalPoint, kind: CornerKind, nodes: Vec<Rational>) -> Result<Corner> {
    let (dir, _) = primitive_decomposition(&(fiber - poly.vertex(i)))?;
    let weight = corner_weight(poly, i)?;
    let (_, l) = corner_frame(poly, i, &dir)?;
    let lens_label = (&weight * &weight, &weight * &l - BigInt::one());
    Ok(Corner { weight, kind, cut_direction: dir, node_params: nodes, lens_label })
}

fn check_param(t: &Rational) -> Result<()> {
    if !t.is_positive() || t >= &Rational::one() {
        return Err(AtfError::BadNodeParameter(t.to_string()));
    }
    Ok(())
}

pub fn seed_diagram(t: &MarkovTriple) -> Result<BaseDiagram> {
    seed_diagram_with(t, &SeedOptions::default())
}

/// The normalized moment triangle with a cut at every corner of weight > 1.
pub fn seed_diagram_with(t: &MarkovTriple, opts: &SeedOptions) -> Result<BaseDiagram> {
    check_param(&opts.node_param)?;
    let norm = polytope::normalize(&polytope::build(t)?)?;
    let polygon = norm.triangle.clone();
    let fiber = norm.fiber.clone();
    let mut corners = Vec::with_capacity(3);
    for i in 0..3 {
        let weight = corner_weight(&polygon, i)?;
        let (kind, nodes) = if weight.is_one() && !opts.trade_all {
            (CornerKind::Delzant, vec![])
        } else {
            (CornerKind::Cut, vec![opts.node_param.clone()])
        };
        corners.push(make_corner(&polygon, i, &fiber, kind, nodes)?);
    }
    let d = BaseDiagram { triple: t.clone(), polygon, corners, fiber };
    d.validate()?;
    Ok(d)
}

/// Replaces a Delzant corner by a cut with one node at parameter `t`.
pub fn nodal_trade(d: &BaseDiagram, corner: usize, t: &Rational) -> Result<BaseDiagram> {
    check_param(t)?;
    if d.corner(corner)?.kind == CornerKind::Cut {
        return Err(AtfError::AlreadyCut(corner));
    }
    let mut out = d.clone();
    out.corners[corner].kind = CornerKind::Cut;
    out.corners[corner].node_params = vec![t.clone()];
    Ok(out)
}

/// Moves the node of a cut corner along its eigenline.
pub fn nodal_slide(d: &BaseDiagram, corner: usize, new_t: &Rational) -> Result<BaseDiagram> {
    check_param(new_t)?;
    let c = d.corner(corner)?;
    if c.kind != CornerKind::Cut {
        return Err(AtfError::NoCut(corner));
    }
    if c.node_params.len() != 1 {
        return Err(AtfError::NodeCount(corner, c.node_params.len()));
    }
    let mut out = d.clone();
    out.corners[corner].node_params = vec![new_t.clone()];
    Ok(out)
}

/// Slides every node so that its lattice distance to the fiber is at most `eps`.
pub fn cluster_nodes(d: &BaseDiagram, eps: &Rational) -> Result<BaseDiagram> {
    if !eps.is_positive() {
        return Err(AtfError::BadRadius(eps.to_string()));
    }
    let mut out = d.clone();
    for i in 0..d.corners.len() {
        let c = &d.corners[i];
        if c.kind != CornerKind::Cut {
            return Err(AtfError::NoCut(i));
        }
        let len = lattice_length(d.vertex(i), &d.fiber);
        let target = Rational::one() - eps / &len;
        let params = c
            .node_params
            .iter()
            .map(|t| if target.is_positive() && &target > t { target.clone() } else { t.clone() })
            .collect();
        out.corners[i].node_params = params;
    }
    Ok(out)
}

/// Which half stays put during a mutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    /// Keep the half containing the midpoint of the longest edge (lowest index
    /// on ties; the edge's start vertex if the midpoint is on the line).
    LongestEdge,
    /// Keep the given side of the eigenline, oriented along the cut direction.
    Keep(Side),
}

/// Everything a mutation did, for replay and locality checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationOutcome {
    pub diagram: BaseDiagram,
    /// Index of the new cut corner (the far end of the old eigenline).
    pub new_corner: usize,
    pub kept_side: Side,
    /// Map applied to the moved half.
    pub transition: UnimodularMap,
    /// The eigenline: old vertex and cut direction.
    pub line_point: RationalPoint,
    pub line_direction: IntVector,
    pub kept_piece: ConvexPolygon,
    pub moved_piece: ConvexPolygon,
}

pub fn mutate_diagram(d: &BaseDiagram, corner: usize) -> Result<BaseDiagram> {
    Ok(mutate_diagram_with(d, corner, Anchor::LongestEdge)?.diagram)
}

/// Cut transfer at `corner`: the half of the polygon away from the anchor is
/// moved by the cut's monodromy, the corner straightens out and a new corner
/// with the reversed cut appears where the eigenline leaves the polygon.
pub fn mutate_diagram_with(d: &BaseDiagram, corner: usize, anchor: Anchor) -> Result<MutationOutcome> {
    let c = d.corner(corner)?;
    if c.kind != CornerKind::Cut {
        return Err(AtfError::NoCut(corner));
    }
    if c.node_params.len() != 1 {
        return Err(AtfError::NodeCount(corner, c.node_params.len()));
    }
    let v = d.vertex(corner).clone();
    let dir = c.cut_direction.clone();
    let dir_q = dir.to_rational();
    let split = d.polygon.split_by_line(&v, &dir_q)?;
    let far = split.chord.1.clone();
    if d.polygon.vertices().contains(&far) {
        return Err(invariant("eigenline runs into another vertex"));
    }

    let kept_side = match anchor {
        Anchor::Keep(s) => s,
        Anchor::LongestEdge => anchor_side(&d.polygon, &v, &dir_q),
    };
    let (kept_piece, moved_piece) = match kept_side {
        Side::Left => (split.left, split.right),
        Side::Right => (split.right, split.left),
    };
    let moved_side = kept_side.opposite();
    let a = monodromy(&dir.x, &dir.y)?;
    let transition = UnimodularMap::about(&v, a.pow(BaseDiagram::crossing_exponent(moved_side))?)?;
    let moved_image = moved_piece.apply_map(&transition);

    let mut points: Vec<RationalPoint> = kept_piece.vertices().to_vec();
    points.extend(moved_image.vertices().iter().cloned());
    let polygon = convex_hull(&points).map_err(|_| invariant("mutated polygon is degenerate"))?;
    if polygon.area() != d.polygon.area() {
        return Err(invariant("mutation is not area preserving; the glued halves are not convex"));
    }

    // Triple: the slot whose entry is the mutated corner's weight.
    let slot = Slot::ALL
        .into_iter()
        .find(|s| d.triple.get(*s) == &c.weight)
        .ok_or_else(|| invariant("corner weight missing from triple"))?;
    let triple = markov::mutate(&d.triple, slot).canonical;

    let old_node = v.lerp(&d.fiber, &c.node_params[0]);
    let reflected = &d.fiber.scale(&Rational::from_integer(2.into())) - &old_node;
    let to_far = &far - &d.fiber;
    let along = to_far.dot(&(&reflected - &d.fiber)) / to_far.norm_sq();
    let new_node = if along.is_positive() && along < Rational::one() {
        reflected
    } else {
        d.fiber.lerp(&far, &q(1, 2))
    };
    let new_t = (&new_node - &far).dot(&(&d.fiber - &far)) / (&d.fiber - &far).norm_sq();

    let mut corners = Vec::with_capacity(polygon.len());
    let mut new_corner = None;
    for (i, p) in polygon.vertices().iter().enumerate() {
        if p == &far {
            corners.push(make_corner(&polygon, i, &d.fiber, CornerKind::Cut, vec![new_t.clone()])?);
            new_corner = Some(i);
            continue;
        }
        let source = if side_of(&v, &dir_q, p) == Some(kept_side) {
            d.polygon.vertices().iter().position(|x| x == p)
        } else {
            let back = transition.inverse().apply(p);
            d.polygon.vertices().iter().position(|x| x == &back)
        };
        let j = source.ok_or_else(|| invariant(format!("vertex {p} of the mutated polygon has no source")))?;
        let old = &d.corners[j];
        corners.push(make_corner(&polygon, i, &d.fiber, old.kind, old.node_params.clone())?);
    }
    let new_corner = new_corner.ok_or_else(|| invariant("new corner missing"))?;
    let diagram = BaseDiagram { triple, polygon, corners, fiber: d.fiber.clone() };
    diagram.validate()?;
    Ok(MutationOutcome {
        diagram,
        new_corner,
        kept_side,
        transition,
        line_point: v,
        line_direction: dir,
        kept_piece,
        moved_piece,
    })
}

fn anchor_side(poly: &ConvexPolygon, v: &RationalPoint, dir: &RationalPoint) -> Side {
    let lengths = poly.edge_lattice_lengths();
    let max = lengths.iter().max().expect("edges");
    let i = lengths.iter().position(|l| l == max).expect("max exists");
    let (a, b) = poly.edge(i);
    let mid = a.lerp(b, &q(1, 2));
    side_of(v, dir, &mid)
        .or_else(|| side_of(v, dir, a))
        .or_else(|| side_of(v, dir, b))
        .expect("an edge cannot lie on a line through the interior")
}

/// Outcome of the locality check after clustering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityReport {
    pub kept_half_unchanged: bool,
    pub moved_half_is_image: bool,
    pub line_fixed: bool,
    pub nodes_within_eps: bool,
}

impl LocalityReport {
    pub fn holds(&self) -> bool {
        self.kept_half_unchanged && self.moved_half_is_image && self.line_fixed && self.nodes_within_eps
    }
}

/// Recomputes, from the diagrams alone, that a mutation of a diagram whose
/// nodes are clustered within `eps` of the fiber changes nothing but the
/// chart on the moved half, and that all nodes before and after stay
/// within `eps`.
pub fn check_mutation_locality(before: &BaseDiagram, outcome: &MutationOutcome, eps: &Rational) -> Result<LocalityReport> {
    let after = &outcome.diagram;
    let v = &outcome.line_point;
    let dir = outcome.line_direction.to_rational();
    let split_before = before.polygon.split_by_line(v, &dir)?;
    let split_after = after.polygon.split_by_line(v, &dir)?;
    let (kb, mb, ka, ma) = match outcome.kept_side {
        Side::Left => (split_before.left, split_before.right, split_after.left, split_after.right),
        Side::Right => (split_before.right, split_before.left, split_after.right, split_after.left),
    };
    let g = &outcome.transition;
    let line_fixed = g.apply(v) == *v && g.apply(&(v + &dir)) == (v + &dir) && g.apply(&before.fiber) == before.fiber;
    let within = |d: &BaseDiagram| d.nodes().iter().all(|(_, n)| lattice_length(n, &d.fiber) <= *eps);
    Ok(LocalityReport {
        kept_half_unchanged: kb.same_cycle(&ka),
        moved_half_is_image: mb.apply_map(g).same_cycle(&ma),
        line_fixed,
        nodes_within_eps: within(before) && within(after),
    })
}

/// One mutation step: corner index and which side of its eigenline was kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationStep {
    pub corner: usize,
    pub kept_side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationTrace {
    pub start: MarkovTriple,
    pub seed: SeedOptions,
    pub steps: Vec<MutationStep>,
    pub hash: String,
}

impl MutationTrace {
    /// Applies `corners` in order starting from the seed of `start`, keeping the
    /// longest-edge half each time.
    pub fn record(start: &MarkovTriple, seed: SeedOptions, corners: &[usize]) -> Result<(MutationTrace, BaseDiagram)> {
        let mut d = seed_diagram_with(start, &seed)?;
        let mut steps = Vec::new();
        for &corner in corners {
            let out = mutate_diagram_with(&d, corner, Anchor::LongestEdge)?;
            steps.push(MutationStep { corner, kept_side: out.kept_side });
            d = out.diagram;
        }
        let trace = MutationTrace { start: start.clone(), seed, steps, hash: d.hash() };
        Ok((trace, d))
    }

    pub fn replay(&self) -> Result<BaseDiagram> {
        let mut d = seed_diagram_with(&self.start, &self.seed)?;
        for step in &self.steps {
            d = mutate_diagram_with(&d, step.corner, Anchor::Keep(step.kept_side))?.diagram;
        }
        Ok(d)
    }

    pub fn verify(&self) -> Result<bool> {
        Ok(self.replay()?.hash() == self.hash)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{polygon_equiv, qi};

    fn triple(a: i64, b: i64, c: i64) -> MarkovTriple {
        MarkovTriple::new(a, b, c).unwrap()
    }

    fn pt(x: Rational, y: Rational) -> RationalPoint {
        RationalPoint::new(x, y)
    }

    fn traded(t: &MarkovTriple) -> BaseDiagram {
        seed_diagram_with(t, &SeedOptions { trade_all: true, node_param: q(1, 2) }).unwrap()
    }

    #[test]
    fn seed_examples() {
        let d = seed_diagram(&triple(1, 1, 1)).unwrap();
        assert_eq!(d.fiber, pt(qi(1), qi(1)));
        assert!(d.corners.iter().all(|c| c.kind == CornerKind::Delzant));

        let d = seed_diagram(&triple(1, 1, 2)).unwrap();
        assert_eq!(d.polygon.vertices().to_vec(), vec![pt(qi(0), qi(0)), pt(q(3, 2), qi(0)), pt(qi(0), qi(6))]);
        assert_eq!(d.fiber, pt(qi(1), qi(1)));
        assert_eq!(d.cut_corners(), vec![1]);
        assert_eq!(d.corners[1].cut_direction, IntVector::new(-1, 2));

        let d = seed_diagram(&triple(1, 2, 5)).unwrap();
        assert_eq!(d.fiber, pt(qi(1), qi(1)));
        assert_eq!(d.cut_corners(), vec![1, 2]);
    }

    #[test]
    fn trade_and_slide() {
        let d = seed_diagram(&triple(1, 1, 1)).unwrap();
        let t = nodal_trade(&d, 0, &q(1, 2)).unwrap();
        assert_eq!(t.corners[0].cut_direction, IntVector::new(1, 1));
        assert_eq!(t.polygon, d.polygon);
        assert!(matches!(nodal_trade(&t, 0, &q(1, 2)), Err(AtfError::AlreadyCut(0))));
        let all = nodal_trade(&nodal_trade(&t, 1, &q(1, 2)).unwrap(), 2, &q(1, 2)).unwrap();
        assert_eq!(all.nodes().len(), 3);

        let s = nodal_slide(&t, 0, &q(99, 100)).unwrap();
        assert_eq!(s.polygon, t.polygon);
        assert!(s.validate().is_ok());
        assert!(nodal_slide(&t, 0, &qi(1)).is_err());
        assert!(nodal_slide(&t, 0, &qi(0)).is_err());
    }

    #[test]
    fn mutation_of_cp2_gives_p114() {
        let d = traded(&triple(1, 1, 1));
        let out = mutate_diagram_with(&d, 0, Anchor::LongestEdge).unwrap();
        assert_eq!(out.diagram.triple, triple(1, 1, 2));
        let expect = ConvexPolygon::new(vec![pt(qi(-3), qi(0)), pt(qi(3), qi(0)), pt(q(3, 2), q(3, 2))]).unwrap();
        assert!(out.diagram.polygon.same_cycle(&expect));
        let seed = seed_diagram(&triple(1, 1, 2)).unwrap();
        assert!(polygon_equiv(&out.diagram.polygon, &seed.polygon).is_some());
        assert_eq!(out.diagram.fiber, d.fiber);
    }

    #[test]
    fn mutation_twice_is_identity_up_to_equivalence() {
        let d = traded(&triple(1, 1, 2));
        for corner in 0..3 {
            let once = mutate_diagram_with(&d, corner, Anchor::LongestEdge).unwrap();
            let twice = mutate_diagram_with(&once.diagram, once.new_corner, Anchor::LongestEdge).unwrap();
            assert_eq!(twice.diagram.triple, d.triple);
            assert!(polygon_equiv(&twice.diagram.polygon, &d.polygon).is_some());
        }
    }

    #[test]
    fn mutation_of_p114_at_b_gives_p1425() {
        let d = traded(&triple(1, 1, 2));
        // The weight-b corner is vertex 2.
        let m = mutate_diagram(&d, 2).unwrap();
        assert_eq!(m.triple, triple(1, 2, 5));
        assert!(polygon_equiv(&m.polygon, &seed_diagram(&triple(1, 2, 5)).unwrap().polygon).is_some());
    }

    #[test]
    fn clustering_and_locality() {
        let d = traded(&triple(1, 1, 1));
        let eps = q(1, 10);
        let cl = cluster_nodes(&d, &eps).unwrap();
        for (_, n) in cl.nodes() {
            assert!(lattice_length(&n, &cl.fiber) <= eps);
        }
        assert_eq!(cl.corners[0].node_params, vec![q(9, 10)]);
        let out = mutate_diagram_with(&cl, 0, Anchor::LongestEdge).unwrap();
        assert!(check_mutation_locality(&cl, &out, &eps).unwrap().holds());
        assert!(cluster_nodes(&d, &qi(0)).is_err());
    }

    #[test]
    fn trace_replays() {
        let (trace, d) = MutationTrace::record(&triple(1, 1, 1), SeedOptions { trade_all: true, node_param: q(1, 2) }, &[0, 1]).unwrap();
        assert!(trace.verify().unwrap());
        assert_eq!(trace.replay().unwrap(), d);
    }

    #[test]
    fn mutation_commutes_with_seed_for_small_triples() {
        for t in markov::enumerate(&BigInt::from(50)) {
            let d = traded(&t);
            for corner in 0..3 {
                let out = mutate_diagram_with(&d, corner, Anchor::LongestEdge).unwrap();
                let slot = Slot::ALL.into_iter().find(|s| t.get(*s) == &d.corners[corner].weight).unwrap();
                let expect = markov::mutate(&t, slot).canonical;
                assert_eq!(out.diagram.triple, expect);
                let seed = seed_diagram(&expect).unwrap();
                assert!(polygon_equiv(&out.diagram.polygon, &seed.polygon).is_some(), "{t} corner {corner}");
            }
        }
    }
}
