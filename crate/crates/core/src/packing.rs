//! Exact certificates for triangles and diamonds placed in base diagrams.
//!
//! Constructors here only propose placements; [`verify`] decides. Sizes are in
//! the affine units of the normalized diagram, where the monotone fiber sits
//! at height 1 above every edge. An affine size `s` corresponds to
//! Fubini–Study capacity `(2π/3) s`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::affine::{
    frame_to_x_axis, polygon_equiv, primitive_decomposition, q, qi, side_of, AffineError, Closure, ConvexPolygon,
    IntMatrix, Rational, RationalPoint, Side, UnimodularMap,
};
use crate::atf::{nodal_slide, nodal_trade, seed_diagram, seed_diagram_with, AtfError, BaseDiagram, CornerKind, SeedOptions};
use crate::markov::MarkovTriple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackingError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("triangle side must satisfy 0 < s < 1, got {0}")]
    BadSide(String),
    #[error("diamond target {0} does not apply to triple {1}")]
    WrongTarget(String, String),
    #[error("diamond shrink must be positive, got {0}")]
    BadEpsilon(String),
    #[error(transparent)]
    Atf(#[from] AtfError),
    #[error(transparent)]
    Affine(#[from] AffineError),
}

type Result<T> = std::result::Result<T, PackingError>;

fn malformed(msg: impl Into<String>) -> PackingError {
    PackingError::Malformed(msg.into())
}

// ---------------------------------------------------------------------------
// Regions
// ---------------------------------------------------------------------------

/// Image of `conv{(0,0), (s,0), (0,s)}` under `map`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrianglePlacement {
    pub map: UnimodularMap,
    pub side: Rational,
    /// Diagram edge containing the image of the side `[(0,0), (s,0)]`.
    pub base_edge: Option<usize>,
}

impl TrianglePlacement {
    pub fn polygon(&self) -> ConvexPolygon {
        model_triangle(&self.side).apply_map(&self.map)
    }

    /// Triangle with the given vertices, the first two forming the base.
    pub fn from_vertices(p0: &RationalPoint, p1: &RationalPoint, p2: &RationalPoint, base_edge: Option<usize>) -> Result<Self> {
        let (e1, s1) = primitive_decomposition(&(p1 - p0))?;
        let (e2, s2) = primitive_decomposition(&(p2 - p0))?;
        if s1 != s2 {
            return Err(malformed(format!("sides from {p0} have lattice lengths {s1} and {s2}")));
        }
        let map = UnimodularMap::new(IntMatrix::from_columns(&e1, &e2), p0.clone())
            .map_err(|_| malformed(format!("triangle {p0}, {p1}, {p2} is not a unimodular corner")))?;
        Ok(TrianglePlacement { map, side: s1, base_edge })
    }
}

/// `center + Ψ(◇(d))` with `◇(d) = {|x| + |y| < d/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondPlacement {
    pub psi: IntMatrix,
    pub center: RationalPoint,
    pub d: Rational,
}

impl DiamondPlacement {
    pub fn polygon(&self) -> Result<ConvexPolygon> {
        let map = UnimodularMap::new(self.psi.clone(), self.center.clone())?;
        Ok(model_diamond(&self.d).apply_map(&map))
    }
}

/// Shape of the region a glued certificate claims to realize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelShape {
    Triangle { side: Rational },
    Diamond { d: Rational },
}

/// Crossing of the cut at `corner`, with the monodromy exponent used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub corner: usize,
    pub exponent: i32,
}

/// A region realized by pieces lying in different charts of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingCertificate {
    pub pieces: Vec<ConvexPolygon>,
    pub transitions: Vec<Transition>,
    pub shape: ModelShape,
    /// The model region in the chart of the first piece.
    pub model: ConvexPolygon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Region {
    Triangle(TrianglePlacement),
    Diamond(DiamondPlacement),
    Glued(GluingCertificate),
}

impl Region {
    /// Affine size: the side of a triangle or `d` of a diamond.
    pub fn size(&self) -> Rational {
        match self {
            Region::Triangle(t) => t.side.clone(),
            Region::Diamond(dm) => dm.d.clone(),
            Region::Glued(g) => match &g.shape {
                ModelShape::Triangle { side } => side.clone(),
                ModelShape::Diamond { d } => d.clone(),
            },
        }
    }

    /// Capacity divided by π.
    pub fn capacity_over_pi(&self) -> Rational {
        q(2, 3) * self.size()
    }

    /// The pieces of the region as they sit in the diagram.
    pub fn pieces(&self) -> Result<Vec<ConvexPolygon>> {
        Ok(match self {
            Region::Triangle(t) => vec![t.polygon()],
            Region::Diamond(dm) => vec![dm.polygon()?],
            Region::Glued(g) => g.pieces.clone(),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Region::Triangle(_) => "triangle",
            Region::Diamond(_) => "diamond",
            Region::Glued(_) => "glued",
        }
    }

    /// Total affine area of the pieces.
    pub fn area(&self) -> Result<Rational> {
        Ok(self.pieces()?.iter().fold(Rational::zero(), |acc, p| acc + p.area()))
    }
}

pub fn model_triangle(side: &Rational) -> ConvexPolygon {
    let z = Rational::zero();
    ConvexPolygon::new(vec![
        RationalPoint::new(z.clone(), z.clone()),
        RationalPoint::new(side.clone(), z.clone()),
        RationalPoint::new(z, side.clone()),
    ])
    .expect("positive side")
}

pub fn model_diamond(d: &Rational) -> ConvexPolygon {
    let h = d / qi(2);
    let z = Rational::zero();
    ConvexPolygon::new(vec![
        RationalPoint::new(h.clone(), z.clone()),
        RationalPoint::new(z.clone(), h.clone()),
        RationalPoint::new(-&h, z.clone()),
        RationalPoint::new(z, -h),
    ])
    .expect("positive size")
}

// ---------------------------------------------------------------------------
// Exclusions and verification
// ---------------------------------------------------------------------------

/// Sets a region must avoid. Single pieces never meet a cut in their interior
/// regardless of `cuts`; the flag matters for reporting only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExclusionSet {
    pub fiber: bool,
    pub nodes: bool,
    pub cuts: bool,
    pub skeleton: bool,
    pub boundary: bool,
}

impl ExclusionSet {
    pub fn fiber_and_nodes() -> Self {
        ExclusionSet { fiber: true, nodes: true, ..Default::default() }
    }

    pub fn divisor_complement() -> Self {
        ExclusionSet { fiber: true, nodes: true, boundary: true, ..Default::default() }
    }

    pub fn skeleton_complement() -> Self {
        ExclusionSet { fiber: true, nodes: true, cuts: true, skeleton: true, ..Default::default() }
    }

    fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        for (on, name) in [
            (self.fiber, "fiber"),
            (self.nodes, "nodes"),
            (self.cuts, "cuts"),
            (self.skeleton, "skeleton"),
            (self.boundary, "boundary"),
        ] {
            if on {
                v.push(name);
            }
        }
        v
    }
}

impl fmt::Display for ExclusionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(","))
    }
}

impl FromStr for ExclusionSet {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut out = ExclusionSet::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "fiber" => out.fiber = true,
                "nodes" => out.nodes = true,
                "cuts" => out.cuts = true,
                "skeleton" => out.skeleton = true,
                "boundary" => out.boundary = true,
                other => return Err(format!("unknown excluded set '{other}'")),
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(String),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

/// Exact check of a region against a diagram. Geometric failures give
/// `Ok(Verdict::Rejected)`; certificates that do not describe the claimed
/// region give `Err(PackingError::Malformed)`.
pub fn verify(d: &BaseDiagram, region: &Region, excluded: &ExclusionSet) -> Result<Verdict> {
    if let Region::Glued(g) = region {
        check_gluing(d, g)?;
    }
    if let Region::Triangle(t) = region {
        if let Some(e) = t.base_edge {
            let (a, b) = (t.map.apply(&RationalPoint::origin()), t.map.apply(&RationalPoint::new(t.side.clone(), Rational::zero())));
            if e >= d.polygon.len() || !on_edge(&d.polygon, e, &a) || !on_edge(&d.polygon, e, &b) {
                return Ok(Verdict::Rejected(format!("base side is not contained in edge {e}")));
            }
        }
    }
    for (i, piece) in region.pieces()?.iter().enumerate() {
        if let Some(reason) = piece_failure(d, piece, excluded) {
            return Ok(Verdict::Rejected(format!("piece {i}: {reason}")));
        }
    }
    Ok(Verdict::Accepted)
}

fn on_edge(poly: &ConvexPolygon, e: usize, p: &RationalPoint) -> bool {
    let (a, b) = poly.edge(e);
    (b - a).cross(&(p - a)).is_zero() && !(a - p).dot(&(b - p)).is_positive()
}

fn piece_failure(d: &BaseDiagram, piece: &ConvexPolygon, ex: &ExclusionSet) -> Option<String> {
    let closure = if ex.boundary { Closure::Open } else { Closure::Closed };
    if !d.polygon.contains_polygon(piece, closure) {
        return Some(if ex.boundary {
            "closure is not inside the open polygon".into()
        } else {
            "not contained in the polygon".into()
        });
    }
    if ex.fiber && piece.contains_point(&d.fiber, Closure::Open) {
        return Some("contains the fiber".into());
    }
    if ex.nodes {
        if let Some((i, _)) = d.nodes().iter().find(|(_, n)| piece.contains_point(n, Closure::Open)) {
            return Some(format!("contains the node of corner {i}"));
        }
    }
    if let Some((i, _, _)) = d.cut_segments().iter().find(|(_, v, n)| piece.interior_meets_segment(v, n)) {
        return Some(format!("meets the cut of corner {i}"));
    }
    if ex.skeleton {
        if let Some(i) = d.skeleton().iter().position(|(f, v)| piece.interior_meets_segment(f, v)) {
            return Some(format!("meets the skeleton segment to vertex {i}"));
        }
    }
    None
}

fn check_gluing(d: &BaseDiagram, g: &GluingCertificate) -> Result<()> {
    let m = g.pieces.len();
    if m == 0 {
        return Err(malformed("no pieces"));
    }
    if g.transitions.len() + 1 != m {
        return Err(malformed(format!("{m} pieces need {} transitions, got {}", m - 1, g.transitions.len())));
    }
    let standard = match &g.shape {
        ModelShape::Triangle { side } if side.is_positive() => model_triangle(side),
        ModelShape::Diamond { d } if d.is_positive() => model_diamond(d),
        _ => return Err(malformed("model size must be positive")),
    };
    if polygon_equiv(&standard, &g.model).is_none() {
        return Err(malformed("model region is not an integral-affine copy of the declared shape"));
    }

    let mut h = UnimodularMap::identity();
    let mut images = vec![g.pieces[0].clone()];
    for (i, tr) in g.transitions.iter().enumerate() {
        let corner = d.corner(tr.corner).map_err(|e| malformed(e.to_string()))?;
        if corner.kind != CornerKind::Cut || corner.node_params.len() != 1 {
            return Err(malformed(format!("transition {i} names corner {} which has no single-node cut", tr.corner)));
        }
        let v = d.vertex(tr.corner);
        let dir = corner.cut_direction.to_rational();
        let (a, b) = (&g.pieces[i], &g.pieces[i + 1]);
        let side_a = closed_side(v, &dir, a).ok_or_else(|| malformed(format!("piece {i} straddles the eigenline")))?;
        let side_b = closed_side(v, &dir, b).ok_or_else(|| malformed(format!("piece {} straddles the eigenline", i + 1)))?;
        if side_a == side_b {
            return Err(malformed(format!("pieces {i} and {} lie on the same side of the cut", i + 1)));
        }
        let expected = BaseDiagram::crossing_exponent(side_b);
        if tr.exponent != expected {
            return Err(malformed(format!("transition {i} declares exponent {} but crossing needs {expected}", tr.exponent)));
        }
        let node = d.vertex(tr.corner).lerp(&d.fiber, &corner.node_params[0]);
        let shared = shared_segment_on_line(a, b, v, &dir).ok_or_else(|| malformed(format!("pieces {i} and {} share no segment of the eigenline", i + 1)))?;
        if !segment_within(&shared, v, &node) {
            return Err(malformed(format!("pieces {i} and {} are glued outside the cut segment", i + 1)));
        }
        let step = d.cut_transition(tr.corner, side_b).map_err(|e| malformed(e.to_string()))?;
        h = h.compose(&step);
        images.push(b.apply_map(&h));
    }
    let mut total = Rational::zero();
    for (i, img) in images.iter().enumerate() {
        if !g.model.contains_polygon(img, Closure::Closed) {
            return Err(malformed(format!("piece {i} does not map into the model region")));
        }
        for (j, other) in images.iter().enumerate().skip(i + 1) {
            if img.interiors_intersect(other) {
                return Err(malformed(format!("pieces {i} and {j} overlap in the model chart")));
            }
        }
        total += img.area();
    }
    if total != g.model.area() {
        return Err(malformed(format!("pieces cover area {total} of a model of area {}", g.model.area())));
    }
    for (i, a) in g.pieces.iter().enumerate() {
        for (j, b) in g.pieces.iter().enumerate().skip(i + 1) {
            if a.interiors_intersect(b) {
                return Err(malformed(format!("pieces {i} and {j} overlap in the diagram")));
            }
        }
    }
    Ok(())
}

fn closed_side(point: &RationalPoint, dir: &RationalPoint, poly: &ConvexPolygon) -> Option<Side> {
    let sides: BTreeSet<_> = poly.vertices().iter().filter_map(|p| side_of(point, dir, p)).map(|s| s == Side::Left).collect();
    match sides.len() {
        1 => Some(if sides.contains(&true) { Side::Left } else { Side::Right }),
        _ => None,
    }
}

/// Intersection of the edges of `a` and `b` lying on the line, if it has
/// positive length.
fn shared_segment_on_line(a: &ConvexPolygon, b: &ConvexPolygon, point: &RationalPoint, dir: &RationalPoint) -> Option<(RationalPoint, RationalPoint)> {
    let on_line = |poly: &ConvexPolygon| -> Option<(Rational, Rational)> {
        let ts: Vec<Rational> = poly
            .vertices()
            .iter()
            .filter(|p| side_of(point, dir, p).is_none())
            .map(|p| dir.dot(&(p - point)) / dir.norm_sq())
            .collect();
        if ts.len() == 2 {
            let (lo, hi) = if ts[0] < ts[1] { (ts[0].clone(), ts[1].clone()) } else { (ts[1].clone(), ts[0].clone()) };
            Some((lo, hi))
        } else {
            None
        }
    };
    let (a0, a1) = on_line(a)?;
    let (b0, b1) = on_line(b)?;
    let lo = a0.max(b0);
    let hi = a1.min(b1);
    if lo >= hi {
        return None;
    }
    Some((point + &dir.scale(&lo), point + &dir.scale(&hi)))
}

fn segment_within(seg: &(RationalPoint, RationalPoint), v: &RationalPoint, n: &RationalPoint) -> bool {
    let inside = |p: &RationalPoint| (n - v).cross(&(p - v)).is_zero() && !(v - p).dot(&(n - p)).is_positive();
    inside(&seg.0) && inside(&seg.1)
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

/// A unimodular chart in which the longest edge is `[0, L] × {0}`, the
/// polygon lies above it and the fiber sits at `(fx, 1)` with `fx` within 1/2
/// of `L/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestEdgeFrame {
    /// Diagram coordinates to frame coordinates.
    pub to_frame: UnimodularMap,
    pub edge: usize,
    pub length: Rational,
    pub fiber_x: Rational,
}

pub fn longest_edge_frame(d: &BaseDiagram) -> Result<LongestEdgeFrame> {
    let lengths = d.polygon.edge_lattice_lengths();
    let length = lengths.iter().max().cloned().expect("edges");
    let edge = lengths.iter().position(|l| l == &length).expect("max");
    let (a, b) = d.polygon.edge(edge);
    let (dir, _) = primitive_decomposition(&(b - a))?;
    let m = frame_to_x_axis(&dir);
    let shift = -&m.apply(a);
    let base = UnimodularMap::new(m, shift)?;
    let f = base.apply(&d.fiber);
    if f.y != Rational::one() {
        return Err(malformed(format!("fiber is at height {} above the longest edge", f.y)));
    }
    let half = q(1, 2);
    let shear_amt = -(&f.x - &length / qi(2) + &half).floor().to_integer();
    let shear = UnimodularMap::new(IntMatrix { a: BigInt::one(), b: shear_amt, c: BigInt::zero(), d: BigInt::one() }, RationalPoint::origin())?;
    let to_frame = shear.compose(&base);
    let fiber_x = to_frame.apply(&d.fiber).x;
    Ok(LongestEdgeFrame { to_frame, edge, length, fiber_x })
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

fn frame_triangle(frame: &LongestEdgeFrame, p: [RationalPoint; 3]) -> Result<TrianglePlacement> {
    let back = frame.to_frame.inverse();
    let [a, b, c] = p.map(|x| back.apply(&x));
    TrianglePlacement::from_vertices(&a, &b, &c, Some(frame.edge))
}

/// Side-1 triangle with base on the longest edge and apex at the fiber.
pub fn single_monotone_triangle(d: &BaseDiagram) -> Result<TrianglePlacement> {
    let frame = longest_edge_frame(d)?;
    let fx = frame.fiber_x.clone();
    let z = Rational::zero();
    frame_triangle(
        &frame,
        [
            RationalPoint::new(fx.clone(), z.clone()),
            RationalPoint::new(&fx + Rational::one(), z),
            RationalPoint::new(fx, Rational::one()),
        ],
    )
}

/// Five regions together with the diagram they live in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    pub diagram: BaseDiagram,
    pub regions: Vec<Region>,
}

impl Packing {
    pub fn total_area(&self) -> Result<Rational> {
        self.regions.iter().try_fold(Rational::zero(), |acc, r| Ok(acc + r.area()?))
    }

    /// Verifies every region and pairwise interior-disjointness of all pieces.
    pub fn verify(&self, excluded: &ExclusionSet) -> Result<Verdict> {
        for (i, r) in self.regions.iter().enumerate() {
            if let Verdict::Rejected(why) = verify(&self.diagram, r, excluded)? {
                return Ok(Verdict::Rejected(format!("region {i}: {why}")));
            }
        }
        let mut pieces = Vec::new();
        for (i, r) in self.regions.iter().enumerate() {
            for p in r.pieces()? {
                pieces.push((i, p));
            }
        }
        for (x, (i, a)) in pieces.iter().enumerate() {
            for (j, b) in pieces.iter().skip(x + 1) {
                if i != j && a.interiors_intersect(b) {
                    return Ok(Verdict::Rejected(format!("regions {i} and {j} overlap")));
                }
            }
        }
        Ok(Verdict::Accepted)
    }
}

/// Five side-1 triangles. For `c ≥ 2` they fan out from the fiber over
/// consecutive unit bases on the longest edge; the fan lies in the triangle
/// spanned by that edge and the fiber, which no cut enters. For `(1,1,1)`
/// two corners are traded and their nodes slid close to the fiber, one
/// triangle is glued across a cut, and the other four sit in the gaps.
pub fn five_monotone_triangles(d: &BaseDiagram) -> Result<Packing> {
    if d.triple.is_root() {
        return clifford_five();
    }
    let frame = longest_edge_frame(d)?;
    let fx = frame.fiber_x.clone();
    let x0 = &fx - fx.floor();
    let z = Rational::zero();
    let apex = RationalPoint::new(fx, Rational::one());
    let mut regions = Vec::new();
    for k in 0..5 {
        let left = &x0 + qi(k);
        let right = &left + Rational::one();
        let t = frame_triangle(&frame, [RationalPoint::new(left, z.clone()), RationalPoint::new(right, z.clone()), apex.clone()])?;
        regions.push(Region::Triangle(t));
    }
    Ok(Packing { diagram: d.clone(), regions })
}

fn pts(v: &[(Rational, Rational)]) -> Vec<RationalPoint> {
    v.iter().map(|(x, y)| RationalPoint::new(x.clone(), y.clone())).collect()
}

/// The (1,1,1) diagram with the corners at (0,0) and (3,0) traded and their
/// nodes at parameter 9/10.
pub fn clifford_five_diagram() -> Result<BaseDiagram> {
    let mut d = seed_diagram(&MarkovTriple::root())?;
    for corner in [0, 1] {
        d = nodal_trade(&d, corner, &q(1, 2))?;
        d = nodal_slide(&d, corner, &q(9, 10))?;
    }
    Ok(d)
}

fn clifford_five() -> Result<Packing> {
    let d = clifford_five_diagram()?;
    let (z, h, o, t, th) = (qi(0), q(1, 2), qi(1), qi(2), qi(3));
    let glued = GluingCertificate {
        pieces: vec![
            ConvexPolygon::new(pts(&[(z.clone(), z.clone()), (o.clone(), z.clone()), (h.clone(), h.clone())]))?,
            ConvexPolygon::new(pts(&[(z.clone(), z.clone()), (h.clone(), h.clone()), (o.clone(), t.clone())]))?,
        ],
        transitions: vec![Transition { corner: 0, exponent: BaseDiagram::crossing_exponent(Side::Left) }],
        shape: ModelShape::Triangle { side: o.clone() },
        model: model_triangle(&o),
    };
    let tri = |a: (&Rational, &Rational), b: (&Rational, &Rational), c: (&Rational, &Rational), edge: Option<usize>| {
        let p = pts(&[(a.0.clone(), a.1.clone()), (b.0.clone(), b.1.clone()), (c.0.clone(), c.1.clone())]);
        TrianglePlacement::from_vertices(&p[0], &p[1], &p[2], edge).map(Region::Triangle)
    };
    let regions = vec![
        Region::Glued(glued),
        tri((&o, &z), (&t, &z), (&o, &o), Some(0))?,
        tri((&z, &t), (&z, &o), (&o, &t), Some(2))?,
        tri((&z, &th), (&z, &t), (&o, &t), Some(2))?,
        tri((&o, &o), (&t, &o), (&o, &t), None)?,
    ];
    Ok(Packing { diagram: d, regions })
}

/// The (1,1,1) diagram with all corners traded and nodes within 1/10 of the fiber.
pub fn clustered_clifford_diagram() -> Result<BaseDiagram> {
    let d = seed_diagram_with(&MarkovTriple::root(), &SeedOptions { trade_all: true, node_param: q(1, 2) })?;
    Ok(crate::atf::cluster_nodes(&d, &q(1, 10))?)
}

/// Nine side-`s` triangles in the complement of the skeleton of the clustered
/// (1,1,1) diagram, three along each edge. The three along the bottom edge
/// are `(0,0),(s,0),(s,s)`, `(1,0),(1+s,0),(1,s)` and `(2,0),(2+s,0),(2−s,s)`;
/// the rest are their images under the order-3 symmetry fixing the fiber.
pub fn nine_ball_skeleton_packing(s: &Rational) -> Result<Packing> {
    if !s.is_positive() || s >= &Rational::one() {
        return Err(PackingError::BadSide(s.to_string()));
    }
    let d = clustered_clifford_diagram()?;
    let (z, o, t) = (qi(0), qi(1), qi(2));
    let bottom = [
        pts(&[(z.clone(), z.clone()), (s.clone(), z.clone()), (s.clone(), s.clone())]),
        pts(&[(o.clone(), z.clone()), (&o + s, z.clone()), (o.clone(), s.clone())]),
        pts(&[(t.clone(), z.clone()), (&t + s, z.clone()), (&t - s, s.clone())]),
    ];
    let rot = UnimodularMap::new(IntMatrix::new(-1, -1, 1, 0), RationalPoint::from_ints(3, 0))?;
    let mut regions = Vec::new();
    let mut g = UnimodularMap::identity();
    for edge in 0..3 {
        for tri in &bottom {
            let p: Vec<RationalPoint> = tri.iter().map(|x| g.apply(x)).collect();
            regions.push(Region::Triangle(TrianglePlacement::from_vertices(&p[0], &p[1], &p[2], Some(edge))?));
        }
        g = rot.compose(&g);
    }
    let packing = Packing { diagram: d, regions };
    let area = packing.total_area()?;
    if area != qi(9) * s * s / qi(2) || area >= q(9, 2) {
        return Err(malformed(format!("nine-ball area accounting gives {area}")));
    }
    Ok(packing)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiamondTarget {
    /// `◇(1/2 − ε)` inside the single monotone triangle; any triple.
    General,
    /// `◇(6/7 − ε)` over the longest edge; needs `c ≥ 2`.
    CGeTwo,
    /// `◇(1 − ε)` in the (1,1,1) diagram.
    Clifford,
}

impl fmt::Display for DiamondTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiamondTarget::General => "general",
            DiamondTarget::CGeTwo => "c_ge_2",
            DiamondTarget::Clifford => "clifford",
        })
    }
}

impl FromStr for DiamondTarget {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "general" => Ok(DiamondTarget::General),
            "c_ge_2" | "c-ge-2" => Ok(DiamondTarget::CGeTwo),
            "clifford" => Ok(DiamondTarget::Clifford),
            other => Err(format!("unknown diamond target '{other}'")),
        }
    }
}

impl DiamondTarget {
    /// Size before shrinking by ε.
    pub fn nominal_size(self) -> Rational {
        match self {
            DiamondTarget::General => q(1, 2),
            DiamondTarget::CGeTwo => q(6, 7),
            DiamondTarget::Clifford => qi(1),
        }
    }
}

/// A diamond in the complement of the fiber, the nodes and the boundary.
pub fn diamond_bounds(d: &BaseDiagram, target: DiamondTarget, eps: &Rational) -> Result<DiamondPlacement> {
    if !eps.is_positive() || eps >= &target.nominal_size() {
        return Err(PackingError::BadEpsilon(eps.to_string()));
    }
    let size = target.nominal_size() - eps;
    match target {
        DiamondTarget::General => {
            let tri = single_monotone_triangle(d)?;
            let c = tri.map.apply(&RationalPoint::new(q(1, 3), q(1, 3)));
            Ok(DiamondPlacement { psi: tri.map.linear.clone(), center: c, d: size })
        }
        DiamondTarget::CGeTwo | DiamondTarget::Clifford => {
            let is_root = d.triple.is_root();
            if (target == DiamondTarget::CGeTwo) == is_root {
                return Err(PackingError::WrongTarget(target.to_string(), d.triple.to_string()));
            }
            // Directly below the fiber, halfway to the longest edge.
            let frame = longest_edge_frame(d)?;
            let back = frame.to_frame.inverse();
            let center = back.apply(&RationalPoint::new(frame.fiber_x.clone(), q(1, 2)));
            Ok(DiamondPlacement { psi: back.linear.clone(), center, d: size })
        }
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateEntry {
    pub label: String,
    pub regions: usize,
    pub size: Rational,
    /// Capacity of one region divided by π.
    pub capacity_over_pi: Rational,
    pub excluded: ExclusionSet,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub statement: String,
    /// Certified value divided by π.
    pub value_over_pi: Rational,
    /// Limit as ε → 0, divided by π, where the certificate comes in a family.
    pub limit_over_pi: Option<Rational>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityReport {
    pub triple: MarkovTriple,
    pub entries: Vec<CertificateEntry>,
    pub bounds: Vec<Bound>,
    pub notes: Vec<String>,
}

fn entry(label: &str, d: &BaseDiagram, regions: &[Region], excluded: ExclusionSet) -> Result<CertificateEntry> {
    let packing = Packing { diagram: d.clone(), regions: regions.to_vec() };
    let verdict = packing.verify(&excluded)?;
    let size = regions[0].size();
    Ok(CertificateEntry {
        label: label.into(),
        regions: regions.len(),
        capacity_over_pi: q(2, 3) * &size,
        size,
        excluded,
        verdict,
    })
}

/// Builds and verifies every certificate for `t`; `eps` shrinks the diamonds.
pub fn capacity_report(t: &MarkovTriple, eps: &Rational) -> Result<CapacityReport> {
    let d = seed_diagram(t)?;
    let mut entries = Vec::new();
    let mut bounds = Vec::new();
    let mut notes = Vec::new();

    let single = single_monotone_triangle(&d)?;
    let e = entry("monotone triangle", &d, &[Region::Triangle(single)], ExclusionSet::fiber_and_nodes())?;
    bounds.push(Bound {
        statement: format!("c_G(CP^2; T{t}) >= 2π/3"),
        value_over_pi: e.capacity_over_pi.clone(),
        limit_over_pi: None,
        verified: e.verdict.is_accepted(),
    });
    entries.push(e);

    let general = diamond_bounds(&d, DiamondTarget::General, eps)?;
    let e = entry("general diamond", &d, &[Region::Diamond(general)], ExclusionSet::divisor_complement())?;
    bounds.push(Bound {
        statement: format!("c_G(CP^2 \\ E; T{t}) >= π/3 - δ"),
        value_over_pi: e.capacity_over_pi.clone(),
        limit_over_pi: Some(q(1, 3)),
        verified: e.verdict.is_accepted(),
    });
    entries.push(e);

    let target = if t.is_root() { DiamondTarget::Clifford } else { DiamondTarget::CGeTwo };
    let big = diamond_bounds(&d, target, eps)?;
    let e = entry(&format!("{target} diamond"), &d, &[Region::Diamond(big)], ExclusionSet::divisor_complement())?;
    let limit = q(2, 3) * target.nominal_size();
    bounds.push(Bound {
        statement: format!("c_G(CP^2 \\ E; T{t}) >= {}π - δ", limit),
        value_over_pi: e.capacity_over_pi.clone(),
        limit_over_pi: Some(limit),
        verified: e.verdict.is_accepted(),
    });
    entries.push(e);

    let five = five_monotone_triangles(&d)?;
    let e = entry("five monotone triangles", &five.diagram, &five.regions, ExclusionSet::fiber_and_nodes())?;
    bounds.push(Bound {
        statement: "5 disjoint monotone balls: embeds in monotone CP^2 # k(-CP^2) for k <= 5".into(),
        value_over_pi: e.capacity_over_pi.clone(),
        limit_over_pi: None,
        verified: e.verdict.is_accepted(),
    });
    entries.push(e);

    let s = qi(1) - eps;
    let nine = nine_ball_skeleton_packing(&s)?;
    let e = entry("nine skeleton-complement triangles", &nine.diagram, &nine.regions, ExclusionSet::skeleton_complement())?;
    bounds.push(Bound {
        statement: "9 equal balls in the complement of the skeleton, hence of every T_{a,b,c}".into(),
        value_over_pi: e.capacity_over_pi.clone(),
        limit_over_pi: Some(q(2, 3)),
        verified: e.verdict.is_accepted(),
    });
    entries.push(e);

    if t.is_root() {
        notes.push("Upper bound c_G(CP^2; T_Cl) = 4π/3 is cited (Biran–Cornea), not computed.".into());
    }
    Ok(CapacityReport { triple: t.clone(), entries, bounds, notes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(a: i64, b: i64, c: i64) -> MarkovTriple {
        MarkovTriple::new(a, b, c).unwrap()
    }

    fn pt(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    #[test]
    fn single_triangle_for_cp2() {
        let d = seed_diagram(&MarkovTriple::root()).unwrap();
        let tri = single_monotone_triangle(&d).unwrap();
        let expect = ConvexPolygon::new(vec![pt(1, 0), pt(2, 0), pt(1, 1)]).unwrap();
        assert!(tri.polygon().same_cycle(&expect));
        assert_eq!(verify(&d, &Region::Triangle(tri.clone()), &ExclusionSet::fiber_and_nodes()).unwrap(), Verdict::Accepted);

        // Shifted so that the fiber (1,1) is strictly inside.
        let moved = TrianglePlacement::from_vertices(
            &RationalPoint::new(q(3, 4), q(1, 2)),
            &RationalPoint::new(q(7, 4), q(1, 2)),
            &RationalPoint::new(q(3, 4), q(3, 2)),
            None,
        )
        .unwrap();
        assert!(!verify(&d, &Region::Triangle(moved), &ExclusionSet::fiber_and_nodes()).unwrap().is_accepted());
    }

    #[test]
    fn frame_for_p114() {
        let d = seed_diagram(&triple(1, 1, 2)).unwrap();
        let f = longest_edge_frame(&d).unwrap();
        assert_eq!(f.length, qi(6));
        assert_eq!(f.fiber_x, qi(3));
    }

    #[test]
    fn five_triangles() {
        for t in [triple(1, 1, 1), triple(1, 1, 2), triple(1, 2, 5)] {
            let d = seed_diagram(&t).unwrap();
            let p = five_monotone_triangles(&d).unwrap();
            assert_eq!(p.regions.len(), 5);
            assert_eq!(p.verify(&ExclusionSet::fiber_and_nodes()).unwrap(), Verdict::Accepted, "{t}");
        }
    }

    #[test]
    fn glued_certificate_errors_are_malformed() {
        let p = five_monotone_triangles(&seed_diagram(&MarkovTriple::root()).unwrap()).unwrap();
        let Region::Glued(mut g) = p.regions[0].clone() else { panic!("first region is glued") };
        g.transitions[0].exponent = -g.transitions[0].exponent;
        let err = verify(&p.diagram, &Region::Glued(g.clone()), &ExclusionSet::fiber_and_nodes()).unwrap_err();
        assert!(matches!(err, PackingError::Malformed(_)));
        g.transitions.clear();
        assert!(matches!(verify(&p.diagram, &Region::Glued(g), &ExclusionSet::default()), Err(PackingError::Malformed(_))));
    }

    #[test]
    fn nine_balls() {
        for s in [q(1, 2), q(9, 10)] {
            let p = nine_ball_skeleton_packing(&s).unwrap();
            assert_eq!(p.total_area().unwrap(), qi(9) * &s * &s / qi(2));
            assert_eq!(p.verify(&ExclusionSet::skeleton_complement()).unwrap(), Verdict::Accepted);
        }
        assert!(matches!(nine_ball_skeleton_packing(&qi(1)), Err(PackingError::BadSide(_))));
    }

    #[test]
    fn diamonds() {
        let ex = ExclusionSet::divisor_complement();
        let eps = q(1, 100);
        let cp2 = seed_diagram(&MarkovTriple::root()).unwrap();
        let cl = diamond_bounds(&cp2, DiamondTarget::Clifford, &eps).unwrap();
        assert_eq!(cl.d, q(99, 100));
        assert_eq!(cl.center, RationalPoint::new(qi(1), q(1, 2)));
        assert!(verify(&cp2, &Region::Diamond(cl), &ex).unwrap().is_accepted());
        assert!(diamond_bounds(&cp2, DiamondTarget::CGeTwo, &eps).is_err());

        let d = seed_diagram(&triple(1, 1, 2)).unwrap();
        let big = diamond_bounds(&d, DiamondTarget::CGeTwo, &eps).unwrap();
        assert_eq!(big.d, q(6, 7) - &eps);
        assert!(verify(&d, &Region::Diamond(big), &ex).unwrap().is_accepted());
        for t in [triple(1, 1, 1), triple(1, 2, 5), triple(2, 5, 29)] {
            let d = seed_diagram(&t).unwrap();
            let g = diamond_bounds(&d, DiamondTarget::General, &eps).unwrap();
            assert!(verify(&d, &Region::Diamond(g), &ex).unwrap().is_accepted());
        }
    }

    #[test]
    fn fiber_centered_unit_diamond() {
        let cp2 = seed_diagram(&MarkovTriple::root()).unwrap();
        let dm = DiamondPlacement { psi: IntMatrix::identity(), center: pt(1, 1), d: qi(1) };
        let only_boundary = ExclusionSet { boundary: true, ..Default::default() };
        assert!(verify(&cp2, &Region::Diamond(dm.clone()), &only_boundary).unwrap().is_accepted());
        assert!(!verify(&cp2, &Region::Diamond(dm), &ExclusionSet::divisor_complement()).unwrap().is_accepted());
    }

    #[test]
    fn report_for_small_triples() {
        for t in [triple(1, 1, 1), triple(1, 1, 2), triple(2, 5, 29)] {
            let r = capacity_report(&t, &q(1, 100)).unwrap();
            assert!(r.bounds.iter().all(|b| b.verified), "{t}: {:?}", r.entries);
        }
    }
}
