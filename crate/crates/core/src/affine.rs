//! Exact planar integral-affine geometry.
//!
//! Everything here is rational: points and translations are `BigRational`
//! pairs, linear parts of maps are integer matrices. Polygons are kept
//! counter-clockwise and strictly convex.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer-valued rational.
pub fn qi(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error("monodromy needs coprime (k, l), got ({0}, {1})")]
    NotCoprime(BigInt, BigInt),
    #[error("the zero vector has no primitive direction")]
    ZeroVector,
    #[error("matrix has determinant {0}, expected +1 or -1")]
    NotUnimodular(BigInt),
    #[error("polygon needs at least three vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices are not strictly convex and counter-clockwise at index {0}")]
    NotConvex(usize),
    #[error("line does not pass through the interior of the polygon")]
    DegenerateSplit,
}

// ---------------------------------------------------------------------------
// Points and integer vectors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

/// Displacements use the same representation as points.
pub type RationalVector = RationalPoint;

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint { x: qi(x), y: qi(y) }
    }

    pub fn origin() -> Self {
        RationalPoint { x: Rational::zero(), y: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `self.x * other.y - self.y * other.x`.
    pub fn cross(&self, other: &RationalPoint) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &RationalPoint) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scale(&self, s: &Rational) -> RationalPoint {
        RationalPoint { x: &self.x * s, y: &self.y * s }
    }

    /// Affine combination `self + t (other - self)`.
    pub fn lerp(&self, other: &RationalPoint, t: &Rational) -> RationalPoint {
        self + &(other - self).scale(t)
    }

    /// Squared Euclidean norm, exact.
    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.x), rational_to_f64(&self.y))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &RationalPoint {
    type Output = RationalPoint;
    fn add(self, rhs: &RationalPoint) -> RationalPoint {
        RationalPoint { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Sub for &RationalPoint {
    type Output = RationalPoint;
    fn sub(self, rhs: &RationalPoint) -> RationalPoint {
        RationalPoint { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl Neg for &RationalPoint {
    type Output = RationalPoint;
    fn neg(self) -> RationalPoint {
        RationalPoint { x: -&self.x, y: -&self.y }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector {
    pub x: BigInt,
    pub y: BigInt,
}

impl IntVector {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        IntVector { x: x.into(), y: y.into() }
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint { x: Rational::from_integer(self.x.clone()), y: Rational::from_integer(self.y.clone()) }
    }

    pub fn det(&self, other: &IntVector) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn neg(&self) -> IntVector {
        IntVector { x: -&self.x, y: -&self.y }
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Divides `v` by the gcd of its components, keeping signs.
pub fn primitive(v: &IntVector) -> Result<IntVector, AffineError> {
    let g = v.x.gcd(&v.y);
    if g.is_zero() {
        return Err(AffineError::ZeroVector);
    }
    Ok(IntVector { x: &v.x / &g, y: &v.y / &g })
}

/// Primitive integer direction `u` and factor `lambda > 0` with `v = lambda * u`.
pub fn primitive_decomposition(v: &RationalVector) -> Result<(IntVector, Rational), AffineError> {
    if v.is_zero() {
        return Err(AffineError::ZeroVector);
    }
    let l = v.x.denom().lcm(v.y.denom());
    let ix = (&v.x * Rational::from_integer(l.clone())).to_integer();
    let iy = (&v.y * Rational::from_integer(l.clone())).to_integer();
    let g = ix.gcd(&iy);
    let dir = IntVector { x: &ix / &g, y: &iy / &g };
    Ok((dir, Rational::new(g, l)))
}

/// Lattice length of the segment `[p, q]`; zero when the points coincide.
pub fn lattice_length(p: &RationalPoint, q: &RationalPoint) -> Rational {
    match primitive_decomposition(&(q - p)) {
        Ok((_, len)) => len,
        Err(_) => Rational::zero(),
    }
}

// ---------------------------------------------------------------------------
// Matrices and maps
// ---------------------------------------------------------------------------

/// Integer 2x2 matrix `[[a, b], [c, d]]` acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMatrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        IntMatrix { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        IntMatrix::new(1, 0, 0, 1)
    }

    /// Matrix whose columns are `u` and `v`.
    pub fn from_columns(u: &IntVector, v: &IntVector) -> Self {
        IntMatrix { a: u.x.clone(), b: v.x.clone(), c: u.y.clone(), d: v.y.clone() }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        IntMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn apply_int(&self, v: &IntVector) -> IntVector {
        IntVector { x: &self.a * &v.x + &self.b * &v.y, y: &self.c * &v.x + &self.d * &v.y }
    }

    pub fn apply(&self, v: &RationalVector) -> RationalVector {
        let (a, b, c, d) = self.as_rationals();
        RationalPoint { x: &a * &v.x + &b * &v.y, y: &c * &v.x + &d * &v.y }
    }

    fn as_rationals(&self) -> (Rational, Rational, Rational, Rational) {
        (
            Rational::from_integer(self.a.clone()),
            Rational::from_integer(self.b.clone()),
            Rational::from_integer(self.c.clone()),
            Rational::from_integer(self.d.clone()),
        )
    }

    /// Exact inverse of a matrix with determinant `+1` or `-1`.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix, AffineError> {
        let det = self.det();
        if !(det.is_one() || (-&det).is_one()) {
            return Err(AffineError::NotUnimodular(det));
        }
        Ok(IntMatrix { a: &self.d * &det, b: -&self.b * &det, c: -&self.c * &det, d: &self.a * &det })
    }

    /// Integer power; negative exponents need a unimodular matrix.
    pub fn pow(&self, e: i32) -> Result<IntMatrix, AffineError> {
        let base = if e < 0 { self.unimodular_inverse()? } else { self.clone() };
        let mut out = IntMatrix::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// The monodromy `A_(k,l) = [[1 - kl, k^2], [-l^2, 1 + kl]]` of a node with
/// eigendirection `(k, l)`. Equivalently `x -> x + det((k,l), x) (k,l)`.
pub fn monodromy(k: &BigInt, l: &BigInt) -> Result<IntMatrix, AffineError> {
    if !k.gcd(l).is_one() {
        return Err(AffineError::NotCoprime(k.clone(), l.clone()));
    }
    let kl = k * l;
    Ok(IntMatrix { a: BigInt::one() - &kl, b: k * k, c: -(l * l), d: BigInt::one() + &kl })
}

/// `x -> linear * x + translation` with `det(linear) = +-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    pub linear: IntMatrix,
    pub translation: RationalVector,
}

impl UnimodularMap {
    pub fn new(linear: IntMatrix, translation: RationalVector) -> Result<Self, AffineError> {
        let det = linear.det();
        if !(det.is_one() || (-&det).is_one()) {
            return Err(AffineError::NotUnimodular(det));
        }
        Ok(UnimodularMap { linear, translation })
    }

    pub fn identity() -> Self {
        UnimodularMap { linear: IntMatrix::identity(), translation: RationalPoint::origin() }
    }

    pub fn translation(t: RationalVector) -> Self {
        UnimodularMap { linear: IntMatrix::identity(), translation: t }
    }

    /// The map `x -> center + linear (x - center)`, which fixes `center`.
    pub fn about(center: &RationalPoint, linear: IntMatrix) -> Result<Self, AffineError> {
        let t = center - &linear.apply(center);
        UnimodularMap::new(linear, t)
    }

    pub fn det(&self) -> BigInt {
        self.linear.det()
    }

    pub fn apply(&self, p: &RationalPoint) -> RationalPoint {
        &self.linear.apply(p) + &self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        UnimodularMap {
            linear: self.linear.mul(&other.linear),
            translation: &self.linear.apply(&other.translation) + &self.translation,
        }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let inv = self.linear.unimodular_inverse().expect("determinant checked at construction");
        let t = -&inv.apply(&self.translation);
        UnimodularMap { linear: inv, translation: t }
    }
}

impl fmt::Display for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {} x + {}", self.linear, self.translation)
    }
}

/// A ray with rational base point and primitive integer direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeRay {
    pub base: RationalPoint,
    pub direction: IntVector,
}

impl LatticeRay {
    pub fn new(base: RationalPoint, direction: IntVector) -> Result<Self, AffineError> {
        let direction = primitive(&direction)?;
        Ok(LatticeRay { base, direction })
    }

    /// `base + t * direction`.
    pub fn at(&self, t: &Rational) -> RationalPoint {
        &self.base + &self.direction.to_rational().scale(t)
    }

    /// Does `p` lie on the full line carrying this ray?
    pub fn line_contains(&self, p: &RationalPoint) -> bool {
        self.direction.to_rational().cross(&(p - &self.base)).is_zero()
    }
}

// ---------------------------------------------------------------------------
// Convex polygons
// ---------------------------------------------------------------------------

/// Whether a region is taken with or without its boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Open,
    Closed,
}

/// Strictly convex polygon with vertices listed counter-clockwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    vertices: Vec<RationalPoint>,
}

/// Pieces of a polygon on either side of an oriented line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    /// Piece where `cross(direction, x - point) >= 0`.
    pub left: ConvexPolygon,
    /// Piece where `cross(direction, x - point) <= 0`.
    pub right: ConvexPolygon,
    /// Common chord, ordered along the line direction.
    pub chord: (RationalPoint, RationalPoint),
}

fn turn(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Rational {
    (b - a).cross(&(c - a))
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<RationalPoint>) -> Result<Self, AffineError> {
        let n = vertices.len();
        if n < 3 {
            return Err(AffineError::TooFewVertices(n));
        }
        for i in 0..n {
            let (p, v, w) = (&vertices[(i + n - 1) % n], &vertices[i], &vertices[(i + 1) % n]);
            if !turn(p, v, w).is_positive() {
                return Err(AffineError::NotConvex(i));
            }
        }
        // Local left turns alone admit star-shaped windings; require every
        // vertex to be strictly inside every non-incident edge's half-plane.
        for i in 0..n {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            for (j, v) in vertices.iter().enumerate() {
                if j != i && j != (i + 1) % n && !turn(a, b, v).is_positive() {
                    return Err(AffineError::NotConvex(j));
                }
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    /// Builds a polygon from a cyclic point list, dropping repeated points and
    /// vertices where the boundary goes straight on.
    pub fn from_points_dropping_collinear(points: Vec<RationalPoint>) -> Result<Self, AffineError> {
        let mut pts: Vec<RationalPoint> = Vec::with_capacity(points.len());
        for p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        loop {
            let n = pts.len();
            if n < 3 {
                return Err(AffineError::TooFewVertices(n));
            }
            let idx = (0..n).find(|&i| turn(&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]).is_zero());
            match idx {
                Some(i) => {
                    pts.remove(i);
                }
                None => break,
            }
        }
        ConvexPolygon::new(pts)
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &RationalPoint {
        &self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (&RationalPoint, &RationalPoint) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge_lattice_lengths(&self) -> Vec<Rational> {
        (0..self.len()).map(|i| lattice_length(self.vertex(i), self.vertex(i + 1))).collect()
    }

    pub fn boundary_lattice_length(&self) -> Rational {
        self.edge_lattice_lengths().into_iter().fold(Rational::zero(), |acc, l| acc + l)
    }

    pub fn area(&self) -> Rational {
        let n = self.len();
        let twice = (0..n).fold(Rational::zero(), |acc, i| acc + self.vertex(i).cross(self.vertex(i + 1)));
        twice / qi(2)
    }

    pub fn centroid_of_vertices(&self) -> RationalPoint {
        let n = qi(self.len() as i64);
        let sum = self.vertices.iter().fold(RationalPoint::origin(), |acc, v| &acc + v);
        sum.scale(&(Rational::one() / n))
    }

    /// Signed values `cross(edge_i, p - v_i)`; all positive exactly in the interior.
    fn edge_values(&self, p: &RationalPoint) -> impl Iterator<Item = Rational> + '_ {
        let p = p.clone();
        (0..self.len()).map(move |i| turn(self.vertex(i), self.vertex(i + 1), &p))
    }

    pub fn contains_point(&self, p: &RationalPoint, closure: Closure) -> bool {
        match closure {
            Closure::Open => self.edge_values(p).all(|v| v.is_positive()),
            Closure::Closed => self.edge_values(p).all(|v| !v.is_negative()),
        }
    }

    /// Is `p` on the boundary?
    pub fn on_boundary(&self, p: &RationalPoint) -> bool {
        self.contains_point(p, Closure::Closed) && !self.contains_point(p, Closure::Open)
    }

    /// Index of an edge containing `p`, if any.
    pub fn edge_containing(&self, p: &RationalPoint) -> Option<usize> {
        (0..self.len()).find(|&i| {
            let (a, b) = self.edge(i);
            turn(a, b, p).is_zero() && !(a - p).dot(&(b - p)).is_positive()
        })
    }

    /// With `Closure::Closed`, `other ⊆ self`. With `Closure::Open`, the closure
    /// of `other` lies in the interior of `self`.
    pub fn contains_polygon(&self, other: &ConvexPolygon, closure: Closure) -> bool {
        other.vertices.iter().all(|v| self.contains_point(v, closure))
    }

    /// Do the interiors of the two polygons intersect? Two convex polygons have
    /// disjoint interiors exactly when an edge line of one separates them.
    pub fn interiors_intersect(&self, other: &ConvexPolygon) -> bool {
        !(separated_by_edges_of(self, other) || separated_by_edges_of(other, self))
    }

    /// Does the open polygon meet the closed segment `[p, q]`?
    pub fn interior_meets_segment(&self, p: &RationalPoint, q: &RationalPoint) -> bool {
        // Each edge value along the segment is affine in t; the minimum over
        // edges is concave, so its maximum on [0, 1] sits at an endpoint or
        // where two edge values cross.
        let n = self.len();
        let d = q - p;
        let coeffs: Vec<(Rational, Rational)> = (0..n)
            .map(|i| {
                let (a, b) = self.edge(i);
                let e = b - a;
                (e.cross(&(p - a)), e.cross(&d))
            })
            .collect();
        let mut candidates = vec![Rational::zero(), Rational::one()];
        for i in 0..n {
            for j in (i + 1)..n {
                let slope = &coeffs[i].1 - &coeffs[j].1;
                if !slope.is_zero() {
                    let t = (&coeffs[j].0 - &coeffs[i].0) / slope;
                    if !t.is_negative() && t <= Rational::one() {
                        candidates.push(t);
                    }
                }
            }
        }
        candidates.iter().any(|t| coeffs.iter().all(|(c0, c1)| (c0 + c1 * t).is_positive()))
    }

    pub fn apply_map(&self, g: &UnimodularMap) -> ConvexPolygon {
        let mut vs: Vec<RationalPoint> = self.vertices.iter().map(|v| g.apply(v)).collect();
        if g.det().is_negative() {
            vs[1..].reverse();
        }
        ConvexPolygon { vertices: vs }
    }

    /// Index of vertex `i` after [`apply_map`](Self::apply_map) by a map of determinant `det`.
    pub fn mapped_index(&self, i: usize, det_negative: bool) -> usize {
        if det_negative {
            (self.len() - i) % self.len()
        } else {
            i
        }
    }

    /// Splits along the line through `point` with direction `direction`.
    pub fn split_by_line(&self, point: &RationalPoint, direction: &RationalVector) -> Result<Split, AffineError> {
        let n = self.len();
        let side: Vec<Rational> = self.vertices.iter().map(|v| direction.cross(&(v - point))).collect();
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut on_line = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            let (vi, si) = (&self.vertices[i], &side[i]);
            if !si.is_negative() {
                left.push(vi.clone());
            }
            if !si.is_positive() {
                right.push(vi.clone());
            }
            if si.is_zero() {
                on_line.push(vi.clone());
            }
            let sj = &side[j];
            if (si.is_positive() && sj.is_negative()) || (si.is_negative() && sj.is_positive()) {
                let t = si / (si - sj);
                let x = vi.lerp(&self.vertices[j], &t);
                left.push(x.clone());
                right.push(x.clone());
                on_line.push(x);
            }
        }
        if on_line.len() != 2 {
            return Err(AffineError::DegenerateSplit);
        }
        let left = ConvexPolygon::from_points_dropping_collinear(left).map_err(|_| AffineError::DegenerateSplit)?;
        let right = ConvexPolygon::from_points_dropping_collinear(right).map_err(|_| AffineError::DegenerateSplit)?;
        let (a, b) = (on_line[0].clone(), on_line[1].clone());
        let chord = if direction.dot(&(&b - &a)).is_positive() { (a, b) } else { (b, a) };
        Ok(Split { left, right, chord })
    }

    /// Same vertex cycle, possibly starting at a different index.
    pub fn same_cycle(&self, other: &ConvexPolygon) -> bool {
        let n = self.len();
        n == other.len() && (0..n).any(|s| (0..n).all(|i| self.vertex(i) == other.vertex(i + s)))
    }

    /// Canonical representative of the polygon's orbit under GL(2,Z) ⋉ Q^2:
    /// the lexicographically smallest vertex list over all starting vertices
    /// and orientations, after moving the start to the origin, its outgoing
    /// edge to the positive x-axis and reducing the incoming edge by a shear.
    pub fn normal_form(&self) -> Vec<RationalPoint> {
        let n = self.len();
        let mut best: Option<Vec<RationalPoint>> = None;
        for start in 0..n {
            for reversed in [false, true] {
                let seq: Vec<RationalPoint> = (0..n)
                    .map(|i| {
                        let k = if reversed { (start + n - i) % n } else { (start + i) % n };
                        self.vertices[k].clone()
                    })
                    .collect();
                let framed = normal_frame(&seq);
                if best.as_ref().is_none_or(|b| cmp_seq(&framed, b) == Ordering::Less) {
                    best = Some(framed);
                }
            }
        }
        best.expect("polygon has vertices")
    }
}

/// Convex hull of a finite point set, with collinear boundary points dropped.
pub fn convex_hull(points: &[RationalPoint]) -> Result<ConvexPolygon, AffineError> {
    let mut pts: Vec<RationalPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Err(AffineError::TooFewVertices(pts.len()));
    }
    let chain = |iter: &mut dyn Iterator<Item = &RationalPoint>| {
        let mut h: Vec<RationalPoint> = Vec::new();
        for p in iter {
            while h.len() >= 2 && !turn(&h[h.len() - 2], &h[h.len() - 1], p).is_positive() {
                h.pop();
            }
            h.push(p.clone());
        }
        h.pop();
        h
    };
    let mut lower = chain(&mut pts.iter());
    let upper = chain(&mut pts.iter().rev());
    lower.extend(upper);
    ConvexPolygon::new(lower)
}

/// Which side of an oriented line a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// `+1` for left, `-1` for right.
    pub fn sign(self) -> i32 {
        match self {
            Side::Left => 1,
            Side::Right => -1,
        }
    }
}

/// Side of `p` relative to the line through `point` with direction `dir`;
/// `None` on the line.
pub fn side_of(point: &RationalPoint, dir: &RationalVector, p: &RationalPoint) -> Option<Side> {
    let s = dir.cross(&(p - point));
    if s.is_positive() {
        Some(Side::Left)
    } else if s.is_negative() {
        Some(Side::Right)
    } else {
        None
    }
}

fn cmp_seq(a: &[RationalPoint], b: &[RationalPoint]) -> Ordering {
    a.iter().map(|p| (&p.x, &p.y)).cmp(b.iter().map(|p| (&p.x, &p.y)))
}

/// Moves `seq[0]` to the origin with `seq[1] - seq[0]` along +x, then shears so
/// the last vertex has x-coordinate reduced modulo its lattice height.
fn normal_frame(seq: &[RationalPoint]) -> Vec<RationalPoint> {
    let n = seq.len();
    let (w, _) = primitive_decomposition(&(&seq[1] - &seq[0])).expect("distinct vertices");
    let (u, _) = primitive_decomposition(&(&seq[n - 1] - &seq[0])).expect("distinct vertices");
    let m = frame_to_x_axis(&w);
    let u_img = m.apply_int(&u);
    let mut linear = m;
    if u_img.y.is_negative() {
        linear = IntMatrix::new(1, 0, 0, -1).mul(&linear);
    }
    let u_img = linear.apply_int(&u);
    // Shear [[1, s], [0, 1]] keeps +x fixed and moves u_img.x by s * u_img.y.
    let h = u_img.y.clone();
    let s = -(u_img.x.div_floor(&h));
    linear = IntMatrix { a: BigInt::one(), b: s, c: BigInt::zero(), d: BigInt::one() }.mul(&linear);
    seq.iter().map(|p| linear.apply(&(p - &seq[0]))).collect()
}

/// Some matrix of determinant 1 sending the primitive vector `w` to `(1, 0)`.
pub fn frame_to_x_axis(w: &IntVector) -> IntMatrix {
    let egcd = w.x.extended_gcd(&w.y);
    // egcd.x * w.x + egcd.y * w.y = gcd = +-1 for a primitive vector.
    let sign = if egcd.gcd.is_negative() { -BigInt::one() } else { BigInt::one() };
    IntMatrix { a: &egcd.x * &sign, b: &egcd.y * &sign, c: -&w.y, d: w.x.clone() }
}

fn separated_by_edges_of(p: &ConvexPolygon, other: &ConvexPolygon) -> bool {
    (0..p.len()).any(|i| {
        let (a, b) = p.edge(i);
        other.vertices.iter().all(|v| !turn(a, b, v).is_positive())
    })
}

/// A map `g` in GL(2,Z) ⋉ Q^2 with `g(p) = q` as vertex sets, if one exists.
/// Any such map sends the boundary cycle to the boundary cycle, so it is
/// determined by where vertex 0 and its two neighbours go.
pub fn polygon_equiv(p: &ConvexPolygon, q: &ConvexPolygon) -> Option<UnimodularMap> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let mut lp = p.edge_lattice_lengths();
    let mut lq = q.edge_lattice_lengths();
    lp.sort();
    lq.sort();
    if lp != lq || p.area() != q.area() {
        return None;
    }
    let d1 = p.vertex(1) - p.vertex(0);
    let d2 = p.vertex(n - 1) - p.vertex(0);
    let det_p = d1.cross(&d2);
    for j in 0..n {
        for reversed in [false, true] {
            let (next, prev) = if reversed { (j + n - 1, j + 1) } else { (j + 1, j + n - 1) };
            let e1 = q.vertex(next) - q.vertex(j);
            let e2 = q.vertex(prev) - q.vertex(j);
            // M = [e1 e2] [d1 d2]^{-1}
            let inv = [&d2.y / &det_p, -&d2.x / &det_p, -&d1.y / &det_p, &d1.x / &det_p];
            let m = [
                &e1.x * &inv[0] + &e2.x * &inv[2],
                &e1.x * &inv[1] + &e2.x * &inv[3],
                &e1.y * &inv[0] + &e2.y * &inv[2],
                &e1.y * &inv[1] + &e2.y * &inv[3],
            ];
            if !m.iter().all(|r| r.is_integer()) {
                continue;
            }
            let linear = IntMatrix {
                a: m[0].to_integer(),
                b: m[1].to_integer(),
                c: m[2].to_integer(),
                d: m[3].to_integer(),
            };
            let t = q.vertex(j) - &linear.apply(p.vertex(0));
            let Ok(g) = UnimodularMap::new(linear, t) else { continue };
            if p.apply_map(&g).same_cycle(q) {
                return Some(g);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> ConvexPolygon {
        ConvexPolygon::new(vec![pt(a.0, a.1), pt(b.0, b.1), pt(c.0, c.1)]).unwrap()
    }

    #[test]
    fn monodromy_examples() {
        let one = BigInt::one();
        let two = BigInt::from(2);
        assert_eq!(monodromy(&one, &one).unwrap(), IntMatrix::new(0, 1, -1, 2));
        assert_eq!(monodromy(&two, &one).unwrap(), IntMatrix::new(-1, 4, -1, 3));
        let a12 = monodromy(&one, &two).unwrap();
        assert_eq!(a12.apply_int(&IntVector::new(1, 2)), IntVector::new(1, 2));
        assert!(matches!(monodromy(&two, &BigInt::from(4)), Err(AffineError::NotCoprime(..))));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&IntVector::new(2, -8)).unwrap(), IntVector::new(1, -4));
        assert_eq!(primitive(&IntVector::new(0, 5)).unwrap(), IntVector::new(0, 1));
        assert_eq!(primitive(&IntVector::new(-6, -9)).unwrap(), IntVector::new(-2, -3));
        assert_eq!(primitive(&IntVector::new(0, 0)), Err(AffineError::ZeroVector));
    }

    #[test]
    fn lattice_length_examples() {
        assert_eq!(lattice_length(&pt(0, 0), &pt(0, 4)), qi(4));
        assert_eq!(lattice_length(&pt(0, 4), &pt(1, 0)), qi(1));
        let half = RationalPoint::new(q(3, 2), qi(0));
        assert_eq!(lattice_length(&pt(0, 0), &half), q(3, 2));
        let p = RationalPoint::new(q(1, 3), q(2, 5));
        let r = RationalPoint::new(q(7, 3), q(-8, 5));
        // (2, -2) = 2 * (1, -1)
        assert_eq!(lattice_length(&p, &r), qi(2));
    }

    #[test]
    fn polygon_predicates() {
        let t = tri((0, 0), (3, 0), (0, 3));
        assert_eq!(t.area(), q(9, 2));
        assert!(t.contains_point(&pt(1, 1), Closure::Open));
        assert!(!t.contains_point(&pt(1, 0), Closure::Open));
        assert!(t.contains_point(&pt(1, 0), Closure::Closed));
        assert!(t.contains_polygon(&tri((1, 0), (2, 0), (1, 1)), Closure::Closed));
        assert!(!t.contains_polygon(&tri((1, 0), (2, 0), (1, 1)), Closure::Open));

        let split = t.split_by_line(&pt(0, 0), &pt(1, 1)).unwrap();
        assert_eq!(split.left.area(), q(9, 4));
        assert_eq!(split.right.area(), q(9, 4));
        assert_eq!(split.chord, (pt(0, 0), RationalPoint::new(q(3, 2), q(3, 2))));
        assert_eq!(t.split_by_line(&pt(0, 0), &pt(1, 0)), Err(AffineError::DegenerateSplit));
    }

    #[test]
    fn rejects_non_convex_input() {
        let bad = ConvexPolygon::new(vec![pt(0, 0), pt(0, 3), pt(3, 0)]);
        assert!(matches!(bad, Err(AffineError::NotConvex(_))));
        let collinear = ConvexPolygon::new(vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(0, 2)]);
        assert!(collinear.is_err());
        let fixed = ConvexPolygon::from_points_dropping_collinear(vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(0, 2)]).unwrap();
        assert_eq!(fixed.len(), 3);
    }

    #[test]
    fn interiors_and_segments() {
        let a = tri((0, 0), (1, 0), (0, 1));
        let b = tri((1, 0), (2, 0), (1, 1));
        assert!(!a.interiors_intersect(&b));
        let c = tri((0, 0), (2, 0), (0, 2));
        assert!(a.interiors_intersect(&c));
        assert!(!a.interior_meets_segment(&pt(1, 0), &pt(0, 1)));
        assert!(a.interior_meets_segment(&pt(0, 0), &pt(1, 1)));
        assert!(!a.interior_meets_segment(&pt(2, 2), &pt(3, 3)));
    }

    #[test]
    fn equivalence_examples() {
        let p = tri((0, 0), (1, 0), (0, 1));
        let g = polygon_equiv(&p, &p).unwrap();
        assert_eq!(p.apply_map(&g), p);

        let q1 = tri((0, 0), (1, 1), (0, 1));
        let g = polygon_equiv(&p, &q1).expect("shear-equivalent");
        assert!(p.apply_map(&g).same_cycle(&q1));

        let long = tri((0, 0), (1, 0), (0, 4));
        assert!(polygon_equiv(&long, &p).is_none());
        assert_eq!(p.normal_form(), q1.normal_form());
        assert_ne!(p.normal_form(), long.normal_form());
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let h = convex_hull(&[pt(0, 0), pt(1, 0), pt(2, 0), pt(1, 1), pt(0, 2), pt(2, 2), pt(1, 2)]).unwrap();
        assert!(h.same_cycle(&ConvexPolygon::new(vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)]).unwrap()));
    }

    #[test]
    fn maps_compose_and_invert() {
        let g = UnimodularMap::new(IntMatrix::new(2, 1, 1, 1), RationalPoint::new(q(1, 2), q(-3, 4))).unwrap();
        let h = UnimodularMap::new(IntMatrix::new(0, 1, 1, 0), RationalPoint::new(q(5, 7), qi(2))).unwrap();
        let x = RationalPoint::new(q(2, 3), q(-1, 9));
        assert_eq!(g.compose(&h).apply(&x), g.apply(&h.apply(&x)));
        assert_eq!(g.inverse().apply(&g.apply(&x)), x);
        assert!(UnimodularMap::new(IntMatrix::new(2, 0, 0, 1), RationalPoint::origin()).is_err());
    }
}
