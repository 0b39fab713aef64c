//! The moment triangle of the weighted projective plane `CP(a², b², c²)`.
//!
//! Coordinates follow the standard picture: the weight-`a` corner sits at the
//! origin, the weight-`b` corner at `(0, c²)` and the weight-`c` corner at
//! `(a²b², b²(a l1 − 1))`. Vertices are stored counter-clockwise in that
//! order: origin, weight-`c` corner, weight-`b` corner.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::affine::{primitive, qi, Closure, ConvexPolygon, IntVector, Rational, RationalPoint};
use crate::markov::{MarkovTriple, Slot};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("triple {0} is not in canonical (ascending) order")]
    NotCanonical(String),
    #[error("point {0} lies outside the closed moment triangle")]
    OutsideTriangle(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

type Result<T> = std::result::Result<T, PolytopeError>;

fn internal(msg: impl Into<String>) -> PolytopeError {
    PolytopeError::Internal(msg.into())
}

/// Vertex slots, counter-clockwise.
pub const ORIGIN_CORNER: usize = 0;
pub const C_CORNER: usize = 1;
pub const B_CORNER: usize = 2;

/// Weight slot of the corner stored at each vertex index.
pub const CORNER_WEIGHT_SLOTS: [Slot; 3] = [Slot::A, Slot::C, Slot::B];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPolytopeData {
    pub triple: MarkovTriple,
    pub l1: BigInt,
    pub l2: BigInt,
    pub l3: BigInt,
    /// Counter-clockwise: origin, weight-`c` corner, weight-`b` corner.
    pub triangle: ConvexPolygon,
    /// `u1`, `u2`, `u3`; the edges are `a²u1`, `b²u2`, `c²u3`.
    pub edge_vectors: [IntVector; 3],
    /// Inward normals `μ1`, `μ2`, `μ3`.
    pub normals: [IntVector; 3],
    /// `λ1`, `λ2`, `λ3`.
    pub offsets: [BigInt; 3],
    /// Facet labels `m_F`.
    pub labels: [BigInt; 3],
    /// Outward eigenray directions `w1`, `w2`, `w3`, pointing from the
    /// monotone fiber toward the weight-`a`, `b`, `c` corners.
    pub eigenrays: [IntVector; 3],
    /// Lens-space labels `(k², k l − 1)` for the weight-`a`, `b`, `c` corners.
    pub lens_labels: [(BigInt, BigInt); 3],
}

/// Solves for the auxiliary integers of a canonical triple.
pub fn solve_l(t: &MarkovTriple) -> Result<(BigInt, BigInt, BigInt)> {
    let data = build(t)?;
    Ok((data.l1, data.l2, data.l3))
}

fn solve_l1_l2(t: &MarkovTriple) -> Result<(BigInt, BigInt)> {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let three_c = BigInt::from(3) * c;
    let l1 = if a.is_one() {
        BigInt::one()
    } else {
        let eg = b.extended_gcd(a);
        if !eg.gcd.is_one() {
            return Err(internal(format!("gcd(b, a) = {} for {t}", eg.gcd)));
        }
        let r = (&eg.x * &three_c).mod_floor(a);
        if r.is_zero() {
            a.clone()
        } else {
            r
        }
    };
    let num = &three_c - b * &l1;
    if !num.is_positive() || !num.is_multiple_of(a) {
        return Err(internal(format!("l2 = (3c - b l1)/a is not a positive integer for {t}")));
    }
    Ok((l1, num / a))
}

/// Reads off the lens parameter of a corner.
///
/// `toward_prev` points from the corner along its clockwise-side edge and
/// `cut` into the polygon. After the determinant-one change of basis sending
/// `toward_prev` to `(0, 1)`, the cut becomes `(k, y)`; the parameter is
/// `y mod k` taken in `(0, k]`.
pub fn lens_parameter(toward_prev: &IntVector, cut: &IntVector) -> Result<(BigInt, BigInt)> {
    let p = primitive(toward_prev).map_err(|e| internal(e.to_string()))?;
    let eg = p.x.extended_gcd(&p.y);
    let sign = if eg.gcd.is_negative() { -BigInt::one() } else { BigInt::one() };
    let (gamma, delta) = (&eg.x * &sign, &eg.y * &sign);
    let k = &p.y * &cut.x - &p.x * &cut.y;
    let y = &gamma * &cut.x + &delta * &cut.y;
    if !k.is_positive() {
        return Err(internal(format!("cut {cut} does not point into the corner at edge {toward_prev}")));
    }
    let l = y.mod_floor(&k);
    Ok((k.clone(), if l.is_zero() { k } else { l }))
}

/// Builds the labeled moment triangle and checks its defining identities.
pub fn build(t: &MarkovTriple) -> Result<WeightedPolytopeData> {
    if !t.is_canonical() {
        return Err(PolytopeError::NotCanonical(t.to_string()));
    }
    let (a, b, c) = (t.a().clone(), t.b().clone(), t.c().clone());
    let (l1, l2) = solve_l1_l2(t)?;
    let one = BigInt::one();
    let (a2, b2, c2) = (&a * &a, &b * &b, &c * &c);

    let u1 = IntVector::new(b2.clone(), -(&b * &l2 - &one));
    let u2 = IntVector::new(-a2.clone(), -(&a * &l1 - &one));
    let u3 = IntVector::new(0, 1);
    let mu1 = IntVector::new(-(&b * &l2 - &one), -b2.clone());
    let mu2 = IntVector::new(-(&a * &l1 - &one), a2.clone());
    let mu3 = IntVector::new(1, 0);
    let offsets = [-(&b2 * &c2), BigInt::zero(), BigInt::zero()];

    let w3_num = (&a2 + &b2, &a * &l1 - &b * &l2);
    if !w3_num.0.is_multiple_of(&c) || !w3_num.1.is_multiple_of(&c) {
        return Err(internal(format!("(a²+b²)/c or (al1-bl2)/c is not integral for {t}")));
    }
    let w1 = IntVector::new(-a.clone(), -l1.clone());
    let w2 = IntVector::new(-b.clone(), l2.clone());
    let w3 = IntVector::new(&w3_num.0 / &c, &w3_num.1 / &c);

    let v_origin = RationalPoint::origin();
    let v_c = RationalPoint::new(qi(&a2 * &b2), qi(&b2 * (&a * &l1 - &one)));
    let v_b = RationalPoint::new(Rational::zero(), qi(c2.clone()));
    let triangle = ConvexPolygon::new(vec![v_origin, v_c, v_b]).map_err(|e| internal(e.to_string()))?;

    // Lens parameters, each read at its own corner.
    let (ka, la) = lens_parameter(&u3, &w1.neg())?;
    let (kb, lb) = lens_parameter(&u1, &w2.neg())?;
    let (kc, l3) = lens_parameter(&u2, &w3.neg())?;
    if ka != a || kb != b || kc != c {
        return Err(internal(format!("corner weights ({ka},{kb},{kc}) disagree with {t}")));
    }
    if la != l1 {
        return Err(internal(format!("corner-local l1 = {la} differs from solved l1 = {l1}")));
    }
    // The b-corner is read with the opposite orientation, which inverts the
    // lens label: (b lb − 1)(b l2 − 1) ≡ 1 (mod b²) iff lb ≡ −l2 (mod b).
    if !(&lb + &l2).is_multiple_of(&b) {
        return Err(internal(format!("corner-local parameter {lb} is not -l2 = -{l2} mod b")));
    }
    let lens = |k: &BigInt, l: &BigInt| (k * k, k * l - BigInt::one());

    let data = WeightedPolytopeData {
        triple: t.clone(),
        lens_labels: [lens(&a, &l1), lens(&b, &l2), lens(&c, &l3)],
        l1,
        l2,
        l3,
        triangle,
        edge_vectors: [u1, u2, u3],
        normals: [mu1, mu2, mu3],
        offsets,
        labels: [one.clone(), one.clone(), one],
        eigenrays: [w1, w2, w3],
    };
    check_invariants(&data)?;
    Ok(data)
}

/// `L_i(p) = ⟨p, μ_i⟩ − λ_i` for each facet.
pub fn facet_values(d: &WeightedPolytopeData, p: &RationalPoint) -> [Rational; 3] {
    std::array::from_fn(|i| {
        let mu = d.normals[i].to_rational();
        mu.dot(p) - qi(d.offsets[i].clone())
    })
}

/// The six congruences of Evans and Smith, each accepting either sign of `±`.
pub fn evans_smith_congruences(t: &MarkovTriple, l1: &BigInt, l2: &BigInt) -> [bool; 6] {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let nine = BigInt::from(9);
    let three = BigInt::from(3);
    let cong = |x: BigInt, y: BigInt, m: &BigInt| (x - y).is_multiple_of(m);
    let pm = |x: BigInt, y: BigInt, m: &BigInt| cong(x.clone(), y.clone(), m) || cong(x, -y, m);
    [
        cong(l1 * l1, -nine.clone(), a),
        cong(l2 * l2, -nine, b),
        pm(b * l1, &three * c, a),
        pm(c * l1, &three * b, a),
        pm(a * l2, &three * c, b),
        pm(c * l2, &three * a, b),
    ]
}

fn check_invariants(d: &WeightedPolytopeData) -> Result<()> {
    let t = &d.triple;
    let (a, b, c) = (t.a(), t.b(), t.c());
    let [u1, u2, u3] = &d.edge_vectors;
    let sq = |x: &BigInt| x * x;

    let bal_x = sq(a) * &u1.x + sq(b) * &u2.x + sq(c) * &u3.x;
    let bal_y = sq(a) * &u1.y + sq(b) * &u2.y + sq(c) * &u3.y;
    if !bal_x.is_zero() || !bal_y.is_zero() {
        return Err(internal(format!("a²u1 + b²u2 + c²u3 = ({bal_x}, {bal_y})")));
    }
    if a * &d.l2 + b * &d.l1 != BigInt::from(3) * c {
        return Err(internal("al2 + bl1 != 3c"));
    }
    if !d.l1.gcd(a).is_one() || !d.l2.gcd(b).is_one() || !d.l3.gcd(c).is_one() {
        return Err(internal("some l_i shares a factor with its weight"));
    }
    let cong = evans_smith_congruences(t, &d.l1, &d.l2);
    if let Some(i) = cong.iter().position(|ok| !ok) {
        return Err(internal(format!("Evans-Smith congruence #{} fails for {t}", i + 1)));
    }
    // Every vertex lies on exactly the two facets through it.
    for (vi, v) in d.triangle.vertices().iter().enumerate() {
        let vals = facet_values(d, v);
        if vals.iter().any(|x| x.is_negative()) {
            return Err(internal(format!("vertex {vi} violates a facet inequality")));
        }
        if vals.iter().filter(|x| x.is_zero()).count() != 2 {
            return Err(internal(format!("vertex {vi} is not cut out by two facets")));
        }
    }
    // Edge i of the triangle (b-corner to c-corner, c-corner to origin, origin
    // to b-corner) is k²u_i with lattice length k².
    let verts = d.triangle.vertices();
    let edges = [(B_CORNER, C_CORNER), (C_CORNER, ORIGIN_CORNER), (ORIGIN_CORNER, B_CORNER)];
    for (i, (from, to)) in edges.iter().enumerate() {
        let k2 = qi(sq(t.entries()[i]));
        let expect = d.edge_vectors[i].to_rational().scale(&k2);
        if &verts[*to] - &verts[*from] != expect {
            return Err(internal(format!("edge {i} is not k²u_{}", i + 1)));
        }
        if crate::affine::lattice_length(&verts[*from], &verts[*to]) != k2 {
            return Err(internal(format!("edge {i} has the wrong lattice length")));
        }
    }
    if d.labels.iter().any(|m| !m.is_one()) {
        return Err(internal("facet labels must all be 1"));
    }
    Ok(())
}

/// The monotone fiber `(abc/3, bc l1/3)` together with an exact check that
/// the three eigenlines pass through it.
pub fn barycenter(d: &WeightedPolytopeData) -> Result<RationalPoint> {
    let t = &d.triple;
    let (a, b, c) = (t.a(), t.b(), t.c());
    let three = qi(3);
    let f = RationalPoint::new(qi(a * b * c) / &three, qi(b * c * &d.l1) / &three);
    let corners = [ORIGIN_CORNER, B_CORNER, C_CORNER];
    for (i, vi) in corners.iter().enumerate() {
        let v = d.triangle.vertex(*vi);
        if !d.eigenrays[i].to_rational().cross(&(&f - v)).is_zero() {
            return Err(internal(format!("eigenline {} misses the barycenter for {t}", i + 1)));
        }
    }
    Ok(f)
}

/// Affine distances `⟨A, μ_i⟩ − λ_i` from `A` to the three facets.
pub fn disc_sizes(d: &WeightedPolytopeData, p: &RationalPoint) -> Result<[Rational; 3]> {
    if !d.triangle.contains_point(p, Closure::Closed) {
        return Err(PolytopeError::OutsideTriangle(p.to_string()));
    }
    Ok(facet_values(d, p))
}

/// The triangle rescaled by `3/(abc)`, so that every disc at the fiber has
/// size 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedPolytope {
    pub data: WeightedPolytopeData,
    pub scale: Rational,
    pub triangle: ConvexPolygon,
    pub fiber: RationalPoint,
    pub edge_lengths: Vec<Rational>,
    pub longest_edge: Rational,
}

pub fn normalize(d: &WeightedPolytopeData) -> Result<NormalizedPolytope> {
    let t = &d.triple;
    let scale = qi(3) / qi(t.a() * t.b() * t.c());
    let verts = d.triangle.vertices().iter().map(|v| v.scale(&scale)).collect();
    let triangle = ConvexPolygon::new(verts).map_err(|e| internal(e.to_string()))?;
    let fiber = barycenter(d)?.scale(&scale);
    let edge_lengths = triangle.edge_lattice_lengths();
    let longest_edge = edge_lengths.iter().max().cloned().expect("three edges");

    if triangle.boundary_lattice_length() != qi(9) {
        return Err(internal("normalized boundary length is not 9"));
    }
    if triangle.area() != Rational::new(9.into(), 2.into()) {
        return Err(internal("normalized area is not 9/2"));
    }
    let sizes = disc_sizes(d, &barycenter(d)?)?;
    if sizes.iter().any(|s| s * &scale != Rational::one()) {
        return Err(internal("normalized disc sizes at the fiber are not all 1"));
    }
    let expected_longest = qi(3 * t.c()) / qi(t.a() * t.b());
    if longest_edge != expected_longest || longest_edge < qi(3) {
        return Err(internal("longest normalized edge is not 3c/(ab) >= 3"));
    }
    Ok(NormalizedPolytope { data: d.clone(), scale, triangle, fiber, edge_lengths, longest_edge })
}

/// `β (a², b², c²)ᵀ = 0` for the exact sequence defining the orbifold.
pub fn check_kernel(d: &WeightedPolytopeData) -> bool {
    let t = &d.triple;
    let (a, b, c) = (t.a(), t.b(), t.c());
    let one = BigInt::one();
    let row1 = [-(b * &d.l2 - &one), -(a * &d.l1 - &one), one.clone()];
    let row2 = [-(b * b), a * a, BigInt::zero()];
    let v = [a * a, b * b, c * c];
    let dot = |r: &[BigInt; 3]| r.iter().zip(&v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y);
    dot(&row1).is_zero() && dot(&row2).is_zero()
}

/// The relations among the eigenray directions and the edge vectors.
pub fn check_w_relations(d: &WeightedPolytopeData) -> bool {
    let t = &d.triple;
    let (a, b, c) = (qi(t.a().clone()), qi(t.b().clone()), qi(t.c().clone()));
    let [w1, w2, w3] = d.eigenrays.clone().map(|w| w.to_rational());
    let [u1, u2, u3] = d.edge_vectors.clone().map(|u| u.to_rational());
    let three = qi(3);

    let sum = &(&w1.scale(&a) + &w2.scale(&b)) + &w3.scale(&c);
    let id3 = (&w2.scale(&(&a * &c)) - &w1.scale(&(&b * &c))).scale(&(Rational::one() / &three)) == u3.scale(&(&c * &c));
    let id1 = (&w3.scale(&(&a * &b)) - &w2.scale(&(&a * &c))).scale(&(Rational::one() / &three)) == u1.scale(&(&a * &a));
    let id2 = (&w1.scale(&(&b * &c)) - &w3.scale(&(&a * &b))).scale(&(Rational::one() / &three)) == u2.scale(&(&b * &b));

    // Slope of w3 three ways: from its components, from the closed form, and
    // along the segment from the fiber to the weight-c corner.
    let (l1, l2) = (qi(d.l1.clone()), qi(d.l2.clone()));
    let closed = (&a * &l1 - &b * &l2) / (&a * &a + &b * &b);
    let from_w3 = &w3.y / &w3.x;
    let v = d.triangle.vertex(C_CORNER);
    let f = RationalPoint::new(&a * &b * &c / &three, &b * &c * &l1 / &three);
    let seg = v - &f;
    let from_seg = &seg.y / &seg.x;

    sum.is_zero() && id1 && id2 && id3 && closed == from_w3 && closed == from_seg
}

/// `Σ λ_i log L_i + L_∞` at `(x, y)`, where
/// `L_∞(x, y) = [3 − (a l1 + b l2)] x + (a² − b²) y`. Defined on the open triangle.
pub fn guillemin_potential(d: &WeightedPolytopeData, x: f64, y: f64) -> Option<f64> {
    let t = &d.triple;
    let f = |n: &BigInt| crate::affine::rational_to_f64(&qi(n.clone()));
    let (a, b) = (f(t.a()), f(t.b()));
    let (l1, l2) = (f(&d.l1), f(&d.l2));
    let mut total = 0.0;
    for i in 0..3 {
        let li = f(&d.normals[i].x) * x + f(&d.normals[i].y) * y - f(&d.offsets[i]);
        if li <= 0.0 {
            return None;
        }
        let lambda = f(&d.offsets[i]);
        if lambda != 0.0 {
            total += lambda * li.ln();
        }
    }
    Some(total + (3.0 - (a * l1 + b * l2)) * x + (a * a - b * b) * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::q;

    fn triple(a: i64, b: i64, c: i64) -> MarkovTriple {
        MarkovTriple::new(a, b, c).unwrap()
    }

    fn pt(x: Rational, y: Rational) -> RationalPoint {
        RationalPoint::new(x, y)
    }

    #[test]
    fn solve_l_examples() {
        let big = |n: i64| BigInt::from(n);
        assert_eq!(solve_l1_l2(&triple(1, 1, 1)).unwrap(), (big(1), big(2)));
        assert_eq!(solve_l1_l2(&triple(1, 1, 2)).unwrap(), (big(1), big(5)));
        assert_eq!(solve_l1_l2(&triple(1, 2, 5)).unwrap(), (big(1), big(13)));
    }

    #[test]
    fn build_examples() {
        let p = build(&triple(1, 1, 1)).unwrap();
        assert!(p.triangle.same_cycle(&ConvexPolygon::new(vec![pt(qi(0), qi(0)), pt(qi(1), qi(0)), pt(qi(0), qi(1))]).unwrap()));

        let p = build(&triple(1, 1, 2)).unwrap();
        let verts: Vec<_> = p.triangle.vertices().to_vec();
        assert_eq!(verts, vec![pt(qi(0), qi(0)), pt(qi(1), qi(0)), pt(qi(0), qi(4))]);
        let mut lens = p.triangle.edge_lattice_lengths();
        lens.sort();
        assert_eq!(lens, vec![qi(1), qi(1), qi(4)]);

        let p = build(&triple(1, 2, 5)).unwrap();
        assert_eq!(p.triangle.vertices().to_vec(), vec![pt(qi(0), qi(0)), pt(qi(4), qi(0)), pt(qi(0), qi(25))]);
    }

    #[test]
    fn rejects_non_canonical() {
        assert!(matches!(build(&triple(2, 1, 1)), Err(PolytopeError::NotCanonical(_))));
    }

    #[test]
    fn barycenter_examples() {
        assert_eq!(barycenter(&build(&triple(1, 1, 1)).unwrap()).unwrap(), pt(q(1, 3), q(1, 3)));
        assert_eq!(barycenter(&build(&triple(1, 1, 2)).unwrap()).unwrap(), pt(q(2, 3), q(2, 3)));
        assert_eq!(barycenter(&build(&triple(1, 2, 5)).unwrap()).unwrap(), pt(q(10, 3), q(10, 3)));
    }

    #[test]
    fn disc_size_examples() {
        let d = build(&triple(1, 1, 1)).unwrap();
        assert_eq!(disc_sizes(&d, &pt(q(1, 3), q(1, 3))).unwrap(), [q(1, 3), q(1, 3), q(1, 3)]);
        let d = build(&triple(1, 2, 5)).unwrap();
        assert_eq!(disc_sizes(&d, &pt(q(10, 3), q(10, 3))).unwrap()[2], q(10, 3));
        assert!(disc_sizes(&d, &pt(qi(-1), qi(0))).is_err());
    }

    #[test]
    fn normalize_examples() {
        let n = normalize(&build(&triple(1, 1, 1)).unwrap()).unwrap();
        assert_eq!(n.edge_lengths, vec![qi(3), qi(3), qi(3)]);
        let n = normalize(&build(&triple(1, 1, 2)).unwrap()).unwrap();
        assert_eq!(n.longest_edge, qi(6));
        let n = normalize(&build(&triple(1, 2, 5)).unwrap()).unwrap();
        let mut lens = n.edge_lengths.clone();
        lens.sort();
        assert_eq!(lens, vec![q(3, 10), q(6, 5), q(15, 2)]);
    }

    #[test]
    fn kernel_and_w_relations() {
        for t in [triple(1, 1, 1), triple(1, 1, 2), triple(1, 2, 5)] {
            let d = build(&t).unwrap();
            assert!(check_kernel(&d));
            assert!(check_w_relations(&d));
        }
        let d = build(&triple(1, 1, 2)).unwrap();
        assert_eq!(d.eigenrays[2], IntVector::new(1, -2));
        let d = build(&triple(1, 1, 1)).unwrap();
        assert_eq!(d.eigenrays[2], IntVector::new(2, -1));
    }

    #[test]
    fn guillemin_at_fiber_of_cp2() {
        let d = build(&triple(1, 1, 1)).unwrap();
        let g = guillemin_potential(&d, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        assert!((g - 3f64.ln()).abs() < 1e-12);
        assert!(guillemin_potential(&d, 1.0, 1.0).is_none());
    }
    /// Oracle: the lens label `(k², kl − 1)` is also the image of the corner's
    /// other edge under the frame sending the first edge to `(0, 1)`, so `l`
    /// can be recovered from edge data alone.
    fn l_from_edges(toward_prev: &IntVector, toward_next: &IntVector) -> (BigInt, BigInt) {
        let p = primitive(toward_prev).unwrap();
        let n = primitive(toward_next).unwrap();
        let eg = p.x.extended_gcd(&p.y);
        let (g, d) = (&eg.x * &eg.gcd, &eg.y * &eg.gcd);
        let k2 = &p.y * &n.x - &p.x * &n.y;
        let m = &g * &n.x + &d * &n.y;
        let k = k2.sqrt();
        assert_eq!(&k * &k, k2);
        assert!((&m + BigInt::one()).is_multiple_of(&k));
        let l = ((&m + BigInt::one()) / &k).mod_floor(&k);
        (k.clone(), if l.is_zero() { k } else { l })
    }

    #[test]
    fn corner_parameters_match_edge_oracle() {
        for t in crate::markov::enumerate(&BigInt::from(500)) {
            let d = build(&t).unwrap();
            let v = d.triangle.vertices();
            for (i, slot) in CORNER_WEIGHT_SLOTS.iter().enumerate() {
                let prev = &v[(i + 2) % 3] - &v[i];
                let next = &v[(i + 1) % 3] - &v[i];
                let (dp, _) = crate::affine::primitive_decomposition(&prev).unwrap();
                let (dn, _) = crate::affine::primitive_decomposition(&next).unwrap();
                let (k, l) = l_from_edges(&dp, &dn);
                assert_eq!(&k, t.get(*slot));
                let expect = match slot {
                    Slot::A => d.l1.clone(),
                    Slot::B => (-&d.l2).mod_floor(t.b()),
                    Slot::C => d.l3.clone(),
                };
                let expect = if expect.is_zero() { k.clone() } else { expect };
                assert_eq!(l, expect, "{t} corner {slot}");
            }
        }
    }

    #[test]
    fn l3_values() {
        let l3 = |a, b, c| build(&triple(a, b, c)).unwrap().l3;
        assert_eq!(l3(1, 2, 5), BigInt::from(1));
        assert_eq!(l3(1, 5, 13), BigInt::from(2));
        assert_eq!(l3(2, 5, 29), BigInt::from(22));
        assert_eq!(l3(1, 13, 34), BigInt::from(5));
        assert_eq!(l3(5, 13, 194), BigInt::from(163));
    }
}
