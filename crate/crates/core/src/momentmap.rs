//! Numerical checks of the explicit moment map of `CP(a², b², c²)`.
//!
//! A point `[z1 : z2 : z3]` is first moved along its real weighted orbit
//! `z_i -> t^{w_i} z_i`, `w = (a², b², c²)`, onto the level
//! `a²|z1|² + b²|z2|² + c²|z3|² = 2a²b²c²`, and then mapped by
//!
//! ```text
//! x = |z3|² (abc)² / D
//! y = (|z2|² + (a l1 − 1)|z3|²) (bc)² / D
//! ```
//!
//! with `D` the left side of the level equation.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::affine::rational_to_f64;
use crate::polytope::WeightedPolytopeData;

/// Relative accuracy of the level solve.
pub const LEVEL_TOL: f64 = 1e-12;
/// Accuracy demanded of every identity checked on sampled points.
pub const IDENTITY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MomentError {
    #[error("the zero vector is not a point of weighted projective space")]
    ZeroPoint,
    #[error("point is off the level set (relative error {0:e})")]
    OffLevel(f64),
    #[error("({0}, {1}) is not in the open triangle")]
    Boundary(f64, f64),
}

type Result<T> = std::result::Result<T, MomentError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousPoint {
    pub z: [Complex64; 3],
}

impl HomogeneousPoint {
    pub fn new(z1: Complex64, z2: Complex64, z3: Complex64) -> Result<Self> {
        if [z1, z2, z3].iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(MomentError::ZeroPoint);
        }
        Ok(HomogeneousPoint { z: [z1, z2, z3] })
    }

    pub fn real(x: f64, y: f64, z: f64) -> Result<Self> {
        HomogeneousPoint::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0), Complex64::new(z, 0.0))
    }

    fn norms(&self) -> [f64; 3] {
        self.z.map(|z| z.norm_sqr())
    }

    /// `z_i -> λ^{w_i} z_i` for a complex `λ = r e^{iθ}`.
    pub fn act(&self, weights: [f64; 3], r: f64, theta: f64) -> HomogeneousPoint {
        let mut z = self.z;
        for (zi, w) in z.iter_mut().zip(weights) {
            *zi *= Complex64::from_polar(r.powf(w), w * theta);
        }
        HomogeneousPoint { z }
    }
}

/// The three orbifold charts `U_{a²}`, `U_{b²}`, `U_{c²}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    A,
    B,
    C,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentImage {
    pub x: f64,
    pub y: f64,
    /// `y` from the second printed expression.
    pub y_alt: f64,
    pub charts: Vec<Chart>,
}

/// Floating-point copy of the data the formulas need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentData {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub l1: f64,
    pub l2: f64,
}

impl MomentData {
    pub fn from_polytope(d: &WeightedPolytopeData) -> Self {
        let f = |n: &num_bigint::BigInt| rational_to_f64(&crate::affine::qi(n.clone()));
        MomentData { a: f(d.triple.a()), b: f(d.triple.b()), c: f(d.triple.c()), l1: f(&d.l1), l2: f(&d.l2) }
    }

    pub fn weights(&self) -> [f64; 3] {
        [self.a * self.a, self.b * self.b, self.c * self.c]
    }

    pub fn level(&self) -> f64 {
        2.0 * (self.a * self.b * self.c).powi(2)
    }

    pub fn level_value(&self, p: &HomogeneousPoint) -> f64 {
        let n = p.norms();
        let w = self.weights();
        w[0] * n[0] + w[1] * n[1] + w[2] * n[2]
    }

    /// Facet functions `L1`, `L2`, `L3`.
    pub fn facets(&self, x: f64, y: f64) -> [f64; 3] {
        let (a, b, c) = (self.a, self.b, self.c);
        [-(b * self.l2 - 1.0) * x - b * b * y + b * b * c * c, -(a * self.l1 - 1.0) * x + a * a * y, x]
    }

    /// Scale of coordinates in the unnormalized triangle, for tolerances.
    pub fn scale(&self) -> f64 {
        (self.a * self.b).max(self.c).powi(2)
    }
}

/// Moves `p` along `z_i -> t^{w_i} z_i`, `t > 0`, onto the level set.
pub fn rescale_to_level(p: &HomogeneousPoint, m: &MomentData) -> HomogeneousPoint {
    // With s = log t the level is log Σ exp(log(w_i |z_i|²) + 2 w_i s), a
    // convex increasing function of s; Newton from the right of the root
    // converges monotonically. Bisection guards the first steps.
    let w = m.weights();
    let n = p.norms();
    let terms: Vec<(f64, f64)> = (0..3).filter(|&i| n[i] > 0.0).map(|i| ((w[i] * n[i]).ln(), 2.0 * w[i])).collect();
    let target = m.level().ln();
    let eval = |s: f64| -> (f64, f64) {
        let top = terms.iter().map(|(c, k)| c + k * s).fold(f64::NEG_INFINITY, f64::max);
        let mut sum = 0.0;
        let mut dsum = 0.0;
        for (c, k) in &terms {
            let e = (c + k * s - top).exp();
            sum += e;
            dsum += k * e;
        }
        (top + sum.ln() - target, dsum / sum)
    };
    let (mut lo, mut hi) = (-1.0, 1.0);
    while eval(lo).0 > 0.0 {
        lo *= 2.0;
    }
    while eval(hi).0 < 0.0 {
        hi *= 2.0;
    }
    let mut s = hi;
    for _ in 0..200 {
        let (f, df) = eval(s);
        if f.abs() < LEVEL_TOL * 1e-3 {
            break;
        }
        if f > 0.0 {
            hi = s;
        } else {
            lo = s;
        }
        let newton = s - f / df;
        s = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }
    let t = s.exp();
    let mut z = p.z;
    for (zi, wi) in z.iter_mut().zip(w) {
        *zi *= t.powf(wi);
    }
    HomogeneousPoint { z }
}

/// The moment map on an on-level point.
pub fn phi_p(p: &HomogeneousPoint, m: &MomentData) -> Result<MomentImage> {
    let level = m.level();
    let dval = m.level_value(p);
    let rel = (dval - level).abs() / level;
    if rel > IDENTITY_TOL {
        return Err(MomentError::OffLevel(rel));
    }
    let [n1, n2, n3] = p.norms();
    let (a, b, c) = (m.a, m.b, m.c);
    let x = n3 * (a * b * c).powi(2) / dval;
    let y = (n2 + (a * m.l1 - 1.0) * n3) * (b * c).powi(2) / dval;
    let y_alt = c * c - (n1 + (b * m.l2 - 1.0) * n3) * (a * c).powi(2) / dval;
    let charts = [(n1, Chart::A), (n2, Chart::B), (n3, Chart::C)].into_iter().filter(|(n, _)| *n > 0.0).map(|(_, ch)| ch).collect();
    Ok(MomentImage { x, y, y_alt, charts })
}

/// `Σ λ_i log L_i + L_∞`, rejecting points off the open triangle.
pub fn guillemin_potential(d: &WeightedPolytopeData, x: f64, y: f64) -> Result<f64> {
    crate::polytope::guillemin_potential(d, x, y).ok_or(MomentError::Boundary(x, y))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub samples: usize,
    /// Largest deviation seen per check: containment, chart signs, S¹
    /// invariance, orbifold invariance, the two y-formulas, edge claims.
    pub max_containment: f64,
    pub max_circle: f64,
    pub max_orbifold: f64,
    pub max_y_mismatch: f64,
    pub max_edge: f64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> HomogeneousPoint {
    loop {
        let mut z = [Complex64::new(0.0, 0.0); 3];
        for zi in z.iter_mut() {
            *zi = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        // One sample in four lies on a coordinate line, to exercise edges.
        if rng.gen_range(0..4) == 0 {
            z[rng.gen_range(0..3)] = Complex64::new(0.0, 0.0);
        }
        if let Ok(p) = HomogeneousPoint::new(z[0], z[1], z[2]) {
            return p;
        }
    }
}

/// Samples `n` random points with a fixed seed and checks image containment,
/// chart signs, S¹ and orbifold invariance, agreement of the two printed
/// y-formulas and the edge claims, each to [`IDENTITY_TOL`] relative to the
/// triangle's size.
pub fn invariance_suite(d: &WeightedPolytopeData, n: usize, seed: u64) -> SuiteReport {
    let m = MomentData::from_polytope(d);
    let tol = IDENTITY_TOL * m.scale();
    let w = m.weights();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport {
        samples: n,
        max_containment: 0.0,
        max_circle: 0.0,
        max_orbifold: 0.0,
        max_y_mismatch: 0.0,
        max_edge: 0.0,
        failures: Vec::new(),
    };
    for k in 0..n {
        let raw = random_point(&mut rng);
        let p = rescale_to_level(&raw, &m);
        let img = match phi_p(&p, &m) {
            Ok(img) => img,
            Err(e) => {
                r.failures.push(format!("sample {k} {:?}: {e}", raw.z));
                continue;
            }
        };
        let l = m.facets(img.x, img.y);
        let worst = l.iter().fold(0.0f64, |acc, v| acc.max(-v));
        r.max_containment = r.max_containment.max(worst);
        if worst > tol {
            r.failures.push(format!("sample {k} {:?}: image ({}, {}) outside the triangle", raw.z, img.x, img.y));
        }
        // On U_{a²} L1 > 0, on U_{b²} L2 > 0, on U_{c²} L3 > 0.
        for (i, ch) in [Chart::A, Chart::B, Chart::C].into_iter().enumerate() {
            if img.charts.contains(&ch) && l[i] <= 0.0 {
                r.failures.push(format!("sample {k} {:?}: chart {ch:?} but L{} = {}", raw.z, i + 1, l[i]));
            }
        }
        let ymis = (img.y - img.y_alt).abs();
        r.max_y_mismatch = r.max_y_mismatch.max(ymis);
        if ymis > tol {
            r.failures.push(format!("sample {k} {:?}: y formulas differ by {ymis:e}", raw.z));
        }

        let theta = rng.gen_range(0.0..TAU);
        if let Ok(rot) = phi_p(&p.act(w, 1.0, theta), &m) {
            let dev = (rot.x - img.x).abs().max((rot.y - img.y).abs());
            r.max_circle = r.max_circle.max(dev);
            if dev > tol {
                r.failures.push(format!("sample {k} {:?}: S¹ action moves the image by {dev:e}", raw.z));
            }
        }
        // Root of unity of order w_j acting on the chart where z_j ≠ 0.
        for (j, wj) in w.iter().enumerate() {
            if p.z[j].norm_sqr() == 0.0 {
                continue;
            }
            let k_root = rng.gen_range(0..(*wj as u64).max(1)) as f64;
            let zeta = TAU * k_root / wj;
            let mut z = p.z;
            for (i, zi) in z.iter_mut().enumerate() {
                if i != j {
                    *zi *= Complex64::from_polar(1.0, w[i] * zeta);
                }
            }
            let q = HomogeneousPoint { z };
            if let Ok(img2) = phi_p(&q, &m) {
                let dev = (img2.x - img.x).abs().max((img2.y - img.y).abs());
                r.max_orbifold = r.max_orbifold.max(dev);
                if dev > tol {
                    r.failures.push(format!("sample {k} {:?}: orbifold chart {j} action moves the image by {dev:e}", raw.z));
                }
            }
        }
        // [0:y:z] lies over L1 = 0, [x:0:z] over L2 = 0, [x:y:0] over L3 = 0.
        for (i, li) in l.iter().enumerate() {
            if p.z[i].norm_sqr() == 0.0 {
                let dev = li.abs();
                r.max_edge = r.max_edge.max(dev);
                if dev > tol {
                    r.failures.push(format!("sample {k} {:?}: z{} = 0 but L{} = {}", raw.z, i + 1, i + 1, l[i]));
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::MarkovTriple;
    use crate::polytope::build;

    fn data(a: i64, b: i64, c: i64) -> (WeightedPolytopeData, MomentData) {
        let d = build(&MarkovTriple::new(a, b, c).unwrap()).unwrap();
        let m = MomentData::from_polytope(&d);
        (d, m)
    }

    #[test]
    fn rescale_examples() {
        let (_, m) = data(1, 1, 1);
        let p = rescale_to_level(&HomogeneousPoint::real(1.0, 1.0, 1.0).unwrap(), &m);
        for z in p.z {
            assert!((z.norm_sqr() - 2.0 / 3.0).abs() < 1e-12);
        }
        let (_, m) = data(1, 2, 5);
        let p = rescale_to_level(&HomogeneousPoint::real(1.0, 0.0, 0.0).unwrap(), &m);
        assert!((p.z[0].norm_sqr() - 2.0 * 4.0 * 25.0).abs() < 1e-9);
        let p = rescale_to_level(&HomogeneousPoint::real(0.0, 0.0, 1.0).unwrap(), &m);
        assert!((p.z[2].norm_sqr() - 2.0 * 4.0).abs() < 1e-9);
    }

    #[test]
    fn images_of_special_points() {
        let (_, m) = data(1, 1, 1);
        let img = phi_p(&rescale_to_level(&HomogeneousPoint::real(1.0, 1.0, 1.0).unwrap(), &m), &m).unwrap();
        assert!((img.x - 1.0 / 3.0).abs() < 1e-12 && (img.y - 1.0 / 3.0).abs() < 1e-12);

        let (d, m) = data(1, 2, 5);
        let img = phi_p(&rescale_to_level(&HomogeneousPoint::real(1.0, 0.0, 0.0).unwrap(), &m), &m).unwrap();
        assert!(img.x.abs() < 1e-9 && img.y.abs() < 1e-9);
        let img = phi_p(&rescale_to_level(&HomogeneousPoint::real(0.0, 0.0, 1.0).unwrap(), &m), &m).unwrap();
        let (vx, vy) = d.triangle.vertex(crate::polytope::C_CORNER).to_f64();
        assert!((img.x - vx).abs() < 1e-9 && (img.y - vy).abs() < 1e-9);
    }

    #[test]
    fn off_level_and_zero_rejected() {
        let (_, m) = data(1, 1, 1);
        assert!(matches!(phi_p(&HomogeneousPoint::real(1.0, 1.0, 1.0).unwrap(), &m), Err(MomentError::OffLevel(_))));
        assert_eq!(HomogeneousPoint::real(0.0, 0.0, 0.0), Err(MomentError::ZeroPoint));
    }

    #[test]
    fn suite_passes_on_small_triples() {
        for (a, b, c) in [(1, 1, 1), (1, 1, 2), (1, 2, 5)] {
            let (d, _) = data(a, b, c);
            let r = invariance_suite(&d, 200, 7);
            assert!(r.passed(), "{:?}", r.failures.first());
        }
    }

    #[test]
    fn guillemin_rejects_boundary() {
        let (d, _) = data(1, 1, 1);
        assert!((guillemin_potential(&d, 1.0 / 3.0, 1.0 / 3.0).unwrap() - 3f64.ln()).abs() < 1e-12);
        assert!(guillemin_potential(&d, 0.0, 0.5).is_err());
    }
}
