//! Randomized invariants of the geometry kernel, the Markov tree, the
//! verifier and the document layer.

use markov_atf::affine::{
    convex_hull, lattice_length, monodromy, polygon_equiv, q, qi, ConvexPolygon, IntMatrix, IntVector, RationalPoint, UnimodularMap,
};
use markov_atf::atf::{mutate_diagram, seed_diagram, seed_diagram_with, SeedOptions};
use markov_atf::document::DiagramDocument;
use markov_atf::markov::{is_markov, mutate, MarkovTriple, Slot};
use markov_atf::packing::{verify, DiamondPlacement, ExclusionSet, Region, TrianglePlacement};
use markov_atf::render::{render_svg, RenderOptions};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

fn generator(i: u8) -> IntMatrix {
    match i % 4 {
        0 => IntMatrix::new(0, -1, 1, 0),
        1 => IntMatrix::new(1, 1, 0, 1),
        2 => IntMatrix::new(1, 0, -1, 1),
        _ => IntMatrix::new(0, 1, 1, 0),
    }
}

fn unimodular() -> impl Strategy<Value = UnimodularMap> {
    (prop::collection::vec(0u8..4, 0..8), -20i64..20, 1i64..7, -20i64..20, 1i64..7).prop_map(|(word, tx, dx, ty, dy)| {
        let m = word.iter().fold(IntMatrix::identity(), |acc, g| acc.mul(&generator(*g)));
        UnimodularMap::new(m, RationalPoint::new(q(tx, dx), q(ty, dy))).unwrap()
    })
}

fn rational_point() -> impl Strategy<Value = RationalPoint> {
    (-30i64..30, 1i64..5, -30i64..30, 1i64..5).prop_map(|(x, dx, y, dy)| RationalPoint::new(q(x, dx), q(y, dy)))
}

fn polygon() -> impl Strategy<Value = ConvexPolygon> {
    prop::collection::vec(rational_point(), 3..9).prop_filter_map("degenerate hull", |pts| convex_hull(&pts).ok())
}

fn primitive_pair() -> impl Strategy<Value = (i64, i64)> {
    (-12i64..12, -12i64..12).prop_filter("primitive", |(k, l)| (*k, *l) != (0, 0) && k.gcd(l) == 1)
}

proptest! {
    #[test]
    fn monodromy_is_unipotent_and_fixes_its_ray((k, l) in primitive_pair()) {
        let a = monodromy(&BigInt::from(k), &BigInt::from(l)).unwrap();
        prop_assert!(a.det().is_one());
        prop_assert_eq!(a.trace(), BigInt::from(2));
        prop_assert_eq!(a.apply_int(&IntVector::new(k, l)), IntVector::new(k, l));
        let inv = a.unimodular_inverse().unwrap();
        prop_assert_eq!(a.mul(&inv), IntMatrix::identity());
    }

    #[test]
    fn unimodular_maps_preserve_area_and_lattice_length(p in polygon(), g in unimodular()) {
        prop_assert!(g.det() == BigInt::one() || g.det() == -BigInt::one());
        let image = p.apply_map(&g);
        prop_assert_eq!(image.area(), p.area());
        prop_assert_eq!(image.boundary_lattice_length(), p.boundary_lattice_length());
        let (u, v) = (p.vertex(0), p.vertex(1));
        prop_assert_eq!(lattice_length(&g.apply(u), &g.apply(v)), lattice_length(u, v));
    }

    #[test]
    fn maps_compose_and_invert(g in unimodular(), h in unimodular(), x in rational_point()) {
        prop_assert_eq!(g.compose(&h).apply(&x), g.apply(&h.apply(&x)));
        prop_assert_eq!(g.inverse().apply(&g.apply(&x)), x);
    }

    #[test]
    fn equivalence_is_found_and_correct(p in polygon(), g in unimodular()) {
        let image = p.apply_map(&g);
        let found = polygon_equiv(&p, &image);
        prop_assert!(found.is_some());
        prop_assert!(p.apply_map(&found.unwrap()).same_cycle(&image));
        prop_assert_eq!(p.normal_form(), image.normal_form());
    }

    #[test]
    fn markov_mutation_is_an_involution(word in prop::collection::vec(0usize..3, 0..12), last in 0usize..3) {
        let mut t = MarkovTriple::root();
        for i in word {
            t = mutate(&t, Slot::from_index(i)).canonical;
        }
        let slot = Slot::from_index(last);
        let m = mutate(&t, slot);
        prop_assert!(is_markov(m.raw.a(), m.raw.b(), m.raw.c()).unwrap());
        let back = mutate(&m.raw, slot).raw;
        prop_assert_eq!(back, t);
    }

    #[test]
    fn diamonds_are_monotone_in_size(num in 1i64..200, den in 1i64..200) {
        // A verified diamond stays verified when shrunk about its center.
        let d = seed_diagram(&MarkovTriple::root()).unwrap();
        let ex = ExclusionSet::divisor_complement();
        let (small, big) = if q(num, 200) <= q(den, 200) { (q(num, 200), q(den, 200)) } else { (q(den, 200), q(num, 200)) };
        let at = |size| Region::Diamond(DiamondPlacement { psi: IntMatrix::identity(), center: RationalPoint::new(qi(1), q(1, 2)), d: size });
        let big_ok = verify(&d, &at(big), &ex).unwrap().is_accepted();
        let small_ok = verify(&d, &at(small), &ex).unwrap().is_accepted();
        prop_assert!(!big_ok || small_ok);
    }

    #[test]
    fn triangles_around_the_fiber_are_rejected(r in 1i64..20, g in 0u8..4) {
        let d = seed_diagram(&MarkovTriple::root()).unwrap();
        let f = d.fiber.clone();
        let r = q(r, 60);
        let m = generator(g);
        let corner = |x: i64, y: i64| {
            let v = m.apply(&RationalPoint::new(qi(x) * &r, qi(y) * &r));
            &f + &v
        };
        let t = TrianglePlacement::from_vertices(&corner(-1, -1), &corner(2, -1), &corner(-1, 2), None).unwrap();
        prop_assert!(!verify(&d, &Region::Triangle(t), &ExclusionSet::fiber_and_nodes()).unwrap().is_accepted());
    }

    #[test]
    fn mutated_documents_round_trip(word in prop::collection::vec(0usize..3, 0..5)) {
        let opts = SeedOptions { trade_all: true, ..SeedOptions::default() };
        let mut d = seed_diagram_with(&MarkovTriple::root(), &opts).unwrap();
        for i in word {
            let w = d.triple.get(Slot::from_index(i)).clone();
            let corner = d.corners.iter().position(|c| c.weight == w).unwrap();
            d = mutate_diagram(&d, corner).unwrap();
        }
        let json = DiagramDocument::from_diagram(&d).to_json();
        let back = DiagramDocument::parse(&json).unwrap();
        prop_assert_eq!(back.to_json(), json);
        let e = back.diagram().unwrap();
        prop_assert_eq!(&e, &d);
        prop_assert_eq!(render_svg(&e, &[], &RenderOptions::default()), render_svg(&d, &[], &RenderOptions::default()));
    }
}
