//! Push random points of CP(a², b², c²) through the moment map and check them
//! against the polytope.

use markov_atf::markov::MarkovTriple;
use markov_atf::momentmap::{invariance_suite, phi_p, rescale_to_level, HomogeneousPoint, MomentData};
use markov_atf::polytope::build;

fn main() {
    for t in ["1,1,1", "1,1,2", "1,2,5", "1,5,13"] {
        let t: MarkovTriple = t.parse().unwrap();
        let d = build(&t).unwrap();
        let r = invariance_suite(&d, 1000, 7);
        println!(
            "T{t}: {} samples, containment {:.1e}, circle {:.1e}, orbifold {:.1e}, edges {:.1e}, passed {}",
            r.samples, r.max_containment, r.max_circle, r.max_orbifold, r.max_edge, r.passed()
        );
    }

    let d = build(&MarkovTriple::new(1, 2, 5).unwrap()).unwrap();
    let m = MomentData::from_polytope(&d);
    let p = rescale_to_level(&HomogeneousPoint::real(1.0, 1.0, 1.0).unwrap(), &m);
    let img = phi_p(&p, &m).unwrap();
    println!("image of [1:1:1] in T(1,2,5): ({:.6}, {:.6}) via charts {:?}", img.x, img.y, img.charts);
    println!("facet values there: {:?}", m.facets(img.x, img.y));
}
