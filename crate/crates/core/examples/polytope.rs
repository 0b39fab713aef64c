//! Moment triangle of a weighted projective plane, before and after normalization.
//!
//!     cargo run --example polytope -- 2,5,29

use markov_atf::markov::MarkovTriple;
use markov_atf::polytope::{barycenter, build, check_kernel, check_w_relations, disc_sizes, evans_smith_congruences, normalize};

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "2,5,29".into());
    let t: MarkovTriple = arg.parse().expect("a Markov triple such as 1,5,13");
    let t = t.canonical().0;
    let d = build(&t).expect("canonical triple");

    println!("T{t}: l1 = {}, l2 = {}, l3 = {}", d.l1, d.l2, d.l3);
    for (i, v) in d.triangle.vertices().iter().enumerate() {
        println!("  vertex {i}: ({}, {})  lens label {:?}", v.x, v.y, d.lens_labels[i]);
    }
    println!("  Evans-Smith congruences: {:?}", evans_smith_congruences(&t, &d.l1, &d.l2));
    println!("  kernel identity: {}, eigenray relations: {}", check_kernel(&d), check_w_relations(&d));

    let p = barycenter(&d).unwrap();
    println!("  eigenrays meet at ({}, {}), disc sizes {:?}", p.x, p.y, disc_sizes(&d, &p).unwrap().map(|s| s.to_string()));

    let n = normalize(&d).unwrap();
    let verts: Vec<String> = n.triangle.vertices().iter().map(|v| format!("({}, {})", v.x, v.y)).collect();
    println!("normalized: {}", verts.join(" "));
    println!("  fiber ({}, {}), area {}, longest edge {}", n.fiber.x, n.fiber.y, n.triangle.area(), n.longest_edge);
}
