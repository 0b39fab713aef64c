//! Emit a packing as a JSON document, parse it back, re-verify it and draw it.
//!
//!     cargo run --example documents -- out.svg

use markov_atf::affine::q;
use markov_atf::document::DiagramDocument;
use markov_atf::packing::{nine_ball_skeleton_packing, ExclusionSet, Packing};
use markov_atf::render::{cluster_radius, render_svg, RenderOptions};

fn main() {
    let packing = nine_ball_skeleton_packing(&q(99, 100)).unwrap();
    let excluded = ExclusionSet::skeleton_complement();
    let json = DiagramDocument::from_parts(&packing.diagram, &packing.regions, Some(&excluded)).to_json();
    println!("{} bytes of JSON", json.len());

    let doc = DiagramDocument::parse(&json).unwrap();
    let again = Packing { diagram: doc.diagram().unwrap(), regions: doc.regions().unwrap() };
    println!("parsed back identical: {}", again == packing);
    println!("verdict: {:?}", again.verify(&doc.exclusion_set().unwrap()).unwrap());

    let svg = render_svg(&again.diagram, &again.regions, &RenderOptions { cluster_radius: cluster_radius(&again.diagram), title: None });
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, &svg).unwrap(),
        None => print!("{svg}"),
    }
}
