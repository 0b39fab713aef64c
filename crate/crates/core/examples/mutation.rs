//! Mutate the fully traded (1,1,1) diagram up the Markov tree and check that
//! each step only changes the half of the diagram it moves.

use markov_atf::affine::q;
use markov_atf::atf::{check_mutation_locality, cluster_nodes, mutate_diagram_with, seed_diagram_with, Anchor, MutationTrace, SeedOptions};
use markov_atf::markov::{MarkovTriple, Slot};

fn main() {
    let seed = SeedOptions { trade_all: true, ..SeedOptions::default() };
    let eps = q(1, 100);
    let mut d = cluster_nodes(&seed_diagram_with(&MarkovTriple::root(), &seed).unwrap(), &eps).unwrap();
    let mut corners = Vec::new();

    // Always mutate the smallest weight, which climbs the Fibonacci branch.
    for _ in 0..5 {
        let weight = d.triple.get(Slot::A).clone();
        let corner = d.corners.iter().position(|c| c.weight == weight).unwrap();
        let out = mutate_diagram_with(&d, corner, Anchor::LongestEdge).unwrap();
        let local = check_mutation_locality(&d, &out, &eps).unwrap();
        println!(
            "T{} --corner {corner}--> T{}   area {}  fiber ({}, {})  local: {}",
            d.triple, out.diagram.triple, out.diagram.polygon.area(), out.diagram.fiber.x, out.diagram.fiber.y, local.holds()
        );
        corners.push(corner);
        d = out.diagram;
    }

    let (trace, end) = MutationTrace::record(&MarkovTriple::root(), seed, &corners).unwrap();
    println!("trace of {} steps ends at T{}, hash {}", trace.steps.len(), end.triple, &trace.hash[..16]);
    println!("replay verifies: {}", trace.verify().unwrap());
}
