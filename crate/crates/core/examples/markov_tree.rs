//! Walk the Markov tree up to a bound and check the growth facts on each triple.
//!
//!     cargo run --example markov_tree -- 1000

use markov_atf::markov::{check_growth_facts, enumerate_tree, MutationWord};
use num_bigint::BigInt;

fn main() {
    let bound: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let tree = enumerate_tree(&BigInt::from(bound));
    println!("{} canonical triples with c <= {bound}", tree.len());
    for (t, parent) in &tree {
        let growth = check_growth_facts(t);
        let parent = parent.as_ref().map_or("-".to_string(), |p| p.to_string());
        println!("{t:>22}  parent {parent:>18}  c²/Σ = {:.4}  growth ok: {}", ratio(&growth.ratio), growth.all_hold());
    }

    // Positional words replay from the root: "cbc" swaps out c, then b, then c.
    let word: MutationWord = "cbc".parse().unwrap();
    let path: Vec<String> = word.replay().iter().map(|t| t.to_string()).collect();
    println!("word cbc: {}", path.join(" -> "));
}

fn ratio(r: &num_rational::BigRational) -> f64 {
    markov_atf::affine::rational_to_f64(r)
}
