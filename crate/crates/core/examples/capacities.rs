//! Certified Gromov width lower bounds for a few Markov triples.
//!
//!     cargo run --example capacities -- 1,5,13 1/1000

use markov_atf::affine::Rational;
use markov_atf::markov::MarkovTriple;
use markov_atf::packing::capacity_report;

fn main() {
    let mut args = std::env::args().skip(1);
    let triples: Vec<MarkovTriple> = match args.next() {
        Some(t) => vec![t.parse::<MarkovTriple>().unwrap().canonical().0],
        None => ["1,1,1", "1,1,2", "1,2,5", "2,5,29"].iter().map(|s| s.parse().unwrap()).collect(),
    };
    let eps: Rational = args.next().map_or_else(|| "1/100".parse().unwrap(), |s| s.parse().unwrap());

    for t in &triples {
        let report = capacity_report(t, &eps).unwrap();
        println!("T{t}");
        for e in &report.entries {
            println!(
                "  {:<36} {} region(s) of size {:<8} capacity {}π  excluding {:<30} {:?}",
                e.label, e.regions, e.size.to_string(), e.capacity_over_pi, e.excluded.to_string(), e.verdict
            );
        }
        for b in &report.bounds {
            let limit = b.limit_over_pi.as_ref().map_or(String::new(), |l| format!(" (→ {l}π)"));
            println!("  {}: {}π{limit} verified={}", b.statement, b.value_over_pi, b.verified);
        }
        for n in &report.notes {
            println!("  note: {n}");
        }
    }
}
