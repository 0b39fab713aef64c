//! The `atf` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a certificate or check fails, 2 for usage
//! and parse errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use crate::affine::{q, Rational};
use crate::atf::{cluster_nodes, mutate_diagram, seed_diagram_with, MutationTrace, SeedOptions};
use crate::document::{DiagramDocument, PolytopeDocument, ReportDoc, TraceDoc};
use crate::markov::{enumerate_tree, MarkovTriple, MutationWord};
use crate::momentmap::invariance_suite;
use crate::packing::{
    capacity_report, diamond_bounds, five_monotone_triangles, nine_ball_skeleton_packing, single_monotone_triangle,
    DiamondTarget, ExclusionSet, Packing, Region,
};
use crate::polytope::{barycenter, build};
use crate::render::{cluster_radius, render_svg, RenderOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "atf", version, about = "Almost toric fibrations of weighted projective planes and their ball packings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print canonical Markov triples with largest entry at most N, one JSON object per line.
    Markov {
        #[arg(long = "max-c", allow_negative_numbers = true)]
        max_c: i64,
        /// Include the parent of each triple.
        #[arg(long)]
        tree: bool,
    },
    /// Build the moment triangle of a triple, or its normalized base diagram.
    Build {
        triple: String,
        #[arg(long)]
        normalized: bool,
        /// Trade every corner for a node (implies --normalized).
        #[arg(long)]
        traded: bool,
        /// Slide all nodes to this lattice distance from the fiber (implies --traded).
        #[arg(long)]
        cluster: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Mutate the fully traded seed diagram along a word in the letters a, b, c.
    Mutate {
        triple: String,
        #[arg(long)]
        word: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a packing certificate.
    Pack {
        triple: String,
        /// single, five, nine, diamond:general, diamond:c_ge_2, diamond:clifford or report.
        #[arg(long)]
        goal: String,
        /// Shrinks diamonds by eps and the nine triangles to side 1 - eps.
        #[arg(long, default_value = "1/100")]
        eps: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check every certificate, report and trace stored in a document.
    Verify { file: PathBuf },
    /// Sample points of the weighted projective plane and check the moment map invariants.
    Moment {
        triple: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a document as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: EXIT_USAGE, message: message.to_string() }
}

fn failed(message: impl ToString) -> Failure {
    Failure { code: EXIT_FAILED, message: message.to_string() }
}

type CmdResult = Result<i32, Failure>;

fn parse_triple(s: &str) -> Result<MarkovTriple, Failure> {
    MarkovTriple::from_str(s).map(|t| t.canonical().0).map_err(usage)
}

fn parse_rational(name: &str, s: &str) -> Result<Rational, Failure> {
    Rational::from_str(s.trim()).map_err(|e| usage(format!("--{name}: '{s}' is not a rational number: {e}")))
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => writeln!(out, "{text}").map_err(failed),
    }
}

fn load(path: &PathBuf) -> Result<DiagramDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    DiagramDocument::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Markov { max_c, tree } => markov(max_c, tree, out),
        Command::Build { triple, normalized, traded, cluster, output } => {
            build_cmd(&triple, normalized, traded, cluster.as_deref(), output.as_ref(), out)
        }
        Command::Mutate { triple, word, output } => mutate_cmd(&triple, &word, output.as_ref(), out),
        Command::Pack { triple, goal, eps, output } => pack_cmd(&triple, &goal, &eps, output.as_ref(), out, err),
        Command::Verify { file } => verify_cmd(&file, out),
        Command::Moment { triple, samples, seed } => moment_cmd(&triple, samples, seed, out),
        Command::Render { file, output } => {
            let doc = load(&file)?;
            let d = doc.diagram().map_err(failed)?;
            let regions = doc.regions().map_err(usage)?;
            let svg = render_svg(&d, &regions, &RenderOptions { cluster_radius: cluster_radius(&d), title: None });
            emit(out, Some(&output), &svg)?;
            Ok(EXIT_OK)
        }
    }
}

fn triple_json(t: &MarkovTriple) -> serde_json::Value {
    json!(t.entries().map(|x| x.to_string()))
}

fn markov(max_c: i64, tree: bool, out: &mut dyn Write) -> CmdResult {
    if max_c < 0 {
        return Err(usage(format!("--max-c must be non-negative, got {max_c}")));
    }
    for (t, parent) in enumerate_tree(&BigInt::from(max_c)) {
        let line = if tree {
            json!({ "triple": triple_json(&t), "parent": parent.as_ref().map(triple_json) })
        } else {
            json!({ "triple": triple_json(&t) })
        };
        writeln!(out, "{line}").map_err(failed)?;
    }
    Ok(EXIT_OK)
}

fn build_cmd(
    triple: &str,
    normalized: bool,
    traded: bool,
    cluster: Option<&str>,
    output: Option<&PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let t = parse_triple(triple)?;
    let eps = cluster.map(|s| parse_rational("cluster", s)).transpose()?;
    let traded = traded || eps.is_some();
    if !(normalized || traded) {
        let data = build(&t).map_err(failed)?;
        let bary = barycenter(&data).map_err(failed)?;
        let doc = PolytopeDocument::from_data(&data, &bary);
        emit(out, output, &serde_json::to_string_pretty(&doc).expect("documents serialize"))?;
        return Ok(EXIT_OK);
    }
    let opts = SeedOptions { trade_all: traded, ..SeedOptions::default() };
    let mut d = seed_diagram_with(&t, &opts).map_err(failed)?;
    if let Some(eps) = eps {
        d = cluster_nodes(&d, &eps).map_err(usage)?;
    }
    emit(out, output, &DiagramDocument::from_diagram(&d).to_json())?;
    Ok(EXIT_OK)
}

fn mutate_cmd(triple: &str, word: &str, output: Option<&PathBuf>, out: &mut dyn Write) -> CmdResult {
    let t = parse_triple(triple)?;
    let word = MutationWord::from_str(word).map_err(usage)?;
    let seed = SeedOptions { trade_all: true, ..SeedOptions::default() };
    let mut d = seed_diagram_with(&t, &seed).map_err(failed)?;
    let mut corners = Vec::new();
    for slot in &word.0 {
        let weight = d.triple.get(*slot).clone();
        let corner = d
            .corners
            .iter()
            .position(|c| c.weight == weight)
            .ok_or_else(|| failed(format!("no corner of weight {weight} in T{}", d.triple)))?;
        d = mutate_diagram(&d, corner).map_err(failed)?;
        corners.push(corner);
    }
    let (trace, end) = MutationTrace::record(&t, seed, &corners).map_err(failed)?;
    debug_assert_eq!(end, d);
    let mut doc = DiagramDocument::from_diagram(&end);
    doc.trace = Some(TraceDoc::from_trace(&trace));
    emit(out, output, &doc.to_json())?;
    Ok(EXIT_OK)
}

fn pack_cmd(
    triple: &str,
    goal: &str,
    eps: &str,
    output: Option<&PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let t = parse_triple(triple)?;
    let eps = parse_rational("eps", eps)?;
    let d = seed_diagram_with(&t, &SeedOptions::default()).map_err(failed)?;
    if goal == "report" {
        let report = capacity_report(&t, &eps).map_err(usage)?;
        let mut doc = DiagramDocument::from_diagram(&d);
        doc.report = Some(ReportDoc::from_report(&report));
        emit(out, output, &doc.to_json())?;
        let all = report.entries.iter().all(|e| e.verdict.is_accepted());
        return Ok(if all { EXIT_OK } else { EXIT_FAILED });
    }
    let (packing, excluded) = match goal {
        "single" => {
            let tri = single_monotone_triangle(&d).map_err(failed)?;
            (Packing { diagram: d, regions: vec![Region::Triangle(tri)] }, ExclusionSet::fiber_and_nodes())
        }
        "five" => (five_monotone_triangles(&d).map_err(usage)?, ExclusionSet::fiber_and_nodes()),
        "nine" => {
            let s = q(1, 1) - &eps;
            (nine_ball_skeleton_packing(&s).map_err(usage)?, ExclusionSet::skeleton_complement())
        }
        other => {
            let target = other
                .strip_prefix("diamond:")
                .ok_or_else(|| usage(format!("unknown goal '{other}'")))
                .and_then(|s| DiamondTarget::from_str(s).map_err(usage))?;
            let dm = diamond_bounds(&d, target, &eps).map_err(usage)?;
            (Packing { diagram: d, regions: vec![Region::Diamond(dm)] }, ExclusionSet::divisor_complement())
        }
    };
    let verdict = packing.verify(&excluded).map_err(failed)?;
    let doc = DiagramDocument::from_parts(&packing.diagram, &packing.regions, Some(&excluded));
    emit(out, output, &doc.to_json())?;
    match verdict.is_accepted() {
        true => Ok(EXIT_OK),
        false => {
            let _ = writeln!(err, "certificate rejected: {verdict:?}");
            Ok(EXIT_FAILED)
        }
    }
}

fn verify_cmd(file: &PathBuf, out: &mut dyn Write) -> CmdResult {
    let doc = load(file)?;
    let mut ok = true;
    let mut line = |ok_here: bool, what: String| -> Result<(), Failure> {
        ok &= ok_here;
        writeln!(out, "{} {what}", if ok_here { "ok  " } else { "FAIL" }).map_err(failed)
    };
    let d = match doc.diagram() {
        Ok(d) => {
            line(true, format!("diagram T{} is valid", d.triple))?;
            d
        }
        Err(e) => {
            line(false, format!("diagram: {e}"))?;
            return Ok(EXIT_FAILED);
        }
    };
    let regions = doc.regions().map_err(usage)?;
    if !regions.is_empty() {
        let excluded = doc.exclusion_set().map_err(usage)?;
        let packing = Packing { diagram: d.clone(), regions };
        match packing.verify(&excluded) {
            Ok(v) if v.is_accepted() => {
                line(true, format!("{} regions avoid {excluded} and are pairwise disjoint", packing.regions.len()))?
            }
            Ok(v) => line(false, format!("regions: {v:?}"))?,
            Err(e) => line(false, format!("regions: {e}"))?,
        }
    }
    if let Some(report) = &doc.report {
        let eps = report_eps(report);
        let fresh = eps.and_then(|eps| capacity_report(&d.triple, &eps).ok());
        let same = fresh.as_ref().is_some_and(|r| &ReportDoc::from_report(r) == report);
        let all = report.entries.iter().all(|e| e.verified);
        line(same && all, format!("capacity report ({} certificates) reproduces and verifies", report.entries.len()))?;
    }
    if let Some(trace) = &doc.trace {
        let t = trace.to_trace().map_err(usage)?;
        match t.replay() {
            Ok(end) => line(end.hash() == t.hash && end == d, format!("mutation trace of {} steps replays", t.steps.len()))?,
            Err(e) => line(false, format!("trace: {e}"))?,
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

/// Recovers ε from the general diamond entry, whose size is `1/2 − ε`.
fn report_eps(report: &ReportDoc) -> Option<Rational> {
    let e = report.entries.iter().find(|e| e.label == "general diamond")?;
    let size = Rational::from_str(&e.size).ok()?;
    Some(q(1, 2) - size)
}

fn moment_cmd(triple: &str, samples: usize, seed: u64, out: &mut dyn Write) -> CmdResult {
    let t = parse_triple(triple)?;
    let data = build(&t).map_err(failed)?;
    let r = invariance_suite(&data, samples, seed);
    let v = json!({
        "triple": triple_json(&t),
        "samples": r.samples,
        "seed": seed,
        "max_containment": r.max_containment,
        "max_circle": r.max_circle,
        "max_orbifold": r.max_orbifold,
        "max_y_mismatch": r.max_y_mismatch,
        "max_edge": r.max_edge,
        "failures": r.failures,
        "passed": r.passed(),
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(failed)?;
    Ok(if r.passed() { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("atf").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn markov_lines() {
        let (code, out, _) = run_capture(&["markov", "--max-c", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 3);
        let (code, out, _) = run_capture(&["markov", "--max-c", "34", "--tree"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
        assert!(out.lines().skip(1).all(|l| l.contains("\"parent\":[")));
        assert_eq!(run_capture(&["markov", "--max-c", "0"]), (0, String::new(), String::new()));
        assert_eq!(run_capture(&["markov", "--max-c", "-1"]).0, 2);
    }

    #[test]
    fn build_normalized_p114() {
        let (code, out, _) = run_capture(&["build", "1,1,2", "--normalized"]);
        assert_eq!(code, 0);
        let doc = DiagramDocument::parse(&out).unwrap();
        assert_eq!(doc.fiber, ["1".to_string(), "1".to_string()]);
        let mut verts: Vec<_> = doc.polygon.clone();
        verts.sort();
        let mut expect = [["0", "0"], ["0", "6"], ["3/2", "0"]].iter().map(|p| p.map(String::from)).collect::<Vec<_>>();
        expect.sort();
        assert_eq!(verts, expect);
    }

    #[test]
    fn bad_triple_names_the_equation() {
        let (code, _, err) = run_capture(&["build", "1,2,3"]);
        assert_eq!(code, 2);
        assert!(err.contains("1.1"), "{err}");
    }
}
