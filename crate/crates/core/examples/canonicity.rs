//! Cellular squares against the indiscrete and pullback notions.

use cellwork::builtin::indiscrete_pair;
use cellwork::cellular::CellularStructure;
use cellwork::harness::Sampler;
use cellwork::independence::{compare_notions, uniqueness_probe, IndependenceNotion};

fn main() {
    let cs = CellularStructure::torsion_free();
    let cellular = IndependenceNotion::CellularSquares(cs.clone());
    let sampler = Sampler::new(7);
    for kind in ["indiscrete", "pullback"] {
        let other = IndependenceNotion::from_name(kind, cs.clone()).unwrap();
        let r = compare_notions(&cellular, &other, &sampler, 200).unwrap();
        println!(
            "{}: agree {}, only cellular {}, only {kind} {}",
            r.suite,
            r.stat("agree"),
            r.stat("failures/only-n1"),
            r.stat("failures/only-n2")
        );
    }

    // Z^2 and Z over Z <- 0 -> Z: both are indiscrete-independent, and no
    // monomorphic cocone merges them
    let (po, collapsed) = indiscrete_pair();
    let indiscrete = IndependenceNotion::Indiscrete(cs);
    let r = uniqueness_probe(&indiscrete, &po, &collapsed, 3).unwrap();
    println!(
        "probe: {} groups searched, certified no merge: {}",
        r.stat("groups_searched"),
        r.stat("certified_no_merge") == 1
    );
    if let Some(rel) = r.builtins.get("forced_relation") {
        println!("  forced relation {rel}");
    }
}
