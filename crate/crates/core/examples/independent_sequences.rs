//! Independent sequences built by repeated pushout.

use cellwork::abgrp::{AbGroup, Hom};
use cellwork::cellular::CellularStructure;
use cellwork::harness::Verdict;
use cellwork::independence::{build_independent_sequence, verify_independent_sequence, IndependenceNotion};

fn main() {
    let notion = IndependenceNotion::CellularSquares(CellularStructure::torsion_free());
    let bases = [
        ("0 -> Z", Hom::zero(&AbGroup::zero(), &AbGroup::free(1))),
        ("Z -(2,1)-> Z^2", Hom::from_i64(&AbGroup::free(1), &AbGroup::free(2), &[2, 1]).unwrap()),
    ];
    for (name, f) in bases {
        let seq = build_independent_sequence(&f, 4, &notion).unwrap();
        let objs: Vec<String> = seq.objects.iter().map(AbGroup::describe).collect();
        let r = verify_independent_sequence(&seq, &notion);
        println!("{name}: {}", objs.join(", "));
        println!(
            "  functoriality {}, commutation {}, verdict {}",
            r.stat("functoriality_checked"),
            r.stat("commutation_checked"),
            if r.verdict == Verdict::AllPassed { "ok" } else { "FAILED" }
        );
    }
}
