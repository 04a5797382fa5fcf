//! Existence and uniqueness for cellular squares: amalgamate a span, then
//! merge two different amalgams over it.

use cellwork::abgrp::random::{rng_from_seed, Caps};
use cellwork::cellular::sample::{cellular_square_over, m_span};
use cellwork::cellular::CellularStructure;
use cellwork::independence::{amalgamate, check_merge, unify_amalgams, IndependenceNotion};

fn main() {
    let cs = CellularStructure::torsion_free();
    let notion = IndependenceNotion::CellularSquares(cs.clone());
    let mut rng = rng_from_seed(3);
    let caps = Caps::default();
    for _ in 0..3 {
        let span = m_span(&mut rng, &cs, caps).unwrap();
        let am = amalgamate(&span, &cs).unwrap();
        println!(
            "span {} <- {} -> {}: pushout {}",
            span.f.dst().describe(),
            span.apex().describe(),
            span.g.dst().describe(),
            am.d().describe()
        );
        let sq1 = cellular_square_over(&mut rng, &span, &cs, caps).unwrap();
        let sq2 = cellular_square_over(&mut rng, &span, &cs, caps).unwrap();
        let u = unify_amalgams(&sq1, &sq2, &cs).unwrap();
        let verdict = check_merge(&notion, &sq1, &sq2, &u.d1, &u.d2).unwrap();
        println!(
            "  D1 = {}, D2 = {} merge into E = {} ({})",
            sq1.d().describe(),
            sq2.d().describe(),
            u.e.describe(),
            verdict.unwrap_or("all contracts hold")
        );
    }
}
