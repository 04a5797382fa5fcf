//! Classifying squares as cellular, and the regression pullback that is not.

use cellwork::abgrp::{cokernel, is_pullback_square};
use cellwork::builtin::{coordinate_square, regression_square};
use cellwork::cellular::{is_cellular_square, CellularStructure};

fn main() {
    for cs in [CellularStructure::torsion_free(), CellularStructure::all_groups()] {
        for (name, sq) in [("coordinate axes", coordinate_square()), ("<(1,0)>, <(1,2)> in Z^2", regression_square())] {
            let v = is_cellular_square(&sq, &cs).unwrap();
            println!(
                "[{}] {name}: cellular {}, pullback {}, pushout {}, coker of P -> D = {}",
                cs.name(),
                v.is_cellular,
                is_pullback_square(&sq).unwrap(),
                v.pushout.p.describe(),
                cokernel(&v.mediating).0.describe(),
            );
        }
    }
}
