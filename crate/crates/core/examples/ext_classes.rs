//! Ext^1 and the three cokernel classes that define M.

use cellwork::abgrp::AbGroup;
use cellwork::cellular::{ext1, in_class, ClassSpec};

fn main() {
    println!("Ext(Z/m, Z/n):");
    for m in 2..=6u64 {
        let row: Vec<String> = (2..=6u64)
            .map(|n| format!("{:>8}", ext1(&AbGroup::cyclic(m), &AbGroup::cyclic(n)).describe()))
            .collect();
        println!("  m={m} {}", row.join(""));
    }
    let a = AbGroup::from_relations(3, &[&[0, 2, 0], &[0, 0, 3]]).unwrap();
    let n = AbGroup::from_relations(2, &[&[4, 0]]).unwrap();
    println!("Ext({}, {}) = {}", a.describe(), n.describe(), ext1(&a, &n).describe());

    let specs = [
        ClassSpec::TorsionFree,
        ClassSpec::PerpOf(vec![AbGroup::cyclic(2)]),
        ClassSpec::AllGroups,
    ];
    for g in [AbGroup::free(2), AbGroup::cyclic(3), AbGroup::cyclic(4)] {
        let memberships: Vec<String> = specs
            .iter()
            .map(|s| format!("{}: {}", s.name(), in_class(&g, s)))
            .collect();
        println!("{:>6} in {}", g.describe(), memberships.join(", "));
    }
}
