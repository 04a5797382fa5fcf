//! Presentations, canonical forms, and the basic limits of abelian groups.

use cellwork::abgrp::{cokernel, hom_group_generators, kernel, pullback, pushout, AbGroup, Hom, Span};

fn main() {
    // <x, y | 4x + 6y = 0, 2x - 2y = 0>
    let g = AbGroup::from_relations(2, &[&[4, 6], &[2, -2]]).unwrap();
    println!("<x, y | 4x+6y, 2x-2y> = {} (order {:?})", g.describe(), g.order());
    for e in g.elements(32).unwrap().iter().take(4) {
        println!("  element {e:?} has order {}", g.element_order(e).unwrap());
    }

    let z = AbGroup::free(1);
    let z4 = AbGroup::cyclic(4);
    let z6 = AbGroup::cyclic(6);
    let gens = hom_group_generators(&z4, &z6);
    println!("Hom(Z/4, Z/6) has {} generator(s): 1 -> {:?}", gens.len(), gens[0].mat().column(0));

    let q = Hom::from_i64(&z, &z4, &[1]).unwrap();
    println!("coker(Z -> Z/4) = {}", cokernel(&q).0.describe());
    println!("ker(Z -> Z/4) = {}", kernel(&q).unwrap().0.describe());

    let two = Hom::from_i64(&z, &z, &[2]).unwrap();
    let three = Hom::from_i64(&z, &z, &[3]).unwrap();
    let po = pushout(&Span::new(two.clone(), three.clone()).unwrap());
    println!("pushout of Z <-2- Z -3-> Z = {}", po.p.describe());
    let pb = pullback(&two, &three).unwrap();
    println!("pullback of Z -2-> Z <-3- Z = {}", pb.q.describe());
}
