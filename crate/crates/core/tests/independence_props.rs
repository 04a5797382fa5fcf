mod common;

use cellwork::abgrp::random::{random_representation, Caps};
use cellwork::abgrp::{cokernel, compose, direct_sum, pushout, AbGroup, Hom, Span, Square};
use cellwork::builtin::{indiscrete_pair, regression_square};
use cellwork::cellular::sample::{cellular_square_over, m_span};
use cellwork::cellular::{is_cellular_square, CellularStructure};
use cellwork::harness::{Sampler, Verdict};
use cellwork::independence::{
    amalgamate, build_independent_sequence, check_merge, compare_notions, is_independent, probe_merge, search_groups,
    unify_amalgams, uniqueness_probe, verify_independent_sequence, IndependenceNotion, MergeOutcome,
};
use common::{big, iso_type};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn structures() -> Vec<CellularStructure> {
    vec![
        CellularStructure::torsion_free(),
        CellularStructure::perp_of(vec![AbGroup::cyclic(2)]),
        CellularStructure::all_groups(),
    ]
}

#[test]
fn amalgams_are_cellular_and_unify() {
    let caps = Caps::default();
    for cs in structures() {
        let notion = IndependenceNotion::CellularSquares(cs.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..300 {
            let span = m_span(&mut rng, &cs, caps).unwrap();
            let am = amalgamate(&span, &cs).unwrap();
            assert!(is_cellular_square(&am, &cs).unwrap().is_cellular);
            let sq1 = cellular_square_over(&mut rng, &span, &cs, caps).unwrap();
            let sq2 = cellular_square_over(&mut rng, &span, &cs, caps).unwrap();
            let u = unify_amalgams(&sq1, &sq2, &cs).unwrap();
            assert_eq!(check_merge(&notion, &sq1, &sq2, &u.d1, &u.d2).unwrap(), None, "{}", cs.name());
            // symmetry: the transposed square is cellular too
            assert!(is_independent(&notion, &sq1.transpose()).unwrap());
        }
    }
}

#[test]
fn independence_is_invariant_under_isomorphic_corners() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for cs in structures() {
        for kind in ["cellular", "indiscrete", "pullback"] {
            let notion = IndependenceNotion::from_name(kind, cs.clone()).unwrap();
            for _ in 0..60 {
                let sq = cellwork::cellular::sample::mixed_square(&mut rng, &cs, caps).unwrap();
                let iso = random_representation(&mut rng, sq.d());
                let moved = sq.extend(&iso).unwrap();
                assert_eq!(is_independent(&notion, &sq).unwrap(), is_independent(&notion, &moved).unwrap());
            }
        }
    }
}

/// Over `Z <- 0 -> Z`, merging the pushout square with the same square
/// followed by `Z^2 -> Z^2 + Z` gives `E = Z^3`.
#[test]
fn padded_pushout_merges_into_the_sum() {
    let cs = CellularStructure::torsion_free();
    let (po_sq, _) = indiscrete_pair();
    let p = po_sq.d().clone();
    let sum = direct_sum(&p, &AbGroup::free(1));
    let padded = po_sq.extend(&sum.inj_a).unwrap();
    let u = unify_amalgams(&po_sq, &padded, &cs).unwrap();
    assert_eq!(iso_type(&u.e), (3, vec![]));
    let notion = IndependenceNotion::CellularSquares(cs);
    assert_eq!(check_merge(&notion, &po_sq, &padded, &u.d1, &u.d2).unwrap(), None);
}

#[test]
fn regression_square_and_its_transpose() {
    let cs = CellularStructure::torsion_free();
    let sq = regression_square();
    for s in [sq.clone(), sq.transpose()] {
        let v = is_cellular_square(&s, &cs).unwrap();
        assert!(!v.is_cellular);
        assert!(v.mediating.is_mono());
        assert_eq!(iso_type(&cokernel(&v.mediating).0), (0, vec![2]));
    }
    assert!(cellwork::abgrp::is_pullback_square(&sq).unwrap());
    assert!(!is_independent(&IndependenceNotion::CellularSquares(cs.clone()), &sq).unwrap());
    assert!(is_independent(&IndependenceNotion::PullbackSquares(cs), &sq).unwrap());
}

#[test]
fn cellular_squares_never_escape_the_wider_notions() {
    let sampler = Sampler::default();
    for cs in structures() {
        let base = IndependenceNotion::CellularSquares(cs.clone());
        let wide = IndependenceNotion::Indiscrete(cs.clone());
        let r = compare_notions(&base, &wide, &sampler, 80).unwrap();
        assert_eq!(r.stat("failures/only-n1"), 0, "{}", cs.name());
        assert!(r.stat("agree") > 0);
    }
}

#[test]
fn a_square_merges_with_itself() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for cs in structures() {
        for kind in ["cellular", "indiscrete"] {
            let notion = IndependenceNotion::from_name(kind, cs.clone()).unwrap();
            let span = m_span(&mut rng, &cs, caps).unwrap();
            let sq = cellular_square_over(&mut rng, &span, &cs, caps).unwrap();
            match probe_merge(&notion, &sq, &sq, 1).unwrap() {
                MergeOutcome::Merged { d1, d2, .. } => {
                    assert_eq!(check_merge(&notion, &sq, &sq, &d1, &d2).unwrap(), None);
                }
                other => panic!("no merge of a square with itself: {other:?}"),
            }
        }
    }
}

/// Brute force over `E` with at most two generators and cocone maps
/// `d1: Z^2 -> E` with entries in `[-4, 4]`: agreeing with `d2 = d1 e_1`
/// on both legs forces `d1 e_1 = d1 e_2`, so `d1` is never injective.
#[test]
fn indiscrete_pair_has_no_injective_cocone() {
    let (po, collapsed) = indiscrete_pair();
    let z = AbGroup::free(1);
    let mut cocones = 0;
    for e in search_groups(2) {
        let n = e.n_gens();
        let mut entries = vec![-4i64; 2 * n];
        loop {
            if let Ok(d1) = Hom::from_i64(po.d(), &e, &entries) {
                let d2 = Hom::from_i64(&z, &e, &entries.iter().step_by(2).copied().collect::<Vec<_>>()).unwrap();
                let agree = |a: &Hom, b: &Hom| compose(&d1, a).unwrap().equals(&compose(&d2, b).unwrap()).unwrap();
                if agree(&po.v, &collapsed.v) && agree(&po.u, &collapsed.u) {
                    cocones += 1;
                    assert!(!d1.is_mono() || !d2.is_mono());
                    assert!(!d1.is_mono());
                }
            }
            // odometer over [-4, 4]^(2n)
            let mut k = 0;
            while k < entries.len() && entries[k] == 4 {
                entries[k] = -4;
                k += 1;
            }
            if k == entries.len() {
                break;
            }
            entries[k] += 1;
        }
    }
    assert!(cocones > 0);
}

#[test]
fn probe_certifies_the_indiscrete_pair() {
    let (po, collapsed) = indiscrete_pair();
    let notion = IndependenceNotion::Indiscrete(CellularStructure::torsion_free());
    let r = uniqueness_probe(&notion, &po, &collapsed, 3).unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert_eq!(r.stat("certified_no_merge"), 1);
    assert_eq!(r.stat("groups_searched"), 35);
    assert!(r.stat("merged") == 0);
}

#[test]
fn sequence_over_zero_to_z() {
    let notion = IndependenceNotion::CellularSquares(CellularStructure::torsion_free());
    let f = Hom::zero(&AbGroup::zero(), &AbGroup::free(1));
    let seq = build_independent_sequence(&f, 3, &notion).unwrap();
    let ranks: Vec<_> = seq.objects.iter().map(iso_type).collect();
    assert_eq!(ranks, vec![(1, vec![]), (2, vec![]), (3, vec![]), (4, vec![])]);
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        assert!(is_cellular_square(&seq.square(i, j).unwrap(), notion.structure()).unwrap().is_cellular);
    }
    assert_eq!(verify_independent_sequence(&seq, &notion).verdict, Verdict::AllPassed);
    // tampering with a transition is caught
    let mut bad = seq.clone();
    let g = bad.transitions[&(0, 1)].scale(&big(2));
    bad.transitions.insert((0, 1), g);
    assert_eq!(verify_independent_sequence(&bad, &notion).verdict, Verdict::CounterexamplesFound);
}

#[test]
fn merge_contract_rejects_bad_arrows() {
    let cs = CellularStructure::torsion_free();
    let notion = IndependenceNotion::CellularSquares(cs.clone());
    let span = Span::new(Hom::zero(&AbGroup::zero(), &AbGroup::free(1)), Hom::zero(&AbGroup::zero(), &AbGroup::free(1))).unwrap();
    let sq: Square = pushout(&span).square();
    let id = Hom::identity(sq.d());
    assert_eq!(check_merge(&notion, &sq, &sq, &id, &id).unwrap(), None);
    let twice = id.scale(&big(2));
    assert_eq!(check_merge(&notion, &sq, &sq, &twice, &twice).unwrap(), Some("merge-arrow-not-in-M"));
}
