use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::linalg::{column_basis, kernel_basis, IntMatrix};

use super::{AbGroup, Hom};

/// A generating set of `Hom(a, b)` under pointwise addition.
///
/// Built in canonical coordinates: a torsion generator of order `s` may go
/// to any element killed by `s`, a free generator anywhere. Generators that
/// are the zero map are omitted.
pub fn hom_group_generators(a: &AbGroup, b: &AbGroup) -> Vec<Hom> {
    let ca = a.canonical();
    let cb = b.canonical();
    let (da, db) = (ca.dim(), cb.dim());
    let mut out = Vec::new();
    for i in 0..da {
        let src_order = ca.order(i);
        for j in 0..db {
            let dst_order = cb.order(j);
            let coeff = match (src_order.is_zero(), dst_order.is_zero()) {
                // free source: anything
                (true, _) => BigInt::from(1),
                // torsion source into a free coordinate: only zero
                (false, true) => continue,
                (false, false) => {
                    let g = src_order.gcd(&dst_order);
                    let c = &dst_order / g;
                    if c == dst_order {
                        continue;
                    }
                    c
                }
            };
            let mut canon_map = IntMatrix::zeros(db, da);
            canon_map.set(j, i, coeff);
            let mat = cb.from_canon.mul(&canon_map).mul(&ca.to_canon);
            out.push(
                Hom::new_unchecked(a.clone(), b.clone(), mat).expect("canonical shapes agree"),
            );
        }
    }
    out
}

/// Generators of the lattice of all matrices `M` (`n_b x n_a`) with
/// `M rels(a) ⊆ span rels(b)`, as homs. Independent of the canonical route
/// above; the zero maps it contains are not filtered.
pub fn hom_lattice_generators(a: &AbGroup, b: &AbGroup) -> Vec<Hom> {
    let (na, nb) = (a.n_gens(), b.n_gens());
    let (ka, kb) = (a.n_rels(), b.n_rels());
    let ra = a.rels();
    let rb = b.rels();
    // Unknowns: M (row-major, nb*na) then X (row-major, kb*ka); constraint
    // rows indexed by (i, l) for M rels(a) - rels(b) X = 0.
    let mut c = IntMatrix::zeros(nb * ka, nb * na + kb * ka);
    for i in 0..nb {
        for l in 0..ka {
            let row = i * ka + l;
            for j in 0..na {
                c.set(row, i * na + j, ra.get(j, l).clone());
            }
            for p in 0..kb {
                c.set(row, nb * na + p * ka + l, -rb.get(i, p));
            }
        }
    }
    let gens = kernel_basis(&c).row_block(0..nb * na);
    let basis = column_basis(&gens);
    basis
        .columns()
        .map(|col| {
            let mat = IntMatrix::new(nb, na, col).expect("vectorized shape");
            Hom::new_unchecked(a.clone(), b.clone(), mat).expect("shapes")
        })
        .collect()
}

/// `sum_k coeffs[k] * gens[k]`, or the zero map when `gens` is empty.
pub fn combine(a: &AbGroup, b: &AbGroup, gens: &[Hom], coeffs: &[BigInt]) -> Hom {
    let mut mat = IntMatrix::zeros(b.n_gens(), a.n_gens());
    for (h, k) in gens.iter().zip(coeffs) {
        if !k.is_zero() {
            mat = mat.try_add(&h.mat().scale(k)).expect("shapes agree");
        }
    }
    Hom::new_unchecked(a.clone(), b.clone(), mat).expect("shapes agree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let z = AbGroup::free(1);
        let gens = hom_group_generators(&z, &z);
        assert_eq!(gens.len(), 1);
        assert!(gens[0].equals(&Hom::identity(&z)).unwrap());

        assert!(hom_group_generators(&AbGroup::cyclic(2), &z).is_empty());

        let z4 = AbGroup::cyclic(4);
        let z6 = AbGroup::cyclic(6);
        let gens = hom_group_generators(&z4, &z6);
        assert_eq!(gens.len(), 1);
        assert!(gens[0].equals(&Hom::from_i64(&z4, &z6, &[3]).unwrap()).unwrap());
        assert!(gens[0].is_well_defined());
    }

    #[test]
    fn lattice_route_examples() {
        let z4 = AbGroup::cyclic(4);
        let z6 = AbGroup::cyclic(6);
        let gens = hom_lattice_generators(&z4, &z6);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].mat().get(0, 0).magnitude().clone(), 3u32.into());
        assert!(hom_lattice_generators(&AbGroup::cyclic(2), &AbGroup::free(1)).is_empty());
    }

    #[test]
    fn enumerated_homs_between_small_cyclics() {
        // Every matrix in [0, n) that is well defined Z/m -> Z/n is a
        // combination of the generators.
        for m in 1..=6u64 {
            for n in 1..=6u64 {
                let a = AbGroup::cyclic(m);
                let b = AbGroup::cyclic(n);
                let gens = hom_group_generators(&a, &b);
                for x in 0..n as i64 {
                    let Ok(h) = Hom::from_i64(&a, &b, &[x]) else {
                        continue;
                    };
                    let hit = (0..n as i64).any(|k| {
                        let c = combine(&a, &b, &gens, &vec![BigInt::from(k); gens.len().min(1)]);
                        c.equals(&h).unwrap()
                    });
                    assert!(hit || h.is_zero(), "Z/{m} -> Z/{n}, 1 -> {x}");
                }
            }
        }
    }
}
