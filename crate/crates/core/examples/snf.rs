//! Smith normal form with its transforms, and the lattice helpers built on it.

use cellwork::linalg::{kernel_basis, smith_normal_form, solve, IntMatrix};
use num_bigint::BigInt;

fn show(name: &str, m: &IntMatrix) {
    println!("{name} =");
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{x:>4}")).collect();
        println!("  [{}]", row.join(""));
    }
}

fn main() {
    let m = IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
    let snf = smith_normal_form(&m);
    show("m", &m);
    show("s = u m v", &snf.s);
    show("u", &snf.u);
    show("v", &snf.v);
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
    println!("invariant factors {:?}, rank {}", snf.diagonal(), snf.rank());

    let a = IntMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
    show("kernel of [[1,2,3],[4,5,6]]", &kernel_basis(&a));
    let b = [BigInt::from(6), BigInt::from(15)];
    match solve(&a, &b).unwrap() {
        Some(x) => println!("solve a x = (6, 15): x = {x:?}"),
        None => println!("no integer solution"),
    }
    let two = IntMatrix::from_i64(1, 1, &[2]);
    println!("2 x = 3 over Z: {:?}", solve(&two, &[BigInt::from(3)]).unwrap());
}
