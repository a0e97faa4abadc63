//! Smith normal form with unimodular transforms over Z.
//!
//!     cargo run --example smith_normal_form

use curvelat::homology::{smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    let factors: Vec<String> = snf.invariant_factors().iter().map(|f| f.to_string()).collect();
    println!("invariant factors: {}", factors.join(", "));
    println!("rank: {}", m.rank());
    println!("u m v = d: {}", snf.u.mul(&m).mul(&snf.v) == snf.d);
}
