//! Smith normal form with its unimodular certificate.
//!
//! $ cargo run --example snf

use lim1::abelian::{smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let f = smith_normal_form(&m);
    println!("M =\n{m}");
    println!("D =\n{}", f.d);
    println!("U =\n{}", f.u);
    println!("V =\n{}", f.v);
    let diagonal: Vec<String> = f.diagonal().iter().map(ToString::to_string).collect();
    println!("invariant factors: {}", diagonal.join(", "));
    assert_eq!(f.u.mul(&m).mul(&f.v), f.d);
    println!("U*M*V = D holds");
}
