//! Cantor normal forms and the deg-lex order on index sequences.
//!
//! $ cargo run --example ordinals

use lim1::ordinal::{DegLexIndex, OrdinalCNF};

fn main() -> lim1::Result<()> {
    let a: OrdinalCNF = "w^2*3 + w + 4".parse()?;
    let b: OrdinalCNF = "w*5".parse()?;
    println!("a = {a}, b = {b}");
    println!("a + b = {}", a.add(&b));
    println!("b + a = {}", b.add(&a));
    println!("3 + w = {}", OrdinalCNF::finite(3).add(&OrdinalCNF::omega()));
    println!("a < b: {}, b is a limit: {}", a < b, b.is_limit());

    let mut idx = [
        DegLexIndex::from_finite(&[0, 5]),
        DegLexIndex::from_finite(&[7]),
        DegLexIndex::from_finite(&[1, 2, 3]),
        DegLexIndex::single(OrdinalCNF::omega()),
        DegLexIndex::from_finite(&[0, 1]),
    ];
    idx.sort();
    let shown: Vec<String> = idx.iter().map(ToString::to_string).collect();
    println!("deg-lex order: {}", shown.join(" < "));
    Ok(())
}
