//! Splitting a tower as E >-> S ->> L with E epimorphic and lim L = 0.
//!
//! $ cargo run --example decomposition

use num_bigint::BigInt;

use lim1::tower::{decompose, length, Tower, DEFAULT_HORIZON};

fn main() -> lim1::Result<()> {
    let towers = [
        Tower::s_of_a(&"Z/6".parse()?, &BigInt::from(2)),
        Tower::s_of_a(&"Z/4 + Z/9".parse()?, &BigInt::from(3)),
        Tower::from_json(include_str!("../data/prefixed.json"))?,
    ];
    for s in &towers {
        let d = decompose(s, DEFAULT_HORIZON)?;
        let len = length(s, DEFAULT_HORIZON);
        println!("S = {s}");
        println!("  length {}", len.exact().map_or("unknown".into(), ToString::to_string));
        println!("  E = {} (epimorphic: {})", d.epimorphic, d.epimorphic.is_epimorphic());
        println!("  L = {} (null: {})", d.local_part, d.local_part.is_null());
    }
    Ok(())
}
