//! The constant towers S(A) = (A <- A <- ...) with every map multiplication by m.
//!
//! $ cargo run --example s_of_a

use num_bigint::BigInt;

use lim1::tower::{analyze, Lim1Status, Tower, DEFAULT_HORIZON};

fn main() -> lim1::Result<()> {
    for (group, m) in [
        ("Z/4", 2),
        ("Z/6", 2),
        ("Z/12", 2),
        ("Z", 3),
        ("Z + Z/4", 2),
        ("Z/5", 1),
    ] {
        let s = Tower::s_of_a(&group.parse()?, &BigInt::from(m));
        let r = analyze(&s, DEFAULT_HORIZON);
        let lim = r.lim.group().map_or("unknown".into(), ToString::to_string);
        let lim1 = match r.lim1 {
            Lim1Status::Zero => "0".to_string(),
            Lim1Status::NonZero { reason } => format!("nonzero ({reason})"),
            Lim1Status::Unknown { horizon } => format!("unknown after {horizon} stages"),
        };
        let length = r.length.exact().map_or("unknown".into(), ToString::to_string);
        println!(
            "S({group}, x{m}): ML {}, length {length}, lim {lim}, lim1 {lim1}",
            r.ml.kind()
        );
    }
    Ok(())
}
