//! Normal forms and p-heights in a Walker group.
//!
//! $ cargo run --example walker

use lim1::walker::{parse_element, ulm_probe, WalkerContext};

fn main() -> lim1::Result<()> {
    let ctx = WalkerContext::new(2, "w*2".parse()?)?;
    for text in [
        "2*e[0, 1]",
        "3*e[0, 1]",
        "-e[1]",
        "e[w] + 2*e[3, w]",
        "4*e[0, 1, w + 1]",
    ] {
        let x = parse_element(&ctx, text)?.normalize();
        if x.is_zero() {
            println!("{text} = 0");
        } else {
            println!("{text} = {x}, height {}", x.height());
        }
    }
    let sample = ["0", "3", "w", "w + 2"].map(|b| b.parse().expect("ordinal"));
    let probe = ulm_probe(&ctx, &sample)?;
    for s in &probe.samples {
        println!("e[{}] has height {}", s.beta, s.height);
    }
    println!("heights exact: {}", probe.heights_exact());
    Ok(())
}
