//! Local towers, null extensions and completion.
//!
//! $ cargo run --example locality

use num_bigint::BigInt;

use lim1::random;
use lim1::tower::{analyze, completion_status, is_local, Tower, DEFAULT_HORIZON};

fn main() -> lim1::Result<()> {
    let nilpotent = Tower::s_of_a(&"Z/27".parse()?, &BigInt::from(3));
    let identity = Tower::s_of_a(&"Z/4".parse()?, &BigInt::from(1));
    println!("S(Z/27, x3) local: {:?}", is_local(&nilpotent, DEFAULT_HORIZON));
    println!("S(Z/4, x1) local: {:?}", is_local(&identity, DEFAULT_HORIZON));

    let mut rng = random::rng(7);
    let ext = random::null_extension_of(&mut rng, &nilpotent, 8, 2);
    println!(
        "null extension {} local: {:?}",
        ext.tower,
        is_local(&ext.tower, DEFAULT_HORIZON)
    );

    let z = Tower::s_of_a(&"Z".parse()?, &BigInt::from(2));
    println!(
        "S(Z, x2) w-completion: {:?}",
        analyze(&z, DEFAULT_HORIZON).omega_complete
    );
    println!(
        "S(Z, x2) w*2-completion: {:?}",
        completion_status(&z, &"w*2".parse()?, DEFAULT_HORIZON)?
    );
    Ok(())
}
