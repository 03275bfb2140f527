//! Groups in invariant-factor form, maps, kernels, cokernels and subgroups.
//!
//! $ cargo run --example abelian_groups

use num_bigint::BigInt;

use lim1::abelian::{cokernel, group_from_presentation, kernel, FgAbGroup, GroupMap, IntMatrix, Quotient, Subgroup};

fn main() -> lim1::Result<()> {
    let g: FgAbGroup = "Z/4 + Z/6 + Z".parse()?;
    println!("Z/4 + Z/6 + Z = {g}");

    // < x, y | 2x + 4y = 0, 6y = 0 >
    let p = group_from_presentation(2, &IntMatrix::from_i64(&[&[2, 4], &[0, 6]]))?;
    println!("<x, y | 2x + 4y, 6y> = {}", p.group);

    let z12 = FgAbGroup::cyclic(12);
    let times4 = GroupMap::multiplication(&z12, &BigInt::from(4));
    println!(
        "x4 on Z/12: kernel {}, image {}, cokernel {}",
        kernel(&times4).to_group(),
        times4.image().to_group(),
        cokernel(&times4).group
    );

    let evens = Subgroup::multiples(&g, &BigInt::from(2));
    println!("2G = {}, G/2G = {}", evens.to_group(), Quotient::of(&evens).group);
    Ok(())
}
