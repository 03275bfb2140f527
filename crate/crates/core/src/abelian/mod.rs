//! Finitely generated abelian groups and their homomorphisms.
//!
//! Elements are integer coordinate vectors over the canonical generators of a
//! group, torsion coordinates reduced into `[0, d_i)`. All arithmetic is exact.

mod group;
mod map;
mod matrix;
mod normal_form;
mod subgroup;
mod sum;

pub use group::{group_from_presentation, Element, FgAbGroup, Presentation, DEFAULT_ENUMERATION_CAP};
pub use map::{cokernel, image, kernel, GroupMap, Quotient};
pub use matrix::IntMatrix;
pub use normal_form::{integer_kernel, smith_normal_form, HermiteBasis, SmithForm};
pub use subgroup::{subgroup_equal, Subgroup, SubgroupPresentation};
pub use sum::DirectSum;

pub(crate) use matrix::bigint_json;

/// The endomorphism `a -> m a` of `group`.
pub fn multiplication_map(group: &FgAbGroup, m: i64) -> GroupMap {
    GroupMap::multiplication(group, &num_bigint::BigInt::from(m))
}

/// All homomorphisms `a -> b`, for finite `a`. Fails if there are more than `cap`.
pub fn enumerate_homs(a: &FgAbGroup, b: &FgAbGroup, cap: u64) -> crate::Result<Vec<GroupMap>> {
    if !a.is_finite() {
        return Err(crate::Error::InfiniteGroup);
    }
    let choices = a
        .invariant_factors()
        .iter()
        .map(|d| b.elements_killed_by(d, cap))
        .collect::<crate::Result<Vec<_>>>()?;
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    if total > cap as u128 {
        return Err(crate::Error::CapExceeded {
            cap,
            needed: total.to_string(),
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; choices.len()];
    for _ in 0..total {
        let images: Vec<Element> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        out.push(GroupMap::from_images(a, b, &images)?);
        for (i, c) in idx.iter_mut().zip(&choices) {
            *i += 1;
            if *i < c.len() {
                break;
            }
            *i = 0;
        }
    }
    Ok(out)
}
