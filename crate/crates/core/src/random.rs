//! Seeded generators for randomized checks. All randomness in the crate goes
//! through [`rng`], so a seed fixes every output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{Element, FgAbGroup, GroupMap, IntMatrix};
use crate::ordinal::{DegLexIndex, OrdinalCNF};
use crate::tower::{decompose, null_extension, NullExtension, TailSpec, Tower, DEFAULT_HORIZON};
use crate::walker::{WalkerContext, WalkerElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A finite group of order at most `max_order` (at least 1).
pub fn finite_group<R: Rng + ?Sized>(rng: &mut R, max_order: u64) -> FgAbGroup {
    let mut orders = Vec::new();
    let mut budget = max_order.max(1);
    while budget >= 2 && orders.len() < 3 {
        let n = rng.gen_range(1..=budget);
        if n == 1 {
            break;
        }
        orders.push(n);
        budget /= n;
    }
    FgAbGroup::from_cyclic_orders(&orders)
}

/// A group with free rank at most `max_rank` and small torsion.
pub fn mixed_group<R: Rng + ?Sized>(rng: &mut R, max_rank: usize, max_torsion: u64) -> FgAbGroup {
    let t = finite_group(rng, max_torsion);
    let r = rng.gen_range(0..=max_rank);
    FgAbGroup::new(r, t.invariant_factors().to_vec()).expect("canonical torsion with free part")
}

/// A random element of `b` killed by `d` (`d = 0` allows any element).
fn element_killed_by<R: Rng + ?Sized>(rng: &mut R, b: &FgAbGroup, d: &BigInt) -> Element {
    let mut x = b.zero();
    for (i, slot) in x.iter_mut().enumerate() {
        *slot = match b.generator_order(i) {
            Some(e) => {
                let g = if d.is_zero() { e.clone() } else { e.gcd(d) };
                let step = e / &g;
                step * rng.gen_range(0..g.to_u64().expect("small invariant factor"))
            }
            None if d.is_zero() => BigInt::from(rng.gen_range(-3..=3)),
            None => BigInt::from(0),
        };
    }
    b.reduced(x)
}

/// A random homomorphism, chosen image by image.
pub fn hom<R: Rng + ?Sized>(rng: &mut R, a: &FgAbGroup, b: &FgAbGroup) -> GroupMap {
    let images: Vec<Element> = (0..a.num_generators())
        .map(|j| {
            let d = a.generator_order(j).cloned().unwrap_or_else(|| BigInt::from(0));
            element_killed_by(rng, b, &d)
        })
        .collect();
    GroupMap::from_images(a, b, &images).expect("images respect the relations")
}

/// A tower of finite groups with orders at most `max_order` and window at most `max_window`.
pub fn finite_tower<R: Rng + ?Sized>(rng: &mut R, max_order: u64, max_window: usize) -> Tower {
    let w = rng.gen_range(0..=max_window);
    let prefix: Vec<FgAbGroup> = (0..w).map(|_| finite_group(rng, max_order)).collect();
    let maps = (1..w).map(|i| hom(rng, &prefix[i], &prefix[i - 1])).collect();
    let tail = if rng.gen_bool(0.15) {
        TailSpec::Zero
    } else {
        let group = finite_group(rng, max_order);
        let endo = hom(rng, &group, &group);
        TailSpec::ConstantEndo { group, endo }
    };
    let bridge = match (&tail, prefix.last()) {
        (TailSpec::ConstantEndo { group, .. }, Some(last)) => Some(hom(rng, group, last)),
        _ => None,
    };
    Tower::new(prefix, maps, tail, bridge).expect("random pieces chain correctly")
}

/// A tower with a finite prefix over a tail `S(A)` for a group with free part.
pub fn mixed_tower<R: Rng + ?Sized>(rng: &mut R) -> Tower {
    let group = mixed_group(rng, 2, 12);
    let m = BigInt::from(rng.gen_range(-3..=3));
    let w = rng.gen_range(0..=2);
    let prefix: Vec<FgAbGroup> = (0..w).map(|_| finite_group(rng, 16)).collect();
    let maps = (1..w).map(|i| hom(rng, &prefix[i], &prefix[i - 1])).collect();
    let bridge = prefix.last().map(|last| hom(rng, &group, last));
    let endo = GroupMap::multiplication(&group, &m);
    Tower::new(prefix, maps, TailSpec::ConstantEndo { group, endo }, bridge).expect("random pieces chain correctly")
}

/// A tower with all structure maps zero.
pub fn null_tower<R: Rng + ?Sized>(rng: &mut R, max_order: u64, max_window: usize) -> Tower {
    let w = rng.gen_range(0..=max_window);
    let prefix: Vec<FgAbGroup> = (0..w).map(|_| finite_group(rng, max_order)).collect();
    let maps = (1..w).map(|i| GroupMap::zero(&prefix[i], &prefix[i - 1])).collect();
    let group = finite_group(rng, max_order);
    let bridge = prefix.last().map(|last| GroupMap::zero(&group, last));
    let tail = TailSpec::ConstantEndo {
        endo: GroupMap::zero(&group, &group),
        group,
    };
    Tower::new(prefix, maps, tail, bridge).expect("zero maps chain correctly")
}

/// A local tower of finite groups: either a finite prefix with zero tail, or
/// the quotient of a random tower by its stable image.
pub fn local_tower<R: Rng + ?Sized>(rng: &mut R, max_order: u64, max_window: usize) -> Tower {
    let t = finite_tower(rng, max_order, max_window);
    if rng.gen_bool(0.5) {
        let w = t.window();
        let prefix: Vec<FgAbGroup> = (0..w).map(|i| t.level(i).clone()).collect();
        let maps = (0..w.saturating_sub(1)).map(|i| t.map(i).clone()).collect();
        Tower::new(prefix, maps, TailSpec::Zero, None).expect("truncation is a tower")
    } else {
        decompose(&t, DEFAULT_HORIZON)
            .expect("finite towers stabilize")
            .local_part
    }
}

/// `s` extended by a random null tower along random maps `psi`.
pub fn null_extension_of<R: Rng + ?Sized>(rng: &mut R, s: &Tower, max_order: u64, max_window: usize) -> NullExtension {
    let n = null_tower(rng, max_order, max_window);
    let k = s.window().max(n.window());
    let psi: Vec<GroupMap> = (0..=k).map(|i| hom(rng, s.level(i + 1), n.level(i))).collect();
    null_extension(s, &n, &psi).expect("psi has the required shapes")
}

/// An integer matrix with entries in `[-bound, bound]`.
pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
        .collect();
    IntMatrix::from_rows(cols, data).expect("rows have the stated width")
}

/// An ordinal below `bound` (which must be positive), biased to small terms.
pub fn ordinal_below<R: Rng + ?Sized>(rng: &mut R, bound: &OrdinalCNF) -> OrdinalCNF {
    assert!(!bound.is_zero(), "nothing lies below 0");
    if let Some(n) = bound.as_finite() {
        return OrdinalCNF::finite(rng.gen_range(0..n));
    }
    let max_exp = bound.degree();
    loop {
        let c = cnf_up_to(rng, &max_exp);
        if &c < bound {
            return c;
        }
    }
}

fn cnf_up_to<R: Rng + ?Sized>(rng: &mut R, max_exp: &OrdinalCNF) -> OrdinalCNF {
    let mut exps: Vec<OrdinalCNF> = (0..rng.gen_range(0..=3))
        .map(|_| ordinal_below(rng, &max_exp.succ()))
        .collect();
    exps.sort();
    exps.dedup();
    exps.reverse();
    let terms = exps.into_iter().map(|e| (e, rng.gen_range(1..=6))).collect();
    OrdinalCNF::from_terms(terms).expect("decreasing exponents")
}

/// An index of length at most `max_len` with entries below `alpha`.
pub fn index_below<R: Rng + ?Sized>(rng: &mut R, alpha: &OrdinalCNF, max_len: usize) -> DegLexIndex {
    let cap = alpha.as_finite().map_or(max_len, |n| max_len.min(n as usize)).max(1);
    let len = rng.gen_range(1..=cap);
    let mut entries: Vec<OrdinalCNF> = Vec::new();
    let mut attempts = 0;
    while entries.len() < len && attempts < 64 {
        let o = ordinal_below(rng, alpha);
        if !entries.contains(&o) {
            entries.push(o);
        }
        attempts += 1;
    }
    entries.sort();
    DegLexIndex::new(entries).expect("distinct sorted entries")
}

/// A raw element with up to `max_terms` terms and coefficients in `[-bound, bound]`.
pub fn raw_element<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &WalkerContext,
    max_terms: usize,
    max_len: usize,
    bound: i64,
) -> WalkerElement {
    let terms = (0..rng.gen_range(0..=max_terms))
        .map(|_| {
            (
                index_below(rng, ctx.alpha(), max_len),
                BigInt::from(rng.gen_range(-bound..=bound)),
            )
        })
        .collect();
    ctx.raw(terms).expect("indices are below alpha")
}

/// Picks one element of a nonempty slice.
pub fn choose<'a, T, R: Rng + ?Sized>(rng: &mut R, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("nonempty slice")
}
