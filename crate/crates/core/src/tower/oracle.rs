//! Brute-force cross-checks by element enumeration, for towers of finite groups.
//!
//! These never touch subgroup lattices: elements are pushed down the tower one
//! map at a time and compared as sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::abelian::{Element, FgAbGroup};
use crate::{Error, Result};

use super::Tower;

/// Compatible tuples `(x_0, ..., x_k)` with `x_i = f_i(x_{i+1})` whose top entry
/// lifts `depth` further levels. Once `depth` passes the stabilization stage
/// these are exactly the truncated threads of `lim S`.
#[derive(Clone, Debug)]
pub struct ThreadSet {
    pub levels: Vec<FgAbGroup>,
    pub threads: Vec<Vec<Element>>,
}

impl ThreadSet {
    pub fn len(&self) -> usize {
        self.threads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.threads.is_empty()
    }

    /// `d -> #{t : d t = 0}` for every divisor `d` of the thread-set size.
    pub fn signature(&self) -> Vec<(u64, usize)> {
        divisors(self.len() as u64)
            .into_iter()
            .map(|d| {
                let d_big = BigInt::from(d);
                let count = self
                    .threads
                    .iter()
                    .filter(|t| {
                        t.iter()
                            .zip(&self.levels)
                            .all(|(x, g)| g.is_zero_element(&g.scale(&d_big, x)))
                    })
                    .count();
                (d, count)
            })
            .collect()
    }
}

/// Elements of `S_k` that are images of `S_{k+depth}`, found by pushing every
/// element of `S_{k+depth}` down.
pub fn image_set(s: &Tower, k: usize, depth: usize, cap: u64) -> Result<BTreeSet<Element>> {
    let top = s.level(k + depth);
    if !top.is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let mut set: BTreeSet<Element> = top.enumerate_elements(cap)?.into_iter().collect();
    for j in (k..k + depth).rev() {
        set = set.iter().map(|x| s.map(j).apply(x)).collect();
    }
    Ok(set)
}

/// Threads over levels `0..=k` that lift `depth` more levels.
pub fn threads(s: &Tower, k: usize, depth: usize, cap: u64) -> Result<ThreadSet> {
    let tops = image_set(s, k, depth, cap)?;
    let threads = tops
        .into_iter()
        .map(|x| {
            let mut t = vec![x];
            for j in (0..k).rev() {
                let below = s.map(j).apply(t.last().expect("nonempty"));
                t.push(below);
            }
            t.reverse();
            t
        })
        .collect();
    Ok(ThreadSet {
        levels: (0..=k).map(|i| s.level(i).clone()).collect(),
        threads,
    })
}

/// `d -> #{x : d x = 0}` over divisors of `|g|`; determines a finite abelian group.
pub fn group_signature(g: &FgAbGroup, cap: u64) -> Result<Vec<(u64, usize)>> {
    let elements = g.enumerate_elements(cap)?;
    Ok(divisors(elements.len() as u64)
        .into_iter()
        .map(|d| {
            let d_big = BigInt::from(d);
            let count = elements
                .iter()
                .filter(|x| g.is_zero_element(&g.scale(&d_big, x)))
                .count();
            (d, count)
        })
        .collect())
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n.max(1)).filter(|d| n.max(1).is_multiple_of(*d)).collect()
}

/// Whether `lim` of a finite tower is trivial, by threads over `0..=k` lifting `depth` levels.
pub fn lim_is_trivial(s: &Tower, k: usize, depth: usize, cap: u64) -> Result<bool> {
    Ok(threads(s, k, depth, cap)?.len() == 1)
}

/// Order of a finite group.
pub fn order_of(g: &FgAbGroup) -> Result<BigInt> {
    g.order().ok_or(Error::InfiniteGroup)
}
