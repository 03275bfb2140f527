//! Test-side oracles. They read only raw data (matrices, invariant factors)
//! and recompute everything by brute force, never through the lattice code
//! under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use lim1::abelian::{FgAbGroup, GroupMap, IntMatrix};
use lim1::ordinal::DegLexIndex;
use lim1::tower::Tower;
use lim1::walker::WalkerElement;

pub type Vector = Vec<i64>;

/// Determinant by fraction-free elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols(), "square matrix");
    let mut a = m.to_rows();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return sign;
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all `k x k` minors; equals `d_1 ... d_k` for the Smith diagonal.
pub fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(m.rows(), k) {
        for cols in subsets(m.cols(), k) {
            g = g.gcd(&det(&m.select(&rows, &cols)));
        }
    }
    g
}

/// Cyclic orders of the torsion generators; panics on infinite groups.
pub fn orders(g: &FgAbGroup) -> Vec<i64> {
    assert_eq!(g.free_rank(), 0, "finite group expected");
    g.invariant_factors()
        .iter()
        .map(|d| d.to_i64().expect("small"))
        .collect()
}

/// Every element, by mixed radix over the invariant factors.
pub fn elements(g: &FgAbGroup) -> Vec<Vector> {
    let mut out: Vec<Vector> = vec![Vec::new()];
    for d in orders(g) {
        out = out
            .into_iter()
            .flat_map(|x| {
                (0..d).map(move |c| {
                    let mut y = x.clone();
                    y.push(c);
                    y
                })
            })
            .collect();
    }
    out
}

/// `f(x)` by the raw matrix, reduced into the codomain's digit ranges.
pub fn apply(f: &GroupMap, x: &[i64]) -> Vector {
    let m = f.matrix();
    let ords = orders(f.codomain());
    (0..m.rows())
        .map(|i| {
            let v: i64 = (0..m.cols()).map(|j| m[(i, j)].to_i64().expect("small") * x[j]).sum();
            v.rem_euclid(ords[i])
        })
        .collect()
}

pub fn is_zero(x: &[i64]) -> bool {
    x.iter().all(|c| *c == 0)
}

fn killed(ords: &[Vec<i64>], x: &[Vector], d: i64) -> bool {
    x.iter()
        .zip(ords)
        .all(|(v, o)| v.iter().zip(o).all(|(c, n)| (c * d).rem_euclid(*n) == 0))
}

fn signature_of(ords: &[Vec<i64>], items: &[Vec<Vector>]) -> Vec<(u64, usize)> {
    let n = items.len() as i64;
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| (d as u64, items.iter().filter(|x| killed(ords, x, d)).count()))
        .collect()
}

/// `d -> #{x : d x = 0}` over divisors of `|g|`. Determines `g` up to isomorphism.
pub fn signature(g: &FgAbGroup) -> Vec<(u64, usize)> {
    let ords = vec![orders(g)];
    let items: Vec<Vec<Vector>> = elements(g).into_iter().map(|x| vec![x]).collect();
    signature_of(&ords, &items)
}

pub fn order(g: &FgAbGroup) -> usize {
    orders(g).iter().product::<i64>() as usize
}

/// Compatible tuples over levels `0..=k` whose top entry lifts `depth` more levels.
pub fn threads(s: &Tower, k: usize, depth: usize) -> Vec<Vec<Vector>> {
    let mut tops: BTreeSet<Vector> = elements(s.level(k + depth)).into_iter().collect();
    for j in (k..k + depth).rev() {
        tops = tops.iter().map(|x| apply(s.map(j), x)).collect();
    }
    tops.into_iter()
        .map(|top| {
            let mut t = vec![top];
            for j in (0..k).rev() {
                let below = apply(s.map(j), t.last().expect("nonempty"));
                t.push(below);
            }
            t.reverse();
            t
        })
        .collect()
}

/// Signature of the thread set, comparable with [`signature`] of the limit.
pub fn thread_signature(s: &Tower, k: usize, depth: usize) -> Vec<(u64, usize)> {
    let ords: Vec<Vec<i64>> = (0..=k).map(|i| orders(s.level(i))).collect();
    signature_of(&ords, &threads(s, k, depth))
}

/// `|im(S_{i+n} -> S_i)|` by pushing every element down.
pub fn image_order(s: &Tower, i: usize, n: usize) -> usize {
    let mut set: BTreeSet<Vector> = elements(s.level(i + n)).into_iter().collect();
    for j in (i..i + n).rev() {
        set = set.iter().map(|x| apply(s.map(j), x)).collect();
    }
    set.len()
}

/// `|Hom(A, B)|` for finite `B`: a product over the cyclic factors of `A`.
pub fn hom_count(a: &FgAbGroup, b: &FgAbGroup) -> usize {
    let els = elements(b);
    let ob = orders(b);
    let killed_by = |d: i64| {
        els.iter()
            .filter(|x| x.iter().zip(&ob).all(|(c, n)| (c * d).rem_euclid(*n) == 0))
            .count()
    };
    let torsion: usize = a
        .invariant_factors()
        .iter()
        .map(|d| killed_by(d.to_i64().expect("small")))
        .product();
    torsion * els.len().pow(a.free_rank() as u32)
}

/// Normal form by repeatedly carrying the smallest out-of-range coefficient.
/// Deliberately the opposite order from the library's descending pass.
pub fn naive_normal_form(x: &WalkerElement) -> BTreeMap<DegLexIndex, BigInt> {
    let p = BigInt::from(x.context().p());
    let mut c: BTreeMap<DegLexIndex, BigInt> = x.support().clone();
    loop {
        c.retain(|_, v| !v.is_zero());
        let Some(idx) = c
            .iter()
            .find(|(_, v)| v.is_negative() || **v >= p)
            .map(|(k, _)| k.clone())
        else {
            return c;
        };
        let v = c.remove(&idx).expect("present");
        let (q, r) = v.div_mod_floor(&p);
        c.insert(idx.clone(), r);
        if let Some(t) = idx.tail() {
            *c.entry(t).or_insert_with(BigInt::zero) += q;
        }
    }
}
