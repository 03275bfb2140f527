use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{bigint_json, IntMatrix};
use super::normal_form::smith_normal_form;
use crate::{Error, Result};

/// An element of a group, as coordinates over its canonical generators.
pub type Element = Vec<BigInt>;

/// Default cap on brute-force enumeration of group elements.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`, all `d_i >= 2`.
///
/// Generators are ordered torsion first, then free. Two groups are isomorphic
/// iff their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct FgAbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

/// JSON form: `{"free_rank": r, "invariant_factors": [...]}`, or a string such as `"Z/2 + Z^2"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GroupJson {
    Canonical {
        free_rank: usize,
        #[serde(with = "bigint_json::vec")]
        invariant_factors: Vec<BigInt>,
    },
    Text(String),
}

impl TryFrom<GroupJson> for FgAbGroup {
    type Error = Error;
    fn try_from(g: GroupJson) -> Result<Self> {
        match g {
            GroupJson::Canonical {
                free_rank,
                invariant_factors,
            } => FgAbGroup::new(free_rank, invariant_factors),
            GroupJson::Text(s) => s.parse(),
        }
    }
}

impl From<FgAbGroup> for GroupJson {
    fn from(g: FgAbGroup) -> Self {
        GroupJson::Canonical {
            free_rank: g.free_rank,
            invariant_factors: g.invariant_factors,
        }
    }
}

/// Parses sums of `Z`, `Z^r` and `Z/n` (in any order, `n` arbitrary), or `0`.
impl std::str::FromStr for FgAbGroup {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text.trim() == "0" {
            return Ok(FgAbGroup::trivial());
        }
        let mut orders: Vec<BigInt> = Vec::new();
        let mut offset = 0;
        for part in text.split('+') {
            let t = part.trim();
            let at = offset + part.len() - part.trim_start().len();
            offset += part.len() + 1;
            let bad = || Error::parse(text, at, format!("expected `Z`, `Z^r` or `Z/n`, found `{t}`"));
            let rest = t.strip_prefix('Z').ok_or_else(bad)?.trim_start();
            if rest.is_empty() {
                orders.push(BigInt::zero());
            } else if let Some(r) = rest.strip_prefix('^') {
                let r: usize = r.trim().parse().map_err(|_| bad())?;
                orders.extend(std::iter::repeat_n(BigInt::zero(), r));
            } else if let Some(n) = rest.strip_prefix('/') {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                if !n.is_positive() {
                    return Err(bad());
                }
                orders.push(n);
            } else {
                return Err(bad());
            }
        }
        let k = orders.len();
        let rels = IntMatrix::diagonal(k, k, &orders);
        Ok(group_from_presentation(k, &rels)?.group)
    }
}

impl FgAbGroup {
    /// Validates canonical form: every factor at least 2 and each divides the next.
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        for (i, d) in invariant_factors.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {d} at position {i} is below 2"
                )));
            }
        }
        for w in invariant_factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(FgAbGroup {
            free_rank,
            invariant_factors,
        })
    }

    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => FgAbGroup {
                free_rank: 0,
                invariant_factors: vec![BigInt::from(n)],
            },
        }
    }

    /// Canonical form of `Z/n_1 + ... + Z/n_k` for arbitrary orders (0 means `Z`).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let rels = IntMatrix::diagonal(
            orders.len(),
            orders.len(),
            &orders.iter().map(|&n| BigInt::from(n)).collect::<Vec<_>>(),
        );
        group_from_presentation(orders.len(), &rels)
            .expect("diagonal presentation is well formed")
            .group
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion_rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of canonical generators.
    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Order of generator `i`, or `None` for a free generator.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        self.invariant_factors.get(i)
    }

    pub fn is_trivial(&self) -> bool {
        self.num_generators() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Exponent of the torsion part (1 for a torsion-free group).
    pub fn torsion_exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// The relation lattice of the canonical presentation, as rows.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_generators();
        let k = self.torsion_rank();
        IntMatrix::diagonal(k, n, &self.invariant_factors)
    }

    pub fn zero(&self) -> Element {
        vec![BigInt::zero(); self.num_generators()]
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = BigInt::one();
        self.reduce(&mut e);
        e
    }

    /// Reduces torsion coordinates into `[0, d_i)`.
    pub fn reduce(&self, x: &mut [BigInt]) {
        for (xi, d) in x.iter_mut().zip(&self.invariant_factors) {
            *xi = xi.mod_floor(d);
        }
    }

    pub fn reduced(&self, mut x: Element) -> Element {
        self.reduce(&mut x);
        x
    }

    pub fn check_element(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.num_generators() {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, group {} has {} generators",
                x.len(),
                self,
                self.num_generators()
            )));
        }
        Ok(())
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Element {
        self.reduced(x.iter().zip(y).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self, x: &[BigInt]) -> Element {
        self.reduced(x.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt, x: &[BigInt]) -> Element {
        self.reduced(x.iter().map(|a| a * k).collect())
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        x.iter()
            .zip(self.invariant_factors.iter().map(Some).chain(std::iter::repeat(None)))
            .all(|(a, d)| match d {
                Some(d) => a.is_multiple_of(d),
                None => a.is_zero(),
            })
    }

    /// Order of an element, `None` if it has infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let k = self.torsion_rank();
        if x[k..].iter().any(|a| !a.is_zero()) {
            return None;
        }
        Some(
            x.iter()
                .zip(&self.invariant_factors)
                .fold(BigInt::one(), |acc, (a, d)| {
                    let o = d / a.gcd(d);
                    acc.lcm(&o)
                }),
        )
    }

    /// Every element exactly once, in mixed-radix order. Fails for infinite
    /// groups and when the order exceeds `cap`.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<Element>> {
        let order = self.order().ok_or(Error::InfiniteGroup)?;
        if order > BigInt::from(cap) {
            return Err(Error::CapExceeded {
                cap,
                needed: order.to_string(),
            });
        }
        let radices: Vec<u64> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_u64().expect("bounded by cap"))
            .collect();
        let total = order.to_u64().expect("bounded by cap");
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u64; radices.len()];
        for _ in 0..total {
            out.push(digits.iter().map(|&d| BigInt::from(d)).collect());
            for (d, r) in digits.iter_mut().zip(&radices) {
                *d += 1;
                if *d < *r {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }

    /// Elements of the torsion subgroup killed by `n`, as full coordinate vectors.
    pub fn elements_killed_by(&self, n: &BigInt, cap: u64) -> Result<Vec<Element>> {
        let steps: Vec<BigInt> = self.invariant_factors.iter().map(|d| d / n.gcd(d)).collect();
        let counts: Vec<BigInt> = self.invariant_factors.iter().zip(&steps).map(|(d, s)| d / s).collect();
        let total: BigInt = counts.iter().product();
        if total > BigInt::from(cap) {
            return Err(Error::CapExceeded {
                cap,
                needed: total.to_string(),
            });
        }
        let counts: Vec<u64> = counts.iter().map(|c| c.to_u64().unwrap()).collect();
        let mut out = Vec::new();
        let mut digits = vec![0u64; counts.len()];
        for _ in 0..total.to_u64().unwrap() {
            let mut e = self.zero();
            for (i, (&dg, s)) in digits.iter().zip(&steps).enumerate() {
                e[i] = s * BigInt::from(dg);
            }
            out.push(e);
            for (d, c) in digits.iter_mut().zip(&counts) {
                *d += 1;
                if *d < *c {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self})")
    }
}

/// Canonical form of `Z^n / rowspan(relations)` with the coordinate change.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FgAbGroup,
    /// `group.num_generators() x n`: old coordinates to canonical coordinates.
    pub to_canonical: IntMatrix,
    /// `n x group.num_generators()`: column `k` is a preimage of canonical generator `k`.
    pub from_canonical: IntMatrix,
}

impl Presentation {
    /// Canonical coordinates (reduced) of an old coordinate vector.
    pub fn transport(&self, x: &[BigInt]) -> Element {
        self.group.reduced(self.to_canonical.mul_vec(x))
    }

    /// A preimage in old coordinates of a canonical element.
    pub fn lift(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.from_canonical.mul_vec(y)
    }
}

/// Canonical form of the group with `num_generators` generators and the given
/// relation rows.
pub fn group_from_presentation(num_generators: usize, relations: &IntMatrix) -> Result<Presentation> {
    if relations.cols() != num_generators {
        return Err(Error::Dimension(format!(
            "relations have {} columns, expected {num_generators}",
            relations.cols()
        )));
    }
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let d_at = |j: usize| diag.get(j).cloned().unwrap_or_default();
    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for j in 0..num_generators {
        let d = d_at(j);
        if d.is_zero() {
            free.push(j);
        } else if !d.is_one() {
            torsion.push((j, d.abs()));
        }
    }
    let kept: Vec<usize> = torsion.iter().map(|(j, _)| *j).chain(free.iter().copied()).collect();
    let group = FgAbGroup::new(free.len(), torsion.into_iter().map(|(_, d)| d).collect())?;
    let all: Vec<usize> = (0..num_generators).collect();
    // y = V^T x on kept coordinates; generator k lifts to row k of V^{-1}
    let to_canonical = snf.v.select(&all, &kept).transpose();
    let from_canonical = snf.v_inv.select(&kept, &all).transpose();
    Ok(Presentation {
        group,
        to_canonical,
        from_canonical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn parse_text_form() {
        let g: FgAbGroup = "Z/2 + Z + Z/3".parse().unwrap();
        assert_eq!(g, FgAbGroup::new(1, vec![b(6)]).unwrap());
        assert_eq!(g.to_string().parse::<FgAbGroup>().unwrap(), g);
        assert_eq!("Z^2".parse::<FgAbGroup>().unwrap(), FgAbGroup::free(2));
        assert!("0".parse::<FgAbGroup>().unwrap().is_trivial());
        assert!("Z/1".parse::<FgAbGroup>().unwrap().is_trivial());
        assert!(matches!(
            "Z/2 + Q".parse::<FgAbGroup>(),
            Err(Error::Parse { column: 7, .. })
        ));
        let j: FgAbGroup = serde_json::from_str("\"Z/4\"").unwrap();
        assert_eq!(j, FgAbGroup::cyclic(4));
    }

    #[test]
    fn cyclic_presentation() {
        let p = group_from_presentation(1, &IntMatrix::from_i64(&[&[6]])).unwrap();
        assert_eq!(p.group, FgAbGroup::cyclic(6));
    }

    #[test]
    fn free_presentation() {
        let p = group_from_presentation(2, &IntMatrix::zeros(0, 2)).unwrap();
        assert_eq!(p.group, FgAbGroup::free(2));
        assert!(p.group.invariant_factors().is_empty());
    }

    #[test]
    fn two_by_three_is_six() {
        let p = group_from_presentation(2, &IntMatrix::from_i64(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(p.group, FgAbGroup::new(0, vec![b(6)]).unwrap());
        // the transported generators of Z/2 and Z/3 have orders 2 and 3
        let g1 = p.transport(&[b(1), b(0)]);
        let g2 = p.transport(&[b(0), b(1)]);
        assert_eq!(p.group.element_order(&g1), Some(b(2)));
        assert_eq!(p.group.element_order(&g2), Some(b(3)));
    }

    #[test]
    fn rejects_non_canonical() {
        assert!(FgAbGroup::new(0, vec![b(2), b(3)]).is_err());
        assert!(FgAbGroup::new(0, vec![b(1)]).is_err());
        assert!(FgAbGroup::new(1, vec![b(2), b(4)]).is_ok());
    }

    #[test]
    fn enumeration_counts() {
        let v4 = FgAbGroup::from_cyclic_orders(&[2, 2]);
        assert_eq!(v4.enumerate_elements(100).unwrap().len(), 4);
        assert_eq!(FgAbGroup::trivial().enumerate_elements(100).unwrap().len(), 1);
        let z6 = FgAbGroup::cyclic(6);
        let elems = z6.enumerate_elements(100).unwrap();
        assert_eq!(elems.len(), 6);
        for x in &elems {
            for y in &elems {
                assert!(elems.contains(&z6.add(x, y)));
            }
        }
        assert!(matches!(
            FgAbGroup::free(1).enumerate_elements(10),
            Err(Error::InfiniteGroup)
        ));
        assert!(matches!(
            FgAbGroup::cyclic(64).enumerate_elements(10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn killed_by() {
        let g = FgAbGroup::new(1, vec![b(2), b(4)]).unwrap();
        let two = g.elements_killed_by(&b(2), 100).unwrap();
        assert_eq!(two.len(), 4);
        assert!(two.iter().all(|x| g.is_zero_element(&g.scale(&b(2), x))));
    }

    #[test]
    fn json_shape() {
        let g = FgAbGroup::new(1, vec![b(2), b(4)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"free_rank":1,"invariant_factors":[2,4]}"#);
        let back: FgAbGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<FgAbGroup>(r#"{"free_rank":0,"invariant_factors":[4,2]}"#).is_err());
    }
}
