use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{group_from_presentation, Element, FgAbGroup};
use super::map::GroupMap;
use super::matrix::IntMatrix;
use super::normal_form::HermiteBasis;
use crate::{Error, Result};

/// A subgroup given by generators, with the Hermite basis of its preimage
/// lattice in `Z^n` (which always contains the ambient relations).
#[derive(Clone)]
pub struct Subgroup {
    ambient: FgAbGroup,
    generators: Vec<Element>,
    lattice: HermiteBasis,
}

impl Subgroup {
    pub fn new(ambient: &FgAbGroup, generators: Vec<Element>) -> Self {
        let n = ambient.num_generators();
        let generators: Vec<Element> = generators
            .into_iter()
            .map(|g| {
                assert_eq!(g.len(), n, "generator dimension mismatch");
                ambient.reduced(g)
            })
            .filter(|g| !ambient.is_zero_element(g))
            .collect();
        let gen_rows = if generators.is_empty() {
            IntMatrix::zeros(0, n)
        } else {
            IntMatrix::from_rows(n, generators.clone()).expect("checked dimensions")
        };
        let lattice = HermiteBasis::new(&ambient.relation_matrix().vstack(&gen_rows));
        Subgroup {
            ambient: ambient.clone(),
            generators,
            lattice,
        }
    }

    pub fn whole(ambient: &FgAbGroup) -> Self {
        Self::new(
            ambient,
            (0..ambient.num_generators()).map(|i| ambient.generator(i)).collect(),
        )
    }

    pub fn trivial(ambient: &FgAbGroup) -> Self {
        Self::new(ambient, Vec::new())
    }

    /// `m A`
    pub fn multiples(ambient: &FgAbGroup, m: &BigInt) -> Self {
        Self::new(
            ambient,
            (0..ambient.num_generators())
                .map(|i| ambient.scale(m, &ambient.generator(i)))
                .collect(),
        )
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub(crate) fn lattice(&self) -> &HermiteBasis {
        &self.lattice
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.lattice.contains(x)
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(other.generators.iter().all(|g| self.contains(g)))
    }

    /// Set equality, compared through the canonical lattice bases.
    pub fn equals(&self, other: &Subgroup) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.lattice == other.lattice)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        let n = self.ambient.num_generators();
        self.lattice.rank() == n && self.lattice.pivot_product().is_one()
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Subgroup::new(&self.ambient, gens))
    }

    /// Order of the subgroup when the ambient group is finite.
    pub fn order(&self) -> Option<BigInt> {
        let total = self.ambient.order()?;
        Some(total / self.lattice.pivot_product())
    }

    /// Canonical form of the subgroup as an abstract group, with its embedding.
    pub fn presentation(&self) -> SubgroupPresentation {
        let basis = self.lattice.basis().clone();
        let m = basis.rows();
        // ambient relations expressed in the lattice basis
        let rel_rows: Vec<Vec<BigInt>> = (0..self.ambient.torsion_rank())
            .map(|i| {
                let mut r = self.ambient.zero();
                r[i] = self.ambient.invariant_factors()[i].clone();
                self.lattice.solve(&r).expect("relations lie in the lattice")
            })
            .collect();
        let rels = IntMatrix::from_rows(m, rel_rows).expect("solutions have lattice rank length");
        let pres = group_from_presentation(m, &rels).expect("dimensions agree");
        let images: Vec<Element> = (0..pres.group.num_generators())
            .map(|k| {
                let coeffs = pres.from_canonical.column(k);
                let v = basis.transpose().mul_vec(&coeffs);
                self.ambient.reduced(v)
            })
            .collect();
        let embedding =
            GroupMap::from_images(&pres.group, &self.ambient, &images).expect("subgroup embedding is well defined");
        SubgroupPresentation {
            group: pres.group,
            embedding,
            to_canonical: pres.to_canonical,
            lattice: self.lattice.clone(),
        }
    }

    pub fn to_group(&self) -> FgAbGroup {
        self.presentation().group
    }

    /// Subgroup of elements of order prime to `m`, i.e. the intersection of all `m^k A`
    /// restricted to torsion (valid for `|m| >= 2`).
    pub fn prime_to_part(&self, m: &BigInt) -> Subgroup {
        let pres = self.presentation();
        let g = &pres.group;
        let gens = g
            .invariant_factors()
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut x = g.zero();
                x[i] = d / coprime_part(d, m);
                pres.embedding.apply(&x)
            })
            .collect();
        Subgroup::new(&self.ambient, gens)
    }
}

/// Largest divisor of `d` sharing no prime factor with `m`.
pub(crate) fn coprime_part(d: &BigInt, m: &BigInt) -> BigInt {
    let mut d = d.clone();
    loop {
        let g = d.gcd(m);
        if g.is_one() || g.is_zero() {
            return d;
        }
        d /= g;
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({} in {})", self.to_group(), self.ambient)
    }
}

/// A subgroup viewed as an abstract canonical group.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub group: FgAbGroup,
    pub embedding: GroupMap,
    to_canonical: IntMatrix,
    lattice: HermiteBasis,
}

impl SubgroupPresentation {
    /// Canonical coordinates of an ambient element lying in the subgroup.
    pub fn pull_back(&self, x: &[BigInt]) -> Result<Element> {
        let c = self.lattice.solve(x).ok_or(Error::NotInSubgroup)?;
        Ok(self.group.reduced(self.to_canonical.mul_vec(&c)))
    }

    /// Restriction of `f` to a map between subgroup presentations.
    pub fn restrict(&self, f: &GroupMap, target: &SubgroupPresentation) -> Result<GroupMap> {
        let images = (0..self.group.num_generators())
            .map(|j| target.pull_back(&f.apply(&self.embedding.apply(&self.group.generator(j)))))
            .collect::<Result<Vec<_>>>()?;
        GroupMap::from_images(&self.group, &target.group, &images)
    }
}

/// Whether two subgroups of the same ambient group coincide.
pub fn subgroup_equal(h: &Subgroup, k: &Subgroup) -> Result<bool> {
    h.equals(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn two_and_four_in_z6() {
        let z6 = FgAbGroup::cyclic(6);
        let h = Subgroup::new(&z6, vec![vec![b(2)]]);
        let k = Subgroup::new(&z6, vec![vec![b(4)]]);
        assert!(subgroup_equal(&h, &k).unwrap());
        assert_eq!(h.order(), Some(b(3)));
    }

    #[test]
    fn p_and_p_squared_in_z() {
        let z = FgAbGroup::free(1);
        let h = Subgroup::multiples(&z, &b(3));
        let k = Subgroup::multiples(&z, &b(9));
        assert!(!subgroup_equal(&h, &k).unwrap());
        assert!(h.contains_subgroup(&k).unwrap());
        assert!(subgroup_equal(&h, &h).unwrap());
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subgroup::trivial(&FgAbGroup::cyclic(2));
        let c = Subgroup::trivial(&FgAbGroup::cyclic(3));
        assert!(matches!(subgroup_equal(&a, &c), Err(Error::AmbientMismatch)));
    }

    #[test]
    fn presentation_round_trip() {
        let g = FgAbGroup::new(1, vec![b(2), b(12)]).unwrap();
        let h = Subgroup::new(&g, vec![vec![b(1), b(4), b(6)], vec![b(0), b(6), b(0)]]);
        let pres = h.presentation();
        for j in 0..pres.group.num_generators() {
            let gen = pres.group.generator(j);
            let x = pres.embedding.apply(&gen);
            assert!(h.contains(&x));
            assert_eq!(pres.pull_back(&x).unwrap(), gen);
        }
        assert!(pres.embedding.is_injective());
        assert!(pres.embedding.image().equals(&h).unwrap());
    }

    #[test]
    fn prime_to_part_of_z6() {
        let z6 = FgAbGroup::cyclic(6);
        let t = Subgroup::whole(&z6).prime_to_part(&b(2));
        assert_eq!(t.to_group(), FgAbGroup::cyclic(3));
        let g = FgAbGroup::new(1, vec![b(4)]).unwrap();
        assert!(Subgroup::whole(&g).prime_to_part(&b(2)).is_trivial());
    }
}
