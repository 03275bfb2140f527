use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::group::{group_from_presentation, Element, FgAbGroup};
use super::matrix::IntMatrix;
use super::normal_form::integer_kernel;
use super::subgroup::Subgroup;
use crate::{Error, Result};

/// A homomorphism between canonical groups. Column `j` of the matrix is the
/// (reduced) image of domain generator `j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MapJson", into = "MapJson")]
pub struct GroupMap {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntMatrix,
}

impl TryFrom<MapJson> for GroupMap {
    type Error = Error;
    fn try_from(m: MapJson) -> Result<Self> {
        let matrix = m
            .matrix
            .reshaped(m.codomain.num_generators(), m.domain.num_generators())?;
        GroupMap::new(m.domain, m.codomain, matrix)
    }
}

impl From<GroupMap> for MapJson {
    fn from(m: GroupMap) -> Self {
        MapJson {
            domain: m.domain,
            codomain: m.codomain,
            matrix: m.matrix,
        }
    }
}

impl GroupMap {
    /// Checks dimensions and well-definedness, then reduces the entries.
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        let (n, m) = (domain.num_generators(), codomain.num_generators());
        if matrix.rows() != m || matrix.cols() != n {
            return Err(Error::Dimension(format!(
                "map {domain} -> {codomain} needs a {m}x{n} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let mut matrix = matrix;
        for j in 0..n {
            let mut col = matrix.column(j);
            if let Some(d) = domain.generator_order(j) {
                let killed = codomain.scale(d, &col);
                if !codomain.is_zero_element(&killed) {
                    return Err(Error::IllDefinedMap(format!(
                        "generator {j} has order {d} in {domain} but its image does not"
                    )));
                }
            }
            codomain.reduce(&mut col);
            for (i, x) in col.into_iter().enumerate() {
                matrix[(i, j)] = x;
            }
        }
        Ok(GroupMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(group: &FgAbGroup) -> Self {
        Self::new(
            group.clone(),
            group.clone(),
            IntMatrix::identity(group.num_generators()),
        )
        .expect("identity is well defined")
    }

    pub fn zero(domain: &FgAbGroup, codomain: &FgAbGroup) -> Self {
        GroupMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.num_generators(), domain.num_generators()),
        }
    }

    /// The endomorphism `a -> m a`.
    pub fn multiplication(group: &FgAbGroup, m: &BigInt) -> Self {
        Self::new(
            group.clone(),
            group.clone(),
            IntMatrix::identity(group.num_generators()).scale(m),
        )
        .expect("multiplication is well defined")
    }

    /// Builds a map from the images of the domain generators.
    pub fn from_images(domain: &FgAbGroup, codomain: &FgAbGroup, images: &[Element]) -> Result<Self> {
        if images.len() != domain.num_generators() {
            return Err(Error::Dimension(format!(
                "{} generator images given for {domain}",
                images.len()
            )));
        }
        for x in images {
            codomain.check_element(x)?;
        }
        Self::new(
            domain.clone(),
            codomain.clone(),
            IntMatrix::from_columns(codomain.num_generators(), images),
        )
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn apply(&self, x: &[BigInt]) -> Element {
        self.codomain.reduced(self.matrix.mul_vec(x))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &GroupMap) -> Result<GroupMap> {
        if inner.codomain != self.domain {
            return Err(Error::Dimension(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, inner.domain, inner.codomain
            )));
        }
        Self::new(
            inner.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&inner.matrix),
        )
    }

    pub fn add(&self, other: &GroupMap) -> Result<GroupMap> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::Dimension("adding maps with different signatures".into()));
        }
        Self::new(
            self.domain.clone(),
            self.codomain.clone(),
            self.matrix.add(&other.matrix),
        )
    }

    pub fn scale(&self, k: &BigInt) -> GroupMap {
        Self::new(self.domain.clone(), self.codomain.clone(), self.matrix.scale(k))
            .expect("multiples of a well-defined map are well defined")
    }

    pub fn neg(&self) -> GroupMap {
        self.scale(&BigInt::from(-1))
    }

    /// If `self` is `m` times the identity for some integer `m`, returns `m`.
    ///
    /// On a finite group `m` is only determined modulo the exponent; the
    /// smallest non-negative representative is returned.
    pub fn as_multiplication(&self) -> Option<BigInt> {
        if !self.is_endomorphism() {
            return None;
        }
        let g = &self.domain;
        if g.is_trivial() {
            return Some(BigInt::zero());
        }
        let m = if g.free_rank() > 0 {
            let k = g.torsion_rank();
            self.matrix[(k, k)].clone()
        } else {
            let top = g.torsion_rank() - 1;
            self.matrix[(top, top)].mod_floor(g.generator_order(top).unwrap())
        };
        (*self == Self::multiplication(g, &m)).then_some(m)
    }

    pub fn kernel(&self) -> Subgroup {
        kernel(self)
    }

    pub fn image(&self) -> Subgroup {
        image(self)
    }

    /// Image of a subgroup of the domain.
    pub fn image_of(&self, sub: &Subgroup) -> Result<Subgroup> {
        if sub.ambient() != &self.domain {
            return Err(Error::AmbientMismatch);
        }
        Ok(Subgroup::new(
            &self.codomain,
            sub.generators().iter().map(|g| self.apply(g)).collect(),
        ))
    }

    /// Preimage of a subgroup of the codomain.
    pub fn preimage_of(&self, sub: &Subgroup) -> Result<Subgroup> {
        if sub.ambient() != &self.codomain {
            return Err(Error::AmbientMismatch);
        }
        // x with M x in the preimage lattice of `sub`: kernel of [M | -B^T]
        let basis = sub.lattice().basis().transpose();
        let stacked = self.matrix.hstack(&basis.scale(&BigInt::from(-1)));
        let n = self.domain.num_generators();
        let gens = integer_kernel(&stacked).into_iter().map(|z| z[..n].to_vec()).collect();
        Ok(Subgroup::new(&self.domain, gens))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupMap({} -> {}, {:?})",
            self.domain,
            self.codomain,
            self.matrix.to_rows()
        )
    }
}

/// Kernel of `h`, a subgroup of its domain.
pub fn kernel(h: &GroupMap) -> Subgroup {
    // x with M x in the relation lattice of the codomain: kernel of [M | D]
    let cod = h.codomain();
    let k = cod.torsion_rank();
    let mut torsion = IntMatrix::zeros(cod.num_generators(), k);
    for (i, d) in cod.invariant_factors().iter().enumerate() {
        torsion[(i, i)] = d.clone();
    }
    let stacked = h.matrix().hstack(&torsion);
    let n = h.domain().num_generators();
    let gens = integer_kernel(&stacked).into_iter().map(|z| z[..n].to_vec()).collect();
    Subgroup::new(h.domain(), gens)
}

/// Image of `h`, a subgroup of its codomain.
pub fn image(h: &GroupMap) -> Subgroup {
    let gens = (0..h.domain().num_generators()).map(|j| h.matrix().column(j)).collect();
    Subgroup::new(h.codomain(), gens)
}

/// Quotient of a group by a subgroup, with projection and a set-theoretic section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FgAbGroup,
    pub projection: GroupMap,
    lift: IntMatrix,
}

impl Quotient {
    pub fn of(sub: &Subgroup) -> Quotient {
        let ambient = sub.ambient();
        let n = ambient.num_generators();
        let gens: Vec<Element> = sub.generators().to_vec();
        let gen_rows = if gens.is_empty() {
            IntMatrix::zeros(0, n)
        } else {
            IntMatrix::from_rows(n, gens).expect("generators match the ambient")
        };
        let rels = ambient.relation_matrix().vstack(&gen_rows);
        let pres = group_from_presentation(n, &rels).expect("dimensions agree");
        let projection = GroupMap::new(ambient.clone(), pres.group.clone(), pres.to_canonical.clone())
            .expect("projection onto a quotient is well defined");
        Quotient {
            group: pres.group,
            projection,
            lift: pres.from_canonical,
        }
    }

    /// A preimage in the ambient group of a quotient element.
    pub fn lift(&self, y: &[BigInt]) -> Element {
        self.projection.domain().reduced(self.lift.mul_vec(y))
    }

    /// The map `Q -> Q'` induced by `f` where `f` carries the subgroup of
    /// `self` into that of `target`.
    pub fn induced(&self, f: &GroupMap, target: &Quotient) -> Result<GroupMap> {
        let images: Vec<Element> = (0..self.group.num_generators())
            .map(|j| target.projection.apply(&f.apply(&self.lift(&self.group.generator(j)))))
            .collect();
        GroupMap::from_images(&self.group, &target.group, &images)
    }
}

/// Cokernel of `h` with its projection.
pub fn cokernel(h: &GroupMap) -> Quotient {
    Quotient::of(&image(h))
}
