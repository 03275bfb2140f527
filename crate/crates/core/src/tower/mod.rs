//! Inverse sequences `S_0 <- S_1 <- S_2 <- ...` of finitely generated abelian
//! groups, and their transfinite image filtrations.
//!
//! A [`Tower`] is a finite prefix `S_0, ..., S_{W-1}` followed by a constant
//! tail: from level `W` on every group is the same `G` and every map is the
//! same endomorphism `g` (the zero tail is `G = 0`). Every operation in this
//! module is exact on that class; where a question cannot be settled (a tail
//! endomorphism that is neither eventually stable nor multiplication by an
//! integer on a group with free part) the answer carries the iteration
//! horizon that was exhausted instead of a guess.
//!
//! ```
//! use lim1::abelian::FgAbGroup;
//! use lim1::tower::{analyze, Tower, DEFAULT_HORIZON};
//! use num_bigint::BigInt;
//!
//! let s = Tower::s_of_a(&FgAbGroup::cyclic(6), &BigInt::from(2));
//! let report = analyze(&s, DEFAULT_HORIZON);
//! assert_eq!(report.lim.group(), Some(&FgAbGroup::cyclic(3)));
//! ```

mod analysis;
mod construct;
mod filtration;
mod json;
mod morphism;
pub mod oracle;

use std::fmt;

use num_bigint::BigInt;

use crate::abelian::{FgAbGroup, GroupMap, Quotient, Subgroup};
use crate::{Error, Result};

pub use analysis::{
    analyze, completion_status, decompose, is_local, lim_lim1, omega_completion_status, AnalysisReport, Completeness,
    Decomposition, Lim1Status, LimValue, Verdict,
};
pub use construct::{
    a_n_tower, adjunction_check, enumerate_tower_morphisms, iota, limit_of_towers, null_extension, one_minus_f_window,
    shift, AdjunctionReport, NullExtension, WindowOperator,
};
pub use filtration::{
    image_tower, iterate_image, length, ml_check, transfinite_image, Exactness, FiltrationStage, ImageTower, Length,
    MlStatus,
};
pub use morphism::TowerMorphism;

/// Stages iterated before an undecided chain is reported as unknown.
pub const DEFAULT_HORIZON: usize = 64;

/// The repeating part of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailSpec {
    ConstantEndo { group: FgAbGroup, endo: GroupMap },
    Zero,
}

/// An inverse sequence with a finite prefix and a constant tail.
///
/// Stored as `W + 1` groups, the last being the tail group, with `maps[i]:
/// S_{i+1} -> S_i` for `i < W` and the tail endomorphism.
#[derive(Clone, PartialEq, Eq)]
pub struct Tower {
    levels: Vec<FgAbGroup>,
    maps: Vec<GroupMap>,
    endo: GroupMap,
}

impl Tower {
    /// Builds from levels `S_0..S_W` (the last one repeating), `maps[i]: S_{i+1} -> S_i`
    /// and the endomorphism of `S_W`.
    pub fn from_levels(levels: Vec<FgAbGroup>, maps: Vec<GroupMap>, endo: GroupMap) -> Result<Self> {
        if levels.len() != maps.len() + 1 {
            return Err(Error::Shape(format!(
                "{} levels need {} maps, got {}",
                levels.len(),
                levels.len() - 1,
                maps.len()
            )));
        }
        for (i, f) in maps.iter().enumerate() {
            if f.domain() != &levels[i + 1] || f.codomain() != &levels[i] {
                return Err(Error::Shape(format!(
                    "map {i} goes {} -> {}, expected {} -> {}",
                    f.domain(),
                    f.codomain(),
                    levels[i + 1],
                    levels[i]
                )));
            }
        }
        let tail = levels.last().expect("at least one level");
        if endo.domain() != tail || endo.codomain() != tail {
            return Err(Error::Shape(format!("tail endomorphism must act on {tail}")));
        }
        Ok(Tower { levels, maps, endo })
    }

    /// Builds from the prefix `S_0..S_{W-1}` with `prefix_maps[i]: S_{i+1} -> S_i`,
    /// the tail, and `bridge: tail -> S_{W-1}` (ignored for an empty prefix,
    /// defaults to zero for a zero tail).
    pub fn new(
        prefix: Vec<FgAbGroup>,
        prefix_maps: Vec<GroupMap>,
        tail: TailSpec,
        bridge: Option<GroupMap>,
    ) -> Result<Self> {
        let (group, endo) = match tail {
            TailSpec::ConstantEndo { group, endo } => (group, endo),
            TailSpec::Zero => {
                let z = FgAbGroup::trivial();
                let e = GroupMap::zero(&z, &z);
                (z, e)
            }
        };
        let mut maps = prefix_maps;
        if let Some(last) = prefix.last() {
            let bridge = match bridge {
                Some(b) => b,
                None if group.is_trivial() => GroupMap::zero(&group, last),
                None => {
                    return Err(Error::Shape(
                        "a nonzero tail needs a map into the last prefix level".into(),
                    ))
                }
            };
            maps.push(bridge);
        }
        let mut levels = prefix;
        levels.push(group);
        Tower::from_levels(levels, maps, endo)
    }

    /// The constant tower `G <- G <- ...` with every map `endo`.
    pub fn constant(endo: GroupMap) -> Result<Self> {
        Tower::from_levels(vec![endo.domain().clone()], vec![], endo)
    }

    /// `S(A)`: every level `A`, every map multiplication by `m`.
    pub fn s_of_a(group: &FgAbGroup, m: &BigInt) -> Self {
        Tower::constant(GroupMap::multiplication(group, m)).expect("multiplication is an endomorphism")
    }

    pub fn zero() -> Self {
        Tower::new(vec![], vec![], TailSpec::Zero, None).expect("zero tower is well formed")
    }

    /// Number of prefix levels `W`; levels `>= W` all equal the tail group.
    pub fn window(&self) -> usize {
        self.maps.len()
    }

    pub fn level(&self, i: usize) -> &FgAbGroup {
        &self.levels[i.min(self.window())]
    }

    /// `f_i: S_{i+1} -> S_i`.
    pub fn map(&self, i: usize) -> &GroupMap {
        self.maps.get(i).unwrap_or(&self.endo)
    }

    pub fn tail_group(&self) -> &FgAbGroup {
        &self.levels[self.window()]
    }

    pub fn tail_endo(&self) -> &GroupMap {
        &self.endo
    }

    pub fn tail(&self) -> TailSpec {
        if self.tail_group().is_trivial() {
            TailSpec::Zero
        } else {
            TailSpec::ConstantEndo {
                group: self.tail_group().clone(),
                endo: self.endo.clone(),
            }
        }
    }

    /// The prefix levels with their maps to the previous level (`None` at level 0).
    pub fn prefix(&self) -> Vec<(FgAbGroup, Option<GroupMap>)> {
        (0..self.window())
            .map(|i| (self.levels[i].clone(), i.checked_sub(1).map(|j| self.maps[j].clone())))
            .collect()
    }

    /// The same sequence with `k` more tail levels spelled out in the prefix.
    pub fn unrolled(&self, k: usize) -> Tower {
        let mut t = self.clone();
        for _ in 0..k {
            t.levels.push(t.tail_group().clone());
            t.maps.push(t.endo.clone());
        }
        t
    }

    /// Composite `S_j -> S_i` for `j >= i`; tail powers by repeated squaring.
    pub fn composite(&self, i: usize, j: usize) -> GroupMap {
        assert!(j >= i, "composite needs j >= i");
        let w = self.window();
        let mut acc = GroupMap::identity(self.level(i));
        for k in i..j.min(w.max(i)) {
            acc = acc.compose(&self.maps[k]).expect("adjacent maps compose");
        }
        let tail_steps = j - j.min(w.max(i));
        if tail_steps > 0 {
            acc = acc
                .compose(&endo_power(&self.endo, tail_steps))
                .expect("tail maps compose");
        }
        acc
    }

    /// All groups trivial.
    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(FgAbGroup::is_trivial)
    }

    /// All structure maps zero.
    pub fn is_null(&self) -> bool {
        self.endo.is_zero() && self.maps.iter().all(GroupMap::is_zero)
    }

    /// All structure maps surjective.
    pub fn is_epimorphic(&self) -> bool {
        self.endo.is_surjective() && self.maps.iter().all(GroupMap::is_surjective)
    }

    pub fn all_levels_finite(&self) -> bool {
        self.levels.iter().all(FgAbGroup::is_finite)
    }

    /// One subgroup per stored level; `subs[W]` stands for every tail level.
    pub(crate) fn check_subs(&self, subs: &[Subgroup]) -> Result<()> {
        if subs.len() != self.levels.len() {
            return Err(Error::Shape(format!(
                "expected {} subgroups, got {}",
                self.levels.len(),
                subs.len()
            )));
        }
        if subs.iter().zip(&self.levels).any(|(s, g)| s.ambient() != g) {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// The subtower on compatible subgroups, with its inclusion.
    pub fn subtower(&self, subs: &[Subgroup]) -> Result<(Tower, TowerMorphism)> {
        self.check_subs(subs)?;
        let pres: Vec<_> = subs.iter().map(Subgroup::presentation).collect();
        let w = self.window();
        let maps = (0..w)
            .map(|i| pres[i + 1].restrict(&self.maps[i], &pres[i]))
            .collect::<Result<Vec<_>>>()?;
        let endo = pres[w].restrict(&self.endo, &pres[w])?;
        let sub = Tower::from_levels(pres.iter().map(|p| p.group.clone()).collect(), maps, endo)?;
        let inclusion = TowerMorphism::new(
            sub.clone(),
            self.clone(),
            pres.into_iter().map(|p| p.embedding).collect(),
        )?;
        Ok((sub, inclusion))
    }

    /// The quotient tower by compatible subgroups, with its projection.
    pub fn quotient(&self, subs: &[Subgroup]) -> Result<(Tower, TowerMorphism)> {
        self.check_subs(subs)?;
        let quots: Vec<Quotient> = subs.iter().map(Quotient::of).collect();
        let w = self.window();
        let maps = (0..w)
            .map(|i| quots[i + 1].induced(&self.maps[i], &quots[i]))
            .collect::<Result<Vec<_>>>()?;
        let endo = quots[w].induced(&self.endo, &quots[w])?;
        let q = Tower::from_levels(quots.iter().map(|q| q.group.clone()).collect(), maps, endo)?;
        let projection = TowerMorphism::new(
            self.clone(),
            q.clone(),
            quots.into_iter().map(|q| q.projection).collect(),
        )?;
        Ok((q, projection))
    }
}

pub(crate) fn endo_power(g: &GroupMap, mut k: usize) -> GroupMap {
    let mut result = GroupMap::identity(g.domain());
    let mut base = g.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = result.compose(&base).expect("endomorphisms compose");
        }
        k >>= 1;
        if k > 0 {
            base = base.compose(&base).expect("endomorphisms compose");
        }
    }
    result
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.levels[..self.window()] {
            write!(f, "{g} <- ")?;
        }
        match self.tail() {
            TailSpec::Zero => write!(f, "0 ..."),
            TailSpec::ConstantEndo { group, endo } => match endo.as_multiplication() {
                Some(m) => write!(f, "{group} (x{m}) ..."),
                None => {
                    let rows: Vec<String> = endo.matrix().to_rows().iter().map(|r| format!("{r:?}")).collect();
                    write!(f, "{group} ({}) ...", rows.join(" "))
                }
            },
        }
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({self})")
    }
}
