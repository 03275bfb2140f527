use crate::abelian::{kernel, GroupMap};
use crate::{Error, Result};

use super::Tower;

/// A natural transformation between towers. Components `0..=K` are stored,
/// where `K >= max(windows)`; component `K` is used at every later level.
#[derive(Clone, Debug)]
pub struct TowerMorphism {
    source: Tower,
    target: Tower,
    components: Vec<GroupMap>,
}

impl TowerMorphism {
    /// Checks shapes and every naturality square, including the tail square.
    pub fn new(source: Tower, target: Tower, components: Vec<GroupMap>) -> Result<Self> {
        let k = source.window().max(target.window());
        if components.len() < k + 1 {
            return Err(Error::Shape(format!(
                "need at least {} components, got {}",
                k + 1,
                components.len()
            )));
        }
        let m = TowerMorphism {
            source,
            target,
            components,
        };
        for i in 0..m.components.len() {
            let c = m.component(i);
            if c.domain() != m.source.level(i) || c.codomain() != m.target.level(i) {
                return Err(Error::Shape(format!("component {i} has the wrong domain or codomain")));
            }
        }
        for i in 0..m.components.len() {
            let down = m.target.map(i).compose(m.component(i + 1))?;
            let across = m.component(i).compose(m.source.map(i))?;
            if down != across {
                return Err(Error::IllDefinedMap(format!("naturality fails at level {i}")));
            }
        }
        Ok(m)
    }

    pub fn identity(s: &Tower) -> Self {
        let components = (0..=s.window()).map(|i| GroupMap::identity(s.level(i))).collect();
        TowerMorphism::new(s.clone(), s.clone(), components).expect("identity is natural")
    }

    pub fn source(&self) -> &Tower {
        &self.source
    }

    pub fn target(&self) -> &Tower {
        &self.target
    }

    /// The component at level `i`.
    pub fn component(&self, i: usize) -> &GroupMap {
        &self.components[i.min(self.components.len() - 1)]
    }

    /// Number of explicitly stored components.
    pub fn stored(&self) -> usize {
        self.components.len()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &TowerMorphism) -> Result<TowerMorphism> {
        if inner.target != self.source {
            return Err(Error::Shape("morphisms do not compose".into()));
        }
        let n = self.stored().max(inner.stored());
        let components = (0..n)
            .map(|i| self.component(i).compose(inner.component(i)))
            .collect::<Result<Vec<_>>>()?;
        TowerMorphism::new(inner.source.clone(), self.target.clone(), components)
    }

    pub fn is_levelwise_injective(&self) -> bool {
        self.components.iter().all(GroupMap::is_injective)
    }

    pub fn is_levelwise_surjective(&self) -> bool {
        self.components.iter().all(GroupMap::is_surjective)
    }

    /// The source unrolled so its window covers every stored component.
    fn aligned_source(&self) -> Tower {
        self.source.unrolled(self.stored() - 1 - self.source.window())
    }

    fn aligned_target(&self) -> Tower {
        self.target.unrolled(self.stored() - 1 - self.target.window())
    }

    /// Levelwise kernel tower.
    pub fn kernel_tower(&self) -> Result<Tower> {
        let src = self.aligned_source();
        let subs: Vec<_> = self.components.iter().map(kernel).collect();
        Ok(src.subtower(&subs)?.0)
    }

    /// Levelwise image tower, as subgroups of the target.
    pub fn image_tower(&self) -> Result<Tower> {
        let tgt = self.aligned_target();
        let subs: Vec<_> = self.components.iter().map(|c| c.image()).collect();
        Ok(tgt.subtower(&subs)?.0)
    }

    /// Levelwise cokernel tower.
    pub fn cokernel_tower(&self) -> Result<Tower> {
        let tgt = self.aligned_target();
        let subs: Vec<_> = self.components.iter().map(|c| c.image()).collect();
        Ok(tgt.quotient(&subs)?.0)
    }
}

/// Equal when source, target and every level component agree, however many
/// components each side stores.
impl PartialEq for TowerMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && (0..self.stored().max(other.stored())).all(|i| self.component(i) == other.component(i))
    }
}

impl Eq for TowerMorphism {}
