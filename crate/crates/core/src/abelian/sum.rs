use num_bigint::BigInt;

use super::group::{group_from_presentation, Element, FgAbGroup};
use super::map::GroupMap;
use super::matrix::IntMatrix;
use crate::{Error, Result};

/// A finite direct sum in canonical form, with its injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbGroup,
    summands: Vec<FgAbGroup>,
    injections: Vec<GroupMap>,
    projections: Vec<GroupMap>,
}

impl DirectSum {
    pub fn new(summands: &[FgAbGroup]) -> Self {
        let blocks: Vec<IntMatrix> = summands.iter().map(|g| g.relation_matrix()).collect();
        let rels = IntMatrix::block_diagonal(&blocks);
        let n: usize = summands.iter().map(|g| g.num_generators()).sum();
        let pres = group_from_presentation(n, &rels).expect("block presentation is well formed");
        let total: Vec<usize> = (0..pres.group.num_generators()).collect();
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0;
        for g in summands {
            let cols: Vec<usize> = (offset..offset + g.num_generators()).collect();
            let inj = pres.to_canonical.select(&total, &cols);
            let proj = pres.from_canonical.select(&cols, &total);
            injections.push(GroupMap::new(g.clone(), pres.group.clone(), inj).expect("injection is well defined"));
            projections.push(GroupMap::new(pres.group.clone(), g.clone(), proj).expect("projection is well defined"));
            offset += g.num_generators();
        }
        DirectSum {
            group: pres.group,
            summands: summands.to_vec(),
            injections,
            projections,
        }
    }

    pub fn summands(&self) -> &[FgAbGroup] {
        &self.summands
    }

    pub fn injection(&self, k: usize) -> &GroupMap {
        &self.injections[k]
    }

    pub fn projection(&self, k: usize) -> &GroupMap {
        &self.projections[k]
    }

    /// Element with the given components.
    pub fn element(&self, parts: &[Element]) -> Element {
        parts
            .iter()
            .zip(&self.injections)
            .fold(self.group.zero(), |acc, (x, inj)| self.group.add(&acc, &inj.apply(x)))
    }

    pub fn components(&self, x: &[BigInt]) -> Vec<Element> {
        self.projections.iter().map(|p| p.apply(x)).collect()
    }

    /// The map `self -> target` with block `(k, l)` from summand `l` to summand `k`;
    /// `None` blocks are zero.
    pub fn map_from_blocks(&self, target: &DirectSum, blocks: &[Vec<Option<GroupMap>>]) -> Result<GroupMap> {
        if blocks.len() != target.summands.len() {
            return Err(Error::Dimension("block rows must match target summands".into()));
        }
        let mut total = GroupMap::zero(&self.group, &target.group);
        for (k, row) in blocks.iter().enumerate() {
            if row.len() != self.summands.len() {
                return Err(Error::Dimension("block columns must match source summands".into()));
            }
            for (l, block) in row.iter().enumerate() {
                if let Some(f) = block {
                    let piece = target.injections[k].compose(f)?.compose(&self.projections[l])?;
                    total = total.add(&piece)?;
                }
            }
        }
        Ok(total)
    }

    /// Diagonal map between sums with the same number of summands.
    pub fn diagonal_map(&self, target: &DirectSum, maps: &[GroupMap]) -> Result<GroupMap> {
        let blocks: Vec<Vec<Option<GroupMap>>> = (0..maps.len())
            .map(|k| (0..maps.len()).map(|l| (k == l).then(|| maps[k].clone())).collect())
            .collect();
        self.map_from_blocks(target, &blocks)
    }
}
