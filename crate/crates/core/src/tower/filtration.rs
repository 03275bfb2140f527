use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::abelian::Subgroup;
use crate::ordinal::OrdinalCNF;
use crate::Result;

use super::{Tower, TowerMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    /// Only finite stages up to `computed` were available.
    PartialUpTo {
        computed: OrdinalCNF,
    },
}

/// The stage `I^beta(S)`: one subgroup per stored level of `S`, the last
/// standing for every tail level.
#[derive(Clone, Debug)]
pub struct FiltrationStage {
    pub stage: OrdinalCNF,
    pub subs: Vec<Subgroup>,
    pub exactness: Exactness,
}

impl FiltrationStage {
    pub fn level(&self, i: usize) -> &Subgroup {
        &self.subs[i.min(self.subs.len() - 1)]
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }

    pub fn is_zero(&self) -> bool {
        self.subs.iter().all(Subgroup::is_trivial)
    }

    pub fn is_whole(&self) -> bool {
        self.subs.iter().all(Subgroup::is_whole)
    }

    /// The stage as a subtower of `s`.
    pub fn tower(&self, s: &Tower) -> Result<Tower> {
        Ok(s.subtower(&self.subs)?.0)
    }
}

/// `I(S) >-> S ->> S^1`.
#[derive(Clone, Debug)]
pub struct ImageTower {
    pub image: Tower,
    pub inclusion: TowerMorphism,
    pub cokernel: Tower,
    pub projection: TowerMorphism,
}

pub fn image_tower(s: &Tower) -> Result<ImageTower> {
    let subs = step(s, &whole(s));
    let (image, inclusion) = s.subtower(&subs)?;
    let (cokernel, projection) = s.quotient(&subs)?;
    Ok(ImageTower {
        image,
        inclusion,
        cokernel,
        projection,
    })
}

/// `I^n(S)`: at level `i`, the image of the composite `S_{i+n} -> S_i`.
pub fn iterate_image(s: &Tower, n: usize) -> FiltrationStage {
    let subs = (0..=s.window()).map(|i| s.composite(i, i + n).image()).collect();
    FiltrationStage {
        stage: OrdinalCNF::finite(n as u64),
        subs,
        exactness: Exactness::Exact,
    }
}

/// `I^beta(S)`, exact on stabilizing chains and multiplication tails.
pub fn transfinite_image(s: &Tower, beta: &OrdinalCNF, horizon: usize) -> FiltrationStage {
    if let Some(n) = beta.as_finite() {
        return iterate_image(s, n as usize);
    }
    let (subs, exactness) = match chain(s, horizon) {
        Chain::Stable { mut stages, .. } => (stages.pop().expect("nonempty"), Exactness::Exact),
        Chain::Multiplication { mut after_omega, .. } => {
            let k = if beta < &OrdinalCNF::omega_times_plus(2, 0) {
                (beta.finite_part() as usize).min(after_omega.len() - 1)
            } else {
                after_omega.len() - 1
            };
            (after_omega.swap_remove(k), Exactness::Exact)
        }
        Chain::Undecided { horizon, mut stages } => (
            stages.pop().expect("nonempty"),
            Exactness::PartialUpTo {
                computed: OrdinalCNF::finite(horizon as u64),
            },
        ),
    };
    FiltrationStage {
        stage: beta.clone(),
        subs,
        exactness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Length {
    Exact { length: OrdinalCNF },
    UnknownBeyond { horizon: OrdinalCNF },
}

impl Length {
    pub fn exact(&self) -> Option<&OrdinalCNF> {
        match self {
            Length::Exact { length } => Some(length),
            Length::UnknownBeyond { .. } => None,
        }
    }
}

/// The least `lambda` with `I^lambda(S) = I^(lambda+1)(S)`.
pub fn length(s: &Tower, horizon: usize) -> Length {
    length_from(&chain(s, horizon))
}

pub(crate) fn length_from(c: &Chain) -> Length {
    match c {
        Chain::Stable { n, .. } => Length::Exact {
            length: OrdinalCNF::finite(*n as u64),
        },
        Chain::Multiplication { after_omega, .. } => Length::Exact {
            length: OrdinalCNF::omega_times_plus(1, after_omega.len() as u64 - 1),
        },
        Chain::Undecided { horizon, .. } => Length::UnknownBeyond {
            horizon: OrdinalCNF::finite(*horizon as u64),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MlStatus {
    /// `I^stage = I^(stage+1)`, hence constant from there on.
    Stabilized {
        stage: usize,
    },
    /// The tail is multiplication by `multiplier` on a group with free part
    /// of rank `free_rank`, whose images `m^n Z^r` strictly decrease.
    NeverStabilizes {
        #[serde(serialize_with = "crate::abelian::bigint_json::to_repr")]
        multiplier: BigInt,
        free_rank: usize,
    },
    Unknown {
        horizon: usize,
    },
}

impl MlStatus {
    pub fn kind(&self) -> &'static str {
        match self {
            MlStatus::Stabilized { .. } => "stabilized",
            MlStatus::NeverStabilizes { .. } => "never_stabilizes",
            MlStatus::Unknown { .. } => "unknown",
        }
    }
}

pub fn ml_check(s: &Tower, horizon: usize) -> MlStatus {
    ml_from(&chain(s, horizon))
}

pub(crate) fn ml_from(c: &Chain) -> MlStatus {
    match c {
        Chain::Stable { n, .. } => MlStatus::Stabilized { stage: *n },
        Chain::Multiplication { m, free_rank, .. } => MlStatus::NeverStabilizes {
            multiplier: m.clone(),
            free_rank: *free_rank,
        },
        Chain::Undecided { horizon, .. } => MlStatus::Unknown { horizon: *horizon },
    }
}

/// How far the image filtration could be followed.
pub(crate) enum Chain {
    /// `stages[0..=n]` with `I^n = I^(n+1)`.
    Stable { n: usize, stages: Vec<Vec<Subgroup>> },
    /// Tail `x m` with free part; `after_omega[k] = I^(omega+k)`, the last one stable.
    Multiplication {
        m: BigInt,
        free_rank: usize,
        after_omega: Vec<Vec<Subgroup>>,
    },
    /// `stages[0..=horizon]`, none stable.
    Undecided { horizon: usize, stages: Vec<Vec<Subgroup>> },
}

impl Chain {
    /// The stage `I^len`, when known.
    pub(crate) fn stable(&self) -> Option<&[Subgroup]> {
        match self {
            Chain::Stable { stages, .. } => stages.last().map(Vec::as_slice),
            Chain::Multiplication { after_omega, .. } => after_omega.last().map(Vec::as_slice),
            Chain::Undecided { .. } => None,
        }
    }
}

fn whole(s: &Tower) -> Vec<Subgroup> {
    (0..=s.window()).map(|i| Subgroup::whole(s.level(i))).collect()
}

fn step(s: &Tower, subs: &[Subgroup]) -> Vec<Subgroup> {
    let w = s.window();
    (0..=w)
        .map(|i| {
            s.map(i)
                .image_of(&subs[(i + 1).min(w)])
                .expect("stage subgroups live in the tower levels")
        })
        .collect()
}

fn same(a: &[Subgroup], b: &[Subgroup]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.equals(y).expect("same ambient"))
}

/// Tail multiplier `m` with `|m| >= 2` and tail free rank, when both apply.
fn multiplication_class(s: &Tower) -> Option<(BigInt, usize)> {
    let r = s.tail_group().free_rank();
    let m = s.tail_endo().as_multiplication()?;
    (r > 0 && m.abs() >= BigInt::from(2)).then_some((m, r))
}

/// Follows the chain until it stabilizes. With a finite tail group this always
/// happens (the tail chain is a descending chain of finite subgroups, and the
/// prefix follows within `W` steps), so the horizon only bounds infinite tails.
pub(crate) fn chain(s: &Tower, horizon: usize) -> Chain {
    let horizon = horizon.max(1);
    if let Some((m, free_rank)) = multiplication_class(s) {
        // I^omega_i is the prime-to-m torsion of the image of the tail in S_i.
        let w = s.window();
        let omega: Vec<Subgroup> = (0..=w).map(|i| s.composite(i, w).image().prime_to_part(&m)).collect();
        let mut after_omega = vec![omega];
        loop {
            let next = step(s, after_omega.last().expect("nonempty"));
            if same(&next, after_omega.last().expect("nonempty")) {
                break;
            }
            after_omega.push(next);
        }
        return Chain::Multiplication {
            m,
            free_rank,
            after_omega,
        };
    }
    let bounded = !s.tail_group().is_finite();
    let mut stages = vec![whole(s)];
    loop {
        let k = stages.len() - 1;
        let next = step(s, &stages[k]);
        if same(&next, &stages[k]) {
            return Chain::Stable { n: k, stages };
        }
        stages.push(next);
        if bounded && k + 1 >= horizon {
            return Chain::Undecided { horizon, stages };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{FgAbGroup, GroupMap, IntMatrix};
    use crate::tower::TailSpec;

    fn s_of_a(g: FgAbGroup, m: i64) -> Tower {
        Tower::s_of_a(&g, &BigInt::from(m))
    }

    #[test]
    fn second_image_of_z8() {
        let s = s_of_a(FgAbGroup::cyclic(8), 2);
        let st = iterate_image(&s, 2);
        assert_eq!(st.level(5).to_group(), FgAbGroup::cyclic(2));
        assert!(iterate_image(&s, 0).is_whole());
    }

    #[test]
    fn omega_stages() {
        let s = s_of_a(FgAbGroup::free(1), 3);
        let st = transfinite_image(&s, &OrdinalCNF::omega(), 8);
        assert!(st.is_exact() && st.is_zero());
        let s = s_of_a(FgAbGroup::cyclic(6), 2);
        let st = transfinite_image(&s, &OrdinalCNF::omega(), 8);
        assert_eq!(st.level(0).to_group(), FgAbGroup::cyclic(3));
    }

    #[test]
    fn lengths() {
        let len = |s: &Tower| length(s, 16).exact().cloned().unwrap();
        assert_eq!(len(&s_of_a(FgAbGroup::cyclic(9), 3)), OrdinalCNF::finite(2));
        let g = FgAbGroup::new(1, vec![BigInt::from(4)]).unwrap();
        assert_eq!(len(&s_of_a(g, 2)), OrdinalCNF::omega());
        assert_eq!(len(&s_of_a(FgAbGroup::cyclic(5), 0)), OrdinalCNF::one());
        assert_eq!(len(&Tower::zero()), OrdinalCNF::zero());
    }

    #[test]
    fn prefix_pushes_length_past_omega() {
        // Z/3 <- Z (x2): the image of Z in Z/3 is nonzero at every finite stage,
        // but I^omega of the tail is 0.
        let g = FgAbGroup::free(1);
        let z3 = FgAbGroup::cyclic(3);
        let bridge = GroupMap::new(g.clone(), z3.clone(), IntMatrix::from_i64(&[&[1]])).unwrap();
        let s = Tower::new(
            vec![z3],
            vec![],
            TailSpec::ConstantEndo {
                endo: GroupMap::multiplication(&g, &BigInt::from(2)),
                group: g,
            },
            Some(bridge),
        )
        .unwrap();
        assert_eq!(length(&s, 16).exact(), Some(&OrdinalCNF::omega_times_plus(1, 1)));
        let st = transfinite_image(&s, &OrdinalCNF::omega(), 16);
        assert_eq!(st.level(0).to_group(), FgAbGroup::cyclic(3));
        assert!(transfinite_image(&s, &"w*2".parse().unwrap(), 16).is_zero());
    }

    #[test]
    fn ml_statuses() {
        assert_eq!(ml_check(&s_of_a(FgAbGroup::free(1), 5), 8).kind(), "never_stabilizes");
        assert_eq!(
            ml_check(&s_of_a(FgAbGroup::free(2), 1), 8),
            MlStatus::Stabilized { stage: 0 }
        );
        let g = FgAbGroup::free(2);
        let endo = GroupMap::new(g.clone(), g, IntMatrix::from_i64(&[&[2, 0], &[0, 1]])).unwrap();
        let s = Tower::constant(endo).unwrap();
        assert_eq!(ml_check(&s, 5), MlStatus::Unknown { horizon: 5 });
        assert!(matches!(
            transfinite_image(&s, &OrdinalCNF::omega(), 5).exactness,
            Exactness::PartialUpTo { .. }
        ));
    }

    #[test]
    fn image_tower_of_z4() {
        let s = s_of_a(FgAbGroup::cyclic(4), 2);
        let it = image_tower(&s).unwrap();
        assert_eq!(it.image.level(0), &FgAbGroup::cyclic(2));
        assert_eq!(it.cokernel.level(0), &FgAbGroup::cyclic(2));
        assert!(it.cokernel.is_null());
        let id = s_of_a(FgAbGroup::cyclic(3), 1);
        assert!(image_tower(&id).unwrap().cokernel.is_zero());
    }
}
