use serde::Serialize;

use crate::abelian::{FgAbGroup, Subgroup};
use crate::ordinal::OrdinalCNF;
use crate::{Error, Result};

use super::filtration::{chain, length_from, ml_from, Chain, Length, MlStatus};
use super::{Tower, TowerMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Unknown { horizon: usize },
}

impl Verdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LimValue {
    Exact { group: FgAbGroup },
    Unknown { horizon: usize },
}

impl LimValue {
    pub fn group(&self) -> Option<&FgAbGroup> {
        match self {
            LimValue::Exact { group } => Some(group),
            LimValue::Unknown { .. } => None,
        }
    }
}

/// `lim^1` is never computed as a group; only whether it vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Lim1Status {
    Zero,
    NonZero { reason: String },
    Unknown { horizon: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Completeness {
    Complete,
    /// Not complete; the completion gains `m`-adic limits on a free part of this rank.
    Incomplete {
        cokernel_rank: usize,
    },
    Unknown {
        horizon: usize,
    },
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub ml: MlStatus,
    pub length: Length,
    pub lim: LimValue,
    pub lim1: Lim1Status,
    pub local: Verdict,
    pub omega_complete: Completeness,
}

impl AnalysisReport {
    /// Agreement on everything a shift preserves: the limit, the `lim^1`
    /// status, the kind of ML answer, locality and completeness. The stage
    /// numbers and the length can move by the prefix size.
    pub fn same_invariants(&self, other: &AnalysisReport) -> bool {
        self.lim == other.lim
            && self.lim1 == other.lim1
            && self.ml.kind() == other.ml.kind()
            && self.local == other.local
            && self.omega_complete == other.omega_complete
    }
}

fn lim_from(s: &Tower, c: &Chain) -> LimValue {
    match c.stable() {
        Some(stable) => LimValue::Exact {
            group: stable_tail_group(s, stable),
        },
        None => LimValue::Unknown {
            horizon: undecided_horizon(c),
        },
    }
}

fn undecided_horizon(c: &Chain) -> usize {
    match c {
        Chain::Undecided { horizon, .. } => *horizon,
        _ => 0,
    }
}

/// The stable image at the tail, where the tail map is an automorphism.
fn stable_tail_group(s: &Tower, stable: &[Subgroup]) -> FgAbGroup {
    let pres = stable[s.window()].presentation();
    let restricted = pres
        .restrict(s.tail_endo(), &pres)
        .expect("the stable stage is invariant under the tail map");
    // surjective by stability; injective because f.g. abelian groups are Hopfian
    assert!(restricted.is_surjective() && restricted.is_injective());
    pres.group
}

fn lim1_from(c: &Chain) -> Lim1Status {
    match c {
        Chain::Stable { .. } => Lim1Status::Zero,
        Chain::Multiplication { m, free_rank, .. } => Lim1Status::NonZero {
            reason: format!(
                "tail is multiplication by {m} on a free part of rank {free_rank}; \
                 the images never stabilize and all levels are countable"
            ),
        },
        Chain::Undecided { horizon, .. } => Lim1Status::Unknown { horizon: *horizon },
    }
}

/// `lim S` and the vanishing of `lim^1 S`.
pub fn lim_lim1(s: &Tower, horizon: usize) -> (LimValue, Lim1Status) {
    let c = chain(s, horizon);
    (lim_from(s, &c), lim1_from(&c))
}

fn local_from(c: &Chain) -> Verdict {
    match c {
        Chain::Stable { .. } => {
            let zero = c.stable().expect("stable").iter().all(Subgroup::is_trivial);
            if zero {
                Verdict::True
            } else {
                Verdict::False
            }
        }
        Chain::Multiplication { .. } => Verdict::False,
        Chain::Undecided { horizon, .. } => Verdict::Unknown { horizon: *horizon },
    }
}

/// Whether `lim S = lim^1 S = 0`, i.e. some finite `I^n(S)` vanishes.
pub fn is_local(s: &Tower, horizon: usize) -> Verdict {
    local_from(&chain(s, horizon))
}

fn omega_from(c: &Chain) -> Completeness {
    match c {
        Chain::Stable { .. } => Completeness::Complete,
        Chain::Multiplication { free_rank, .. } => Completeness::Incomplete {
            cokernel_rank: *free_rank,
        },
        Chain::Undecided { horizon, .. } => Completeness::Unknown { horizon: *horizon },
    }
}

/// Whether `S -> S^omega-completion` is an epimorphism.
pub fn omega_completion_status(s: &Tower, horizon: usize) -> Completeness {
    omega_from(&chain(s, horizon))
}

/// `lambda`-completeness for a limit ordinal `lambda`. Beyond `omega` it is only
/// decided when the filtration is known to stop before `lambda`, in which case
/// the completion is the quotient by the stable stage and `S` maps onto it.
pub fn completion_status(s: &Tower, lambda: &OrdinalCNF, horizon: usize) -> Result<Completeness> {
    if !lambda.is_limit() {
        return Err(Error::Precondition(format!("{lambda} is not a limit ordinal")));
    }
    if *lambda == OrdinalCNF::omega() {
        return Ok(omega_completion_status(s, horizon));
    }
    let c = chain(s, horizon);
    Ok(match length_from(&c).exact() {
        Some(len) if len < lambda && c.stable().is_some() => Completeness::Complete,
        _ => Completeness::NotApplicable,
    })
}

/// Every analysis at once, sharing one pass over the filtration.
pub fn analyze(s: &Tower, horizon: usize) -> AnalysisReport {
    let c = chain(s, horizon);
    AnalysisReport {
        ml: ml_from(&c),
        length: length_from(&c),
        lim: lim_from(s, &c),
        lim1: lim1_from(&c),
        local: local_from(&c),
        omega_complete: omega_from(&c),
    }
}

/// `E >-> S ->> L` with `E = I^len(S)` epimorphic and `lim L = 0`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub epimorphic: Tower,
    pub local_part: Tower,
    pub inclusion: TowerMorphism,
    pub projection: TowerMorphism,
    /// `lim^1 S`, equal to `lim^1 L`.
    pub lim1: Lim1Status,
}

pub fn decompose(s: &Tower, horizon: usize) -> Result<Decomposition> {
    let c = chain(s, horizon);
    let stable = c
        .stable()
        .ok_or_else(|| Error::Precondition(format!("filtration undecided within {horizon} stages")))?;
    let (epimorphic, inclusion) = s.subtower(stable)?;
    let (local_part, projection) = s.quotient(stable)?;
    Ok(Decomposition {
        epimorphic,
        local_part,
        inclusion,
        projection,
        lim1: lim1_from(&c),
    })
}
