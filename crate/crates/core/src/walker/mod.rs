//! Normal forms in the quotient of the free module on increasing ordinal
//! sequences by the carrying relations
//!
//! ```text
//! p e[a]            = 0
//! p e[a1, ..., an]  = e[a2, ..., an]      (n >= 2)
//! ```
//!
//! Every class has a unique representative whose digits lie in `{0, ..., p-1}`.
//! Normalization walks the support in descending deg-lex order, splits each
//! coefficient as `x0 + p*q`, keeps the digit `x0` and carries `q` onto the
//! tail index (or drops it for length-one indices). Carries always land on a
//! strictly smaller index, so a single ordered pass suffices.
//!
//! The `p`-height of a class is the least first entry over the support of its
//! normal form; the zero class gets height `alpha`.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::ordinal::{DegLexIndex, OrdinalCNF};
use crate::{Error, Result};

pub use parse::parse_element;

/// The prime `p` and the ordinal bound `alpha`; indices have all entries below `alpha`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct WalkerContext {
    p: u64,
    alpha: OrdinalCNF,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl WalkerContext {
    pub fn new(p: u64, alpha: OrdinalCNF) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if alpha.is_zero() {
            return Err(Error::InvalidIndex("alpha must be positive".into()));
        }
        Ok(WalkerContext { p, alpha })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> &OrdinalCNF {
        &self.alpha
    }

    pub(crate) fn check_index(&self, idx: &DegLexIndex) -> Result<()> {
        if idx.is_below(&self.alpha) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: idx.to_string(),
                alpha: self.alpha.to_string(),
            })
        }
    }

    pub fn zero(&self) -> WalkerElement {
        WalkerElement {
            ctx: self.clone(),
            support: BTreeMap::new(),
            normalized: true,
        }
    }

    /// The basis vector `e[idx]` (already in normal form).
    pub fn basis(&self, idx: DegLexIndex) -> Result<WalkerElement> {
        self.raw(vec![(idx, BigInt::one())])
    }

    /// `e[(beta)]`
    pub fn basis_single(&self, beta: OrdinalCNF) -> Result<WalkerElement> {
        self.basis(DegLexIndex::single(beta))
    }

    /// A raw (unnormalized) integer combination; repeated indices are summed.
    pub fn raw(&self, terms: Vec<(DegLexIndex, BigInt)>) -> Result<WalkerElement> {
        let mut support: BTreeMap<DegLexIndex, BigInt> = BTreeMap::new();
        for (idx, c) in terms {
            self.check_index(&idx)?;
            *support.entry(idx).or_default() += c;
        }
        support.retain(|_, c| !c.is_zero());
        let p = BigInt::from(self.p);
        let normalized = support.values().all(|c| c.is_positive() && *c < p);
        Ok(WalkerElement {
            ctx: self.clone(),
            support,
            normalized,
        })
    }

    /// The generating relation `r_sigma`.
    pub fn relation(&self, sigma: &DegLexIndex) -> Result<WalkerElement> {
        let mut terms = vec![(sigma.clone(), BigInt::from(self.p))];
        if let Some(tail) = sigma.tail() {
            terms.push((tail, BigInt::from(-1)));
        }
        self.raw(terms)
    }
}

/// A finitely supported integer combination of basis vectors `e[sigma]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WalkerElement {
    ctx: WalkerContext,
    support: BTreeMap<DegLexIndex, BigInt>,
    normalized: bool,
}

/// Heights before and after one multiplication by `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightStep {
    pub before: OrdinalCNF,
    /// `None` when `p x = 0`.
    pub after: Option<OrdinalCNF>,
}

impl WalkerElement {
    pub fn context(&self) -> &WalkerContext {
        &self.ctx
    }

    pub fn support(&self) -> &BTreeMap<DegLexIndex, BigInt> {
        &self.support
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Zero as a raw combination (not as a class).
    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn coefficient(&self, idx: &DegLexIndex) -> BigInt {
        self.support.get(idx).cloned().unwrap_or_default()
    }

    /// Deg-lex largest index with a nonzero coefficient.
    pub fn leading_index(&self) -> Option<&DegLexIndex> {
        self.support.keys().next_back()
    }

    /// Digit normal form, processing indices in descending deg-lex order.
    pub fn normalize(&self) -> WalkerElement {
        if self.normalized {
            return self.clone();
        }
        let p = BigInt::from(self.ctx.p);
        let mut work = self.support.clone();
        let mut out = BTreeMap::new();
        while let Some((idx, c)) = work.pop_last() {
            let (q, digit) = c.div_mod_floor(&p);
            if !q.is_zero() {
                if let Some(tail) = idx.tail() {
                    *work.entry(tail).or_default() += q;
                }
            }
            if !digit.is_zero() {
                out.insert(idx, digit);
            }
        }
        WalkerElement {
            ctx: self.ctx.clone(),
            support: out,
            normalized: true,
        }
    }

    /// Normalization by rewriting at randomly chosen out-of-range coordinates
    /// instead of in deg-lex order. Agrees with [`normalize`](Self::normalize)
    /// by uniqueness of the digit form.
    pub fn normalize_random_order<R: Rng + ?Sized>(&self, rng: &mut R) -> WalkerElement {
        let p = BigInt::from(self.ctx.p);
        let mut work = self.support.clone();
        loop {
            let pending: Vec<&DegLexIndex> = work
                .iter()
                .filter(|(_, c)| c.is_negative() || **c >= p)
                .map(|(k, _)| k)
                .collect();
            if pending.is_empty() {
                break;
            }
            let idx = pending[rng.gen_range(0..pending.len())].clone();
            let c = work.remove(&idx).expect("pending index is present");
            let (q, digit) = c.div_mod_floor(&p);
            if let Some(tail) = idx.tail() {
                let slot = work.entry(tail.clone()).or_default();
                *slot += q;
                if slot.is_zero() {
                    work.remove(&tail);
                }
            }
            if !digit.is_zero() {
                work.insert(idx, digit);
            }
        }
        work.retain(|_, c| !c.is_zero());
        WalkerElement {
            ctx: self.ctx.clone(),
            support: work,
            normalized: true,
        }
    }

    fn check_context(&self, other: &WalkerElement) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Coefficient-wise sum, not normalized.
    pub fn add_raw(&self, other: &WalkerElement) -> Result<WalkerElement> {
        self.check_context(other)?;
        let mut support = self.support.clone();
        for (k, c) in &other.support {
            *support.entry(k.clone()).or_default() += c;
        }
        support.retain(|_, c| !c.is_zero());
        Ok(WalkerElement {
            ctx: self.ctx.clone(),
            support,
            normalized: false,
        })
    }

    pub fn scalar_mul_raw(&self, c: &BigInt) -> WalkerElement {
        let mut support: BTreeMap<DegLexIndex, BigInt> = self.support.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        support.retain(|_, c| !c.is_zero());
        WalkerElement {
            ctx: self.ctx.clone(),
            support,
            normalized: false,
        }
    }

    pub fn add(&self, other: &WalkerElement) -> Result<WalkerElement> {
        Ok(self.add_raw(other)?.normalize())
    }

    pub fn scalar_mul(&self, c: &BigInt) -> WalkerElement {
        self.scalar_mul_raw(c).normalize()
    }

    pub fn mul_by_p(&self) -> WalkerElement {
        self.scalar_mul(&BigInt::from(self.ctx.p))
    }

    pub fn neg(&self) -> WalkerElement {
        self.scalar_mul(&BigInt::from(-1))
    }

    /// Whether the element lies in the relation submodule.
    pub fn in_relations(&self) -> bool {
        self.normalize().is_zero()
    }

    /// Class equality.
    pub fn equivalent(&self, other: &WalkerElement) -> Result<bool> {
        self.check_context(other)?;
        Ok(self.normalize() == other.normalize())
    }

    /// Largest `beta` with the class in `p^beta`; `alpha` for the zero class.
    pub fn height(&self) -> OrdinalCNF {
        self.normalize()
            .support
            .keys()
            .map(|idx| idx.first().clone())
            .min()
            .unwrap_or_else(|| self.ctx.alpha.clone())
    }

    pub fn in_p_beta(&self, beta: &OrdinalCNF) -> Result<bool> {
        if beta > &self.ctx.alpha {
            return Err(Error::Precondition(format!(
                "beta = {beta} exceeds alpha = {}",
                self.ctx.alpha
            )));
        }
        Ok(&self.height() >= beta)
    }

    pub fn mul_p_height_step(&self) -> Result<HeightStep> {
        if self.in_relations() {
            return Err(Error::Precondition("height step needs a nonzero class".into()));
        }
        let px = self.mul_by_p();
        Ok(HeightStep {
            before: self.height(),
            after: (!px.is_zero()).then(|| px.height()),
        })
    }
}

impl fmt::Display for WalkerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        for (i, (idx, c)) in self.support.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if mag.is_one() {
                write!(f, "e{idx}")?;
            } else {
                write!(f, "{mag}*e{idx}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WalkerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WalkerElement({self})")
    }
}

impl Serialize for WalkerElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One row of an Ulm probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UlmSample {
    pub beta: OrdinalCNF,
    pub height: OrdinalCNF,
    pub nonzero: bool,
    /// Heights along `e[(beta)], p e[(beta)], ...` until the class vanishes.
    pub p_chain: Vec<OrdinalCNF>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UlmProbe {
    pub p: u64,
    pub alpha: OrdinalCNF,
    pub samples: Vec<UlmSample>,
    /// No nonzero class has height `alpha`: every basis index has first entry below alpha.
    pub top_stage_trivial: bool,
}

impl UlmProbe {
    /// Every sample has height exactly its `beta` and the top stage vanishes.
    pub fn heights_exact(&self) -> bool {
        self.top_stage_trivial
            && self
                .samples
                .iter()
                .all(|s| s.nonzero && s.height == s.beta && s.p_chain.windows(2).all(|w| w[0] < w[1]))
    }
}

/// For each sampled `beta < alpha`, exhibits `e[(beta)]` as a nonzero class of
/// height exactly `beta`, and follows it under multiplication by `p`.
pub fn ulm_probe(ctx: &WalkerContext, sample: &[OrdinalCNF]) -> Result<UlmProbe> {
    let mut samples = Vec::new();
    let mut top_stage_trivial = true;
    for beta in sample {
        let e = ctx.basis_single(beta.clone())?;
        let nonzero = !e.in_relations();
        let height = e.height();
        top_stage_trivial &= !nonzero || height < ctx.alpha;
        let mut p_chain = Vec::new();
        let mut x = e.normalize();
        while !x.is_zero() {
            p_chain.push(x.height());
            x = x.mul_by_p();
        }
        samples.push(UlmSample {
            beta: beta.clone(),
            height,
            nonzero,
            p_chain,
        });
    }
    Ok(UlmProbe {
        p: ctx.p,
        alpha: ctx.alpha.clone(),
        samples,
        top_stage_trivial,
    })
}
