use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// An ordinal below epsilon-zero in Cantor normal form:
/// `w^e_1 * c_1 + ... + w^e_k * c_k` with `e_1 > ... > e_k` and `c_i >= 1`.
///
/// The representation is unique, so structural equality is ordinal equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OrdinalCNF {
    terms: Vec<(OrdinalCNF, u64)>,
}

impl OrdinalCNF {
    pub fn zero() -> Self {
        OrdinalCNF { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            OrdinalCNF {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn one() -> Self {
        Self::finite(1)
    }

    pub fn omega() -> Self {
        Self::omega_power(Self::one())
    }

    /// `w^exponent`
    pub fn omega_power(exponent: OrdinalCNF) -> Self {
        OrdinalCNF {
            terms: vec![(exponent, 1)],
        }
    }

    /// `w * k + n`
    pub fn omega_times_plus(k: u64, n: u64) -> Self {
        let mut terms = Vec::new();
        if k > 0 {
            terms.push((Self::one(), k));
        }
        if n > 0 {
            terms.push((Self::zero(), n));
        }
        OrdinalCNF { terms }
    }

    /// Builds from `(exponent, coefficient)` terms, which must already be in
    /// normal form.
    pub fn from_terms(terms: Vec<(OrdinalCNF, u64)>) -> Result<Self> {
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(Error::InvalidIndex("zero coefficient in normal form".into()));
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::InvalidIndex("exponents must strictly decrease".into()));
        }
        Ok(OrdinalCNF { terms })
    }

    pub fn terms(&self) -> &[(OrdinalCNF, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Nonzero with no trailing finite part.
    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| !e.is_zero())
    }

    /// Trailing finite part, `n` in `lambda + n`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    /// Ordinal sum (not commutative: `1 + w = w`).
    pub fn add(&self, other: &OrdinalCNF) -> OrdinalCNF {
        let Some((lead, lead_coeff)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(OrdinalCNF, u64)> = Vec::new();
        let mut carried = 0u64;
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => carried = *c,
                Ordering::Less => break,
            }
        }
        terms.push((
            lead.clone(),
            lead_coeff.checked_add(carried).expect("ordinal coefficient overflow"),
        ));
        terms.extend(other.terms[1..].iter().cloned());
        OrdinalCNF { terms }
    }

    pub fn succ(&self) -> OrdinalCNF {
        self.add(&Self::one())
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<OrdinalCNF> {
        let n = self.finite_part();
        if n == 0 {
            return None;
        }
        let mut terms = self.terms.clone();
        terms.pop();
        if n > 1 {
            terms.push((Self::zero(), n - 1));
        }
        Some(OrdinalCNF { terms })
    }

    /// Leading exponent (degree); zero for finite ordinals.
    pub fn degree(&self) -> OrdinalCNF {
        self.terms.first().map(|(e, _)| e.clone()).unwrap_or_default()
    }
}

impl Ord for OrdinalCNF {
    // Lexicographic on (exponent, coefficient) terms, shorter prefix first.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            match a.0.cmp(&b.0).then(a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for OrdinalCNF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Three-way comparison.
pub fn ord_compare(a: &OrdinalCNF, b: &OrdinalCNF) -> Ordering {
    a.cmp(b)
}

impl From<u64> for OrdinalCNF {
    fn from(n: u64) -> Self {
        Self::finite(n)
    }
}

impl fmt::Display for OrdinalCNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let base = match e.as_finite() {
                    Some(0) => return c.to_string(),
                    Some(1) => "w".to_string(),
                    Some(k) => format!("w^{k}"),
                    None => format!("w^({e})"),
                };
                if *c == 1 {
                    base
                } else {
                    format!("{base}*{c}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for OrdinalCNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for OrdinalCNF {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_ordinal(s)
    }
}

impl Serialize for OrdinalCNF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrdinalCNF {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(OrdinalCNF::finite(n)),
            Repr::Str(s) => parse_ordinal(&s).map_err(serde::de::Error::custom),
        }
    }
}

/// Parses `"w^2*3 + w*1 + 4"`-style ordinal expressions.
///
/// Grammar: `sum := term ('+' term)*`, `term := atom ('*' int)?`,
/// `atom := int | w ('^' (int | w | '(' sum ')'))?`. Terms are combined with
/// ordinal addition, so `1 + w` reads as `w`. `ω` is accepted for `w`.
pub fn parse_ordinal(text: &str) -> Result<OrdinalCNF> {
    let mut p = Parser { text, pos: 0 };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(Error::parse(text, p.pos, "unexpected trailing input"));
    }
    Ok(v)
}

pub(crate) struct Parser<'a> {
    pub(crate) text: &'a str,
    pub(crate) pos: usize,
}

impl Parser<'_> {
    pub(crate) fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().unwrap().len_utf8();
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(self.text, self.pos, "expected an integer"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(self.text, start, "integer out of range"))
    }

    pub(crate) fn sum(&mut self) -> Result<OrdinalCNF> {
        let mut acc = self.term()?;
        while self.eat('+') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<OrdinalCNF> {
        let atom = self.atom()?;
        if self.eat('*') {
            let k = self.integer()?;
            return Ok(match atom {
                Atom::Finite(n) => OrdinalCNF::finite(n * k),
                Atom::Power(_) if k == 0 => OrdinalCNF::zero(),
                Atom::Power(e) => OrdinalCNF { terms: vec![(e, k)] },
            });
        }
        Ok(match atom {
            Atom::Finite(n) => OrdinalCNF::finite(n),
            Atom::Power(e) => OrdinalCNF::omega_power(e),
        })
    }

    fn atom(&mut self) -> Result<Atom> {
        self.skip_ws();
        match self.peek() {
            Some('w') | Some('ω') => {
                self.pos += self.peek().unwrap().len_utf8();
                if self.eat('^') {
                    self.skip_ws();
                    let e = match self.peek() {
                        Some('(') => {
                            self.pos += 1;
                            let e = self.sum()?;
                            if !self.eat(')') {
                                return Err(Error::parse(self.text, self.pos, "expected `)`"));
                            }
                            e
                        }
                        Some('w') | Some('ω') => {
                            self.pos += self.peek().unwrap().len_utf8();
                            OrdinalCNF::omega()
                        }
                        _ => OrdinalCNF::finite(self.integer()?),
                    };
                    Ok(Atom::Power(e))
                } else {
                    Ok(Atom::Power(OrdinalCNF::one()))
                }
            }
            Some(c) if c.is_ascii_digit() => Ok(Atom::Finite(self.integer()?)),
            _ => Err(Error::parse(self.text, self.pos, "expected an integer or `w`")),
        }
    }
}

enum Atom {
    Finite(u64),
    Power(OrdinalCNF),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> OrdinalCNF {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(ord_compare(&o("0"), &o("0")), Ordering::Equal);
        assert_eq!(ord_compare(&o("w"), &o("w+1")), Ordering::Less);
        assert_eq!(ord_compare(&o("w*2+3"), &o("w^2")), Ordering::Less);
        assert!(o("w^w") > o("w^5*7 + w"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(o("1").add(&o("w")), o("w"));
        assert_eq!(o("w").add(&o("1")), o("w+1"));
        assert!(!o("w+1").is_limit());
        assert!(o("w").is_limit());
        assert!(!o("0").is_limit());
        assert_eq!(o("w*2").add(&o("w")), o("w*3"));
        assert_eq!(o("w^2 + w*3 + 4").add(&o("w*2 + 1")), o("w^2 + w*5 + 1"));
    }

    #[test]
    fn parse_and_print() {
        for s in [
            "0",
            "7",
            "w",
            "w + 1",
            "w*2 + 3",
            "w^2*3 + w + 4",
            "w^w",
            "w^(w + 1)*2 + w^3",
        ] {
            let v = o(s);
            assert_eq!(o(&v.to_string()), v, "{s}");
        }
        assert_eq!(o("w^2*3 + w*1 + 4").to_string(), "w^2*3 + w + 4");
        assert_eq!(o("ω·2".replace('·', "*").as_str()), o("w*2"));
        assert_eq!(o("3 + w*2"), o("w*2"));
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_ordinal("w + x") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_ordinal("w^(2").is_err());
        assert!(parse_ordinal("").is_err());
    }

    #[test]
    fn pred_and_succ() {
        assert_eq!(o("w+1").pred(), Some(o("w")));
        assert_eq!(o("w").pred(), None);
        assert_eq!(o("w*2+2").succ(), o("w*2+3"));
    }
}
