use num_bigint::BigInt;
use num_traits::One;

use super::{WalkerContext, WalkerElement};
use crate::ordinal::{DegLexIndex, Parser};
use crate::{Error, Result};

/// Parses `3*e[0, 1] + e[w] - 2*e[w+1, w*2]` (or `0`) into a raw element.
pub fn parse_element(ctx: &WalkerContext, text: &str) -> Result<WalkerElement> {
    let mut p = Parser { text, pos: 0 };
    let mut terms = Vec::new();
    p.skip_ws();
    if text.trim() == "0" {
        return Ok(ctx.zero());
    }
    let mut negative = p.eat('-');
    loop {
        let (idx, mut c) = term(&mut p)?;
        if negative {
            c = -c;
        }
        let start = p.pos;
        ctx.check_index(&idx)
            .map_err(|e| Error::parse(text, start, e.to_string()))?;
        terms.push((idx, c));
        if p.eat('+') {
            negative = false;
        } else if p.eat('-') {
            negative = true;
        } else {
            break;
        }
    }
    p.skip_ws();
    if p.pos != text.len() {
        return Err(Error::parse(text, p.pos, "unexpected trailing input"));
    }
    ctx.raw(terms)
}

fn term(p: &mut Parser<'_>) -> Result<(DegLexIndex, BigInt)> {
    p.skip_ws();
    let start = p.pos;
    while p.peek().is_some_and(|c| c.is_ascii_digit()) {
        p.pos += 1;
    }
    let coeff = if start == p.pos {
        BigInt::one()
    } else {
        let c: BigInt = p.text[start..p.pos].parse().expect("digits parse");
        if !p.eat('*') {
            return Err(Error::parse(p.text, p.pos, "expected `*` after coefficient"));
        }
        c
    };
    if !p.eat('e') || !p.eat('[') {
        return Err(Error::parse(p.text, p.pos, "expected `e[`"));
    }
    let open = p.pos;
    let mut entries = vec![p.sum()?];
    while p.eat(',') {
        entries.push(p.sum()?);
    }
    if !p.eat(']') {
        return Err(Error::parse(p.text, p.pos, "expected `]`"));
    }
    let idx = DegLexIndex::new(entries).map_err(|e| Error::parse(p.text, open, e.to_string()))?;
    Ok((idx, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::OrdinalCNF;

    #[test]
    fn round_trip() {
        let ctx = WalkerContext::new(3, "w*3".parse().unwrap()).unwrap();
        let x = parse_element(&ctx, "3*e[0,1] + e[w] - 2*e[w+1, w*2]").unwrap();
        assert_eq!(x.support().len(), 3);
        let again = parse_element(&ctx, &x.to_string()).unwrap();
        assert_eq!(again, x);
        assert!(parse_element(&ctx, "0").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let ctx = WalkerContext::new(2, OrdinalCNF::omega()).unwrap();
        match parse_element(&ctx, "e[1, 0]") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_element(&ctx, "e[w]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_element(&ctx, "3 e[1]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_element(&ctx, "e[1] e[2]"), Err(Error::Parse { .. })));
    }
}
