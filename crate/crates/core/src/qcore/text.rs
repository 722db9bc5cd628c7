//! Text form shared by [`QPoly`](super::QPoly) and [`QSeries`](super::QSeries).
//!
//! Terms are written `c q^e` with the coefficient glued to the monomial:
//! `q + q^2 - q^3 + 2q^4 - (1/2)q^5 + O(q^6)`.

use super::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

fn monomial(e: usize) -> String {
    match e {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    }
}

fn magnitude(c: &Rational, e: usize) -> String {
    let a = c.abs();
    let mono = monomial(e);
    if e == 0 {
        return a.to_string();
    }
    if a.is_one() {
        mono
    } else if a.is_integer() {
        format!("{a}{mono}")
    } else {
        format!("({a}){mono}")
    }
}

/// Writes nonzero `(exponent, coefficient)` pairs in increasing exponent order.
pub(crate) fn format_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (usize, &'a Rational)>,
{
    let mut out = String::new();
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&magnitude(c, e));
    }
    out
}

/// Parsed form: coefficients by exponent plus an optional `O(q^Q)` order.
pub(crate) struct ParsedTerms {
    pub coeffs: BTreeMap<usize, Rational>,
    pub order: Option<usize>,
}

fn parse_rational(tok: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad coefficient '{tok}'"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(tok.trim().parse().map_err(|_| bad())?)),
    }
}

fn parse_exponent(rest: &str, whole: &str) -> Result<usize> {
    let rest = rest.trim();
    if rest.is_empty() {
        return Ok(1);
    }
    let digits = rest
        .strip_prefix('^')
        .ok_or_else(|| Error::Parse(format!("bad monomial '{whole}'")))?;
    digits
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad exponent in '{whole}'")))
}

fn parse_term(term: &str) -> Result<(usize, Rational)> {
    let t = term.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coef, rest) = if let Some(inner) = t.strip_prefix('(') {
        let close = inner
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in '{t}'")))?;
        (parse_rational(&inner[..close])?, inner[close + 1..].trim())
    } else {
        let split = t.find('q').unwrap_or(t.len());
        let head = t[..split].trim().trim_end_matches('*').trim();
        let c = if head.is_empty() {
            Rational::one()
        } else {
            parse_rational(head)?
        };
        (c, t[split..].trim())
    };
    let rest = rest.trim_start_matches('*').trim();
    if rest.is_empty() {
        return Ok((0, coef));
    }
    let after_q = rest
        .strip_prefix('q')
        .ok_or_else(|| Error::Parse(format!("unexpected token '{rest}'")))?;
    Ok((parse_exponent(after_q, t)?, coef))
}

/// Parses a sum of terms in `q`, optionally ending in `O(q^Q)`.
pub(crate) fn parse_terms(src: &str) -> Result<ParsedTerms> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let prev_is_caret = cur.ends_with('^');
                if prev_is_caret {
                    return Err(Error::Parse(format!("signed exponent at offset {i}")));
                }
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if i != 0 {
                    return Err(Error::Parse(format!("dangling sign at offset {i}")));
                }
                neg = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced parentheses".into()));
    }
    if cur.is_empty() {
        return Err(Error::Parse("trailing sign".into()));
    }
    pieces.push((neg, cur));

    let mut coeffs: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut order = None;
    for (neg, piece) in pieces {
        if let Some(inner) = piece.strip_prefix("O(").and_then(|p| p.strip_suffix(')')) {
            if neg || order.is_some() {
                return Err(Error::Parse(format!("misplaced order term '{piece}'")));
            }
            let after_q = inner
                .strip_prefix('q')
                .ok_or_else(|| Error::Parse(format!("bad order term '{piece}'")))?;
            order = Some(parse_exponent(after_q, &piece)?);
            continue;
        }
        if order.is_some() {
            return Err(Error::Parse("terms after O(q^Q)".into()));
        }
        let (e, c) = parse_term(&piece)?;
        let c = if neg { -c } else { c };
        let slot = coeffs.entry(e).or_insert_with(Rational::zero);
        *slot += c;
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(ParsedTerms { coeffs, order })
}
