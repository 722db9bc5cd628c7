//! Text syntax for compositions, words and block forms.
//!
//! - compositions: `3,1,2`, with `{s}^m` for `m` copies of `s`
//!   (`3,{1}^4` is `3,1,1,1,1`); the empty string is the empty composition;
//! - words: strings over `x`, `y`;
//! - block forms: `a:b` pairs, comma separated (`1:1,0:2`).

use crate::algebra::{BlockForm, Composition, Letter, Word};
use crate::error::{Error, Result};

fn parse_part(tok: &str) -> Result<u32> {
    let t = tok.trim();
    let v: u32 = t
        .parse()
        .map_err(|_| Error::Parse(format!("bad composition part '{t}'")))?;
    if v == 0 {
        return Err(Error::Parse(format!("composition part '{t}' must be positive")));
    }
    Ok(v)
}

pub fn parse_composition(src: &str) -> Result<Composition> {
    let s = src.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    let mut parts = Vec::new();
    if s.trim().is_empty() {
        return Ok(Composition::empty());
    }
    for tok in s.split(',') {
        let tok = tok.trim();
        if let Some(rest) = tok.strip_prefix('{') {
            let (inner, reps) = rest
                .split_once("}^")
                .ok_or_else(|| Error::Parse(format!("bad repetition '{tok}'")))?;
            let value = parse_part(inner)?;
            let reps: usize = reps
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad repetition count in '{tok}'")))?;
            parts.extend(std::iter::repeat_n(value, reps));
        } else {
            parts.push(parse_part(tok)?);
        }
    }
    Composition::try_new(parts)
}

pub fn parse_word(src: &str) -> Result<Word> {
    let s = src.trim();
    if s == "1" {
        return Ok(Word::empty());
    }
    if s.is_empty() {
        return Err(Error::Parse("empty word (write 1 for the unit)".into()));
    }
    s.chars()
        .map(|c| match c {
            'x' => Ok(Letter::X),
            'y' => Ok(Letter::Y),
            other => Err(Error::Parse(format!("bad letter '{other}' in word '{s}'"))),
        })
        .collect::<Result<Vec<_>>>()
        .map(Word::new)
}

pub fn parse_blocks(src: &str) -> Result<BlockForm> {
    let mut blocks = Vec::new();
    for tok in src.split(',') {
        let tok = tok.trim();
        let (a, b) = tok
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad block '{tok}', expected a:b")))?;
        let a = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad block '{tok}'")))?;
        let b = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad block '{tok}'")))?;
        blocks.push((a, b));
    }
    if blocks.is_empty() {
        return Err(Error::Parse("no blocks given".into()));
    }
    Ok(BlockForm::new(blocks))
}

/// Comma-separated decimals.
pub fn parse_f64_list(src: &str) -> Result<Vec<f64>> {
    src.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number '{}'", t.trim())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_shorthand() {
        assert_eq!(parse_composition("3,{1}^4").unwrap(), [3, 1, 1, 1, 1].into());
        assert_eq!(parse_composition("{2}^3").unwrap(), [2, 2, 2].into());
        assert_eq!(parse_composition("").unwrap(), Composition::empty());
    }

    #[test]
    fn parse_errors_name_the_token() {
        let e = parse_composition("2,a").unwrap_err();
        assert!(e.to_string().contains("'a'"));
        assert!(parse_composition("2,0").is_err());
        let e = parse_word("xzy").unwrap_err();
        assert!(e.to_string().contains("'z'"));
    }

    #[test]
    fn blocks() {
        assert_eq!(parse_blocks("1:1, 0:2").unwrap().blocks, vec![(1, 1), (0, 2)]);
        assert!(parse_blocks("1").is_err());
    }
}
