use super::Composition;
use crate::error::{Error, Result};
use crate::qcore::Rational;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

/// Monomial of `𝔥`; the empty word is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn x() -> Self {
        Word(vec![Letter::X])
    }

    pub fn y() -> Self {
        Word(vec![Letter::Y])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// Empty, or in `x𝔥y`.
    pub fn is_admissible(&self) -> bool {
        self.0.is_empty() || (self.0[0] == Letter::X && self.0[self.0.len() - 1] == Letter::Y)
    }

    /// Reverse and swap `x ↔ y`.
    pub fn tau(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.swapped()).collect())
    }

    /// All admissible words of degree exactly `d`.
    pub fn admissible_of_degree(d: usize) -> Vec<Word> {
        if d == 0 {
            return vec![Word::empty()];
        }
        if d == 1 {
            return Vec::new();
        }
        (0..1u64 << (d - 2))
            .map(|bits| {
                let mut v = vec![Letter::X];
                for i in 0..d - 2 {
                    v.push(if bits >> i & 1 == 1 { Letter::Y } else { Letter::X });
                }
                v.push(Letter::Y);
                Word(v)
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_word(s)
    }
}

/// `(s₁,…,s_m) ↦ x^{s₁−1}y ⋯ x^{s_m−1}y`.
pub fn word_of_composition(s: &Composition) -> Result<Word> {
    s.require_admissible()?;
    let mut v = Vec::with_capacity(s.weight() as usize);
    for &p in s.parts() {
        v.extend(std::iter::repeat_n(Letter::X, p as usize - 1));
        v.push(Letter::Y);
    }
    Ok(Word(v))
}

/// Inverse of [`word_of_composition`] on `x𝔥y ∪ {1}`.
pub fn composition_of_word(w: &Word) -> Result<Composition> {
    if !w.is_admissible() {
        return Err(Error::Admissibility(format!("word {w} is not in x𝔥y")));
    }
    Ok(composition_of_any_word(w))
}

/// Reads a word ending in `y` as a composition without the `x`-prefix check.
pub(crate) fn composition_of_any_word(w: &Word) -> Composition {
    let mut parts = Vec::new();
    let mut run = 0u32;
    for l in w.letters() {
        match l {
            Letter::X => run += 1,
            Letter::Y => {
                parts.push(run + 1);
                run = 0;
            }
        }
    }
    Composition::new(parts)
}

/// Duality on admissible compositions, through `τ` on words.
pub fn dual_composition(s: &Composition) -> Result<Composition> {
    if s.is_empty() {
        return Err(Error::Admissibility("empty composition has no dual".into()));
    }
    composition_of_word(&word_of_composition(s)?.tau())
}

/// Finite rational combination of words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordPoly {
    terms: BTreeMap<Word, Rational>,
}

impl WordPoly {
    pub fn zero() -> Self {
        WordPoly::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_term(w, Rational::one())
    }

    pub fn from_term(w: Word, c: Rational) -> Self {
        let mut p = WordPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> WordPoly {
        if c.is_zero() {
            return WordPoly::zero();
        }
        WordPoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Every monomial empty or in `x𝔥y`.
    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(Word::is_admissible)
    }

    /// Terms grouped by degree, lowest first.
    pub fn by_degree(&self) -> BTreeMap<usize, WordPoly> {
        let mut out: BTreeMap<usize, WordPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.len()).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn tau(&self) -> WordPoly {
        tau(self)
    }

    /// `(x + y)^n`.
    pub fn x_plus_y_pow(n: usize) -> WordPoly {
        let xy = &WordPoly::from_word(Word::x()) + &WordPoly::from_word(Word::y());
        (0..n).fold(WordPoly::one(), |acc, _| &acc * &xy)
    }
}

/// Linear extension of reverse-and-swap; an anti-automorphism and involution.
pub fn tau(p: &WordPoly) -> WordPoly {
    WordPoly {
        terms: p.terms.iter().map(|(w, c)| (w.tau(), c.clone())).collect(),
    }
}

impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({mag}){w}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Add<&WordPoly> for &WordPoly {
    type Output = WordPoly;
    fn add(self, o: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&WordPoly> for &WordPoly {
    type Output = WordPoly;
    fn sub(self, o: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &WordPoly {
    type Output = WordPoly;
    fn neg(self) -> WordPoly {
        self.scale(&-Rational::one())
    }
}

/// Concatenation product.
impl Mul<&WordPoly> for &WordPoly {
    type Output = WordPoly;
    fn mul(self, o: &WordPoly) -> WordPoly {
        let mut out = WordPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn composition_words() {
        assert_eq!(word_of_composition(&[2].into()).unwrap(), w("xy"));
        assert_eq!(word_of_composition(&[3, 1].into()).unwrap(), w("xxyy"));
        assert_eq!(word_of_composition(&[2, 1, 1].into()).unwrap(), w("xyyy"));
        assert_eq!(composition_of_word(&w("xyxy")).unwrap(), [2, 2].into());
        assert!(composition_of_word(&w("yx")).is_err());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(w("xy").tau(), w("xy"));
        assert_eq!(w("xxy").tau(), w("xyy"));
        assert_eq!(w("xxyy").tau(), w("xxyy"));
    }

    #[test]
    fn duals() {
        let d = |v: Vec<u32>| dual_composition(&Composition::new(v)).unwrap();
        assert_eq!(d(vec![2]), [2].into());
        assert_eq!(d(vec![3]), [2, 1].into());
        assert_eq!(d(vec![4]), [2, 1, 1].into());
        assert_eq!(d(vec![3, 1]), [3, 1].into());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = WordPoly::from_word(w("xy"));
        p.add_term(w("xxy"), Rational::one());
        p.add_term(w("xy"), -Rational::one());
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&w("xxy")), Rational::one());
    }

    #[test]
    fn admissible_words_by_degree() {
        assert_eq!(Word::admissible_of_degree(2), vec![w("xy")]);
        assert_eq!(Word::admissible_of_degree(5).len(), 8);
    }
}
