use super::product::stuffle_formal;
use crate::algebra::Composition;
use crate::error::{Error, Result};
use crate::qcore::QPoly;
use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

fn add_into<K: Ord>(map: &mut BTreeMap<K, QPoly>, k: K, c: QPoly) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// `Σ c_s(q) ζ[s]`, ordered lexicographically by composition.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZetaCombo {
    terms: BTreeMap<Composition, QPoly>,
}

impl ZetaCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(s: Composition) -> Self {
        Self::term(s, QPoly::one())
    }

    pub fn term(s: Composition, c: QPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(s, c);
        out
    }

    pub fn add_term(&mut self, s: Composition, c: QPoly) {
        add_into(&mut self.terms, s, c);
    }

    pub fn add(&mut self, o: &ZetaCombo) {
        for (s, c) in &o.terms {
            self.add_term(s.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &ZetaCombo, c: &QPoly) {
        for (s, a) in &o.terms {
            self.add_term(s.clone(), a * c);
        }
    }

    pub fn scaled(&self, c: &QPoly) -> ZetaCombo {
        let mut out = ZetaCombo::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &QPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &Composition) -> QPoly {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(Composition::is_admissible)
    }

    pub fn require_admissible(&self) -> Result<()> {
        match self.terms.keys().find(|s| !s.is_admissible()) {
            Some(s) => Err(Error::Admissibility(format!("combination holds ζ[{s}]"))),
            None => Ok(()),
        }
    }

    pub fn max_depth(&self) -> usize {
        self.terms.keys().map(Composition::depth).max().unwrap_or(0)
    }

    /// Prepends `part` to every composition.
    pub fn prepend(&self, part: u32) -> ZetaCombo {
        ZetaCombo {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (Composition::new(vec![part]).concat(s), c.clone()))
                .collect(),
        }
    }

    /// Concatenation extended bilinearly.
    pub fn concat(&self, o: &ZetaCombo) -> ZetaCombo {
        let mut out = ZetaCombo::zero();
        for (s, a) in &self.terms {
            for (t, b) in &o.terms {
                out.add_term(s.concat(t), a * b);
            }
        }
        out
    }

    /// Substitutes a rational `q`, as for the classical (q = 1) product.
    pub fn at_q(&self, q: &crate::qcore::Rational) -> ZetaCombo {
        let mut out = ZetaCombo::zero();
        for (s, c) in &self.terms {
            out.add_term(s.clone(), QPoly::constant(c.eval_rational(q)));
        }
        out
    }
}

impl fmt::Display for ZetaCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                if c.is_one() {
                    format!("ζ[{s}]")
                } else {
                    format!("({c})ζ[{s}]")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct ComboTerm {
    composition: Composition,
    coeff: QPoly,
}

impl Serialize for ZetaCombo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (comp, coeff) in &self.terms {
            seq.serialize_element(&ComboTerm {
                composition: comp.clone(),
                coeff: coeff.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ZetaCombo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<ComboTerm>::deserialize(d)?;
        let mut out = ZetaCombo::zero();
        for t in terms {
            out.add_term(t.composition, t.coeff);
        }
        Ok(out)
    }
}

/// `Σ c(q) ∏ ζ[s_i]`: polynomial in q-zeta values.
///
/// Keys are sorted factor lists without empty compositions; the empty key is
/// the constant term.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZetaPoly {
    terms: BTreeMap<Vec<Composition>, QPoly>,
}

impl ZetaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(QPoly::one())
    }

    pub fn constant(c: QPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(Vec::new(), c);
        out
    }

    /// `c ∏ ζ[f]` for the given factors.
    pub fn add_term(&mut self, mut factors: Vec<Composition>, c: QPoly) {
        factors.retain(|f| !f.is_empty());
        factors.sort();
        add_into(&mut self.terms, factors, c);
    }

    pub fn from_combo(c: &ZetaCombo) -> Self {
        let mut out = Self::zero();
        for (s, a) in c.terms() {
            out.add_term(vec![s.clone()], a.clone());
        }
        out
    }

    pub fn add(&mut self, o: &ZetaPoly) {
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &ZetaPoly, c: &QPoly) {
        for (k, a) in &o.terms {
            self.add_term(k.clone(), a * c);
        }
    }

    pub fn scaled(&self, c: &QPoly) -> ZetaPoly {
        let mut out = ZetaPoly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, o: &ZetaPoly) -> ZetaPoly {
        let mut out = ZetaPoly::zero();
        for (k1, a) in &self.terms {
            for (k2, b) in &o.terms {
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                out.add_term(k, a * b);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Composition>, &QPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest depth of any single factor.
    pub fn max_factor_depth(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(Composition::depth))
            .max()
            .unwrap_or(0)
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(Composition::is_admissible))
    }

    /// Multiplies out every product with the q-stuffle rule.
    pub fn flatten(&self) -> ZetaCombo {
        let mut out = ZetaCombo::zero();
        for (factors, c) in &self.terms {
            let mut acc = ZetaCombo::single(Composition::empty());
            for f in factors {
                let mut next = ZetaCombo::zero();
                for (s, a) in acc.terms() {
                    next.add_scaled(&stuffle_formal(s, f), a);
                }
                acc = next;
            }
            out.add_scaled(&acc, c);
        }
        out
    }
}

impl fmt::Display for ZetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let prod: String = k.iter().map(|s| format!("ζ[{s}]")).collect();
                match (c.is_one(), prod.is_empty()) {
                    (_, true) => format!("({c})"),
                    (true, false) => prod,
                    (false, false) => format!("({c}){prod}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut c = ZetaCombo::single([2, 2].into());
        c.add_term([3].into(), QPoly::one_minus_q_pow(1));
        let js = serde_json::to_string(&c).unwrap();
        assert_eq!(
            js,
            r#"[{"composition":[2,2],"coeff":"1"},{"composition":[3],"coeff":"1 - q"}]"#
        );
        let back: ZetaCombo = serde_json::from_str(&js).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn products_are_normalised() {
        let mut p = ZetaPoly::zero();
        p.add_term(vec![[3].into(), [2].into(), Composition::empty()], QPoly::one());
        p.add_term(vec![[2].into(), [3].into()], QPoly::one());
        assert_eq!(p.len(), 1);
        assert_eq!(p.to_string(), "(2)ζ[2]ζ[3]");
    }
}
