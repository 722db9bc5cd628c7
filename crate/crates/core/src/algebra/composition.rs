use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Argument list `(s₁,…,s_m)` of a multiple q-zeta value; all parts ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    /// Panics on a zero part; use [`Composition::try_new`] for untrusted input.
    pub fn new(parts: Vec<u32>) -> Self {
        Self::try_new(parts).expect("composition parts must be positive")
    }

    pub fn try_new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parameter(format!(
                "composition parts must be positive: {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Empty, or first part at least 2.
    pub fn is_admissible(&self) -> bool {
        self.0.first().is_none_or(|&s| s >= 2)
    }

    pub fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::Admissibility(format!("({self}) starts with 1")))
        }
    }

    pub fn reversed(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// `(s_{j+1},…,s_m,s₁,…,s_j)`.
    pub fn rotated(&self, j: usize) -> Self {
        let mut v = self.0.clone();
        v.rotate_left(j % self.0.len().max(1));
        Composition(v)
    }

    pub fn concat(&self, o: &Composition) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Composition(v)
    }

    /// All admissible compositions of weight exactly `w`.
    pub fn admissible_of_weight(w: u32) -> Vec<Composition> {
        if w < 2 {
            return if w == 0 { vec![Composition::empty()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in 2..=w {
            for rest in Self::all_of_weight(w - first) {
                let mut v = vec![first];
                v.extend_from_slice(&rest.0);
                out.push(Composition(v));
            }
        }
        out.sort();
        out
    }

    /// All compositions (any first part) of weight exactly `w`.
    pub fn all_of_weight(w: u32) -> Vec<Composition> {
        if w == 0 {
            return vec![Composition::empty()];
        }
        let mut out = Vec::new();
        for first in 1..=w {
            for rest in Self::all_of_weight(w - first) {
                let mut v = vec![first];
                v.extend_from_slice(&rest.0);
                out.push(Composition(v));
            }
        }
        out
    }
}

impl From<Vec<u32>> for Composition {
    fn from(v: Vec<u32>) -> Self {
        Composition::new(v)
    }
}

impl<const N: usize> From<[u32; N]> for Composition {
    fn from(v: [u32; N]) -> Self {
        Composition::new(v.to_vec())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_composition(s)
    }
}

/// Composition written as blocks `(a_j, b_j)` ↦ `Cat_j {a_j+2, {1}^{b_j}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockForm {
    pub blocks: Vec<(u32, u32)>,
}

impl BlockForm {
    pub fn new(blocks: Vec<(u32, u32)>) -> Self {
        BlockForm { blocks }
    }

    pub fn to_composition(&self) -> Composition {
        let mut v = Vec::new();
        for &(a, b) in &self.blocks {
            v.push(a + 2);
            v.extend(std::iter::repeat_n(1, b as usize));
        }
        Composition(v)
    }

    /// Splits an admissible composition at every part ≥ 2.
    pub fn from_composition(s: &Composition) -> Result<Self> {
        s.require_admissible()?;
        let mut blocks: Vec<(u32, u32)> = Vec::new();
        for &p in s.parts() {
            if p >= 2 {
                blocks.push((p - 2, 0));
            } else {
                blocks.last_mut().expect("admissible").1 += 1;
            }
        }
        Ok(BlockForm { blocks })
    }

    /// `(a_j, b_j) ↦ (b_{n−j+1}, a_{n−j+1})`.
    pub fn dual(&self) -> Self {
        BlockForm {
            blocks: self.blocks.iter().rev().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.blocks.iter().map(|&(a, b)| a + b + 2).sum()
    }

    /// All block forms of total weight exactly `w`.
    pub fn all_of_weight(w: u32) -> Vec<BlockForm> {
        Composition::admissible_of_weight(w)
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| Self::from_composition(s).expect("admissible"))
            .collect()
    }
}

impl fmt::Display for BlockForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|(a, b)| format!("{a}:{b}")).collect();
        f.write_str(&parts.join(","))
    }
}
