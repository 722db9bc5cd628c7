//! Derivations of `𝔥` and the automorphisms they exponentiate to.

use super::{Letter, Word, WordPoly};
use crate::qcore::Rational;
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;

/// Power series `Σ_{k≤M} P_k t^k` with word-polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamWordSeries {
    coeffs: Vec<WordPoly>,
}

impl ParamWordSeries {
    pub fn zero(m: usize) -> Self {
        ParamWordSeries {
            coeffs: vec![WordPoly::zero(); m + 1],
        }
    }

    /// `p` as a constant series truncated at `t^M`.
    pub fn constant(p: &WordPoly, m: usize) -> Self {
        let mut s = Self::zero(m);
        s.coeffs[0] = p.clone();
        s
    }

    pub fn from_coeffs(coeffs: Vec<WordPoly>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        ParamWordSeries { coeffs }
    }

    /// Highest retained power `M`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &WordPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[WordPoly] {
        &self.coeffs
    }

    pub fn add(&self, o: &ParamWordSeries) -> ParamWordSeries {
        let m = self.order().min(o.order());
        ParamWordSeries {
            coeffs: (0..=m).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, o: &ParamWordSeries) -> ParamWordSeries {
        let m = self.order().min(o.order());
        ParamWordSeries {
            coeffs: (0..=m).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> ParamWordSeries {
        ParamWordSeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, o: &ParamWordSeries) -> ParamWordSeries {
        let m = self.order().min(o.order());
        let mut out = Self::zero(m);
        for i in 0..=m {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=m - i {
                if !o.coeffs[j].is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
                }
            }
        }
        out
    }

    pub fn tau(&self) -> ParamWordSeries {
        ParamWordSeries {
            coeffs: self.coeffs.iter().map(WordPoly::tau).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(WordPoly::is_zero)
    }
}

impl fmt::Display for ParamWordSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, p) in self.coeffs.iter().enumerate() {
            if !p.is_zero() {
                parts.push(format!("t^{k}·({p})"));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(t^{})", parts.join(" + "), self.order() + 1)
    }
}

/// Leibniz extension of the generator images `x ↦ dx`, `y ↦ dy`.
pub fn apply_derivation(p: &WordPoly, dx: &WordPoly, dy: &WordPoly) -> WordPoly {
    let mut out = WordPoly::zero();
    for (w, c) in p.terms() {
        let letters = w.letters();
        for i in 0..letters.len() {
            let image = match letters[i] {
                Letter::X => dx,
                Letter::Y => dy,
            };
            if image.is_zero() {
                continue;
            }
            let left = WordPoly::from_word(Word::new(letters[..i].to_vec()));
            let right = WordPoly::from_word(Word::new(letters[i + 1..].to_vec()));
            let piece = &(&left * image) * &right;
            out = &out + &piece.scale(c);
        }
    }
    out
}

fn x_pow(n: usize) -> Word {
    Word::new(vec![Letter::X; n])
}

/// `D_n`: `x ↦ 0`, `y ↦ xⁿy`; with `conjugated`, `τ D_n τ` instead.
pub fn derivation_d(n: usize, p: &WordPoly, conjugated: bool) -> WordPoly {
    let dx = WordPoly::zero();
    let dy = WordPoly::from_word(x_pow(n).concat(&Word::y()));
    if conjugated {
        apply_derivation(&p.tau(), &dx, &dy).tau()
    } else {
        apply_derivation(p, &dx, &dy)
    }
}

/// `x(x+y)^{n−1}y`.
fn partial_image(n: usize) -> WordPoly {
    let x = WordPoly::from_word(Word::x());
    let y = WordPoly::from_word(Word::y());
    &(&x * &WordPoly::x_plus_y_pow(n - 1)) * &y
}

/// `∂_n` with `x ↦ x(x+y)^{n−1}y` and `y ↦ sign · x(x+y)^{n−1}y`.
///
/// Only `sign = −1` is antisymmetric; the other sign is kept so the choice
/// can be tested against the vanishing of `ζ̂[∂_n w]`.
pub fn derivation_partial_with_y_sign(n: usize, p: &WordPoly, sign: i64) -> WordPoly {
    assert!(n >= 1, "∂_n needs n ≥ 1");
    let dx = partial_image(n);
    let dy = dx.scale(&Rational::from_integer(BigInt::from(sign)));
    apply_derivation(p, &dx, &dy)
}

/// The antisymmetric derivation `∂_n`, so `∂_n(x + y) = 0`.
pub fn derivation_partial(n: usize, p: &WordPoly) -> WordPoly {
    derivation_partial_with_y_sign(n, p, -1)
}

/// Substitutes series images for `x` and `y` into every word of `p`.
fn substitute(p: &WordPoly, sx: &ParamWordSeries, sy: &ParamWordSeries) -> ParamWordSeries {
    let m = sx.order().min(sy.order());
    let mut out = ParamWordSeries::zero(m);
    for (w, c) in p.terms() {
        let mut acc = ParamWordSeries::constant(&WordPoly::one(), m);
        for l in w.letters() {
            acc = acc.mul(match l {
                Letter::X => sx,
                Letter::Y => sy,
            });
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// `σ_θ`: `x ↦ x`, `y ↦ Σ_{j≤M} θ^j x^j y`, truncated at `θ^M`.
pub fn sigma_theta(p: &WordPoly, m: usize) -> ParamWordSeries {
    let sx = ParamWordSeries::constant(&WordPoly::from_word(Word::x()), m);
    let sy = ParamWordSeries::from_coeffs(
        (0..=m)
            .map(|j| WordPoly::from_word(x_pow(j).concat(&Word::y())))
            .collect(),
    );
    substitute(p, &sx, &sy)
}

/// `exp(Σ_n c_n t^n Δ_n)` applied to a series, truncated at its order.
///
/// `component(n, P)` evaluates `Δ_n(P)`; `weights[n−1]` is `c_n`.
pub fn exp_derivation<F>(component: F, weights: &[Rational], p: &ParamWordSeries) -> ParamWordSeries
where
    F: Fn(usize, &WordPoly) -> WordPoly,
{
    let m = p.order();
    let delta = |s: &ParamWordSeries| {
        let mut out = ParamWordSeries::zero(m);
        for i in 1..=m {
            let mut acc = WordPoly::zero();
            for n in 1..=i.min(weights.len()) {
                let src = s.coeff(i - n);
                if !src.is_zero() {
                    acc = &acc + &component(n, src).scale(&weights[n - 1]);
                }
            }
            out.coeffs[i] = acc;
        }
        out
    };
    let mut result = p.clone();
    let mut term = p.clone();
    for k in 1..=m {
        term = delta(&term).scale(&Rational::new(BigInt::one(), BigInt::from(k)));
        if term.is_zero() {
            break;
        }
        result = result.add(&term);
    }
    result
}

fn harmonic_weights(m: usize, sign: i64) -> Vec<Rational> {
    (1..=m)
        .map(|n| Rational::new(BigInt::from(sign), BigInt::from(n)))
        .collect()
}

/// `σ^{±1} = exp(±Σ t^n D_n/n)` applied to a series.
pub fn sigma_via_exp(p: &ParamWordSeries, inverse: bool) -> ParamWordSeries {
    let w = harmonic_weights(p.order(), if inverse { -1 } else { 1 });
    exp_derivation(|n, q| derivation_d(n, q, false), &w, p)
}

/// Outcome of comparing `exp(Σ t^n ∂_n/n)` with `σ̄σ⁻¹` on `x` and `y`.
#[derive(Clone, Debug)]
pub struct ExpPartialReport {
    pub order: usize,
    pub equal: bool,
    pub lhs: [ParamWordSeries; 2],
    pub rhs: [ParamWordSeries; 2],
}

impl ExpPartialReport {
    /// Human-readable difference, empty when equal.
    pub fn discrepancy(&self) -> String {
        let mut out = String::new();
        for (name, i) in [("x", 0), ("y", 1)] {
            let d = self.lhs[i].sub(&self.rhs[i]);
            if !d.is_zero() {
                out.push_str(&format!("{name}: {d}\n"));
            }
        }
        out
    }
}

/// Checks `exp(Σ t^n ∂_n/n) = σ̄σ⁻¹` on the generators modulo `t^{M+1}`.
pub fn check_exp_partial(m: usize) -> ExpPartialReport {
    let weights = harmonic_weights(m, 1);
    let gens = [WordPoly::from_word(Word::x()), WordPoly::from_word(Word::y())];
    let side = |g: &WordPoly| {
        let g = ParamWordSeries::constant(g, m);
        let lhs = exp_derivation(derivation_partial, &weights, &g);
        let inv = sigma_via_exp(&g, true);
        let rhs = sigma_via_exp(&inv.tau(), false).tau();
        (lhs, rhs)
    };
    let (lx, rx) = side(&gens[0]);
    let (ly, ry) = side(&gens[1]);
    ExpPartialReport {
        order: m,
        equal: lx == rx && ly == ry,
        lhs: [lx, ly],
        rhs: [rx, ry],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wp(s: &str) -> WordPoly {
        WordPoly::from_word(s.parse().unwrap())
    }

    #[test]
    fn d_examples() {
        assert_eq!(derivation_d(1, &wp("xy"), false), wp("xxy"));
        assert_eq!(derivation_d(1, &wp("y"), false), wp("xy"));
        assert_eq!(derivation_d(1, &wp("xy"), true), wp("xyy"));
    }

    #[test]
    fn partial_examples() {
        assert_eq!(derivation_partial(1, &wp("x")), wp("xy"));
        assert_eq!(derivation_partial(1, &wp("xy")), &wp("xyy") - &wp("xxy"));
        assert_eq!(derivation_partial(2, &wp("x")), &wp("xxy") + &wp("xyy"));
    }

    #[test]
    fn partial_is_antisymmetric() {
        for n in 1..=3 {
            for w in ["xy", "xxyxy", "yxxy", "x"] {
                let p = wp(w);
                let conj = derivation_partial(n, &p.tau()).tau();
                assert_eq!(conj, -&derivation_partial(n, &p), "n={n} w={w}");
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let s = sigma_theta(&wp("xy"), 1);
        assert_eq!(s.coeff(0), &wp("xy"));
        assert_eq!(s.coeff(1), &wp("xxy"));
        let s = sigma_theta(&wp("xyy"), 1);
        assert_eq!(s.coeff(1), &(&wp("xxyy") + &wp("xyxy")));
        assert_eq!(sigma_theta(&wp("x"), 3), ParamWordSeries::constant(&wp("x"), 3));
    }

    #[test]
    fn sigma_closed_form_matches_exponential() {
        for w in ["xy", "xyy", "yxy", "xxy"] {
            let p = wp(w);
            let via_exp = sigma_via_exp(&ParamWordSeries::constant(&p, 4), false);
            assert_eq!(via_exp, sigma_theta(&p, 4), "{w}");
        }
    }

    #[test]
    fn exp_partial_low_orders() {
        for m in 0..=3 {
            let r = check_exp_partial(m);
            assert!(r.equal, "M={m}: {}", r.discrepancy());
        }
        let r = check_exp_partial(1);
        assert_eq!(r.lhs[0].coeff(1), &wp("xy"));
    }
}
