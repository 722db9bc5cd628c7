use super::product::stuffle_formal;
use super::reduce::merged_part;
use super::{ZetaCombo, ZetaPoly};
use crate::algebra::Composition;
use crate::error::{Error, Result};
use crate::qcore::{QPoly, Rational};
use std::collections::HashMap;
use std::fmt;

/// Polynomial in a formal symbol `X` standing for the divergent `ζ[1]`,
/// with coefficients built from admissible values only.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RegPoly {
    coeffs: Vec<ZetaPoly>,
}

impl RegPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(ZetaPoly::one())
    }

    pub fn from_poly(p: ZetaPoly) -> Self {
        let mut out = RegPoly { coeffs: vec![p] };
        out.trim();
        out
    }

    /// The symbol `X` itself.
    pub fn x() -> Self {
        RegPoly {
            coeffs: vec![ZetaPoly::zero(), ZetaPoly::one()],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(ZetaPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `X^j`.
    pub fn coeff(&self, j: usize) -> ZetaPoly {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn add_scaled(&mut self, o: &RegPoly, c: &QPoly) {
        if self.coeffs.len() < o.coeffs.len() {
            self.coeffs.resize(o.coeffs.len(), ZetaPoly::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            a.add_scaled(b, c);
        }
        self.trim();
    }

    pub fn mul(&self, o: &RegPoly) -> RegPoly {
        if self.is_zero() || o.is_zero() {
            return RegPoly::zero();
        }
        let mut coeffs = vec![ZetaPoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j].add(&a.mul(b));
            }
        }
        let mut out = RegPoly { coeffs };
        out.trim();
        out
    }
}

impl fmt::Display for RegPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("{c}"),
                1 => format!("[{c}]X"),
                _ => format!("[{c}]X^{j}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

type Memo = HashMap<Composition, RegPoly>;

fn reg_memo(w: &Composition, memo: &mut Memo) -> Result<RegPoly> {
    if w.is_admissible() {
        return Ok(RegPoly::from_poly(ZetaPoly::from_combo(&ZetaCombo::single(w.clone()))));
    }
    if let Some(r) = memo.get(w) {
        return Ok(r.clone());
    }
    let parts = w.parts();
    let r = parts.iter().take_while(|&&p| p == 1).count();
    let rest = Composition::new(parts[1..].to_vec());
    let out = if parts.len() == 1 {
        RegPoly::x()
    } else {
        // [1] * [1^{r−1}, v] = r·[1^r, v] + terms with fewer leading ones.
        let prod = stuffle_formal(&Composition::new(vec![1]), &rest);
        let c = prod.coeff(w);
        if c != QPoly::from_int(r as i64) {
            return Err(Error::Unsupported(format!(
                "coefficient {c} of ζ[{w}] in ζ[1]ζ[{rest}]"
            )));
        }
        let mut acc = RegPoly::x().mul(&reg_memo(&rest, memo)?);
        for (u, cu) in prod.terms() {
            if u != w {
                let ru = reg_memo(u, memo)?;
                acc.add_scaled(&ru, &(-cu));
            }
        }
        let mut scaled = RegPoly::zero();
        scaled.add_scaled(&acc, &QPoly::constant(Rational::new(1.into(), (r as i64).into())));
        scaled
    };
    memo.insert(w.clone(), out.clone());
    Ok(out)
}

/// Stuffle-regularized value of `ζ[w]` for any composition: a polynomial in
/// `X = ζ[1]` whose coefficients involve admissible values only.
pub fn regularize(w: &Composition) -> Result<RegPoly> {
    reg_memo(w, &mut Memo::new())
}

fn regularize_combo(c: &ZetaCombo, memo: &mut Memo) -> Result<RegPoly> {
    let mut out = RegPoly::zero();
    for (s, a) in c.terms() {
        out.add_scaled(&reg_memo(s, memo)?, a);
    }
    Ok(out)
}

/// `Σ_{n_1 ≤ … ≤ n_L}` of the weights of `parts`, written with strict
/// chains: each run of equal indices collapses to one merged part, and the
/// largest index comes first.
fn weak_chain(parts: &[u32]) -> ZetaCombo {
    let l = parts.len();
    let mut out = ZetaCombo::zero();
    for eq in 0u32..(1 << (l - 1)) {
        let mut groups: Vec<(u32, u32)> = Vec::new();
        for (i, &p) in parts.iter().enumerate() {
            if i > 0 && eq >> (i - 1) & 1 == 1 {
                let g = groups.last_mut().unwrap();
                g.0 += p;
                g.1 += 1;
            } else {
                groups.push((p, 1));
            }
        }
        let mut acc = ZetaCombo::single(Composition::empty());
        for &(p, g) in groups.iter().rev() {
            acc = acc.concat(&merged_part(p, g));
        }
        out.add(&acc);
    }
    out
}

/// `ζ[s] + (−1)^m ζ[reverse s]` as a polynomial in values of depth `< m`.
///
/// Inclusion-exclusion over the sets `{n_k ≤ n_{k+1}}` splits the indices
/// into independent weak chains. Chains that begin with a part 1 diverge on
/// their own; they are regularized and the `X`-dependence cancels in the sum.
pub fn parity_reduce(s: &Composition) -> Result<ZetaPoly> {
    let m = s.depth();
    if m < 2 {
        return Err(Error::Admissibility(format!("parity reduction needs depth ≥ 2, got ({s})")));
    }
    if !s.is_admissible() || !s.reversed().is_admissible() {
        return Err(Error::Admissibility(format!(
            "parity reduction needs first and last parts > 1, got ({s})"
        )));
    }
    if m > 8 {
        return Err(Error::Resource(format!("parity reduction of depth {m}")));
    }
    let parts = s.parts();
    let mut memo = Memo::new();
    let mut chains: HashMap<(usize, usize), RegPoly> = HashMap::new();
    let mut total = RegPoly::zero();
    let full = (1u32 << (m - 1)) - 1;
    for t in 0..full {
        let mut value = RegPoly::one();
        let mut start = 0;
        for end in 1..=m {
            if end == m || t >> (end - 1) & 1 == 0 {
                let chain = match chains.get(&(start, end)) {
                    Some(c) => c.clone(),
                    None => {
                        let c = regularize_combo(&weak_chain(&parts[start..end]), &mut memo)?;
                        chains.insert((start, end), c.clone());
                        c
                    }
                };
                value = value.mul(&chain);
                start = end;
            }
        }
        let sign = if t.count_ones() % 2 == 0 { 1 } else { -1 };
        total.add_scaled(&value, &QPoly::from_int(sign));
    }
    let mut lower = weak_chain(parts);
    lower.add_term(s.reversed(), QPoly::from_int(-1));
    let sign = if (m - 1) % 2 == 0 { 1 } else { -1 };
    total.add_scaled(&regularize_combo(&lower, &mut memo)?, &QPoly::from_int(sign));

    for j in 1..=total.degree().unwrap_or(0) {
        if !total.coeff(j).flatten().is_zero() {
            return Err(Error::Unsupported(format!(
                "divergent part X^{j} of the reduction of ({s}) did not cancel"
            )));
        }
    }
    Ok(total.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lhs(s: &Composition) -> ZetaCombo {
        let mut c = ZetaCombo::single(s.clone());
        let sign = if s.depth() % 2 == 0 { 1 } else { -1 };
        c.add_term(s.reversed(), QPoly::from_int(sign));
        c
    }

    #[test]
    fn depth_two_matches_stuffle() {
        let s = Composition::from([2, 2]);
        let r = parity_reduce(&s).unwrap();
        assert_eq!(r.to_string(), "ζ[2]ζ[2] + (-1 + q)ζ[3] + (-1)ζ[4]");
        assert_eq!(r.flatten(), lhs(&s));
    }

    #[test]
    fn formal_identity_and_depth_drop() {
        for s in [vec![3, 2], vec![2, 1, 2], vec![3, 1, 1, 2], vec![2, 3, 1, 4], vec![2, 1, 1, 1, 3]] {
            let s = Composition::new(s);
            let r = parity_reduce(&s).unwrap();
            assert!(r.is_admissible());
            assert!(r.max_factor_depth() < s.depth(), "{s}: {r}");
            assert_eq!(r.flatten(), lhs(&s), "{s}");
        }
    }

    #[test]
    fn regularized_ones() {
        assert_eq!(regularize(&[1].into()).unwrap(), RegPoly::x());
        // ζ[1,2] = X ζ[2] − ζ[2,1] − ζ[3] − (1−q)ζ[2]
        let r = regularize(&[1, 2].into()).unwrap();
        assert_eq!(r.coeff(1).to_string(), "ζ[2]");
        assert_eq!(r.coeff(0).to_string(), "(-1 + q)ζ[2] + (-1)ζ[2,1] + (-1)ζ[3]");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parity_reduce(&[2].into()).is_err());
        assert!(parity_reduce(&[2, 1].into()).is_err());
    }
}
