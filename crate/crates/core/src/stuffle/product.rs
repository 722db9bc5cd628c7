use super::ZetaCombo;
use crate::algebra::Composition;
use crate::error::{Error, Result};
use crate::qcore::QPoly;
use std::collections::HashMap;

/// Pair of order-preserving injections `φ: ⟨m⟩ → ⟨r⟩`, `ψ: ⟨n⟩ → ⟨r⟩`
/// whose images cover `⟨r⟩`. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stuffle {
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
    pub r: usize,
}

impl Stuffle {
    /// Positions hit by both injections.
    pub fn collisions(&self) -> Vec<usize> {
        self.phi
            .iter()
            .filter(|k| self.psi.contains(k))
            .copied()
            .collect()
    }
}

/// All stuffles of `⟨m⟩` and `⟨n⟩`, grouped by increasing `r`.
///
/// Each result position takes the next index of the first list, of the
/// second, or of both; every stuffle arises from exactly one such sequence.
pub fn enumerate_stuffles(m: usize, n: usize) -> Vec<Stuffle> {
    fn go(i: usize, j: usize, m: usize, n: usize, cur: &mut Stuffle, out: &mut Vec<Stuffle>) {
        if i == m && j == n {
            out.push(cur.clone());
            return;
        }
        let pos = cur.r + 1;
        let step = |di: usize, dj: usize, cur: &mut Stuffle, out: &mut Vec<Stuffle>| {
            cur.r += 1;
            if di == 1 {
                cur.phi.push(pos);
            }
            if dj == 1 {
                cur.psi.push(pos);
            }
            go(i + di, j + dj, m, n, cur, out);
            if di == 1 {
                cur.phi.pop();
            }
            if dj == 1 {
                cur.psi.pop();
            }
            cur.r -= 1;
        };
        if i < m {
            step(1, 0, cur, out);
        }
        if j < n {
            step(0, 1, cur, out);
        }
        if i < m && j < n {
            step(1, 1, cur, out);
        }
    }
    let mut out = Vec::new();
    let mut cur = Stuffle {
        phi: Vec::new(),
        psi: Vec::new(),
        r: 0,
    };
    go(0, 0, m, n, &mut cur, &mut out);
    out.sort_by(|a, b| a.r.cmp(&b.r).then_with(|| a.cmp(b)));
    out
}

/// The q-stuffle product of two admissible compositions, summed stuffle by
/// stuffle and subset by subset.
pub fn qstuffle_product(s: &Composition, t: &Composition) -> Result<ZetaCombo> {
    s.require_admissible()?;
    t.require_admissible()?;
    if s.is_empty() {
        return Ok(ZetaCombo::single(t.clone()));
    }
    if t.is_empty() {
        return Ok(ZetaCombo::single(s.clone()));
    }
    let (sp, tp) = (s.parts(), t.parts());
    let mut out = ZetaCombo::zero();
    for st in enumerate_stuffles(sp.len(), tp.len()) {
        let mut base = vec![0u32; st.r];
        for (i, &k) in st.phi.iter().enumerate() {
            base[k - 1] += sp[i];
        }
        for (j, &k) in st.psi.iter().enumerate() {
            base[k - 1] += tp[j];
        }
        let hits = st.collisions();
        for mask in 0u32..(1 << hits.len()) {
            let mut parts = base.clone();
            for (b, &k) in hits.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    parts[k - 1] -= 1;
                }
            }
            let coeff = QPoly::one_minus_q_pow(mask.count_ones());
            let comp = Composition::new(parts);
            if !comp.is_admissible() {
                return Err(Error::Admissibility(format!(
                    "product produced ζ[{comp}]; this is a bug"
                )));
            }
            out.add_term(comp, coeff);
        }
    }
    Ok(out)
}

/// q-stuffle product of arbitrary compositions (leading 1 allowed), via the
/// first-letter recursion
/// `a·u ∗ b·v = a(u ∗ bv) + b(au ∗ v) + (a+b)(u ∗ v) + (1−q)(a+b−1)(u ∗ v)`.
pub fn stuffle_formal(s: &Composition, t: &Composition) -> ZetaCombo {
    fn go<'a>(
        s: &'a [u32],
        t: &'a [u32],
        memo: &mut HashMap<(&'a [u32], &'a [u32]), ZetaCombo>,
    ) -> ZetaCombo {
        if s.is_empty() {
            return ZetaCombo::single(Composition::new(t.to_vec()));
        }
        if t.is_empty() {
            return ZetaCombo::single(Composition::new(s.to_vec()));
        }
        if let Some(c) = memo.get(&(s, t)) {
            return c.clone();
        }
        let mut out = go(&s[1..], t, memo).prepend(s[0]);
        out.add(&go(s, &t[1..], memo).prepend(t[0]));
        let both = go(&s[1..], &t[1..], memo);
        out.add(&both.prepend(s[0] + t[0]));
        out.add_scaled(&both.prepend(s[0] + t[0] - 1), &QPoly::one_minus_q_pow(1));
        memo.insert((s, t), out.clone());
        out
    }
    go(s.parts(), t.parts(), &mut HashMap::new())
}

/// `δ_k = 1 + (1−q)E_k`, where `E_k` lowers the k-th part by one.
///
/// Unless `formal`, a shift that would start a composition with 1 is an
/// admissibility error.
pub fn delta_apply(k: usize, c: &ZetaCombo, formal: bool) -> Result<ZetaCombo> {
    if k == 0 {
        return Err(Error::Parameter("δ_k is indexed from 1".into()));
    }
    let mut out = ZetaCombo::zero();
    for (s, coeff) in c.terms() {
        if s.depth() < k {
            return Err(Error::Parameter(format!("ζ[{s}] has no part {k}")));
        }
        let mut parts = s.parts().to_vec();
        if parts[k - 1] < 2 {
            return Err(Error::Parameter(format!("E_{k} would zero a part of ({s})")));
        }
        parts[k - 1] -= 1;
        let lowered = Composition::new(parts);
        if !formal && !lowered.is_admissible() {
            return Err(Error::Admissibility(format!("δ_{k} on ζ[{s}] yields ζ[{lowered}]")));
        }
        out.add_term(s.clone(), coeff.clone());
        out.add_term(lowered, coeff * &QPoly::one_minus_q_pow(1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_stuffle_counts() {
        assert_eq!(enumerate_stuffles(1, 1).len(), 3);
        assert_eq!(enumerate_stuffles(1, 2).len(), 5);
        assert_eq!(enumerate_stuffles(2, 1).len(), 5);
        assert_eq!(enumerate_stuffles(2, 2).len(), 13);
    }

    #[test]
    fn two_times_two() {
        let p = qstuffle_product(&[2].into(), &[2].into()).unwrap();
        let mut want = ZetaCombo::term([2, 2].into(), QPoly::from_int(2));
        want.add_term([4].into(), QPoly::one());
        want.add_term([3].into(), QPoly::one_minus_q_pow(1));
        assert_eq!(p, want);
    }

    #[test]
    fn two_times_three() {
        let p = qstuffle_product(&[2].into(), &[3].into()).unwrap();
        assert_eq!(p.to_string(), "ζ[2,3] + ζ[3,2] + (1 - q)ζ[4] + ζ[5]");
    }

    #[test]
    fn unit_and_errors() {
        let p = qstuffle_product(&Composition::empty(), &[3, 1].into()).unwrap();
        assert_eq!(p, ZetaCombo::single([3, 1].into()));
        assert!(qstuffle_product(&[1, 2].into(), &[2].into()).is_err());
    }

    #[test]
    fn recursion_agrees_with_enumeration() {
        for s in [vec![2], vec![3, 1], vec![2, 2, 1]] {
            for t in [vec![2], vec![2, 1], vec![4, 1, 1]] {
                let (s, t) = (Composition::new(s.clone()), Composition::new(t.clone()));
                assert_eq!(qstuffle_product(&s, &t).unwrap(), stuffle_formal(&s, &t));
            }
        }
    }

    #[test]
    fn delta_examples() {
        let d = delta_apply(1, &ZetaCombo::single([3].into()), false).unwrap();
        assert_eq!(d.to_string(), "(1 - q)ζ[2] + ζ[3]");
        let d = delta_apply(2, &ZetaCombo::single([2, 2].into()), false).unwrap();
        assert_eq!(d.to_string(), "(1 - q)ζ[2,1] + ζ[2,2]");
        let e = delta_apply(1, &ZetaCombo::single([2].into()), false);
        assert!(matches!(e, Err(Error::Admissibility(_))));
    }
}
