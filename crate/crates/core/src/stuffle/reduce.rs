use super::partitions::{enumerate_set_partitions, permutations};
use super::{ZetaCombo, ZetaPoly};
use crate::algebra::Composition;
use crate::error::{Error, Result};
use crate::qcore::{binomial, factorial, QPoly, Rational};

fn require_parts_at_least_two(ss: &[u32]) -> Result<()> {
    match ss.iter().find(|&&s| s < 2) {
        Some(s) => Err(Error::Divergence(format!("part {s} < 2 in {ss:?}"))),
        None => Ok(()),
    }
}

/// `Σ_{ν<g} C(g−1,ν)(1−q)^ν ζ[p−ν]`: `g` indices of total exponent `p`
/// collapsed onto one summation index.
pub(crate) fn merged_part(p: u32, g: u32) -> ZetaCombo {
    let mut out = ZetaCombo::zero();
    for nu in 0..g {
        let c = QPoly::one_minus_q_pow(nu).scale(&Rational::from_integer(binomial(
            (g - 1) as u64,
            nu as u64,
        )));
        out.add_term(Composition::new(vec![p - nu]), c);
    }
    out
}

/// `ζ[{s}^n]` as a polynomial in depth-1 values, from
/// `n ζ[{s}^n] = Σ_k (−1)^{k+1} ζ[{s}^{n−k}] Σ_{j<k} C(k−1,j)(1−q)^j ζ[ks−j]`.
pub fn period1_reduce(s: u32, n: usize) -> Result<ZetaPoly> {
    if s < 2 {
        return Err(Error::Divergence(format!("ζ[{{{s}}}^{n}] diverges")));
    }
    let mut z: Vec<ZetaPoly> = vec![ZetaPoly::one()];
    for m in 1..=n {
        let mut acc = ZetaPoly::zero();
        for k in 1..=m {
            let inner = ZetaPoly::from_combo(&merged_part(k as u32 * s, k as u32));
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc.add_scaled(&z[m - k].mul(&inner), &QPoly::from_int(sign));
        }
        z.push(acc.scaled(&QPoly::constant(Rational::new(1.into(), (m as i64).into()))));
    }
    Ok(z.pop().unwrap())
}

/// `∏ ζ[s_k]` summed over ordered set partitions, each block merged onto one
/// index with the binomial `(1−q)` corrections.
pub fn nproduct_expand(ss: &[u32]) -> Result<ZetaCombo> {
    require_parts_at_least_two(ss)?;
    let mut out = ZetaCombo::zero();
    for part in enumerate_set_partitions(ss.len(), true)? {
        let mut acc = ZetaCombo::single(Composition::empty());
        for block in &part.blocks {
            let p: u32 = block.iter().map(|&i| ss[i]).sum();
            acc = acc.concat(&merged_part(p, block.len() as u32));
        }
        out.add(&acc);
    }
    Ok(out)
}

/// Both sides of the symmetric-sum identity:
/// `Σ_σ ζ[s_σ]` and `Σ_P (−1)^{n−|P|} ∏_k (|P_k|−1)! Σ_ν C(|P_k|−1,ν)(1−q)^ν ζ[p_k−ν]`.
pub fn partition_identity_sides(ss: &[u32]) -> Result<(ZetaCombo, ZetaPoly)> {
    require_parts_at_least_two(ss)?;
    if ss.len() > 6 {
        return Err(Error::Resource("partition identity limited to 6 parts".into()));
    }
    let n = ss.len();
    let mut lhs = ZetaCombo::zero();
    for perm in permutations(n) {
        lhs.add_term(Composition::new(perm.iter().map(|&i| ss[i]).collect()), QPoly::one());
    }
    let mut rhs = ZetaPoly::zero();
    for part in enumerate_set_partitions(n, false)? {
        let mut acc = ZetaPoly::one();
        for block in &part.blocks {
            let p: u32 = block.iter().map(|&i| ss[i]).sum();
            let g = block.len() as u32;
            let weight = Rational::from_integer(factorial((g - 1) as u64));
            let f = ZetaPoly::from_combo(&merged_part(p, g)).scaled(&QPoly::constant(weight));
            acc = acc.mul(&f);
        }
        let sign = if (n - part.blocks.len()) % 2 == 0 { 1 } else { -1 };
        rhs.add_scaled(&acc, &QPoly::from_int(sign));
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period1_small_cases() {
        assert_eq!(period1_reduce(3, 1).unwrap().to_string(), "ζ[3]");
        // 2ζ[2,2] = ζ[2]² − ζ[4] − (1−q)ζ[3]
        let r = period1_reduce(2, 2).unwrap();
        assert_eq!(r.to_string(), "(1/2)ζ[2]ζ[2] + (-1/2 + (1/2)q)ζ[3] + (-1/2)ζ[4]");
        assert!(period1_reduce(1, 2).is_err());
    }

    #[test]
    fn nproduct_matches_stuffle() {
        let a = nproduct_expand(&[2, 3]).unwrap();
        let b = super::super::qstuffle_product(&[2].into(), &[3].into()).unwrap();
        assert_eq!(a, b);
        assert_eq!(nproduct_expand(&[2]).unwrap(), ZetaCombo::single([2].into()));
    }

    #[test]
    fn partition_two_parts() {
        let (l, r) = partition_identity_sides(&[2, 3]).unwrap();
        assert_eq!(l.to_string(), "ζ[2,3] + ζ[3,2]");
        assert_eq!(r.to_string(), "ζ[2]ζ[3] + (-1 + q)ζ[4] + (-1)ζ[5]");
        // Multiplying out the right side must reproduce the left.
        assert_eq!(r.flatten(), l);
    }
}
