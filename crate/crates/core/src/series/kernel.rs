//! Nested sums `Σ_{k₁>…>k_n>lo} ∏ q^{e_j k_j}/[k_j]^{p_j}` over two scalar
//! types: integer power series mod `q^Q`, and `f64` at a fixed `q`.
//!
//! Levels are accumulated innermost first with prefix sums, so a chain of
//! depth `n` with `K` indices per level costs `n·K` weight applications.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub(crate) trait Kernel {
    type V: Clone;
    fn zero(&self) -> Self::V;
    fn one(&self) -> Self::V;
    fn add_assign(&self, a: &mut Self::V, b: &Self::V);
    /// `v · q^e / ∏ [d]^p`; every `d ≥ 1`.
    fn weigh(&self, v: &Self::V, e: u64, dens: &[(u64, u32)]) -> Self::V;
    fn is_zero(&self, v: &Self::V) -> bool;
}

/// Integer series mod `q^order`. Each `1/[d]^p = (1−q)^p (1−q^d)^{−p}` is
/// applied as `p` difference passes followed by `p` strided prefix passes.
pub(crate) struct ExactKernel {
    pub order: usize,
}

impl Kernel for ExactKernel {
    type V = Vec<BigInt>;

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.order]
    }

    fn one(&self) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = BigInt::one();
        v
    }

    fn add_assign(&self, a: &mut Vec<BigInt>, b: &Vec<BigInt>) {
        for (x, y) in a.iter_mut().zip(b) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }

    fn weigh(&self, v: &Vec<BigInt>, e: u64, dens: &[(u64, u32)]) -> Vec<BigInt> {
        let q = self.order;
        let mut out = self.zero();
        if e as usize >= q {
            return out;
        }
        let e = e as usize;
        let lead = match v.iter().position(|c| !c.is_zero()) {
            Some(i) if i + e < q => i + e,
            _ => return out,
        };
        out[e..].clone_from_slice(&v[..q - e]);
        let total: u32 = dens.iter().map(|&(_, p)| p).sum();
        for _ in 0..total {
            for i in (lead + 1..q).rev() {
                let prev = out[i - 1].clone();
                out[i] -= prev;
            }
        }
        for &(d, p) in dens {
            debug_assert!(d >= 1);
            let d = d as usize;
            if d >= q {
                continue;
            }
            for _ in 0..p {
                for i in lead + d..q {
                    let prev = out[i - d].clone();
                    out[i] += prev;
                }
            }
        }
        out
    }

    fn is_zero(&self, v: &Vec<BigInt>) -> bool {
        v.iter().all(Zero::is_zero)
    }
}

/// Doubles at a fixed `0 < q < 1`.
pub(crate) struct FloatKernel {
    pub q: f64,
}

impl FloatKernel {
    pub fn qint(&self, d: u64) -> f64 {
        crate::qcore::qint_f64(d as f64, self.q)
    }
}

impl Kernel for FloatKernel {
    type V = f64;

    fn zero(&self) -> f64 {
        0.0
    }

    fn one(&self) -> f64 {
        1.0
    }

    fn add_assign(&self, a: &mut f64, b: &f64) {
        *a += b;
    }

    fn weigh(&self, v: &f64, e: u64, dens: &[(u64, u32)]) -> f64 {
        let mut w = v * self.q.powf(e as f64);
        for &(d, p) in dens {
            w /= self.qint(d).powi(p as i32);
        }
        w
    }

    fn is_zero(&self, v: &f64) -> bool {
        *v == 0.0
    }
}

/// `Σ_{cap₁ ≥ k₁ > … > k_n > lo} outer(k₁) ∏_j q^{(s_j−1)k_j}/[k_j]^{s_j}`,
/// where `outer(k₁) = (e, dens)` multiplies the outermost weight by
/// `q^e/∏[d]^p`. Level `j` (0-based) runs up to `caps[j]`.
pub(crate) fn chain_sum<K: Kernel>(
    ker: &K,
    s: &[u32],
    lo: u64,
    caps: &[u64],
    outer: &dyn Fn(u64) -> (u64, Vec<(u64, u32)>),
) -> K::V {
    let n = s.len();
    if n == 0 {
        return ker.one();
    }
    // prefix[i] = Σ over k ≤ lo+1+i of the partial sums one level in.
    let mut prefix: Vec<K::V> = Vec::new();
    let mut result = ker.zero();
    for j in (0..n).rev() {
        let min_k = lo + (n - j) as u64;
        let cap = caps[j];
        if cap < min_k {
            return ker.zero();
        }
        let mut next = Vec::with_capacity((cap - lo) as usize);
        let mut running = ker.zero();
        // pad so that next[i] corresponds to k = lo + 1 + i
        for _ in lo + 1..min_k {
            next.push(ker.zero());
        }
        for k in min_k..=cap {
            let inner = if j + 1 == n {
                ker.one()
            } else {
                let idx = ((k - 1 - lo - 1) as usize).min(prefix.len() - 1);
                prefix[idx].clone()
            };
            if !ker.is_zero(&inner) {
                let mut dens = vec![(k, s[j])];
                let mut e = (s[j] as u64 - 1) * k;
                if j == 0 {
                    let (e2, d2) = outer(k);
                    e += e2;
                    dens.extend(d2);
                }
                let term = ker.weigh(&inner, e, &dens);
                ker.add_assign(&mut running, &term);
            }
            next.push(running.clone());
        }
        if j == 0 {
            result = running;
        }
        prefix = next;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_weight_matches_direct_expansion() {
        // q^2/[2]^2 = q^2(1+q)^{-2} = q^2 − 2q^3 + 3q^4 − 4q^5
        let k = ExactKernel { order: 6 };
        let v = k.weigh(&k.one(), 2, &[(2, 2)]);
        let want: Vec<BigInt> = [0, 0, 1, -2, 3, -4].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(v, want);
    }

    #[test]
    fn float_chain_depth_one() {
        let k = FloatKernel { q: 0.5 };
        let v = chain_sum(&k, &[2], 0, &[60], &|_| (0, vec![]));
        let direct: f64 = (1..=60)
            .map(|n| 0.5f64.powi(n) / k.qint(n as u64).powi(2))
            .sum();
        assert!((v - direct).abs() < 1e-15);
    }
}
