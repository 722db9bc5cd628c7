//! A deliberately naive evaluator shared by the fixture tests: direct
//! enumeration of the index tuples with truncated integer power series.

#![allow(dead_code)]

use qzeta::Value;

pub type Ser = Vec<i128>;

pub fn mul(a: &Ser, b: &Ser, n: usize) -> Ser {
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `q^{(s−1)k} / [k]^s = q^{(s−1)k} (1−q)^s (Σ_j q^{jk})^s` mod `q^n`.
fn factor(s: u32, k: usize, n: usize) -> Ser {
    let mut geo = vec![0; n];
    for j in (0..n).step_by(k) {
        geo[j] = 1;
    }
    let mut one_minus_q = vec![0; n];
    one_minus_q[0] = 1;
    if n > 1 {
        one_minus_q[1] = -1;
    }
    let mut out = vec![0; n];
    let shift = (s as usize - 1) * k;
    if shift < n {
        out[shift] = 1;
    }
    for _ in 0..s {
        out = mul(&out, &geo, n);
        out = mul(&out, &one_minus_q, n);
    }
    out
}

/// `ζ[s] mod q^n` by enumerating `k₁ > … > k_m > 0`; `s₁ ≥ 2` bounds `k₁ < n`.
pub fn brute_zeta(s: &[u32], n: usize) -> Ser {
    fn go(s: &[u32], below: usize, n: usize, acc: &Ser, out: &mut Ser) {
        if s.is_empty() {
            for (o, a) in out.iter_mut().zip(acc) {
                *o += a;
            }
            return;
        }
        for k in s.len()..below {
            let next = mul(acc, &factor(s[0], k, n), n);
            if next.iter().any(|&c| c != 0) {
                go(&s[1..], k, n, &next, out);
            }
        }
    }
    let mut one = vec![0; n];
    one[0] = 1;
    let mut out = vec![0; n];
    go(s, n + s.len(), n, &one, &mut out);
    out
}

/// The first `n` coefficients of an exact value, which must be integers.
pub fn lib_coeffs(v: &Value, n: usize) -> Ser {
    let series = v.as_series().expect("exact value");
    (0..n)
        .map(|e| {
            let c = series.coeff(e);
            assert!(c.is_integer());
            i128::try_from(c.to_integer()).unwrap()
        })
        .collect()
}
