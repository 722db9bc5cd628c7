//! q-polylogarithms in two parametrisations:
//!
//! ```text
//! λ_q[s; b] = Σ_{ν₁,…,ν_m>0} ∏_k b_k^{−ν_k} [ν_k + … + ν_m]^{−s_k}
//! Li_s[x]   = Σ_{n₁>…>n_m>0} ∏_k x_k^{n_k} / [n_k]^{s_k}
//! ```
//!
//! related by `b_k = ∏_{j≤k} x_j^{−1}`. Both are summed in the `ν` form:
//! with `P_k = 1/b_k` every step multiplies by some `P_k`, so nothing grows
//! even when an individual `x_k` exceeds 1 in modulus.

use super::zeta::{power_geometric_tail, rounding};
use crate::error::{Error, Result};
use crate::qcore::{qint_f64, ComplexVal, EvalParams, FloatVal, Mode, Value};
use num_complex::Complex64;

const MAX_TRUNC: u64 = 1 << 16;

/// `Σ_{n₁>…>n_m>0} ∏ P_k^{n_k−n_{k+1}} / [n_k]^{s_k}` with `n₁ ≤ n`.
fn ratio_sum(s: &[u32], ratios: &[Complex64], q: f64, n: u64) -> Complex64 {
    let m = s.len();
    let len = n as usize + 1;
    let inv: Vec<f64> = (0..len).map(|k| if k == 0 { 0.0 } else { 1.0 / qint_f64(k as f64, q) }).collect();
    // level k: f[i] = [i]^{−s_k} Σ_{i'<i} P_k^{i−i'} f_{k+1}[i'], with f_{m+1} = δ_0
    let mut f = vec![Complex64::new(0.0, 0.0); len];
    f[0] = Complex64::new(1.0, 0.0);
    for k in (0..m).rev() {
        let mut next = vec![Complex64::new(0.0, 0.0); len];
        let mut conv = Complex64::new(0.0, 0.0);
        for i in 1..len {
            conv = ratios[k] * (conv + f[i - 1]);
            next[i] = conv * inv[i].powi(s[k] as i32);
        }
        f = next;
    }
    f.iter().sum()
}

fn summed(s: &[u32], ratios: Vec<Complex64>, p: &EvalParams) -> Result<Value> {
    let cfg = &p.backend;
    if cfg.mode == Mode::Exact {
        return Err(Error::Unsupported("q-polylogarithms need a numeric backend".into()));
    }
    cfg.validate()?;
    if s.is_empty() || s.contains(&0) {
        return Err(Error::Parameter(format!("exponents must be positive, got {s:?}")));
    }
    if let Some(r) = ratios.iter().find(|r| r.norm() >= 1.0) {
        return Err(Error::Divergence(format!(
            "partial product of modulus {} ≥ 1; the terms do not decay",
            r.norm()
        )));
    }
    let m = s.len();
    let rho = ratios.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let mut n = p.index_cap.unwrap_or(cfg.trunc as u64).max(m as u64);
    let mut tail = power_geometric_tail(n, m, rho);
    if p.index_cap.is_none() {
        while tail.is_none_or(|t| t > cfg.tol / 100.0) && n < MAX_TRUNC {
            n *= 2;
            tail = power_geometric_tail(n, m, rho);
        }
    }
    let q = cfg.q_f64();
    let v = ratio_sum(s, &ratios, q, n);
    let (bound, heuristic) = match tail {
        Some(t) => (t, false),
        None => ((v - ratio_sum(s, &ratios, q, n / 2)).norm(), true),
    };
    let bound = bound + rounding(v.norm(), n * m as u64, m);
    if cfg.mode == Mode::Float {
        if ratios.iter().any(|r| r.im != 0.0) {
            return Err(Error::Parameter("complex parameters need the complex backend".into()));
        }
        return Ok(Value::Float(FloatVal::new(v.re, bound, heuristic)));
    }
    Ok(Value::Complex(ComplexVal::new(v, bound, heuristic)))
}

/// `λ_q[s; b]`; converges when every `|b_k| > 1`.
pub fn eval_lambda(s: &[u32], b: &[Complex64], p: &EvalParams) -> Result<Value> {
    if s.len() != b.len() {
        return Err(Error::Parameter(format!("{} exponents but {} parameters", s.len(), b.len())));
    }
    if b.iter().any(|x| x.norm() <= 1.0) {
        return Err(Error::Divergence(format!(
            "λ_q needs every |b_k| > 1, got {:?}",
            b.iter().map(|x| x.norm()).collect::<Vec<_>>()
        )));
    }
    summed(s, b.iter().map(|x| x.inv()).collect(), p)
}

/// `Li_s[x]`; converges when every partial product `|x₁⋯x_k| < 1`.
pub fn eval_li(s: &[u32], x: &[Complex64], p: &EvalParams) -> Result<Value> {
    if s.len() != x.len() {
        return Err(Error::Parameter(format!("{} exponents but {} arguments", s.len(), x.len())));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let ratios = x
        .iter()
        .map(|xi| {
            acc *= xi;
            acc
        })
        .collect();
    summed(s, ratios, p)
}

/// `λ` parameters `b_k = ∏_{j≤k} x_j^{−1}` matching `Li_s[x]`.
pub fn lambda_params_of_li(x: &[Complex64]) -> Vec<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    x.iter()
        .map(|xi| {
            acc /= xi;
            acc
        })
        .collect()
}

/// `b_k = ∏_{j≤k} q^{1−s_j}`: the parameters for which `λ_q[s; b] = ζ[s]`.
pub fn zeta_lambda_params(s: &[u32], q: f64) -> Vec<Complex64> {
    let mut e = 0i32;
    s.iter()
        .map(|&sj| {
            e += 1 - sj as i32;
            Complex64::new(q.powi(e), 0.0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::BackendConfig;

    fn brute(s: &[u32], x: &[f64], q: f64, n: u64) -> f64 {
        // Σ_{n₁>n₂>0} or depth one, straight from the definition
        match s.len() {
            1 => (1..=n).map(|k| x[0].powi(k as i32) / qint_f64(k as f64, q).powi(s[0] as i32)).sum(),
            2 => {
                let mut t = 0.0;
                for a in 2..=n {
                    for b in 1..a {
                        t += x[0].powi(a as i32) * x[1].powi(b as i32)
                            / qint_f64(a as f64, q).powi(s[0] as i32)
                            / qint_f64(b as f64, q).powi(s[1] as i32);
                    }
                }
                t
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn li_matches_direct_sums() {
        let cfg = BackendConfig::float(0.5);
        let p = EvalParams::from(&cfg);
        let v = eval_li(&[2], &[Complex64::new(0.3, 0.0)], &p).unwrap();
        assert!((v.as_float().unwrap().value - brute(&[2], &[0.3], 0.5, 200)).abs() < 1e-13);
        let x = [0.5, 1.3];
        let c: Vec<Complex64> = x.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        let v = eval_li(&[2, 1], &c, &p).unwrap();
        assert!((v.as_float().unwrap().value - brute(&[2, 1], &x, 0.5, 300)).abs() < 1e-12);
    }

    #[test]
    fn unit_parameter_diverges() {
        let p = EvalParams::from(BackendConfig::float(0.5));
        let one = [Complex64::new(1.0, 0.0)];
        assert!(matches!(eval_lambda(&[2], &one, &p), Err(Error::Divergence(_))));
        assert!(eval_lambda(&[2], &[Complex64::new(2.0, 0.0)], &p).is_ok());
    }
}
