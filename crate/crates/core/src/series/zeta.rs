use super::kernel::{chain_sum, ExactKernel, FloatKernel};
use crate::algebra::{composition_of_word, Composition, WordPoly};
use crate::error::{Error, Result};
use crate::qcore::{BackendConfig, EvalParams, FloatVal, Mode, QSeries, Value};
use crate::stuffle::{ZetaCombo, ZetaPoly};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

const MAX_TRUNC: u64 = 1 << 16;

type ZetaCache = Mutex<HashMap<(Composition, usize), Arc<QSeries>>>;

fn cache() -> &'static ZetaCache {
    static CACHE: OnceLock<ZetaCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Lowest power of `q` in any term with `k_j = k`, the other indices as
/// small as the ordering allows.
fn min_exponent(s: &[u32], j: usize, k: u64) -> u64 {
    let m = s.len();
    let outer: u64 = (0..=j).map(|i| (s[i] as u64 - 1) * (k + (j - i) as u64)).sum();
    let inner: u64 = (j + 1..m).map(|i| (s[i] as u64 - 1) * (m - i) as u64).sum();
    outer + inner
}

fn zeta_exact(s: &Composition, order: usize) -> QSeries {
    let key = (s.clone(), order);
    if let Some(v) = cache().lock().unwrap().get(&key) {
        return (**v).clone();
    }
    let parts = s.parts();
    let m = parts.len();
    let caps: Vec<u64> = (0..m)
        .map(|j| {
            let mut k = (m - j) as u64;
            while min_exponent(parts, j, k + 1) < order as u64 {
                k += 1;
            }
            k
        })
        .collect();
    let ker = ExactKernel { order };
    let ints = if m > 0 && min_exponent(parts, 0, m as u64) >= order as u64 {
        vec![0.into(); order]
    } else {
        chain_sum(&ker, parts, 0, &caps, &|_| (0, vec![]))
    };
    let series = QSeries::from_integers(ints, order);
    cache().lock().unwrap().insert(key, Arc::new(series.clone()));
    series
}

/// `Σ_{t>N} t^{m−1} r^t`, or `None` when the ratio test does not close.
pub(crate) fn power_geometric_tail(n: u64, m: usize, r: f64) -> Option<f64> {
    let rho = ((n + 2) as f64 / (n + 1) as f64).powi(m as i32 - 1) * r;
    if rho >= 1.0 {
        return None;
    }
    Some(((n + 1) as f64).powi(m as i32 - 1) * r.powf((n + 1) as f64) / (1.0 - rho))
}

/// Rounding slack for a sum of `terms` non-negative doubles combined
/// through `depth` levels.
pub(crate) fn rounding(value: f64, terms: u64, depth: usize) -> f64 {
    value.abs() * f64::EPSILON * (terms as f64 + 10.0) * (depth as f64 + 1.0)
}

fn zeta_float(s: &Composition, p: &EvalParams) -> FloatVal {
    let parts = s.parts();
    let m = parts.len();
    if m == 0 {
        return FloatVal::exact(1.0);
    }
    let q = p.backend.q_f64();
    let r = q.powi(parts[0] as i32 - 1);
    let mut n = p.index_cap.unwrap_or(p.backend.trunc as u64).max(m as u64);
    let target = p.backend.tol / 100.0;
    let mut tail = power_geometric_tail(n, m, r);
    if p.index_cap.is_none() {
        while tail.is_none_or(|t| t > target) && n < MAX_TRUNC {
            n *= 2;
            tail = power_geometric_tail(n, m, r);
        }
    }
    let ker = FloatKernel { q };
    let caps: Vec<u64> = (0..m).map(|j| n - j as u64).collect();
    let v = chain_sum(&ker, parts, 0, &caps, &|_| (0, vec![]));
    match tail {
        Some(t) => FloatVal::new(v, t + rounding(v, n, m), false),
        None => {
            let half: Vec<u64> = caps.iter().map(|c| c / 2).collect();
            let v2 = chain_sum(&ker, parts, 0, &half, &|_| (0, vec![]));
            FloatVal::new(v, (v - v2).abs() + rounding(v, n, m), true)
        }
    }
}

/// `ζ[s] = Σ_{k₁>…>k_m>0} ∏ q^{(s_j−1)k_j}/[k_j]^{s_j}`; `ζ[] = 1`.
pub fn eval_zeta(s: &Composition, p: &EvalParams) -> Result<Value> {
    p.backend.validate()?;
    if !s.is_admissible() {
        return Err(Error::Divergence(format!("ζ[{s}] diverges: first part must exceed 1")));
    }
    Ok(match p.backend.mode {
        Mode::Exact => Value::Exact(zeta_exact(s, p.backend.order)),
        _ => p.backend.float_value(zeta_float(s, p)),
    })
}

/// Shorthand for [`eval_zeta`] without an index cap.
pub fn zeta(s: &Composition, cfg: &BackendConfig) -> Result<Value> {
    eval_zeta(s, &cfg.into())
}

pub fn eval_zeta_combo(c: &ZetaCombo, p: &EvalParams) -> Result<Value> {
    let cfg = &p.backend;
    let mut acc = cfg.zero();
    for (s, coeff) in c.terms() {
        let z = eval_zeta(s, p)?;
        acc = &acc + &(&cfg.poly(coeff) * &z);
    }
    Ok(acc)
}

pub fn eval_zeta_poly(c: &ZetaPoly, p: &EvalParams) -> Result<Value> {
    let cfg = &p.backend;
    let mut acc = cfg.zero();
    for (factors, coeff) in c.terms() {
        let mut term = cfg.poly(coeff);
        for f in factors {
            term = &term * &eval_zeta(f, p)?;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `ζ̂` on `𝔥⁰`: linear extension of `x^{s₁−1}y⋯ ↦ ζ[s₁,…]`, with `ζ̂[1] = 1`.
pub fn eval_zeta_hat(w: &WordPoly, p: &EvalParams) -> Result<Value> {
    let mut acc = p.backend.zero();
    for (word, c) in w.terms() {
        let s = composition_of_word(word)?;
        acc = &acc + &eval_zeta(&s, p)?.scale(c);
    }
    Ok(acc)
}

/// All `(c₁,…,c_n)` of non-negative integers summing to `m`.
pub fn weak_compositions(n: usize, m: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, m: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(m);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for c in 0..=m {
            cur.push(c);
            go(n, m - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, m, &mut Vec::new(), &mut out);
    out
}

/// `Z[s; m] = Σ_{c₁+…+c_n = m} ζ[s₁+c₁, …, s_n+c_n]`.
pub fn eval_z(s: &Composition, m: u32, p: &EvalParams) -> Result<Value> {
    if s.is_empty() {
        return Err(Error::Parameter("Z[s; m] needs a nonempty s".into()));
    }
    s.require_admissible()?;
    let mut acc = p.backend.zero();
    for c in weak_compositions(s.depth(), m) {
        let t = Composition::new(s.parts().iter().zip(&c).map(|(a, b)| a + b).collect());
        acc = &acc + &eval_zeta(&t, p)?;
    }
    Ok(acc)
}

/// `ζ̃[k] = Σ_n q^{kn}/[n]^k`, summed directly.
pub fn eval_zeta_tilde(k: u32, p: &EvalParams) -> Result<Value> {
    if k == 0 {
        return Err(Error::Parameter("ζ̃[k] needs k ≥ 1".into()));
    }
    let cfg = &p.backend;
    cfg.validate()?;
    // chain_sum supplies q^{0·n}/[n]; the outer hook adds q^{kn}/[n]^{k−1}.
    let hook = |n: u64| (k as u64 * n, vec![(n, k - 1)]);
    Ok(match cfg.mode {
        Mode::Exact => {
            let order = cfg.order;
            let cap = (order as u64).div_ceil(k as u64).max(1);
            let v = chain_sum(&ExactKernel { order }, &[1], 0, &[cap], &hook);
            Value::Exact(QSeries::from_integers(v, order))
        }
        _ => {
            let q = cfg.q_f64();
            let r = q.powi(k as i32);
            let mut n = cfg.trunc as u64;
            let mut tail = power_geometric_tail(n, 1, r);
            while tail.is_none_or(|t| t > cfg.tol / 100.0) && n < MAX_TRUNC {
                n *= 2;
                tail = power_geometric_tail(n, 1, r);
            }
            let v = chain_sum(&FloatKernel { q }, &[1], 0, &[n], &hook);
            let bound = tail.unwrap_or(f64::INFINITY) + rounding(v, n, 1);
            cfg.float_value(FloatVal::new(v, bound, false))
        }
    })
}

/// `(q−1)^{k−1} ζ̃[1] + Σ_{j=2}^k (q−1)^{k−j} ζ[j]`, the telescoped form of
/// `ζ̃[k]`.
pub fn zeta_tilde_via_zeta(k: u32, p: &EvalParams) -> Result<Value> {
    let cfg = &p.backend;
    let qm1 = &cfg.q_value() - &cfg.one();
    let mut acc = &qm1.pow(k - 1, cfg) * &eval_zeta_tilde(1, p)?;
    for j in 2..=k {
        let z = eval_zeta(&Composition::new(vec![j]), p)?;
        acc = &acc + &(&qm1.pow(k - j, cfg) * &z);
    }
    Ok(acc)
}
