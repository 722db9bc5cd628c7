//! The auxiliary series
//!
//! ```text
//! T[s₁,…,s_n]     = Σ_{k₁>…>k_{n+1}≥0} q^{k₁−k_{n+1}}/[k₁−k_{n+1}] ∏_{j≤n} q^{(s_j−1)k_j}/[k_j]^{s_j}
//! S[s₁,…,s_{n+1}] = Σ_{k₁>…>k_{n+1}>0} q^{k₁}/[k₁−k_{n+1}] ∏_{j≤n+1} q^{(s_j−1)k_j}/[k_j]^{s_j}
//! ```
//!
//! Both are summed over the innermost index `r = k_{n+1}` outside a chain
//! of the remaining indices above `r`. For `S` the weight of `r` is
//! rewritten as `q^{k₁−r} · q^{s_{n+1} r}/[r]^{s_{n+1}}` so that all
//! exponents stay non-negative.

use super::kernel::{chain_sum, ExactKernel, FloatKernel, Kernel};
use super::zeta::rounding;
use crate::error::{Error, Result};
use crate::qcore::{EvalParams, FloatVal, Mode, QSeries, Value};

const MAX_TRUNC: u64 = 1 << 12;

/// `Σ_{r ≥ r0} rweight(r) · Σ_{k₁>…>k_n>r} q^{k₁−r}/[k₁−r] ∏ …`, with `k₁ ≤ r + span`.
fn shifted_sum<K: Kernel>(
    ker: &K,
    s: &[u32],
    r0: u64,
    r_max: u64,
    span: u64,
    rweight: &dyn Fn(u64) -> (u64, Vec<(u64, u32)>),
) -> K::V {
    let mut acc = ker.zero();
    for r in r0..=r_max {
        let caps: Vec<u64> = (0..s.len()).map(|j| r + span - j as u64).collect();
        let outer = move |k1: u64| (k1 - r, vec![(k1 - r, 1)]);
        let inner = chain_sum(ker, s, r, &caps, &outer);
        let (e, dens) = rweight(r);
        let term = ker.weigh(&inner, e, &dens);
        ker.add_assign(&mut acc, &term);
    }
    acc
}

fn check_t(s: &[u32]) -> Result<()> {
    if s.is_empty() || s.contains(&0) {
        return Err(Error::Parameter(format!("T needs positive parts, got {s:?}")));
    }
    if s.iter().all(|&x| x == 1) {
        return Err(Error::Divergence(format!("T{s:?} diverges: no part exceeds 1")));
    }
    Ok(())
}

fn check_s(s: &[u32]) -> Result<()> {
    let (last, head) = match s.split_last() {
        Some(x) if s.len() >= 2 => x,
        _ => return Err(Error::Parameter(format!("S needs at least two arguments, got {s:?}"))),
    };
    if head.contains(&0) {
        return Err(Error::Parameter(format!("S needs positive leading parts, got {s:?}")));
    }
    if *last == 0 && head.iter().all(|&x| x == 1) {
        return Err(Error::Divergence(format!("S{s:?} diverges")));
    }
    Ok(())
}

fn numeric(p: &EvalParams, f: &dyn Fn(&FloatKernel, u64) -> f64, depth: usize) -> Value {
    let cfg = &p.backend;
    let ker = FloatKernel { q: cfg.q_f64() };
    let mut n = p.index_cap.unwrap_or(cfg.trunc as u64).max(2);
    let mut half = f(&ker, n / 2);
    let mut full = f(&ker, n);
    // the work is quadratic in n, so the doubling stops earlier than for ζ
    while p.index_cap.is_none() && (full - half).abs() > cfg.tol / 100.0 && n < MAX_TRUNC {
        n *= 2;
        half = full;
        full = f(&ker, n);
    }
    // all terms are positive: each level adds at most 2n of them
    let bound = (full - half).abs() + rounding(full, 2 * n, depth);
    cfg.float_value(FloatVal::new(full, bound, true))
}

/// `T[s]`; finite when some part exceeds 1.
pub fn eval_t(s: &[u32], p: &EvalParams) -> Result<Value> {
    check_t(s)?;
    p.backend.validate()?;
    let none = |_: u64| (0, vec![]);
    Ok(match p.backend.mode {
        Mode::Exact => {
            let order = p.backend.order as u64;
            let ker = ExactKernel { order: order as usize };
            let v = shifted_sum(&ker, s, 0, order, order, &none);
            Value::Exact(QSeries::from_integers(v, order as usize))
        }
        _ => numeric(p, &|ker, n| shifted_sum(ker, s, 0, n, n, &none), s.len() + 1),
    })
}

/// `S[s₁,…,s_{n+1}]` with `s_{n+1} ≥ 0`.
pub fn eval_s(s: &[u32], p: &EvalParams) -> Result<Value> {
    check_s(s)?;
    p.backend.validate()?;
    let (&last, head) = s.split_last().unwrap();
    let rw = move |r: u64| {
        if last == 0 {
            (0, vec![])
        } else {
            (last as u64 * r, vec![(r, last)])
        }
    };
    Ok(match p.backend.mode {
        Mode::Exact => {
            let order = p.backend.order as u64;
            let ker = ExactKernel { order: order as usize };
            let v = shifted_sum(&ker, head, 1, order, order, &rw);
            Value::Exact(QSeries::from_integers(v, order as usize))
        }
        _ => numeric(p, &|ker, n| shifted_sum(ker, head, 1, n, n, &rw), s.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::BackendConfig;
    use crate::series::zeta;

    #[test]
    fn bridges_exact() {
        let cfg = BackendConfig::exact(18);
        let p = EvalParams::from(&cfg);
        // S[s,0] = T[s] − ζ[s₁+1, s₂, …]
        let lhs = eval_s(&[2, 1, 0], &p).unwrap();
        let rhs = &eval_t(&[2, 1], &p).unwrap() - &zeta(&[3, 1].into(), &cfg).unwrap();
        assert_eq!(lhs, rhs);
        // S[1, 1] = T[2]
        assert_eq!(eval_s(&[1, 1], &p).unwrap(), eval_t(&[2], &p).unwrap());
    }

    #[test]
    fn bridges_float() {
        let cfg = BackendConfig::float(0.5).with_trunc(200);
        let p = EvalParams::from(&cfg);
        let lhs = eval_s(&[2, 2], &p).unwrap();
        let rhs = &eval_s(&[1, 3], &p).unwrap() - &zeta(&[2, 3].into(), &cfg).unwrap();
        assert!((&lhs - &rhs).is_zero_within(1e-10), "{lhs} {rhs}");
    }

    #[test]
    fn divergent_inputs() {
        let p = EvalParams::from(BackendConfig::exact(5));
        assert!(matches!(eval_t(&[1], &p), Err(Error::Divergence(_))));
        assert!(matches!(eval_s(&[1, 0], &p), Err(Error::Divergence(_))));
    }
}
