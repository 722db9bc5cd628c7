//! The θ-deformed nested sums
//!
//! ```text
//! f[w; d; θ] = Σ_{m₁>…>m_B>0} ∏_i q^{a_i(m_{1+B_{i−1}}−d_i)} / [m_{1+B_{i−1}}−d_i]^{a_i}
//!                              ∏_{j=1+B_{i−1}}^{B_i} 1/([m_j] − θ q^{m_j})
//! ```
//!
//! for `w = ∏ x^{a_i} y^{b_i}`, `B_i = b₁+…+b_i`. Exponents are taken
//! literally, zero included: a block with `b_i = 0` puts its `x`-factor on
//! the first index of the next block.

use crate::algebra::{sigma_theta, Word, WordPoly};
use crate::error::{Error, Result};
use crate::qcore::{qint_f64, EvalParams, FloatVal, Mode, Value};

const MAX_TRUNC: u64 = 1 << 16;

/// Blocks `(a_i, b_i, d_i)` of `x^{a_i} y^{b_i}` with index offset `d_i ∈ {0,1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FWordSpec {
    pub blocks: Vec<(u32, u32, u32)>,
}

impl FWordSpec {
    pub fn new(blocks: Vec<(u32, u32, u32)>) -> Self {
        FWordSpec { blocks }
    }

    /// All offsets zero.
    pub fn plain(blocks: &[(u32, u32)]) -> Self {
        FWordSpec {
            blocks: blocks.iter().map(|&(a, b)| (a, b, 0)).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.blocks.iter().map(|&(a, b, _)| a + b).sum()
    }

    fn depth(&self) -> usize {
        self.blocks.iter().map(|&(_, b, _)| b as usize).sum()
    }

    /// Per index: the `(a, d)` factors sitting on it.
    fn factors(&self) -> Result<Vec<Vec<(u32, u32)>>> {
        let n = self.depth();
        let mut out = vec![Vec::new(); n];
        let mut start = 0usize;
        for (i, &(a, b, d)) in self.blocks.iter().enumerate() {
            if d > 1 {
                return Err(Error::Parameter(format!("offset {d} in block {i} is not 0 or 1")));
            }
            if a > 0 {
                if start >= n {
                    return Err(Error::Parameter(format!(
                        "block {i} has no index to carry x^{a}: no y follows it"
                    )));
                }
                if d == 1 && start + 1 == n {
                    return Err(Error::Singular(format!(
                        "block {i} divides by [m−1] on the innermost index, which reaches [0]"
                    )));
                }
                out[start].push((a, d));
            }
            start += b as usize;
        }
        if n == 0 {
            return Err(Error::Parameter("f needs at least one y".into()));
        }
        if out[0].is_empty() {
            return Err(Error::Divergence(
                "no x-factor on the outermost index; the terms do not decay".into(),
            ));
        }
        Ok(out)
    }
}

fn nested(factors: &[Vec<(u32, u32)>], q: f64, theta: f64, n: u64) -> f64 {
    let depth = factors.len();
    let len = n as usize + 1;
    let qi: Vec<f64> = (0..len).map(|k| qint_f64(k as f64, q)).collect();
    let qp: Vec<f64> = (0..len).map(|k| q.powi(k as i32)).collect();
    // prefix[i] = Σ_{m ≤ i} partial sum one level in
    let mut prefix = vec![1.0; len];
    let mut total = 0.0;
    for j in (0..depth).rev() {
        let mut next = vec![0.0; len];
        let mut run = 0.0;
        let min_m = depth - j;
        for m in min_m..len {
            let inner = if j + 1 == depth { 1.0 } else { prefix[m - 1] };
            let mut w = inner / (qi[m] - theta * qp[m]);
            for &(a, d) in &factors[j] {
                let k = m - d as usize;
                w *= (qp[k] / qi[k]).powi(a as i32);
            }
            run += w;
            next[m] = run;
        }
        total = run;
        prefix = next;
    }
    total
}

/// `f[w; d; θ]` for real `θ < 1/q`, the first pole.
pub fn eval_f(w: &FWordSpec, theta: f64, p: &EvalParams) -> Result<Value> {
    let cfg = &p.backend;
    if cfg.mode == Mode::Exact {
        return Err(Error::Unsupported("f[w;d;θ] needs a numeric backend".into()));
    }
    cfg.validate()?;
    let q = cfg.q_f64();
    if theta >= 1.0 / q {
        return Err(Error::Pole(format!("θ = {theta} is at or beyond the first pole 1/q = {}", 1.0 / q)));
    }
    let factors = w.factors()?;
    let mut n = p.index_cap.unwrap_or(cfg.trunc as u64).max(factors.len() as u64 + 1);
    let mut v = nested(&factors, q, theta, n);
    let mut diff;
    loop {
        let v2 = nested(&factors, q, theta, 2 * n);
        diff = (v2 - v).abs();
        n *= 2;
        v = v2;
        if p.index_cap.is_some() || diff <= cfg.tol / 100.0 || n >= MAX_TRUNC {
            break;
        }
    }
    let bound = diff + v.abs() * f64::EPSILON * (n as f64 + 10.0) * (factors.len() as f64 + 1.0);
    Ok(cfg.float_value(FloatVal::new(v, bound, true)))
}

/// Coefficients of `θ^0, …, θ^M` in `ζ̂[σ_θ(w)]`.
pub fn f_theta_series(w: &Word, m: usize, p: &EvalParams) -> Result<Vec<Value>> {
    if !w.is_admissible() {
        return Err(Error::Admissibility(format!("word {w} is not admissible")));
    }
    let series = sigma_theta(&WordPoly::from_word(w.clone()), m);
    (0..=m).map(|k| super::eval_zeta_hat(series.coeff(k), p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::BackendConfig;

    #[test]
    fn theta_zero_is_zeta() {
        let p = EvalParams::from(BackendConfig::float(0.5).with_tol(1e-12));
        let f = eval_f(&FWordSpec::plain(&[(1, 1)]), 0.0, &p).unwrap();
        let z = super::super::zeta(&[2].into(), &p.backend).unwrap();
        assert!((f.as_float().unwrap().value - z.as_float().unwrap().value).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_specs() {
        let p = EvalParams::from(BackendConfig::float(0.5));
        assert!(matches!(eval_f(&FWordSpec::plain(&[(1, 1)]), 2.0, &p), Err(Error::Pole(_))));
        assert!(matches!(
            eval_f(&FWordSpec::new(vec![(1, 1, 1)]), 0.1, &p),
            Err(Error::Singular(_))
        ));
        assert!(matches!(eval_f(&FWordSpec::plain(&[(0, 2)]), 0.1, &p), Err(Error::Divergence(_))));
        assert!(matches!(
            eval_f(&FWordSpec::plain(&[(1, 1), (1, 0)]), 0.1, &p),
            Err(Error::Parameter(_))
        ));
    }
}
