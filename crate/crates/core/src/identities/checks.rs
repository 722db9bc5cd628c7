use super::qdiff::{qdiff_lemma_sides, qdiff_sides, QdiffLemma};
use super::Residual;
use crate::algebra::{
    check_exp_partial, derivation_d, derivation_partial, dual_composition, BlockForm,
    Composition, Word, WordPoly,
};
use crate::error::{Error, Result};
use crate::jackson::{multiple_jackson, SimplexIntegrand};
use crate::qcore::{qint, BackendConfig, EvalParams, QParam, Rational, Value};
use crate::series::*;
use crate::stuffle::{
    nproduct_expand, parity_reduce, partition_identity_sides, period1_reduce, qstuffle_product,
};
use num_complex::Complex64;
use std::collections::BTreeSet;

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::Parameter(format!("missing parameter '{name}'")))
}

fn one(v: Value) -> Result<Residual> {
    Ok(Residual::Values(vec![v]))
}

fn z(s: &Composition, p: &EvalParams) -> Result<Value> {
    eval_zeta(s, p)
}

fn zv(parts: Vec<u32>, p: &EvalParams) -> Result<Value> {
    eval_zeta(&Composition::new(parts), p)
}

fn word_param(params: &super::Params) -> Result<Word> {
    need(&params.word, "word")?.parse()
}

fn sum_values(cfg: &BackendConfig, vals: impl IntoIterator<Item = Result<Value>>) -> Result<Value> {
    let mut acc = cfg.zero();
    for v in vals {
        acc = &acc + &v?;
    }
    Ok(acc)
}

fn cat(parts: &[&[u32]]) -> Vec<u32> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

pub(super) fn dispatch(id: &str, params: &super::Params, cfg: &BackendConfig) -> Result<Residual> {
    let p = EvalParams::from(cfg);
    let p = &p;
    match id {
        "qstuffle" => {
            let (s, t) = (need(&params.s, "s")?, need(&params.t, "t")?);
            let prod = qstuffle_product(&s, &t)?;
            one(&(&z(&s, p)? * &z(&t, p)?) - &eval_zeta_combo(&prod, p)?)
        }
        "period1" => {
            let (k, n) = (need(&params.k, "k")?, need(&params.n, "n")?);
            let red = period1_reduce(k, n as usize)?;
            one(&zv(vec![k; n as usize], p)? - &eval_zeta_poly(&red, p)?)
        }
        "nproduct" => {
            let s = need(&params.s, "s")?;
            let mut prod = cfg.one();
            for &part in s.parts() {
                prod = &prod * &zv(vec![part], p)?;
            }
            one(&prod - &eval_zeta_combo(&nproduct_expand(s.parts())?, p)?)
        }
        "partition" => {
            let s = need(&params.s, "s")?;
            let (lhs, rhs) = partition_identity_sides(s.parts())?;
            one(&eval_zeta_combo(&lhs, p)? - &eval_zeta_poly(&rhs, p)?)
        }
        "parity" => {
            let s = need(&params.s, "s")?;
            let red = parity_reduce(&s)?;
            let sign = if s.depth() % 2 == 0 { 1 } else { -1 };
            let lhs = &z(&s, p)? + &z(&s.reversed(), p)?.scale(&Rational::from_integer(sign.into()));
            one(&lhs - &eval_zeta_poly(&red, p)?)
        }
        "gen_duality" => {
            let bf = BlockForm::new(need(&params.blocks, "blocks")?);
            let m = need(&params.m, "m")?;
            let dual = bf.dual();
            let lhs = eval_z(&bf.to_composition(), m, p)?;
            let rhs = eval_z(&dual.to_composition(), m, p)?;
            one(&lhs - &rhs)
        }
        "duality" => {
            let s = need(&params.s, "s")?;
            one(&z(&s, p)? - &z(&dual_composition(&s)?, p)?)
        }
        "sum_formula" => {
            let (k, n) = (need(&params.k, "k")?, need(&params.n, "n")?);
            if n == 0 || n > k {
                return Err(Error::Parameter(format!("need 1 ≤ n ≤ k, got n={n}, k={k}")));
            }
            let terms = Composition::all_of_weight(k)
                .into_iter()
                .filter(|s| s.depth() == n as usize)
                .map(|s| {
                    let mut v = s.parts().to_vec();
                    v[0] += 1;
                    zv(v, p)
                });
            one(&sum_values(cfg, terms)? - &zv(vec![k + 1], p)?)
        }
        "f_equals_g" => {
            let w = word_param(params)?;
            let m = need(&params.m, "m")? as usize;
            let a = f_theta_series(&w, m, p)?;
            let b = f_theta_series(&w.tau(), m, p)?;
            Ok(Residual::Values(a.iter().zip(&b).map(|(x, y)| x - y).collect()))
        }
        "qdiff" => {
            let blocks = need(&params.blocks, "blocks")?;
            let theta = need(&params.theta, "theta")?;
            let (l, r) = qdiff_sides(&blocks, theta, p)?;
            one(&l - &r)
        }
        "qdiff_head" | "qdiff_head_unit" | "qdiff_shift" | "qdiff_tail" | "qdiff_tail_single"
        | "qdiff_single_block" | "qdiff_xy" => {
            let lemma = match id {
                "qdiff_head" => QdiffLemma::Head,
                "qdiff_head_unit" => QdiffLemma::HeadUnit,
                "qdiff_shift" => QdiffLemma::Shift(need(&params.j, "j")? as usize),
                "qdiff_tail" => QdiffLemma::Tail,
                "qdiff_tail_single" => QdiffLemma::TailSingle,
                "qdiff_single_block" => QdiffLemma::SingleBlock,
                _ => QdiffLemma::Xy,
            };
            let blocks = params.blocks.clone().unwrap_or_else(|| vec![(1, 1)]);
            let theta = need(&params.theta, "theta")?;
            let (l, r) = qdiff_lemma_sides(lemma, &blocks, theta, p)?;
            one(&l - &r)
        }
        "derivation" => {
            let w = word_param(params)?;
            let n = need(&params.n, "n")? as usize;
            if n == 0 || !w.is_admissible() {
                return Err(Error::Parameter("need n ≥ 1 and an admissible word".into()));
            }
            one(eval_zeta_hat(&derivation_partial(n, &WordPoly::from_word(w)), p)?)
        }
        "hoffman_derivation" => {
            let s = need(&params.s, "s")?;
            s.require_admissible()?;
            let w = WordPoly::from_word(crate::algebra::word_of_composition(&s)?);
            let words = &eval_zeta_hat(&derivation_d(1, &w, false), p)?
                - &eval_zeta_hat(&derivation_d(1, &w, true), p)?;
            let parts = s.parts();
            let mut lhs = cfg.zero();
            let mut rhs = cfg.zero();
            for k in 0..parts.len() {
                let (head, tail) = (&parts[..k], &parts[k + 1..]);
                lhs = &lhs + &zv(cat(&[head, &[parts[k] + 1], tail]), p)?;
                for j in 0..parts[k].saturating_sub(1) {
                    rhs = &rhs + &zv(cat(&[head, &[parts[k] - j, j + 1], tail]), p)?;
                }
            }
            Ok(Residual::Values(vec![words, &lhs - &rhs]))
        }
        "cyclic" => {
            let s = need(&params.s, "s")?;
            require_big_part(&s)?;
            let parts = s.parts();
            let mut lhs = cfg.zero();
            let mut rhs = cfg.zero();
            for j in 0..parts.len() {
                let rot = s.rotated(j);
                let r = rot.parts();
                lhs = &lhs + &zv(cat(&[&[r[0] + 1], &r[1..]]), p)?;
                for k in 0..r[0].saturating_sub(1) {
                    rhs = &rhs + &zv(cat(&[&[r[0] - k], &r[1..], &[k + 1]]), p)?;
                }
            }
            one(&lhs - &rhs)
        }
        "cyclic_dual" => {
            let s = need(&params.s, "s")?;
            s.require_admissible()?;
            let side = |s: &Composition| -> Result<Value> {
                let rots: BTreeSet<Composition> = (0..s.depth()).map(|j| s.rotated(j)).collect();
                sum_values(
                    cfg,
                    rots.iter().map(|r| {
                        let mut v = r.parts().to_vec();
                        v[0] += 1;
                        zv(v, p)
                    }),
                )
            };
            one(&side(&s)? - &side(&dual_composition(&s)?)?)
        }
        "t_difference" => {
            let s = need(&params.s, "s")?;
            require_big_part(&s)?;
            let parts = s.parts();
            let rot = s.rotated(1);
            let lhs = &eval_t(parts, p)? - &eval_t(rot.parts(), p)?;
            let mut rhs = zv(cat(&[&[parts[0] + 1], &parts[1..]]), p)?;
            for k in 0..parts[0].saturating_sub(1) {
                rhs = &rhs - &zv(cat(&[&[parts[0] - k], &parts[1..], &[k + 1]]), p)?;
            }
            one(&lhs - &rhs)
        }
        "s0_t_zeta" => {
            let s = need(&params.s, "s")?;
            require_big_part(&s)?;
            let parts = s.parts();
            let lhs = eval_s(&cat(&[parts, &[0]]), p)?;
            let rhs = &eval_t(parts, p)? - &zv(cat(&[&[parts[0] + 1], &parts[1..]]), p)?;
            one(&lhs - &rhs)
        }
        "s_s_zeta" => {
            // s = (s₁, …, s_n, s_{n+1}); parts of a Composition are positive,
            // so a zero last argument comes in through `k`.
            let s = need(&params.s, "s")?;
            let mut parts = s.parts().to_vec();
            if let Some(last) = params.k {
                parts.push(last);
            }
            if parts.len() < 2 || parts[0] < 2 {
                return Err(Error::Parameter("need at least two arguments and s₁ ≥ 2".into()));
            }
            let n = parts.len() - 1;
            let last = parts[n];
            let lhs = eval_s(&parts, p)?;
            let shifted = cat(&[&[parts[0] - 1], &parts[1..n], &[last + 1]]);
            let rhs = &eval_s(&shifted, p)? - &zv(cat(&[&parts[..n], &[last + 1]]), p)?;
            one(&lhs - &rhs)
        }
        "s1_t" => {
            let s = need(&params.s, "s")?;
            require_big_part(&s)?;
            let parts = s.parts();
            let n = parts.len();
            let args = cat(&[&[1], &parts[..n - 1], &[parts[n - 1] - 1]]);
            one(&eval_s(&args, p)? - &eval_t(parts, p)?)
        }
        "multisection" => {
            let s = need(&params.s, "s")?;
            let b = need(&params.b, "b")?;
            let n = need(&params.n, "n")?;
            one(multisection_residual(s.parts(), &b, n, cfg)?)
        }
        "jackson_rep" => {
            let s = need(&params.s, "s")?;
            s.require_admissible()?;
            let y = zeta_lambda_params(s.parts(), cfg.q_f64());
            let integrand = SimplexIntegrand::polylog(s.parts(), &y)?;
            let mut levels = params.k.unwrap_or(120) as usize;
            let mut integral = multiple_jackson(&integrand, levels, p)?;
            while params.k.is_none() && integral.tail_bound() > cfg.tol && levels < 2000 {
                levels *= 2;
                integral = multiple_jackson(&integrand, levels, p)?;
            }
            let signed = if s.depth() % 2 == 0 { integral } else { -&integral };
            one(&signed - &z(&s, p)?)
        }
        "drin" => {
            let (m, n) = (need(&params.m, "m")?, need(&params.n, "n")?);
            one(&drin_rhs_coeff(m as usize, n as usize, p)? - &zeta_m2_ones(m, n as usize, p)?)
        }
        "drin_markett" => {
            let m = need(&params.m, "m")?;
            one(&drin_rhs_coeff(m as usize, 2, p)? - &zv(vec![m + 2, 1, 1], p)?)
        }
        "drin_symmetry" => {
            let (m, n) = (need(&params.m, "m")? as usize, need(&params.n, "n")? as usize);
            one(&drin_rhs_coeff(m, n, p)? - &drin_rhs_coeff(n, m, p)?)
        }
        "euler" => one(euler_convolution_residual(need(&params.m, "m")?, p)?),
        "heine_2phi1" => {
            let (x, y) = (need(&params.x, "x")?, need(&params.y, "y")?);
            let lhs = heine_double_sum(x, y, p)?;
            let gamma = heine_gamma_side(x, y, p)?;
            let q = cfg.q_f64();
            let phi = &cfg.one() - &eval_2phi1(-y, x, 1.0 + x, q.powf(1.0 + y), p)?;
            Ok(Residual::Values(vec![&lhs - &gamma, &phi - &gamma]))
        }
        "heine" => {
            let (a, b, c) = need(&params.abc, "abc")?;
            let q = cfg.q_f64();
            let phi = eval_2phi1(a, b, c, q.powf(c - a - b), p)?;
            one(&phi - &heine_gamma_ratio(a, b, c, p)?)
        }
        "log_qgamma" => {
            let x = need(&params.x, "x")?;
            let k = params.k.unwrap_or(40);
            one(&log_qgamma_series(x, k, p)? - &log_qgamma_direct(x, p)?)
        }
        "zeta_tilde" => {
            let k = need(&params.k, "k")?;
            one(&eval_zeta_tilde(k, p)? - &zeta_tilde_via_zeta(k, p)?)
        }
        "exp_partial" => {
            let m = need(&params.m, "m")? as usize;
            let r = check_exp_partial(m);
            let text = if r.equal {
                format!("equal mod t^{}", m + 1)
            } else {
                r.discrepancy()
            };
            Ok(Residual::Symbolic { ok: r.equal, text })
        }
        "q_to_1_trend" => trend(params.which.as_deref().unwrap_or("newton"), cfg),
        other => Err(Error::UnknownIdentity(other.to_string())),
    }
}

fn require_big_part(s: &Composition) -> Result<()> {
    if s.is_empty() || s.parts().iter().all(|&x| x <= 1) {
        return Err(Error::Parameter(format!("({s}) needs a part greater than 1")));
    }
    Ok(())
}

/// `n^m λ_{q^n}[s; b^n] − [n]_q^{|s|} Σ_ε λ_q[s; εb]` over all `n^m` tuples
/// of `n`-th roots of unity.
pub(crate) fn multisection_residual(s: &[u32], b: &[f64], n: u32, cfg: &BackendConfig) -> Result<Value> {
    if n == 0 {
        return Err(Error::Parameter("n must be positive".into()));
    }
    let m = s.len();
    if b.len() != m {
        return Err(Error::Parameter(format!("{m} exponents but {} parameters", b.len())));
    }
    let q = cfg.q_f64();
    let qn_cfg = cfg.clone().with_q(QParam::Float(q.powi(n as i32)));
    let bn: Vec<Complex64> = b.iter().map(|&x| Complex64::new(x.powi(n as i32), 0.0)).collect();
    let lhs = eval_lambda(s, &bn, &EvalParams::from(&qn_cfg))?
        .scale(&Rational::from_integer((n as i64).pow(m as u32).into()));
    let roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let p = EvalParams::from(cfg);
    let mut acc = cfg.zero();
    for idx in 0..(n as usize).pow(m as u32) {
        let mut rest = idx;
        let eb: Vec<Complex64> = b
            .iter()
            .map(|&bk| {
                let e = roots[rest % n as usize];
                rest /= n as usize;
                e * bk
            })
            .collect();
        acc = &acc + &eval_lambda(s, &eb, &p)?;
    }
    let weight: u32 = s.iter().sum();
    let factor = qint(n as u64, cfg).pow(weight, cfg);
    Ok(&lhs - &(&factor * &acc))
}

/// Classical relations with the `(1−q)` terms dropped, at `q = 0.9` and
/// `q = 0.99`: the residual should shrink.
fn trend(which: &str, cfg: &BackendConfig) -> Result<Residual> {
    let residual_at = |q: f64| -> Result<f64> {
        let c = BackendConfig {
            q: QParam::Float(q),
            tol: cfg.tol.max(1e-9),
            ..BackendConfig::float(q)
        };
        let p = EvalParams::from(&c);
        let v = match which {
            // 2ζ({2}^2) = ζ(2)² − ζ(4)
            "newton" => {
                let z2 = zv(vec![2], &p)?;
                &(&zv(vec![2, 2], &p)?.scale(&Rational::from_integer(2.into())) - &(&z2 * &z2))
                    + &zv(vec![4], &p)?
            }
            // ζ(2)ζ(3) = ζ(2,3) + ζ(3,2) + ζ(5)
            "stuffle" => {
                &(&(&zv(vec![2], &p)? * &zv(vec![3], &p)?) - &zv(vec![2, 3], &p)?)
                    - &(&zv(vec![3, 2], &p)? + &zv(vec![5], &p)?)
            }
            other => return Err(Error::Parameter(format!("unknown trend '{other}'"))),
        };
        Ok(v.norm())
    };
    let (a, b) = (residual_at(0.9)?, residual_at(0.99)?);
    Ok(Residual::Symbolic {
        ok: b < a,
        text: format!("|r(0.9)| = {a:.3e}, |r(0.99)| = {b:.3e}"),
    })
}

