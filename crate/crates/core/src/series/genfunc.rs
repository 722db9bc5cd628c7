//! Generating functions for `ζ[m+2, {1}^n]`, the Euler convolution,
//! `₂φ₁` with Heine's summation and the series for `log Γ_q`.

use super::zeta::eval_zeta;
use crate::algebra::Composition;
use crate::error::{Error, Result};
use crate::qcore::{
    euler_gamma_q, qgamma, qint_f64, BackendConfig, EvalParams, FloatVal, Mode, QPoly, Rational,
    Value,
};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn zeta1(k: u32, p: &EvalParams) -> Result<Value> {
    eval_zeta(&Composition::new(vec![k]), p)
}

/// `ζ[m+2, {1}^n]`.
pub fn zeta_m2_ones(m: u32, n: usize, p: &EvalParams) -> Result<Value> {
    let mut parts = vec![m + 2];
    parts.extend(std::iter::repeat_n(1, n));
    eval_zeta(&Composition::new(parts), p)
}

type CoeffCache = Mutex<HashMap<(u32, String), Value>>;

fn coeff_cache() -> &'static CoeffCache {
    static CACHE: OnceLock<CoeffCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `c_k = (1/k) Σ_{j=2}^k (q−1)^{k−j} ζ[j]`, zero for `k < 2`.
pub fn gen_func_coeff(k: u32, p: &EvalParams) -> Result<Value> {
    let cfg = &p.backend;
    if k < 2 {
        return Ok(cfg.zero());
    }
    let key = (k, format!("{}|{:?}", cfg.fingerprint(), p.index_cap));
    if let Some(v) = coeff_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let qm1 = cfg.poly(&(&QPoly::q() - &QPoly::one()));
    let mut acc = cfg.zero();
    for j in 2..=k {
        acc = &acc + &(&qm1.pow(k - j, cfg) * &zeta1(j, p)?);
    }
    let v = acc.scale(&Rational::new(1.into(), (k as i64).into()));
    coeff_cache().lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Polynomial in `u, v` truncated at `u^{du} v^{dv}`.
#[derive(Clone)]
struct BiPoly {
    du: usize,
    dv: usize,
    c: Vec<Value>,
}

impl BiPoly {
    fn zero(du: usize, dv: usize, cfg: &BackendConfig) -> Self {
        BiPoly {
            du,
            dv,
            c: vec![cfg.zero(); (du + 1) * (dv + 1)],
        }
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.dv + 1) + j
    }

    fn get(&self, i: usize, j: usize) -> &Value {
        &self.c[self.idx(i, j)]
    }

    fn add_at(&mut self, i: usize, j: usize, v: &Value) {
        if i <= self.du && j <= self.dv {
            let k = self.idx(i, j);
            self.c[k] = &self.c[k] + v;
        }
    }

    fn add(&mut self, o: &BiPoly, sign: i64) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a = if sign > 0 { &*a + b } else { &*a - b };
        }
    }

    fn scale(&self, v: &Value) -> BiPoly {
        BiPoly {
            c: self.c.iter().map(|x| x * v).collect(),
            ..*self
        }
    }

    fn mul(&self, o: &BiPoly, cfg: &BackendConfig) -> BiPoly {
        let mut out = BiPoly::zero(self.du, self.dv, cfg);
        for i in 0..=self.du {
            for j in 0..=self.dv {
                let a = self.get(i, j);
                if a.is_zero_within(0.0) && a.tail_bound() == 0.0 {
                    continue;
                }
                for k in 0..=self.du - i {
                    for l in 0..=self.dv - j {
                        out.add_at(i + k, j + l, &(a * o.get(k, l)));
                    }
                }
            }
        }
        out
    }
}

/// Coefficient of `u^{m+1} v^{n+1}` in
/// `1 − exp{Σ_{k≥2} (u^k + v^k − (u+v+(1−q)uv)^k) c_k}`.
pub fn drin_rhs_coeff(m: usize, n: usize, p: &EvalParams) -> Result<Value> {
    let cfg = &p.backend;
    if m + n > 12 {
        return Err(Error::Resource(format!("degree m+n = {} is above 12", m + n)));
    }
    let (du, dv) = (m + 1, n + 1);
    let kmax = (du + dv) as u32;
    let mut lin = BiPoly::zero(du, dv, cfg);
    lin.add_at(1, 0, &cfg.one());
    lin.add_at(0, 1, &cfg.one());
    lin.add_at(1, 1, &cfg.poly(&QPoly::one_minus_q_pow(1)));
    let mut exponent = BiPoly::zero(du, dv, cfg);
    let mut power = lin.clone();
    for k in 2..=kmax {
        power = power.mul(&lin, cfg);
        let ck = gen_func_coeff(k, p)?;
        let mut term = power.scale(&ck);
        let mut pure = BiPoly::zero(du, dv, cfg);
        pure.add_at(k as usize, 0, &ck);
        pure.add_at(0, k as usize, &ck);
        term.add(&pure, -1);
        exponent.add(&term, -1);
    }
    // exp(E) − 1 = Σ_{r≥1} E^r/r!; E has no term below total degree 2
    let mut acc = BiPoly::zero(du, dv, cfg);
    let mut e_r = exponent.clone();
    for r in 1..=kmax / 2 {
        if r > 1 {
            e_r = e_r.mul(&exponent, cfg).scale(&cfg.constant(&Rational::new(1.into(), (r as i64).into())));
        }
        acc.add(&e_r, 1);
    }
    Ok(-acc.get(du, dv))
}

/// `2ζ[m+2,1] − (m+2)ζ[m+3] − (1−q)mζ[m+2] + Σ_{k=2}^{m+1} ζ[m+3−k]ζ[k]`.
pub fn euler_convolution_residual(m: u32, p: &EvalParams) -> Result<Value> {
    euler_residual(m, m + 3, p)
}

/// The same residual with `(m+2)ζ[m+2]` in place of `(m+2)ζ[m+3]`; it does
/// not vanish, already at `m = 0`.
pub fn euler_statement_residual(m: u32, p: &EvalParams) -> Result<Value> {
    euler_residual(m, m + 2, p)
}

fn euler_residual(m: u32, lead: u32, p: &EvalParams) -> Result<Value> {
    let cfg = &p.backend;
    let two_zeta = eval_zeta(&Composition::new(vec![m + 2, 1]), p)?.scale(&Rational::from_integer(2.into()));
    let lead_term = zeta1(lead, p)?.scale(&Rational::from_integer((m as i64 + 2).into()));
    let corr = &cfg.poly(&QPoly::one_minus_q_pow(1).scale(&Rational::from_integer((m as i64).into())))
        * &zeta1(m + 2, p)?;
    let mut acc = &(&two_zeta - &lead_term) - &corr;
    for k in 2..=m + 1 {
        acc = &acc + &(&zeta1(m + 3 - k, p)? * &zeta1(k, p)?);
    }
    Ok(acc)
}

fn require_float(p: &EvalParams, what: &str) -> Result<f64> {
    if p.backend.mode == Mode::Exact {
        return Err(Error::Unsupported(format!("{what} needs a numeric backend")));
    }
    p.backend.validate()?;
    Ok(p.backend.q_f64())
}

/// `₂φ₁[q^a, q^b; q^c | z] = Σ_n (q^a;q)_n (q^b;q)_n / ((q^c;q)_n (q;q)_n) z^n`.
pub fn eval_2phi1(a: f64, b: f64, c: f64, z: f64, p: &EvalParams) -> Result<Value> {
    let q = require_float(p, "₂φ₁")?;
    if z.abs() >= 1.0 {
        return Err(Error::Divergence(format!("₂φ₁ needs |z| < 1, got {z}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0usize;
    let tol = p.backend.tol / 100.0;
    loop {
        let nf = n as f64;
        let den = (1.0 - q.powf(c + nf)) * (1.0 - q.powf(1.0 + nf));
        if den == 0.0 {
            return Err(Error::Pole(format!("(q^{c};q)_n vanishes at n = {}", n + 1)));
        }
        term *= (1.0 - q.powf(a + nf)) * (1.0 - q.powf(b + nf)) / den * z;
        n += 1;
        sum += term;
        // the ratio bound decreases in n once c + n > 0
        let m = n as f64;
        if c + m > 0.0 {
            let r = z.abs() * (1.0 + q.powf(a + m)) * (1.0 + q.powf(b + m))
                / ((1.0 - q.powf(c + m)) * (1.0 - q.powf(1.0 + m)));
            if r < 1.0 {
                let tail = term.abs() * r / (1.0 - r);
                if tail <= tol || term == 0.0 {
                    let bound = tail + sum.abs() * f64::EPSILON * (m + 10.0);
                    return Ok(p.backend.float_value(FloatVal::new(sum, bound, false)));
                }
            }
        }
        if n > 1_000_000 {
            return Err(Error::Resource("₂φ₁ did not settle".into()));
        }
    }
}

/// Heine's value `Γ_q(c)Γ_q(c−a−b) / (Γ_q(c−a)Γ_q(c−b))` of `₂φ₁` at `z = q^{c−a−b}`.
pub fn heine_gamma_ratio(a: f64, b: f64, c: f64, p: &EvalParams) -> Result<Value> {
    require_float(p, "Γ_q")?;
    let cfg = &p.backend;
    let num = qgamma(c, cfg)? * qgamma(c - a - b, cfg)?;
    let den = qgamma(c - a, cfg)? * qgamma(c - b, cfg)?;
    Ok(cfg.float_value(num * den.recip()))
}

/// `Σ_{m,n≥0} (−1)^{m+n} [x]^{m+1} [y]^{n+1} ζ[m+2, {1}^n]`, summed by
/// total degree until two consecutive diagonals are negligible.
pub fn heine_double_sum(x: f64, y: f64, p: &EvalParams) -> Result<Value> {
    let q = require_float(p, "the double sum")?;
    let (qx, qy) = (qint_f64(x, q), qint_f64(y, q));
    let target = p.backend.tol / 1000.0;
    let mut acc = FloatVal::exact(0.0);
    let mut quiet = 0;
    let mut last = 0.0;
    for d in 0..120u32 {
        let mut diag = FloatVal::exact(0.0);
        for m in 0..=d {
            let n = d - m;
            let z = zeta_m2_ones(m, n as usize, p)?
                .as_float()
                .ok_or_else(|| Error::Unsupported("the double sum needs real values".into()))?;
            let w = qx.powi(m as i32 + 1) * qy.powi(n as i32 + 1);
            diag = diag + z.scale(if d % 2 == 0 { w } else { -w });
        }
        acc = acc + diag;
        last = diag.value.abs();
        if last < target {
            quiet += 1;
            if quiet == 2 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let out = FloatVal::new(acc.value, acc.tail_bound + 2.0 * last, true);
    Ok(p.backend.float_value(out))
}

/// `1 − Γ_q(1+x)Γ_q(1+y)/Γ_q(1+x+y)`.
pub fn heine_gamma_side(x: f64, y: f64, p: &EvalParams) -> Result<Value> {
    require_float(p, "Γ_q")?;
    let cfg = &p.backend;
    let r = qgamma(1.0 + x, cfg)? * qgamma(1.0 + y, cfg)? * qgamma(1.0 + x + y, cfg)?.recip();
    Ok(cfg.float_value(FloatVal::exact(1.0) - r))
}

/// `−γ_q x + Σ_{k=2}^K (−1)^k [x]^k c_k`, a truncation of `log Γ_q(1+x)`.
/// The bound adds twice the last term as a remainder estimate.
pub fn log_qgamma_series(x: f64, k_max: u32, p: &EvalParams) -> Result<Value> {
    let q = require_float(p, "log Γ_q")?;
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(format!("the log Γ_q series needs −1 < x < 1, got {x}")));
    }
    if k_max < 2 {
        return Err(Error::Parameter("K must be at least 2".into()));
    }
    let qx = qint_f64(x, q);
    let mut acc = euler_gamma_q(&p.backend)?.scale(-x);
    let mut last = 0.0;
    for k in 2..=k_max {
        let ck = gen_func_coeff(k, p)?
            .as_float()
            .ok_or_else(|| Error::Unsupported("complex coefficients".into()))?;
        let w = if k % 2 == 0 { qx.powi(k as i32) } else { -qx.powi(k as i32) };
        let term = ck.scale(w);
        last = term.value.abs();
        acc = acc + term;
    }
    let out = FloatVal::new(acc.value, acc.tail_bound + 2.0 * last, true);
    Ok(p.backend.float_value(out))
}

/// `log Γ_q(1+x)` from the product formula.
pub fn log_qgamma_direct(x: f64, p: &EvalParams) -> Result<Value> {
    require_float(p, "Γ_q")?;
    let g = qgamma(1.0 + x, &p.backend)?;
    let bound = g.tail_bound / (g.value.abs() - g.tail_bound).max(f64::MIN_POSITIVE);
    Ok(p.backend.float_value(FloatVal::new(g.value.ln(), bound, g.heuristic)))
}
