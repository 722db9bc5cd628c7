use super::{BackendConfig, FloatVal, Mode, QPoly, QSeries, Rational, Value};
use crate::error::{Error, Result};
use num_traits::One;

/// `[n]_q = 1 + q + … + q^{n−1}` in the backend's scalar type.
pub fn qint(n: u64, cfg: &BackendConfig) -> Value {
    match cfg.mode {
        Mode::Exact => {
            let order = cfg.order;
            let v = (0..order)
                .map(|i| {
                    if (i as u64) < n {
                        Rational::one()
                    } else {
                        Rational::from_integer(0.into())
                    }
                })
                .collect();
            Value::Exact(QSeries::from_coeffs(v, order))
        }
        _ => cfg.float_value(FloatVal::exact(qint_f64(n as f64, cfg.q_f64()))),
    }
}

/// `[x]_q = (1 − q^x)/(1 − q)` for real `x`.
pub fn qint_f64(x: f64, q: f64) -> f64 {
    -(x * q.ln()).exp_m1() / (1.0 - q)
}

/// Length of an asymmetric q-power: finite or the infinite product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductLength {
    Finite(u64),
    Infinite,
}

/// `(x + y)_q^n = ∏_{k<n} (x + y q^k)`.
///
/// The infinite product needs `x = 1`. In exact mode it is then computed
/// exactly, as every factor with `k ≥ Q − val(y)` is `1 mod q^Q`; numerically
/// it is cut once `|y q^k| < tol/10` and the rest is bounded geometrically.
pub fn qpow_asym(x: &Value, y: &Value, n: ProductLength, cfg: &BackendConfig) -> Result<Value> {
    let q = cfg.q_value();
    match n {
        ProductLength::Finite(n) => {
            let mut acc = cfg.one();
            let mut qk = cfg.one();
            for _ in 0..n {
                acc = &acc * &(x + &(y * &qk));
                qk = &qk * &q;
            }
            Ok(acc)
        }
        ProductLength::Infinite => {
            if *x != cfg.one() {
                return Err(Error::Unsupported(
                    "infinite asymmetric power needs x = 1".into(),
                ));
            }
            match (cfg.mode, y) {
                (Mode::Exact, Value::Exact(ys)) => {
                    let order = cfg.order;
                    let mut acc = QSeries::one(order);
                    for k in 0..order {
                        let factor = &QSeries::one(order) + &ys.mul_poly(&QPoly::monomial(Rational::one(), k));
                        acc = &acc * &factor;
                    }
                    Ok(Value::Exact(acc))
                }
                (Mode::Exact, _) => Err(Error::Unsupported("mixed backends".into())),
                _ => {
                    let yv = y
                        .to_complex()
                        .ok_or_else(|| Error::Unsupported("mixed backends".into()))?;
                    let qf = cfg.q_f64();
                    let mut acc = num_complex::Complex64::new(1.0, 0.0);
                    let mut term = yv.value;
                    let mut k = 0usize;
                    while term.norm() >= cfg.tol / 10.0 {
                        acc *= 1.0 + term;
                        term *= qf;
                        k += 1;
                        if k > 1_000_000 {
                            return Err(Error::Resource("asymmetric power did not settle".into()));
                        }
                    }
                    let t = term.norm();
                    let log_tail = t / ((1.0 - qf) * (1.0 - t));
                    let bound = acc.norm() * log_tail.exp_m1() + yv.tail_bound * acc.norm();
                    if yv.value.im == 0.0 && cfg.mode == Mode::Float {
                        Ok(Value::Float(FloatVal::new(acc.re, bound, yv.heuristic)))
                    } else {
                        Ok(Value::Complex(super::ComplexVal::new(acc, bound, yv.heuristic)))
                    }
                }
            }
        }
    }
}

fn infinite_float(y: f64, cfg: &BackendConfig) -> Result<FloatVal> {
    // products get combined into ratios of several Γ_q values
    let cfg = &cfg.clone().with_tol(cfg.tol / 100.0);
    let one = cfg.float_value(FloatVal::exact(1.0));
    let yv = cfg.float_value(FloatVal::exact(y));
    match qpow_asym(&one, &yv, ProductLength::Infinite, cfg)? {
        Value::Float(f) => Ok(f),
        Value::Complex(z) => Ok(FloatVal::new(z.value.re, z.tail_bound, z.heuristic)),
        Value::Exact(_) => unreachable!("numeric backend"),
    }
}

/// `Γ_q(x) = (1−q)_q^∞ (1−q)^{1−x} / (1−q^x)_q^∞` for `x > 0`.
pub fn qgamma(x: f64, cfg: &BackendConfig) -> Result<FloatVal> {
    if cfg.mode == Mode::Exact {
        return Err(Error::Unsupported("Γ_q needs a numeric backend".into()));
    }
    cfg.validate()?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Γ_q needs x > 0, got {x}")));
    }
    let q = cfg.q_f64();
    let num = infinite_float(-q, cfg)?;
    let den = infinite_float(-q.powf(x), cfg)?;
    let prefactor = FloatVal::exact((1.0 - q).powf(1.0 - x));
    Ok(prefactor * num * den.recip())
}

/// `γ_q = log(1−q) − (log q)/(1−q) · Σ_{n≥1} q^n/[n]_q`.
pub fn euler_gamma_q(cfg: &BackendConfig) -> Result<FloatVal> {
    if cfg.mode == Mode::Exact {
        return Err(Error::Unsupported("γ_q needs a numeric backend".into()));
    }
    cfg.validate()?;
    let q = cfg.q_f64();
    // q^n/[n] = (1−q) q^n/(1−q^n) ≤ q^n/(1 − q^{N+1}) beyond N
    let mut sum = 0.0;
    let mut qn = 1.0;
    let mut n = 0u64;
    let tail = loop {
        n += 1;
        qn *= q;
        sum += (1.0 - q) * qn / (1.0 - qn);
        let t = qn * q / ((1.0 - q) * (1.0 - qn * q));
        if t * q.ln().abs() / (1.0 - q) < cfg.tol / 10.0 || n > 10_000_000 {
            break t;
        }
    };
    let factor = q.ln() / (1.0 - q);
    let value = (1.0 - q).ln() - factor * sum;
    Ok(FloatVal::new(
        value,
        tail * factor.abs() + value.abs() * 1e-15 * (n as f64).sqrt(),
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;

    #[test]
    fn qint_examples() {
        let cfg = BackendConfig::float(0.5);
        assert_eq!(qint(0, &cfg).as_float().unwrap().value, 0.0);
        assert_eq!(qint(3, &cfg).as_float().unwrap().value, 1.75);
        let ex = qint(2, &BackendConfig::exact(4));
        assert_eq!(ex.to_string(), "1 + q + O(q^4)");
    }

    #[test]
    fn finite_asymmetric_power() {
        let cfg = BackendConfig::float(0.5);
        let one = cfg.one();
        let y = cfg.constant(&rat(-1, 2));
        let v = qpow_asym(&one, &y, ProductLength::Finite(2), &cfg).unwrap();
        assert!((v.as_float().unwrap().value - 0.375).abs() < 1e-15);
        let zero = cfg.zero();
        let v = qpow_asym(&one, &zero, ProductLength::Finite(5), &cfg).unwrap();
        assert_eq!(v.as_float().unwrap().value, 1.0);
    }

    #[test]
    fn exact_infinite_product_is_euler_function() {
        // (q; q)_∞ = 1 − q − q² + q⁵ + q⁷ − …
        let cfg = BackendConfig::exact(8);
        let y = Value::Exact(QPoly::monomial(rat(-1, 1), 1).to_series(8));
        let v = qpow_asym(&cfg.one(), &y, ProductLength::Infinite, &cfg).unwrap();
        assert_eq!(v.to_string(), "1 - q - q^2 + q^5 + q^7 + O(q^8)");
    }

    #[test]
    fn gamma_small_integers() {
        let cfg = BackendConfig::float(0.5).with_tol(1e-14);
        for (x, want) in [(1.0, 1.0), (2.0, 1.0), (3.0, 1.5)] {
            let g = qgamma(x, &cfg).unwrap();
            assert!((g.value - want).abs() < 1e-12, "Γ_q({x}) = {g}");
        }
        assert!(qgamma(0.0, &cfg).is_err());
    }
}
