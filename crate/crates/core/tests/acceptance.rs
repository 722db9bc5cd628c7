//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Lines go straight to stdout so they show up without `--nocapture`.

mod common;

use std::io::Write;

use common::{brute_zeta, lib_coeffs, mul, Ser};
use qzeta::algebra::{sigma_theta, BlockForm, Letter, ParamWordSeries};
use qzeta::identities::{default_sweep, verify, Params, THETA_SAMPLES};
use qzeta::qcore::{EvalParams, QPoly};
use qzeta::series::{euler_statement_residual, eval_zeta, eval_zeta_combo};
use qzeta::stuffle::qstuffle_product;
use qzeta::{BackendConfig, Composition, Error, Word, WordPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    label: &'static str,
    checks: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new(label: &'static str) -> Self {
        Outcome {
            label,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn run(&mut self, id: &str, params: impl IntoIterator<Item = Params>, cfg: &BackendConfig) {
        for p in params {
            self.checks += 1;
            match verify(id, &p, cfg) {
                Ok(r) if r.passed() => {}
                Ok(r) => self.failures.push(format!("{id} [{p}]: {}", r.residual)),
                Err(e) => self.failures.push(format!("{id} [{p}]: error {e}")),
            }
        }
    }

    fn expect(&mut self, cond: bool, what: impl Into<String>) {
        self.checks += 1;
        if !cond {
            self.failures.push(what.into());
        }
    }

    fn report(&self) {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        let mut line = format!("[{status}] {} ({} checks)", self.label, self.checks);
        if let Some(first) = self.failures.first() {
            line.push_str(&format!("; {} failed, first: {first}", self.failures.len()));
        }
        line.push('\n');
        std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    }
}

fn admissible_up_to(w: u32) -> Vec<Composition> {
    (2..=w).flat_map(Composition::admissible_of_weight).collect()
}

fn with_s(s: Composition) -> Params {
    Params {
        s: Some(s),
        ..Params::default()
    }
}

fn float(tol: f64) -> BackendConfig {
    BackendConfig::float(0.5).with_tol(tol)
}

fn stuffle_products() -> Outcome {
    let mut o = Outcome::new("q-stuffle products, weight(s)+weight(t) <= 8, Q = 25");
    let all = admissible_up_to(6);
    let mut params = Vec::new();
    for s in &all {
        for t in &all {
            if s.weight() + t.weight() <= 8 {
                params.push(Params {
                    s: Some(s.clone()),
                    t: Some(t.clone()),
                    ..Params::default()
                });
            }
        }
    }
    o.run("qstuffle", params, &BackendConfig::exact(25));
    o
}

fn duality() -> Outcome {
    let mut o = Outcome::new("duality, admissible weight <= 8, Q = 40");
    let all = admissible_up_to(8);
    o.expect(all.len() == 127, format!("expected 127 compositions, got {}", all.len()));
    o.run("duality", all.into_iter().map(with_s), &BackendConfig::exact(40));
    o
}

fn generalized_duality() -> Outcome {
    let mut o = Outcome::new("generalized duality, weight <= 6, m <= 3, Q = 25; f = g with M = 3");
    let cfg = BackendConfig::exact(25);
    let mut params = Vec::new();
    for w in 2..=6 {
        for bf in BlockForm::all_of_weight(w) {
            for m in 0..=3 {
                params.push(Params {
                    blocks: Some(bf.blocks.clone()),
                    m: Some(m),
                    ..Params::default()
                });
            }
        }
    }
    o.run("gen_duality", params, &cfg);
    let dual_ok = o.ok();
    let mut cross = Outcome::new("");
    let words = (2..=6).flat_map(Word::admissible_of_degree).map(|w| Params {
        word: Some(w.to_string()),
        m: Some(3),
        ..Params::default()
    });
    cross.run("f_equals_g", words, &cfg);
    o.checks += cross.checks;
    o.expect(dual_ok == cross.ok(), "generalized duality and f = g disagree");
    o.failures.extend(cross.failures);
    o
}

fn sum_formula() -> Outcome {
    let mut o = Outcome::new("sum formula, 1 <= n <= k <= 5, Q = 30");
    let params = (1..=5).flat_map(|k| {
        (1..=k).map(move |n| Params {
            k: Some(k),
            n: Some(n),
            ..Params::default()
        })
    });
    o.run("sum_formula", params, &BackendConfig::exact(30));
    o
}

fn derivations() -> Outcome {
    let mut o = Outcome::new("derivation relations, n <= 3, degree <= 6, Q = 20");
    let cfg = BackendConfig::exact(20);
    let mut params = Vec::new();
    for n in 1..=3 {
        for d in 2..=6 {
            for w in Word::admissible_of_degree(d) {
                params.push(Params {
                    word: Some(w.to_string()),
                    n: Some(n),
                    ..Params::default()
                });
            }
        }
    }
    o.run("derivation", params, &cfg);
    o.run("hoffman_derivation", admissible_up_to(6).into_iter().map(with_s), &cfg);
    o
}

fn cyclic_and_bridges() -> Outcome {
    let mut o = Outcome::new("cyclic sums and S/T bridges, q = 0.5, tol 1e-8, truncations 200 and 400");
    let comps: Vec<Composition> = (1..=5)
        .flat_map(Composition::all_of_weight)
        .filter(|s| s.parts().iter().any(|&x| x > 1))
        .collect();
    let admissible: Vec<Composition> = comps.iter().filter(|s| s.is_admissible()).cloned().collect();
    for trunc in [200, 400] {
        let cfg = float(1e-8).with_trunc(trunc);
        o.run("cyclic", comps.iter().cloned().map(with_s), &cfg);
        o.run("cyclic_dual", admissible.iter().cloned().map(with_s), &cfg);
        o.run("t_difference", comps.iter().cloned().map(with_s), &cfg);
    }
    let cfg = float(1e-8);
    o.run("s0_t_zeta", comps.iter().cloned().map(with_s), &cfg);
    o.run("s1_t", comps.iter().cloned().map(with_s), &cfg);
    o.run("s_s_zeta", default_sweep("s_s_zeta"), &cfg);
    o
}

fn difference_equation() -> Outcome {
    let mut o = Outcome::new("difference equation and partial-fraction identities, degree <= 5, tol 1e-8");
    o.expect(THETA_SAMPLES.len() >= 4, "too few theta samples");
    let cfg = float(1e-8);
    for id in [
        "qdiff",
        "qdiff_head",
        "qdiff_head_unit",
        "qdiff_shift",
        "qdiff_tail",
        "qdiff_tail_single",
        "qdiff_single_block",
        "qdiff_xy",
    ] {
        let sweep = default_sweep(id);
        o.expect(!sweep.is_empty(), format!("{id}: empty sweep"));
        o.run(id, sweep, &cfg);
    }
    o
}

fn generating_functions() -> Outcome {
    let mut o = Outcome::new("generating functions: two-variable, one-variable and Euler, Q = 20");
    let cfg = BackendConfig::exact(20);
    let drin = (0..=5).flat_map(|m| {
        (0..=5 - m).map(move |n| Params {
            m: Some(m),
            n: Some(n),
            ..Params::default()
        })
    });
    o.run("drin", drin, &cfg);
    let ms = |top: u32| {
        (0..=top).map(|m| Params {
            m: Some(m),
            ..Params::default()
        })
    };
    o.run("drin_markett", ms(3), &cfg);
    o.run("euler", ms(4), &cfg);
    let stated = euler_statement_residual(0, &EvalParams::from(cfg)).unwrap();
    o.expect(!stated.is_zero_within(0.0), "literal Euler statement unexpectedly vanishes at m = 0");
    o
}

fn heine_and_log_gamma() -> Outcome {
    let mut o = Outcome::new("Heine 2phi1 and log Gamma_q series, q = 0.5, tol 1e-8");
    let cfg = float(1e-8);
    let xy = [(0.3, 0.4), (0.25, 0.5)].map(|(x, y)| Params {
        x: Some(x),
        y: Some(y),
        ..Params::default()
    });
    o.run("heine_2phi1", xy, &cfg);
    let xs = [-0.3, 0.3, 0.4].map(|x| Params {
        x: Some(x),
        ..Params::default()
    });
    o.run("log_qgamma", xs, &cfg);
    o
}

fn jackson() -> Outcome {
    let mut o = Outcome::new("iterated Jackson integrals, depth <= 2, weight <= 4, tol 1e-6");
    let params = admissible_up_to(4).into_iter().filter(|s| s.depth() <= 2).map(with_s);
    o.run("jackson_rep", params, &float(1e-6));
    o
}

fn multisection_params(b: f64) -> Vec<Params> {
    let mut out = Vec::new();
    for n in [2, 3] {
        for s in (1..=4).flat_map(Composition::all_of_weight).filter(|s| s.depth() <= 2) {
            out.push(Params {
                b: Some(vec![b; s.depth()]),
                s: Some(s),
                n: Some(n),
                ..Params::default()
            });
        }
    }
    out
}

fn multisection_convergent() -> Outcome {
    let mut o = Outcome::new("multisection, b = 2, n in {2,3}, complex backend, tol 1e-8");
    o.run("multisection", multisection_params(2.0), &BackendConfig::complex(0.5).with_tol(1e-8));
    o
}

/// `|b| = 1` makes the series diverge, so this criterion cannot be met.
/// It is reported as FAIL; the test only insists the failure is a clean
/// divergence error.
fn multisection_unit(divergent: &mut bool) -> Outcome {
    let mut o = Outcome::new("multisection, b = 1 (series diverges)");
    let cfg = BackendConfig::complex(0.5).with_tol(1e-8);
    *divergent = true;
    for p in multisection_params(1.0) {
        o.checks += 1;
        match verify("multisection", &p, &cfg) {
            Err(Error::Divergence(_)) => o.failures.push(format!("[{p}]: diverges")),
            Err(e) => {
                *divergent = false;
                o.failures.push(format!("[{p}]: unexpected error {e}"));
            }
            Ok(r) => {
                *divergent = false;
                if !r.passed() {
                    o.failures.push(format!("[{p}]: {}", r.residual));
                }
            }
        }
    }
    o
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| if rng.gen_bool(0.5) { Letter::X } else { Letter::Y }).collect())
}

fn algebra_structure() -> Outcome {
    let mut o = Outcome::new("exp partial identity M <= 4; sigma_theta and tau on 500 random word pairs");
    let ms = (1..=4).map(|m| Params {
        m: Some(m),
        ..Params::default()
    });
    o.run("exp_partial", ms, &BackendConfig::exact(20));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        let (u, v) = (random_word(&mut rng, 4), random_word(&mut rng, 4));
        let uv = u.concat(&v);
        let lhs = sigma_theta(&WordPoly::from_word(uv.clone()), 3);
        let rhs: ParamWordSeries =
            sigma_theta(&WordPoly::from_word(u.clone()), 3).mul(&sigma_theta(&WordPoly::from_word(v.clone()), 3));
        o.expect(lhs == rhs, format!("sigma_theta({u}{v})"));
        o.expect(uv.tau() == v.tau().concat(&u.tau()), format!("tau({u}{v})"));
    }
    o
}

fn oracle_fixtures() -> Outcome {
    let mut o = Outcome::new("brute-force oracle fixtures for zeta(2) and zeta(2)^2");
    let exact = |n| EvalParams::from(BackendConfig::exact(n));
    let frozen: Ser = vec![0, 1, 1, -1, 2, -4];
    let z2 = eval_zeta(&Composition::new(vec![2]), &exact(6)).unwrap();
    o.expect(brute_zeta(&[2], 6) == frozen, "oracle drifted from frozen zeta(2)");
    o.expect(lib_coeffs(&z2, 6) == frozen, "zeta(2) coefficients");

    let n = 16;
    let two = Composition::new(vec![2]);
    let prod = qstuffle_product(&two, &two).unwrap();
    o.expect(prod.coeff(&Composition::new(vec![2, 2])) == QPoly::from_int(2), "coefficient of (2,2)");
    o.expect(prod.coeff(&Composition::new(vec![3])) == QPoly::one_minus_q_pow(1), "coefficient of (3)");
    let z = brute_zeta(&[2], n);
    let lib = eval_zeta_combo(&prod, &exact(n)).unwrap();
    o.expect(lib_coeffs(&lib, n) == mul(&z, &z, n), "zeta(2)^2 expansion");
    o
}

#[test]
fn acceptance_criteria() {
    let mut divergent = false;
    let outcomes = vec![
        stuffle_products(),
        duality(),
        generalized_duality(),
        sum_formula(),
        derivations(),
        cyclic_and_bridges(),
        difference_equation(),
        generating_functions(),
        heine_and_log_gamma(),
        jackson(),
        multisection_convergent(),
        multisection_unit(&mut divergent),
        algebra_structure(),
        oracle_fixtures(),
    ];
    let mut hard_failures = Vec::new();
    for o in &outcomes {
        o.report();
        if !o.ok() && !o.label.contains("diverges") {
            hard_failures.push(o.label);
        }
    }
    assert!(divergent, "b = 1 multisection should fail by divergence only");
    assert!(hard_failures.is_empty(), "failed: {hard_failures:?}");
}
