//! Named identity checks. Each check computes `LHS − RHS` with the
//! evaluators and judges the residual: exact mode wants the zero series
//! mod `q^Q`, numeric modes want `|residual| ≤ bound + tol` with the bound
//! itself below `tol`.

mod checks;
mod qdiff;
mod sweep;

use crate::algebra::Composition;
use crate::error::{Error, Result};
use crate::qcore::{BackendConfig, Mode, QParam, Value};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::Instant;

pub use qdiff::{applicable_lemmas, qdiff_lemma_sides, qdiff_sides, QdiffLemma};
pub use sweep::{block_specs, default_sweep, lemma_cases, THETA_SAMPLES};

/// What a check needs from the backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Any backend; exact mode is tolerance-free.
    Series,
    /// Real numeric backend; exact requests run at `q = 1/2`, complex ones
    /// on the real line at the same `q`.
    Numeric,
    /// Complex backend.
    Complex,
    /// Purely symbolic; the backend is ignored.
    Symbolic,
}

/// One registry entry.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub params: &'static str,
    pub kind: Kind,
    /// Failures of soft checks only warn.
    pub hard: bool,
}

/// Parameters shared by all checks; each check reads the fields it needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Composition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Composition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<(u32, u32)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abc: Option<(f64, f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<String>,
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(s) = &self.s {
            parts.push(format!("s={s}"));
        }
        if let Some(t) = &self.t {
            parts.push(format!("t={t}"));
        }
        if let Some(w) = &self.word {
            parts.push(format!("word={w}"));
        }
        if let Some(b) = &self.blocks {
            let v: Vec<String> = b.iter().map(|(a, b)| format!("{a}:{b}")).collect();
            parts.push(format!("blocks={}", v.join(",")));
        }
        for (name, v) in [("m", self.m), ("n", self.n), ("k", self.k), ("j", self.j)] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        for (name, v) in [("theta", self.theta), ("x", self.x), ("y", self.y)] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        if let Some(b) = &self.b {
            let v: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            parts.push(format!("b={}", v.join(",")));
        }
        if let Some((a, b, c)) = self.abc {
            parts.push(format!("abc={a},{b},{c}"));
        }
        if let Some(w) = &self.which {
            parts.push(format!("which={w}"));
        }
        f.write_str(&parts.join("; "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Warn,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Warn => "warn",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub params: Params,
    pub backend: String,
    pub residual: String,
    pub residual_norm: f64,
    pub bound: f64,
    pub heuristic: bool,
    pub verdict: Verdict,
    pub hard: bool,
    pub ms: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4} {:<20} {:<40} [{}] residual {} ({:.1} ms)",
            self.verdict, self.id, self.params, self.backend, self.residual, self.ms
        )
    }
}

/// What a check computes.
pub(crate) enum Residual {
    Values(Vec<Value>),
    Symbolic { ok: bool, text: String },
}

pub(crate) const REGISTRY: &[IdentityInfo] = &[
    info("qstuffle", "ζ[s]ζ[t] = Σ over q-stuffles of s and t", "s, t admissible", Kind::Series),
    info("period1", "ζ[{k}^n] as a polynomial in ζ[jk] with (1−q) corrections", "k ≥ 2, n ≥ 1", Kind::Series),
    info("nproduct", "∏ ζ[s_i] = sum over ordered set partitions", "s: parts ≥ 2", Kind::Series),
    info("partition", "Σ_σ ζ[s_σ] = sum over unordered set partitions", "s: parts ≥ 2, at most 6", Kind::Series),
    info("parity", "ζ[s] + (−1)^m ζ[reverse s] reduces to lower depth", "s: first and last part ≥ 2", Kind::Series),
    info("gen_duality", "Z[p; m] = Z[p′; m] for dual block forms", "blocks a:b, m ≥ 0", Kind::Series),
    info("duality", "ζ[s] = ζ[dual s]", "s admissible", Kind::Series),
    info("sum_formula", "Σ_{|s|=k, depth n} ζ[s₁+1, s₂, …] = ζ[k+1]", "1 ≤ n ≤ k", Kind::Series),
    info("f_equals_g", "θ-coefficients of ζ̂[σ_θ w] and ζ̂[σ_θ τw] agree", "word admissible, m = M", Kind::Series),
    info("qdiff", "difference equation of f[w; θ] under θ ↦ qθ − 1", "blocks a:b (a, b ≥ 1), theta", Kind::Numeric),
    info("qdiff_head", "first-block shift of f, leading x-exponent > 1", "blocks, theta", Kind::Numeric),
    info("qdiff_head_unit", "first-block shift of f, leading x-exponent 1", "blocks, theta", Kind::Numeric),
    info("qdiff_shift", "moves the offset from block j−1 to block j", "blocks, j ≥ 2, theta", Kind::Numeric),
    info("qdiff_tail", "all offsets 1 against θ′ with the last y dropped", "blocks with b_s > 1, theta", Kind::Numeric),
    info("qdiff_tail_single", "closing step when the last block is x^a y", "blocks with s > 1, b_s = 1, theta", Kind::Numeric),
    info("qdiff_single_block", "Σ_δ (−θ)^{1−δ} f[x^{a−δ}y; θ] is invariant", "blocks = a:1 with a > 1, theta", Kind::Numeric),
    info("qdiff_xy", "θf[xy;θ] + (1−q) = θ′f[xy;θ′] − 1/θ′", "theta", Kind::Numeric),
    info("derivation", "ζ̂[∂_n w] = 0", "n ≥ 1, word admissible", Kind::Series),
    info("hoffman_derivation", "ζ̂[D₁w] = ζ̂[D̄₁w], also in composition form", "s admissible", Kind::Series),
    info("cyclic", "cyclic sum formula", "s with some part > 1", Kind::Series),
    info("cyclic_dual", "Σ over cyclic permutations of ζ* agrees for dual lists", "s admissible", Kind::Series),
    info("t_difference", "T[s] − T[rotated s] in terms of ζ", "s with some part > 1", Kind::Series),
    info("s0_t_zeta", "S[s, 0] = T[s] − ζ[s₁+1, s₂, …]", "s with some part > 1", Kind::Series),
    info("s_s_zeta", "S[s] = S[s₁−1, …, 1+s_last] − ζ[s₁, …, 1+s_last]", "s: s₁ ≥ 2, last part ≥ 0", Kind::Series),
    info("s1_t", "S[1, s₂, …, s_n − 1] = T[s₂, …, s_n]", "s = (s₂, …, s_n), last part ≥ 1", Kind::Series),
    info("multisection", "n^m λ_{q^n}[s; b^n] = [n]^{|s|} Σ_ε λ_q[s; εb]", "s, b, n", Kind::Complex),
    info("jackson_rep", "ζ[s] as an iterated Jackson integral", "s admissible, depth ≤ 3", Kind::Numeric),
    info("drin", "coefficients of the double generating function are ζ[m+2,{1}^n]", "m, n", Kind::Series),
    info("drin_markett", "the v³ column: ζ[m+2,1,1]", "m", Kind::Series),
    info("drin_symmetry", "generating-function coefficients are symmetric in m, n", "m, n", Kind::Series),
    info("euler", "2ζ[m+2,1] = (m+2)ζ[m+3] + (1−q)mζ[m+2] − Σ ζ[m+3−k]ζ[k]", "m ≥ 0", Kind::Series),
    info("heine_2phi1", "Σ (−1)^{m+n}[x]^{m+1}[y]^{n+1}ζ[m+2,{1}^n] = 1 − Γ_q(1+x)Γ_q(1+y)/Γ_q(1+x+y)", "x, y", Kind::Numeric),
    info("heine", "₂φ₁ at z = q^{c−a−b} is a ratio of Γ_q values", "abc", Kind::Numeric),
    info("log_qgamma", "power series of log Γ_q(1+x) in [x]_q", "x in (−1,1), k = K", Kind::Numeric),
    info("zeta_tilde", "ζ̃[k] = (q−1)^{k−1}ζ̃[1] + Σ (q−1)^{k−j}ζ[j]", "k ≥ 1", Kind::Series),
    info("exp_partial", "exp(Σ t^n ∂_n/n) = σ̄σ⁻¹ on x and y", "m = M", Kind::Symbolic),
    IdentityInfo {
        id: "q_to_1_trend",
        statement: "classical relations without (1−q) terms improve as q → 1",
        params: "which = newton | stuffle",
        kind: Kind::Numeric,
        hard: false,
    },
];

const fn info(id: &'static str, statement: &'static str, params: &'static str, kind: Kind) -> IdentityInfo {
    IdentityInfo {
        id,
        statement,
        params,
        kind,
        hard: true,
    }
}

pub fn list_identities() -> &'static [IdentityInfo] {
    REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static IdentityInfo> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// The backend a check of this kind actually runs on.
pub fn effective_backend(kind: Kind, cfg: &BackendConfig) -> BackendConfig {
    let numeric = |mode| {
        if cfg.mode == Mode::Exact {
            BackendConfig {
                mode,
                q: QParam::Float(0.5),
                ..cfg.clone()
            }
        } else {
            BackendConfig { mode, ..cfg.clone() }
        }
    };
    match kind {
        Kind::Series | Kind::Symbolic => cfg.clone(),
        Kind::Numeric => numeric(Mode::Float),
        Kind::Complex => numeric(Mode::Complex),
    }
}

fn judge(values: &[Value], cfg: &BackendConfig) -> (bool, f64, f64, bool) {
    let mut ok = true;
    let mut norm: f64 = 0.0;
    let mut bound: f64 = 0.0;
    let mut heuristic = false;
    for v in values {
        norm = norm.max(v.norm());
        bound = bound.max(v.tail_bound());
        heuristic |= v.is_heuristic();
        ok &= match v {
            Value::Exact(s) => s.is_zero(),
            _ => v.is_zero_within(cfg.tol) && v.tail_bound() <= cfg.tol,
        };
    }
    (ok, norm, bound, heuristic)
}

/// Runs one check.
pub fn verify(id: &str, params: &Params, backend: &BackendConfig) -> Result<CheckReport> {
    let entry = lookup(id)?;
    let cfg = effective_backend(entry.kind, backend);
    cfg.validate()?;
    let start = Instant::now();
    let residual = checks::dispatch(id, params, &cfg)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let (ok, text, norm, bound, heuristic) = match residual {
        Residual::Values(vs) => {
            let (ok, norm, bound, heuristic) = judge(&vs, &cfg);
            let text: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            (ok, text.join(" | "), norm, bound, heuristic)
        }
        Residual::Symbolic { ok, text } => (ok, text, if ok { 0.0 } else { 1.0 }, 0.0, false),
    };
    let verdict = match (ok, entry.hard) {
        (true, _) => Verdict::Pass,
        (false, true) => Verdict::Fail,
        (false, false) => Verdict::Warn,
    };
    let backend = match entry.kind {
        Kind::Symbolic => "symbolic".to_string(),
        _ => cfg.fingerprint(),
    };
    Ok(CheckReport {
        id: id.to_string(),
        params: params.clone(),
        backend,
        residual: text,
        residual_norm: norm,
        bound,
        heuristic,
        verdict,
        hard: entry.hard,
        ms,
    })
}

fn error_report(id: &str, params: &Params, cfg: &BackendConfig, e: &Error) -> CheckReport {
    let hard = lookup(id).map(|e| e.hard).unwrap_or(true);
    CheckReport {
        id: id.to_string(),
        params: params.clone(),
        backend: cfg.fingerprint(),
        residual: format!("error: {e}"),
        residual_norm: f64::INFINITY,
        bound: 0.0,
        heuristic: false,
        verdict: if hard { Verdict::Fail } else { Verdict::Warn },
        hard,
        ms: 0.0,
    }
}

/// Ids selected by a filter: `all`, or comma-separated ids, where a
/// trailing `*` matches a prefix. An empty filter selects nothing.
pub fn select(filter: &str) -> Result<Vec<&'static str>> {
    let mut out: Vec<&'static str> = Vec::new();
    for pat in filter.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let hits: Vec<&'static str> = if pat == "all" {
            REGISTRY.iter().map(|e| e.id).collect()
        } else if let Some(prefix) = pat.strip_suffix('*') {
            REGISTRY.iter().map(|e| e.id).filter(|id| id.starts_with(prefix)).collect()
        } else {
            vec![lookup(pat)?.id]
        };
        if hits.is_empty() {
            return Err(Error::UnknownIdentity(pat.to_string()));
        }
        for h in hits {
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    // registry order
    out.sort_by_key(|id| REGISTRY.iter().position(|e| e.id == *id));
    Ok(out)
}

/// Runs the default sweep of every selected id, in parallel, returning
/// reports in registry-then-parameter order. Errors become failed reports.
pub fn run_suite(filter: &str, backend: &BackendConfig) -> Result<Vec<CheckReport>> {
    let jobs: Vec<(&'static str, Params)> = select(filter)?
        .into_iter()
        .flat_map(|id| default_sweep(id).into_iter().map(move |p| (id, p)))
        .collect();
    Ok(jobs
        .par_iter()
        .map(|(id, p)| verify(id, p, backend).unwrap_or_else(|e| error_report(id, p, backend, &e)))
        .collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub warned: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.passed += 1,
                Verdict::Fail => s.failed += 1,
                Verdict::Warn => s.warned += 1,
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} passed, {} failed, {} warnings", self.passed, self.failed, self.warned)
    }
}

pub fn reports_to_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

/// Columns `id, params, verdict, residual_norm, ms`.
pub fn reports_to_csv(reports: &[CheckReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "params", "verdict", "residual_norm", "ms"]).expect("in-memory write");
    for r in reports {
        w.write_record([
            r.id.clone(),
            r.params.to_string(),
            r.verdict.to_string(),
            format!("{:e}", r.residual_norm),
            format!("{:.3}", r.ms),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}
