//! Default parameter sweeps for `run_suite`.

use super::qdiff::{applicable_lemmas, QdiffLemma};
use super::Params;
use crate::algebra::{BlockForm, Composition, Word};

/// θ samples for the difference equation; all avoid the poles of both
/// `θ` and `qθ − 1` at `q = 1/2`.
pub const THETA_SAMPLES: [f64; 4] = [-0.7, -0.3, 0.2, 0.5];

/// Every block list `(a_i, b_i)`, `a_i, b_i ≥ 1`, of degree `Σ(a_i+b_i) ≤ max_degree`.
pub fn block_specs(max_degree: u32) -> Vec<Vec<(u32, u32)>> {
    fn go(left: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for a in 1..left {
            for b in 1..=left - a {
                cur.push((a, b));
                go(left - a - b, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(max_degree, &mut Vec::new(), &mut out);
    out.sort_by_key(|b| (b.iter().map(|&(a, b)| a + b).sum::<u32>(), b.clone()));
    out
}

fn comps(max_weight: u32, admissible: bool) -> Vec<Composition> {
    (1..=max_weight)
        .flat_map(|w| {
            if admissible {
                Composition::admissible_of_weight(w)
            } else {
                Composition::all_of_weight(w)
            }
        })
        .filter(|s| !s.is_empty())
        .collect()
}

fn with_s(s: Composition) -> Params {
    Params {
        s: Some(s),
        ..Params::default()
    }
}

fn lemma_id(l: QdiffLemma) -> &'static str {
    match l {
        QdiffLemma::Head => "qdiff_head",
        QdiffLemma::HeadUnit => "qdiff_head_unit",
        QdiffLemma::Shift(_) => "qdiff_shift",
        QdiffLemma::Tail => "qdiff_tail",
        QdiffLemma::TailSingle => "qdiff_tail_single",
        QdiffLemma::SingleBlock => "qdiff_single_block",
        QdiffLemma::Xy => "qdiff_xy",
    }
}

/// `(blocks, j)` pairs for which the lemma with this id applies.
pub fn lemma_cases(id: &str, max_degree: u32) -> Vec<(Vec<(u32, u32)>, Option<u32>)> {
    let mut out = Vec::new();
    for blocks in block_specs(max_degree) {
        for l in applicable_lemmas(&blocks) {
            if lemma_id(l) == id {
                let j = match l {
                    QdiffLemma::Shift(j) => Some(j as u32),
                    _ => None,
                };
                out.push((blocks.clone(), j));
            }
        }
    }
    out
}

/// The parameter records `run_suite` checks for one registry id.
pub fn default_sweep(id: &str) -> Vec<Params> {
    let mut out = Vec::new();
    match id {
        "qstuffle" => {
            let all = comps(5, true);
            for s in &all {
                for t in &all {
                    if s.weight() + t.weight() <= 6 {
                        out.push(Params {
                            s: Some(s.clone()),
                            t: Some(t.clone()),
                            ..Params::default()
                        });
                    }
                }
            }
        }
        "period1" => {
            for k in 2..=4 {
                for n in 1..=3 {
                    out.push(Params {
                        k: Some(k),
                        n: Some(n),
                        ..Params::default()
                    });
                }
            }
        }
        "nproduct" | "partition" => {
            for parts in [vec![2, 2], vec![2, 3], vec![3, 2], vec![2, 2, 2], vec![2, 3, 4]] {
                out.push(with_s(Composition::new(parts)));
            }
        }
        "parity" => {
            out.extend(
                comps(7, true)
                    .into_iter()
                    .filter(|s| s.depth() >= 2 && s.reversed().is_admissible())
                    .map(with_s),
            );
        }
        "gen_duality" => {
            for w in 2..=5 {
                for bf in BlockForm::all_of_weight(w) {
                    for m in 0..=2 {
                        out.push(Params {
                            blocks: Some(bf.blocks.clone()),
                            m: Some(m),
                            ..Params::default()
                        });
                    }
                }
            }
        }
        "duality" => out.extend(comps(7, true).into_iter().map(with_s)),
        "sum_formula" => {
            for k in 1..=5 {
                for n in 1..=k {
                    out.push(Params {
                        k: Some(k),
                        n: Some(n),
                        ..Params::default()
                    });
                }
            }
        }
        "f_equals_g" => {
            for d in 2..=5 {
                for w in Word::admissible_of_degree(d) {
                    out.push(Params {
                        word: Some(w.to_string()),
                        m: Some(2),
                        ..Params::default()
                    });
                }
            }
        }
        "qdiff" => {
            for blocks in block_specs(5) {
                for theta in THETA_SAMPLES {
                    out.push(Params {
                        blocks: Some(blocks.clone()),
                        theta: Some(theta),
                        ..Params::default()
                    });
                }
            }
        }
        "qdiff_head" | "qdiff_head_unit" | "qdiff_shift" | "qdiff_tail" | "qdiff_tail_single"
        | "qdiff_single_block" | "qdiff_xy" => {
            for (blocks, j) in lemma_cases(id, 5) {
                for theta in THETA_SAMPLES {
                    out.push(Params {
                        blocks: Some(blocks.clone()),
                        j,
                        theta: Some(theta),
                        ..Params::default()
                    });
                }
            }
        }
        "derivation" => {
            for n in 1..=3 {
                for d in 2..=5 {
                    for w in Word::admissible_of_degree(d) {
                        out.push(Params {
                            word: Some(w.to_string()),
                            n: Some(n),
                            ..Params::default()
                        });
                    }
                }
            }
        }
        "hoffman_derivation" | "cyclic_dual" => out.extend(comps(5, true).into_iter().map(with_s)),
        "cyclic" | "t_difference" | "s0_t_zeta" | "s1_t" => out.extend(
            comps(4, false)
                .into_iter()
                .filter(|s| s.parts().iter().any(|&x| x > 1))
                .map(with_s),
        ),
        "s_s_zeta" => {
            for parts in [vec![2, 1], vec![2, 2], vec![3, 1], vec![2, 1, 1], vec![3, 2]] {
                out.push(with_s(Composition::new(parts)));
            }
            out.push(Params {
                s: Some(Composition::new(vec![2, 1])),
                k: Some(0),
                ..Params::default()
            });
        }
        "multisection" => {
            for (parts, n) in [(vec![2], 2), (vec![3], 3), (vec![2, 1], 2), (vec![2, 2], 2), (vec![1, 1], 3)] {
                let b = vec![2.0; parts.len()];
                out.push(Params {
                    s: Some(Composition::new(parts)),
                    b: Some(b),
                    n: Some(n),
                    ..Params::default()
                });
            }
        }
        "jackson_rep" => {
            for parts in [vec![2], vec![3], vec![2, 1], vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1]] {
                out.push(with_s(Composition::new(parts)));
            }
        }
        "drin" | "drin_symmetry" => {
            for m in 0..=3 {
                for n in 0..=3 - m {
                    out.push(Params {
                        m: Some(m),
                        n: Some(n),
                        ..Params::default()
                    });
                }
            }
        }
        "drin_markett" => {
            for m in 0..=3 {
                out.push(Params {
                    m: Some(m),
                    ..Params::default()
                });
            }
        }
        "euler" => {
            for m in 0..=4 {
                out.push(Params {
                    m: Some(m),
                    ..Params::default()
                });
            }
        }
        "heine_2phi1" => {
            for (x, y) in [(0.3, 0.4), (0.25, 0.5)] {
                out.push(Params {
                    x: Some(x),
                    y: Some(y),
                    ..Params::default()
                });
            }
        }
        "heine" => {
            for abc in [(0.3, 0.4, 1.5), (0.5, 0.25, 2.0), (-0.5, 0.7, 1.2)] {
                out.push(Params {
                    abc: Some(abc),
                    ..Params::default()
                });
            }
        }
        "log_qgamma" => {
            for x in [-0.3, 0.3, 0.4] {
                out.push(Params {
                    x: Some(x),
                    ..Params::default()
                });
            }
        }
        "zeta_tilde" => {
            for k in 1..=5 {
                out.push(Params {
                    k: Some(k),
                    ..Params::default()
                });
            }
        }
        "exp_partial" => {
            for m in 1..=4 {
                out.push(Params {
                    m: Some(m),
                    ..Params::default()
                });
            }
        }
        "q_to_1_trend" => {
            for which in ["newton", "stuffle"] {
                out.push(Params {
                    which: Some(which.to_string()),
                    ..Params::default()
                });
            }
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_spec_counts() {
        // degree 2: (1,1); degree 3: (2,1), (1,2); degree 4 adds (3,1), (2,2),
        // (1,3), (1,1)(1,1)
        assert_eq!(block_specs(2).len(), 1);
        assert_eq!(block_specs(3).len(), 3);
        assert_eq!(block_specs(4).len(), 7);
    }

    #[test]
    fn every_id_has_a_sweep() {
        for info in super::super::list_identities() {
            assert!(!default_sweep(info.id).is_empty(), "{}", info.id);
        }
    }
}
