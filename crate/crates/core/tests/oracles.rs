//! Fixtures checked against the brute-force evaluator in `common`.

mod common;

use common::{brute_zeta, lib_coeffs, mul, Ser};
use qzeta::qcore::{EvalParams, QPoly};
use qzeta::series::{eval_zeta, eval_zeta_combo};
use qzeta::stuffle::qstuffle_product;
use qzeta::{BackendConfig, Composition};

fn exact(n: usize) -> EvalParams {
    EvalParams::from(BackendConfig::exact(n))
}

#[test]
fn zeta_two_low_order_fixture() {
    let frozen: Ser = vec![0, 1, 1, -1, 2, -4];
    assert_eq!(brute_zeta(&[2], 6), frozen);
    let v = eval_zeta(&Composition::new(vec![2]), &exact(6)).unwrap();
    assert_eq!(lib_coeffs(&v, 6), frozen);
    assert_eq!(v.to_string(), "q + q^2 - q^3 + 2q^4 - 4q^5 + O(q^6)");
}

#[test]
fn library_matches_brute_force() {
    let n = 14;
    for s in [vec![2], vec![3], vec![2, 1], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![4, 2], vec![2, 3, 1]] {
        let v = eval_zeta(&Composition::new(s.clone()), &exact(n)).unwrap();
        assert_eq!(lib_coeffs(&v, n), brute_zeta(&s, n), "ζ{s:?}");
    }
}

#[test]
fn two_times_two_expansion() {
    // ζ[2]² = 2ζ[2,2] + ζ[4] + (1−q)ζ[3], from splitting the diagonal j = k
    // with q^{2k} = q^{3k} + (1−q^k) q^{2k}.
    let c = |v: Vec<u32>| Composition::new(v);
    let prod = qstuffle_product(&c(vec![2]), &c(vec![2])).unwrap();
    assert_eq!(prod.len(), 3);
    assert_eq!(prod.coeff(&c(vec![2, 2])), QPoly::from_int(2));
    assert_eq!(prod.coeff(&c(vec![4])), QPoly::one());
    assert_eq!(prod.coeff(&c(vec![3])), QPoly::one_minus_q_pow(1));

    let n = 16;
    let z2 = brute_zeta(&[2], n);
    let square = mul(&z2, &z2, n);
    let mut rhs: Ser = brute_zeta(&[2, 2], n).iter().map(|x| 2 * x).collect();
    let z3 = brute_zeta(&[3], n);
    let z3_shift = mul(&z3, &[1, -1].into_iter().chain(std::iter::repeat(0)).take(n).collect(), n);
    for (i, (a, b)) in brute_zeta(&[4], n).iter().zip(&z3_shift).enumerate() {
        rhs[i] += a + b;
    }
    assert_eq!(square, rhs);
    let lib = eval_zeta_combo(&prod, &exact(n)).unwrap();
    assert_eq!(lib_coeffs(&lib, n), square);
}
