use motive_core::linalg::RatMatrix;
use motive_core::polynomial::{MPoly, PolyMatrix};
use motive_core::{int, rat, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

const NV: usize = 3;

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn poly(nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), coeff()), 0..=max_terms)
        .prop_map(move |terms| MPoly::from_terms(nvars, terms).unwrap())
}

fn point(nvars: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(coeff(), nvars)
}

fn poly_matrix(n: usize, nvars: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(nvars, 2, 1), n * n).prop_map(move |entries| {
        let rows = entries.chunks(n).map(|r| r.to_vec()).collect();
        PolyMatrix::from_rows(nvars, rows).unwrap()
    })
}

fn sized_poly_matrix(max_n: usize, nvars: usize) -> impl Strategy<Value = PolyMatrix> {
    (1..=max_n).prop_flat_map(move |n| poly_matrix(n, nvars))
}

fn int_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| RatMatrix::from_i64(&v.chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(NV, 4, 2), b in poly(NV, 4, 2), c in poly(NV, 4, 2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &MPoly::zero(NV), a.clone());
        prop_assert_eq!(&a * &MPoly::one(NV), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a * &MPoly::zero(NV)).is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(NV, 4, 2), b in poly(NV, 4, 2), x in point(NV)) {
        let (va, vb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        prop_assert_eq!((&a * &b).eval(&x).unwrap(), &va * &vb);
        prop_assert_eq!((&a + &b).eval(&x).unwrap(), &va + &vb);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(NV, 4, 2), b in poly(NV, 3, 2)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn degree_is_additive(a in poly(NV, 3, 2), b in poly(NV, 3, 2)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.total_degree().unwrap(), a.total_degree().unwrap() + b.total_degree().unwrap());
    }

    #[test]
    fn fraction_free_matches_cofactor_oracle(m in sized_poly_matrix(5, 2)) {
        prop_assert_eq!(m.det_fraction_free().unwrap(), m.det_cofactor_oracle().unwrap());
    }

    #[test]
    fn determinant_under_congruence(m in poly_matrix(3, 2), u in int_matrix(3)) {
        let up = PolyMatrix::from_rational(&u, 2);
        let conj = up.transpose().mul(&m).unwrap().mul(&up).unwrap();
        let du = u.det().unwrap();
        let expected = m.det_fraction_free().unwrap().scale(&(&du * &du));
        prop_assert_eq!(conj.det_fraction_free().unwrap(), expected);
    }

    #[test]
    fn charpoly_constant_term_is_signed_det(m in sized_poly_matrix(4, 2)) {
        let n = m.rows();
        let c = m.charpoly().unwrap();
        prop_assert_eq!(c.len(), n + 1);
        prop_assert!(c[n].is_one());
        let det = m.det_fraction_free().unwrap();
        let signed = if n % 2 == 0 { det } else { -det };
        prop_assert_eq!(&c[0], &signed);
    }

    #[test]
    fn charpoly_trace_coefficient(m in int_matrix(4)) {
        let c = motive_core::polynomial::rational_charpoly(&m).unwrap();
        let trace: Rational = (0..4).map(|i| m.get(i, i).clone()).sum();
        prop_assert_eq!(c[3].clone(), -trace);
        prop_assert_eq!(c[0].clone(), m.det().unwrap());
    }

    #[test]
    fn modular_evaluation_matches_rational(a in poly(NV, 5, 3), x in prop::collection::vec(0u64..7, NV)) {
        let q = 7u64;
        let rational = a.eval(&x.iter().map(|&v| int(v as i64)).collect::<Vec<_>>()).unwrap();
        // Denominators are at most 3, so they are invertible modulo 7.
        let num = rational.numer().clone();
        let den = rational.denom().clone();
        let qq = num_bigint::BigInt::from(q);
        let den_inv = den.modpow(&(&qq - 2), &qq);
        let expected = ((num * den_inv) % &qq + &qq) % &qq;
        let got = a.eval_mod_q(&x, q).unwrap();
        prop_assert_eq!(num_bigint::BigInt::from(got), expected);
    }

    #[test]
    fn variable_permutation_round_trip(a in poly(NV, 4, 2)) {
        let perm = [2usize, 0, 1];
        let inv = [1usize, 2, 0];
        prop_assert_eq!(a.permute_vars(&perm).unwrap().permute_vars(&inv).unwrap(), a);
    }

    #[test]
    fn json_terms_round_trip(a in poly(NV, 4, 2)) {
        prop_assert_eq!(MPoly::from_json_terms(NV, &a.to_json_terms()).unwrap(), a);
    }
}

#[test]
fn display_is_descending_grlex() {
    let x0 = MPoly::var(3, 0);
    let x1 = MPoly::var(3, 1);
    let x2 = MPoly::var(3, 2);
    let p = &(&(&x0 * &x1) + &(&x2 * &x2).scale(&int(2))) - &MPoly::one(3);
    assert_eq!(p.to_string(), "x0*x1 + 2*x2^2 - 1");
}

#[test]
fn modular_reduction_rejects_bad_moduli() {
    let p = MPoly::constant(1, rat(1, 3));
    assert!(p.eval_mod_q(&[0], 4).is_err());
    assert!(p.eval_mod_q(&[0], 3).is_err());
    assert_eq!(p.eval_mod_q(&[0], 5).unwrap(), 2);
}

#[test]
fn bareiss_handles_zero_pivots() {
    let m = PolyMatrix::from_rational(&RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap(), 0);
    assert_eq!(m.det_fraction_free().unwrap().as_constant().unwrap(), -Rational::one());
    let z = PolyMatrix::zeros(3, 3, 1);
    assert!(z.det_fraction_free().unwrap().is_zero());
    assert!(Rational::zero().is_zero());
}
