use num::{BigRational, One, Zero};
use num_complex::Complex64;
use proptest::prelude::*;
use rtoa::algebra::*;

fn s(re: i64, im: i64) -> Scalar {
    Scalar::new(rational(re, 1), rational(im, 1))
}

fn sigma(j: usize) -> PauliCoeff {
    PauliCoeff::sigma(j)
}

// explicit 2x2 matrices, independent of the σ-basis multiplication table
fn matrix(j: usize) -> [[Complex64; 2]; 2] {
    let o = Complex64::new(0.0, 0.0);
    let r = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match j {
        0 => [[r, o], [o, r]],
        1 => [[o, r], [r, o]],
        2 => [[o, -i], [i, o]],
        _ => [[r, o], [o, -r]],
    }
}

fn to_matrix(a: &PauliCoeff) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for j in 0..4 {
        let c = &a.c[j];
        let z = Complex64::new(to_f64(&c.re), to_f64(&c.im));
        let m = matrix(j);
        for r in 0..2 {
            for col in 0..2 {
                out[r][col] += z * m[r][col];
            }
        }
    }
    out
}

fn to_f64(q: &BigRational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap()
}

fn matmul(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

#[test]
fn products_agree_with_explicit_matrices() {
    for a in 0..4 {
        for b in 0..4 {
            let got = to_matrix(&pauli_mul(&sigma(a), &sigma(b)));
            let want = matmul(matrix(a), matrix(b));
            for r in 0..2 {
                for c in 0..2 {
                    assert_eq!(got[r][c], want[r][c], "σ{a}σ{b}");
                }
            }
        }
    }
}

#[test]
fn basis_associativity_and_identity() {
    for a in 0..4 {
        assert_eq!(pauli_mul(&sigma(0), &sigma(a)), sigma(a));
        assert_eq!(pauli_mul(&sigma(a), &sigma(0)), sigma(a));
        for b in 0..4 {
            for c in 0..4 {
                let l = pauli_mul(&pauli_mul(&sigma(a), &sigma(b)), &sigma(c));
                let r = pauli_mul(&sigma(a), &pauli_mul(&sigma(b), &sigma(c)));
                assert_eq!(l, r);
            }
        }
    }
    assert_eq!(pauli_mul(&sigma(1), &sigma(2)), sigma(3).scale(&s(0, 1)));
    assert_eq!(pauli_mul(&sigma(3), &sigma(3)), sigma(0));
}

#[test]
fn sigma_commutator_table() {
    let k = sigma(3) + sigma(2).scale(&s(0, 1));
    for j in 0..4 {
        let want = match j {
            1 => sigma(2).scale(&s(0, 2)),
            2 => sigma(1).scale(&s(0, -2)),
            _ => PauliCoeff::zero(),
        };
        assert_eq!(sigma(3).commutator(&sigma(j)), want);
        let want = match j {
            1 => k.scale(&s(2, 0)),
            2 => sigma(1).scale(&s(0, -2)),
            3 => sigma(1).scale(&s(-2, 0)),
            _ => PauliCoeff::zero(),
        };
        assert_eq!(k.commutator(&sigma(j)), want);
        let want = match j {
            0 => k.scale(&s(2, 0)),
            2 => sigma(0).scale(&s(0, 2)),
            3 => sigma(0).scale(&s(2, 0)),
            _ => PauliCoeff::zero(),
        };
        assert_eq!(k.anticommutator(&sigma(j)), want);
    }
}

#[test]
fn p_squared_examples() {
    let k = ExactConstants::default();
    let t00 = BDTerm::new(0, 0, sigma(0));
    assert_eq!(
        p2_left(&t00, &k),
        BDOperator::from_terms([BDTerm::new(2, 0, sigma(0))])
    );
    let t = BDTerm::new(-1, 1, sigma(0));
    let left = BDOperator::from_terms([
        BDTerm::new(1, 1, sigma(0)),
        BDTerm::new(0, 0, sigma(0).scale(&s(0, -1))),
    ]);
    let right = BDOperator::from_terms([
        BDTerm::new(1, 1, sigma(0)),
        BDTerm::new(0, 0, sigma(0).scale(&s(0, 1))),
    ]);
    assert_eq!(p2_left(&t, &k), left);
    assert_eq!(p2_right(&t, &k), right);
}

#[test]
fn minimal_operator_for_unit_constants() {
    let k = ExactConstants::default();
    let half = Scalar::new(rational(-1, 2), BigRational::zero());
    let want = BDOperator::from_terms([
        BDTerm::new(1, 1, (sigma(3) + sigma(2).scale(&s(0, 1))).scale(&half)),
        BDTerm::new(-1, 1, sigma(3).scale(&s(-1, 0))),
    ]);
    assert_eq!(minimal_toa_operator(&k), want);
    let target = BDOperator::from_terms([BDTerm::new(0, 0, sigma(0).scale(&s(0, 1)))]);
    assert_eq!(commutator_with_h(&minimal_toa_operator(&k), &k), target);
    assert!(commutator_with_h(&BDOperator::zero(), &k).is_zero());
}

#[test]
fn minimal_operator_with_other_units() {
    let k = ExactConstants::new(rational(3, 7), rational(5, 1), rational(2, 3)).unwrap();
    let op = minimal_toa_operator(&k);
    let m0c2 = &k.m0 * &k.c * &k.c;
    // α2^{1,1} = 1/(2 i m0 c²), α3^{1,1} = −1/(2 m0 c²), α3^{−1,1} = −m0
    let two = BigRational::one() + BigRational::one();
    let inv = BigRational::one() / (two * m0c2);
    assert_eq!(
        op.coeff(1, 1).c[2],
        Scalar::new(BigRational::zero(), -inv.clone())
    );
    assert_eq!(op.coeff(1, 1).c[3], Scalar::new(-inv, BigRational::zero()));
    assert_eq!(
        op.coeff(-1, 1).c[3],
        Scalar::new(-k.m0.clone(), BigRational::zero())
    );
    let target = BDOperator::from_terms([BDTerm::new(
        0,
        0,
        sigma(0).scale(&Scalar::new(BigRational::zero(), k.hbar.clone())),
    )]);
    assert_eq!(commutator_with_h(&op, &k), target);
}

#[test]
fn ansatz_window_reproduces_minimal_operator() {
    let k = ExactConstants::default();
    let window = AnsatzWindow {
        m_min: -2,
        m_max: 2,
        n_max: 2,
    };
    assert_eq!(
        solve_conjugate_ansatz_in(window, &k).unwrap(),
        minimal_toa_operator(&k)
    );
    for (m, n) in [(2, 2), (3, 3), (4, 2)] {
        assert_eq!(
            solve_conjugate_ansatz(m, n, &k).unwrap(),
            minimal_toa_operator(&k)
        );
    }
}

#[test]
fn canonical_text_form() {
    let text = minimal_toa_operator(&ExactConstants::default()).to_string();
    assert_eq!(text, "T[-1,1]: -1*s3\nT[1,1]: -1/2i*s2 + -1/2*s3\n");
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| Scalar::new(rational(a, b), rational(c, d)))
}

fn arb_coeff() -> impl Strategy<Value = PauliCoeff> {
    proptest::array::uniform4(arb_scalar())
        .prop_map(|[a, b, c, d]| PauliCoeff::from_components(a, b, c, d))
}

proptest! {
    #[test]
    fn products_are_associative(a in arb_coeff(), b in arb_coeff(), c in arb_coeff()) {
        prop_assert_eq!(
            pauli_mul(&pauli_mul(&a, &b), &c),
            pauli_mul(&a, &pauli_mul(&b, &c))
        );
    }

    #[test]
    fn commutator_with_h_is_linear(
        ca in arb_coeff(), cb in arb_coeff(),
        ma in -3i64..=3, na in 0i64..=3, mb in -3i64..=3, nb in 0i64..=3,
        a in arb_scalar(), b in arb_scalar(),
    ) {
        let k = ExactConstants::default();
        let x = BDOperator::from_terms([BDTerm::new(ma, na, ca)]);
        let y = BDOperator::from_terms([BDTerm::new(mb, nb, cb)]);
        let lhs = commutator_with_h(&x.scale(&a).add(&y.scale(&b)), &k);
        let rhs = commutator_with_h(&x, &k).scale(&a).add(&commutator_with_h(&y, &k).scale(&b));
        prop_assert_eq!(lhs, rhs);
    }
}
