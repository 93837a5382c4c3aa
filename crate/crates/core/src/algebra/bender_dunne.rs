use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::{FromPrimitive, Signed};

use super::pauli::{pauli_mul, PauliCoeff};
use super::scalar::{i_unit, imag, real, Scalar};
use crate::constants::PhysConstants;
use crate::error::{Error, Result};

/// `ħ`, `c` and `m0` as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactConstants {
    pub hbar: BigRational,
    pub c: BigRational,
    pub m0: BigRational,
}

impl Default for ExactConstants {
    fn default() -> Self {
        let one = BigRational::from_integer(1.into());
        Self {
            hbar: one.clone(),
            c: one.clone(),
            m0: one,
        }
    }
}

impl ExactConstants {
    pub fn new(hbar: BigRational, c: BigRational, m0: BigRational) -> Result<Self> {
        if !(hbar.is_positive() && c.is_positive() && m0.is_positive()) {
            return Err(Error::InvalidConstants(
                "hbar, c and m0 must be strictly positive".into(),
            ));
        }
        Ok(Self { hbar, c, m0 })
    }

    /// Exact binary value of each floating-point constant.
    pub fn from_phys(k: &PhysConstants) -> Result<Self> {
        k.validate()?;
        let conv = |x: f64| {
            BigRational::from_f64(x)
                .ok_or_else(|| Error::InvalidConstants(format!("{x} has no rational value")))
        };
        Self::new(conv(k.hbar)?, conv(k.c)?, conv(k.m0)?)
    }

    fn rest_energy(&self) -> BigRational {
        &self.m0 * &self.c * &self.c
    }
}

/// A single `coeff · T_{m,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BDTerm {
    pub m: i64,
    pub n: i64,
    pub coeff: PauliCoeff,
}

impl BDTerm {
    pub fn new(m: i64, n: i64, coeff: PauliCoeff) -> Self {
        assert!(n >= 0, "T_{{m,n}} needs n >= 0, got n = {n}");
        Self { m, n, coeff }
    }
}

/// Finite sum `Σ A_{m,n} T_{m,n}` with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BDOperator {
    terms: BTreeMap<(i64, i64), PauliCoeff>,
}

impl BDOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = BDTerm>) -> Self {
        let mut op = Self::zero();
        for t in terms {
            op.add_term(t.m, t.n, t.coeff);
        }
        op
    }

    /// Adds `coeff · T_{m,n}`; terms with negative `n` are dropped, matching
    /// the vanishing binomial coefficients.
    pub fn add_term(&mut self, m: i64, n: i64, coeff: PauliCoeff) {
        if n < 0 || coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&(m, n)) {
            Some(old) => old + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert((m, n), sum);
        }
    }

    pub fn coeff(&self, m: i64, n: i64) -> PauliCoeff {
        self.terms
            .get(&(m, n))
            .cloned()
            .unwrap_or_else(PauliCoeff::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = BDTerm> + '_ {
        self.terms.iter().map(|(&(m, n), c)| BDTerm {
            m,
            n,
            coeff: c.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for t in other.terms() {
            out.add_term(t.m, t.n, t.coeff);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&real(BigRational::from_integer((-1).into()))))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(self.terms().map(|t| BDTerm {
            coeff: t.coeff.scale(s),
            ..t
        }))
    }

    /// `M · self` for a constant matrix `M`.
    pub fn left_matrix(&self, mat: &PauliCoeff) -> Self {
        Self::from_terms(self.terms().map(|t| BDTerm {
            coeff: pauli_mul(mat, &t.coeff),
            ..t
        }))
    }

    /// `self · M` for a constant matrix `M`.
    pub fn right_matrix(&self, mat: &PauliCoeff) -> Self {
        Self::from_terms(self.terms().map(|t| BDTerm {
            coeff: pauli_mul(&t.coeff, mat),
            ..t
        }))
    }
}

impl fmt::Display for BDOperator {
    /// One line per `(m, n)`, ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for ((m, n), c) in &self.terms {
            writeln!(f, "T[{m},{n}]: {c}")?;
        }
        Ok(())
    }
}

fn hbar_terms(t: &BDTerm, hbar: &BigRational, middle_sign: i64) -> BDOperator {
    let n = BigRational::from_integer(t.n.into());
    let mut out = BDOperator::zero();
    out.add_term(t.m + 2, t.n, t.coeff.clone());
    let middle = imag(BigRational::from_integer(middle_sign.into()) * hbar * &n);
    out.add_term(t.m + 1, t.n - 1, t.coeff.scale(&middle));
    let last = real(
        -(hbar * hbar) * &n * (&n - BigRational::from_integer(1.into()))
            / BigRational::from_integer(4.into()),
    );
    out.add_term(t.m, t.n - 2, t.coeff.scale(&last));
    out
}

/// `p² T_{m,n} = T_{m+2,n} − iħn T_{m+1,n−1} − ħ²n(n−1)/4 T_{m,n−2}`.
pub fn p2_left(t: &BDTerm, k: &ExactConstants) -> BDOperator {
    hbar_terms(t, &k.hbar, -1)
}

/// `T_{m,n} p² = T_{m+2,n} + iħn T_{m+1,n−1} − ħ²n(n−1)/4 T_{m,n−2}`.
pub fn p2_right(t: &BDTerm, k: &ExactConstants) -> BDOperator {
    hbar_terms(t, &k.hbar, 1)
}

/// `σ3 + iσ2`, the nilpotent matrix multiplying `p²/2m0` in the Hamiltonian.
pub(crate) fn kinetic_matrix() -> PauliCoeff {
    PauliCoeff::sigma(3) + PauliCoeff::sigma(2).scale(&i_unit())
}

/// `[H, op]` for `H = (σ3 + iσ2) p²/2m0 + σ3 m0c²`.
pub fn commutator_with_h(op: &BDOperator, k: &ExactConstants) -> BDOperator {
    let kin = kinetic_matrix();
    let inv_2m = real((BigRational::from_integer(2.into()) * &k.m0).recip());
    let rest = real(k.rest_energy());
    let s3 = PauliCoeff::sigma(3);
    let mut out = BDOperator::zero();
    for t in op.terms() {
        let left = BDTerm {
            coeff: pauli_mul(&kin, &t.coeff).scale(&inv_2m),
            ..t.clone()
        };
        let right = BDTerm {
            coeff: pauli_mul(&t.coeff, &kin).scale(&inv_2m),
            ..t.clone()
        };
        out = out.add(&p2_left(&left, k)).sub(&p2_right(&right, k));
        out.add_term(t.m, t.n, s3.commutator(&t.coeff).scale(&rest));
    }
    out
}

/// `−(1/2m0c²)(σ3 + iσ2) T_{1,1} − m0 σ3 T_{−1,1}`.
pub fn minimal_toa_operator(k: &ExactConstants) -> BDOperator {
    let a = real(-(BigRational::from_integer(2.into()) * k.rest_energy()).recip());
    let mut op = BDOperator::zero();
    op.add_term(1, 1, kinetic_matrix().scale(&a));
    op.add_term(-1, 1, PauliCoeff::sigma(3).scale(&real(-k.m0.clone())));
    op
}

/// `iħ σ0 T_{0,0}`.
pub fn canonical_target(k: &ExactConstants) -> BDOperator {
    let mut op = BDOperator::zero();
    op.add_term(0, 0, PauliCoeff::sigma(0).scale(&imag(k.hbar.clone())));
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rational;
    use num::Zero;
    use num_complex::Complex;
    use proptest::prelude::*;

    fn one() -> ExactConstants {
        ExactConstants::default()
    }

    fn unit_term(m: i64, n: i64) -> BDTerm {
        BDTerm::new(m, n, PauliCoeff::sigma(0))
    }

    #[test]
    fn p2_examples() {
        let k = one();
        assert_eq!(
            p2_left(&unit_term(0, 0), &k),
            BDOperator::from_terms([unit_term(2, 0)])
        );
        let i = i_unit();
        let mut expect = BDOperator::from_terms([unit_term(1, 1)]);
        expect.add_term(0, 0, PauliCoeff::sigma(0).scale(&-i.clone()));
        assert_eq!(p2_left(&unit_term(-1, 1), &k), expect);
        let mut expect = BDOperator::from_terms([unit_term(1, 1)]);
        expect.add_term(0, 0, PauliCoeff::sigma(0).scale(&i));
        assert_eq!(p2_right(&unit_term(-1, 1), &k), expect);
    }

    #[test]
    fn minimal_operator_coefficients() {
        let op = minimal_toa_operator(&one());
        assert_eq!(op.len(), 2);
        let half = rational(1, 2);
        let c11 = op.coeff(1, 1);
        assert!(c11.c[0].is_zero() && c11.c[1].is_zero());
        assert_eq!(c11.c[2], imag(-half.clone()));
        assert_eq!(c11.c[3], real(-half));
        assert_eq!(
            op.coeff(-1, 1),
            PauliCoeff::sigma(3).scale(&real(rational(-1, 1)))
        );
    }

    #[test]
    fn minimal_operator_is_conjugate_exactly() {
        for (h, c, m) in [(1, 1, 1), (3, 7, 2), (1, 10, 1), (2, 1, 5)] {
            let k = ExactConstants::new(rational(h, 1), rational(c, 1), rational(m, 1)).unwrap();
            let residual =
                commutator_with_h(&minimal_toa_operator(&k), &k).sub(&canonical_target(&k));
            assert!(residual.is_zero(), "residual for {h},{c},{m}:\n{residual}");
        }
    }

    #[test]
    fn identity_commutes() {
        let op = BDOperator::from_terms([unit_term(0, 0)]);
        assert!(commutator_with_h(&op, &one()).is_zero());
        assert!(commutator_with_h(&BDOperator::zero(), &one()).is_zero());
    }

    #[test]
    fn display_is_canonical() {
        let text = minimal_toa_operator(&one()).to_string();
        assert_eq!(text, "T[-1,1]: -1*s3\nT[1,1]: -1/2i*s2 + -1/2*s3\n");
    }

    fn arb_term() -> impl Strategy<Value = BDTerm> {
        (-3i64..4, 0i64..5, 0usize..4, -4i64..5, 1i64..4, -4i64..5).prop_map(
            |(m, n, j, a, b, c)| {
                BDTerm::new(
                    m,
                    n,
                    PauliCoeff::sigma(j).scale(&Complex::new(rational(a, b), rational(c, 1))),
                )
            },
        )
    }

    fn arb_op() -> impl Strategy<Value = BDOperator> {
        proptest::collection::vec(arb_term(), 0..5).prop_map(BDOperator::from_terms)
    }

    proptest! {
        #[test]
        fn left_minus_right_is_middle_term(t in arb_term(), h in 1i64..5) {
            let k = ExactConstants::new(rational(h, 2), rational(1, 1), rational(1, 1)).unwrap();
            let diff = p2_left(&t, &k).sub(&p2_right(&t, &k));
            let factor = imag(rational(-2 * h * t.n, 2));
            let mut expect = BDOperator::zero();
            expect.add_term(t.m + 1, t.n - 1, t.coeff.scale(&factor));
            prop_assert_eq!(diff, expect);
        }

        #[test]
        fn commutator_is_linear(x in arb_op(), y in arb_op(), a in -3i64..4, b in -3i64..4) {
            let k = ExactConstants::new(rational(1, 1), rational(2, 1), rational(3, 2)).unwrap();
            let sa = Complex::new(rational(a, 1), rational(1, 2));
            let sb = real(rational(b, 3));
            let lhs = commutator_with_h(&x.scale(&sa).add(&y.scale(&sb)), &k);
            let rhs = commutator_with_h(&x, &k).scale(&sa).add(&commutator_with_h(&y, &k).scale(&sb));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonical_form_has_no_zeros(x in arb_op()) {
            let z = x.sub(&x);
            prop_assert!(z.is_zero());
            prop_assert!(x.terms().all(|t| !t.coeff.is_zero()));
        }
    }
}
