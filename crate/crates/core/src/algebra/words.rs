//! Independent route to the `p²` product rules through ordered words
//! `q^a p^b q^c`, using nothing but `[p, q] = −iħ`.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::Zero;

use super::bender_dunne::{BDOperator, ExactConstants};
use super::scalar::{imag, real, Scalar};

/// Linear combination of words `q^a p^b q^c`, keyed by `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordSum {
    words: BTreeMap<(u32, u32, u32), Scalar>,
}

impl WordSum {
    pub fn add(&mut self, key: (u32, u32, u32), s: Scalar) {
        if s.is_zero() {
            return;
        }
        let v = self.words.remove(&key).map_or(s.clone(), |old| old + s);
        if !v.is_zero() {
            self.words.insert(key, v);
        }
    }

    pub fn merge(&mut self, other: &WordSum, scale: &Scalar) {
        for (&k, v) in &other.words {
            self.add(k, v * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// `T_{m,n} = 2^{−n} Σ_k C(n,k) q^k p^m q^{n−k}` for `m ≥ 0`.
    pub fn weyl(m: u32, n: u32) -> Self {
        let mut out = WordSum::default();
        let scale = BigRational::new(1.into(), num::BigInt::from(2u32).pow(n));
        let mut binom = num::BigInt::from(1);
        for k in 0..=n {
            out.add(
                (k, m, n - k),
                real(BigRational::from_integer(binom.clone()) * &scale),
            );
            binom = binom * (n - k) / (k + 1);
        }
        out
    }

    /// Expands an operator whose terms all have `m ≥ 0` into words.
    pub fn from_operator_scalar_part(op: &BDOperator, sigma: usize) -> Self {
        let mut out = WordSum::default();
        for t in op.terms() {
            assert!(t.m >= 0, "word expansion needs m >= 0");
            out.merge(&Self::weyl(t.m as u32, t.n as u32), &t.coeff.c[sigma]);
        }
        out
    }

    /// `p · self`, moving `p` past the leading `q^a`.
    pub fn p_left(&self, k: &ExactConstants) -> Self {
        let mut out = WordSum::default();
        for (&(a, b, c), v) in &self.words {
            out.add((a, b + 1, c), v.clone());
            if a > 0 {
                out.add((a - 1, b, c), v * p_q_power_commutator(a, k));
            }
        }
        out
    }

    /// `self · p`, moving `p` left past the trailing `q^c`.
    pub fn p_right(&self, k: &ExactConstants) -> Self {
        let mut out = WordSum::default();
        for (&(a, b, c), v) in &self.words {
            out.add((a, b + 1, c), v.clone());
            if c > 0 {
                // q^c p = p q^c − [p, q^c]
                out.add((a, b, c - 1), -(v * p_q_power_commutator(c, k)));
            }
        }
        out
    }

    /// Rewrites every word as a combination of `q^i p^j` (all `q` to the
    /// left), stored under the key `(i, j, 0)`.
    pub fn normal_ordered(&self, k: &ExactConstants) -> Self {
        // Work items are q^a p^b q^c p^d.
        let mut pending: Vec<((u32, u32, u32, u32), Scalar)> = self
            .words
            .iter()
            .map(|(&(a, b, c), v)| ((a, b, c, 0), v.clone()))
            .collect();
        let mut out = WordSum::default();
        while let Some(((a, b, c, d), v)) = pending.pop() {
            if b == 0 {
                out.add((a + c, d, 0), v);
            } else if c == 0 {
                out.add((a, b + d, 0), v);
            } else {
                // p q^c = q^c p + [p, q^c]
                pending.push(((a, b - 1, c, d + 1), v.clone()));
                pending.push(((a, b - 1, c - 1, d), v * p_q_power_commutator(c, k)));
            }
        }
        out
    }
}

/// `[p, q^a] = −iħ a q^{a−1}`; returns the scalar `−iħa`, built by the
/// recursion `[p, q^a] = [p, q] q^{a−1} + q [p, q^{a−1}]`.
pub fn p_q_power_commutator(a: u32, k: &ExactConstants) -> Scalar {
    let base = imag(-k.hbar.clone());
    (1..a).fold(base.clone(), |acc, _| acc + &base)
}
