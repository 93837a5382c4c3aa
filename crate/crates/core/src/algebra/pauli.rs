use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Zero;

use super::scalar::{format_scalar, i_unit, real, Scalar};
use num::rational::BigRational;

/// A 2×2 complex matrix written as `c0 σ0 + c1 σ1 + c2 σ2 + c3 σ3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliCoeff {
    pub c: [Scalar; 4],
}

impl PauliCoeff {
    pub fn zero() -> Self {
        Self {
            c: std::array::from_fn(|_| Scalar::zero()),
        }
    }

    /// The basis matrix `σ_j`.
    pub fn sigma(j: usize) -> Self {
        let mut out = Self::zero();
        out.c[j] = real(BigRational::from_integer(1.into()));
        out
    }

    pub fn from_components(c0: Scalar, c1: Scalar, c2: Scalar, c3: Scalar) -> Self {
        Self {
            c: [c0, c1, c2, c3],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            c: std::array::from_fn(|j| &self.c[j] * s),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        pauli_mul(self, other) - pauli_mul(other, self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        pauli_mul(self, other) + pauli_mul(other, self)
    }
}

/// Exact product in the σ basis: `σ_j σ_j = σ0` and `σ_j σ_k = i ε_{jkl} σ_l`.
pub fn pauli_mul(a: &PauliCoeff, b: &PauliCoeff) -> PauliCoeff {
    let mut out = PauliCoeff::zero();
    let i = i_unit();
    for (j, aj) in a.c.iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        for (k, bk) in b.c.iter().enumerate() {
            if bk.is_zero() {
                continue;
            }
            let prod = aj * bk;
            match (j, k) {
                (0, k) => out.c[k] = &out.c[k] + prod,
                (j, 0) => out.c[j] = &out.c[j] + prod,
                (j, k) if j == k => out.c[0] = &out.c[0] + prod,
                (j, k) => {
                    let l = 6 - j - k;
                    let cyclic = (j % 3) + 1 == k;
                    let term = &i * prod;
                    out.c[l] = if cyclic {
                        &out.c[l] + term
                    } else {
                        &out.c[l] - term
                    };
                }
            }
        }
    }
    out
}

impl Add for PauliCoeff {
    type Output = PauliCoeff;
    fn add(self, rhs: Self) -> Self {
        Self {
            c: std::array::from_fn(|j| &self.c[j] + &rhs.c[j]),
        }
    }
}

impl Sub for PauliCoeff {
    type Output = PauliCoeff;
    fn sub(self, rhs: Self) -> Self {
        Self {
            c: std::array::from_fn(|j| &self.c[j] - &rhs.c[j]),
        }
    }
}

impl Neg for PauliCoeff {
    type Output = PauliCoeff;
    fn neg(self) -> Self {
        Self {
            c: std::array::from_fn(|j| -self.c[j].clone()),
        }
    }
}

impl Mul for &PauliCoeff {
    type Output = PauliCoeff;
    fn mul(self, rhs: Self) -> PauliCoeff {
        pauli_mul(self, rhs)
    }
}

impl fmt::Display for PauliCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(j, s)| format!("{}*s{j}", format_scalar(s)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
