use std::collections::BTreeMap;

use num::Zero;

use super::bender_dunne::{
    canonical_target, commutator_with_h, BDOperator, BDTerm, ExactConstants,
};
use super::pauli::PauliCoeff;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Index window `m ∈ [m_min, m_max]`, `n ∈ [0, n_max]` for the unknown
/// coefficients `α_j^{m,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnsatzWindow {
    pub m_min: i64,
    pub m_max: i64,
    pub n_max: i64,
}

impl AnsatzWindow {
    pub fn symmetric(max_m: i64, max_n: i64) -> Self {
        Self {
            m_min: -max_m,
            m_max: max_m,
            n_max: max_n,
        }
    }
}

/// Minimal solution of `[H, T] = iħ` with `T` restricted to `window`.
pub fn solve_conjugate_ansatz(max_m: i64, max_n: i64, k: &ExactConstants) -> Result<BDOperator> {
    if max_m < 1 || max_n < 1 {
        return Err(Error::Infeasible(format!(
            "window m in [-{max_m}, {max_m}], n in [0, {max_n}] cannot hold T_{{1,1}} and T_{{-1,1}}"
        )));
    }
    solve_conjugate_ansatz_in(AnsatzWindow::symmetric(max_m, max_n), k)
}

/// Same as [`solve_conjugate_ansatz`] for an arbitrary window.
///
/// Every `α_j^{m,n}` in the window is an unknown; the equations are the
/// coefficients of `[H, T] − iħ σ0 T_{0,0}` on each `σ_j T_{m,n}`. Free
/// unknowns are set to zero. Columns are ordered by decreasing `n`, so the
/// `n = 0` constants are the ones left free.
pub fn solve_conjugate_ansatz_in(window: AnsatzWindow, k: &ExactConstants) -> Result<BDOperator> {
    if window.m_min > window.m_max || window.n_max < 0 {
        return Err(Error::Infeasible(format!("empty window {window:?}")));
    }
    let mut columns = Vec::new();
    for n in (0..=window.n_max).rev() {
        for m in window.m_min..=window.m_max {
            for j in 0..4 {
                columns.push((j, m, n));
            }
        }
    }

    let target = canonical_target(k);
    let images: Vec<BDOperator> = columns
        .iter()
        .map(|&(j, m, n)| {
            commutator_with_h(
                &BDOperator::from_terms([BDTerm::new(m, n, PauliCoeff::sigma(j))]),
                k,
            )
        })
        .collect();

    let mut rows: BTreeMap<(i64, i64, usize), usize> = BTreeMap::new();
    for op in images.iter().chain(std::iter::once(&target)) {
        for t in op.terms() {
            for j in 0..4 {
                if !t.coeff.c[j].is_zero() {
                    let next = rows.len();
                    rows.entry((t.m, t.n, j)).or_insert(next);
                }
            }
        }
    }

    let ncol = columns.len();
    let mut a = vec![vec![Scalar::zero(); ncol + 1]; rows.len()];
    for (col, op) in images.iter().enumerate() {
        for t in op.terms() {
            for j in 0..4 {
                if let Some(&r) = rows.get(&(t.m, t.n, j)) {
                    a[r][col] = t.coeff.c[j].clone();
                }
            }
        }
    }
    for t in target.terms() {
        for j in 0..4 {
            if let Some(&r) = rows.get(&(t.m, t.n, j)) {
                a[r][ncol] = t.coeff.c[j].clone();
            }
        }
    }

    let pivots = rref(&mut a, ncol);
    if a.iter().skip(pivots.len()).any(|row| !row[ncol].is_zero()) {
        return Err(Error::Infeasible(format!(
            "no conjugate operator with support in {window:?}"
        )));
    }

    let mut op = BDOperator::zero();
    for (r, &col) in pivots.iter().enumerate() {
        let value = &a[r][ncol];
        if !value.is_zero() {
            let (j, m, n) = columns[col];
            op.add_term(m, n, PauliCoeff::sigma(j).scale(value));
        }
    }
    Ok(op)
}

/// Reduced row echelon form over the first `ncol` columns, in place. Returns
/// the pivot column of each leading row.
fn rref(a: &mut [Vec<Scalar>], ncol: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncol {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Scalar::new(num::one(), num::zero()) / a[row][col].clone();
        for v in a[row].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, pv) in other.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &factor * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bender_dunne::minimal_toa_operator;
    use crate::algebra::scalar::{i_unit, rational, real};

    #[test]
    fn reproduces_minimal_operator() {
        let k = ExactConstants::default();
        let solved = solve_conjugate_ansatz(2, 2, &k).unwrap();
        assert_eq!(solved, minimal_toa_operator(&k));
    }

    #[test]
    fn window_independent() {
        let k = ExactConstants::new(rational(1, 1), rational(3, 1), rational(2, 1)).unwrap();
        let expect = minimal_toa_operator(&k);
        for (mm, nn) in [(1, 1), (2, 3), (3, 2), (4, 3)] {
            assert_eq!(
                solve_conjugate_ansatz(mm, nn, &k).unwrap(),
                expect,
                "window {mm},{nn}"
            );
        }
        let skewed = AnsatzWindow {
            m_min: -1,
            m_max: 3,
            n_max: 2,
        };
        assert_eq!(solve_conjugate_ansatz_in(skewed, &k).unwrap(), expect);
    }

    #[test]
    fn too_small_window_is_infeasible() {
        let k = ExactConstants::default();
        assert!(matches!(
            solve_conjugate_ansatz(0, 2, &k),
            Err(Error::Infeasible(_))
        ));
        let no_negative = AnsatzWindow {
            m_min: 0,
            m_max: 3,
            n_max: 2,
        };
        assert!(matches!(
            solve_conjugate_ansatz_in(no_negative, &k),
            Err(Error::Infeasible(_))
        ));
        let flat = AnsatzWindow {
            m_min: -2,
            m_max: 2,
            n_max: 0,
        };
        assert!(matches!(
            solve_conjugate_ansatz_in(flat, &k),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn coefficient_relations() {
        let k = ExactConstants::new(rational(1, 1), rational(2, 1), rational(3, 1)).unwrap();
        let op = solve_conjugate_ansatz(3, 3, &k).unwrap();
        let m0 = real(k.m0.clone());
        for m in -3..=3 {
            for n in 0..=3 {
                let c = op.coeff(m, n);
                assert!(c.c[1].is_zero(), "alpha_1 at ({m},{n})");
                if n != 0 {
                    assert!(c.c[0].is_zero(), "alpha_0 at ({m},{n})");
                }
                // n (α3 + i α2) = −m0 δ_{m,−1} δ_{n,1}
                let lhs = (&c.c[3] + i_unit() * &c.c[2]) * real(rational(n, 1));
                let rhs = if (m, n) == (-1, 1) {
                    -m0.clone()
                } else {
                    Scalar::zero()
                };
                assert_eq!(lhs, rhs, "relation at ({m},{n})");
            }
        }
    }
}
