#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rtoa::dynamics::*;
use rtoa::spectral::{EigenSpec, Parity};
use rtoa::{energy, ChargeSign, Execution, PhysConstants};

fn one() -> PhysConstants {
    PhysConstants::default()
}

fn tight() -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: 1e-12,
        rel_tol: 1e-11,
        ..Default::default()
    }
}

// (branch, x, t − τ, f1, f2) at ε = 0.3, integrated with mpmath at 30 digits
const REFERENCE: [(Parity, f64, f64, f64, f64); 7] = [
    (Parity::Nonnodal, 0.0, 0.0, 2.89221669478839092962, 0.0),
    (
        Parity::Nonnodal,
        1.0,
        0.3,
        0.032363596693484690847,
        -0.19534986938800746963,
    ),
    (
        Parity::Nonnodal,
        0.5,
        -0.2,
        0.69456981671392904027,
        0.17867910332603605296,
    ),
    (
        Parity::Nonnodal,
        2.5,
        0.25,
        -0.10380702891492811782,
        -0.034055504041304366343,
    ),
    (
        Parity::Nodal,
        1.0,
        0.3,
        0.76497632617938136469,
        0.22546399388890118728,
    ),
    (
        Parity::Nodal,
        0.5,
        -0.2,
        1.2926263925088997577,
        -0.60637005673396778114,
    ),
    (
        Parity::Nodal,
        2.5,
        0.25,
        0.20604436826417655047,
        0.037160502128330250274,
    ),
];

#[test]
fn f_integrals_match_high_precision_reference() {
    let k = one();
    let q = tight();
    let tau = 0.5;
    for (branch, x, dt, f1, f2) in REFERENCE {
        let f = f_integrals(branch, tau, x, tau + dt, &k, &q).unwrap();
        assert!(
            (f.f1 - f1).abs() < 1e-10,
            "{branch} {x} {dt}: f1 {} vs {f1}",
            f.f1
        );
        assert!(
            (f.f2 - f2).abs() < 1e-10,
            "{branch} {x} {dt}: f2 {} vs {f2}",
            f.f2
        );
    }
}

#[test]
fn nodal_density_vanishes_on_axis() {
    let k = one();
    let q = QuadratureConfig::default();
    for t in [0.0, 0.3, 0.5, 1.7] {
        assert_eq!(density(Parity::Nodal, 0.5, 0.0, t, &k, &q).unwrap(), 0.0);
    }
}

#[test]
fn density_is_even_in_x_and_in_time_offset() {
    let k = one();
    let q = QuadratureConfig::default();
    let tau = 1.0;
    for branch in Parity::BOTH {
        for (x, dt) in [(0.7, 0.4), (1.9, -0.6), (3.1, 1.2)] {
            let base = density(branch, tau, x, tau + dt, &k, &q).unwrap();
            for (xx, tt) in [(-x, tau + dt), (x, tau - dt), (-x, tau - dt)] {
                let other = density(branch, tau, xx, tt, &k, &q).unwrap();
                assert!(
                    (other - base).abs() <= 1e-9 * base.max(1e-12),
                    "{branch} ({x},{dt})"
                );
            }
        }
    }
}

#[test]
fn density_does_not_depend_on_charge_sign() {
    let k = one();
    let q = QuadratureConfig::default();
    for parity in Parity::BOTH {
        for (x, t) in [(0.3, 0.1), (1.2, 0.9), (-2.0, 0.4)] {
            let plus = EigenSpec::new(ChargeSign::Positive, parity, 0.5).unwrap();
            let minus = EigenSpec::new(ChargeSign::Negative, parity, 0.5).unwrap();
            let (u, l0) = phi_position_eigenfunction(&plus, x, t, &k, &q).unwrap();
            let (u0, l) = phi_position_eigenfunction(&minus, x, t, &k, &q).unwrap();
            assert_eq!(l0, Complex64::new(0.0, 0.0));
            assert_eq!(u0, Complex64::new(0.0, 0.0));
            assert!((u.norm() - l.norm()).abs() < 1e-14 * u.norm().max(1.0));
            let p = density(parity, 0.5, x, t, &k, &q).unwrap();
            assert!((u.norm_sqr() - p).abs() < 1e-12 * p.max(1e-12));
        }
    }
}

/// Direct Fourier synthesis `(2πħ)^{-1/2} ∫ e^{ipx/ħ} F(p) e^{−ε|p|/m0c} dp`
/// by composite Simpson in `s` with `|p| = m0c s²`.
fn fourier_oracle<F>(x: f64, eps: f64, k: &PhysConstants, f: F) -> [Complex64; 2]
where
    F: Fn(f64) -> [Complex64; 2],
{
    let mc = k.compton_momentum();
    let s_max = (160.0f64).sqrt();
    let n = 60_000;
    let h = s_max / n as f64;
    let mut acc = [Complex64::new(0.0, 0.0); 2];
    for i in 0..=n {
        let s = i as f64 * h;
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let jac = 2.0 * mc * s;
        for sign in [1.0, -1.0] {
            let p = sign * mc * s * s;
            let v = f(p);
            let ph = Complex64::from_polar(jac * w * (-eps * s * s).exp(), p * x / k.hbar);
            acc[0] += ph * v[0];
            acc[1] += ph * v[1];
        }
    }
    let norm = h / 3.0 / (2.0 * PI * k.hbar).sqrt();
    [acc[0] * norm, acc[1] * norm]
}

fn phi_momentum(spec: &EigenSpec, t: f64, p: f64, k: &PhysConstants) -> Complex64 {
    let e = energy(p, k);
    let branch = match spec.parity {
        Parity::Nonnodal => 1.0,
        Parity::Nodal => p.signum(),
    };
    let modulus = (k.c / (4.0 * PI * k.hbar)).sqrt() * (p.abs() * k.c / e).sqrt() * branch;
    Complex64::from_polar(modulus, -spec.lambda.value() * (t - spec.tau) * e / k.hbar)
}

#[test]
fn position_eigenfunctions_match_direct_fourier_synthesis() {
    let q = tight();
    for k in [one(), PhysConstants::new(0.5, 2.0, 1.5).unwrap()] {
        for lambda in [ChargeSign::Positive, ChargeSign::Negative] {
            for parity in Parity::BOTH {
                let spec = EigenSpec::new(lambda, parity, 0.4).unwrap();
                let (x, t) = (0.8, 0.65);
                let phi = |p: f64| {
                    let v = phi_momentum(&spec, t, p, &k);
                    match lambda {
                        ChargeSign::Positive => [v, Complex64::new(0.0, 0.0)],
                        ChargeSign::Negative => [Complex64::new(0.0, 0.0), v],
                    }
                };
                // U^{-1} = ((m0c² + E) σ0 + (m0c² − E) σ1) / sqrt(4 m0c² E)
                let psi = |p: f64| {
                    let [a, b] = phi(p);
                    let (mc2, e) = (k.rest_energy(), energy(p, &k));
                    let d = (4.0 * mc2 * e).sqrt();
                    [
                        ((mc2 + e) * a + (mc2 - e) * b) / d,
                        ((mc2 - e) * a + (mc2 + e) * b) / d,
                    ]
                };
                let want_phi = fourier_oracle(x, q.epsilon, &k, phi);
                let want_psi = fourier_oracle(x, q.epsilon, &k, psi);
                let got_phi = phi_position_eigenfunction(&spec, x, t, &k, &q).unwrap();
                let got_psi = psi_representation_eigenfunction(&spec, x, t, &k, &q).unwrap();
                for (got, want) in [
                    ([got_phi.0, got_phi.1], want_phi),
                    ([got_psi.0, got_psi.1], want_psi),
                ] {
                    let scale = want[0].norm() + want[1].norm();
                    assert!(
                        (got[0] - want[0]).norm() < 1e-8 * scale,
                        "{lambda} {parity}: {got:?} vs {want:?}"
                    );
                    assert!(
                        (got[1] - want[1]).norm() < 1e-8 * scale,
                        "{lambda} {parity}: {got:?} vs {want:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn density_diverges_as_inverse_square_at_the_localization_point() {
    let k = one();
    let at = |eps: f64| {
        let q = QuadratureConfig::default().with_epsilon(eps);
        density(Parity::Nonnodal, 0.5, 0.0, 0.5, &k, &q).unwrap()
    };
    let (a, b, c) = (at(0.3), at(0.15), at(0.075));
    assert!(b > a && c > b);
    assert!((3.5..4.5).contains(&(c / b)), "ratio {}", c / b);
}

#[test]
fn extrapolation_is_stable_away_from_the_light_cone() {
    let k = one();
    let tau = 0.5;
    let coarse = QuadratureConfig::default();
    let fine = QuadratureConfig {
        epsilon_ladder: vec![0.15, 0.075, 0.0375],
        ..Default::default()
    };
    // each point sits at distance >= 0.75 from |x| = |t − τ|
    for (x, dt) in [(2.5, 0.25), (0.0, 1.0), (-3.0, 0.5), (1.5, -0.5)] {
        let a = density_extrapolated(Parity::Nonnodal, tau, x, tau + dt, &k, &coarse).unwrap();
        let b = density_extrapolated(Parity::Nonnodal, tau, x, tau + dt, &k, &fine).unwrap();
        assert!((a - b).abs() < 0.05 * b.abs(), "({x},{dt}): {a} vs {b}");
    }
}

fn axes(tau: f64, n: usize) -> GridAxes {
    GridAxes {
        x_range: (-4.0, 4.0),
        t_range: (0.0, 2.0 * tau),
        nx: n,
        nt: n,
    }
}

#[test]
fn nonnodal_grid_peaks_at_origin_at_eigenvalue() {
    let k = one();
    let q = QuadratureConfig::default();
    let g = density_grid(Parity::Nonnodal, 0.5, axes(0.5, 41), &k, &q, false).unwrap();
    assert!(!g.any_flagged());
    assert_eq!(g.argmax(), (20, 20));
    let seq = density_grid_with(
        Parity::Nonnodal,
        0.5,
        axes(0.5, 41),
        &k,
        &q,
        false,
        Execution::Sequential,
    )
    .unwrap();
    assert_eq!(seq, g);
    assert!(g.values.iter().all(|v| *v >= 0.0));
}

#[test]
fn nodal_grid_has_a_node_on_axis_and_closest_peaks_at_eigenvalue() {
    let k = one();
    let q = QuadratureConfig::default();
    let g = density_grid(Parity::Nodal, 1.0, axes(1.0, 41), &k, &q, false).unwrap();
    for it in 0..g.nt() {
        assert_eq!(g.at(it, 20), 0.0);
    }
    let r = localization_report(&g).unwrap();
    assert_eq!(r.nodal_minimum_at_tau(), Some(true));
    let (left, right) = r.slices[r.tau_slice].nodal_peaks.unwrap();
    assert!(left < 0.0 && right > 0.0 && (left + right).abs() < 1e-9);
}
