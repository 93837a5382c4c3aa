use rtoa::spectral::{
    apply_even_toa, commutator_residual, completeness_check, eigen_residual, eigenfunction_field,
    nonrel_limit_check, overlap, overlap_numeric, EigenSpec, EvenToaOptions, OverlapConfig, Parity,
};
use rtoa::toa::{standard_grid, GaussianState};
use rtoa::{grid, inner_product_phi, ChargeSign, PhysConstants};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::states::{BumpState, CONJUGACY_STATES, SUPPORT};
use crate::{output, Failure, EXIT_OK, EXIT_VALIDATION};

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    /// Grid size for the conjugacy check (refined once to 2n − 1).
    #[arg(long, default_value_t = 4097)]
    pub points: usize,
    /// Skip the completeness reconstruction.
    #[arg(long)]
    pub skip_completeness: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub details: Value,
}

fn order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

fn conjugacy(points: usize, k: &PhysConstants) -> Result<Check, Failure> {
    let opts = EvenToaOptions::default();
    let mut worst: f64 = 0.0;
    let mut min_order = f64::INFINITY;
    let mut rows = Vec::new();
    for s in CONJUGACY_STATES {
        let a = commutator_residual(&s.sample(points, k)?, k, &opts, 0)?;
        let b = commutator_residual(&s.sample(2 * points - 1, k)?, k, &opts, 0)?;
        worst = worst.max(a);
        min_order = min_order.min(order(a, b));
        rows.push(
            json!({"centre": s.centre, "width": s.width, "wavenumber": s.wavenumber,
                         "residual": a, "refined_residual": b, "order": order(a, b)}),
        );
    }
    Ok(Check {
        name: "conjugacy",
        measured: worst,
        tolerance: 1e-4,
        pass: worst < 1e-4 && min_order >= 3.0,
        details: json!({"points": points, "states": rows, "min_order": min_order}),
    })
}

fn eigenrelation(k: &PhysConstants) -> Result<Check, Failure> {
    let opts = EvenToaOptions::default();
    let mc = k.compton_momentum();
    let mut worst: f64 = 0.0;
    let mut min_order = f64::INFINITY;
    let mut rows = Vec::new();
    for tau in [0.5, 1.0, 2.0] {
        let tau = tau * k.compton_time();
        for parity in Parity::BOTH {
            let spec = EigenSpec::new(ChargeSign::Positive, parity, tau)?;
            let res = |n| -> Result<f64, Failure> {
                let g = grid::uniform(SUPPORT.0 * mc, SUPPORT.1 * mc, n)?;
                let f = eigenfunction_field(&spec, 0.0, g, k)?;
                Ok(eigen_residual(&f, tau, k, &opts, 4)?)
            };
            let (a, b) = (res(257)?, res(513)?);
            worst = worst.max(b);
            min_order = min_order.min(order(a, b));
            rows.push(json!({"tau": tau, "branch": parity, "residual_257": a, "residual_513": b}));
        }
    }
    Ok(Check {
        name: "eigenrelation",
        measured: worst,
        tolerance: 1e-4,
        pass: worst < 1e-4 && min_order >= 3.0,
        details: json!({"cases": rows, "min_order": min_order}),
    })
}

fn symmetry(k: &PhysConstants) -> Result<Check, Failure> {
    let states = [
        BumpState::new(2.0, 1.0, 3.0),
        BumpState::new(3.5, 1.2, -7.0),
        BumpState::new(2.7, 0.8, 11.0),
    ];
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for s in states {
        let f = s.sample(2049, k)?;
        let tf = apply_even_toa(&f, k)?;
        let v = inner_product_phi(&f, &tf)?;
        let rel = v.im.abs() / v.norm();
        worst = worst.max(rel);
        rows.push(json!({"re": v.re, "im": v.im, "relative_imaginary": rel}));
    }
    Ok(Check {
        name: "symmetry",
        measured: worst,
        tolerance: 1e-6,
        pass: worst < 1e-6,
        details: json!({"points": 2049, "states": rows}),
    })
}

fn non_orthogonality(k: &PhysConstants) -> Result<Check, Failure> {
    let cfg = OverlapConfig::default();
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for lambda in [ChargeSign::Positive, ChargeSign::Negative] {
        for delta in [0.5, 1.0, 2.0, 5.0] {
            let delta = delta * k.compton_time();
            let s1 = EigenSpec::new(lambda, Parity::Nonnodal, 0.0)?;
            let s2 = EigenSpec::new(lambda, Parity::Nonnodal, delta)?;
            let exact = overlap(&s1, &s2, k).regular_part;
            let num = overlap_numeric(&s1, &s2, k, &cfg)?;
            let rel = (num.value - exact).norm() / exact.norm();
            worst = worst.max(rel);
            rows.push(
                json!({"lambda": lambda, "delta": delta, "relative_error": rel,
                             "extrapolation_error": num.extrapolation_error}),
            );
        }
    }
    let a = EigenSpec::new(ChargeSign::Positive, Parity::Nonnodal, 0.0)?;
    let zeros = [
        EigenSpec::new(ChargeSign::Negative, Parity::Nonnodal, 1.0)?,
        EigenSpec::new(ChargeSign::Positive, Parity::Nodal, 1.0)?,
    ]
    .iter()
    .all(|b| {
        let r = overlap(&a, b, k);
        r.distributional_part == 0.0 && r.regular_part.norm() == 0.0
    });
    Ok(Check {
        name: "non_orthogonality",
        measured: worst,
        tolerance: 1e-3,
        pass: worst < 1e-3 && zeros,
        details: json!({"cases": rows, "block_zeros_exact": zeros}),
    })
}

fn completeness(k: &PhysConstants) -> Result<Check, Failure> {
    let mc = k.compton_momentum();
    let t0 = k.compton_time();
    let p0 = 2.0 * mc;
    let state = GaussianState::on_grid(p0, 0.0, k, standard_grid(p0, k, 2049)?)?;
    let f = state.field(ChargeSign::Positive)?;
    let settings = [(25.0, 0.1), (50.0, 0.05)];
    let errors = settings
        .iter()
        .map(|&(t, dt)| completeness_check(&f, t * t0, dt * t0, k))
        .collect::<rtoa::Result<Vec<_>>>()?;
    let last = errors[errors.len() - 1];
    Ok(Check {
        name: "completeness",
        measured: last,
        tolerance: 2e-2,
        pass: errors.windows(2).all(|w| w[1] < w[0]) && last < 2e-2,
        details: json!({"state": {"p0": p0, "x0": 0.0}, "settings": settings, "errors": errors}),
    })
}

fn nonrel(k: &PhysConstants) -> Result<Check, Failure> {
    let spec = EigenSpec::new(ChargeSign::Positive, Parity::Nonnodal, k.compton_time())?;
    let ladder = [10.0, 100.0, 1000.0].map(|r| r * k.c);
    let dev = nonrel_limit_check(&spec, k.compton_momentum(), &ladder, k)?;
    let ratios: Vec<f64> = dev.windows(2).map(|w| w[0].1 / w[1].1).collect();
    let pass = ratios.iter().all(|r| (50.0..200.0).contains(r));
    Ok(Check {
        name: "nonrelativistic_limit",
        measured: dev[dev.len() - 1].1,
        tolerance: f64::NAN,
        pass,
        details: json!({"deviations": dev, "ratios_per_decade": ratios}),
    })
}

pub fn checks(args: &Args, k: &PhysConstants) -> Result<Vec<Check>, Failure> {
    let mut out = vec![
        conjugacy(args.points, k)?,
        eigenrelation(k)?,
        symmetry(k)?,
        non_orthogonality(k)?,
    ];
    if !args.skip_completeness {
        out.push(completeness(k)?);
    }
    out.push(nonrel(k)?);
    Ok(out)
}

pub fn run(args: &Args, cfg: &RunConfig) -> Result<i32, Failure> {
    let checks = checks(args, &cfg.constants)?;
    let all_pass = checks.iter().all(|c| c.pass);
    for c in &checks {
        eprintln!(
            "rtoa: {:<22} {} ({:e})",
            c.name,
            if c.pass { "ok" } else { "FAILED" },
            c.measured
        );
    }
    let doc = json!({"config": cfg, "checks": checks, "all_pass": all_pass});
    output::emit(
        cfg,
        &(serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"),
    )?;
    Ok(if all_pass { EXIT_OK } else { EXIT_VALIDATION })
}
