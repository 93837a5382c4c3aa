use std::fmt::Write;

use rtoa::toa::{
    classical_references, default_tau_range, most_probable_tau, standard_grid, toa_distribution,
    GaussianState, ToaDistribution, DEFAULT_GRID_POINTS, DEFAULT_TAU_POINTS,
};
use rtoa::{ChargeSign, Error};
use serde::Serialize;

use super::parse_charge;
use crate::config::{Format, RunConfig};
use crate::{output, Failure, EXIT_OK};

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[arg(long, allow_hyphen_values = true)]
    pub p0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub tau_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau_max: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TAU_POINTS)]
    pub n_tau: usize,
    /// The overlaps converge without damping; accepted for explicitness.
    #[arg(long)]
    pub epsilon_free: bool,
    #[arg(long, default_value = "+", value_parser = parse_charge, allow_hyphen_values = true)]
    pub lambda: ChargeSign,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    pub momentum_points: usize,
}

#[derive(Debug, Serialize)]
pub struct GridMetadata {
    pub tau_min: f64,
    pub tau_max: f64,
    pub n_tau: usize,
    pub momentum_points: usize,
    pub momentum_min: f64,
    pub momentum_max: f64,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub tau_mp: f64,
    pub tau_mp_at_boundary: bool,
    pub t_class: Option<f64>,
    pub t_ph: f64,
    pub relative_deviation_from_t_class: Option<f64>,
    pub peak_height: f64,
    pub interquartile_range: Option<f64>,
    /// Trapezoidal ∫Π dτ over the window; not normalized.
    pub total_probability: f64,
    pub mass_before_t_ph: f64,
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    p0: f64,
    x0: f64,
    lambda: ChargeSign,
    grid: GridMetadata,
    #[serde(flatten)]
    summary: &'a Summary,
    tau: &'a [f64],
    pi_total: &'a [f64],
    pi_nonnodal: &'a [f64],
    pi_nodal: &'a [f64],
}

pub fn summarize(
    d: &ToaDistribution,
    p0: f64,
    x0: f64,
    cfg: &RunConfig,
) -> Result<Summary, Failure> {
    let k = &cfg.constants;
    let (t_class, t_ph) = match classical_references(p0, x0, k) {
        Ok((c, p)) => (Some(c), p),
        Err(Error::UndefinedClassicalTime { t_ph }) => (None, t_ph),
        Err(e) => return Err(e.into()),
    };
    let mp = most_probable_tau(d)?;
    Ok(Summary {
        tau_mp: mp.tau,
        tau_mp_at_boundary: mp.at_boundary,
        t_class,
        t_ph,
        relative_deviation_from_t_class: t_class
            .filter(|t| *t != 0.0)
            .map(|t| (mp.tau - t).abs() / t.abs()),
        peak_height: d.peak_height(),
        interquartile_range: d.interquartile_range().ok(),
        total_probability: d.total_probability(),
        mass_before_t_ph: d.mass_below(t_ph),
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| x.to_string())
}

pub fn run(args: &Args, cfg: &RunConfig) -> Result<i32, Failure> {
    let k = &cfg.constants;
    let (lo, hi) = default_tau_range(args.p0, args.x0, k);
    let range = (args.tau_min.unwrap_or(lo), args.tau_max.unwrap_or(hi));
    if !(range.0 < range.1) {
        return Err(Failure::Validation(format!(
            "tau range must be increasing, got [{}, {}]",
            range.0, range.1
        )));
    }
    let g = standard_grid(args.p0, k, args.momentum_points)?;
    let grid_meta = GridMetadata {
        tau_min: range.0,
        tau_max: range.1,
        n_tau: args.n_tau,
        momentum_points: g.len(),
        momentum_min: g[0],
        momentum_max: g[g.len() - 1],
    };
    let state = GaussianState::on_grid(args.p0, args.x0, k, g)?;
    let d = toa_distribution(&state, args.lambda, range, args.n_tau)?;
    let summary = summarize(&d, args.p0, args.x0, cfg)?;
    if summary.tau_mp_at_boundary {
        eprintln!("rtoa: warning: the maximum sits on the edge of the tau window; widen it");
    }
    let doc = match cfg.output.format {
        Format::Csv => {
            let extra = [
                ("p0", args.p0.to_string()),
                ("x0", args.x0.to_string()),
                ("lambda", args.lambda.to_string()),
                ("momentum_points", grid_meta.momentum_points.to_string()),
                ("tau_mp", summary.tau_mp.to_string()),
                ("tau_mp_at_boundary", summary.tau_mp_at_boundary.to_string()),
                ("t_class", opt(summary.t_class)),
                ("t_ph", summary.t_ph.to_string()),
            ];
            let mut s = output::csv_preamble("toa-dist", cfg, &extra);
            s.push_str("tau,pi_total,pi_nonnodal,pi_nodal\n");
            for i in 0..d.len() {
                writeln!(
                    s,
                    "{},{},{},{}",
                    d.tau[i], d.pi_total[i], d.pi_nonnodal[i], d.pi_nodal[i]
                )
                .unwrap();
            }
            s
        }
        Format::Json => {
            let r = Report {
                config: cfg,
                p0: args.p0,
                x0: args.x0,
                lambda: args.lambda,
                grid: grid_meta,
                summary: &summary,
                tau: &d.tau,
                pi_total: &d.pi_total,
                pi_nonnodal: &d.pi_nonnodal,
                pi_nodal: &d.pi_nodal,
            };
            serde_json::to_string_pretty(&r).expect("report serializes") + "\n"
        }
    };
    output::emit(cfg, &doc)?;
    if cfg.output.emit_plot_script && cfg.output.format == Format::Csv {
        let data = cfg.output.path.as_ref().expect("validated");
        let file = output::quoted(std::path::Path::new(&output::file_name(data)));
        let script = format!(
            "set datafile separator ','\nset key autotitle columnhead\n\
             set xlabel 'tau'\nset ylabel 'Pi(tau)'\n\
             set title 'p0 = {p0}, x0 = {x0}'\n\
             set arrow from {t_ph}, graph 0 to {t_ph}, graph 1 nohead dashtype 3\n\
             plot {file} using 1:2 with lines lw 2, {file} using 1:3 with lines, {file} using 1:4 with lines\n",
            p0 = args.p0,
            x0 = args.x0,
            t_ph = summary.t_ph,
        );
        output::write_atomic(&output::script_path(data), &script)?;
    }
    Ok(EXIT_OK)
}
