use std::fmt::Write;

use rtoa::dynamics::{
    density_grid, localization_report, DensityGrid, GridAxes, LocalizationReport,
};
use rtoa::spectral::Parity;
use serde::Serialize;

use super::parse_parity;
use crate::config::{Format, RunConfig};
use crate::{output, Failure, EXIT_CONVERGENCE, EXIT_OK};

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[arg(long, default_value = "nonnodal", value_parser = parse_parity)]
    pub branch: Parity,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub tau: f64,
    #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
    pub xmin: f64,
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    pub xmax: f64,
    #[arg(long, default_value_t = 101)]
    pub nx: usize,
    /// Defaults to 0.
    #[arg(long, allow_hyphen_values = true)]
    pub tmin: Option<f64>,
    /// Defaults to 2 tau.
    #[arg(long, allow_hyphen_values = true)]
    pub tmax: Option<f64>,
    #[arg(long, default_value_t = 101)]
    pub nt: usize,
    /// Damping strength of the position-space integrals.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Extrapolate each cell to zero damping along the configured ladder.
    #[arg(long)]
    pub extrapolate: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    grid: &'a DensityGrid,
    localization: Option<&'a LocalizationReport>,
}

pub fn run(args: &Args, cfg: &RunConfig) -> Result<i32, Failure> {
    let axes = GridAxes {
        x_range: (args.xmin, args.xmax),
        t_range: (
            args.tmin.unwrap_or(0.0),
            args.tmax.unwrap_or(2.0 * args.tau),
        ),
        nx: args.nx,
        nt: args.nt,
    };
    let g = density_grid(
        args.branch,
        args.tau,
        axes,
        &cfg.constants,
        &cfg.quadrature,
        args.extrapolate,
    )?;
    let report = localization_report(&g).ok();
    let flagged = g.flagged.iter().filter(|f| **f).count();
    if let Some(r) = &report {
        eprintln!(
            "rtoa: global maximum at x = {}, t = {}; slice at t = tau is {}",
            r.global_argmax.0, r.global_argmax.1, r.tau_slice
        );
        if let Some(i) = r.closest_approach {
            eprintln!(
                "rtoa: nodal peaks closest to x = 0 on slice {i} (t = {})",
                g.t[i]
            );
        }
    }
    let doc = match cfg.output.format {
        Format::Csv => {
            let mut extra = vec![
                ("branch", args.branch.to_string()),
                ("tau", args.tau.to_string()),
                ("extrapolated", args.extrapolate.to_string()),
                ("flagged_cells", flagged.to_string()),
            ];
            if let Some(r) = &report {
                extra.push((
                    "global_argmax",
                    format!("{},{}", r.global_argmax.0, r.global_argmax.1),
                ));
            }
            let mut s = output::csv_preamble("density-grid", cfg, &extra);
            s.push_str("x,t,P\n");
            for (it, t) in g.t.iter().enumerate() {
                for (ix, x) in g.x.iter().enumerate() {
                    writeln!(s, "{x},{t},{}", g.at(it, ix)).unwrap();
                }
            }
            s
        }
        Format::Json => {
            let r = Report {
                config: cfg,
                grid: &g,
                localization: report.as_ref(),
            };
            serde_json::to_string_pretty(&r).expect("report serializes") + "\n"
        }
    };
    output::emit(cfg, &doc)?;
    if cfg.output.emit_plot_script && cfg.output.format == Format::Csv {
        let data = cfg.output.path.as_ref().expect("validated");
        let script = format!(
            "set datafile separator ','\n\
             set dgrid3d {nt},{nx} qnorm 2\n\
             set contour base\nset cntrparam levels 12\nunset surface\nset view map\n\
             set xlabel 'x'\nset ylabel 't'\n\
             set title 'P(x,t), {branch} branch, tau = {tau}'\n\
             splot {data} every ::1 using 1:2:3 with lines notitle\n",
            nt = args.nt,
            nx = args.nx,
            branch = args.branch,
            tau = args.tau,
            data = output::quoted(std::path::Path::new(&output::file_name(data))),
        );
        output::write_atomic(&output::script_path(data), &script)?;
    }
    if flagged > 0 {
        eprintln!("rtoa: {flagged} cells did not reach the quadrature tolerance");
        return Ok(EXIT_CONVERGENCE);
    }
    Ok(EXIT_OK)
}
