use std::fmt::Write;

use rtoa::spectral::{eigenfunction_field, EigenSpec, Parity};
use rtoa::{grid, ChargeSign};
use serde::Serialize;

use super::{parse_charge, parse_parity};
use crate::config::{Format, RunConfig};
use crate::{output, Failure, EXIT_OK};

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[arg(long, default_value = "+", value_parser = parse_charge, allow_hyphen_values = true)]
    pub lambda: ChargeSign,
    #[arg(long, default_value = "nonnodal", value_parser = parse_parity)]
    pub branch: Parity,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub tau: f64,
    /// Evolution time.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    pub pmin: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    pub pmax: f64,
    #[arg(long, default_value_t = 1001)]
    pub np: usize,
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    spec: EigenSpec,
    t: f64,
    p: &'a [f64],
    upper: Vec<[f64; 2]>,
    lower: Vec<[f64; 2]>,
}

pub fn run(args: &Args, cfg: &RunConfig) -> Result<i32, Failure> {
    let spec = EigenSpec::new(args.lambda, args.branch, args.tau)?;
    let g = grid::uniform(args.pmin, args.pmax, args.np)?;
    let f = eigenfunction_field(&spec, args.t, g, &cfg.constants)?;
    let doc = match cfg.output.format {
        Format::Csv => {
            let mut s = output::csv_preamble(
                "eigenfunction",
                cfg,
                &[
                    ("lambda", args.lambda.to_string()),
                    ("branch", args.branch.to_string()),
                    ("tau", args.tau.to_string()),
                    ("t", args.t.to_string()),
                ],
            );
            s.push_str("p,re_upper,im_upper,re_lower,im_lower\n");
            for ((p, u), l) in f.grid().iter().zip(f.upper()).zip(f.lower()) {
                writeln!(s, "{p},{},{},{},{}", u.re, u.im, l.re, l.im).unwrap();
            }
            s
        }
        Format::Json => {
            let r = Report {
                config: cfg,
                spec,
                t: args.t,
                p: f.grid(),
                upper: f.upper().iter().map(|z| [z.re, z.im]).collect(),
                lower: f.lower().iter().map(|z| [z.re, z.im]).collect(),
            };
            serde_json::to_string_pretty(&r).expect("report serializes") + "\n"
        }
    };
    output::emit(cfg, &doc)?;
    if cfg.output.emit_plot_script && cfg.output.format == Format::Csv {
        let data = cfg.output.path.as_ref().expect("validated");
        let script = format!(
            "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'p'\n\
             plot {0} using 1:2 with lines, {0} using 1:3 with lines, \
             {0} using 1:4 with lines, {0} using 1:5 with lines\n",
            output::quoted(std::path::Path::new(&output::file_name(data)))
        );
        output::write_atomic(&output::script_path(data), &script)?;
    }
    Ok(EXIT_OK)
}
