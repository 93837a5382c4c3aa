use std::fmt::Write;

use rtoa::algebra::{minimal_toa_operator, rational, ExactConstants, PauliCoeff, Scalar};
use rtoa::spectral::{nonrel_limit_check, EigenSpec, Parity};
use rtoa::ChargeSign;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::{output, Failure, EXIT_OK, EXIT_VALIDATION};

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    /// Speeds of light to step through.
    #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
    pub c_ladder: Vec<f64>,
    /// Momentum at which the eigenfunctions are compared.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub tau: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OperatorStep {
    pub c: f64,
    /// Coefficient of `T[-1,1]`, exact.
    pub t_minus1_1: String,
    /// Coefficient of `T[1,1]`, exact.
    pub t_1_1: String,
    /// `c²` times the `T[1,1]` coefficient equals `−(σ3 + iσ2)/(2 m0)`.
    pub scaled_matches: bool,
    /// The `T[-1,1]` coefficient equals `−m0 σ3`.
    pub free_matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenStep {
    pub c: f64,
    pub deviation_nonnodal: f64,
    pub deviation_nodal: f64,
    /// `deviation · c²`, flat for an O(1/c²) approach.
    pub scaled: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitsReport {
    pub operator: Vec<OperatorStep>,
    pub eigenfunction: Vec<EigenStep>,
    pub decreasing: bool,
}

impl LimitsReport {
    pub fn passed(&self) -> bool {
        self.decreasing
            && self
                .operator
                .iter()
                .all(|s| s.scaled_matches && s.free_matches)
    }
}

pub fn compute(args: &Args, cfg: &RunConfig) -> Result<LimitsReport, Failure> {
    if args.c_ladder.len() < 2 {
        return Err(Failure::Validation(
            "c ladder needs at least two speeds".into(),
        ));
    }
    let mut operator = Vec::new();
    for &c in &args.c_ladder {
        let k = ExactConstants::from_phys(&cfg.constants.with_c(c))?;
        let op = minimal_toa_operator(&k);
        let free = op.coeff(-1, 1);
        let kinetic = op.coeff(1, 1);
        let c2 = Scalar::new(&k.c * &k.c, rational(0, 1));
        let half_inv_m = Scalar::new(-(rational(1, 2) / &k.m0), rational(0, 1));
        let want = (PauliCoeff::sigma(3)
            + PauliCoeff::sigma(2).scale(&Scalar::new(rational(0, 1), rational(1, 1))))
        .scale(&half_inv_m);
        let want_free = PauliCoeff::sigma(3).scale(&Scalar::new(-k.m0.clone(), rational(0, 1)));
        operator.push(OperatorStep {
            c,
            t_minus1_1: free.to_string(),
            t_1_1: kinetic.to_string(),
            scaled_matches: kinetic.scale(&c2) == want,
            free_matches: free == want_free,
        });
    }
    let k = &cfg.constants;
    let even = EigenSpec::new(ChargeSign::Positive, Parity::Nonnodal, args.tau)?;
    let odd = EigenSpec::new(ChargeSign::Positive, Parity::Nodal, args.tau)?;
    let a = nonrel_limit_check(&even, args.p, &args.c_ladder, k)?;
    let b = nonrel_limit_check(&odd, args.p, &args.c_ladder, k)?;
    let eigenfunction: Vec<EigenStep> = a
        .iter()
        .zip(&b)
        .map(|(&(c, d1), &(_, d2))| EigenStep {
            c,
            deviation_nonnodal: d1,
            deviation_nodal: d2,
            scaled: d1 * c * c,
        })
        .collect();
    let decreasing = eigenfunction
        .windows(2)
        .all(|w| w[1].deviation_nonnodal < w[0].deviation_nonnodal);
    Ok(LimitsReport {
        operator,
        eigenfunction,
        decreasing,
    })
}

pub fn run(args: &Args, cfg: &RunConfig) -> Result<i32, Failure> {
    let r = compute(args, cfg)?;
    let doc = match cfg.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                config: &'a RunConfig,
                p: f64,
                tau: f64,
                #[serde(flatten)]
                report: &'a LimitsReport,
            }
            serde_json::to_string_pretty(&Doc {
                config: cfg,
                p: args.p,
                tau: args.tau,
                report: &r,
            })
            .expect("report serializes")
                + "\n"
        }
        Format::Csv => {
            let mut s = output::csv_preamble(
                "limits",
                cfg,
                &[("p", args.p.to_string()), ("tau", args.tau.to_string())],
            );
            s.push_str("# operator: c | T[-1,1] | T[1,1] | c^2 T[1,1] = -(s3+i s2)/2m0 | T[-1,1] = -m0 s3\n");
            for o in &r.operator {
                writeln!(
                    s,
                    "# {} | {} | {} | {} | {}",
                    o.c, o.t_minus1_1, o.t_1_1, o.scaled_matches, o.free_matches
                )
                .unwrap();
            }
            s.push_str("c,deviation_nonnodal,deviation_nodal,deviation_times_c2\n");
            for e in &r.eigenfunction {
                writeln!(
                    s,
                    "{},{},{},{}",
                    e.c, e.deviation_nonnodal, e.deviation_nodal, e.scaled
                )
                .unwrap();
            }
            s
        }
    };
    output::emit(cfg, &doc)?;
    Ok(if r.passed() { EXIT_OK } else { EXIT_VALIDATION })
}
