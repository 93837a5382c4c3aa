use std::fmt::Write;

use rtoa::algebra::{
    commutator_with_h, minimal_toa_operator, rational, solve_conjugate_ansatz_in, AnsatzWindow,
    BDOperator, BDTerm, ExactConstants, PauliCoeff, Scalar,
};

use crate::config::RunConfig;
use crate::{output, Failure, EXIT_OK, EXIT_VALIDATION};

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    pub m_min: i64,
    #[arg(long, default_value_t = 2)]
    pub m_max: i64,
    #[arg(long, default_value_t = 2)]
    pub n_max: i64,
}

pub struct Verification {
    pub minimal: BDOperator,
    pub solved: BDOperator,
    pub residual: BDOperator,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.residual.is_zero() && self.solved == self.minimal
    }
}

pub fn verify(window: AnsatzWindow, k: &ExactConstants) -> rtoa::Result<Verification> {
    let minimal = minimal_toa_operator(k);
    let solved = solve_conjugate_ansatz_in(window, k)?;
    let target = BDOperator::from_terms([BDTerm::new(
        0,
        0,
        PauliCoeff::sigma(0).scale(&Scalar::new(rational(0, 1), k.hbar.clone())),
    )]);
    let residual = commutator_with_h(&solved, k).sub(&target);
    Ok(Verification {
        minimal,
        solved,
        residual,
    })
}

pub fn run(args: &Args, cfg: &RunConfig) -> Result<i32, Failure> {
    let k = ExactConstants::from_phys(&cfg.constants)?;
    let window = AnsatzWindow {
        m_min: args.m_min,
        m_max: args.m_max,
        n_max: args.n_max,
    };
    let v = verify(window, &k)?;
    let mut s = String::new();
    writeln!(s, "# rtoa verify-algebra").unwrap();
    writeln!(s, "# hbar = {}, c = {}, m0 = {}", k.hbar, k.c, k.m0).unwrap();
    writeln!(s, "minimal operator:").unwrap();
    write!(s, "{}", v.minimal).unwrap();
    writeln!(
        s,
        "ansatz solution (m in [{}, {}], n in [0, {}]):",
        args.m_min, args.m_max, args.n_max
    )
    .unwrap();
    write!(s, "{}", v.solved).unwrap();
    writeln!(
        s,
        "matches minimal operator: {}",
        if v.solved == v.minimal { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(s, "commutator residual [H, T] - i*hbar*T[0,0]:").unwrap();
    write!(s, "{}", v.residual).unwrap();
    if !s.ends_with('\n') {
        s.push('\n');
    }
    output::emit(cfg, &s)?;
    Ok(if v.passed() { EXIT_OK } else { EXIT_VALIDATION })
}
