pub mod algebra;
pub mod density;
pub mod eigen;
pub mod limits;
pub mod spectral;
pub mod toa;

use rtoa::spectral::Parity;
use rtoa::ChargeSign;

pub(crate) fn parse_parity(s: &str) -> Result<Parity, String> {
    s.parse().map_err(|e: rtoa::Error| e.to_string())
}

pub(crate) fn parse_charge(s: &str) -> Result<ChargeSign, String> {
    s.parse().map_err(|e: rtoa::Error| e.to_string())
}
