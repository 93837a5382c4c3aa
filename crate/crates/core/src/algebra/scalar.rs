use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use num_complex::Complex;

/// Exact complex number with rational real and imaginary parts.
pub type Scalar = Complex<BigRational>;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn real(r: BigRational) -> Scalar {
    Complex::new(r, BigRational::zero())
}

pub(crate) fn imag(r: BigRational) -> Scalar {
    Complex::new(BigRational::zero(), r)
}

pub(crate) fn i_unit() -> Scalar {
    imag(BigRational::one())
}

fn fmt_imag(im: &BigRational) -> String {
    if im.is_one() {
        "i".into()
    } else if (-im).is_one() {
        "-i".into()
    } else {
        format!("{im}i")
    }
}

/// Canonical text of an exact complex number: `0`, `-1/2`, `i`, `-1/2i`,
/// `(1/3-2i)`.
pub fn format_scalar(z: &Scalar) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format!("{}", z.re),
        (true, false) => fmt_imag(&z.im),
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            let mag = z.im.abs();
            let im = if mag.is_one() {
                "i".to_string()
            } else {
                format!("{mag}i")
            };
            format!("({}{sign}{im})", z.re)
        }
    }
}
