#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Abscissae of the 21-point Kronrod rule on `[-1, 1]`, non-negative half,
/// largest first. Odd indices are the nodes of the embedded 10-point Gauss
/// rule.
pub const GK21_NODES: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

pub const GK21_WEIGHTS: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_323_323_766,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Weights of the 10-point Gauss rule, for `GK21_NODES[1], [3], ..., [9]`.
pub const GK21_GAUSS_WEIGHTS: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// One application of the Kronrod rule on `[a, b]`; returns the Kronrod value
/// and the embedded Gauss value.
pub fn gk21<F>(f: &F, a: f64, b: f64) -> (Complex64, Complex64)
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * GK21_WEIGHTS[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for j in 0..10 {
        let dx = half * GK21_NODES[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * GK21_WEIGHTS[j];
        if j % 2 == 1 {
            gauss += pair * GK21_GAUSS_WEIGHTS[j / 2];
        }
    }
    (kronrod * half, gauss * half)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for AdaptiveConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-7,
            max_subdivisions: 20_000,
        }
    }
}

/// How an initial panel is mapped before the Kronrod rule is applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Panel {
    Plain {
        a: f64,
        b: f64,
    },
    /// `[a, b]` integrated in `s = sqrt(q - a)`, which removes a `sqrt(q - a)`
    /// branch point at the left end.
    SqrtLeft {
        a: f64,
        b: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    lo: f64,
    hi: f64,
    sqrt_origin: Option<f64>,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn evaluate<F>(f: &F, lo: f64, hi: f64, sqrt_origin: Option<f64>) -> Piece
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let (k, g) = match sqrt_origin {
        None => gk21(f, lo, hi),
        Some(a) => gk21(&|s: f64| f(a + s * s) * (2.0 * s), lo, hi),
    };
    Piece {
        lo,
        hi,
        sqrt_origin,
        value: k,
        error: (k - g).norm(),
    }
}

/// Globally adaptive integration over a sequence of initial panels. The piece
/// with the largest error estimate is bisected until the summed estimate
/// drops below `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<F>(f: &F, panels: &[Panel], cfg: &AdaptiveConfig) -> Result<Integral>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let mut heap = BinaryHeap::with_capacity(panels.len() * 2);
    for panel in panels {
        let piece = match *panel {
            Panel::Plain { a, b } => evaluate(f, a, b, None),
            Panel::SqrtLeft { a, b } => evaluate(f, 0.0, (b - a).sqrt(), Some(a)),
        };
        heap.push(piece);
    }
    let mut subdivisions = 0;
    loop {
        let (value, error) = totals(&heap);
        let target = cfg.abs_tol.max(cfg.rel_tol * value.norm());
        if error <= target {
            return Ok(Integral {
                value,
                error,
                subdivisions,
            });
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::Convergence {
                value,
                estimate: error,
                tolerance: target,
            });
        }
        let Some(worst) = heap.pop() else {
            unreachable!("heap is never empty while error exceeds tolerance")
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            return Err(Error::Convergence {
                value,
                estimate: error,
                tolerance: target,
            });
        }
        heap.push(evaluate(f, worst.lo, mid, worst.sqrt_origin));
        heap.push(evaluate(f, mid, worst.hi, worst.sqrt_origin));
        subdivisions += 1;
    }
}

fn totals(heap: &BinaryHeap<Piece>) -> (Complex64, f64) {
    let mut pieces: Vec<&Piece> = heap.iter().collect();
    pieces.sort_by(|a, b| {
        a.sqrt_origin
            .is_some()
            .cmp(&b.sqrt_origin.is_some())
            .reverse()
            .then(a.lo.total_cmp(&b.lo))
    });
    pieces
        .iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| {
            (v + p.value, e + p.error)
        })
}
