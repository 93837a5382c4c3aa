use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rtoa::dynamics::{density_grid_with, GridAxes, QuadratureConfig};
use rtoa::spectral::{completeness_check_with, Parity};
use rtoa::toa::{gaussian_state, toa_distribution_with};
use rtoa::{ChargeSign, Execution, PhysConstants};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn density(c: &mut Criterion) {
    let k = PhysConstants::default();
    let q = QuadratureConfig::default();
    let axes = GridAxes {
        x_range: (-4.0, 4.0),
        t_range: (0.0, 1.0),
        nx: 21,
        nt: 21,
    };
    let mut g = c.benchmark_group("density_grid_21x21");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| density_grid_with(Parity::Nonnodal, 0.5, axes, &k, &q, false, exec).unwrap())
        });
    }
    g.finish();
}

fn toa(c: &mut Criterion) {
    let k = PhysConstants::default();
    let s = gaussian_state(3.0, -7.0, &k).unwrap();
    let mut g = c.benchmark_group("toa_distribution_501");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                toa_distribution_with(&s, ChargeSign::Positive, (0.0, 30.0), 501, exec).unwrap()
            })
        });
    }
    g.finish();
}

fn completeness(c: &mut Criterion) {
    let k = PhysConstants::default();
    let f = gaussian_state(2.0, 0.0, &k)
        .unwrap()
        .field(ChargeSign::Positive)
        .unwrap();
    let mut g = c.benchmark_group("completeness_T10");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| completeness_check_with(&f, 10.0, 0.1, &k, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, density, toa, completeness);
criterion_main!(benches);
