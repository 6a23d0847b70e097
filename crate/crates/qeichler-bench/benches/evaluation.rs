use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use qeichler::forms::CuspFormSpec;
use qeichler::{eichler, forms, lfunc, quantum, ReducedRational};

fn bench_evaluation(c: &mut Criterion) {
    let eta24 = CuspFormSpec::eta24();
    let third = ReducedRational::new(1, 3).unwrap();

    c.bench_function("evaluate eta24 near real axis", |b| {
        b.iter(|| forms::evaluate_at_rational(&eta24, third, black_box(1e-6), 1e-12).unwrap())
    });

    c.bench_function("evaluate eta24 interior", |b| {
        b.iter(|| forms::evaluate(&eta24, black_box(Complex64::new(0.3, 0.8)), 1e-12).unwrap())
    });

    c.bench_function("expand eta8^3 to 4096", |b| {
        let spec = CuspFormSpec::eta8_cubed();
        b.iter(|| forms::expand(&spec, black_box(4096)).unwrap())
    });
}

fn bench_lvalues(c: &mut Criterion) {
    let eta8 = CuspFormSpec::eta8_cubed();
    let half = ReducedRational::new(1, 2).unwrap();

    c.bench_function("twisted L-value at s = 1/2", |b| {
        b.iter(|| lfunc::l_twisted(&eta8, half, black_box(Complex64::new(0.5, 0.0)), 1e-9).unwrap())
    });

    c.bench_function("f* incomplete-gamma series", |b| {
        b.iter(|| eichler::f_star_series(&eta8, half, black_box(-0.01), 1e-9).unwrap())
    });

    c.bench_function("strange function at e(1/12)", |b| {
        let x = ReducedRational::new(1, 12).unwrap();
        b.iter(|| quantum::strange_function(black_box(x)))
    });
}

criterion_group!(benches, bench_evaluation, bench_lvalues);
criterion_main!(benches);
