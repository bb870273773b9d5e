use bruhat_core::{build_datum, sweep, DatumSpec, Lattice, Subset, SweepCase, WeylGroup};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn group(t: &str, l: Lattice) -> WeylGroup {
    WeylGroup::generate(&build_datum(&DatumSpec::preset(t, l).unwrap()).unwrap()).unwrap()
}

fn generation(c: &mut Criterion) {
    let f4 = build_datum(&DatumSpec::preset("F4", Lattice::Adjoint).unwrap()).unwrap();
    c.bench_function("generate F4", |b| b.iter(|| WeylGroup::generate(black_box(&f4)).unwrap()));
}

fn intervals(c: &mut Criterion) {
    let g = group("B4", Lattice::SimplyConnected);
    let top = g.elements().max_by_key(|&w| g.length(w)).unwrap();
    c.bench_function("lower interval of w0 in B4", |b| b.iter(|| g.lower_interval(black_box(top)).len()));
}

fn double_cosets(c: &mut Criterion) {
    let g = group("F4", Lattice::SimplyConnected);
    let (i, j) = (Subset(0b0011), Subset(0b0110));
    c.bench_function("double coset table F4", |b| b.iter(|| g.double_coset_table(black_box(i), black_box(j)).per_rep.len()));
}

fn small_sweep(c: &mut Criterion) {
    let cases: Vec<SweepCase> = ["A2", "B2", "G2"].iter().map(|t| SweepCase::new(t, Lattice::SimplyConnected)).collect();
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("rank 2", |b| b.iter(|| sweep(black_box(&cases), 2).len()));
    g.finish();
}

criterion_group!(benches, generation, intervals, double_cosets, small_sweep);
criterion_main!(benches);
