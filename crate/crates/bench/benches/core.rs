use criterion::{black_box, criterion_group, criterion_main, Criterion};

use tlc_core::construction::generate_trees;
use tlc_core::enumeration::census::{census, CensusConfig, ComplexClass};
use tlc_core::enumeration::examples::{double_ball, rp2_6, torus_7};
use tlc_core::homology::reduced_homology;
use tlc_core::recognition::{is_t_constructible, is_t_lc};
use tlc_core::{canonical_form, Budget, SimplicialComplex};

fn trees(c: &mut Criterion) {
    c.bench_function("generate_trees d3 n6", |b| b.iter(|| generate_trees(3, black_box(6), true)));
}

fn homology(c: &mut Criterion) {
    let t = torus_7();
    let s = SimplicialComplex::boundary_of_simplex(5);
    c.bench_function("homology torus_7", |b| b.iter(|| reduced_homology(black_box(&t))));
    c.bench_function("homology boundary 6-simplex", |b| b.iter(|| reduced_homology(black_box(&s))));
}

fn canonical(c: &mut Criterion) {
    let t = torus_7();
    c.bench_function("canonical torus_7", |b| b.iter(|| canonical_form(black_box(&t))));
}

fn recognition(c: &mut Criterion) {
    let rp2 = rp2_6();
    let p = double_ball();
    c.bench_function("is_t_lc rp2 t1 (exhaustive)", |b| b.iter(|| is_t_lc(black_box(&rp2), 1, &Budget::unlimited())));
    c.bench_function("is_t_constructible double ball t2", |b| {
        b.iter(|| is_t_constructible(black_box(&p), 2, &Budget::unlimited()))
    });
}

fn censuses(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    let surfaces = CensusConfig { d: 2, n: 8, t: 1, class: ComplexClass::Manifold, closed: true, workers: Some(1) };
    g.bench_function("d2 n8 t1 manifold", |b| b.iter(|| census(&surfaces, &Budget::unlimited())));
    let solids = CensusConfig { d: 3, n: 6, t: 2, class: ComplexClass::Quasimanifold, closed: true, workers: Some(1) };
    g.bench_function("d3 n6 t2 quasimanifold", |b| b.iter(|| census(&solids, &Budget::unlimited())));
    g.finish();
}

criterion_group!(benches, trees, homology, canonical, recognition, censuses);
criterion_main!(benches);
