use criterion::{black_box, criterion_group, criterion_main, Criterion};

use fusionkit_core::cases::{aut_gamma, GammaModel};
use fusionkit_core::fingroup::symmetric;
use fusionkit_core::fusion::FusionData;
use fusionkit_core::matgroup::std_matrix_in;
use fusionkit_core::{MatrixGroup, StdMatrix, DEFAULT_CAP};

fn closure(c: &mut Criterion) {
    for p in [3u32, 5] {
        let gens: Vec<_> = [StdMatrix::A, StdMatrix::B, StdMatrix::ZetaI, StdMatrix::D, StdMatrix::SignedSigma(2)]
            .into_iter()
            .map(|w| std_matrix_in(p, w, p).unwrap())
            .collect();
        c.bench_function(&format!("closure/chain_normalizer_p{p}"), |b| {
            b.iter(|| MatrixGroup::closure(black_box(&gens), DEFAULT_CAP).unwrap())
        });
    }
}

fn aut_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("aut_gamma");
    group.sample_size(10);
    for p in [3u32, 5, 7] {
        let gm = GammaModel::new(p, p).unwrap();
        group.bench_function(format!("pair_scan_p{p}"), |b| b.iter(|| aut_gamma(black_box(&gm)).unwrap()));
    }
    let q8 = GammaModel::new(2, 8).unwrap();
    group.bench_function("backtracking_q8", |b| b.iter(|| aut_gamma(black_box(&q8)).unwrap()));
    group.finish();
}

fn sd_poset(c: &mut Criterion) {
    let mut group = c.benchmark_group("sd_poset");
    group.sample_size(10);
    for n in [4usize, 5] {
        let g = symmetric(n);
        group.bench_function(format!("symmetric{n}_p2"), |b| {
            b.iter(|| FusionData::new(black_box(&g), 2).unwrap().sd_poset().unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, closure, aut_scan, sd_poset);
criterion_main!(benches);
