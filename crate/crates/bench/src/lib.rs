//! Criterion benchmarks for the hot paths: field arithmetic, rank, minimum
//! distance, S_h verification and maximum-set search.

use std::hint::black_box;
use std::path::PathBuf;

use criterion::{BenchmarkId, Criterion};
use shlin::io::{load_matrix, load_vectors};
use shlin::linalg::{packed_rank, BitVector};
use shlin::shset::{exhaustive_max_sh_set, holds, verify};
use shlin::{Field, FqMatrix, LinearCode, Mode, ShSetCandidate};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn set(name: &str, h: usize) -> ShSetCandidate {
    let vf = load_vectors(fixture(name)).unwrap();
    ShSetCandidate::new(&vf.field, vf.r, vf.vectors, h).unwrap()
}

fn matrix(name: &str) -> FqMatrix {
    load_matrix(fixture(name)).unwrap()
}

pub fn field(c: &mut Criterion) {
    let mut group = c.benchmark_group("field");
    for q in [9, 256] {
        let f = Field::from_order(q).unwrap();
        let elems: Vec<_> = f.elements().collect();
        group.bench_with_input(BenchmarkId::new("mul_table", q), &f, |b, f| {
            b.iter(|| elems.iter().fold(f.elem(1).unwrap(), |acc, &e| f.mul(acc, black_box(e))))
        });
        group.bench_with_input(BenchmarkId::new("mul_direct", q), &f, |b, f| {
            b.iter(|| elems.iter().fold(f.elem(1).unwrap(), |acc, &e| f.mul_direct(acc, black_box(e))))
        });
    }
    group.finish();
}

pub fn rank(c: &mut Criterion) {
    let h2 = matrix("h2_f2.mat");
    let h1 = matrix("h1_f5.mat");
    c.bench_function("rank/f2_8x14", |b| b.iter(|| black_box(&h2).rank()));
    let packed: Vec<BitVector> = h2.row_vectors().iter().map(|r| BitVector::from_fq(r).unwrap()).collect();
    c.bench_function("rank/f2_8x14_packed", |b| b.iter(|| packed_rank(black_box(&packed))));
    c.bench_function("rank/f5_8x12", |b| b.iter(|| black_box(&h1).rank()));
}

pub fn min_distance(c: &mut Criterion) {
    let code = LinearCode::from_parity_check(&matrix("h1_f5.mat"));
    c.bench_function("mindist/h1_enumerate", |b| {
        b.iter(|| LinearCode::from_parity_check(code.parity_check()).min_distance(u128::MAX).unwrap())
    });
    c.bench_function("mindist/h1_columns", |b| b.iter(|| code.min_distance_at_least(black_box(7)).holds));
}

pub fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    for (name, h) in [("f2_10_s3.set", 3), ("f2_10_s3.set", 4), ("f5_12_s3.set", 3), ("f3_9_s3.set", 3)] {
        let a = set(name, h);
        let id = format!("{name}/h={h}");
        group.bench_function(BenchmarkId::new("witness", &id), |b| b.iter(|| verify(black_box(&a), Mode::Linear)));
        group.bench_function(BenchmarkId::new("holds", &id), |b| b.iter(|| holds(black_box(&a), Mode::Linear)));
    }
    group.finish();
}

pub fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_max");
    group.sample_size(10);
    for (q, r, h) in [(2, 4, 2), (3, 3, 2), (2, 5, 2)] {
        let f = Field::from_order(q).unwrap();
        group.bench_function(format!("q={q}/r={r}/h={h}"), |b| {
            b.iter(|| exhaustive_max_sh_set(&f, r, h, false, Mode::Linear).unwrap().size)
        });
    }
    group.finish();
}
