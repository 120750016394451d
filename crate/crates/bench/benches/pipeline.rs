use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use morsetilings_core::morse::grid_schedule;
use morsetilings_core::{
    boundary_matrix, element_pairing_sequence, enumerate_bad_matchings, even_tiling, grid_2xn,
    perfect_matching_complex, reduced_betti, run_schedule, smith_normal_form, verify_acyclic,
};

fn complexes(c: &mut Criterion) {
    let mut group = c.benchmark_group("perfect_matching_complex");
    for n in [6, 8, 10] {
        let g = grid_2xn(n).unwrap();
        group.bench_with_input(BenchmarkId::new("grid2", n), &g, |b, g| {
            b.iter(|| perfect_matching_complex(black_box(g)).unwrap())
        });
    }
    let g = even_tiling(5, 3).unwrap();
    group.bench_function("even_tiling_5_3", |b| {
        b.iter(|| perfect_matching_complex(black_box(&g)).unwrap())
    });
    group.finish();
}

fn bad_matchings(c: &mut Criterion) {
    let g = grid_2xn(8).unwrap();
    c.bench_function("bad_matchings/grid2/8", |b| {
        b.iter(|| enumerate_bad_matchings(black_box(&g)).unwrap())
    });
}

fn pairing(c: &mut Criterion) {
    let mut group = c.benchmark_group("element_pairing");
    for n in [8, 10] {
        let cx = perfect_matching_complex(&grid_2xn(n).unwrap()).unwrap();
        let schedule = grid_schedule(n);
        group.bench_with_input(BenchmarkId::new("sequence", n), &cx, |b, cx| {
            b.iter(|| element_pairing_sequence(black_box(cx), &schedule).unwrap())
        });
        let outcome = element_pairing_sequence(&cx, &schedule).unwrap();
        group.bench_with_input(BenchmarkId::new("acyclicity", n), &cx, |b, cx| {
            b.iter(|| verify_acyclic(black_box(cx), &outcome.pairing).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("full_report", n), &cx, |b, cx| {
            b.iter(|| run_schedule(black_box(cx), &schedule).unwrap())
        });
    }
    group.finish();
}

fn homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology");
    group.sample_size(20);
    for n in [8, 10] {
        let cx = perfect_matching_complex(&grid_2xn(n).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::new("reduced_betti", n), &cx, |b, cx| {
            b.iter(|| reduced_betti(black_box(cx)))
        });
        let widest = (1..=cx.dimension().unwrap() as usize)
            .map(|d| boundary_matrix(&cx, d))
            .max_by_key(|m| m.matrix.nnz())
            .unwrap();
        group.bench_with_input(
            BenchmarkId::new("smith_widest_boundary", n),
            &widest,
            |b, m| b.iter(|| smith_normal_form(black_box(&m.matrix))),
        );
    }
    group.finish();
}

criterion_group!(benches, complexes, bad_matchings, pairing, homology);
criterion_main!(benches);
