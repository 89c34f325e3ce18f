//! Benchmarks for the hot paths of the boundary-residue engine: Clifford
//! word products, residue integration, the Hardy projection, symbol
//! evaluation and full case computations.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use wres_core::clifford::{CliffordElement, CliffordWord};
use wres_core::jets::evaluate_at_boundary;
use wres_core::jets::sigma::{build_sigma_minus3, build_sigma_minus4_dt};
use wres_core::pipeline::{compute_case, the_fifteen_cases};
use wres_core::poly::Poly;
use wres_core::ratfunc::PoleLimitedRational;
use wres_core::scalars::GaussianRational;

fn bench_clifford(c: &mut Criterion) {
    let words: Vec<CliffordWord> = (0..128u16)
        .map(|k| CliffordWord { bar_mask: (k as u8) & 0x7f, plain_mask: ((k * 37) as u8) & 0x7f })
        .collect();
    c.bench_function("clifford_word_products_128x128", |b| {
        b.iter(|| {
            let mut acc = 0i32;
            for a in &words {
                for w in &words {
                    let (sign, prod) = a.mul(w);
                    acc += sign as i32 + prod.generator_count() as i32;
                }
            }
            acc
        })
    });

    let e1 = CliffordElement::generator(wres_core::clifford::GeneratorKind::C, 3).unwrap();
    let e2 = CliffordElement::generator(wres_core::clifford::GeneratorKind::Cbar, 5).unwrap();
    c.bench_function("clifford_element_product_trace", |b| {
        b.iter(|| (e1.clone() * e2.clone() * e1.clone() * e2.clone()).trace())
    });
}

fn bench_ratfunc(c: &mut Criterion) {
    let f = PoleLimitedRational::new(
        Poly::from_coeffs(
            (0..=10)
                .map(|k| GaussianRational::from_parts(3 * k - 7, 2, k, 3))
                .collect(),
        ),
        7,
        6,
    );
    c.bench_function("residue_integration_deg10", |b| {
        b.iter(|| f.integrate_real_line().unwrap())
    });
    c.bench_function("pi_plus_deg10", |b| b.iter(|| f.pi_plus().unwrap()));
    c.bench_function("derivative_3_deg10", |b| b.iter(|| f.derivative(3)));
}

fn bench_symbols(c: &mut Criterion) {
    c.bench_function("evaluate_sigma_minus3", |b| {
        b.iter_batched(
            build_sigma_minus3,
            |e| evaluate_at_boundary(&e).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("evaluate_sigma_minus4", |b| {
        b.iter_batched(
            build_sigma_minus4_dt,
            |e| evaluate_at_boundary(&e).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_cases(c: &mut Criterion) {
    let specs = the_fifteen_cases();
    c.bench_function("case_02", |b| b.iter(|| compute_case(&specs[1]).unwrap()));
    c.bench_function("case_13", |b| b.iter(|| compute_case(&specs[12]).unwrap()));
    let mut slow = c.benchmark_group("heavy");
    slow.sample_size(10);
    slow.bench_function("case_14", |b| b.iter(|| compute_case(&specs[13]).unwrap()));
    slow.finish();
}

criterion_group!(benches, bench_clifford, bench_ratfunc, bench_symbols, bench_cases);
criterion_main!(benches);
