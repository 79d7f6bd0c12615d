//! Benchmarks of the operations every protocol round leans on: construction
//! validation, random presentations, isomorphism verification, minimal
//! polynomials, key generation, full identification rounds, and signatures.

use criterion::{criterion_group, criterion_main, Criterion};
use csazkp::{
    keygen, random_presentation, run_identification, sign, verify_isomorphism, verify_signature,
    Algebra, Variant,
};
use csazkp_bench::{fixture_elements, fixture_pair, BOUND, HEIGHT};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::hint::black_box;

fn bench_validation(c: &mut Criterion) {
    for k in [2u32, 3] {
        let a = fixture_pair(Variant::Matrix, k).public.a0;
        let gamma = a.gamma().to_vec();
        c.bench_function(&format!("algebra_validation/k{k}"), |b| {
            b.iter(|| Algebra::new(black_box(a.dim()), black_box(gamma.clone())).unwrap())
        });
    }
}

fn bench_presentation_and_verification(c: &mut Criterion) {
    for k in [2u32, 3] {
        let a = fixture_pair(Variant::Matrix, k).public.a0;
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        c.bench_function(&format!("random_presentation/k{k}"), |b| {
            b.iter(|| random_presentation(black_box(&a), HEIGHT, &mut rng).unwrap())
        });
        let (image, iso) = random_presentation(&a, HEIGHT, &mut rng).unwrap();
        c.bench_function(&format!("verify_isomorphism/k{k}"), |b| {
            b.iter(|| verify_isomorphism(black_box(&a), black_box(&image), black_box(&iso)))
        });
    }
}

fn bench_minimal_polynomial(c: &mut Criterion) {
    for k in [2u32, 3] {
        let a = fixture_pair(Variant::Matrix, k).public.a0;
        let elements = fixture_elements(&a, 64);
        let mut i = 0;
        c.bench_function(&format!("minimal_polynomial/k{k}"), |b| {
            b.iter(|| {
                i = (i + 1) % elements.len();
                a.minimal_polynomial(black_box(&elements[i]))
            })
        });
    }
}

fn bench_keygen(c: &mut Criterion) {
    for variant in Variant::ALL {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        c.bench_function(&format!("keygen/{}_k2", variant.name()), |b| {
            b.iter(|| keygen(variant, 2, HEIGHT, BOUND, &mut rng).unwrap())
        });
    }
}

fn bench_identification_round(c: &mut Criterion) {
    for k in [2u32, 3] {
        let pair = fixture_pair(Variant::Matrix, k);
        let mut rng = ChaCha20Rng::seed_from_u64(13);
        c.bench_function(&format!("identification_round/k{k}"), |b| {
            b.iter(|| run_identification(black_box(&pair), 1, HEIGHT, &mut rng).unwrap())
        });
    }
}

fn bench_signature(c: &mut Criterion) {
    let pair = fixture_pair(Variant::Matrix, 2);
    let mut rng = ChaCha20Rng::seed_from_u64(17);
    c.bench_function("sign/k2", |b| {
        b.iter(|| sign(black_box(&pair), b"benchmark message", HEIGHT, &mut rng).unwrap())
    });
    let sig = sign(&pair, b"benchmark message", HEIGHT, &mut rng).unwrap();
    c.bench_function("verify_signature/k2", |b| {
        b.iter(|| {
            verify_signature(
                black_box(&pair.public),
                b"benchmark message",
                black_box(&sig),
            )
        })
    });
}

criterion_group!(
    benches,
    bench_validation,
    bench_presentation_and_verification,
    bench_minimal_polynomial,
    bench_keygen,
    bench_identification_round,
    bench_signature
);
criterion_main!(benches);
