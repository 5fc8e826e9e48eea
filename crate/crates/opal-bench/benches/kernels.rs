use criterion::{Criterion, black_box, criterion_group, criterion_main};

use opal_core::linalg::{gen_spectrum, herm_eig, op_norm};
use opal_core::rng::{SplitMix64, random_accretive, random_hermitian, random_matrix};
use opal_core::transforms::{QuadratureScheme, frac_power, frac_power_multi, frac_power_spectral};

fn bench_linalg(c: &mut Criterion) {
    let mut rng = SplitMix64::new(7);
    for n in [16usize, 64, 128] {
        let x = random_matrix(&mut rng, n);
        c.bench_function(&format!("op_norm/{n}"), |b| {
            b.iter(|| black_box(op_norm(&x)))
        });
    }
    for n in [16usize, 64] {
        let h = random_hermitian(&mut rng, n);
        c.bench_function(&format!("herm_eig/{n}"), |b| {
            b.iter(|| black_box(herm_eig(&h).unwrap()))
        });
        let x = random_matrix(&mut rng, n);
        c.bench_function(&format!("gen_spectrum/{n}"), |b| {
            b.iter(|| black_box(gen_spectrum(&x).unwrap()))
        });
    }
}

fn bench_powers(c: &mut Criterion) {
    let mut rng = SplitMix64::new(11);
    let scheme = QuadratureScheme::default();
    for n in [8usize, 16] {
        let x = random_accretive(&mut rng, n);
        c.bench_function(&format!("frac_power_quad/{n}"), |b| {
            b.iter(|| black_box(frac_power(&x, 0.5, &scheme).unwrap()))
        });
        c.bench_function(&format!("frac_power_spectral/{n}"), |b| {
            b.iter(|| black_box(frac_power_spectral(&x, 0.5).unwrap()))
        });
        let grid = [0.1, 0.3, 0.5, 0.7, 0.9];
        c.bench_function(&format!("frac_power_multi5/{n}"), |b| {
            b.iter(|| black_box(frac_power_multi(&x, &grid, 1e-9).unwrap()))
        });
    }
}

criterion_group!(benches, bench_linalg, bench_powers);
criterion_main!(benches);
