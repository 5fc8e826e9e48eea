use criterion::{Criterion, black_box, criterion_group, criterion_main};

use opal_core::blockalg::{WeightSeq, cai_element_unchecked, pnorm};

fn bench_blockalg(c: &mut Criterion) {
    let w = WeightSeq::linear();
    for n_max in [32usize, 64] {
        let u = cai_element_unchecked(4, n_max);
        c.bench_function(&format!("pnorm_u4/{n_max}"), |b| {
            b.iter(|| black_box(pnorm(&u, &w).unwrap()))
        });
        let u8 = cai_element_unchecked(8, n_max);
        c.bench_function(&format!("tuple_mul/{n_max}"), |b| {
            b.iter(|| black_box(u.mul(&u8)))
        });
    }
}

criterion_group!(benches, bench_blockalg);
criterion_main!(benches);
