//! Seeded invariants for the dense linear-algebra kernels.

use opal_core::cmat::{C64, CMat};
use opal_core::linalg::lu::LuFactors;
use opal_core::linalg::{gen_spectrum, herm_eig, op_norm, span_basis};
use opal_core::rng::{SplitMix64, random_hermitian, random_matrix, random_unitary};

#[test]
fn lu_inverse_residual_over_seeded_matrices() {
    let mut rng = SplitMix64::new(2024);
    let mut checked = 0usize;
    for _ in 0..200 {
        let n = 2 + rng.next_below(15);
        let x = random_matrix(&mut rng, n);
        let lu = match LuFactors::new(&x) {
            Ok(lu) => lu,
            Err(_) => continue,
        };
        let inv = lu.inverse();
        if lu.cond_estimate(&inv) >= 1e8 {
            continue;
        }
        checked += 1;
        let resid = op_norm(&(&x.mul_mat(&inv) - &CMat::identity(n)));
        assert!(resid <= 1e-8, "residual {resid} at n = {n}");
    }
    assert!(checked >= 150, "only {checked} well-conditioned samples");
}

#[test]
fn hermitian_eigenvalues_invariant_under_conjugation() {
    let mut rng = SplitMix64::new(31);
    for _ in 0..40 {
        let n = 2 + rng.next_below(11);
        let h = random_hermitian(&mut rng, n);
        let u = random_unitary(&mut rng, n);
        let conj = u.mul_mat(&h).mul_mat(&u.adjoint());
        let e1 = herm_eig(&h).unwrap();
        let e2 = herm_eig(&conj).unwrap();
        let scale = h.frobenius().max(1.0);
        for (a, b) in e1.eigenvalues.iter().zip(e2.eigenvalues.iter()) {
            assert!((a - b).abs() <= 1e-8 * scale, "{a} vs {b}");
        }
        // reconstruction residual
        let recon = e1.apply(|l| C64::new(l, 0.0));
        assert!((&recon - &h).frobenius() <= 1e-10 * h.frobenius().max(1.0));
    }
}

#[test]
fn spectrum_invariant_under_similarity() {
    let mut rng = SplitMix64::new(57);
    let mut done = 0usize;
    while done < 30 {
        let n = 2 + rng.next_below(9);
        let x = random_matrix(&mut rng, n);
        let g = random_matrix(&mut rng, n);
        let ginv = match LuFactors::new(&g) {
            Ok(lu) => lu.inverse(),
            Err(_) => continue,
        };
        if op_norm(&g) * op_norm(&ginv) > 1e4 {
            continue;
        }
        done += 1;
        let sim = g.mul_mat(&x).mul_mat(&ginv);
        let s1 = gen_spectrum(&x).unwrap();
        let s2 = gen_spectrum(&sim).unwrap();
        let scale = op_norm(&x).max(1.0);
        // Hausdorff distance between the eigenvalue multisets
        let hausdorff = s1
            .values
            .iter()
            .map(|a| {
                s2.values
                    .iter()
                    .map(|b| (a - b).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0f64, f64::max);
        assert!(hausdorff <= 1e-6 * scale, "hausdorff {hausdorff}");
    }
}

#[test]
fn op_norm_unitary_invariance() {
    let mut rng = SplitMix64::new(73);
    for _ in 0..40 {
        let n = 2 + rng.next_below(11);
        let x = random_matrix(&mut rng, n);
        let base = op_norm(&x);
        assert!((op_norm(&x.adjoint()) - base).abs() <= 1e-10 * base.max(1.0));
        let u = random_unitary(&mut rng, n);
        let v = random_unitary(&mut rng, n);
        let rotated = u.mul_mat(&x).mul_mat(&v);
        assert!((op_norm(&rotated) - base).abs() <= 1e-10 * base.max(1.0));
    }
}

#[test]
fn span_members_have_zero_distance() {
    let mut rng = SplitMix64::new(91);
    for _ in 0..20 {
        let n = 2 + rng.next_below(5);
        let count = 1 + rng.next_below(2 * n);
        let mats: Vec<CMat> = (0..count).map(|_| random_matrix(&mut rng, n)).collect();
        let basis = span_basis(&mats, 1e-12);
        for m in &mats {
            let (inside, dist) = basis.member(m, 1e-10);
            assert!(inside && dist <= 1e-10, "distance {dist}");
        }
    }
}

mod properties {
    use super::*;
    use opal_core::blockalg::tri_split;
    use opal_core::io;
    use proptest::prelude::*;

    fn matrix_strategy(max_n: usize) -> impl Strategy<Value = CMat> {
        (1..=max_n)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), n * n),
                )
            })
            .prop_map(|(n, pairs)| CMat::from_pairs(n, &pairs).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn tri_split_reassembles(x in matrix_strategy(8)) {
            let (upper, lower) = tri_split(&x);
            prop_assert!((&(&upper + &lower) - &x).max_abs() == 0.0);
            for i in 0..x.dim() {
                for j in 0..x.dim() {
                    if i > j {
                        prop_assert!(upper[(i, j)].norm() == 0.0);
                    } else {
                        prop_assert!(lower[(i, j)].norm() == 0.0);
                    }
                }
            }
        }

        #[test]
        fn matrix_files_round_trip(x in matrix_strategy(6)) {
            let via_json = io::matrix_from_json(&io::matrix_to_json(&x)).unwrap();
            prop_assert!(via_json == x);
            let via_csv = io::matrix_from_csv(&io::matrix_to_csv(&x)).unwrap();
            prop_assert!(via_csv == x);
        }

        #[test]
        fn op_norm_triangle_and_scaling(x in matrix_strategy(6), y in matrix_strategy(6)) {
            if x.dim() == y.dim() {
                let lhs = op_norm(&(&x + &y));
                let rhs = op_norm(&x) + op_norm(&y);
                prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
                let scaled = op_norm(&x.scale_re(2.5));
                prop_assert!((scaled - 2.5 * op_norm(&x)).abs() <= 1e-10 * scaled.max(1.0));
            }
        }
    }
}
