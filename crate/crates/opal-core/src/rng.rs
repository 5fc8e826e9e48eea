//! Deterministic splitmix-style RNG and matrix samplers.
//!
//! Everything that produces "random" test data threads one of these
//! explicitly, so identical seeds give identical runs on any platform.

use crate::cmat::{C64, CMat};

/// 64-bit splitmix generator. Small, fast, and reproducible.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in [0, bound).
    pub fn next_below(&mut self, bound: usize) -> usize {
        (self.next_f64() * bound as f64) as usize % bound.max(1)
    }

    /// Standard normal via Box-Muller.
    pub fn next_gaussian(&mut self) -> f64 {
        let u1 = (1.0 - self.next_f64()).max(f64::MIN_POSITIVE);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    pub fn next_complex_gaussian(&mut self) -> C64 {
        C64::new(self.next_gaussian(), self.next_gaussian())
    }

    /// Fork a stream for an indexed subtask; keeps parallel batches reproducible.
    pub fn fork(&self, index: u64) -> SplitMix64 {
        let mut child = SplitMix64::new(self.state ^ 0xD1B54A32D192ED03u64.wrapping_mul(index.wrapping_add(1)));
        child.next_u64();
        child
    }
}

/// Matrix with independent complex-gaussian entries.
pub fn random_matrix(rng: &mut SplitMix64, n: usize) -> CMat {
    let entries: Vec<C64> = (0..n * n).map(|_| rng.next_complex_gaussian()).collect();
    CMat::from_rows(n, &entries).expect("gaussian entries are finite")
}

/// Random Hermitian matrix `(g + g*)/2`.
pub fn random_hermitian(rng: &mut SplitMix64, n: usize) -> CMat {
    random_matrix(rng, n).re_part()
}

/// Random unitary from Gram-Schmidt on gaussian columns, with one
/// re-orthogonalization pass.
pub fn random_unitary(rng: &mut SplitMix64, n: usize) -> CMat {
    use crate::cmat::{dot, vec_norm};
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| rng.next_complex_gaussian()).collect();
        for _ in 0..2 {
            for c in &cols {
                let coeff = dot(&v, c);
                for i in 0..n {
                    v[i] -= coeff * c[i];
                }
            }
        }
        let nv = vec_norm(&v);
        if nv < 1e-8 {
            continue;
        }
        for z in &mut v {
            *z /= nv;
        }
        cols.push(v);
    }
    let mut u = CMat::zeros(n);
    for (j, c) in cols.iter().enumerate() {
        u.set_column(j, c);
    }
    u
}

/// Random accretive matrix `w*w + i h`: the real part is PSD by construction.
pub fn random_accretive(rng: &mut SplitMix64, n: usize) -> CMat {
    let w = random_matrix(rng, n);
    let psd = w.adjoint().mul_mat(&w).scale_re(1.0 / n as f64);
    let h = random_hermitian(rng, n);
    &psd + &h.scale(C64::new(0.0, 1.0))
}

/// Accretive contraction: accretive sample scaled to norm `target <= 1`.
pub fn random_accretive_contraction(rng: &mut SplitMix64, n: usize, target: f64) -> CMat {
    let x = random_accretive(rng, n);
    let norm = crate::linalg::op_norm(&x).max(f64::MIN_POSITIVE);
    x.scale_re(target / norm)
}

/// Diagonalizable accretive sample: resamples until the eigenvector
/// condition number sits below `max_cond`.
pub fn random_accretive_diagonalizable(rng: &mut SplitMix64, n: usize, max_cond: f64) -> CMat {
    loop {
        let x = random_accretive(rng, n);
        if crate::linalg::eigen_decomp(&x, max_cond).is_ok() {
            return x;
        }
    }
}

/// Accretive matrix of a prescribed rank: a unitary conjugate of
/// (invertible accretive block) + (zero block). The kernel is exact up to
/// unitary rounding, well separated from the invertible part.
pub fn random_singular_accretive(rng: &mut SplitMix64, n: usize, rank: usize) -> CMat {
    assert!(rank <= n);
    let w = random_unitary(rng, n);
    let mut x = CMat::zeros(n);
    if rank > 0 {
        let b = random_accretive(rng, rank).add_scalar(C64::new(0.3, 0.0));
        for i in 0..rank {
            for j in 0..rank {
                x[(i, j)] = b[(i, j)];
            }
        }
    }
    w.mul_mat(&x).mul_mat(&w.adjoint())
}

/// Element of 1/2 F: `(I + K)/2` for a contraction K of norm `target < 1`.
pub fn random_half_f(rng: &mut SplitMix64, n: usize, target: f64) -> CMat {
    let k = random_matrix(rng, n);
    let norm = crate::linalg::op_norm(&k).max(f64::MIN_POSITIVE);
    let k = k.scale_re(target / norm);
    (&CMat::identity(n) + &k).scale_re(0.5)
}

/// Element of 1/2 F with an exact peak: unitary conjugate of
/// I_peak_rank (+) strict contraction piece.
pub fn random_half_f_with_peak(rng: &mut SplitMix64, n: usize, peak_rank: usize) -> CMat {
    assert!(peak_rank <= n);
    let u = random_unitary(rng, n);
    let mut d = CMat::zeros(n);
    for i in 0..peak_rank {
        d[(i, i)] = C64::new(1.0, 0.0);
    }
    let rest = n - peak_rank;
    if rest > 0 {
        let inner = random_half_f(rng, rest, 0.9);
        // shrink so the strict part stays safely away from the peak value
        let inner = inner.scale_re(0.85);
        for i in 0..rest {
            for j in 0..rest {
                d[(peak_rank + i, peak_rank + j)] = inner[(i, j)];
            }
        }
    }
    u.mul_mat(&d).mul_mat(&u.adjoint())
}

/// Commuting accretive pair: two quadratics in a shared upper-triangular
/// seed, shifted into the wedge and conjugated by one random unitary.
/// Commutation is exact by construction.
pub fn random_commuting_accretive_pair(rng: &mut SplitMix64, n: usize) -> (CMat, CMat) {
    let mut seed = CMat::zeros(n);
    for i in 0..n {
        seed[(i, i)] = C64::new(rng.next_f64(), rng.next_f64() - 0.5);
        for j in i + 1..n {
            if rng.next_f64() < 0.5 {
                seed[(i, j)] = rng.next_complex_gaussian() * 0.4;
            }
        }
    }
    let quadratic = |rng: &mut SplitMix64, t: &CMat| {
        let c0 = C64::new(rng.next_f64(), 0.3 * (rng.next_f64() - 0.5));
        let c1 = C64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5);
        let c2 = C64::new(0.5 * (rng.next_f64() - 0.5), 0.5 * (rng.next_f64() - 0.5));
        let t2 = t.mul_mat(t);
        &(&CMat::scalar(t.dim(), c0) + &t.scale(c1)) + &t2.scale(c2)
    };
    let mut a = quadratic(rng, &seed);
    let mut b = quadratic(rng, &seed);
    let u = random_unitary(rng, n);
    a = u.mul_mat(&a).mul_mat(&u.adjoint());
    b = u.mul_mat(&b).mul_mat(&u.adjoint());
    // shift each into the accretive wedge with a small positive margin
    let shift = |x: &CMat| {
        let min = crate::linalg::herm_eig(&x.re_part())
            .expect("real part is Hermitian")
            .min();
        x.add_scalar(C64::new((-min).max(0.0) + 0.05, 0.0))
    };
    (shift(&a), shift(&b))
}

/// Random unit vector.
pub fn random_unit_vector(rng: &mut SplitMix64, n: usize) -> Vec<C64> {
    use crate::cmat::vec_norm;
    loop {
        let v: Vec<C64> = (0..n).map(|_| rng.next_complex_gaussian()).collect();
        let nv = vec_norm(&v);
        if nv > 1e-8 {
            return v.into_iter().map(|z| z / nv).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_reproducible() {
        let mut a = SplitMix64::new(12345);
        let mut b = SplitMix64::new(12345);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn unitary_columns_are_orthonormal() {
        use crate::cmat::dot;
        let mut rng = SplitMix64::new(7);
        let u = random_unitary(&mut rng, 6);
        for i in 0..6 {
            for j in 0..6 {
                let d = dot(&u.column(i), &u.column(j));
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((d - C64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn accretive_sampler_has_psd_real_part() {
        let mut rng = SplitMix64::new(99);
        let x = random_accretive(&mut rng, 5);
        // real part is w*w/n which is PSD: check via quadratic forms
        for _ in 0..20 {
            let v = random_unit_vector(&mut rng, 5);
            let re = x.re_part();
            let q = crate::cmat::dot(&re.mul_vec(&v), &v);
            assert!(q.re > -1e-12, "quadratic form {q}");
        }
    }
}
