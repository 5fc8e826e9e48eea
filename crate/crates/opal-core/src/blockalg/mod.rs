//! Truncated weighted block algebra: tuples (x_1, ..., x_N) with x_n an
//! n x n matrix, measured by `p_n(x) = max(||x||, ||d_n x d_n^{-1}||)` for
//! the weight diagonal `d_n = diag(c_n, c_n^2, ..., c_n^n)`.
//!
//! The conjugation is never formed as a matrix product: entry (i, j) is
//! scaled by `c_n^{i - j}` in the exponent domain with an overflow guard.

pub mod checks;

use serde::{Deserialize, Serialize};

use crate::cmat::{C64, CMat};
use crate::error::{Error, Result};
use crate::linalg::op_norm;

/// Weight presets: `c_n = n + 1` (slowest admissible growth) and
/// `c_n = 2^n` (fast decay regime, capped at n = 64 in run configs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightKind {
    Linear,
    Geometric,
}

/// Strictly increasing weight sequence with c_n > 1.
#[derive(Clone, Copy, Debug)]
pub struct WeightSeq {
    pub kind: WeightKind,
}

impl WeightSeq {
    pub fn linear() -> Self {
        WeightSeq {
            kind: WeightKind::Linear,
        }
    }

    pub fn geometric() -> Self {
        WeightSeq {
            kind: WeightKind::Geometric,
        }
    }

    /// c_n for a 1-indexed level n.
    pub fn c(&self, n: usize) -> f64 {
        match self.kind {
            WeightKind::Linear => (n + 1) as f64,
            WeightKind::Geometric => (n as f64).exp2(),
        }
    }
}

const OVERFLOW_LIMIT: f64 = 1e300;

/// The weight diagonal `diag(c_n^1, ..., c_n^n)`. Fails fast when the top
/// power leaves the representable range; norm evaluations elsewhere use the
/// exponent-domain scaling instead of this matrix.
pub fn weight_diagonal(n: usize, w: &WeightSeq) -> Result<CMat> {
    let c = w.c(n);
    if (n as f64) * c.ln() > OVERFLOW_LIMIT.ln() {
        return Err(Error::Overflow(format!(
            "weight power c^{n} with c = {c} exceeds {OVERFLOW_LIMIT:.1e}"
        )));
    }
    let values: Vec<C64> = (1..=n).map(|k| C64::new(c.powi(k as i32), 0.0)).collect();
    Ok(CMat::diag(&values))
}

/// Entrywise conjugation `d x d^{-1}`: entry (i, j) scaled by `c^{i - j}`
/// (0-indexed rows/cols cancel the offset). Exact zeros stay exact; any
/// scaled magnitude above 1e300 fails fast.
pub fn conjugated_block(x: &CMat, c: f64) -> Result<CMat> {
    let n = x.dim();
    let lnc = c.ln();
    let mut out = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let z = x[(i, j)];
            let mag = z.norm();
            if mag == 0.0 {
                continue;
            }
            let log_scaled = (i as f64 - j as f64) * lnc + mag.ln();
            if log_scaled > OVERFLOW_LIMIT.ln() {
                return Err(Error::Overflow(format!(
                    "conjugated entry ({i},{j}) magnitude exp({log_scaled:.1})"
                )));
            }
            let factor = ((i as f64 - j as f64) * lnc).exp();
            out[(i, j)] = z * factor;
        }
    }
    Ok(out)
}

/// `p_n(x) = max(||x||, ||d_n x d_n^{-1}||)`.
pub fn block_pnorm(x: &CMat, c: f64) -> Result<f64> {
    let plain = op_norm(x);
    let conj = op_norm(&conjugated_block(x, c)?);
    Ok(plain.max(conj))
}

/// Element of the truncated algebra: blocks 1..=N, block n of size n.
#[derive(Clone, Debug)]
pub struct BlockTuple {
    blocks: Vec<CMat>,
}

impl BlockTuple {
    pub fn new(blocks: Vec<CMat>) -> Self {
        for (idx, b) in blocks.iter().enumerate() {
            assert_eq!(b.dim(), idx + 1, "block {} must be {}x{}", idx + 1, idx + 1, idx + 1);
        }
        BlockTuple { blocks }
    }

    pub fn zeros(n_max: usize) -> Self {
        BlockTuple {
            blocks: (1..=n_max).map(CMat::zeros).collect(),
        }
    }

    pub fn identity(n_max: usize) -> Self {
        BlockTuple {
            blocks: (1..=n_max).map(CMat::identity).collect(),
        }
    }

    pub fn n_max(&self) -> usize {
        self.blocks.len()
    }

    /// Block at 1-indexed level n.
    pub fn block(&self, n: usize) -> &CMat {
        &self.blocks[n - 1]
    }

    pub fn block_mut(&mut self, n: usize) -> &mut CMat {
        &mut self.blocks[n - 1]
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    /// Highest level carrying a nonzero block (exact zeros), or 0.
    pub fn support_top(&self) -> usize {
        (1..=self.n_max())
            .rev()
            .find(|&n| self.block(n).max_abs() > 0.0)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &BlockTuple) -> BlockTuple {
        assert_eq!(self.n_max(), other.n_max());
        BlockTuple {
            blocks: self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(a, b)| a.mul_mat(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &BlockTuple) -> BlockTuple {
        assert_eq!(self.n_max(), other.n_max());
        BlockTuple {
            blocks: self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &BlockTuple) -> BlockTuple {
        assert_eq!(self.n_max(), other.n_max());
        BlockTuple {
            blocks: self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale_re(&self, f: f64) -> BlockTuple {
        BlockTuple {
            blocks: self.blocks.iter().map(|b| b.scale_re(f)).collect(),
        }
    }

    /// Blockwise scalar action `(alpha_n x_n)`.
    pub fn scale_blocks(&self, alphas: &[f64]) -> BlockTuple {
        assert_eq!(alphas.len(), self.n_max());
        BlockTuple {
            blocks: self
                .blocks
                .iter()
                .zip(alphas.iter())
                .map(|(b, &a)| b.scale_re(a))
                .collect(),
        }
    }

    /// `I - 2 t` blockwise (identity adjoined per level).
    pub fn one_minus_twice(&self) -> BlockTuple {
        BlockTuple {
            blocks: self
                .blocks
                .iter()
                .enumerate()
                .map(|(i, b)| &CMat::identity(i + 1) - &b.scale_re(2.0))
                .collect(),
        }
    }
}

/// The algebra norm `p(t) = sup_n p_n(t_n)`.
pub fn pnorm(t: &BlockTuple, w: &WeightSeq) -> Result<f64> {
    let mut sup = 0.0f64;
    for n in 1..=t.n_max() {
        sup = sup.max(block_pnorm(t.block(n), w.c(n))?);
    }
    Ok(sup)
}

/// Per-level p-norms, for margin tables.
pub fn pnorms_by_level(t: &BlockTuple, w: &WeightSeq) -> Result<Vec<f64>> {
    (1..=t.n_max())
        .map(|n| block_pnorm(t.block(n), w.c(n)))
        .collect()
}

/// Integer interval `E_{n,k} = N_0 intersect [n/k, 2n/k]` and its count
/// `mu_{n,k}` (with the value 1 for n < k, by convention).
pub fn shift_interval(n: usize, k: usize) -> (Vec<usize>, usize) {
    assert!(n >= 1 && k >= 1);
    let lo = n.div_ceil(k);
    let hi = (2 * n) / k;
    let set: Vec<usize> = (lo..=hi).collect();
    let mu = if n >= k { set.len().max(1) } else { 1 };
    (set, mu)
}

/// Averaged shift power at one level: `I_n` for n < k, else
/// `(1/mu) sum_{i in E_{n,k}} L_n^i`.
#[derive(Clone, Debug)]
pub struct ShiftAverage {
    pub n: usize,
    pub k: usize,
    pub matrix: CMat,
}

impl ShiftAverage {
    pub fn new(n: usize, k: usize) -> Self {
        let matrix = if n < k {
            CMat::identity(n)
        } else {
            let (set, mu) = shift_interval(n, k);
            let mut m = CMat::zeros(n);
            let weight = C64::new(1.0 / mu as f64, 0.0);
            for &i in &set {
                // L^i has ones on the i-th superdiagonal
                if i >= n {
                    continue;
                }
                for r in 0..n - i {
                    m[(r, r + i)] += weight;
                }
            }
            m
        };
        ShiftAverage { n, k, matrix }
    }
}

/// The k-th approximate-identity element u_k over levels 1..=n_max, with
/// its contractivity `p(u_k) <= 1` checked on construction.
pub fn cai_element(k: usize, n_max: usize, w: &WeightSeq) -> Result<BlockTuple> {
    assert!(k >= 1 && n_max >= 1);
    let tuple = cai_element_unchecked(k, n_max);
    let p = pnorm(&tuple, w)?;
    if p > 1.0 + 1e-12 {
        return Err(Error::PreconditionViolated(format!(
            "averaged-shift element k={k} has p-norm {p} > 1"
        )));
    }
    Ok(tuple)
}

pub fn cai_element_unchecked(k: usize, n_max: usize) -> BlockTuple {
    BlockTuple::new(
        (1..=n_max)
            .map(|n| ShiftAverage::new(n, k).matrix)
            .collect(),
    )
}

/// Split into the upper-triangular projection (diagonal included) and the
/// strictly lower part; the two add back to the input exactly.
pub fn tri_split(x: &CMat) -> (CMat, CMat) {
    let n = x.dim();
    let mut upper = CMat::zeros(n);
    let mut lower = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i <= j {
                upper[(i, j)] = x[(i, j)];
            } else {
                lower[(i, j)] = x[(i, j)];
            }
        }
    }
    (upper, lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_diagonal_values() {
        let w = WeightSeq::linear();
        // n = 2: c = 3, diag(3, 9)
        let d = weight_diagonal(2, &w).unwrap();
        assert_eq!(d[(0, 0)].re, 3.0);
        assert_eq!(d[(1, 1)].re, 9.0);
        // n = 3: c = 4, diag(4, 16, 64)
        let d = weight_diagonal(3, &w).unwrap();
        assert_eq!(d[(2, 2)].re, 64.0);
        // single level with geometric weights: c_1 = 2
        let d = weight_diagonal(1, &WeightSeq::geometric()).unwrap();
        assert_eq!(d[(0, 0)].re, 2.0);
    }

    #[test]
    fn weight_diagonal_overflow() {
        assert!(matches!(
            weight_diagonal(200, &WeightSeq::geometric()),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn conjugation_matches_explicit_product() {
        let w = WeightSeq::linear();
        let n = 4;
        let c = w.c(n);
        let mut x = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                x[(i, j)] = C64::new(0.1 * (i as f64 + 1.0), 0.05 * j as f64);
            }
        }
        let d = weight_diagonal(n, &w).unwrap();
        let dinv = crate::linalg::lu_inverse(&d).unwrap();
        let explicit = d.mul_mat(&x).mul_mat(&dinv);
        let entrywise = conjugated_block(&x, c).unwrap();
        assert!((&explicit - &entrywise).max_abs() < 1e-10);
    }

    #[test]
    fn pnorm_examples() {
        let w = WeightSeq::linear();
        assert!((pnorm(&BlockTuple::identity(6), &w).unwrap() - 1.0).abs() < 1e-12);
        // single block with a left shift at level n >= 2: p_n(L_n) = 1
        for n in [2usize, 5, 9] {
            let l = CMat::left_shift(n);
            assert!((block_pnorm(&l, w.c(n)).unwrap() - 1.0).abs() < 1e-12);
        }
        // matrix units: top-right scales to c^{1-n} <= 1, lower-left to c^{n-1}
        let n = 4;
        let c = w.c(n);
        let top_right = CMat::unit(n, 0, n - 1);
        assert!((block_pnorm(&top_right, c).unwrap() - 1.0).abs() < 1e-12);
        let lower_left = CMat::unit(n, n - 1, 0);
        let expect = c.powi(n as i32 - 1);
        assert!((block_pnorm(&lower_left, c).unwrap() - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn shift_interval_examples() {
        let (set, mu) = shift_interval(10, 3);
        assert_eq!(set, vec![4, 5, 6]);
        assert_eq!(mu, 3);
        let (set, mu) = shift_interval(4, 2);
        assert_eq!(set, vec![2, 3, 4]);
        assert_eq!(mu, 3);
        // n < k: count convention is 1
        let (_, mu) = shift_interval(3, 5);
        assert_eq!(mu, 1);
    }

    #[test]
    fn cai_element_shapes() {
        let w = WeightSeq::linear();
        // k = 1: every level averages shifts of exponent >= n, all zero
        let u1 = cai_element(1, 6, &w).unwrap();
        for n in 1..=6 {
            assert!(u1.block(n).max_abs() == 0.0, "level {n}");
        }
        // k > n_max: identity everywhere
        let u9 = cai_element(9, 6, &w).unwrap();
        for n in 1..=6 {
            assert!((u9.block(n) - &CMat::identity(n)).max_abs() == 0.0);
        }
        // k = 2 at level 4: average of L^2, L^3, L^4
        let u2 = cai_element(2, 4, &w).unwrap();
        let l = CMat::left_shift(4);
        let expect = (&(&l.powi(2) + &l.powi(3)) + &l.powi(4)).scale_re(1.0 / 3.0);
        assert!((u2.block(4) - &expect).max_abs() < 1e-15);
    }

    #[test]
    fn contractivity_of_cai_elements() {
        let w = WeightSeq::linear();
        for k in [1usize, 2, 3, 5, 8, 13, 21] {
            let u = cai_element(k, 24, &w).unwrap();
            assert!(pnorm(&u, &w).unwrap() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn tri_split_cases() {
        let d = CMat::diag(&[C64::new(1.0, 0.0), C64::new(2.0, 0.0)]);
        let (up, lo) = tri_split(&d);
        assert!((&up - &d).max_abs() == 0.0);
        assert!(lo.max_abs() == 0.0);

        let e21 = CMat::unit(2, 1, 0);
        let (up, lo) = tri_split(&e21);
        assert!(up.max_abs() == 0.0);
        assert!((&lo - &e21).max_abs() == 0.0);

        let mut ones = CMat::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                ones[(i, j)] = C64::new(1.0, 0.0);
            }
        }
        let (up, lo) = tri_split(&ones);
        let count = |m: &CMat| {
            m.data()
                .iter()
                .filter(|z| z.norm() > 0.0)
                .count()
        };
        assert_eq!(count(&up), 6);
        assert_eq!(count(&lo), 3);
        assert!((&(&up + &lo) - &ones).max_abs() == 0.0);
    }

    #[test]
    fn submultiplicativity_of_pnorm() {
        use crate::rng::{SplitMix64, random_matrix};
        let w = WeightSeq::linear();
        let mut rng = SplitMix64::new(40);
        for _ in 0..10 {
            let blocks_a: Vec<CMat> = (1..=6).map(|n| random_matrix(&mut rng, n)).collect();
            let blocks_b: Vec<CMat> = (1..=6).map(|n| random_matrix(&mut rng, n)).collect();
            let a = BlockTuple::new(blocks_a);
            let b = BlockTuple::new(blocks_b);
            let pa = pnorm(&a, &w).unwrap();
            let pb = pnorm(&b, &w).unwrap();
            let pab = pnorm(&a.mul(&b), &w).unwrap();
            assert!(pab <= pa * pb + 1e-10 * pa * pb, "{pab} vs {}", pa * pb);
        }
    }
}
