//! LU factorization with partial pivoting, inverse, and linear solves.

use crate::cmat::{C64, CMat};
use crate::error::{Error, Result};

/// Pivot threshold relative to the largest input entry. Resolvent callers
/// rely on a crisp singularity signal, so this is deliberately tight.
const PIVOT_RTOL: f64 = 1e-13;

/// Packed LU factors with row permutation.
pub struct LuFactors {
    lu: CMat,
    perm: Vec<usize>,
    scale: f64,
}

impl LuFactors {
    pub fn new(a: &CMat) -> Result<Self> {
        let scale = a.max_abs();
        Self::with_min_pivot(a, PIVOT_RTOL * scale.max(f64::MIN_POSITIVE))
    }

    /// Factor with an explicit absolute pivot floor. Resolvent integrands
    /// solve (t + x) systems at tiny but mathematically valid t, where the
    /// relative threshold of `new` would misreport singularity.
    pub fn with_min_pivot(a: &CMat, threshold: f64) -> Result<Self> {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs();
        for k in 0..n {
            // partial pivoting
            let mut best = k;
            let mut best_mag = lu[(k, k)].norm();
            for i in k + 1..n {
                let mag = lu[(i, k)].norm();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if best_mag <= threshold {
                return Err(Error::Singular(format!(
                    "pivot {best_mag:.3e} at step {k} below threshold {threshold:.3e}"
                )));
            }
            if best != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(best, j)];
                    lu[(best, j)] = tmp;
                }
                perm.swap(k, best);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in k + 1..n {
                    let sub = factor * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        Ok(LuFactors { lu, perm, scale })
    }

    /// Solve `A x = b`.
    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.dim();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc / self.lu[(i, i)];
        }
        x
    }

    /// Solve `A Y = B` column by column.
    pub fn solve_mat(&self, b: &CMat) -> CMat {
        let n = self.lu.dim();
        let mut out = CMat::zeros(n);
        for j in 0..n {
            let col = self.solve_vec(&b.column(j));
            out.set_column(j, &col);
        }
        out
    }

    pub fn inverse(&self) -> CMat {
        self.solve_mat(&CMat::identity(self.lu.dim()))
    }

    /// Crude condition estimate `max|a| * max|a^-1| * n`, enough to gate
    /// accuracy expectations downstream.
    pub fn cond_estimate(&self, inv: &CMat) -> f64 {
        self.scale * inv.max_abs() * self.lu.dim() as f64
    }
}

/// Inverse via partial-pivot LU. Errors with `Singular` when a pivot falls
/// below `1e-13 * max|entry|`.
pub fn lu_inverse(a: &CMat) -> Result<CMat> {
    Ok(LuFactors::new(a)?.inverse())
}

/// Solve `A Y = B` without forming the inverse.
pub fn lu_solve(a: &CMat, b: &CMat) -> Result<CMat> {
    Ok(LuFactors::new(a)?.solve_mat(b))
}
