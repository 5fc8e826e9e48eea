//! Hermitian eigensolver (cyclic Jacobi) and a fast largest-eigenvalue
//! kernel (Householder tridiagonalization + Sturm bisection).

use crate::cmat::{C64, CMat, vec_norm};
use crate::error::{Error, Result};

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// a unitary whose columns are the matching eigenvectors.
#[derive(Clone, Debug)]
pub struct HermEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMat,
}

impl HermEig {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Reassemble `U diag(f(lambda)) U*`.
    pub fn apply(&self, f: impl Fn(f64) -> C64) -> CMat {
        let n = self.eigenvalues.len();
        let u = &self.eigenvectors;
        let mut scaled = u.clone();
        for j in 0..n {
            let fj = f(self.eigenvalues[j]);
            for i in 0..n {
                scaled[(i, j)] *= fj;
            }
        }
        scaled.mul_mat(&u.adjoint())
    }
}

fn hermitian_tolerance(h: &CMat) -> f64 {
    1e-8 * h.max_abs().max(1.0)
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Errors with `NotHermitian` when the asymmetry exceeds tolerance; the
/// iteration itself runs on the symmetrized matrix so rounding-level
/// asymmetry cannot leak into the result.
pub fn herm_eig(h: &CMat) -> Result<HermEig> {
    let asym = h.asymmetry();
    if asym > hermitian_tolerance(h) {
        return Err(Error::NotHermitian(asym));
    }
    let n = h.dim();
    if n == 0 {
        return Ok(HermEig {
            eigenvalues: vec![],
            eigenvectors: CMat::zeros(0),
        });
    }
    // work at unit entry scale so squared norms cannot overflow
    let entry_scale = h.max_abs().max(f64::MIN_POSITIVE);
    let mut a = h.re_part().scale_re(1.0 / entry_scale); // exact symmetrization
    let mut u = CMat::identity(n);
    let scale = a.frobenius().max(f64::MIN_POSITIVE);
    let tol = 1e-15 * scale;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = apq / mag; // e^{i phi}
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J_pp = c, J_pq = s, J_qp = -s conj(phase), J_qq = c conj(phase)
                let jqp = -s * phase.conj();
                let jqq = c * phase.conj();
                // columns: col_p' = c col_p + jqp col_q ; col_q' = s col_p + jqq col_q
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c + aiq * jqp;
                    a[(i, q)] = aip * s + aiq * jqq;
                    let uip = u[(i, p)];
                    let uiq = u[(i, q)];
                    u[(i, p)] = uip * c + uiq * jqp;
                    u[(i, q)] = uip * s + uiq * jqq;
                }
                // rows: row_p' = c row_p + conj(jqp) row_q ; row_q' = s row_p + conj(jqq) row_q
                for jcol in 0..n {
                    let apj = a[(p, jcol)];
                    let aqj = a[(q, jcol)];
                    a[(p, jcol)] = apj * c + aqj * jqp.conj();
                    a[(q, jcol)] = apj * s + aqj * jqq.conj();
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re * entry_scale).collect();
    let mut vectors = CMat::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &u.column(src));
    }
    Ok(HermEig {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// PSD verdict with the minimal eigenvalue and its eigenvector as certificate.
pub struct PsdCertificate {
    pub psd: bool,
    pub min_eigenvalue: f64,
    pub witness: Vec<C64>,
}

/// True iff `lambda_min(h) >= -tol * max(1, ||h||)`.
pub fn psd_check(h: &CMat, tol: f64) -> Result<PsdCertificate> {
    let eig = herm_eig(h)?;
    let scale = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, &l| m.max(l.abs()))
        .max(1.0);
    let min = eig.min();
    Ok(PsdCertificate {
        psd: min >= -tol * scale,
        min_eigenvalue: min,
        witness: eig.eigenvectors.column(0),
    })
}

// ---- largest-eigenvalue kernel -------------------------------------------

/// Householder reduction of a Hermitian matrix to real symmetric
/// tridiagonal form (diagonal, off-diagonal magnitudes). Eigenvalues are
/// preserved; vectors are not tracked.
fn tridiagonalize(h: &CMat) -> (Vec<f64>, Vec<f64>) {
    let n = h.dim();
    let mut a = h.re_part();
    for k in 0..n.saturating_sub(2) {
        let mut x: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm <= 1e-300 {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let alpha = -phase * xnorm;
        x[0] -= alpha;
        let vnorm = vec_norm(&x);
        if vnorm <= 1e-300 {
            continue;
        }
        let v: Vec<C64> = x.into_iter().map(|z| z / vnorm).collect();
        // apply P = I - 2 v v* on both sides of the trailing block (rows/cols k..n)
        // w = A v over columns k..n
        let m = n - (k + 1);
        let mut w = vec![C64::new(0.0, 0.0); n];
        for i in k..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..m {
                acc += a[(i, k + 1 + j)] * v[j];
            }
            w[i] = acc;
        }
        // A <- A - 2 w v*   (columns k+1..n)
        for i in k..n {
            for j in 0..m {
                let delta = 2.0 * w[i] * v[j].conj();
                a[(i, k + 1 + j)] -= delta;
            }
        }
        // now rows: w2 = v* A over rows k+1..n
        let mut w2 = vec![C64::new(0.0, 0.0); n];
        for j in k..n {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..m {
                acc += v[i].conj() * a[(k + 1 + i, j)];
            }
            w2[j] = acc;
        }
        for i in 0..m {
            for j in k..n {
                let delta = 2.0 * v[i] * w2[j];
                a[(k + 1 + i, j)] -= delta;
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let e: Vec<f64> = (0..n - 1).map(|i| a[(i + 1, i)].norm()).collect();
    (d, e)
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below x.
fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0usize;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let ei = e[i - 1];
        if q.abs() < 1e-300 {
            q = -1e-300;
        }
        q = d[i] - x - ei * ei / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of a Hermitian matrix, computed without eigenvectors.
pub fn lambda_max(h: &CMat) -> f64 {
    let n = h.dim();
    if n == 0 {
        return 0.0;
    }
    if n == 1 {
        return h[(0, 0)].re;
    }
    let (d, e) = tridiagonalize(h);
    // Gershgorin bracket
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i == 0 {
            e[0].abs()
        } else if i == n - 1 {
            e[n - 2].abs()
        } else {
            e[i - 1].abs() + e[i].abs()
        };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    let span = (hi - lo).max(1e-300);
    let mut a = lo;
    let mut b = hi + span * 1e-12;
    for _ in 0..120 {
        let mid = 0.5 * (a + b);
        if sturm_count(&d, &e, mid) < n {
            a = mid; // at least one eigenvalue >= mid
        } else {
            b = mid;
        }
        if b - a <= 1e-15 * (a.abs().max(b.abs()).max(1e-300)) {
            break;
        }
    }
    0.5 * (a + b)
}

/// Operator (spectral) norm: `sqrt(lambda_max(x* x))`. The input is
/// rescaled by its largest entry first: squaring must not overflow even
/// for the weight-conjugated blocks whose entries approach 1e300.
pub fn op_norm(x: &CMat) -> f64 {
    let n = x.dim();
    let scale = x.max_abs();
    if n == 0 || scale == 0.0 {
        return 0.0;
    }
    if n == 1 {
        return x[(0, 0)].norm();
    }
    let xs = x.scale_re(1.0 / scale);
    if n == 2 {
        // closed form from trace/determinant of x*x
        let g = xs.adjoint().mul_mat(&xs);
        let t = g[(0, 0)].re + g[(1, 1)].re;
        let det = (g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)]).re.max(0.0);
        let disc = (t * t - 4.0 * det).max(0.0).sqrt();
        return scale * (0.5 * (t + disc)).max(0.0).sqrt();
    }
    let g = xs.adjoint().mul_mat(&xs);
    scale * lambda_max(&g).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{SplitMix64, random_hermitian};

    fn reconstruct(e: &HermEig) -> CMat {
        e.apply(|l| C64::new(l, 0.0))
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let h = CMat::diag(&[C64::new(3.0, 0.0), C64::new(1.0, 0.0)]);
        let e = herm_eig(&h).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 3.0]);
    }

    #[test]
    fn symmetric_two_by_two_closed_form() {
        // [[1, 0.5], [0.5, 1]] has eigenvalues 0.5 and 1.5
        let h = CMat::from_pairs(2, &[(1.0, 0.0), (0.5, 0.0), (0.5, 0.0), (1.0, 0.0)]).unwrap();
        let e = herm_eig(&h).unwrap();
        assert!((e.eigenvalues[0] - 0.5).abs() < 1e-12);
        assert!((e.eigenvalues[1] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn flip_matrix_eigenvalues() {
        let h = CMat::from_pairs(2, &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]).unwrap();
        let e = herm_eig(&h).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_reconstruction_residual() {
        let mut rng = SplitMix64::new(42);
        for n in [2usize, 5, 9, 16] {
            let h = random_hermitian(&mut rng, n);
            let e = herm_eig(&h).unwrap();
            let resid = (&reconstruct(&e) - &h).frobenius();
            assert!(
                resid <= 1e-10 * h.frobenius().max(1.0),
                "n={n} residual {resid}"
            );
            // unitarity of the eigenvector matrix
            let uu = e.eigenvectors.adjoint().mul_mat(&e.eigenvectors);
            assert!((&uu - &CMat::identity(n)).max_abs() < 1e-11);
        }
    }

    #[test]
    fn lambda_max_matches_jacobi() {
        let mut rng = SplitMix64::new(7);
        for n in [3usize, 8, 17, 33] {
            let h = random_hermitian(&mut rng, n);
            let jac = herm_eig(&h).unwrap().max();
            let fast = lambda_max(&h);
            assert!(
                (jac - fast).abs() <= 1e-10 * jac.abs().max(1.0),
                "n={n} jacobi={jac} bisect={fast}"
            );
        }
    }

    #[test]
    fn op_norm_basics() {
        assert!((op_norm(&CMat::identity(5)) - 1.0).abs() < 1e-12);
        let x = CMat::from_pairs(2, &[(0.0, 0.0), (2.0, 0.0), (0.0, 0.0), (0.0, 0.0)]).unwrap();
        assert!((op_norm(&x) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn op_norm_le_merdy_closed_form() {
        // For [[1,i],[i,0]]: trace(x*x) = 3, |det x| = 1, so the largest
        // singular value is sqrt((3 + sqrt(5))/2).
        let x = CMat::from_pairs(2, &[(1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (0.0, 0.0)]).unwrap();
        let expect = ((3.0 + 5.0f64.sqrt()) / 2.0).sqrt();
        assert!((op_norm(&x) - expect).abs() < 1e-12);
    }

    #[test]
    fn psd_check_reports_witness() {
        let h = CMat::diag(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        let cert = psd_check(&h, 1e-10).unwrap();
        assert!(!cert.psd);
        assert!((cert.min_eigenvalue + 1.0).abs() < 1e-12);
        // witness should be (numerically) the second basis vector
        assert!(cert.witness[1].norm() > 0.99);
        let zero = psd_check(&CMat::zeros(3), 1e-10).unwrap();
        assert!(zero.psd);
        assert_eq!(zero.min_eigenvalue, 0.0);
    }

    #[test]
    fn not_hermitian_is_rejected() {
        let x = CMat::unit(2, 0, 1);
        assert!(matches!(herm_eig(&x), Err(Error::NotHermitian(_))));
    }
}
