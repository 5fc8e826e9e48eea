//! General complex eigenproblem: Hessenberg reduction followed by
//! Wilkinson-shifted QR, giving a Schur form and (optionally) eigenvectors.

use crate::cmat::{C64, CMat, vec_norm};
use crate::error::{Error, Result};

/// Complex eigenvalues with algebraic multiplicity, sorted by real part
/// then imaginary part for reproducible output.
#[derive(Clone, Debug)]
pub struct SpectrumList {
    pub values: Vec<C64>,
}

impl SpectrumList {
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// True if some eigenvalue lies within `tol` of `z`.
    pub fn contains(&self, z: C64, tol: f64) -> bool {
        self.values.iter().any(|&v| (v - z).norm() <= tol)
    }
}

fn sort_eigenvalues(mut v: Vec<C64>) -> Vec<C64> {
    v.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    v
}

/// Reduce to upper Hessenberg form by Householder reflections.
/// Returns (H, Q) with `A = Q H Q*` when `track_q` is set.
fn hessenberg(a: &CMat, track_q: bool) -> (CMat, Option<CMat>) {
    let n = a.dim();
    let mut h = a.clone();
    let mut q = if track_q {
        Some(CMat::identity(n))
    } else {
        None
    };
    for k in 0..n.saturating_sub(2) {
        let mut x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
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
        let m = n - (k + 1);
        // rows k+1..n : H <- (I - 2 v v*) H
        for j in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..m {
                acc += v[i].conj() * h[(k + 1 + i, j)];
            }
            for i in 0..m {
                let delta = 2.0 * v[i] * acc;
                h[(k + 1 + i, j)] -= delta;
            }
        }
        // columns k+1..n : H <- H (I - 2 v v*)
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..m {
                acc += h[(i, k + 1 + j)] * v[j];
            }
            for j in 0..m {
                let delta = 2.0 * acc * v[j].conj();
                h[(i, k + 1 + j)] -= delta;
            }
        }
        if let Some(qm) = q.as_mut() {
            for i in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..m {
                    acc += qm[(i, k + 1 + j)] * v[j];
                }
                for j in 0..m {
                    let delta = 2.0 * acc * v[j].conj();
                    qm[(i, k + 1 + j)] -= delta;
                }
            }
        }
    }
    (h, q)
}

struct Givens {
    c: f64,
    s: C64,
    row: usize,
}

fn make_givens(f: C64, g: C64) -> (f64, C64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    let fn_ = f.norm();
    let r = (fn_ * fn_ + gn * gn).sqrt();
    if fn_ == 0.0 {
        // rotate g straight into the first slot
        return (0.0, g.conj() / r);
    }
    let phase = f / fn_;
    (fn_ / r, phase * g.conj() / r)
}

/// Schur decomposition `A = Q T Q*` with T upper triangular.
pub struct SchurForm {
    pub t: CMat,
    pub q: Option<CMat>,
    pub eigenvalues: Vec<C64>,
}

/// Shifted-QR Schur iteration. `track_q` controls Schur-vector accumulation.
///
/// Deflation threshold is `1e-12 * ||a||`; the sweep cap is `100 n`.
/// On cap overrun the partial form computed so far travels with the error.
pub fn schur(a: &CMat, track_q: bool) -> Result<SchurForm> {
    let n = a.dim();
    if n == 0 {
        return Ok(SchurForm {
            t: CMat::zeros(0),
            q: track_q.then(|| CMat::zeros(0)),
            eigenvalues: vec![],
        });
    }
    let scale = a.frobenius();
    if scale == 0.0 {
        return Ok(SchurForm {
            t: CMat::zeros(n),
            q: track_q.then(|| CMat::identity(n)),
            eigenvalues: vec![C64::new(0.0, 0.0); n],
        });
    }
    let (mut h, mut q) = hessenberg(a, track_q);
    let defl_tol = 1e-12 * scale;
    let max_iter = 100 * n;
    let mut iters = 0usize;
    let mut hi = n - 1;
    let mut stuck = 0usize;

    'outer: loop {
        // deflate trailing entries
        while hi > 0 && h[(hi, hi - 1)].norm() <= defl_tol {
            h[(hi, hi - 1)] = C64::new(0.0, 0.0);
            if hi == 0 {
                break;
            }
            hi -= 1;
            stuck = 0;
            if hi == 0 {
                break 'outer;
            }
        }
        if hi == 0 {
            break;
        }
        // find the active block [lo, hi]
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)].norm() > defl_tol {
            lo -= 1;
        }
        if iters >= max_iter {
            return Err(Error::NoConvergence(format!(
                "QR sweep cap {max_iter} reached with {} eigenvalues unresolved",
                hi + 1
            )));
        }
        iters += 1;
        stuck += 1;

        // Wilkinson shift from the trailing 2x2 of the active block
        let (aa, bb, cc, dd) = (
            h[(hi - 1, hi - 1)],
            h[(hi - 1, hi)],
            h[(hi, hi - 1)],
            h[(hi, hi)],
        );
        let mut mu = {
            let tr = aa + dd;
            let disc = ((aa - dd) * (aa - dd) + 4.0 * bb * cc).sqrt();
            let l1 = (tr + disc) * 0.5;
            let l2 = (tr - disc) * 0.5;
            if (l1 - dd).norm() <= (l2 - dd).norm() {
                l1
            } else {
                l2
            }
        };
        if stuck % 20 == 0 {
            // exceptional shift to break rare limit cycles
            mu = dd + C64::new(1.5 * h[(hi, hi - 1)].norm(), 0.5 * h[(hi, hi - 1)].norm());
        }

        // explicit shifted QR step on the active block
        for i in lo..=hi {
            h[(i, i)] -= mu;
        }
        let mut rotations: Vec<Givens> = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let (c, s) = make_givens(h[(i, i)], h[(i + 1, i)]);
            for j in i..n {
                let top = h[(i, j)];
                let bot = h[(i + 1, j)];
                h[(i, j)] = top * c + bot * s;
                h[(i + 1, j)] = -top * s.conj() + bot * c;
            }
            rotations.push(Givens { c, s, row: i });
        }
        for g in &rotations {
            let i = g.row;
            let upper = (i + 2).min(hi + 1);
            for r in 0..upper.max(lo + 1) {
                let left = h[(r, i)];
                let right = h[(r, i + 1)];
                h[(r, i)] = left * g.c + right * g.s.conj();
                h[(r, i + 1)] = -left * g.s + right * g.c;
            }
            if let Some(qm) = q.as_mut() {
                for r in 0..n {
                    let left = qm[(r, i)];
                    let right = qm[(r, i + 1)];
                    qm[(r, i)] = left * g.c + right * g.s.conj();
                    qm[(r, i + 1)] = -left * g.s + right * g.c;
                }
            }
        }
        for i in lo..=hi {
            h[(i, i)] += mu;
        }
    }

    // clean strictly-lower noise so T is exactly triangular
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    let eigenvalues: Vec<C64> = (0..n).map(|i| h[(i, i)]).collect();
    Ok(SchurForm {
        t: h,
        q,
        eigenvalues,
    })
}

/// Full eigenvalue list with multiplicity.
pub fn gen_spectrum(x: &CMat) -> Result<SpectrumList> {
    let form = schur(x, false)?;
    Ok(SpectrumList {
        values: sort_eigenvalues(form.eigenvalues),
    })
}

/// Eigendecomposition `x = V diag(lambda) V^{-1}` for diagonalizable x.
pub struct EigenDecomp {
    pub values: Vec<C64>,
    pub vectors: CMat,
    pub inverse_vectors: CMat,
    pub condition: f64,
}

/// Eigenvectors via triangular back-substitution on the Schur form.
/// Errors with `Defective` when the eigenvector matrix conditioning
/// exceeds `max_condition`.
pub fn eigen_decomp(x: &CMat, max_condition: f64) -> Result<EigenDecomp> {
    let n = x.dim();
    let form = schur(x, true)?;
    let t = &form.t;
    let q = form.q.as_ref().expect("q tracked");
    let scale = t.max_abs().max(f64::MIN_POSITIVE);
    let mut vmat = CMat::zeros(n);
    for j in 0..n {
        let lambda = t[(j, j)];
        let mut y = vec![C64::new(0.0, 0.0); n];
        y[j] = C64::new(1.0, 0.0);
        for i in (0..j).rev() {
            let mut acc = C64::new(0.0, 0.0);
            for k in i + 1..=j {
                acc += t[(i, k)] * y[k];
            }
            let mut den = t[(i, i)] - lambda;
            if den.norm() < 1e-300 + 1e-16 * scale {
                den = C64::new(1e-16 * scale.max(1e-300), 0.0);
            }
            y[i] = -acc / den;
        }
        let nv = vec_norm(&y);
        for z in &mut y {
            *z /= nv;
        }
        vmat.set_column(j, &y);
    }
    let vectors = q.mul_mat(&vmat);
    let inverse_vectors = super::lu::lu_inverse(&vectors)
        .map_err(|_| Error::Defective(f64::INFINITY))?;
    let condition = super::hermitian::op_norm(&vectors) * super::hermitian::op_norm(&inverse_vectors);
    if condition > max_condition {
        return Err(Error::Defective(condition));
    }
    Ok(EigenDecomp {
        values: form.eigenvalues,
        vectors,
        inverse_vectors,
        condition,
    })
}

impl EigenDecomp {
    /// Reassemble `V diag(f(lambda)) V^{-1}`.
    pub fn apply(&self, f: impl Fn(C64) -> C64) -> CMat {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let fj = f(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] *= fj;
            }
        }
        scaled.mul_mat(&self.inverse_vectors)
    }
}
