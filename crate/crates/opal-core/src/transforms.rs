//! The F-transform / Cayley calculus and principal fractional powers of
//! accretive matrices, with support and peak projections as power limits.

use std::f64::consts::PI;

use crate::cmat::{C64, CMat};
use crate::error::{Error, Result};
use crate::linalg::lu::LuFactors;
use crate::linalg::{eigen_decomp, herm_eig, lu_solve, op_norm, psd_check};
use crate::quadrature::composite_panels;
use crate::report::VerificationRecord;

/// Accretivity gate shared by the transform entry points.
fn require_accretive(x: &CMat, tol: f64) -> Result<()> {
    let h = x + &x.adjoint();
    let cert = psd_check(&h, tol)?;
    if cert.psd {
        Ok(())
    } else {
        Err(Error::NotAccretive(cert.min_eigenvalue))
    }
}

const ACCRETIVE_TOL: f64 = 1e-8;

/// Cayley transform `(x - I)(x + I)^{-1}`; a contraction for accretive x.
pub fn cayley(x: &CMat) -> Result<CMat> {
    require_accretive(x, ACCRETIVE_TOL)?;
    let n = x.dim();
    let plus = x.add_scalar(C64::new(1.0, 0.0));
    let minus = x.add_scalar(C64::new(-1.0, 0.0));
    let inv = LuFactors::new(&plus)?.inverse();
    Ok(minus.mul_mat(&inv).scale_re(1.0).clone_dim_check(n))
}

/// F-transform `x (x + I)^{-1}`; maps accretive elements into the
/// strict contractions of 1/2 F.
pub fn f_transform(x: &CMat) -> Result<CMat> {
    require_accretive(x, ACCRETIVE_TOL)?;
    let plus = x.add_scalar(C64::new(1.0, 0.0));
    lu_solve(&plus, x).map(|y| {
        // (x+1)^{-1} x equals x (x+1)^{-1} since both commute with x
        y
    })
}

/// Inverse F-transform `t (I - t)^{-1}`, defined on 1/2 F elements of
/// norm < 1. Errors with `Singular` when 1 sits in the spectrum
/// (norm-one t) and with `NotInHalfF` outside the domain.
pub fn inv_f_transform(t: &CMat) -> Result<CMat> {
    let half_f_norm = op_norm(&(&CMat::identity(t.dim()) - &t.scale_re(2.0)));
    if half_f_norm > 1.0 + 1e-8 {
        return Err(Error::NotInHalfF(half_f_norm));
    }
    let minus = &CMat::identity(t.dim()) - t;
    let inv = LuFactors::new(&minus)
        .map_err(|_| Error::Singular("1 - t is numerically singular (norm-one t)".into()))?
        .inverse();
    Ok(t.mul_mat(&inv))
}

impl CMat {
    fn clone_dim_check(self, n: usize) -> CMat {
        debug_assert_eq!(self.dim(), n);
        self
    }
}

/// Log-domain truncation and panel layout for the power integral.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureScheme {
    pub s_min: f64,
    pub s_max: f64,
    pub panels: usize,
    pub nodes_per_panel: usize,
    pub target_tol: f64,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        QuadratureScheme {
            s_min: -40.0,
            s_max: 40.0,
            panels: 200,
            nodes_per_panel: 10,
            target_tol: 1e-9,
        }
    }
}

impl QuadratureScheme {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureScheme {
            target_tol: tol,
            ..Default::default()
        }
    }
}

/// Exponent magnitudes beyond this leave f64 range for e^s.
const S_ABS_CAP: f64 = 700.0;
const PANEL_CAP: usize = 40_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerMethod {
    Quadrature,
    Spectral,
}

/// A computed power with its method tag and error estimate.
#[derive(Clone, Debug)]
pub struct PowerResult {
    pub value: CMat,
    pub method: PowerMethod,
    pub est_error: f64,
}

/// Truncation error bounds for the log-substituted power integral.
/// Head uses the contraction bound on the transformed integrand; tail uses
/// the resolvent decay `||(t+x)^{-1} x|| <= ||x||/t`.
fn truncation_bounds(alpha: f64, norm_x: f64, s_min: f64, s_max: f64) -> (f64, f64) {
    let prefactor = (alpha * PI).sin() / PI;
    let head = prefactor * (alpha * s_min).exp() / alpha;
    let tail = prefactor * norm_x * ((alpha - 1.0) * s_max).exp() / (1.0 - alpha);
    (head, tail)
}

fn fractional_quadrature(x: &CMat, alpha: f64, scheme: &QuadratureScheme) -> Result<PowerResult> {
    debug_assert!(alpha > 0.0 && alpha < 1.0);
    let n = x.dim();
    let norm_x = op_norm(x).max(f64::MIN_POSITIVE);
    let tol = scheme.target_tol;
    let mut s_min = scheme.s_min;
    let mut s_max = scheme.s_max;
    let mut panels = scheme.panels.max(1);
    let density = panels as f64 / (scheme.s_max - scheme.s_min);

    let (head, tail) = truncation_bounds(alpha, norm_x, s_min, s_max);
    if head + tail > tol {
        // widen once, from the analytic bounds; aim each side at tol/4 so
        // the recheck clears tol with headroom
        let prefactor = (alpha * PI).sin() / PI;
        let need_min = ((tol / 4.0) * alpha / prefactor).ln() / alpha;
        let need_max = ((tol / 4.0) * (1.0 - alpha) / (prefactor * norm_x)).ln() / (alpha - 1.0);
        s_min = s_min.min(need_min).max(-S_ABS_CAP);
        s_max = s_max.max(need_max).min(S_ABS_CAP);
        panels = ((s_max - s_min) * density).ceil() as usize;
        let (head2, tail2) = truncation_bounds(alpha, norm_x, s_min, s_max);
        if head2 + tail2 > tol {
            return Err(Error::TailBoundExceeded(format!(
                "head {head2:.3e} + tail {tail2:.3e} exceeds tolerance {tol:.3e} \
                 at the widest representable truncation"
            )));
        }
        if panels > PANEL_CAP {
            return Err(Error::TailBoundExceeded(format!(
                "widened scheme needs {panels} panels (cap {PANEL_CAP})"
            )));
        }
    }
    let (head, tail) = truncation_bounds(alpha, norm_x, s_min, s_max);

    let points = composite_panels(s_min, s_max, panels, scheme.nodes_per_panel);
    let mut acc = CMat::zeros(n);
    for (s, w) in points {
        let t = s.exp();
        let shifted = x.add_scalar(C64::new(t, 0.0));
        // pivot floor is absolute: (t + x) is invertible for accretive x,
        // but its pivots scale with t
        let solved = LuFactors::with_min_pivot(&shifted, 1e-300)?.solve_mat(x);
        let weight = w * (alpha * s).exp();
        acc = &acc + &solved.scale_re(weight);
    }
    let prefactor = (alpha * PI).sin() / PI;
    let value = acc.scale_re(prefactor);

    // panel-rule discretization estimate: the integrand is analytic in a
    // strip of half-width pi/2 around the real s-axis
    let width = (s_max - s_min) / panels as f64;
    let disc = (s_max - s_min)
        * prefactor
        * (width / PI).powi(2 * scheme.nodes_per_panel as i32);
    Ok(PowerResult {
        value,
        method: PowerMethod::Quadrature,
        est_error: head + tail + disc,
    })
}

/// Batched principal powers for a grid of exponents in (0, 1): the
/// resolvent solves are exponent-independent, so one truncation wide
/// enough for every requested alpha is swept once and each power
/// accumulates its own weights. Extension panels outside the default
/// window use unit width; the integrand is analytic in a strip of
/// half-width pi/2, which keeps their rule error far below tolerance.
pub fn frac_power_multi(x: &CMat, alphas: &[f64], tol: f64) -> Result<Vec<PowerResult>> {
    for &a in alphas {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::DomainError(format!("alpha {a} not in (0, 1)")));
        }
    }
    require_accretive(x, ACCRETIVE_TOL)?;
    let n = x.dim();
    if alphas.is_empty() {
        return Ok(vec![]);
    }
    let norm_x = op_norm(x).max(f64::MIN_POSITIVE);
    // union truncation: every alpha's head/tail budget at tol/4
    let mut s_min = -40.0f64;
    let mut s_max = 40.0f64;
    for &a in alphas {
        let prefactor = (a * PI).sin() / PI;
        let need_min = ((tol / 4.0) * a / prefactor).ln() / a;
        let need_max = ((tol / 4.0) * (1.0 - a) / (prefactor * norm_x)).ln() / (a - 1.0);
        s_min = s_min.min(need_min);
        s_max = s_max.max(need_max);
    }
    s_min = s_min.max(-S_ABS_CAP);
    s_max = s_max.min(S_ABS_CAP);
    for &a in alphas {
        let (head, tail) = truncation_bounds(a, norm_x, s_min, s_max);
        if head + tail > tol {
            return Err(Error::TailBoundExceeded(format!(
                "alpha {a}: head {head:.3e} + tail {tail:.3e} above {tol:.3e} at the cap"
            )));
        }
    }
    // node layout: default-density core, unit-width extensions
    let mut points = Vec::new();
    let core_lo = s_min.max(-40.0);
    let core_hi = s_max.min(40.0);
    if s_min < core_lo {
        let len = core_lo - s_min;
        points.extend(composite_panels(s_min, core_lo, len.ceil() as usize, 10));
    }
    points.extend(composite_panels(core_lo, core_hi, 200, 10));
    if s_max > core_hi {
        let len = s_max - core_hi;
        points.extend(composite_panels(core_hi, s_max, len.ceil() as usize, 10));
    }

    let mut accs: Vec<CMat> = alphas.iter().map(|_| CMat::zeros(n)).collect();
    for (s, w) in points {
        let t = s.exp();
        let shifted = x.add_scalar(C64::new(t, 0.0));
        let solved = LuFactors::with_min_pivot(&shifted, 1e-300)?.solve_mat(x);
        for (acc, &a) in accs.iter_mut().zip(alphas.iter()) {
            let weight = w * (a * s).exp();
            for (o, v) in acc.data_mut().iter_mut().zip(solved.data().iter()) {
                *o += v * weight;
            }
        }
    }
    Ok(alphas
        .iter()
        .zip(accs.into_iter())
        .map(|(&a, acc)| {
            let prefactor = (a * PI).sin() / PI;
            let (head, tail) = truncation_bounds(a, norm_x, s_min, s_max);
            PowerResult {
                value: acc.scale_re(prefactor),
                method: PowerMethod::Quadrature,
                est_error: head + tail + 1e-11,
            }
        })
        .collect())
}

/// Principal power by the real-axis resolvent integral (log substitution,
/// composite Gauss-Legendre). Powers above 1 split off the integer part.
pub fn frac_power(x: &CMat, alpha: f64, scheme: &QuadratureScheme) -> Result<PowerResult> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::DomainError(format!("alpha {alpha} not in (0, inf)")));
    }
    require_accretive(x, ACCRETIVE_TOL)?;
    let int_part = alpha.floor() as u64;
    let frac = alpha - int_part as f64;
    if frac.abs() < 1e-14 {
        return Ok(PowerResult {
            value: x.powi(int_part),
            method: PowerMethod::Quadrature,
            est_error: 1e-14 * op_norm(x).powi(int_part as i32).max(1e-14),
        });
    }
    let base = fractional_quadrature(x, frac, scheme)?;
    if int_part == 0 {
        return Ok(base);
    }
    let whole = x.powi(int_part);
    Ok(PowerResult {
        value: whole.mul_mat(&base.value),
        method: PowerMethod::Quadrature,
        est_error: base.est_error * op_norm(&whole).max(1.0),
    })
}

/// Relative eigenvalue magnitude below which the principal branch takes
/// `0^alpha = 0`; keeps exact kernels exact under repeated rooting.
const SPECTRAL_ZERO_RTOL: f64 = 1e-11;

fn principal_power_scalar(lambda: C64, alpha: f64, zero_floor: f64) -> C64 {
    if lambda.norm() <= zero_floor {
        C64::new(0.0, 0.0)
    } else {
        (lambda.ln() * alpha).exp()
    }
}

/// Principal power through the eigendecomposition. Requires a
/// diagonalizable input (eigenvector condition below `1e6`); callers fall
/// back to quadrature on the `Defective` error.
pub fn frac_power_spectral(x: &CMat, alpha: f64) -> Result<PowerResult> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::DomainError(format!("alpha {alpha} not in (0, inf)")));
    }
    require_accretive(x, ACCRETIVE_TOL)?;
    let decomp = eigen_decomp(x, 1e6)?;
    let max_mag = decomp.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let zero_floor = SPECTRAL_ZERO_RTOL * max_mag;
    let value = decomp.apply(|l| principal_power_scalar(l, alpha, zero_floor));
    let est_error = 1e-14
        * decomp.condition
        * (1.0 + max_mag.powf(alpha))
        * x.dim() as f64;
    Ok(PowerResult {
        value,
        method: PowerMethod::Spectral,
        est_error,
    })
}

/// Spectral power when well-conditioned, quadrature otherwise.
pub fn frac_power_auto(x: &CMat, alpha: f64, tol: f64) -> Result<CMat> {
    match frac_power_spectral(x, alpha) {
        Ok(r) => Ok(r.value),
        Err(Error::Defective(_)) => {
            Ok(frac_power(x, alpha, &QuadratureScheme::with_tol(tol.min(1e-9)))?.value)
        }
        Err(e) => Err(e),
    }
}

/// Principal square root via the auto route.
pub fn principal_sqrt(x: &CMat, tol: f64) -> Result<CMat> {
    frac_power_auto(x, 0.5, tol)
}

/// Orthogonal projection onto ran(x), from the eigenspaces of x x* above
/// a relative rank cutoff.
pub fn range_projection(x: &CMat, rank_rtol: f64) -> Result<CMat> {
    let g = x.mul_mat(&x.adjoint());
    let eig = herm_eig(&g)?;
    let top = eig.max().max(0.0);
    let cutoff = rank_rtol * top.max(f64::MIN_POSITIVE);
    let n = x.dim();
    let mut p = CMat::zeros(n);
    for (j, &l) in eig.eigenvalues.iter().enumerate() {
        if l > cutoff {
            let v = eig.eigenvectors.column(j);
            for i in 0..n {
                for k in 0..n {
                    let val = v[i] * v[k].conj();
                    p[(i, k)] += val;
                }
            }
        }
    }
    Ok(p)
}

/// Orthogonal projection onto ker(m). Smallness of singular values is
/// judged against `max(sigma_max, scale_floor)`, so an (almost) zero input
/// has full kernel rather than a noise-rank one.
pub fn kernel_projection(m: &CMat, rank_rtol: f64, scale_floor: f64) -> Result<CMat> {
    let g = m.adjoint().mul_mat(m);
    let eig = herm_eig(&g)?;
    let top = eig.max().max(0.0);
    let sigma_scale = top.sqrt().max(scale_floor);
    let cutoff = (rank_rtol * sigma_scale).powi(2).max(f64::MIN_POSITIVE);
    let n = m.dim();
    let mut p = CMat::zeros(n);
    for (j, &l) in eig.eigenvalues.iter().enumerate() {
        if l <= cutoff {
            let v = eig.eigenvectors.column(j);
            for i in 0..n {
                for k in 0..n {
                    let val = v[i] * v[k].conj();
                    p[(i, k)] += val;
                }
            }
        }
    }
    Ok(p)
}

/// Support projection s(x): the limit of repeated principal square roots
/// `x^{1/2^k}`. Converges geometrically; capped at 60 rootings.
pub fn support_projection(x: &CMat, tol: f64) -> Result<CMat> {
    require_accretive(x, ACCRETIVE_TOL)?;
    if op_norm(x) < tol {
        return Ok(CMat::zeros(x.dim()));
    }
    let mut y = x.clone();
    for _ in 0..60 {
        let next = principal_sqrt(&y, tol)?;
        let delta = op_norm(&(&next - &y));
        y = next;
        if delta < tol {
            return Ok(y);
        }
    }
    Err(Error::NoConvergence(
        "support projection: 60 root iterations without settling".into(),
    ))
}

/// Peak projection u(x): the limit of `x^{2^k}` for x in 1/2 F; the
/// orthogonal projection onto ker(x - I).
pub fn peak_projection(x: &CMat, tol: f64) -> Result<CMat> {
    let gauge = op_norm(&(&CMat::identity(x.dim()) - &x.scale_re(2.0)));
    if gauge > 1.0 + tol.max(1e-10) {
        return Err(Error::NotInHalfF(gauge));
    }
    let mut y = x.clone();
    for _ in 0..60 {
        let next = y.mul_mat(&y);
        let delta = op_norm(&(&next - &y));
        y = next;
        if delta < tol {
            return Ok(y);
        }
    }
    Err(Error::NoConvergence(
        "peak projection: 60 squarings without settling".into(),
    ))
}

/// Verify the conjugation law for powers under a partial isometry v with
/// `v* v = s(a)`: `(v a v*)^r` against `v a^r v*`.
pub fn conj_power_check(a: &CMat, v: &CMat, r: f64, tol: f64) -> Result<VerificationRecord> {
    if !(0.0 < r && r < 1.0) {
        return Err(Error::DomainError(format!("r {r} not in (0,1)")));
    }
    require_accretive(a, ACCRETIVE_TOL)?;
    let scale = op_norm(v).max(1.0);
    let pisom = op_norm(&(&v.mul_mat(&v.adjoint()).mul_mat(v) - v));
    if pisom > tol * scale {
        return Err(Error::PreconditionViolated(format!(
            "v is not a partial isometry (||v v* v - v|| = {pisom:.3e})"
        )));
    }
    let s = support_projection(a, tol.min(1e-9))?;
    let vv = v.adjoint().mul_mat(v);
    let support_gap = op_norm(&(&vv - &s));
    if support_gap > 10.0 * tol.max(1e-9) {
        return Err(Error::PreconditionViolated(format!(
            "v* v differs from the support projection by {support_gap:.3e}"
        )));
    }
    let conj = v.mul_mat(a).mul_mat(&v.adjoint());
    let lhs_mat = frac_power_auto(&conj, r, tol)?;
    let rhs_mat = v.mul_mat(&frac_power_auto(a, r, tol)?).mul_mat(&v.adjoint());
    let diff = op_norm(&(&lhs_mat - &rhs_mat));
    Ok(
        VerificationRecord::upper(
            "conjugation_power",
            "(v a v*)^r agrees with v a^r v*",
            diff,
            0.0,
            10.0 * tol,
        )
        .with_param("r", r),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{SplitMix64, random_accretive};

    fn scalar_mat(z: C64) -> CMat {
        CMat::diag(&[z])
    }

    #[test]
    fn cayley_scalar_values() {
        let one = cayley(&scalar_mat(C64::new(1.0, 0.0))).unwrap();
        assert!(one.max_abs() < 1e-14);
        let zero = cayley(&scalar_mat(C64::new(0.0, 0.0))).unwrap();
        assert!((zero[(0, 0)] + C64::new(1.0, 0.0)).norm() < 1e-14);
        // (i - 1)/(i + 1) = i
        let i = cayley(&scalar_mat(C64::new(0.0, 1.0))).unwrap();
        assert!((i[(0, 0)] - C64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn cayley_is_a_contraction_and_matches_f_transform() {
        let mut rng = SplitMix64::new(2);
        for _ in 0..20 {
            let x = random_accretive(&mut rng, 5);
            let k = cayley(&x).unwrap();
            assert!(op_norm(&k) <= 1.0 + 1e-10);
            // kappa(x) = -(1 - 2 F(x))
            let f = f_transform(&x).unwrap();
            let recon = &f.scale_re(2.0) - &CMat::identity(5);
            assert!((&k - &recon).max_abs() < 1e-10);
        }
    }

    #[test]
    fn f_transform_scalar_and_hand_value() {
        let f = f_transform(&scalar_mat(C64::new(1.0, 0.0))).unwrap();
        assert!((f[(0, 0)] - C64::new(0.5, 0.0)).norm() < 1e-14);
        let zero = f_transform(&CMat::zeros(2)).unwrap();
        assert!(zero.max_abs() < 1e-14);
        // [[1,i],[i,0]] (x + I) inverse by hand: (1/3)[[1,-i],[-i,2]],
        // so F(x) = (1/3)[[2, i],[i, 1]].
        let x = CMat::from_pairs(2, &[(1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (0.0, 0.0)]).unwrap();
        let f = f_transform(&x).unwrap();
        let expect = CMat::from_pairs(
            2,
            &[
                (2.0 / 3.0, 0.0),
                (0.0, 1.0 / 3.0),
                (0.0, 1.0 / 3.0),
                (1.0 / 3.0, 0.0),
            ],
        )
        .unwrap();
        assert!((&f - &expect).max_abs() < 1e-12);
    }

    #[test]
    fn f_transform_round_trip() {
        let mut rng = SplitMix64::new(9);
        for _ in 0..20 {
            let x = random_accretive(&mut rng, 4);
            let f = f_transform(&x).unwrap();
            assert!(op_norm(&f) < 1.0);
            let back = inv_f_transform(&f).unwrap();
            assert!(
                (&back - &x).max_abs() <= 1e-9 * x.max_abs().max(1.0),
                "round trip residual {}",
                (&back - &x).max_abs()
            );
        }
        let half = inv_f_transform(&scalar_mat(C64::new(0.5, 0.0))).unwrap();
        assert!((half[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn frac_power_diagonal_cases() {
        let scheme = QuadratureScheme::default();
        let r = frac_power(&scalar_mat(C64::new(4.0, 0.0)), 0.5, &scheme).unwrap();
        assert!((r.value[(0, 0)] - C64::new(2.0, 0.0)).norm() < 1e-9);
        assert!(r.est_error <= scheme.target_tol);
        let i = frac_power(&CMat::identity(3), 0.37, &scheme).unwrap();
        assert!((&i.value - &CMat::identity(3)).max_abs() < 1e-9);
    }

    #[test]
    fn frac_power_jordan_sqrt_squares_back() {
        // sqrt of [[1,1],[0,1]] is [[1,1/2],[0,1]]
        let x = CMat::from_pairs(2, &[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]).unwrap();
        let r = frac_power(&x, 0.5, &QuadratureScheme::default()).unwrap();
        let expect =
            CMat::from_pairs(2, &[(1.0, 0.0), (0.5, 0.0), (0.0, 0.0), (1.0, 0.0)]).unwrap();
        assert!((&r.value - &expect).max_abs() < 1e-9);
        let squared = r.value.mul_mat(&r.value);
        assert!((&squared - &x).max_abs() < 1e-9);
    }

    #[test]
    fn frac_power_small_alpha_widens_truncation() {
        let x = scalar_mat(C64::new(1.0, 0.0));
        let r = frac_power(&x, 0.1, &QuadratureScheme::default()).unwrap();
        assert!(
            (r.value[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-9,
            "1^0.1 = {:?}",
            r.value[(0, 0)]
        );
    }

    #[test]
    fn frac_power_integer_split() {
        let x = scalar_mat(C64::new(2.0, 0.0));
        let r = frac_power(&x, 2.5, &QuadratureScheme::default()).unwrap();
        let expect = 2.0f64.powf(2.5);
        assert!((r.value[(0, 0)].re - expect).abs() < 1e-8);
        let r3 = frac_power(&x, 3.0, &QuadratureScheme::default()).unwrap();
        assert!((r3.value[(0, 0)].re - 8.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_matches_quadrature_and_hermitian_calculus() {
        let x = CMat::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
        let r = frac_power_spectral(&x, 0.5).unwrap();
        assert!((r.value[(1, 1)] - C64::from_polar(1.0, PI / 4.0)).norm() < 1e-12);

        let mut rng = SplitMix64::new(31);
        // positive definite Hermitian: compare to the Hermitian calculus
        let g = crate::rng::random_matrix(&mut rng, 5);
        let h = &g.adjoint().mul_mat(&g).scale_re(0.2) + &CMat::identity(5).scale_re(0.1);
        let via_eig = herm_eig(&h).unwrap().apply(|l| C64::new(l.powf(0.3), 0.0));
        let via_spec = frac_power_spectral(&h, 0.3).unwrap().value;
        assert!((&via_eig - &via_spec).max_abs() < 1e-10);

        for _ in 0..10 {
            let x = random_accretive(&mut rng, 6);
            let spec = match frac_power_spectral(&x, 0.5) {
                Ok(r) => r,
                Err(Error::Defective(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            let quad = frac_power(&x, 0.5, &QuadratureScheme::default()).unwrap();
            let gap = (&spec.value - &quad.value).max_abs();
            assert!(
                gap <= (spec.est_error + quad.est_error).max(1e-8),
                "cross-method gap {gap:.3e}"
            );
        }
    }

    #[test]
    fn nonaccretive_input_is_rejected() {
        let x = CMat::unit(2, 0, 1);
        assert!(matches!(
            frac_power(&x, 0.5, &QuadratureScheme::default()),
            Err(Error::NotAccretive(_))
        ));
    }

    #[test]
    fn support_projection_cases() {
        let p = support_projection(&CMat::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]), 1e-9)
            .unwrap();
        let expect = CMat::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert!((&p - &expect).max_abs() < 1e-7);

        // invertible accretive: s(x) = I (checked via determinant != 0)
        let x = CMat::from_pairs(2, &[(1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (0.0, 0.0)]).unwrap();
        let det = x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)];
        assert!(det.norm() > 0.5);
        let p = support_projection(&x, 1e-9).unwrap();
        assert!((&p - &CMat::identity(2)).max_abs() < 1e-6);
    }

    #[test]
    fn support_projection_matches_range_oracle() {
        let mut rng = SplitMix64::new(77);
        for _ in 0..5 {
            let u = crate::rng::random_unitary(&mut rng, 5);
            let b = random_accretive(&mut rng, 3).add_scalar(C64::new(0.2, 0.0));
            let mut x = CMat::zeros(5);
            for i in 0..3 {
                for j in 0..3 {
                    x[(i, j)] = b[(i, j)];
                }
            }
            let x = u.mul_mat(&x).mul_mat(&u.adjoint());
            let p = support_projection(&x, 1e-9).unwrap();
            let oracle = range_projection(&x, 1e-10).unwrap();
            assert!(
                (&p - &oracle).max_abs() < 1e-6,
                "gap {}",
                (&p - &oracle).max_abs()
            );
            // projection laws
            assert!((&p.mul_mat(&p) - &p).max_abs() < 1e-7);
            assert!(p.asymmetry() < 1e-7);
            assert!((&p.mul_mat(&x) - &x).max_abs() < 1e-7);
            assert!((&x.mul_mat(&p) - &x).max_abs() < 1e-7);
        }
    }

    #[test]
    fn peak_projection_cases() {
        let x = CMat::diag(&[C64::new(1.0, 0.0), C64::new(0.5, 0.0)]);
        let u = peak_projection(&x, 1e-10).unwrap();
        let expect = CMat::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert!((&u - &expect).max_abs() < 1e-8);
        let half = peak_projection(&CMat::diag(&[C64::new(0.5, 0.0)]), 1e-10).unwrap();
        assert!(half.max_abs() < 1e-8);
        assert!(matches!(
            peak_projection(&CMat::diag(&[C64::new(2.0, 0.0)]), 1e-10),
            Err(Error::NotInHalfF(_))
        ));
    }

    #[test]
    fn peak_of_root_equals_peak() {
        let mut rng = SplitMix64::new(13);
        for _ in 0..5 {
            // half-F element with an exact peak: unitary conjugate of I_k + contraction
            let u = crate::rng::random_unitary(&mut rng, 4);
            let mut d = CMat::identity(4);
            d[(2, 2)] = C64::new(0.4, 0.1);
            d[(3, 3)] = C64::new(0.3, -0.2);
            let x = u.mul_mat(&d).mul_mat(&u.adjoint());
            assert!(op_norm(&(&CMat::identity(4) - &x.scale_re(2.0))) <= 1.0 + 1e-9);
            let ux = peak_projection(&x, 1e-10).unwrap();
            let root = principal_sqrt(&x, 1e-10).unwrap();
            let uroot = peak_projection(&root, 1e-9).unwrap();
            assert!(
                (&ux - &uroot).max_abs() < 1e-6,
                "gap {}",
                (&ux - &uroot).max_abs()
            );
        }
    }

    #[test]
    fn conjugation_power_law() {
        // a = diag(4, 0), v maps e1 -> e2: v a v* = diag(0, 4), both roots
        // land on the value 2 in the conjugated slot.
        let a = CMat::diag(&[C64::new(4.0, 0.0), C64::new(0.0, 0.0)]);
        let v = CMat::unit(2, 1, 0);
        let rec = conj_power_check(&a, &v, 0.5, 1e-9).unwrap();
        assert!(rec.pass, "record {rec:?}");
        let trivial = conj_power_check(&CMat::identity(3), &CMat::identity(3), 0.5, 1e-9).unwrap();
        assert!(trivial.pass);
    }
}
