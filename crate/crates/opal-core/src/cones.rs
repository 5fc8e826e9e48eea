//! Membership predicates and certificates for the positivity cones, the
//! unital-case constructive decompositions, and state-functional checks.

use serde::{Deserialize, Serialize};

use crate::cmat::{C64, CMat, dot};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, op_norm, psd_check};
use crate::report::VerificationRecord;
use crate::rng::{SplitMix64, random_matrix};
use crate::transforms::{frac_power_auto, support_projection};

/// Principal-angle tolerance for the kernel-inclusion pretest behind the
/// minimal cone constant.
const KERNEL_INCLUSION_TOL: f64 = 1e-8;

/// Membership verdicts and certificates for the accretive wedge, the
/// half-F set, and the scaled-F cone.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeReport {
    /// x + x* positive semidefinite.
    pub in_r_a: bool,
    /// ||1 - 2x|| <= 1.
    pub in_half_f_a: bool,
    /// Minimal C with x*x <= C (x + x*), when it exists.
    pub c_a_constant: Option<f64>,
    /// Strict positivity of the real part.
    pub strictly_real_positive: bool,
    /// Smallest eigenvalue of x + x*.
    pub re_min_eigenvalue: f64,
    /// Computed ||1 - 2x||.
    pub half_f_gauge: f64,
    /// Eigenvector witnessing the accretivity failure, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accretivity_witness: Option<Vec<C64>>,
}

/// Density matrix: PSD with unit trace. The finite-dimensional stand-in
/// for a state functional via `phi(a) = tr(rho a)`.
#[derive(Clone, Debug)]
pub struct StateDensity {
    pub rho: CMat,
}

impl StateDensity {
    pub fn new(rho: CMat, tol: f64) -> Result<Self> {
        let cert = psd_check(&rho, tol)?;
        if !cert.psd {
            return Err(Error::PreconditionViolated(format!(
                "density matrix not PSD (min eigenvalue {:.3e})",
                cert.min_eigenvalue
            )));
        }
        let tr = rho.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::PreconditionViolated(format!(
                "density matrix trace {tr} differs from 1"
            )));
        }
        Ok(StateDensity { rho })
    }

    /// Normalized Wishart-style sample `g* g / tr(g* g)`.
    pub fn sample(rng: &mut SplitMix64, n: usize) -> Self {
        let g = random_matrix(rng, n);
        let w = g.adjoint().mul_mat(&g);
        let tr = w.trace().re;
        StateDensity {
            rho: w.scale_re(1.0 / tr),
        }
    }

    /// Pure state from a unit vector.
    pub fn pure(v: &[C64]) -> Self {
        let n = v.len();
        let mut rho = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                rho[(i, j)] = v[i] * v[j].conj();
            }
        }
        StateDensity { rho }
    }

    pub fn evaluate(&self, x: &CMat) -> C64 {
        self.rho.mul_mat(x).trace()
    }
}

/// Full cone-membership report for x against the ambient matrix algebra.
pub fn cone_report(x: &CMat, tol: f64) -> Result<ConeReport> {
    let n = x.dim();
    let h = x + &x.adjoint();
    let eig = herm_eig(&h)?;
    let scale = x.max_abs().max(1.0);
    let re_min = eig.min();
    let in_r_a = re_min >= -tol * eig.max().abs().max(1.0);
    let half_f_gauge = op_norm(&(&CMat::identity(n) - &x.scale_re(2.0)));
    let in_half_f_a = half_f_gauge <= 1.0 + tol;
    let strictly_real_positive = re_min > 1e-10 * scale;

    let c_a_constant = if in_r_a {
        minimal_cone_constant(x, &eig)
    } else {
        None
    };
    let accretivity_witness = if in_r_a {
        None
    } else {
        Some(eig.eigenvectors.column(0))
    };
    Ok(ConeReport {
        in_r_a,
        in_half_f_a,
        c_a_constant,
        strictly_real_positive,
        re_min_eigenvalue: re_min,
        half_f_gauge,
        accretivity_witness,
    })
}

/// Minimal C with `x*x <= C (x + x*)`, or None when `ker(x + x*)` is not
/// contained in `ker(x)`. Solved as a generalized Rayleigh problem on the
/// range of x + x*.
fn minimal_cone_constant(x: &CMat, re_eig: &crate::linalg::HermEig) -> Option<f64> {
    let top = re_eig.max().max(0.0);
    let cutoff = KERNEL_INCLUSION_TOL * top.max(f64::MIN_POSITIVE);
    let scale = x.max_abs().max(1.0);
    let mut range_cols: Vec<(usize, f64)> = vec![];
    for (j, &l) in re_eig.eigenvalues.iter().enumerate() {
        if l > cutoff {
            range_cols.push((j, l));
        } else {
            // kernel direction of x + x*: must also kill x
            let v = re_eig.eigenvectors.column(j);
            let xv = x.mul_vec(&v);
            let norm = crate::cmat::vec_norm(&xv);
            if norm > KERNEL_INCLUSION_TOL * scale {
                return None;
            }
        }
    }
    if range_cols.is_empty() {
        // x + x* = 0 and x annihilates everything: x = 0, any C works
        return Some(0.0);
    }
    // W* (x* x) W scaled by 1/sqrt(lambda_i lambda_j)
    let g = x.adjoint().mul_mat(x);
    let r = range_cols.len();
    let mut m = CMat::zeros(r);
    for (a, &(ja, la)) in range_cols.iter().enumerate() {
        let va = re_eig.eigenvectors.column(ja);
        let gva = g.mul_vec(&va);
        for (b, &(jb, lb)) in range_cols.iter().enumerate() {
            let vb = re_eig.eigenvectors.column(jb);
            m[(b, a)] = dot(&gva, &vb) / (la * lb).sqrt();
        }
    }
    let eig = herm_eig(&m).ok()?;
    Some(eig.max().max(0.0))
}

/// Split a contraction as `(1 + x)/2 - (1 - x)/2`; both halves land
/// in 1/2 F.
pub fn decompose_unital(x: &CMat) -> Result<(CMat, CMat)> {
    let norm = op_norm(x);
    if norm > 1.0 + 1e-10 {
        return Err(Error::NormTooLarge(norm, 1.0));
    }
    let n = x.dim();
    let a = (&CMat::identity(n) + x).scale_re(0.5);
    let b = (&CMat::identity(n) - x).scale_re(0.5);
    Ok((a, b))
}

/// Scalar upper bound in the accretive ordering for two strict
/// contractions: `z = t I` with t the larger top real-part eigenvalue.
pub fn upper_bound_unital(x: &CMat, y: &CMat) -> Result<CMat> {
    let nx = op_norm(x);
    let ny = op_norm(y);
    if nx >= 1.0 {
        return Err(Error::NormTooLarge(nx, 1.0));
    }
    if ny >= 1.0 {
        return Err(Error::NormTooLarge(ny, 1.0));
    }
    let tx = herm_eig(&x.re_part())?.max();
    let ty = herm_eig(&y.re_part())?.max();
    let t = tx.max(ty).max(0.0);
    Ok(CMat::identity(x.dim()).scale_re(t))
}

/// Sample states against x: accretive x must stay nonnegative on all of
/// them; non-accretive x must admit an explicit negative witness.
pub fn state_positivity_check(
    x: &CMat,
    n_states: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationRecord> {
    let n = x.dim();
    let mut rng = SplitMix64::new(seed);
    let report = cone_report(x, tol)?;
    if report.in_r_a {
        let mut min_val = f64::INFINITY;
        for _ in 0..n_states {
            let rho = StateDensity::sample(&mut rng, n);
            min_val = min_val.min(rho.evaluate(x).re);
        }
        Ok(VerificationRecord::lower(
            "state_positivity",
            "Re tr(rho x) >= 0 over sampled states for accretive x",
            min_val,
            0.0,
            tol,
        )
        .with_param("n_states", n_states))
    } else {
        let witness = report
            .accretivity_witness
            .expect("witness present when not accretive");
        let rho = StateDensity::pure(&witness);
        let val = rho.evaluate(x).re;
        let mut rec = VerificationRecord::upper(
            "state_positivity_witness",
            "witness state is strictly negative on non-accretive x",
            val,
            0.0,
            0.0,
        );
        rec.pass = val < 0.0;
        rec.margin = -val;
        Ok(rec)
    }
}

/// Monotonicity of the real parts of roots: directly for 1/2 F elements,
/// after the `(2 ||Re x^{1/2}||)^2` rescaling for general accretive x.
pub fn root_monotone_check(x: &CMat, m_max: usize, tol: f64) -> Result<VerificationRecord> {
    let n = x.dim();
    let gauge = op_norm(&(&CMat::identity(n) - &x.scale_re(2.0)));
    let (y, rescaled) = if gauge <= 1.0 + tol {
        (x.clone(), false)
    } else {
        let report = cone_report(x, tol)?;
        if !report.in_r_a {
            return Err(Error::PreconditionViolated(
                "root monotonicity needs an accretive input".into(),
            ));
        }
        let root = frac_power_auto(x, 0.5, tol.min(1e-9))?;
        let c = (2.0 * herm_eig(&root.re_part())?.max()).powi(2);
        if c <= 0.0 {
            return Err(Error::PreconditionViolated("x has vanishing real part".into()));
        }
        (x.scale_re(1.0 / c), true)
    };
    let mut worst = f64::INFINITY;
    let mut prev = frac_power_auto(&y, 0.5, tol.min(1e-9))?;
    for m in 2..=m_max {
        let next = frac_power_auto(&y, 1.0 / (m as f64 + 1.0), tol.min(1e-9))?;
        let diff = &next.re_part() - &prev.re_part();
        let cert = psd_check(&diff, tol)?;
        worst = worst.min(cert.min_eigenvalue);
        prev = next;
    }
    Ok(VerificationRecord::lower(
        "root_monotone",
        "Re(x^{1/(m+1)}) - Re(x^{1/m}) stays PSD",
        worst,
        0.0,
        tol,
    )
    .with_param("m_max", m_max)
    .with_param("rescaled", rescaled))
}

/// Strict real positivity of roots, plus the support-kernel state laws:
/// kernel states annihilate x, and states charging s(x) stay strictly
/// positive on every root.
pub fn srp_root_check(
    x: &CMat,
    n_max: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationRecord> {
    let report = cone_report(x, tol)?;
    if !report.in_r_a {
        return Err(Error::PreconditionViolated(
            "strict-positivity root law needs an accretive input".into(),
        ));
    }
    let n = x.dim();
    let scale = x.max_abs().max(1.0);
    let mut worst_strict = f64::INFINITY;
    let roots: Vec<CMat> = (2..=n_max)
        .map(|m| frac_power_auto(x, 1.0 / m as f64, tol.min(1e-9)))
        .collect::<Result<_>>()?;
    if report.strictly_real_positive {
        for root in &roots {
            let min = herm_eig(&root.re_part())?.min();
            worst_strict = worst_strict.min(min - 1e-10 * scale);
        }
    }
    // kernel states annihilate x and its roots
    let s = support_projection(x, tol.min(1e-9))?;
    let s_eig = herm_eig(&s.re_part())?;
    let mut worst_kernel = 0.0f64;
    for (j, &l) in s_eig.eigenvalues.iter().enumerate() {
        if l < 0.5 {
            let v = s_eig.eigenvectors.column(j);
            let rho = StateDensity::pure(&v);
            worst_kernel = worst_kernel.max(rho.evaluate(x).norm());
        }
    }
    // states with mass on s(x) stay strictly positive on roots
    let mut rng = SplitMix64::new(seed);
    let mut worst_charged = f64::INFINITY;
    for _ in 0..8 {
        let rho = StateDensity::sample(&mut rng, n);
        if rho.evaluate(&s).re <= tol {
            continue;
        }
        for root in &roots {
            worst_charged = worst_charged.min(rho.evaluate(root).re);
        }
    }
    let pass = worst_strict >= -tol
        && worst_kernel <= tol * scale
        && worst_charged > -1e-12;
    let mut rec = VerificationRecord::boolean(
        "srp_roots",
        "roots inherit strict positivity; support-kernel states annihilate x",
        pass,
    );
    rec.lhs = worst_kernel;
    rec.rhs = tol * scale;
    rec.margin = rec.rhs - rec.lhs;
    Ok(rec
        .with_param("worst_strict_margin", format!("{worst_strict:.3e}"))
        .with_param("worst_charged_value", format!("{worst_charged:.3e}"))
        .with_param("n_max", n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::random_accretive;

    #[test]
    fn scalar_one_report() {
        let x = CMat::diag(&[C64::new(1.0, 0.0)]);
        let r = cone_report(&x, 1e-10).unwrap();
        assert!(r.in_r_a);
        assert!(r.in_half_f_a, "gauge {}", r.half_f_gauge);
        assert!(r.strictly_real_positive);
        let c = r.c_a_constant.expect("constant present");
        assert!((c - 0.5).abs() < 1e-10, "C = {c}");
    }

    #[test]
    fn nilpotent_report_all_false() {
        let r = cone_report(&CMat::unit(2, 0, 1), 1e-10).unwrap();
        assert!(!r.in_r_a);
        assert!(!r.in_half_f_a);
        assert!(r.c_a_constant.is_none());
        assert!(!r.strictly_real_positive);
        assert!(r.accretivity_witness.is_some());
    }

    #[test]
    fn le_merdy_in_wedge_but_no_cone_constant() {
        // ker(x + x*) = span e2 is not inside ker x
        let x = CMat::from_pairs(2, &[(1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (0.0, 0.0)]).unwrap();
        let r = cone_report(&x, 1e-10).unwrap();
        assert!(r.in_r_a);
        assert!(r.c_a_constant.is_none());
        assert!(!r.strictly_real_positive);
    }

    #[test]
    fn half_f_forces_cone_constant_at_most_one() {
        let mut rng = SplitMix64::new(4);
        for _ in 0..20 {
            let raw = random_matrix(&mut rng, 4);
            let k = raw.scale_re(0.9 / op_norm(&raw));
            let x = (&CMat::identity(4) + &k).scale_re(0.5);
            let r = cone_report(&x, 1e-9).unwrap();
            assert!(r.in_half_f_a);
            assert!(r.in_r_a, "half F inside the wedge");
            let c = r.c_a_constant.expect("strict contraction gives a constant");
            assert!(c <= 1.0 + 1e-8, "C = {c}");
        }
    }

    #[test]
    fn decompose_cases() {
        let (a, b) = decompose_unital(&CMat::zeros(2)).unwrap();
        assert!((&a - &CMat::identity(2).scale_re(0.5)).max_abs() < 1e-15);
        assert!((&b - &CMat::identity(2).scale_re(0.5)).max_abs() < 1e-15);

        let x = CMat::diag(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        let (a, b) = decompose_unital(&x).unwrap();
        assert!((&a - &CMat::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)])).max_abs() < 1e-15);
        assert!((&b - &CMat::diag(&[C64::new(0.0, 0.0), C64::new(1.0, 0.0)])).max_abs() < 1e-15);
        assert!((&(&a - &b) - &x).max_abs() == 0.0);

        let mut rng = SplitMix64::new(8);
        for _ in 0..10 {
            let raw = random_matrix(&mut rng, 3);
            let x = raw.scale_re(0.95 / op_norm(&raw));
            let (a, b) = decompose_unital(&x).unwrap();
            assert!(cone_report(&a, 1e-9).unwrap().in_half_f_a);
            assert!(cone_report(&b, 1e-9).unwrap().in_half_f_a);
        }
        assert!(matches!(
            decompose_unital(&CMat::identity(2).scale_re(2.0)),
            Err(Error::NormTooLarge(_, _))
        ));
    }

    #[test]
    fn upper_bound_dominates_both() {
        let x = CMat::diag(&[C64::new(0.5, 0.0)]);
        let y = CMat::diag(&[C64::new(-0.5, 0.0)]);
        let z = upper_bound_unital(&x, &y).unwrap();
        assert!((z[(0, 0)] - C64::new(0.5, 0.0)).norm() < 1e-12);

        let zero = upper_bound_unital(&CMat::zeros(2), &CMat::zeros(2)).unwrap();
        assert!(zero.max_abs() < 1e-15);

        let mut rng = SplitMix64::new(12);
        for _ in 0..10 {
            let rx = random_matrix(&mut rng, 4);
            let ry = random_matrix(&mut rng, 4);
            let x = rx.scale_re(0.8 / op_norm(&rx));
            let y = ry.scale_re(0.8 / op_norm(&ry));
            let z = upper_bound_unital(&x, &y).unwrap();
            assert!(op_norm(&z) < 1.0);
            for d in [&z - &x, &z - &y] {
                let h = &d + &d.adjoint();
                assert!(psd_check(&h, 1e-10).unwrap().psd);
            }
        }
    }

    #[test]
    fn state_positivity_both_branches() {
        let rec = state_positivity_check(&CMat::identity(3), 50, 7, 1e-10).unwrap();
        assert!(rec.pass);
        let bad = CMat::diag(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        let rec = state_positivity_check(&bad, 50, 7, 1e-10).unwrap();
        assert!(rec.pass, "witness found: {rec:?}");
        assert!(rec.lhs < -0.9, "witness value {}", rec.lhs);
        // Le Merdy matrix is accretive: sampled states stay nonnegative
        let x = CMat::from_pairs(2, &[(1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (0.0, 0.0)]).unwrap();
        let rec = state_positivity_check(&x, 200, 11, 1e-10).unwrap();
        assert!(rec.pass, "{rec:?}");
    }

    #[test]
    fn root_monotone_scalar_quarter() {
        // (1/4)^{1/m} increases with m
        let x = CMat::diag(&[C64::new(0.25, 0.0)]);
        let rec = root_monotone_check(&x, 8, 1e-9).unwrap();
        assert!(rec.pass, "{rec:?}");
        // identity: differences vanish
        let rec = root_monotone_check(&CMat::identity(2), 6, 1e-9).unwrap();
        assert!(rec.pass);
    }

    #[test]
    fn root_monotone_le_merdy_rescaled() {
        let x = CMat::from_pairs(2, &[(1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (0.0, 0.0)]).unwrap();
        let rec = root_monotone_check(&x, 8, 1e-8).unwrap();
        assert!(rec.pass, "{rec:?}");
        assert_eq!(rec.params.get("rescaled").map(String::as_str), Some("true"));
    }

    #[test]
    fn srp_roots_identity_and_singular() {
        let rec = srp_root_check(&CMat::identity(3), 6, 3, 1e-9).unwrap();
        assert!(rec.pass, "{rec:?}");
        // diag(1 + i, 0): the e2 vector state annihilates all roots
        let x = CMat::diag(&[C64::new(1.0, 1.0), C64::new(0.0, 0.0)]);
        let rec = srp_root_check(&x, 6, 3, 1e-9).unwrap();
        assert!(rec.pass, "{rec:?}");
    }

    use crate::rng::random_matrix;

    #[test]
    fn properness_of_the_cone() {
        let mut rng = SplitMix64::new(19);
        let mut seen = 0;
        for _ in 0..40 {
            let x = random_accretive(&mut rng, 4);
            let r = cone_report(&x, 1e-10).unwrap();
            if r.c_a_constant.is_none() {
                continue;
            }
            seen += 1;
            let neg = cone_report(&x.scale_re(-1.0), 1e-10).unwrap();
            assert!(neg.c_a_constant.is_none(), "cone is proper");
        }
        assert!(seen > 10, "sampler produced too few cone members");
    }
}
