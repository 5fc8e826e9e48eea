//! Numerical range (field of values) geometry: boundary sampling via
//! support functions, sector angles, accretivity, and cigar-region tests.

use std::f64::consts::PI;

use crate::cmat::{C64, CMat, dot};
use crate::error::Result;
use crate::linalg::{herm_eig, op_norm, psd_check};

/// One boundary sample: support direction, support value, boundary point.
#[derive(Clone, Copy, Debug)]
pub struct BoundarySample {
    pub theta: f64,
    pub support: f64,
    pub point: C64,
}

/// Sampled boundary of the numerical range with support-function data.
#[derive(Clone, Debug)]
pub struct NRBoundary {
    pub samples: Vec<BoundarySample>,
    pub n_angles: usize,
}

/// Sector `S_psi = { r e^{i theta} : r >= 0, |theta| <= psi }`.
#[derive(Clone, Copy, Debug)]
pub struct SectorCert {
    pub psi: f64,
    pub vertex_at_origin: bool,
}

/// Wedge of half-angle `rho` intersected with the disk `|z - 1/2| <= 1/2`,
/// subject to the height condition `|Im z| < epsilon/2`.
#[derive(Clone, Copy, Debug)]
pub struct CigarSpec {
    pub rho: f64,
    pub epsilon: f64,
}

impl CigarSpec {
    /// Widest wedge for which the whole region has height < epsilon.
    /// On the disk |z - 1/2| <= 1/2 the boundary is r = cos(theta), so
    /// |Im z| <= sin(2 theta)/2 and the angle solves sin(2 rho) = epsilon.
    pub fn for_height(epsilon: f64) -> Self {
        let rho = if epsilon >= 1.0 {
            PI / 2.0
        } else {
            0.5 * epsilon.clamp(0.0, 1.0).asin()
        };
        CigarSpec { rho, epsilon }
    }

    /// Membership with additive slack.
    pub fn contains(&self, z: C64, tol: f64) -> bool {
        if z.im.abs() >= self.epsilon / 2.0 + tol {
            return false;
        }
        if (z - C64::new(0.5, 0.0)).norm() > 0.5 + tol {
            return false;
        }
        if z.norm() <= tol {
            return true;
        }
        z.arg().abs() < self.rho + tol
    }
}

/// Boundary point below this magnitude is treated as the sector vertex.
const VERTEX_TOL: f64 = 1e-12;

fn boundary_sample(x: &CMat, theta: f64) -> Result<BoundarySample> {
    let rotated = x.scale(C64::from_polar(1.0, -theta));
    let re = rotated.re_part();
    let eig = herm_eig(&re)?;
    let support = eig.max();
    let v = eig.eigenvectors.column(x.dim() - 1);
    let point = dot(&x.mul_vec(&v), &v);
    Ok(BoundarySample {
        theta,
        support,
        point,
    })
}

/// Sample the numerical-range boundary at `n_angles` support directions.
///
/// For each direction the top eigenvector v of `Re(e^{-i theta} x)` yields
/// the boundary point `<x v, v>`; the support value is the top eigenvalue.
pub fn nr_boundary(x: &CMat, n_angles: usize) -> Result<NRBoundary> {
    assert!(n_angles >= 8, "need at least 8 angles");
    let mut samples = Vec::with_capacity(n_angles);
    for j in 0..n_angles {
        let theta = 2.0 * PI * j as f64 / n_angles as f64;
        samples.push(boundary_sample(x, theta)?);
    }
    Ok(NRBoundary { samples, n_angles })
}

/// `Re(x) >= 0` up to tolerance.
pub fn is_accretive(x: &CMat, tol: f64) -> bool {
    let h = x + &x.adjoint();
    psd_check(&h, tol).map(|c| c.psd).unwrap_or(false)
}

fn abs_arg_or_zero(z: C64) -> f64 {
    if z.norm() < VERTEX_TOL {
        0.0
    } else {
        z.arg().abs()
    }
}

/// Smallest sector `S_psi` containing the sampled numerical range.
///
/// Coarse sweep over boundary points followed by a ternary refinement of
/// `|arg w(theta)|` near the maximizing support direction. Non-accretive
/// inputs simply report psi > pi/2; the zero matrix reports psi = 0.
pub fn sector_angle(x: &CMat, n_angles: usize) -> Result<SectorCert> {
    if op_norm(x) < VERTEX_TOL {
        return Ok(SectorCert {
            psi: 0.0,
            vertex_at_origin: true,
        });
    }
    let boundary = nr_boundary(x, n_angles)?;
    let mut best_idx = 0usize;
    let mut best = -1.0f64;
    for (idx, s) in boundary.samples.iter().enumerate() {
        let a = abs_arg_or_zero(s.point);
        if a > best {
            best = a;
            best_idx = idx;
        }
    }
    // ternary refinement of |arg w(theta)| on the bracketing angle window
    let step = 2.0 * PI / n_angles as f64;
    let mut lo = boundary.samples[best_idx].theta - step;
    let mut hi = boundary.samples[best_idx].theta + step;
    for _ in 0..60 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        let f1 = abs_arg_or_zero(boundary_sample(x, m1)?.point);
        let f2 = abs_arg_or_zero(boundary_sample(x, m2)?.point);
        if f1 < f2 {
            lo = m1;
        } else {
            hi = m2;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    let refined = abs_arg_or_zero(boundary_sample(x, 0.5 * (lo + hi))?.point);
    let psi = best.max(refined);
    Ok(SectorCert {
        psi,
        vertex_at_origin: true,
    })
}

/// Cigar verdict with the worst offending boundary point.
pub struct CigarVerdict {
    pub inside: bool,
    pub worst_point: C64,
}

/// True iff every sampled boundary point lies in the cigar region (with
/// tolerance slack) and satisfies the height condition.
pub fn cigar_check(x: &CMat, spec: &CigarSpec, n_angles: usize, tol: f64) -> Result<CigarVerdict> {
    let boundary = nr_boundary(x, n_angles)?;
    let mut inside = true;
    let mut worst = C64::new(0.0, 0.0);
    let mut worst_score = f64::NEG_INFINITY;
    for s in &boundary.samples {
        let ok = spec.contains(s.point, tol);
        // offender score: distance outside the disk plus excess height
        let score = ((s.point - C64::new(0.5, 0.0)).norm() - 0.5)
            .max(s.point.im.abs() - spec.epsilon / 2.0);
        if score > worst_score {
            worst_score = score;
            worst = s.point;
        }
        inside &= ok;
    }
    Ok(CigarVerdict {
        inside,
        worst_point: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{SplitMix64, random_unit_vector};

    #[test]
    fn zero_matrix_boundary_is_origin() {
        let b = nr_boundary(&CMat::zeros(3), 16).unwrap();
        for s in &b.samples {
            assert!(s.point.norm() < 1e-14);
            assert!(s.support.abs() < 1e-14);
        }
    }

    #[test]
    fn segment_boundary_for_diagonal() {
        let x = CMat::diag(&[C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
        let b = nr_boundary(&x, 16).unwrap();
        assert!((b.samples[0].support - 1.0).abs() < 1e-12); // s(0) = 1
        let mid = b.samples[8]; // theta = pi
        assert!(mid.support.abs() < 1e-12); // s(pi) = 0
        for s in &b.samples {
            assert!(s.point.im.abs() < 1e-10);
            assert!(s.point.re > -1e-10 && s.point.re < 1.0 + 1e-10);
        }
    }

    #[test]
    fn jordan_cell_is_half_disk() {
        // numerical range of [[0,1],[0,0]] is the disk of radius 1/2
        let x = CMat::unit(2, 0, 1);
        let b = nr_boundary(&x, 32).unwrap();
        for s in &b.samples {
            assert!((s.support - 0.5).abs() < 1e-10, "support {}", s.support);
            assert!((s.point.norm() - 0.5).abs() < 1e-10);
        }
        // brute-force oracle: max |<x v, v>| over random unit vectors stays <= 1/2
        let mut rng = SplitMix64::new(21);
        let mut best = 0.0f64;
        for _ in 0..2000 {
            let v = random_unit_vector(&mut rng, 2);
            best = best.max(dot(&x.mul_vec(&v), &v).norm());
        }
        assert!(best <= 0.5 + 1e-12);
        assert!(best > 0.5 - 1e-3);
    }

    #[test]
    fn accretivity_basics() {
        assert!(is_accretive(&CMat::identity(3), 1e-12));
        assert!(!is_accretive(&CMat::unit(2, 0, 1), 1e-12));
        // [[1, i], [i, 0]] has x + x* = diag(2, 0)
        let x = CMat::from_pairs(2, &[(1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (0.0, 0.0)]).unwrap();
        assert!(is_accretive(&x, 1e-12));
    }

    #[test]
    fn sector_angle_positive_diagonal_is_zero() {
        let x = CMat::diag(&[C64::new(1.0, 0.0), C64::new(2.0, 0.0)]);
        let cert = sector_angle(&x, 720).unwrap();
        assert!(cert.psi < 1e-9, "psi = {}", cert.psi);
    }

    #[test]
    fn sector_angle_of_rotated_diagonal() {
        let x = CMat::diag(&[C64::new(1.0, 0.0), C64::from_polar(1.0, PI / 4.0)]);
        let cert = sector_angle(&x, 720).unwrap();
        assert!((cert.psi - PI / 4.0).abs() < 1e-6, "psi = {}", cert.psi);
    }

    #[test]
    fn sector_angle_jordan_like_block() {
        // numerical range of [[1,1],[0,1]] is the disk centered at 1 of
        // radius 1/2, so the sector half-angle is arcsin(1/2) = pi/6.
        let x = CMat::from_pairs(2, &[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]).unwrap();
        let cert = sector_angle(&x, 720).unwrap();
        assert!((cert.psi - PI / 6.0).abs() < 1e-7, "psi = {}", cert.psi);
        // brute-force oracle over a unit-vector grid
        let mut rng = SplitMix64::new(5);
        let mut best = 0.0f64;
        for _ in 0..4000 {
            let v = random_unit_vector(&mut rng, 2);
            best = best.max(abs_arg_or_zero(dot(&x.mul_vec(&v), &v)));
        }
        assert!(best <= cert.psi + 1e-6);
        assert!(best > cert.psi - 1e-2);
    }

    #[test]
    fn cigar_membership() {
        let spec = CigarSpec::for_height(0.5);
        let x = CMat::diag(&[
            C64::new(0.0, 0.0),
            C64::new(0.5, 0.0),
            C64::new(1.0, 0.0),
        ]);
        assert!(cigar_check(&x, &spec, 64, 1e-9).unwrap().inside);
        let y = CMat::diag(&[C64::new(0.0, 1.0)]);
        let verdict = cigar_check(&y, &CigarSpec::for_height(0.1), 64, 1e-9).unwrap();
        assert!(!verdict.inside);
        assert!((verdict.worst_point - C64::new(0.0, 1.0)).norm() < 1e-9);
    }

    #[test]
    fn cigar_tolerates_tiny_imaginary_noise() {
        let base = CMat::diag(&[
            C64::new(0.1, 0.0),
            C64::new(0.6, 0.0),
            C64::new(0.9, 0.0),
        ]);
        let x = base.add_scalar(C64::new(0.0, 1e-6));
        let spec = CigarSpec::for_height(1e-3);
        assert!(cigar_check(&x, &spec, 64, 1e-9).unwrap().inside);
    }

    #[test]
    fn support_function_dominates_all_samples() {
        // convexity: s(theta) >= Re(e^{-i theta} w(theta')) for all pairs
        use crate::rng::random_accretive;
        let mut rng = SplitMix64::new(33);
        let x = random_accretive(&mut rng, 6);
        let b = nr_boundary(&x, 90).unwrap();
        for s in &b.samples {
            for t in &b.samples {
                let proj = (t.point * C64::from_polar(1.0, -s.theta)).re;
                assert!(proj <= s.support + 1e-8);
            }
        }
    }
}
