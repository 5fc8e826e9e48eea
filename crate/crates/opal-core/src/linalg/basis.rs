//! Orthonormal bases of matrix subspaces (matrices vectorized to n^2
//! coordinates), used for generated-algebra membership tests.

use crate::cmat::{C64, CMat, dot, vec_norm};

/// Orthonormal list of vectors in C^{ambient_dim}.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<C64>>,
}

impl OrthoBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        OrthoBasis {
            ambient_dim,
            vectors: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Residual of v after projecting onto the span; returns (residual
    /// vector, residual norm). Two Gram-Schmidt passes keep orthogonality
    /// near machine precision.
    pub fn residual(&self, v: &[C64]) -> (Vec<C64>, f64) {
        let mut r = v.to_vec();
        for _ in 0..2 {
            for b in &self.vectors {
                let coeff = dot(&r, b);
                for i in 0..r.len() {
                    r[i] -= coeff * b[i];
                }
            }
        }
        let norm = vec_norm(&r);
        (r, norm)
    }

    /// Try to extend the basis with v. Returns true when v added rank,
    /// i.e. its residual exceeds `tol` relative to its own norm.
    pub fn push(&mut self, v: &[C64], tol: f64) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let scale = vec_norm(v);
        if scale == 0.0 {
            return false;
        }
        let (mut r, norm) = self.residual(v);
        if norm <= tol * scale.max(1.0) {
            return false;
        }
        for z in &mut r {
            *z /= norm;
        }
        self.vectors.push(r);
        true
    }

    /// Euclidean distance from vec(y) to the span.
    pub fn distance(&self, y: &CMat) -> f64 {
        let (_, norm) = self.residual(&y.vectorize());
        norm
    }

    /// Membership of a matrix in the span, with the distance certificate.
    pub fn member(&self, y: &CMat, tol: f64) -> (bool, f64) {
        let d = self.distance(y);
        (d <= tol * y.frobenius().max(1.0), d)
    }
}

/// Orthonormal basis of span{mats} over vectorized matrices.
/// An empty list gives the zero subspace.
pub fn span_basis(mats: &[CMat], tol: f64) -> OrthoBasis {
    let ambient = mats.first().map(|m| m.dim() * m.dim()).unwrap_or(0);
    let mut basis = OrthoBasis::empty(ambient);
    for m in mats {
        basis.push(&m.vectorize(), tol);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_span_contains_multiples() {
        let basis = span_basis(&[CMat::identity(3)], 1e-12);
        assert_eq!(basis.dim(), 1);
        let (ok, d) = basis.member(&CMat::identity(3).scale_re(5.0), 1e-10);
        assert!(ok);
        assert!(d < 1e-10);
    }

    #[test]
    fn unit_e12_does_not_contain_e21() {
        let basis = span_basis(&[CMat::unit(2, 0, 1)], 1e-12);
        let (ok, d) = basis.member(&CMat::unit(2, 1, 0), 1e-10);
        assert!(!ok);
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn powers_of_diagonal_span_combinations() {
        // span{x, x^2} for x = diag(1,2) contains diag(1,4) = x^2
        // and diag(1, 3) = solve 2x2: a*1 + b*1 = 1, 2a + 4b = 3.
        let x = CMat::diag(&[C64::new(1.0, 0.0), C64::new(2.0, 0.0)]);
        let basis = span_basis(&[x.clone(), x.mul_mat(&x)], 1e-12);
        assert_eq!(basis.dim(), 2);
        let target = CMat::diag(&[C64::new(1.0, 0.0), C64::new(4.0, 0.0)]);
        let (ok, d) = basis.member(&target, 1e-10);
        assert!(ok, "distance {d}");
    }

    #[test]
    fn every_generator_is_a_member() {
        use crate::rng::{SplitMix64, random_matrix};
        let mut rng = SplitMix64::new(17);
        let mats: Vec<CMat> = (0..5).map(|_| random_matrix(&mut rng, 3)).collect();
        let basis = span_basis(&mats, 1e-12);
        for m in &mats {
            let (ok, d) = basis.member(m, 1e-10);
            assert!(ok, "distance {d}");
            assert!(d <= 1e-10);
        }
    }
}
