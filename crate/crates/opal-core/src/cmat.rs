//! Dense square complex matrices, row-major.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense `n x n` complex matrix, the carrier for every algebra element.
///
/// Entries are stored row-major. All constructors reject non-finite entries.
#[derive(Clone, PartialEq)]
pub struct CMat {
    n: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major slice of entries.
    pub fn from_rows(n: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::ParseError(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                n * n,
                n,
                n,
                entries.len()
            )));
        }
        let m = CMat {
            n,
            data: entries.to_vec(),
        };
        m.check_finite()?;
        Ok(m)
    }

    /// Convenience constructor from (re, im) pairs, row-major.
    pub fn from_pairs(n: usize, pairs: &[(f64, f64)]) -> Result<Self> {
        let entries: Vec<C64> = pairs.iter().map(|&(re, im)| C64::new(re, im)).collect();
        CMat::from_rows(n, &entries)
    }

    pub fn diag(values: &[C64]) -> Self {
        let n = values.len();
        let mut m = CMat::zeros(n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn scalar(n: usize, c: C64) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    /// Matrix unit `E_{ij}` (1 in row i, column j; 0-indexed).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = CMat::zeros(n);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    /// Left shift on C^n: `L e_1 = 0`, `L e_{k} = e_{k-1}`.
    /// As a matrix this has ones on the first superdiagonal.
    pub fn left_shift(n: usize) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n.saturating_sub(1) {
            m[(i, i + 1)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn check_finite(&self) -> Result<()> {
        for z in &self.data {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::Overflow("non-finite matrix entry".into()));
            }
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Hermitian part `(x + x*)/2`.
    pub fn re_part(&self) -> CMat {
        let mut out = self.adjoint();
        for (o, s) in out.data.iter_mut().zip(self.data.iter()) {
            *o = (*o + *s) * 0.5;
        }
        out
    }

    /// Skew part divided by i: `(x - x*)/(2i)`, a Hermitian matrix.
    pub fn im_part(&self) -> CMat {
        let adj = self.adjoint();
        let mut out = CMat::zeros(self.n);
        let half_over_i = C64::new(0.0, -0.5);
        for k in 0..self.data.len() {
            out.data[k] = (self.data[k] - adj.data[k]) * half_over_i;
        }
        out
    }

    pub fn scale(&self, c: C64) -> CMat {
        let mut out = self.clone();
        for z in &mut out.data {
            *z *= c;
        }
        out
    }

    pub fn scale_re(&self, c: f64) -> CMat {
        self.scale(C64::new(c, 0.0))
    }

    /// `self + c I`.
    pub fn add_scalar(&self, c: C64) -> CMat {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] += c;
        }
        out
    }

    pub fn mul_mat(&self, other: &CMat) -> CMat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let orow = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    orow[j] += a * row[j];
                }
            }
        }
        out
    }

    /// Apply to a vector.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.n);
        let n = self.n;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            let row = &self.data[i * n..(i + 1) * n];
            for j in 0..n {
                acc += row[j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Integer power by repeated squaring; `pow(0)` is the identity.
    pub fn powi(&self, mut e: u64) -> CMat {
        let mut base = self.clone();
        let mut acc = CMat::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mat(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mat(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise deviation from the adjoint.
    pub fn asymmetry(&self) -> f64 {
        let adj = self.adjoint();
        self.data
            .iter()
            .zip(adj.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Flatten to a vector of n^2 coordinates (row-major), for subspace work.
    pub fn vectorize(&self) -> Vec<C64> {
        self.data.clone()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        assert_eq!(v.len(), self.n);
        for i in 0..self.n {
            self[(i, j)] = v[i];
        }
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(rhs.data.iter()) {
            *o += *r;
        }
        out
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(rhs.data.iter()) {
            *o -= *r;
        }
        out
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.mul_mat(rhs)
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale_re(-1.0)
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Inner product `<u, v> = sum conj(v_i) u_i` (linear in the first slot).
pub fn dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v.iter()).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_matrix_kills_first_basis_vector() {
        let l = CMat::left_shift(3);
        let e1 = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let out = l.mul_vec(&e1);
        assert!(vec_norm(&out) == 0.0);
        // L e_2 = e_1
        let e2 = vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let out = l.mul_vec(&e2);
        assert_eq!(out[0], C64::new(1.0, 0.0));
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = CMat::from_pairs(2, &[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]).unwrap();
        let x3 = x.mul_mat(&x).mul_mat(&x);
        let p = x.powi(3);
        assert!((&x3 - &p).max_abs() < 1e-14);
        assert!((&x.powi(0) - &CMat::identity(2)).max_abs() == 0.0);
    }

    #[test]
    fn re_im_parts_recombine() {
        let x = CMat::from_pairs(2, &[(1.0, 2.0), (0.5, -0.25), (3.0, 1.0), (0.0, -2.0)]).unwrap();
        let re = x.re_part();
        let im = x.im_part();
        assert!(re.asymmetry() < 1e-15);
        assert!(im.asymmetry() < 1e-15);
        let recon = &re + &im.scale(C64::new(0.0, 1.0));
        assert!((&recon - &x).max_abs() < 1e-14);
    }

    #[test]
    fn nilpotent_trace_and_norms() {
        let x = CMat::unit(2, 0, 1);
        assert_eq!(x.trace(), C64::new(0.0, 0.0));
        assert_eq!(x.frobenius(), 1.0);
        assert_eq!(x.max_abs(), 1.0);
    }
}
