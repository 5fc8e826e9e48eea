//! Self-contained dense complex linear algebra: factorizations,
//! eigenproblems, norms, and subspace arithmetic.

pub mod basis;
pub mod hermitian;
pub mod lu;
pub mod schur;

pub use basis::{OrthoBasis, span_basis};
pub use hermitian::{HermEig, PsdCertificate, herm_eig, lambda_max, op_norm, psd_check};
pub use lu::{LuFactors, lu_inverse, lu_solve};
pub use schur::{EigenDecomp, SchurForm, SpectrumList, eigen_decomp, gen_spectrum, schur};
