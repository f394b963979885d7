//! Small dense-linear-algebra helpers shared by the construction code.
//!
//! Least-squares expansions go through a QR factorization and null spaces
//! through a symmetric eigendecomposition of A^T A; both stay accurate on
//! the highly degenerate singular spectra these basis matrices produce.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Column-major flattening of a matrix into a vector.
pub fn flatten(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_column_slice(m.as_slice())
}

/// Least-squares expansion of matrices over a fixed spanning set.
///
/// The spanning matrices are flattened into the columns of a tall matrix
/// whose QR factorization is computed once; every later expansion is a
/// triangular solve plus an explicit residual.
pub struct BasisExpander {
    stacked: DMatrix<f64>,
    q_t: DMatrix<f64>,
    r: DMatrix<f64>,
    min_singular_value: f64,
}

impl BasisExpander {
    pub fn new(basis: &[DMatrix<f64>]) -> Self {
        assert!(!basis.is_empty(), "empty basis");
        let len = basis[0].len();
        let dim = basis.len();
        let mut stacked = DMatrix::zeros(len, dim);
        for (j, b) in basis.iter().enumerate() {
            stacked.set_column(j, &flatten(b));
        }
        let qr = stacked.clone().qr();
        let q_t = qr.q().transpose();
        let r = qr.unpack_r();
        let gram = stacked.transpose() * &stacked;
        let eig = gram.symmetric_eigen();
        let lambda_min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        Self {
            stacked,
            q_t,
            r,
            min_singular_value: lambda_min.max(0.0).sqrt(),
        }
    }

    /// Smallest singular value of the flattened basis matrix; a linear
    /// independence certificate when well above the rank cutoff.
    pub fn min_singular_value(&self) -> f64 {
        self.min_singular_value
    }

    /// Coefficients of `x` over the basis together with the max-norm of the
    /// component of `x` outside the span.
    pub fn expand(&self, x: &DMatrix<f64>) -> (DVector<f64>, f64) {
        let rhs = flatten(x);
        let mut coeffs = &self.q_t * &rhs;
        let ok = self.r.solve_upper_triangular_mut(&mut coeffs);
        assert!(ok, "rank-deficient expansion basis");
        let residual = (&self.stacked * &coeffs - rhs).amax();
        (coeffs, residual)
    }
}

/// Null space of `a` at a singular-value `cutoff`, from the spectral
/// decomposition of A^T A. Returns the basis vectors and all singular
/// values in ascending order.
pub fn null_space(a: &DMatrix<f64>, cutoff: f64) -> (Vec<DVector<f64>>, Vec<f64>) {
    let gram = a.transpose() * a;
    let eig = gram.symmetric_eigen();
    let lambda_max = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    // eigenvalues of A^T A carry absolute noise ~ eps * lambda_max, so the
    // squared cutoff is floored accordingly
    let lambda_cut = (cutoff * cutoff).max(1e-12 * lambda_max.max(1.0));
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let mut vectors = Vec::new();
    let mut values = Vec::with_capacity(n);
    for &i in &order {
        let lambda = eig.eigenvalues[i];
        values.push(lambda.max(0.0).sqrt());
        if lambda <= lambda_cut {
            vectors.push(eig.eigenvectors.column(i).into_owned());
        }
    }
    (vectors, values)
}

/// Modified Gram-Schmidt with an arbitrary (positive definite) inner
/// product. Vectors whose residual norm falls below `rank_cutoff` are
/// dropped; the survivors are returned normalized.
pub fn gram_schmidt<F>(vectors: &[DVector<f64>], inner: F, rank_cutoff: f64) -> Vec<DVector<f64>>
where
    F: Fn(&DVector<f64>, &DVector<f64>) -> f64,
{
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            let c = inner(&w, u);
            w -= u * c;
        }
        // second pass for orthogonality at roundoff level
        for u in &out {
            let c = inner(&w, u);
            w -= u * c;
        }
        let norm_sq = inner(&w, &w);
        if norm_sq.sqrt() > rank_cutoff {
            out.push(w / norm_sq.sqrt());
        }
    }
    out
}

/// Eigenvalues (ascending) and matching eigenvector columns of a symmetric
/// matrix.
pub fn sym_eigen_sorted(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// 2-norm condition number of a symmetric matrix, rejecting anything beyond
/// `max_condition`.
pub fn check_condition(m: &DMatrix<f64>, max_condition: f64) -> Result<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let (eigs, _) = sym_eigen_sorted(&sym);
    let max = eigs.iter().fold(0.0_f64, |acc, &e| acc.max(e.abs()));
    let min = eigs.iter().fold(f64::INFINITY, |acc, &e| acc.min(e.abs()));
    let cond = if min == 0.0 { f64::INFINITY } else { max / min };
    if cond > max_condition {
        return Err(Error::DegenerateGram(cond));
    }
    Ok(cond)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expander_recovers_coefficients() {
        let b1 = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let b2 = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let ex = BasisExpander::new(&[b1.clone(), b2.clone()]);
        let x = &b1 * 2.5 + &b2 * (-1.5);
        let (c, res) = ex.expand(&x);
        assert!((c[0] - 2.5).abs() < 1e-14);
        assert!((c[1] + 1.5).abs() < 1e-14);
        assert!(res < 1e-14);
    }

    #[test]
    fn expander_reports_out_of_span_component() {
        let b1 = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let ex = BasisExpander::new(&[b1]);
        let x = DMatrix::from_row_slice(2, 2, &[0.0, 3.0, 0.0, 0.0]);
        let (_, res) = ex.expand(&x);
        assert!((res - 3.0).abs() < 1e-14);
    }

    #[test]
    fn null_space_of_wide_matrix_sees_all_directions() {
        // 1x3 matrix [1 0 0]: null space is 2-dimensional.
        let a = DMatrix::from_row_slice(1, 3, &[1.0, 0.0, 0.0]);
        let (basis, values) = null_space(&a, 1e-10);
        assert_eq!(basis.len(), 2);
        assert!(values[0] < 1e-10 && values[1] < 1e-10);
        for v in &basis {
            assert!(v[0].abs() < 1e-10);
        }
    }

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let v1 = DVector::from_vec(vec![1.0, 0.0]);
        let v2 = DVector::from_vec(vec![2.0, 0.0]);
        let v3 = DVector::from_vec(vec![1.0, 1.0]);
        let ons = gram_schmidt(&[v1, v2, v3], |a, b| a.dot(b), 1e-10);
        assert_eq!(ons.len(), 2);
        assert!(ons[0].dot(&ons[1]).abs() < 1e-14);
    }
}
