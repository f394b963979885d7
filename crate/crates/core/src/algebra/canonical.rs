//! Orthonormalization onto the ordered canonical basis.
//!
//! The positive form <X,Y> = -B(X, theta Y) restricts to +B on m and to -B
//! on k, so a <,>-orthonormal basis automatically carries the Killing Gram
//! diag(+1 on m, -1 on k). The output order is m-block, then k (-) v, then v.

use nalgebra::{DMatrix, DVector};

use super::families::MatrixBasis;
use crate::error::{Error, Result};
use crate::linalg::{check_condition, gram_schmidt};
use crate::tol;

/// Ordered orthonormal basis with the index bookkeeping
/// n = dim m, r = dim k, dim H = r1 + 1, dim V = r1 + r2 + 1.
pub struct CanonicalBasis {
    pub basis: Vec<DMatrix<f64>>,
    pub n: usize,
    pub r: usize,
    pub r1: usize,
    pub r2: usize,
    pub eta: DMatrix<f64>,
}

impl CanonicalBasis {
    pub fn dim(&self) -> usize {
        self.n + self.r
    }

    /// n1 = n + (r - r1 - r2 - 1): end of the horizontal indices of G/V.
    pub fn n1(&self) -> usize {
        self.n + self.fiber_dim()
    }

    /// Dimension of the k (-) v block.
    pub fn fiber_dim(&self) -> usize {
        self.r - self.v_dim()
    }

    pub fn v_dim(&self) -> usize {
        self.r1 + self.r2 + 1
    }

    pub fn m_range(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn k_range(&self) -> std::ops::Range<usize> {
        self.n..self.dim()
    }

    pub fn fiber_range(&self) -> std::ops::Range<usize> {
        self.n..self.n1()
    }

    pub fn v_range(&self) -> std::ops::Range<usize> {
        self.n1()..self.dim()
    }

    /// Sign of the Killing Gram on index a: +1 on m, -1 on k.
    pub fn killing_sign(&self, a: usize) -> f64 {
        if a < self.n {
            1.0
        } else {
            -1.0
        }
    }
}

/// Gram-Schmidt with respect to <X,Y> = -B(X, theta Y), producing the
/// canonical order (m, k (-) v, v).
pub fn canonical_basis(
    mb: &MatrixBasis,
    killing: &DMatrix<f64>,
    m_basis: &[DMatrix<f64>],
    k_basis: &[DMatrix<f64>],
    v_basis: &[DMatrix<f64>],
    r1: usize,
    r2: usize,
) -> Result<CanonicalBasis> {
    let r = k_basis.len();
    let n = m_basis.len();
    if r1 + r2 + 1 >= r {
        return Err(Error::CentralizerTooLarge {
            dim_v: r1 + r2 + 1,
            r,
        });
    }

    // theta in coordinates of the stored basis
    let dim = mb.dim();
    let mut theta = DMatrix::zeros(dim, dim);
    for (a, x) in mb.basis.iter().enumerate() {
        let (coeffs, _) = mb.expand(&mb.theta(x));
        theta.set_column(a, &coeffs);
    }
    let inner_matrix = {
        let g = -killing * &theta;
        (&g + g.transpose()) * 0.5
    };
    let inner = |x: &DVector<f64>, y: &DVector<f64>| (x.transpose() * &inner_matrix * y)[(0, 0)];

    let expand_all = |mats: &[DMatrix<f64>]| -> Vec<DVector<f64>> {
        mats.iter().map(|x| mb.expand(x).0).collect()
    };
    let m_coords = expand_all(m_basis);
    let k_coords = expand_all(k_basis);
    let v_coords = expand_all(v_basis);

    // guard against a nearly dependent input before orthonormalizing
    let mut all: Vec<DVector<f64>> = Vec::with_capacity(n + r);
    all.extend(m_coords.iter().cloned());
    all.extend(k_coords.iter().cloned());
    let gram = DMatrix::from_fn(all.len(), all.len(), |i, j| inner(&all[i], &all[j]));
    check_condition(&gram, tol::GRAM_CONDITION_MAX)?;

    let m_ons = gram_schmidt(&m_coords, inner, tol::RANK_CUTOFF);
    if m_ons.len() != n {
        return Err(Error::DependentBasis(0.0));
    }
    // seed with v so the k pass directly yields the complement k (-) v
    let mut seeded: Vec<DVector<f64>> = Vec::with_capacity(r);
    seeded.extend(v_coords.iter().cloned());
    seeded.extend(k_coords.iter().cloned());
    let k_ons = gram_schmidt(&seeded, inner, tol::RANK_CUTOFF);
    if k_ons.len() != r {
        return Err(Error::DependentBasis(0.0));
    }
    let v_dim = v_basis.len();
    let (v_ons, fiber_ons) = k_ons.split_at(v_dim);

    let side = mb.eta.nrows();
    let to_matrix = |c: &DVector<f64>| -> DMatrix<f64> {
        let mut x = DMatrix::zeros(side, side);
        for (a, w) in c.iter().enumerate() {
            x += &mb.basis[a] * *w;
        }
        x
    };

    let mut basis: Vec<DMatrix<f64>> = Vec::with_capacity(n + r);
    basis.extend(m_ons.iter().map(&to_matrix));
    basis.extend(fiber_ons.iter().map(&to_matrix));
    basis.extend(v_ons.iter().map(&to_matrix));

    Ok(CanonicalBasis {
        basis,
        n,
        r,
        r1,
        r2,
        eta: mb.eta.clone(),
    })
}
