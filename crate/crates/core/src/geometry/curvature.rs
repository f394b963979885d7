//! Curvature tensor of the invariant metric, with the scalars derived
//! from it: sectional values, the Ricci matrix, and the Jacobi operator.

use nalgebra::{DMatrix, DVector};

use super::connection::Connection;
use super::HomogeneousSpace;
use crate::algebra::StructureTensor;
use crate::error::{Error, Result};
use crate::linalg::sym_eigen_sorted;
use crate::tol;

/// Dense rank-4 tensor over the complement.
pub struct R4 {
    pub dim: usize,
    data: Vec<f64>,
}

impl R4 {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim * dim * dim],
        }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.data[((a * self.dim + b) * self.dim + c) * self.dim + d]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, value: f64) {
        self.data[((a * self.dim + b) * self.dim + c) * self.dim + d] = value;
    }
}

pub struct CurvatureModel {
    pub r: R4,
    pub symmetry_residual: f64,
    pub bianchi_residual: f64,
}

/// R(X_a, X_b) X_c = Lam_a Lam_b X_c - Lam_b Lam_a X_c
///                 - Lam_{[X_a,X_b]_h} X_c - [[X_a,X_b]_iso, X_c],
/// where Lam is the connection function on the complement and the isotropy
/// part acts through the bracket.
pub fn curvature_tensor(
    space: &HomogeneousSpace,
    st: &StructureTensor,
    conn: &Connection,
) -> Result<CurvatureModel> {
    let c_dim = space.complement_dim;
    let dim = space.total_dim();
    let g = &conn.gamma;
    let mut r = R4::zeros(c_dim);
    for a in 0..c_dim {
        for b in 0..c_dim {
            for c in 0..c_dim {
                for d in 0..c_dim {
                    let mut value = 0.0;
                    for e in 0..c_dim {
                        value += g.get(b, c, e) * g.get(a, e, d);
                        value -= g.get(a, c, e) * g.get(b, e, d);
                        value -= st.c_up.get(a, b, e) * g.get(e, c, d);
                    }
                    for phi in c_dim..dim {
                        value -= st.c_up.get(a, b, phi) * st.c_up.get(phi, c, d);
                    }
                    r.set(a, b, c, d, value);
                }
            }
        }
    }

    let mut sym = 0.0_f64;
    let mut bianchi = 0.0_f64;
    for a in 0..c_dim {
        for b in 0..c_dim {
            for c in 0..c_dim {
                for d in 0..c_dim {
                    let v = r.get(a, b, c, d);
                    sym = sym.max((v + r.get(b, a, c, d)).abs());
                    sym = sym.max((v + r.get(a, b, d, c)).abs());
                    sym = sym.max((v - r.get(c, d, a, b)).abs());
                    let cyc = v + r.get(b, c, a, d) + r.get(c, a, b, d);
                    bianchi = bianchi.max(cyc.abs());
                }
            }
        }
    }
    if sym > tol::CURVATURE {
        return Err(Error::CurvatureSymmetry(sym));
    }
    Ok(CurvatureModel {
        r,
        symmetry_residual: sym,
        bianchi_residual: bianchi,
    })
}

/// K = <R(X,Y)Y, X> for an orthonormal pair.
pub fn sectional_curvature(cm: &CurvatureModel, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
    let ortho = (x.dot(x) - 1.0).abs().max((y.dot(y) - 1.0).abs()).max(x.dot(y).abs());
    if ortho > 1e-10 {
        return Err(Error::DegeneratePlane(ortho));
    }
    Ok(eval_sectional(cm, x, y))
}

/// The same contraction without the orthonormality guard, for callers that
/// construct their planes orthonormal by construction.
pub fn eval_sectional(cm: &CurvatureModel, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let n = cm.r.dim;
    let mut k = 0.0;
    for a in 0..n {
        let xa = x[a];
        if xa == 0.0 {
            continue;
        }
        for b in 0..n {
            let yb = y[b];
            if yb == 0.0 {
                continue;
            }
            for c in 0..n {
                let yc = y[c];
                if yc == 0.0 {
                    continue;
                }
                for d in 0..n {
                    k += cm.r.get(a, b, c, d) * xa * yb * yc * x[d];
                }
            }
        }
    }
    k
}

/// Ric_bc = sum_a <R(X_a, X_b) X_c, X_a> in the orthonormal frame.
pub fn ricci_tensor(cm: &CurvatureModel) -> DMatrix<f64> {
    let n = cm.r.dim;
    DMatrix::from_fn(n, n, |b, c| {
        let mut s = 0.0;
        for a in 0..n {
            s += cm.r.get(a, b, c, a);
        }
        s
    })
}

/// Eigendata of the Jacobi operator w -> R(w, v)v restricted to the
/// orthogonal complement of the unit direction v.
pub struct JacobiData {
    /// radial sectional curvatures, ascending
    pub eigenvalues: Vec<f64>,
    /// matching eigenvectors in complement coordinates (columns)
    pub eigenvectors: Vec<DVector<f64>>,
    pub symmetry_residual: f64,
}

pub fn jacobi_operator(cm: &CurvatureModel, v: &DVector<f64>) -> Result<JacobiData> {
    let n = cm.r.dim;
    if (v.dot(v) - 1.0).abs() > 1e-10 {
        return Err(Error::DegeneratePlane((v.dot(v) - 1.0).abs()));
    }
    let mut m = DMatrix::zeros(n, n);
    for w in 0..n {
        for u in 0..n {
            let mut s = 0.0;
            for b in 0..n {
                let vb = v[b];
                if vb == 0.0 {
                    continue;
                }
                for c in 0..n {
                    s += cm.r.get(w, b, c, u) * vb * v[c];
                }
            }
            m[(w, u)] = s;
        }
    }
    let sym_res = (&m - m.transpose()).amax();
    if sym_res > tol::CURVATURE {
        return Err(Error::AsymmetricOperator(sym_res));
    }

    // deterministic orthonormal completion of v
    let pivot = (0..n)
        .max_by(|&i, &j| v[i].abs().partial_cmp(&v[j].abs()).unwrap())
        .unwrap();
    let mut perp: Vec<DVector<f64>> = Vec::with_capacity(n - 1);
    for j in 0..n {
        if j == pivot {
            continue;
        }
        let mut w = DVector::zeros(n);
        w[j] = 1.0;
        w -= v * v[j];
        for u in &perp {
            let c = w.dot(u);
            w -= u * c;
        }
        let norm = w.norm();
        if norm > 1e-8 {
            perp.push(w / norm);
        }
    }
    debug_assert_eq!(perp.len(), n - 1);

    let mut q = DMatrix::zeros(n, n - 1);
    for (j, w) in perp.iter().enumerate() {
        q.set_column(j, w);
    }
    let restricted = q.transpose() * &m * &q;
    let restricted = (&restricted + restricted.transpose()) * 0.5;
    let (eigenvalues, vectors) = sym_eigen_sorted(&restricted);
    let eigenvectors: Vec<DVector<f64>> = (0..n - 1)
        .map(|j| &q * vectors.column(j).into_owned())
        .collect();
    Ok(JacobiData {
        eigenvalues,
        eigenvectors,
        symmetry_residual: sym_res,
    })
}
