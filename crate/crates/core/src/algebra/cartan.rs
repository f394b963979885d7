//! Killing form, Cartan decomposition, and centralizer subalgebras.

use nalgebra::{DMatrix, DVector};

use super::families::MatrixBasis;
use crate::error::{Error, Result};
use crate::linalg::{null_space, sym_eigen_sorted, BasisExpander};
use crate::tol;

/// Adjoint operator of `x` in the coordinates of `basis` (columns are the
/// expansions of the brackets with the basis elements).
fn ad_matrix(expander: &BasisExpander, basis: &[DMatrix<f64>], x: &DMatrix<f64>) -> DMatrix<f64> {
    let dim = basis.len();
    let mut ad = DMatrix::zeros(dim, dim);
    for (e, y) in basis.iter().enumerate() {
        let (coeffs, _) = expander.expand(&MatrixBasis::bracket(x, y));
        ad.set_column(e, &coeffs);
    }
    ad
}

/// Killing form B_ab = trace(ad X_a ad X_b) of the stored basis.
pub fn killing_form(mb: &MatrixBasis) -> DMatrix<f64> {
    killing_form_of(mb, &mb.basis)
}

/// Killing form of an arbitrary tuple of algebra elements, computed in the
/// abstract adjoint representation (so realification conventions cannot
/// change it).
pub fn killing_form_of(mb: &MatrixBasis, elements: &[DMatrix<f64>]) -> DMatrix<f64> {
    let expander = BasisExpander::new(&mb.basis);
    let ads: Vec<DMatrix<f64>> = elements
        .iter()
        .map(|x| ad_matrix(&expander, &mb.basis, x))
        .collect();
    let k = elements.len();
    DMatrix::from_fn(k, k, |a, b| (&ads[a] * &ads[b]).trace())
}

/// The +1/-1 eigenspace split of the Cartan involution.
pub struct CartanSplit {
    pub m_basis: Vec<DMatrix<f64>>,
    pub k_basis: Vec<DMatrix<f64>>,
    /// max |B(theta X, theta Y) - B(X, Y)| over basis pairs
    pub theta_compatibility: f64,
}

/// Decompose g = m + k under theta(X) = eta X eta, verifying that the
/// Killing form is positive definite on m and negative definite on k.
pub fn cartan_decompose(mb: &MatrixBasis, killing: &DMatrix<f64>) -> Result<CartanSplit> {
    cartan_decompose_with(mb, killing, &mb.eta)
}

/// Same, against an explicit involution matrix. Exposed so a wrong
/// involution can be demonstrated to fail the definiteness guard.
pub fn cartan_decompose_with(
    mb: &MatrixBasis,
    killing: &DMatrix<f64>,
    eta: &DMatrix<f64>,
) -> Result<CartanSplit> {
    let dim = mb.dim();
    let mut theta = DMatrix::zeros(dim, dim);
    for (a, x) in mb.basis.iter().enumerate() {
        let themed = eta * x * eta;
        let (coeffs, res) = mb.expand(&themed);
        if res > tol::RANK_CUTOFF {
            return Err(Error::ExpansionResidual {
                residual: res,
                tol: tol::RANK_CUTOFF,
            });
        }
        theta.set_column(a, &coeffs);
    }
    let theta_compatibility = (theta.transpose() * killing * &theta - killing).amax();

    // a basis that already consists of theta-eigenvectors keeps its order;
    // otherwise split the eigenspaces numerically
    let mut k_coords: Vec<DVector<f64>> = Vec::new();
    let mut m_coords: Vec<DVector<f64>> = Vec::new();
    let mut aligned = true;
    for a in 0..dim {
        let col = theta.column(a).into_owned();
        let mut unit = DVector::zeros(dim);
        unit[a] = 1.0;
        if (&col - &unit).amax() < tol::RANK_CUTOFF {
            k_coords.push(unit);
        } else if (&col + &unit).amax() < tol::RANK_CUTOFF {
            m_coords.push(unit);
        } else {
            aligned = false;
            break;
        }
    }
    if !aligned {
        let eye = DMatrix::identity(dim, dim);
        let (k, _) = null_space(&(&theta - &eye), tol::RANK_CUTOFF);
        let (m, _) = null_space(&(&theta + &eye), tol::RANK_CUTOFF);
        k_coords = k;
        m_coords = m;
    }
    if k_coords.len() + m_coords.len() != dim {
        return Err(Error::InvalidSpec(format!(
            "involution eigenspaces have dimensions {} + {} != {}",
            k_coords.len(),
            m_coords.len(),
            dim
        )));
    }

    check_definite(killing, &m_coords, "m", true)?;
    check_definite(killing, &k_coords, "k", false)?;

    let to_matrices = |coords: &[DVector<f64>]| -> Vec<DMatrix<f64>> {
        coords
            .iter()
            .map(|c| {
                let mut x = DMatrix::zeros(mb.eta.nrows(), mb.eta.ncols());
                for (a, w) in c.iter().enumerate() {
                    x += &mb.basis[a] * *w;
                }
                x
            })
            .collect()
    };

    Ok(CartanSplit {
        m_basis: to_matrices(&m_coords),
        k_basis: to_matrices(&k_coords),
        theta_compatibility,
    })
}

fn check_definite(
    killing: &DMatrix<f64>,
    coords: &[DVector<f64>],
    block: &'static str,
    positive: bool,
) -> Result<()> {
    let k = coords.len();
    let restricted = DMatrix::from_fn(k, k, |i, j| (coords[i].transpose() * killing * &coords[j])[(0, 0)]);
    let (eigs, _) = sym_eigen_sorted(&restricted);
    let (bad, expected) = if positive {
        (eigs.first().copied().unwrap_or(1.0), "positive")
    } else {
        (eigs.last().copied().unwrap_or(-1.0), "negative")
    };
    let ok = if positive { bad > tol::RANK_CUTOFF } else { bad < -tol::RANK_CUTOFF };
    if !ok {
        return Err(Error::IndefiniteBlock {
            block,
            expected,
            eigenvalue: bad,
        });
    }
    Ok(())
}

/// Centralizer v = { X in k : [xi, X] = 0 } together with the index data
/// dim H = r1 + 1 and dim V = r1 + r2 + 1.
pub struct Centralizer {
    pub v_basis: Vec<DMatrix<f64>>,
    pub r1: usize,
    pub r2: usize,
}

/// Null space of ad(xi) restricted to k, with the standing assumption
/// r1 + r2 + 1 < r enforced.
pub fn centralizer_subalgebra(
    k_basis: &[DMatrix<f64>],
    torus_rank: usize,
    xi: &DMatrix<f64>,
) -> Result<Centralizer> {
    if xi.amax() == 0.0 {
        return Err(Error::XiZero);
    }
    let k_expander = BasisExpander::new(k_basis);
    let (_, xi_res) = k_expander.expand(xi);
    if xi_res > tol::RANK_CUTOFF * xi.amax().max(1.0) {
        return Err(Error::XiNotInIsotropy(xi_res));
    }
    let r = k_basis.len();
    let mut ad_xi = DMatrix::zeros(r, r);
    for (b, y) in k_basis.iter().enumerate() {
        let (coeffs, _) = k_expander.expand(&MatrixBasis::bracket(xi, y));
        ad_xi.set_column(b, &coeffs);
    }
    let (v_coords, _) = null_space(&ad_xi, tol::RANK_CUTOFF);
    let dim_v = v_coords.len();
    if dim_v >= r {
        return Err(Error::CentralizerTooLarge { dim_v, r });
    }
    if dim_v < torus_rank {
        return Err(Error::InvalidSpec(format!(
            "centralizer dimension {dim_v} fell below the rank {torus_rank}; xi is numerically degenerate"
        )));
    }
    let side = k_basis[0].nrows();
    let v_basis = v_coords
        .iter()
        .map(|c| {
            let mut x = DMatrix::zeros(side, side);
            for (a, w) in c.iter().enumerate() {
                x += &k_basis[a] * *w;
            }
            x
        })
        .collect();
    Ok(Centralizer {
        v_basis,
        r1: torus_rank - 1,
        r2: dim_v - torus_rank,
    })
}

/// Dimension of the centralizer of `xi` in the whole algebra. For a generic
/// element of the standard torus this equals the torus rank exactly when the
/// torus is a Cartan subalgebra of g, i.e. when rank G = rank K.
pub fn full_centralizer_dim(mb: &MatrixBasis, xi: &DMatrix<f64>) -> usize {
    let dim = mb.dim();
    let mut ad_xi = DMatrix::zeros(dim, dim);
    for (b, y) in mb.basis.iter().enumerate() {
        let (coeffs, _) = mb.expand(&MatrixBasis::bracket(xi, y));
        ad_xi.set_column(b, &coeffs);
    }
    let (vecs, _) = null_space(&ad_xi, tol::RANK_CUTOFF);
    vecs.len()
}
