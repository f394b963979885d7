//! Construction of the algebras, their Cartan data, the canonical basis,
//! and the structure-constant tensor.

mod canonical;
mod cartan;
mod families;
mod structure;

pub use canonical::{canonical_basis, CanonicalBasis};
pub use cartan::{
    cartan_decompose, cartan_decompose_with, centralizer_subalgebra, full_centralizer_dim,
    killing_form, killing_form_of, CartanSplit, Centralizer,
};
pub use families::{build_algebra, eta, torus_basis, AlgebraSpec, Family, MatrixBasis};
pub use structure::{structure_tensor, IndexRanges, Lowering, StructureTensor, C3};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Everything the later stages need: the realized algebra, its Cartan
/// split, the chosen torus element, the canonical basis, and the structure
/// tensor.
pub struct AlgebraData {
    pub spec: AlgebraSpec,
    pub mb: MatrixBasis,
    pub killing: DMatrix<f64>,
    pub cartan: CartanSplit,
    pub torus: Vec<DMatrix<f64>>,
    pub xi: DMatrix<f64>,
    pub xi_coefficients: Vec<f64>,
    pub centralizer: Centralizer,
    pub cb: CanonicalBasis,
    pub st: StructureTensor,
    /// dim of the centralizer of xi in all of g; equals the torus rank
    /// exactly when the compact torus is a Cartan subalgebra of g.
    pub full_centralizer_dim: usize,
    pub warnings: Vec<String>,
}

/// Default torus coefficients (1, 2, ..., rank): generic, so the
/// centralizer is exactly the maximal torus.
pub fn default_xi_coefficients(rank: usize) -> Vec<f64> {
    (1..=rank).map(|j| j as f64).collect()
}

/// Run the full construction chain for `spec`, optionally with explicit
/// torus coefficients for xi.
pub fn build_full(spec: &AlgebraSpec, xi_coefficients: Option<&[f64]>) -> Result<AlgebraData> {
    let warnings = spec.validate()?;
    let mb = build_algebra(spec)?;
    let killing = killing_form(&mb);
    let cartan = cartan_decompose(&mb, &killing)?;
    let torus = torus_basis(spec);
    let rank = torus.len();
    let coeffs: Vec<f64> = match xi_coefficients {
        Some(c) => {
            if c.len() != rank {
                return Err(Error::Config(format!(
                    "xi expects {rank} torus coefficients for {}, got {}",
                    spec.label(),
                    c.len()
                )));
            }
            c.to_vec()
        }
        None => default_xi_coefficients(rank),
    };
    let mut xi = DMatrix::zeros(mb.eta.nrows(), mb.eta.ncols());
    for (t, w) in torus.iter().zip(&coeffs) {
        xi += t * *w;
    }
    let centralizer = centralizer_subalgebra(&cartan.k_basis, rank, &xi)?;
    let cb = canonical_basis(
        &mb,
        &killing,
        &cartan.m_basis,
        &cartan.k_basis,
        &centralizer.v_basis,
        centralizer.r1,
        centralizer.r2,
    )?;
    let st = structure_tensor(&mb, &cb)?;
    // rank G = rank K is a property of the torus itself: validate it with
    // a generic combination even when the caller picked a degenerate xi
    let mut xi_generic = DMatrix::zeros(mb.eta.nrows(), mb.eta.ncols());
    for (t, w) in torus.iter().zip(default_xi_coefficients(rank)) {
        xi_generic += t * w;
    }
    let full_dim = full_centralizer_dim(&mb, &xi_generic);
    Ok(AlgebraData {
        spec: *spec,
        mb,
        killing,
        cartan,
        torus,
        xi,
        xi_coefficients: coeffs,
        centralizer,
        cb,
        st,
        full_centralizer_dim: full_dim,
        warnings,
    })
}
