//! Structure constants of the canonical basis and derived tensors.

use nalgebra::DMatrix;

use super::canonical::CanonicalBasis;
use super::cartan::killing_form_of;
use super::families::MatrixBasis;
use crate::error::{Error, Result};
use crate::linalg::BasisExpander;
use crate::tol;

/// Dense rank-3 tensor with one common dimension.
#[derive(Clone)]
pub struct C3 {
    pub dim: usize,
    data: Vec<f64>,
}

impl C3 {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim * dim],
        }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.data[(a * self.dim + b) * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, c: usize, value: f64) {
        self.data[(a * self.dim + b) * self.dim + c] = value;
    }
}

/// Index ranges of the canonical order: [0,n) is m, [n,n1) is k (-) v,
/// [n1, n+r) is v.
#[derive(Debug, Clone, Copy)]
pub struct IndexRanges {
    pub n: usize,
    pub r: usize,
    pub r1: usize,
    pub r2: usize,
}

impl IndexRanges {
    pub fn dim(&self) -> usize {
        self.n + self.r
    }

    pub fn n1(&self) -> usize {
        self.dim() - (self.r1 + self.r2 + 1)
    }

    pub fn is_m(&self, a: usize) -> bool {
        a < self.n
    }
}

/// Which bilinear form lowers the third index of `c_low`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lowering {
    /// c_dab = c_ab^e B_de; this is the convention in which the lowered
    /// tensor is totally antisymmetric.
    KillingForm,
}

pub struct StructureTensor {
    pub ranges: IndexRanges,
    /// c_ab^c: [X_a, X_b] = c_ab^c X_c
    pub c_up: C3,
    /// c_dab = B_de c_ab^e, totally antisymmetric
    pub c_low: C3,
    /// Killing Gram of the canonical basis (diag +1 on m, -1 on k)
    pub gram_b: DMatrix<f64>,
    /// metric Gram of ds^2 = sum (omega^a)^2: the identity
    pub gram_g: DMatrix<f64>,
    pub lowering: Lowering,
    /// max bracket-expansion residual over all pairs
    pub expansion_residual: f64,
}

/// Expand every bracket of the canonical basis and lower with the Killing
/// Gram. The Gram itself is recomputed through the adjoint representation
/// over the original matrix basis, an arithmetic route independent of the
/// coefficient expansion that produces `c_up`.
pub fn structure_tensor(mb: &MatrixBasis, cb: &CanonicalBasis) -> Result<StructureTensor> {
    let dim = cb.dim();
    let expander = BasisExpander::new(&cb.basis);
    let mut c_up = C3::zeros(dim);
    let mut worst = 0.0_f64;
    for a in 0..dim {
        for b in (a + 1)..dim {
            let br = MatrixBasis::bracket(&cb.basis[a], &cb.basis[b]);
            let (coeffs, res) = expander.expand(&br);
            worst = worst.max(res);
            for c in 0..dim {
                c_up.set(a, b, c, coeffs[c]);
                c_up.set(b, a, c, -coeffs[c]);
            }
        }
    }
    if worst > tol::IDENTITY {
        return Err(Error::ExpansionResidual {
            residual: worst,
            tol: tol::IDENTITY,
        });
    }

    let gram_b = killing_form_of(mb, &cb.basis);
    let mut c_low = C3::zeros(dim);
    for d in 0..dim {
        for a in 0..dim {
            for b in 0..dim {
                let mut s = 0.0;
                for e in 0..dim {
                    s += gram_b[(d, e)] * c_up.get(a, b, e);
                }
                c_low.set(d, a, b, s);
            }
        }
    }

    Ok(StructureTensor {
        ranges: IndexRanges {
            n: cb.n,
            r: cb.r,
            r1: cb.r1,
            r2: cb.r2,
        },
        c_up,
        c_low,
        gram_b,
        gram_g: DMatrix::identity(dim, dim),
        lowering: Lowering::KillingForm,
        expansion_residual: worst,
    })
}

impl StructureTensor {
    pub fn dim(&self) -> usize {
        self.ranges.dim()
    }

    /// max |c_ab^c + c_ba^c|
    pub fn upper_antisymmetry_residual(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0_f64;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    worst = worst.max((self.c_up.get(a, b, c) + self.c_up.get(b, a, c)).abs());
                }
            }
        }
        worst
    }

    /// max over both adjacent transpositions of the lowered tensor; total
    /// antisymmetry follows when both vanish.
    pub fn lower_antisymmetry_residual(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0_f64;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let swap_last = self.c_low.get(a, b, c) + self.c_low.get(a, c, b);
                    let swap_first = self.c_low.get(a, b, c) + self.c_low.get(b, a, c);
                    worst = worst.max(swap_last.abs()).max(swap_first.abs());
                }
            }
        }
        worst
    }

    /// Largest entry outside the blocks allowed by the Cartan relations
    /// (only c_{alpha beta}^gamma, c_{ij}^alpha, c_{j alpha}^i,
    /// c_{alpha j}^i may be nonzero).
    pub fn forbidden_block_residual(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0_f64;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let (am, bm, cm) = (
                        self.ranges.is_m(a),
                        self.ranges.is_m(b),
                        self.ranges.is_m(c),
                    );
                    let allowed = match (am, bm) {
                        (true, true) => !cm,  // [m,m] in k
                        (false, false) => !cm, // [k,k] in k
                        _ => cm,              // [k,m] in m
                    };
                    if !allowed {
                        worst = worst.max(self.c_up.get(a, b, c).abs());
                    }
                }
            }
        }
        worst
    }

    /// max bracket reconstruction error over the canonical basis:
    /// ||[X_a, X_b] - c_ab^c X_c||_inf.
    pub fn closure_identity_residual(&self, cb: &CanonicalBasis) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0_f64;
        for a in 0..dim {
            for b in 0..dim {
                let mut rebuilt = DMatrix::zeros(cb.eta.nrows(), cb.eta.ncols());
                for c in 0..dim {
                    rebuilt += &cb.basis[c] * self.c_up.get(a, b, c);
                }
                let br = MatrixBasis::bracket(&cb.basis[a], &cb.basis[b]);
                worst = worst.max((br - rebuilt).amax());
            }
        }
        worst
    }
}
