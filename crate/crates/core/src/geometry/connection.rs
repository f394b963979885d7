//! Levi-Civita connection of the invariant metric on the complement.

use super::HomogeneousSpace;
use crate::algebra::{StructureTensor, C3};
use crate::error::Result;

/// Connection coefficients Gamma_ab^c = <nabla_{X_a} X_b, X_c> on the
/// complement, in the orthonormal coframe.
pub struct Connection {
    pub gamma: C3,
    /// max |Gamma_ab^c + Gamma_ac^b| (metric compatibility with the
    /// constant Gram matrix)
    pub metric_compatibility_residual: f64,
}

/// Koszul formula for left-invariant fields:
/// 2 <nabla_a X_b, X_c> = <[X_a,X_b]_h, X_c> - <[X_b,X_c]_h, X_a>
///                      + <[X_c,X_a]_h, X_b>,
/// with h the projection onto the complement.
pub fn koszul_connection(space: &HomogeneousSpace, st: &StructureTensor) -> Result<Connection> {
    let c = space.complement_dim;
    let mut gamma = C3::zeros(c);
    for a in 0..c {
        for b in 0..c {
            for d in 0..c {
                let value = 0.5
                    * (st.c_up.get(a, b, d) - st.c_up.get(b, d, a) + st.c_up.get(d, a, b));
                gamma.set(a, b, d, value);
            }
        }
    }
    let mut compat = 0.0_f64;
    for a in 0..c {
        for b in 0..c {
            for d in 0..c {
                compat = compat.max((gamma.get(a, b, d) + gamma.get(a, d, b)).abs());
            }
        }
    }
    Ok(Connection {
        gamma,
        metric_compatibility_residual: compat,
    })
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.gamma.dim
    }

    /// max |Gamma_ab^c - Gamma_ba^c - (c-component of [X_a,X_b]_h)|:
    /// torsion-freeness against the bracket.
    pub fn torsion_residual(&self, st: &StructureTensor) -> f64 {
        let c = self.dim();
        let mut worst = 0.0_f64;
        for a in 0..c {
            for b in 0..c {
                for d in 0..c {
                    let t = self.gamma.get(a, b, d) - self.gamma.get(b, a, d)
                        - st.c_up.get(a, b, d);
                    worst = worst.max(t.abs());
                }
            }
        }
        worst
    }

    /// Largest coefficient: on a symmetric complement the connection
    /// vanishes identically.
    pub fn max_coefficient(&self) -> f64 {
        let c = self.dim();
        let mut worst = 0.0_f64;
        for a in 0..c {
            for b in 0..c {
                for d in 0..c {
                    worst = worst.max(self.gamma.get(a, b, d).abs());
                }
            }
        }
        worst
    }
}
